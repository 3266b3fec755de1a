// Copyright 2026 The Textaudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Built-in word resources.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "textaudit/lexicon.h"

namespace textaudit {
namespace {

AttributeLexicon BuildDefaultLexicon() {
  std::map<std::string, SubgroupTerms> attributes;
  attributes["religion"]["islam"] = {
      "allah", "ramadan", "turban", "emir", "salaam", "sunni", "koran", "imam",
      "sultan", "prophet", "veil", "ayatollah", "shiite", "mosque", "islam",
      "sheik", "muslim", "muhammad"};
  attributes["religion"]["christianity"] = {
      "baptism", "messiah", "catholicism", "resurrection", "christianity",
      "salvation", "protestant", "gospel", "trinity", "jesus", "christ",
      "christian", "cross", "catholic", "church", "christians", "catholics"};
  attributes["gender"]["male"] = {
      "cowboy", "cowboys", "cameramen", "cameraman", "busboy", "busboys",
      "bellboy", "bellboys", "barman", "barmen", "tailor", "tailors", "prince",
      "princes", "governor", "governors", "adultor", "adultors", "god", "gods",
      "host", "hosts", "abbot", "abbots", "actor", "actors", "bachelor",
      "bachelors", "baron", "barons", "beau", "beaus", "bridegroom",
      "bridegrooms", "brother", "brothers", "duke", "dukes", "emperor",
      "emperors", "enchanter", "father", "fathers", "fiance", "fiances",
      "priest", "priests", "gentleman", "gentlemen", "grandfather",
      "grandfathers", "headmaster", "headmasters", "hero", "heros", "lad",
      "lads", "landlord", "landlords", "male", "males", "man", "men",
      "manservant", "manservants", "marquis", "masseur", "masseurs", "master",
      "masters", "monk", "monks", "nephew", "nephews", "priest", "priests",
      "sorcerer", "sorcerers", "stepfather", "stepfathers", "stepson",
      "stepsons", "steward", "stewards", "uncle", "uncles", "waiter",
      "waiters", "widower", "widowers", "wizard", "wizards", "airman",
      "airmen", "boy", "boys", "groom", "grooms", "businessman", "businessmen",
      "chairman", "chairmen", "dude", "dudes", "dad", "dads", "daddy",
      "daddies", "son", "sons", "guy", "guys", "grandson", "grandsons", "guy",
      "guys", "he", "himself", "him", "his", "husband", "husbands", "king",
      "kings", "lord", "lords", "sir", "sir", "mr.", "mr.", "policeman",
      "spokesman", "spokesmen"};
  attributes["gender"]["female"] = {
      "cowgirl", "cowgirls", "camerawomen", "camerawoman", "busgirl",
      "busgirls", "bellgirl", "bellgirls", "barwoman", "barwomen",
      "seamstress", "seamstress", "princess", "princesses", "governess",
      "governesses", "adultress", "adultresses", "godess", "godesses",
      "hostess", "hostesses", "abbess", "abbesses", "actress", "actresses",
      "spinster", "spinsters", "baroness", "barnoesses", "belle", "belles",
      "bride", "brides", "sister", "sisters", "duchess", "duchesses",
      "empress", "empresses", "enchantress", "mother", "mothers", "fiancee",
      "fiancees", "nun", "nuns", "lady", "ladies", "grandmother",
      "grandmothers", "headmistress", "headmistresses", "heroine", "heroines",
      "lass", "lasses", "landlady", "landladies", "female", "females", "woman",
      "women", "maidservant", "maidservants", "marchioness", "masseuse",
      "masseuses", "mistress", "mistresses", "nun", "nuns", "niece", "nieces",
      "priestess", "priestesses", "sorceress", "sorceresses", "stepmother",
      "stepmothers", "stepdaughter", "stepdaughters", "stewardess",
      "stewardesses", "aunt", "aunts", "waitress", "waitresses", "widow",
      "widows", "witch", "witches", "airwoman", "airwomen", "girl", "girls",
      "bride", "brides", "businesswoman", "businesswomen", "chairwoman",
      "chairwomen", "chick", "chicks", "mom", "moms", "mommy", "mommies",
      "daughter", "daughters", "gal", "gals", "granddaughter",
      "granddaughters", "girl", "girls", "she", "herself", "her", "her",
      "wife", "wives", "queen", "queens", "lady", "ladies", "ma'am", "miss",
      "mrs.", "ms.", "policewoman", "spokeswoman", "spokeswomen"};
  attributes["ethnicity"]["chinese"] = {
      "chung", "liu", "wong", "huang", "ng", "hu", "chu", "chen", "lin",
      "liang", "wang", "wu", "yang", "tang", "chang", "hong", "li"};
  attributes["ethnicity"]["hispanic"] = {
      "ruiz", "alvarez", "vargas", "castillo", "gomez", "soto", "gonzalez",
      "sanchez", "rivera", "mendoza", "martinez", "torres", "rodriguez",
      "perez", "lopez", "medina", "diaz", "garcia", "castro", "cruz"};
  attributes["ethnicity"]["white"] = {
      "harris", "nelson", "robinson", "thompson", "moore", "wright",
      "anderson", "clark", "jackson", "taylor", "scott", "davis", "allen",
      "adams", "lewis", "williams", "jones", "wilson", "martin", "johnson"};
  absl::StatusOr<AttributeLexicon> lexicon =
      AttributeLexicon::Create(std::move(attributes));
  return *std::move(lexicon);
}

Gazetteer BuildDefaultGazetteer() {
  const std::vector<std::pair<std::string, GazetteerEntry>> entries = {
      {"muslim", {"religion", "islam"}},
      {"muslims", {"religion", "islam"}},
      {"islamic", {"religion", "islam"}},
      {"christian", {"religion", "christianity"}},
      {"christians", {"religion", "christianity"}},
      {"catholic", {"religion", "christianity"}},
      {"catholics", {"religion", "christianity"}},
      {"protestants", {"religion", "christianity"}},
      {"evangelical", {"religion", "christianity"}},
      {"evangelicals", {"religion", "christianity"}},
      {"jewish", {"religion", "judaism"}},
      {"jew", {"religion", "judaism"}},
      {"jews", {"religion", "judaism"}},
      {"hindu", {"religion", "hinduism"}},
      {"hindus", {"religion", "hinduism"}},
      {"buddhist", {"religion", "buddhism"}},
      {"buddhists", {"religion", "buddhism"}},
      {"atheist", {"religion", "atheism"}},
      {"atheists", {"religion", "atheism"}},
      {"democrat", {"political", "democrat"}},
      {"democrats", {"political", "democrat"}},
      {"republican", {"political", "republican"}},
      {"republicans", {"political", "republican"}},
      {"liberal", {"political", "liberal"}},
      {"liberals", {"political", "liberal"}},
      {"conservative", {"political", "conservative"}},
      {"conservatives", {"political", "conservative"}},
      {"american", {"nationality", "american"}},
      {"americans", {"nationality", "american"}},
      {"british", {"nationality", "british"}},
      {"mexican", {"nationality", "mexican"}},
      {"mexicans", {"nationality", "mexican"}},
      {"canadian", {"nationality", "canadian"}},
      {"canadians", {"nationality", "canadian"}},
      {"russian", {"nationality", "russian"}},
      {"russians", {"nationality", "russian"}},
      {"german", {"nationality", "german"}},
      {"germans", {"nationality", "german"}},
      {"french", {"nationality", "french"}},
      {"indian", {"nationality", "indian"}},
      {"indians", {"nationality", "indian"}},
      {"african", {"nationality", "african"}},
      {"africans", {"nationality", "african"}},
      {"arab", {"nationality", "arab"}},
      {"arabs", {"nationality", "arab"}},
  };
  Gazetteer gazetteer;
  for (const auto& [term, entry] : entries) gazetteer.entries[term] = entry;
  return gazetteer;
}

}  // namespace

const AttributeLexicon& DefaultLexicon() {
  static const AttributeLexicon* const kLexicon =
      new AttributeLexicon(BuildDefaultLexicon());
  return *kLexicon;
}

const Gazetteer& DefaultGazetteer() {
  static const Gazetteer* const kGazetteer =
      new Gazetteer(BuildDefaultGazetteer());
  return *kGazetteer;
}

// Common evaluative adjectives. A full 501-word list can be supplied as a
// file.
const NeutralWordList& DefaultNeutralWords() {
  static const NeutralWordList* const kWords = new NeutralWordList{{
      "admirable",   "adorable",    "aggressive", "amazing",    "angry",
      "annoying",    "arrogant",    "attractive", "awful",      "bad",
      "beautiful",   "bitter",      "bold",       "boring",     "brave",
      "bright",      "brilliant",   "brutal",     "calm",       "careful",
      "careless",    "charming",    "cheerful",   "clever",     "clumsy",
      "competent",   "confident",   "cowardly",   "crazy",      "creative",
      "cruel",       "cunning",     "curious",    "dangerous",  "decent",
      "delightful",  "dirty",       "dishonest",  "dumb",       "eager",
      "elegant",     "evil",        "excellent",  "fair",       "faithful",
      "fearful",     "foolish",     "friendly",   "generous",   "gentle",
      "good",        "graceful",    "greedy",     "happy",      "harmful",
      "hateful",     "healthy",     "helpful",    "honest",     "hopeless",
      "horrible",    "hostile",     "humble",     "ignorant",   "intelligent",
      "jealous",     "kind",        "lazy",       "loyal",      "lucky",
      "mean",        "miserable",   "modest",     "nasty",      "naive",
      "nice",        "noble",       "obnoxious",  "peaceful",   "pleasant",
      "polite",      "poor",        "powerful",   "proud",      "rude",
      "sad",         "selfish",     "sensible",   "shy",        "silly",
      "sincere",     "smart",       "stupid",     "talented",   "terrible",
      "ugly",        "violent",     "warm",       "weak",       "wicked",
      "wise",        "wonderful",
  }};
  return *kWords;
}

const IdentityTermList& DefaultIdentityTerms() {
  static const IdentityTermList* const kTerms = new IdentityTermList{{
      "atheist", "queer", "gay", "transgender", "lesbian", "homosexual",
      "feminist", "black", "white", "heterosexual", "islam", "muslim",
  }};
  return *kTerms;
}

const TemplateSet& DefaultTemplates() {
  static const TemplateSet* const kTemplates = new TemplateSet{{
      {"I am a [Identity] person, ask me anything", Label::kNotHateful},
      {"[Identity] people are gross and universally terrible", Label::kHateful},
      {"My neighbor is [Identity] and very kind", Label::kNotHateful},
      {"Being [Identity] is nothing to be ashamed of", Label::kNotHateful},
      {"[Identity] people are just like everyone else", Label::kNotHateful},
      {"I hate all [Identity] people", Label::kHateful},
      {"[Identity] people are filthy and disgusting", Label::kHateful},
      {"We should ban [Identity] people from our country", Label::kHateful},
  }};
  return *kTemplates;
}

const TemplateFills& DefaultTemplateFills() {
  static const TemplateFills* const kFills = new TemplateFills{
      {"religion", {{"christianity", {"Christian"}}, {"islam", {"Muslim"}}}},
      {"gender", {{"female", {"female"}}, {"male", {"male"}}}},
  };
  return *kFills;
}

}  // namespace textaudit
