// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LEXFST_PARADIGM_H_
#define LEXFST_PARADIGM_H_

#include <istream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "lexfst/fst.hpp"

namespace lexfst {

// One inflectional slot: the surface suffix and the feature tags that
// select it.  A lone "-" in the suffix field denotes the zero ending.
struct ParadigmSlot {
  std::vector<Label> suffix;
  std::vector<Label> features;
  double cost = 0.0;
};

struct ParadigmSpec {
  std::string name;
  std::vector<ParadigmSlot> slots;
};

// A stem with its paradigm affiliation and inherent feature tags.
struct StemEntry {
  std::vector<Label> stem;
  std::string paradigm;
  std::vector<Label> features;
};

struct ParadigmFile {
  std::vector<ParadigmSpec> paradigms;
  std::vector<StemEntry> stems;
};

// Paradigm files hold keyword lines:
//   paradigm <name>
//   slot <suffix|-> <features> [<cost>]     (attaches to the last paradigm)
//   stem <stem> <paradigm-name> [<features>]
inline ParadigmFile ParseParadigmText(std::istream &is,
                                      const std::shared_ptr<SymbolTable> &table,
                                      const std::string &name = "<paradigm>") {
  ParadigmFile out;
  std::string line;
  int lineno = 0;
  auto tokens_of = [&](const std::string &field) {
    std::vector<Label> ids;
    if (field == "-") return ids;
    for (const auto &tok : SplitTokens(field, name, lineno))
      ids.push_back(table->AddSymbol(tok));
    return ids;
  };
  while (std::getline(is, line)) {
    ++lineno;
    std::string text = internal::StripComment(line);
    if (text.empty()) continue;

    std::istringstream fields(text);
    std::string keyword;
    fields >> keyword;
    if (keyword == "paradigm") {
      std::string pname;
      fields >> pname;
      if (pname.empty())
        throw ParseError(name, lineno, "paradigm needs a name");
      out.paradigms.push_back({pname, {}});
    } else if (keyword == "slot") {
      if (out.paradigms.empty())
        throw ParseError(name, lineno, "slot before any paradigm");
      std::string suffix, feats;
      fields >> suffix >> feats;
      if (feats.empty())
        throw ParseError(name, lineno, "slot needs suffix and features");
      ParadigmSlot slot;
      slot.suffix = tokens_of(suffix);
      slot.features = tokens_of(feats);
      std::string rest;
      std::getline(fields, rest);
      rest = internal::Trim(rest);
      if (!rest.empty()) {
        bool had_cost =
            internal::ExtractTrailingCost(&rest, &slot.cost, name, lineno);
        if (!had_cost || !rest.empty())
          throw ParseError(name, lineno, "trailing junk \"" + rest + "\"");
      }
      if (slot.features.empty())
        throw ParseError(name, lineno, "slot features may not be empty");
      out.paradigms.back().slots.push_back(std::move(slot));
    } else if (keyword == "stem") {
      std::string stem, pname, feats;
      fields >> stem >> pname >> feats;
      if (pname.empty())
        throw ParseError(name, lineno, "stem needs tokens and a paradigm");
      StemEntry entry;
      entry.stem = tokens_of(stem);
      entry.paradigm = pname;
      if (!feats.empty()) entry.features = tokens_of(feats);
      std::string extra;
      fields >> extra;
      if (!extra.empty())
        throw ParseError(name, lineno, "trailing junk \"" + extra + "\"");
      out.stems.push_back(std::move(entry));
    } else {
      throw ParseError(name, lineno, "unknown keyword \"" + keyword + "\"");
    }
  }
  return out;
}

// One path per stem x slot: the lexical side reads stem + inherent
// features + slot features, the surface side writes stem + suffix.  The
// slot cost rides on its first feature arc.
inline Fst CompileParadigms(const ParadigmFile &file,
                            const std::shared_ptr<SymbolTable> &table) {
  std::map<std::string, const ParadigmSpec *> by_name;
  for (const auto &spec : file.paradigms) {
    if (!by_name.emplace(spec.name, &spec).second)
      throw Error("duplicate paradigm \"" + spec.name + "\"");
  }

  Fst fst(table);
  if (file.stems.empty()) return fst;
  StateId start = fst.AddState();
  fst.SetStart(start);

  auto chain = [&](StateId at, Label in, Label out, Weight w) {
    StateId next = fst.AddState();
    fst.AddArc(at, Arc(in, out, w, next));
    return next;
  };

  for (const auto &stem : file.stems) {
    auto it = by_name.find(stem.paradigm);
    if (it == by_name.end())
      throw Error("stem references unknown paradigm \"" + stem.paradigm +
                  "\"");
    for (const auto &slot : it->second->slots) {
      StateId at = start;
      for (Label sym : stem.stem)
        at = chain(at, sym, sym, Weight::One());
      for (Label sym : stem.features)
        at = chain(at, sym, kEpsilon, Weight::One());
      bool first = true;
      for (Label sym : slot.features) {
        at = chain(at, sym, kEpsilon, first ? Weight(slot.cost)
                                            : Weight::One());
        first = false;
      }
      for (Label sym : slot.suffix)
        at = chain(at, kEpsilon, sym, Weight::One());
      fst.SetFinal(at);
    }
  }
  return fst;
}

inline Fst CompileParadigmText(std::istream &is,
                               const std::shared_ptr<SymbolTable> &table,
                               const std::string &name = "<paradigm>") {
  return CompileParadigms(ParseParadigmText(is, table, name), table);
}

}  // namespace lexfst

#endif  // LEXFST_PARADIGM_H_
