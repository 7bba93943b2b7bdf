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

#ifndef LEXFST_WORDLIST_H_
#define LEXFST_WORDLIST_H_

#include <istream>
#include <memory>
#include <string>
#include <vector>

#include "lexfst/fst.hpp"

namespace lexfst {

// One entry of a word list: "lhs : rhs <cost>".  Without the colon the
// entry is an acceptor (rhs = lhs); without the marker the cost is 0.
struct WordListEntry {
  std::vector<Label> lhs;
  std::vector<Label> rhs;
  double cost = 0.0;
};

inline WordListEntry ParseWordListLine(
    const std::string &line, const std::shared_ptr<SymbolTable> &table,
    const std::string &file = "<wordlist>", int lineno = 0) {
  std::string text = internal::Trim(line);
  WordListEntry entry;
  internal::ExtractTrailingCost(&text, &entry.cost, file, lineno);

  std::string lhs_text = text, rhs_text;
  bool has_rhs = false;
  auto colon = internal::FindOutsideBraces(text, ":");
  if (colon != std::string::npos) {
    lhs_text = internal::Trim(text.substr(0, colon));
    rhs_text = internal::Trim(text.substr(colon + 1));
    has_rhs = true;
  }

  for (const auto &tok : SplitTokens(lhs_text, file, lineno))
    entry.lhs.push_back(table->AddSymbol(tok));
  if (has_rhs) {
    for (const auto &tok : SplitTokens(rhs_text, file, lineno))
      entry.rhs.push_back(table->AddSymbol(tok));
  } else {
    entry.rhs = entry.lhs;
  }

  if (entry.lhs.empty() && entry.rhs.empty())
    throw ParseError(file, lineno, "word list entry with both sides empty");
  return entry;
}

inline std::vector<WordListEntry> ParseWordListText(
    std::istream &is, const std::shared_ptr<SymbolTable> &table,
    const std::string &name = "<wordlist>") {
  std::vector<WordListEntry> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string text = internal::StripComment(line);
    if (text.empty()) continue;
    entries.push_back(ParseWordListLine(text, table, name, lineno));
  }
  return entries;
}

// Union of one chain per entry, sharing a start state.  Sides are paired
// positionally, the shorter padded with epsilons; the entry cost rides on
// the first arc.  No entries means the empty machine.
inline Fst CompileWordList(const std::vector<WordListEntry> &entries,
                           const std::shared_ptr<SymbolTable> &table) {
  Fst fst(table);
  if (entries.empty()) return fst;
  StateId start = fst.AddState();
  fst.SetStart(start);
  for (const auto &entry : entries) {
    std::size_t len = std::max(entry.lhs.size(), entry.rhs.size());
    StateId at = start;
    for (std::size_t i = 0; i < len; ++i) {
      StateId next = fst.AddState();
      Label in = i < entry.lhs.size() ? entry.lhs[i] : kEpsilon;
      Label out = i < entry.rhs.size() ? entry.rhs[i] : kEpsilon;
      fst.AddArc(at, Arc(in, out, i == 0 ? Weight(entry.cost) : Weight::One(),
                         next));
      at = next;
    }
    fst.SetFinal(at);
  }
  return fst;
}

inline Fst CompileWordListText(std::istream &is,
                               const std::shared_ptr<SymbolTable> &table,
                               const std::string &name = "<wordlist>") {
  return CompileWordList(ParseWordListText(is, table, name), table);
}

}  // namespace lexfst

#endif  // LEXFST_WORDLIST_H_
