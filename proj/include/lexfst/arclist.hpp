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

#ifndef LEXFST_ARCLIST_H_
#define LEXFST_ARCLIST_H_

#include <istream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "lexfst/fst.hpp"
#include "lexfst/ops.hpp"

namespace lexfst {

// A finite-state word grammar over named states.  Arc labels are either a
// single token (identity arc) or a $name reference to a sub-lexicon
// machine spliced in between the two states.  The first declared state is
// the start.  Line forms:
//   state <name>
//   final <name> [<cost>]
//   arc <from> <to> <token or $ref> [<cost>]
struct ArcListGrammar {
  struct ArcLine {
    std::string from, to;
    std::string token;  // empty when ref is set
    std::string ref;
    double cost = 0.0;
  };
  std::vector<std::string> states;
  std::vector<std::pair<std::string, double>> finals;
  std::vector<ArcLine> arcs;
};

inline ArcListGrammar ParseArcListText(
    std::istream &is, const std::shared_ptr<SymbolTable> &table,
    const std::string &name = "<arclist>") {
  ArcListGrammar g;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string text = internal::StripComment(line);
    if (text.empty()) continue;

    double cost = 0.0;
    internal::ExtractTrailingCost(&text, &cost, name, lineno);
    std::istringstream fields(text);
    std::string keyword;
    fields >> keyword;
    if (keyword == "state") {
      std::string sname;
      fields >> sname;
      if (sname.empty()) throw ParseError(name, lineno, "state needs a name");
      g.states.push_back(sname);
    } else if (keyword == "final") {
      std::string sname;
      fields >> sname;
      if (sname.empty()) throw ParseError(name, lineno, "final needs a state");
      g.finals.emplace_back(sname, cost);
    } else if (keyword == "arc") {
      ArcListGrammar::ArcLine arc;
      std::string label;
      fields >> arc.from >> arc.to >> label;
      if (label.empty())
        throw ParseError(name, lineno, "arc needs from, to and a label");
      arc.cost = cost;
      if (label[0] == '$') {
        arc.ref = label.substr(1);
        if (arc.ref.empty())
          throw ParseError(name, lineno, "empty sub-lexicon reference");
      } else {
        auto toks = SplitTokens(label, name, lineno);
        if (toks.size() != 1)
          throw ParseError(name, lineno,
                           "arc label must be one token: \"" + label + "\"");
        arc.token = toks[0];
        table->AddSymbol(arc.token);
      }
      g.arcs.push_back(std::move(arc));
    } else {
      throw ParseError(name, lineno, "unknown keyword \"" + keyword + "\"");
    }
  }
  return g;
}

// Builds the grammar graph.  Token arcs become identity arcs; $ref arcs
// splice a copy of the referenced machine between the two states, entry
// cost on the way in, final weights on the way out.
inline Fst CompileArcList(const ArcListGrammar &g,
                          const std::map<std::string, Fst> &sublex,
                          const std::shared_ptr<SymbolTable> &table) {
  Fst fst(table);
  if (g.states.empty()) return fst;

  std::map<std::string, StateId> ids;
  for (const auto &sname : g.states) {
    if (!ids.emplace(sname, fst.AddState()).second)
      throw Error("duplicate state \"" + sname + "\"");
  }
  fst.SetStart(ids.at(g.states.front()));

  auto resolve = [&](const std::string &sname) {
    auto it = ids.find(sname);
    if (it == ids.end()) throw Error("undeclared state \"" + sname + "\"");
    return it->second;
  };

  for (const auto &[sname, cost] : g.finals)
    fst.SetFinal(resolve(sname), Weight(cost));

  for (const auto &arc : g.arcs) {
    StateId from = resolve(arc.from), to = resolve(arc.to);
    if (!arc.token.empty()) {
      Label sym = table->Find(arc.token);
      fst.AddArc(from, Arc(sym, sym, Weight(arc.cost), to));
      continue;
    }
    auto it = sublex.find(arc.ref);
    if (it == sublex.end())
      throw Error("unknown sub-lexicon \"$" + arc.ref + "\"");
    const Fst &sub = it->second;
    CheckSameTable(fst, sub, "arclist splice");
    if (sub.Empty()) continue;
    StateId off = internal::CopyInto(&fst, sub, false);
    fst.AddArc(from, Arc(kEpsilon, kEpsilon, Weight(arc.cost),
                         sub.Start() + off));
    for (const auto &[state, w] : sub.Finals())
      fst.AddArc(state + off, Arc(kEpsilon, kEpsilon, w, to));
  }
  return fst;
}

inline Fst CompileArcListText(std::istream &is,
                              const std::map<std::string, Fst> &sublex,
                              const std::shared_ptr<SymbolTable> &table,
                              const std::string &name = "<arclist>") {
  return CompileArcList(ParseArcListText(is, table, name), sublex, table);
}

}  // namespace lexfst

#endif  // LEXFST_ARCLIST_H_
