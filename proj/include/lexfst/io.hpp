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

#ifndef LEXFST_IO_H_
#define LEXFST_IO_H_

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "lexfst/fst.hpp"

namespace lexfst {

// Text format, one record per line:
//   src  dst  isym  osym  [weight]     arc (weight omitted when free)
//   state  [weight]                    final state
// State 0 is the start state; the writer renumbers so this holds.  Symbols
// are written as tokens, with <eps> for epsilon and {sp}/{tab}/{nl} for
// whitespace characters.
inline void WriteFstText(const Fst &fst, std::ostream &os) {
  if (fst.Empty()) return;
  // Permutation: start first, everything else in ascending order.
  std::vector<StateId> order{fst.Start()};
  for (StateId s = 0; s < fst.NumStates(); ++s)
    if (s != fst.Start()) order.push_back(s);
  std::vector<StateId> newid(fst.NumStates());
  for (std::size_t i = 0; i < order.size(); ++i)
    newid[order[i]] = static_cast<StateId>(i);

  const SymbolTable &table = *fst.Table();
  auto sym = [&](Label l) {
    return l == kEpsilon ? std::string(kEpsilonToken)
                         : EscapeToken(table.Find(l));
  };
  for (StateId s : order) {
    for (const auto &a : fst.Arcs(s)) {
      os << newid[s] << '\t' << newid[a.nextstate] << '\t' << sym(a.ilabel)
         << '\t' << sym(a.olabel);
      if (a.weight != Weight::One()) os << '\t' << a.weight.ToString();
      os << '\n';
    }
    Weight w = fst.Final(s);
    if (!w.IsZero()) {
      os << newid[s];
      if (w != Weight::One()) os << '\t' << w.ToString();
      os << '\n';
    }
  }
}

namespace internal {

inline std::vector<std::string> SplitFields(const std::string &line) {
  std::vector<std::string> fields;
  std::istringstream ss(line);
  std::string f;
  while (ss >> f) fields.push_back(f);
  return fields;
}

inline Label ParseSymbolField(const std::string &field,
                              const std::shared_ptr<SymbolTable> &table,
                              const std::string &file, int lineno) {
  if (field == kEpsilonToken) return kEpsilon;
  auto toks = SplitTokens(field, file, lineno);
  if (toks.size() != 1)
    throw ParseError(file, lineno,
                     "symbol field \"" + field + "\" is not a single token");
  return table->AddSymbol(toks[0]);
}

inline double ParseWeightField(const std::string &field,
                               const std::string &file, int lineno) {
  try {
    std::size_t used = 0;
    double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception &) {
    throw ParseError(file, lineno, "bad weight \"" + field + "\"");
  }
}

inline StateId ParseStateField(const std::string &field,
                               const std::string &file, int lineno) {
  try {
    std::size_t used = 0;
    int v = std::stoi(field, &used);
    if (used != field.size() || v < 0) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception &) {
    throw ParseError(file, lineno, "bad state id \"" + field + "\"");
  }
}

}  // namespace internal

inline Fst ReadFstText(const std::shared_ptr<SymbolTable> &table,
                       std::istream &is, const std::string &name = "<fst>") {
  Fst fst(table);
  auto ensure = [&](StateId s) {
    while (fst.NumStates() <= s) fst.AddState();
  };
  std::string line;
  int lineno = 0;
  bool any = false;
  while (std::getline(is, line)) {
    ++lineno;
    auto fields = internal::SplitFields(line);
    if (fields.empty()) continue;
    if (fields.size() <= 2) {
      StateId s = internal::ParseStateField(fields[0], name, lineno);
      ensure(s);
      double w = fields.size() == 2
                     ? internal::ParseWeightField(fields[1], name, lineno)
                     : 0.0;
      fst.SetFinal(s, Weight(w));
    } else if (fields.size() == 4 || fields.size() == 5) {
      StateId src = internal::ParseStateField(fields[0], name, lineno);
      StateId dst = internal::ParseStateField(fields[1], name, lineno);
      ensure(std::max(src, dst));
      Label il = internal::ParseSymbolField(fields[2], table, name, lineno);
      Label ol = internal::ParseSymbolField(fields[3], table, name, lineno);
      double w = fields.size() == 5
                     ? internal::ParseWeightField(fields[4], name, lineno)
                     : 0.0;
      fst.AddArc(src, Arc(il, ol, Weight(w), dst));
    } else {
      throw ParseError(name, lineno, "expected 1, 2, 4 or 5 fields");
    }
    any = true;
  }
  if (any) {
    ensure(0);
    fst.SetStart(0);
  }
  return fst;
}

inline void WriteSymbolsText(const SymbolTable &table, std::ostream &os) {
  const auto &tokens = table.Tokens();
  for (std::size_t i = 0; i < tokens.size(); ++i)
    os << (i == 0 ? std::string(kEpsilonToken) : EscapeToken(tokens[i]))
       << '\t' << i << '\n';
}

inline void ReadSymbolsText(const std::shared_ptr<SymbolTable> &table,
                            std::istream &is,
                            const std::string &name = "<symbols>") {
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto fields = internal::SplitFields(line);
    if (fields.empty()) continue;
    if (fields.size() != 2)
      throw ParseError(name, lineno, "expected token and id");
    if (fields[0] == kEpsilonToken) continue;
    auto toks = SplitTokens(fields[0], name, lineno);
    if (toks.size() != 1)
      throw ParseError(name, lineno,
                       "\"" + fields[0] + "\" is not a single token");
    table->AddSymbol(toks[0]);
  }
}

// Writes base.fst plus the sibling base.sym holding the full symbol table.
inline void SaveFst(const Fst &fst, const std::string &base) {
  std::ofstream fs(base + ".fst");
  if (!fs) throw Error("cannot write " + base + ".fst");
  WriteFstText(fst, fs);
  std::ofstream ss(base + ".sym");
  if (!ss) throw Error("cannot write " + base + ".sym");
  WriteSymbolsText(*fst.Table(), ss);
}

// Loads base.fst into the given table, folding in the sibling .sym first so
// symbols without arcs keep their registration.  A missing .sym is fine.
inline Fst LoadFst(const std::shared_ptr<SymbolTable> &table,
                   const std::string &base) {
  std::string sym_path = base + ".sym";
  {
    std::ifstream ss(sym_path);
    if (ss) ReadSymbolsText(table, ss, sym_path);
  }
  std::ifstream fs(base + ".fst");
  if (!fs) throw Error("cannot read " + base + ".fst");
  return ReadFstText(table, fs, base + ".fst");
}

// Strips a trailing ".fst" so both "x" and "x.fst" address the same pair.
inline std::string FstBaseName(const std::string &path) {
  if (path.size() > 4 && path.substr(path.size() - 4) == ".fst")
    return path.substr(0, path.size() - 4);
  return path;
}

inline void WriteDot(const Fst &fst, std::ostream &os) {
  os << "digraph fst {\n  rankdir = LR;\n";
  if (!fst.Empty()) {
    const SymbolTable &table = *fst.Table();
    auto esc = [](const std::string &s) {
      std::string r;
      for (char c : s) {
        if (c == '"' || c == '\\') r += '\\';
        r += c;
      }
      return r;
    };
    auto sym = [&](Label l) {
      return l == kEpsilon ? std::string(kEpsilonToken)
                           : esc(EscapeToken(table.Find(l)));
    };
    for (StateId s = 0; s < fst.NumStates(); ++s) {
      os << "  " << s << " [label = \"" << s;
      Weight w = fst.Final(s);
      if (!w.IsZero() && w != Weight::One()) os << "/" << w.ToString();
      os << "\", shape = " << (fst.IsFinal(s) ? "doublecircle" : "circle")
         << "];\n";
    }
    os << "  start [shape = point];\n  start -> " << fst.Start() << ";\n";
    for (StateId s = 0; s < fst.NumStates(); ++s)
      for (const auto &a : fst.Arcs(s)) {
        os << "  " << s << " -> " << a.nextstate << " [label = \""
           << sym(a.ilabel) << ":" << sym(a.olabel);
        if (a.weight != Weight::One()) os << "/" << a.weight.ToString();
        os << "\"];\n";
      }
  }
  os << "}\n";
}

}  // namespace lexfst

#endif  // LEXFST_IO_H_
