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

#ifndef LEXFST_FST_H_
#define LEXFST_FST_H_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lexfst/errors.hpp"
#include "lexfst/symbols.hpp"
#include "lexfst/weight.hpp"

namespace lexfst {

using StateId = int;
using Label = int;

constexpr StateId kNoState = -1;

struct Arc {
  Label ilabel;
  Label olabel;
  Weight weight;
  StateId nextstate;

  Arc(Label i, Label o, Weight w, StateId n)
      : ilabel(i), olabel(o), weight(w), nextstate(n) {}
};

// Weighted transducer over the tropical semiring.  Arcs stay in insertion
// order and the state set never shrinks except through Connect(), so
// construction order fully determines the machine's printed form.
class Fst {
 public:
  explicit Fst(std::shared_ptr<SymbolTable> table)
      : table_(std::move(table)) {
    if (!table_) throw Error("Fst requires a symbol table");
  }

  StateId AddState() {
    arcs_.emplace_back();
    return static_cast<StateId>(arcs_.size()) - 1;
  }

  void SetStart(StateId s) {
    CheckState(s);
    start_ = s;
  }
  StateId Start() const { return start_; }

  void SetFinal(StateId s, Weight w = Weight::One()) {
    CheckState(s);
    if (w.IsZero()) {
      finals_.erase(s);
      return;
    }
    if (w.Value() < 0) throw Error("negative final weight");
    finals_[s] = w;
  }

  Weight Final(StateId s) const {
    auto it = finals_.find(s);
    return it == finals_.end() ? Weight::Zero() : it->second;
  }
  bool IsFinal(StateId s) const { return finals_.count(s) != 0; }
  const std::map<StateId, Weight> &Finals() const { return finals_; }

  void AddArc(StateId s, const Arc &arc) {
    CheckState(s);
    CheckState(arc.nextstate);
    if (arc.weight.IsZero() || arc.weight.Value() < 0)
      throw Error("arc weight must be finite and nonnegative");
    arcs_[s].push_back(arc);
  }

  int NumStates() const { return static_cast<int>(arcs_.size()); }
  long NumArcs() const {
    long n = 0;
    for (const auto &a : arcs_) n += static_cast<long>(a.size());
    return n;
  }
  const std::vector<Arc> &Arcs(StateId s) const {
    CheckState(s);
    return arcs_[s];
  }

  const std::shared_ptr<SymbolTable> &Table() const { return table_; }

  // True when the machine accepts nothing at all.
  bool Empty() const { return start_ == kNoState; }

 private:
  void CheckState(StateId s) const {
    if (s < 0 || s >= static_cast<int>(arcs_.size()))
      throw Error("state id out of range: " + std::to_string(s));
  }

  std::shared_ptr<SymbolTable> table_;
  std::vector<std::vector<Arc>> arcs_;
  std::map<StateId, Weight> finals_;
  StateId start_ = kNoState;
};

inline void CheckSameTable(const Fst &a, const Fst &b, const char *op) {
  if (a.Table() != b.Table()) throw TableMismatchError(op);
}

// Linear identity transducer for a token sequence.  With add_missing unset,
// an unregistered token raises Error.
inline Fst CompileString(const std::shared_ptr<SymbolTable> &table,
                         const std::vector<std::string> &tokens,
                         bool add_missing = true) {
  Fst fst(table);
  StateId s = fst.AddState();
  fst.SetStart(s);
  for (const auto &tok : tokens) {
    int id = add_missing ? table->AddSymbol(tok) : table->Find(tok);
    if (id < 0) throw Error("unknown symbol \"" + tok + "\"");
    StateId next = fst.AddState();
    fst.AddArc(s, Arc(id, id, Weight::One(), next));
    s = next;
  }
  fst.SetFinal(s);
  return fst;
}

inline Fst CompileString(const std::shared_ptr<SymbolTable> &table,
                         const std::string &text, bool add_missing = true) {
  return CompileString(table, SplitTokens(text), add_missing);
}

}  // namespace lexfst

#endif  // LEXFST_FST_H_
