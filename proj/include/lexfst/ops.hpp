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

#ifndef LEXFST_OPS_H_
#define LEXFST_OPS_H_

#include <map>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "lexfst/fst.hpp"

namespace lexfst {

namespace internal {

// Appends a copy of src's states to dst, returning the id offset.  Final
// weights are copied only when keep_finals is set.
inline StateId CopyInto(Fst *dst, const Fst &src, bool keep_finals) {
  StateId offset = dst->NumStates();
  for (int i = 0; i < src.NumStates(); ++i) dst->AddState();
  for (StateId s = 0; s < src.NumStates(); ++s)
    for (const auto &a : src.Arcs(s))
      dst->AddArc(s + offset,
                  Arc(a.ilabel, a.olabel, a.weight, a.nextstate + offset));
  if (keep_finals)
    for (const auto &[s, w] : src.Finals()) dst->SetFinal(s + offset, w);
  return offset;
}

}  // namespace internal

// Relational composition.  Epsilon moves are sequenced so that between two
// matched symbols the composite takes all of a's output-epsilon arcs before
// any of b's input-epsilon arcs; this keeps exactly one composite path per
// way of interleaving the underlying arcs, instead of one per ordering.
inline Fst Compose(const Fst &a, const Fst &b) {
  CheckSameTable(a, b, "Compose");
  Fst result(a.Table());
  if (a.Empty() || b.Empty()) return result;

  // Filter state: 0 after a match, 1 after an a-only move, 2 after a b-only
  // move.  a-only moves are barred once a b-only move has happened.
  using Key = std::tuple<StateId, StateId, int>;
  std::map<Key, StateId> ids;
  std::queue<Key> queue;
  auto state_of = [&](const Key &k) {
    auto it = ids.find(k);
    if (it != ids.end()) return it->second;
    StateId s = result.AddState();
    ids[k] = s;
    queue.push(k);
    return s;
  };

  StateId start = state_of({a.Start(), b.Start(), 0});
  result.SetStart(start);
  while (!queue.empty()) {
    auto key = queue.front();
    queue.pop();
    auto [sa, sb, f] = key;
    StateId s = ids[key];

    Weight fa = a.Final(sa), fb = b.Final(sb);
    if (!fa.IsZero() && !fb.IsZero()) result.SetFinal(s, fa.Times(fb));

    for (const auto &aa : a.Arcs(sa)) {
      if (aa.olabel == kEpsilon) {
        if (f == 0 || f == 1)
          result.AddArc(s, Arc(aa.ilabel, kEpsilon, aa.weight,
                               state_of({aa.nextstate, sb, 1})));
      } else {
        for (const auto &ba : b.Arcs(sb)) {
          if (ba.ilabel != aa.olabel) continue;
          result.AddArc(s, Arc(aa.ilabel, ba.olabel,
                               aa.weight.Times(ba.weight),
                               state_of({aa.nextstate, ba.nextstate, 0})));
        }
      }
    }
    for (const auto &ba : b.Arcs(sb)) {
      if (ba.ilabel != kEpsilon) continue;
      result.AddArc(s, Arc(kEpsilon, ba.olabel, ba.weight,
                           state_of({sa, ba.nextstate, 2})));
    }
  }
  return result;
}

inline Fst Union(const Fst &a, const Fst &b) {
  CheckSameTable(a, b, "Union");
  if (a.Empty()) return b;
  if (b.Empty()) return a;
  Fst result(a.Table());
  StateId start = result.AddState();
  result.SetStart(start);
  StateId oa = internal::CopyInto(&result, a, true);
  StateId ob = internal::CopyInto(&result, b, true);
  result.AddArc(start, Arc(kEpsilon, kEpsilon, Weight::One(), a.Start() + oa));
  result.AddArc(start, Arc(kEpsilon, kEpsilon, Weight::One(), b.Start() + ob));
  return result;
}

inline Fst Concat(const Fst &a, const Fst &b) {
  CheckSameTable(a, b, "Concat");
  Fst result(a.Table());
  if (a.Empty() || b.Empty()) return result;
  internal::CopyInto(&result, a, false);
  StateId ob = internal::CopyInto(&result, b, true);
  result.SetStart(a.Start());
  for (const auto &[s, w] : a.Finals())
    result.AddArc(s, Arc(kEpsilon, kEpsilon, w, b.Start() + ob));
  return result;
}

// Kleene star.  State 0 is a fresh start/final hub; each original final
// loops back to it carrying its final weight, so iteration costs add up.
inline Fst ClosureStar(const Fst &a) {
  Fst result(a.Table());
  StateId hub = result.AddState();
  result.SetStart(hub);
  result.SetFinal(hub);
  if (a.Empty()) return result;
  StateId oa = internal::CopyInto(&result, a, false);
  result.AddArc(hub, Arc(kEpsilon, kEpsilon, Weight::One(), a.Start() + oa));
  for (const auto &[s, w] : a.Finals())
    result.AddArc(s + oa, Arc(kEpsilon, kEpsilon, w, hub));
  return result;
}

// One or more iterations.
inline Fst ClosurePlus(const Fst &a) {
  Fst result(a.Table());
  if (a.Empty()) return result;
  internal::CopyInto(&result, a, false);
  result.SetStart(a.Start());
  StateId hub = result.AddState();
  result.SetFinal(hub);
  for (const auto &[s, w] : a.Finals())
    result.AddArc(s, Arc(kEpsilon, kEpsilon, w, hub));
  result.AddArc(hub, Arc(kEpsilon, kEpsilon, Weight::One(), a.Start()));
  return result;
}

// Zero or one iterations.
inline Fst Optional(const Fst &a) {
  Fst result(a.Table());
  StateId hub = result.AddState();
  result.SetStart(hub);
  result.SetFinal(hub);
  if (a.Empty()) return result;
  StateId oa = internal::CopyInto(&result, a, true);
  result.AddArc(hub, Arc(kEpsilon, kEpsilon, Weight::One(), a.Start() + oa));
  return result;
}

inline Fst Invert(const Fst &a) {
  Fst result(a.Table());
  for (int i = 0; i < a.NumStates(); ++i) result.AddState();
  for (StateId s = 0; s < a.NumStates(); ++s)
    for (const auto &arc : a.Arcs(s))
      result.AddArc(s, Arc(arc.olabel, arc.ilabel, arc.weight,
                           arc.nextstate));
  for (const auto &[s, w] : a.Finals()) result.SetFinal(s, w);
  if (!a.Empty()) result.SetStart(a.Start());
  return result;
}

inline Fst ProjectInput(const Fst &a) {
  Fst result(a.Table());
  for (int i = 0; i < a.NumStates(); ++i) result.AddState();
  for (StateId s = 0; s < a.NumStates(); ++s)
    for (const auto &arc : a.Arcs(s))
      result.AddArc(s, Arc(arc.ilabel, arc.ilabel, arc.weight,
                           arc.nextstate));
  for (const auto &[s, w] : a.Finals()) result.SetFinal(s, w);
  if (!a.Empty()) result.SetStart(a.Start());
  return result;
}

inline Fst ProjectOutput(const Fst &a) {
  Fst result(a.Table());
  for (int i = 0; i < a.NumStates(); ++i) result.AddState();
  for (StateId s = 0; s < a.NumStates(); ++s)
    for (const auto &arc : a.Arcs(s))
      result.AddArc(s, Arc(arc.olabel, arc.olabel, arc.weight,
                           arc.nextstate));
  for (const auto &[s, w] : a.Finals()) result.SetFinal(s, w);
  if (!a.Empty()) result.SetStart(a.Start());
  return result;
}

// Identity acceptor over every registered symbol except the given ones.
// Composing with it on the right drops paths that emit a banned symbol.
inline Fst AvoidSymbols(const std::shared_ptr<SymbolTable> &table,
                        const std::vector<std::string> &banned) {
  std::set<int> drop;
  for (const auto &t : banned) {
    int id = table->Find(t);
    if (id > 0) drop.insert(id);
  }
  Fst result(table);
  StateId s = result.AddState();
  result.SetStart(s);
  result.SetFinal(s);
  for (int id = 1; id < table->NumSymbols(); ++id)
    if (!drop.count(id))
      result.AddArc(s, Arc(id, id, Weight::One(), s));
  return result;
}

// Drops states that are unreachable from the start or cannot reach a final
// state.  Survivors keep their relative order.
inline Fst Connect(const Fst &a) {
  Fst result(a.Table());
  if (a.Empty()) return result;

  std::vector<bool> forward(a.NumStates(), false);
  std::vector<StateId> queue{a.Start()};
  forward[a.Start()] = true;
  while (!queue.empty()) {
    StateId s = queue.back();
    queue.pop_back();
    for (const auto &arc : a.Arcs(s))
      if (!forward[arc.nextstate]) {
        forward[arc.nextstate] = true;
        queue.push_back(arc.nextstate);
      }
  }

  std::vector<std::vector<StateId>> rev(a.NumStates());
  for (StateId s = 0; s < a.NumStates(); ++s)
    for (const auto &arc : a.Arcs(s)) rev[arc.nextstate].push_back(s);
  std::vector<bool> backward(a.NumStates(), false);
  for (const auto &[s, w] : a.Finals())
    if (!backward[s]) {
      backward[s] = true;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    StateId s = queue.back();
    queue.pop_back();
    for (StateId p : rev[s])
      if (!backward[p]) {
        backward[p] = true;
        queue.push_back(p);
      }
  }

  std::vector<StateId> remap(a.NumStates(), kNoState);
  for (StateId s = 0; s < a.NumStates(); ++s)
    if (forward[s] && backward[s]) remap[s] = result.AddState();
  if (remap[a.Start()] == kNoState) return Fst(a.Table());
  result.SetStart(remap[a.Start()]);
  for (StateId s = 0; s < a.NumStates(); ++s) {
    if (remap[s] == kNoState) continue;
    for (const auto &arc : a.Arcs(s))
      if (remap[arc.nextstate] != kNoState)
        result.AddArc(remap[s], Arc(arc.ilabel, arc.olabel, arc.weight,
                                    remap[arc.nextstate]));
  }
  for (const auto &[s, w] : a.Finals())
    if (remap[s] != kNoState) result.SetFinal(remap[s], w);
  return result;
}

}  // namespace lexfst

#endif  // LEXFST_OPS_H_
