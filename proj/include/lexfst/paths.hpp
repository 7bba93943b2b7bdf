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

#ifndef LEXFST_PATHS_H_
#define LEXFST_PATHS_H_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "lexfst/fst.hpp"

namespace lexfst {

struct Path {
  std::vector<StateId> states;  // arcs.size() + 1 entries
  std::vector<Arc> arcs;
  Weight weight;                // arc weights times the final weight

  std::string IString(const SymbolTable &table) const {
    std::string s;
    for (const auto &a : arcs)
      if (a.ilabel != kEpsilon) s += table.Find(a.ilabel);
    return s;
  }
  std::string OString(const SymbolTable &table) const {
    std::string s;
    for (const auto &a : arcs)
      if (a.olabel != kEpsilon) s += table.Find(a.olabel);
    return s;
  }
};

// Every accepting path using at most max_arcs arcs, in depth-first arc
// order.  Meant for small machines in tests and n-best listings; the result
// is capped to guard against runaway growth.  Prefixes costing max_cost or
// more are abandoned, which keeps the walk finite on machines whose cycles
// all carry positive weight.
inline std::vector<Path> EnumeratePaths(
    const Fst &fst, int max_arcs, std::size_t max_paths = 1000000,
    double max_cost = std::numeric_limits<double>::infinity()) {
  std::vector<Path> out;
  if (fst.Empty()) return out;

  std::vector<StateId> states{fst.Start()};
  std::vector<Arc> arcs;
  std::vector<double> cost{0.0};  // cumulative, cost[i] before states[i] left

  auto emit = [&](StateId s) {
    if (!fst.IsFinal(s)) return;
    if (out.size() >= max_paths)
      throw Error("path enumeration exceeded " + std::to_string(max_paths) +
                  " paths");
    out.push_back(
        Path{states, arcs, Weight(cost.back()).Times(fst.Final(s))});
  };

  struct Frame { StateId state; std::size_t arc; };
  std::vector<Frame> stack{{fst.Start(), 0}};
  emit(fst.Start());
  while (!stack.empty()) {
    Frame &f = stack.back();
    const auto &as = fst.Arcs(f.state);
    if (f.arc >= as.size() || static_cast<int>(arcs.size()) >= max_arcs) {
      stack.pop_back();
      if (!arcs.empty()) {
        arcs.pop_back();
        states.pop_back();
        cost.pop_back();
      }
      continue;
    }
    const Arc &a = as[f.arc++];
    double cum = cost.back() + a.weight.Value();
    if (cum >= max_cost) continue;
    arcs.push_back(a);
    states.push_back(a.nextstate);
    cost.push_back(cum);
    emit(a.nextstate);
    stack.push_back({a.nextstate, 0});
  }
  return out;
}

namespace internal {

// Cost to finish from each state: tropical distance to a final state, with
// arc count breaking ties so the chosen path stays well defined even on
// zero-weight cycles.
struct Completion {
  double cost;
  std::int64_t narcs;
  bool operator<(const Completion &o) const {
    return std::tie(cost, narcs) < std::tie(o.cost, o.narcs);
  }
  bool operator==(const Completion &o) const {
    return cost == o.cost && narcs == o.narcs;
  }
};

inline std::vector<Completion> CompletionTable(const Fst &fst) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<Completion> best(fst.NumStates(), {kInf, 0});
  std::vector<std::vector<std::pair<StateId, double>>> rev(fst.NumStates());
  for (StateId s = 0; s < fst.NumStates(); ++s)
    for (const auto &a : fst.Arcs(s))
      rev[a.nextstate].push_back({s, a.weight.Value()});

  using Entry = std::tuple<double, std::int64_t, StateId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
  for (const auto &[s, w] : fst.Finals()) {
    Completion c{w.Value(), 0};
    if (c < best[s]) {
      best[s] = c;
      heap.push({c.cost, c.narcs, s});
    }
  }
  while (!heap.empty()) {
    auto [cost, narcs, s] = heap.top();
    heap.pop();
    if (!(Completion{cost, narcs} == best[s])) continue;  // stale entry
    for (const auto &[p, w] : rev[s]) {
      Completion c{cost + w, narcs + 1};
      if (c < best[p]) {
        best[p] = c;
        heap.push({c.cost, c.narcs, p});
      }
    }
  }
  return best;
}

}  // namespace internal

// Lowest-cost accepting path.  Ties resolve to the path with fewer arcs,
// then to the one whose successor states are smallest step by step, so the
// answer is unique and stable.  Throws NoPathError when nothing accepts.
inline Path BestPath(const Fst &fst) {
  if (fst.Empty()) throw NoPathError();
  auto best = internal::CompletionTable(fst);
  const auto &total = best[fst.Start()];
  if (std::isinf(total.cost)) throw NoPathError();

  Path path;
  path.states.push_back(fst.Start());
  double remaining_cost = total.cost;
  std::int64_t remaining_arcs = total.narcs;
  StateId s = fst.Start();
  while (remaining_arcs > 0) {
    const Arc *chosen = nullptr;
    for (const auto &a : fst.Arcs(s)) {
      const auto &c = best[a.nextstate];
      if (std::isinf(c.cost)) continue;
      if (a.weight.Value() + c.cost == remaining_cost &&
          c.narcs + 1 == remaining_arcs) {
        if (!chosen || a.nextstate < chosen->nextstate) chosen = &a;
      }
    }
    if (!chosen) throw Error("best path reconstruction failed");
    path.arcs.push_back(*chosen);
    path.states.push_back(chosen->nextstate);
    remaining_cost -= chosen->weight.Value();
    --remaining_arcs;
    s = chosen->nextstate;
  }
  path.weight = Weight(total.cost);
  return path;
}

// All distinct output label sequences the machine produces for one input
// sequence, each with its lowest weight.  Walks the (state, position)
// product directly instead of building a composition.  Epsilon-input loops
// that also emit nothing are skipped; an emitting epsilon-input cycle is an
// error because it would denote infinitely many outputs.
inline std::map<std::vector<Label>, Weight> Transduce(
    const Fst &fst, const std::vector<Label> &input,
    std::size_t max_paths = 100000) {
  std::map<std::vector<Label>, Weight> out;
  if (fst.Empty()) return out;
  const std::size_t n = input.size();

  std::set<std::pair<StateId, std::size_t>> on_stack;
  std::vector<Label> output;
  std::size_t paths = 0;

  std::function<void(StateId, std::size_t, double)> walk =
      [&](StateId s, std::size_t pos, double cost) {
        if (pos == n && fst.IsFinal(s)) {
          if (++paths > max_paths)
            throw Error("transduction exceeded " +
                        std::to_string(max_paths) + " paths");
          Weight w = Weight(cost).Times(fst.Final(s));
          auto it = out.find(output);
          if (it == out.end()) out[output] = w;
          else it->second = it->second.Plus(w);
        }
        on_stack.insert({s, pos});
        for (const auto &a : fst.Arcs(s)) {
          std::size_t next_pos;
          if (a.ilabel == kEpsilon) next_pos = pos;
          else if (pos < n && a.ilabel == input[pos]) next_pos = pos + 1;
          else continue;
          if (on_stack.count({a.nextstate, next_pos})) {
            if (next_pos == pos && a.olabel == kEpsilon) continue;
            throw Error("transduction hit an epsilon-input cycle");
          }
          if (a.olabel != kEpsilon) output.push_back(a.olabel);
          walk(a.nextstate, next_pos, cost + a.weight.Value());
          if (a.olabel != kEpsilon) output.pop_back();
        }
        on_stack.erase({s, pos});
      };
  walk(fst.Start(), 0, 0.0);
  return out;
}

// Transduce() on token strings: splits, maps through the table, and renders
// outputs back to text.  Unknown input tokens yield no outputs.
inline std::map<std::string, Weight> TransduceString(
    const Fst &fst, const std::vector<std::string> &tokens) {
  std::vector<Label> input;
  for (const auto &t : tokens) {
    int id = fst.Table()->Find(t);
    if (id < 0) return {};
    input.push_back(id);
  }
  std::map<std::string, Weight> out;
  for (const auto &[labels, w] : Transduce(fst, input)) {
    std::string s;
    for (Label l : labels) s += fst.Table()->Find(l);
    auto it = out.find(s);
    if (it == out.end()) out[s] = w;
    else it->second = it->second.Plus(w);
  }
  return out;
}

}  // namespace lexfst

#endif  // LEXFST_PATHS_H_
