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

// Shared test utilities.  The rewrite and number-name oracles here are
// deliberately written with plain string algorithms, independent of the
// automata code they check.

#ifndef LEXFST_TESTS_HELPERS_H_
#define LEXFST_TESTS_HELPERS_H_

#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lexfst/fst.hpp"
#include "lexfst/paths.hpp"

namespace testutil {

using lexfst::Fst;
using lexfst::StateId;
using lexfst::SymbolTable;
using lexfst::Weight;

inline std::shared_ptr<SymbolTable> MakeTable(
    const std::vector<std::string> &tokens) {
  auto table = std::make_shared<SymbolTable>();
  for (const auto &t : tokens) table->AddSymbol(t);
  return table;
}

// The full input/output relation of a machine as a map from string pairs to
// their minimum weight.  Only usable on machines whose accepting paths all
// fit in max_arcs, i.e. acyclic ones or ones with a known bound.
using RelMap = std::map<std::pair<std::string, std::string>, double>;

inline RelMap Relation(
    const Fst &fst, int max_arcs, std::size_t max_paths = 2000000,
    double max_cost = std::numeric_limits<double>::infinity()) {
  RelMap rel;
  for (const auto &p :
       lexfst::EnumeratePaths(fst, max_arcs, max_paths, max_cost)) {
    auto key = std::make_pair(p.IString(*fst.Table()),
                              p.OString(*fst.Table()));
    auto it = rel.find(key);
    if (it == rel.end() || p.weight.Value() < it->second)
      rel[key] = p.weight.Value();
  }
  return rel;
}

// Uniform integer in [lo, hi] that does not depend on the standard
// library's distribution implementation.
inline int RandInt(std::mt19937 &rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
}

inline double PickWeight(std::mt19937 &rng,
                         const std::vector<double> &choices) {
  return choices[RandInt(rng, 0, static_cast<int>(choices.size()) - 1)];
}

// Random acyclic transducer: arcs only run from lower to higher state ids,
// so the full relation is finite and enumerable.
inline Fst RandomAcyclicFst(std::mt19937 &rng,
                            const std::shared_ptr<SymbolTable> &table,
                            const std::vector<int> &alphabet,
                            int max_states = 6) {
  Fst fst(table);
  int n = RandInt(rng, 1, max_states);
  for (int i = 0; i < n; ++i) fst.AddState();
  fst.SetStart(0);
  auto label = [&]() {
    // Epsilon shows up often enough to exercise the filters.
    if (RandInt(rng, 0, 9) < 3) return 0;
    return alphabet[RandInt(rng, 0, static_cast<int>(alphabet.size()) - 1)];
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int count = RandInt(rng, 0, 9);
      count = count < 5 ? 0 : count < 8 ? 1 : 2;
      for (int k = 0; k < count; ++k)
        fst.AddArc(i, lexfst::Arc(label(), label(),
                                  Weight(PickWeight(rng, {0, 0, 0.5, 1, 1.5})),
                                  j));
    }
  for (int i = 0; i < n; ++i)
    if (RandInt(rng, 0, 9) < 3 || (i == n - 1 && fst.Finals().empty()))
      fst.SetFinal(i, Weight(PickWeight(rng, {0, 0, 0.5, 1})));
  return fst;
}

// Variant with strictly positive weights everywhere, for closure tests:
// with every arc and final weight at least 0.5, paths using many arcs are
// provably expensive, so a weight cutoff bounds the iteration count.
inline Fst RandomPositiveFst(std::mt19937 &rng,
                             const std::shared_ptr<SymbolTable> &table,
                             const std::vector<int> &alphabet,
                             int max_states = 5) {
  Fst fst(table);
  int n = RandInt(rng, 1, max_states);
  for (int i = 0; i < n; ++i) fst.AddState();
  fst.SetStart(0);
  auto label = [&]() {
    if (RandInt(rng, 0, 9) < 2) return 0;
    return alphabet[RandInt(rng, 0, static_cast<int>(alphabet.size()) - 1)];
  };
  const std::vector<double> weights{0.5, 1, 1.5, 2, 3};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int count = RandInt(rng, 0, 9);
      count = count < 5 ? 0 : count < 8 ? 1 : 2;
      for (int k = 0; k < count; ++k)
        fst.AddArc(i, lexfst::Arc(label(), label(),
                                  Weight(PickWeight(rng, weights)), j));
    }
  for (int i = 0; i < n; ++i)
    if (RandInt(rng, 0, 9) < 3 || (i == n - 1 && fst.Finals().empty()))
      fst.SetFinal(i, Weight(PickWeight(rng, weights)));
  return fst;
}

// ---------------------------------------------------------------------------
// Reference regular-expression matcher.  Mirrors the rule-file syntax but
// works by brute-force recursion over token vectors.

struct Rx {
  enum Kind { kTok, kAny, kClass, kSeq, kAlt, kStar, kPlus, kOpt };
  Kind kind;
  std::string tok;                   // kTok
  std::vector<std::string> options;  // kClass
  std::vector<Rx> children;          // kSeq, kAlt, kStar, kPlus, kOpt
};

inline Rx RxTok(const std::string &t) { return Rx{Rx::kTok, t, {}, {}}; }
inline Rx RxAny() { return Rx{Rx::kAny, "", {}, {}}; }
inline Rx RxClass(std::vector<std::string> opts) {
  return Rx{Rx::kClass, "", std::move(opts), {}};
}
inline Rx RxSeq(std::vector<Rx> cs) {
  return Rx{Rx::kSeq, "", {}, std::move(cs)};
}
inline Rx RxAlt(std::vector<Rx> cs) {
  return Rx{Rx::kAlt, "", {}, std::move(cs)};
}
inline Rx RxStar(Rx c) { return Rx{Rx::kStar, "", {}, {std::move(c)}}; }
inline Rx RxPlus(Rx c) { return Rx{Rx::kPlus, "", {}, {std::move(c)}}; }
inline Rx RxOpt(Rx c) { return Rx{Rx::kOpt, "", {}, {std::move(c)}}; }
inline Rx RxEmpty() { return RxSeq({}); }

using Tokens = std::vector<std::string>;

// Exact match of r against tokens[lo, hi).
inline bool RxMatch(const Rx &r, const Tokens &t, int lo, int hi) {
  switch (r.kind) {
    case Rx::kTok:
      return hi == lo + 1 && t[lo] == r.tok;
    case Rx::kAny:
      return hi == lo + 1;
    case Rx::kClass:
      if (hi != lo + 1) return false;
      for (const auto &o : r.options)
        if (t[lo] == o) return true;
      return false;
    case Rx::kSeq: {
      std::function<bool(std::size_t, int)> step = [&](std::size_t idx,
                                                       int at) -> bool {
        if (idx == r.children.size()) return at == hi;
        for (int mid = at; mid <= hi; ++mid)
          if (RxMatch(r.children[idx], t, at, mid) && step(idx + 1, mid))
            return true;
        return false;
      };
      return step(0, lo);
    }
    case Rx::kAlt:
      for (const auto &c : r.children)
        if (RxMatch(c, t, lo, hi)) return true;
      return false;
    case Rx::kStar:
      if (lo == hi) return true;
      for (int mid = lo + 1; mid <= hi; ++mid)
        if (RxMatch(r.children[0], t, lo, mid) && RxMatch(r, t, mid, hi))
          return true;
      return false;
    case Rx::kPlus:
      if (RxMatch(r.children[0], t, lo, hi)) return true;
      for (int mid = lo + 1; mid < hi; ++mid)
        if (RxMatch(r.children[0], t, lo, mid) && RxMatch(r, t, mid, hi))
          return true;
      return false;
    case Rx::kOpt:
      return lo == hi || RxMatch(r.children[0], t, lo, hi);
  }
  return false;
}

// Can r match the empty sequence?
inline bool RxNullable(const Rx &r) {
  static const Tokens kNone;
  return RxMatch(r, kNone, 0, 0);
}

// Renders an oracle AST back into rule-file syntax, so generated rules can
// be pushed through the real parser.
inline std::string RxRender(const Rx &r) {
  auto paren = [](const std::string &s) { return "(" + s + ")"; };
  switch (r.kind) {
    case Rx::kTok:
      return r.tok;
    case Rx::kAny:
      return ".";
    case Rx::kClass: {
      std::string s = "[";
      for (const auto &o : r.options) s += o;
      return s + "]";
    }
    case Rx::kSeq: {
      std::string s;
      for (const auto &c : r.children) {
        bool wrap = c.kind == Rx::kAlt;
        s += wrap ? paren(RxRender(c)) : RxRender(c);
      }
      return s;
    }
    case Rx::kAlt: {
      std::string s;
      for (std::size_t i = 0; i < r.children.size(); ++i) {
        if (i) s += "|";
        s += RxRender(r.children[i]);
      }
      return s;
    }
    case Rx::kStar:
    case Rx::kPlus:
    case Rx::kOpt: {
      const Rx &c = r.children[0];
      bool wrap = c.kind != Rx::kTok && c.kind != Rx::kAny &&
                  c.kind != Rx::kClass;
      std::string body = wrap ? paren(RxRender(c)) : RxRender(c);
      return body + (r.kind == Rx::kStar ? "*"
                     : r.kind == Rx::kPlus ? "+" : "?");
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// Reference implementation of one rewrite pass.

struct RuleSpec {
  Rx phi;
  Tokens psi;
  Rx lam;  // may be RxEmpty()
  Rx rho;
  double cost = 0.0;
};

// True when lam matches some suffix of t[0, i).
inline bool LambdaOk(const Rx &lam, const Tokens &t, int i) {
  for (int j = i; j >= 0; --j)
    if (RxMatch(lam, t, j, i)) return true;
  return false;
}

// True when rho matches some prefix of t[p, n).
inline bool RhoOk(const Rx &rho, const Tokens &t, int p) {
  int n = static_cast<int>(t.size());
  for (int q = p; q <= n; ++q)
    if (RxMatch(rho, t, p, q)) return true;
  return false;
}

// Obligatory leftmost-longest rewrite with contexts read off the original
// input.  A nullable phi that finds no longer match inserts psi and then
// passes one symbol through untouched.  Returns the rewritten tokens and
// the total cost (cost per application).
inline std::pair<Tokens, double> GreedyRewrite(const RuleSpec &rule,
                                               const Tokens &input) {
  Tokens out;
  int n = static_cast<int>(input.size());
  int i = 0;
  int applications = 0;
  while (true) {
    int best = -1;
    if (LambdaOk(rule.lam, input, i)) {
      for (int len = n - i; len >= 0; --len) {
        if (RxMatch(rule.phi, input, i, i + len) &&
            RhoOk(rule.rho, input, i + len)) {
          best = len;
          break;
        }
      }
    }
    if (best >= 1) {
      out.insert(out.end(), rule.psi.begin(), rule.psi.end());
      ++applications;
      i += best;
      continue;
    }
    if (best == 0) {
      out.insert(out.end(), rule.psi.begin(), rule.psi.end());
      ++applications;
      if (i == n) break;
      out.push_back(input[i]);
      ++i;
      continue;
    }
    if (i == n) break;
    out.push_back(input[i]);
    ++i;
  }
  return {out, applications * rule.cost};
}

inline std::pair<Tokens, double> GreedyRewriteCascade(
    const std::vector<RuleSpec> &rules, const Tokens &input) {
  Tokens cur = input;
  double cost = 0.0;
  for (const auto &r : rules) {
    auto [next, c] = GreedyRewrite(r, cur);
    cur = next;
    cost += c;
  }
  return {cur, cost};
}

// Renders "phi -> psi / lam __ rho <cost>" for the rule-file parser.
inline std::string RenderRule(const RuleSpec &rule) {
  std::string line = RxRender(rule.phi) + " -> ";
  for (const auto &p : rule.psi) line += p;
  bool has_lam = !(rule.lam.kind == Rx::kSeq && rule.lam.children.empty());
  bool has_rho = !(rule.rho.kind == Rx::kSeq && rule.rho.children.empty());
  if (has_lam || has_rho) {
    line += " / " + (has_lam ? RxRender(rule.lam) : std::string()) + " __ " +
            (has_rho ? RxRender(rule.rho) : std::string());
  }
  if (rule.cost != 0.0) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", rule.cost);
    line += std::string(" <") + buf + ">";
  }
  return line;
}

// Random regex of limited depth over the alphabet.
inline Rx RandomRx(std::mt19937 &rng, const std::vector<std::string> &sigma,
                   int depth) {
  auto tok = [&]() {
    return RxTok(sigma[RandInt(rng, 0, static_cast<int>(sigma.size()) - 1)]);
  };
  if (depth <= 0) return tok();
  switch (RandInt(rng, 0, 11)) {
    case 0:
    case 1:
    case 2:
    case 3:
      return tok();
    case 4: {
      std::vector<Rx> cs;
      int k = RandInt(rng, 2, 3);
      for (int i = 0; i < k; ++i) cs.push_back(RandomRx(rng, sigma, depth - 1));
      return RxSeq(std::move(cs));
    }
    case 5:
      return RxAlt({RandomRx(rng, sigma, depth - 1),
                    RandomRx(rng, sigma, depth - 1)});
    case 6:
      return RxStar(RandomRx(rng, sigma, depth - 1));
    case 7:
      return RxPlus(RandomRx(rng, sigma, depth - 1));
    case 8:
      return RxOpt(RandomRx(rng, sigma, depth - 1));
    case 9:
      return RxAny();
    default: {
      std::vector<std::string> opts;
      for (const auto &s : sigma)
        if (RandInt(rng, 0, 1)) opts.push_back(s);
      if (opts.empty()) opts.push_back(sigma[0]);
      return RxClass(std::move(opts));
    }
  }
}

inline RuleSpec RandomRule(std::mt19937 &rng,
                           const std::vector<std::string> &sigma) {
  RuleSpec rule;
  rule.phi = RandomRx(rng, sigma, 2);
  int psi_len = RandInt(rng, 0, 3);
  for (int i = 0; i < psi_len; ++i)
    rule.psi.push_back(sigma[RandInt(rng, 0, static_cast<int>(sigma.size()) - 1)]);
  rule.lam = RandInt(rng, 0, 1) ? RandomRx(rng, sigma, 1) : RxEmpty();
  rule.rho = RandInt(rng, 0, 1) ? RandomRx(rng, sigma, 1) : RxEmpty();
  rule.cost = PickWeight(rng, {0, 0, 0.5, 1});
  return rule;
}

// ---------------------------------------------------------------------------
// German number names, written straight from the spelling rules.

inline std::string GermanNumberName(int n) {
  static const char *kUnits[] = {"null", "eins", "zwei",   "drei", "vier",
                                 "fünf", "sechs", "sieben", "acht", "neun"};
  static const char *kTeens[] = {"zehn",     "elf",      "zwölf",
                                 "dreizehn", "vierzehn", "fünfzehn",
                                 "sechzehn", "siebzehn", "achtzehn",
                                 "neunzehn"};
  static const char *kTens[] = {"",        "",        "zwanzig", "dreißig",
                                "vierzig", "fünfzig", "sechzig", "siebzig",
                                "achtzig", "neunzig"};
  auto below100 = [&](int v, bool in_compound) -> std::string {
    if (v == 1) return in_compound ? "ein" : "eins";
    if (v < 10) return kUnits[v];
    if (v < 20) return kTeens[v - 10];
    int unit = v % 10, tens = v / 10;
    if (unit == 0) return kTens[tens];
    std::string u = unit == 1 ? "ein" : kUnits[unit];
    return u + "und" + kTens[tens];
  };
  auto below1000 = [&](int v) -> std::string {
    if (v < 100) return below100(v, false);
    int h = v / 100, r = v % 100;
    std::string head = (h == 1 ? "" : std::string(kUnits[h])) + "hundert";
    return r == 0 ? head : head + below100(r, false);
  };
  if (n == 0) return "null";
  if (n < 1000) return below1000(n);
  int t = n / 1000, r = n % 1000;
  std::string head = (t == 1 ? "" : below1000(t)) + "tausend";
  return r == 0 ? head : head + below1000(r);
}

}  // namespace testutil

#endif  // LEXFST_TESTS_HELPERS_H_
