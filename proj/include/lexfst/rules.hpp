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

#ifndef LEXFST_RULES_H_
#define LEXFST_RULES_H_

#include <algorithm>
#include <cstdint>
#include <deque>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lexfst/fst.hpp"
#include "lexfst/ops.hpp"
#include "lexfst/regex.hpp"

namespace lexfst {

// One rewrite directive "phi -> psi / lam __ rho <cost>".  phi, lam and rho
// are regexes; psi is a literal token sequence.  Rewriting is obligatory,
// scans left to right, prefers the longest focus match at each position,
// and reads both contexts off the input as it was before rewriting.
struct RewriteRule {
  Regex phi;
  std::vector<Label> psi;
  Regex lam;
  Regex rho;
  double cost = 0.0;
  std::string source;
};

inline RewriteRule ParseRuleLine(const std::string &line,
                                 const std::shared_ptr<SymbolTable> &table,
                                 const std::string &file = "<rule>",
                                 int lineno = 0) {
  using internal::ExtractTrailingCost;
  using internal::FindOutsideBraces;
  using internal::Trim;

  RewriteRule rule;
  rule.source = Trim(line);

  auto arrow = FindOutsideBraces(rule.source, "->");
  if (arrow == std::string::npos)
    throw ParseError(file, lineno, "rule needs ->");
  std::string phi_text = Trim(rule.source.substr(0, arrow));
  std::string rest = Trim(rule.source.substr(arrow + 2));
  ExtractTrailingCost(&rest, &rule.cost, file, lineno);

  std::string psi_text = rest, context;
  auto slash = FindOutsideBraces(rest, "/");
  if (slash != std::string::npos) {
    psi_text = Trim(rest.substr(0, slash));
    context = Trim(rest.substr(slash + 1));
  }

  std::string lam_text, rho_text;
  if (!context.empty()) {
    auto gap = FindOutsideBraces(context, "__");
    if (gap == std::string::npos)
      throw ParseError(file, lineno, "rule context needs __");
    lam_text = Trim(context.substr(0, gap));
    rho_text = Trim(context.substr(gap + 2));
  }

  rule.phi = ParseRegex(phi_text, table, file, lineno);
  rule.lam = ParseRegex(lam_text, table, file, lineno);
  rule.rho = ParseRegex(rho_text, table, file, lineno);

  std::string psi_clean;
  for (char c : psi_text)
    if (c != ' ' && c != '\t') psi_clean += c;
  for (const auto &tok : SplitTokens(psi_clean, file, lineno))
    rule.psi.push_back(table->AddSymbol(tok));
  return rule;
}

// Reads a rule file: one rule per line, # starts a comment, blank lines
// are skipped.
inline std::vector<RewriteRule> ParseRulesText(
    std::istream &is, const std::shared_ptr<SymbolTable> &table,
    const std::string &name = "<rules>") {
  std::vector<RewriteRule> rules;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string text = internal::StripComment(line);
    if (text.empty()) continue;
    rules.push_back(ParseRuleLine(text, table, name, lineno));
  }
  return rules;
}

namespace internal {

// Expands one rule into a transducer by simulating a left-to-right scan.
//
// The machine state tracks, as NFA subsets:
//   lam    every run of the left-context matcher over some suffix of the
//          consumed input (a fresh run starts at each position)
//   focus  the runs of phi over the segment being matched, when inside one
//   oblig  right-context checks still owed by matches already taken; each
//          must reach its accept state before the mask dies or input ends
//   pend   runs of the combined focus-then-right-context machine for every
//          position scanned past (and for shorter variants of matches
//          taken); if any run completes, a mandatory application was
//          skipped, so the transition is dropped
//
// Together these force exactly the obligatory leftmost-longest behavior:
// a surviving accepting path exists for every input, and only one.
class RuleExpansion {
 public:
  RuleExpansion(const RewriteRule &rule,
                const std::shared_ptr<SymbolTable> &table)
      : rule_(rule), table_(table),
        phi_(rule.phi, Describe("focus")),
        lam_(rule.lam, Describe("left context")),
        rho_(rule.rho, Describe("right context")),
        pair_(phi_, rho_, Describe("focus with right context")) {}

  Fst Compile() {
    Fst fst(table_);
    Key start{lam_.StartMask(), kScan, 0, {}, 0};
    StateId s0 = Intern(&fst, start);
    fst.SetStart(s0);
    while (!work_.empty()) {
      Key key = work_.front();
      work_.pop_front();
      Expand(&fst, key, ids_.at(key));
    }
    return fst;
  }

 private:
  enum Mode { kScan = 0, kFocus = 1, kAfterIns = 2 };

  struct Key {
    std::uint64_t lam;
    int mode;
    std::uint64_t focus;
    std::vector<std::uint64_t> oblig;
    std::uint64_t pend;

    bool operator<(const Key &o) const {
      if (lam != o.lam) return lam < o.lam;
      if (mode != o.mode) return mode < o.mode;
      if (focus != o.focus) return focus < o.focus;
      if (pend != o.pend) return pend < o.pend;
      return oblig < o.oblig;
    }
  };

  std::string Describe(const char *part) const {
    return std::string(part) + " of rule \"" + rule_.source + "\"";
  }

  StateId Intern(Fst *fst, const Key &key) {
    auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;
    if (ids_.size() >= kMaxStates)
      throw Error("rewrite rule \"" + rule_.source +
                  "\" expands past " + std::to_string(kMaxStates) +
                  " states");
    StateId s = fst->AddState();
    ids_[key] = s;
    work_.push_back(key);
    return s;
  }

  // Steps every owed right-context run on sym.  Returns false when a run
  // dies unsatisfied, which kills the whole transition.
  bool StepOblig(const std::vector<std::uint64_t> &in, Label sym,
                 std::vector<std::uint64_t> *out) const {
    for (std::uint64_t mask : in) {
      std::uint64_t next = rho_.Step(mask, sym);
      if (rho_.Accepts(next)) continue;
      if (next == 0) return false;
      out->push_back(next);
    }
    std::sort(out->begin(), out->end());
    out->erase(std::unique(out->begin(), out->end()), out->end());
    return true;
  }

  // Adds the right-context check for a match taken at the current point.
  // Immediately satisfied checks vanish.
  static void AddOblig(const TokenNfa &rho, std::vector<std::uint64_t> *oblig) {
    std::uint64_t seed = rho.StartMask();
    if (rho.Accepts(seed)) return;
    oblig->push_back(seed);
    std::sort(oblig->begin(), oblig->end());
    oblig->erase(std::unique(oblig->begin(), oblig->end()), oblig->end());
  }

  // Appends the psi emission chain from |from| to |to|, rule cost on the
  // first arc.
  void EmitPsi(Fst *fst, StateId from, StateId to) const {
    Weight cost(rule_.cost);
    if (rule_.psi.empty()) {
      fst->AddArc(from, Arc(kEpsilon, kEpsilon, cost, to));
      return;
    }
    StateId cur = from;
    for (std::size_t i = 0; i < rule_.psi.size(); ++i) {
      StateId next = i + 1 == rule_.psi.size() ? to : fst->AddState();
      fst->AddArc(cur, Arc(kEpsilon, rule_.psi[i],
                           i == 0 ? cost : Weight::One(), next));
      cur = next;
    }
  }

  void Expand(Fst *fst, const Key &key, StateId s) {
    bool lam_ok = lam_.Accepts(key.lam);
    bool zero_width = phi_.MatchesEmpty();

    // A state is final unless a match is open, a right context is owed, or
    // an insertion is due at the end of input.
    if (key.mode != kFocus && key.oblig.empty() &&
        !(key.mode == kScan && lam_ok && zero_width && rho_.MatchesEmpty()))
      fst->SetFinal(s);

    int nsyms = table_->NumSymbols();
    if (key.mode == kScan || key.mode == kAfterIns) {
      for (Label sym = 1; sym < nsyms; ++sym) {
        std::uint64_t lam2 = lam_.Step(key.lam, sym) | lam_.StartMask();
        std::vector<std::uint64_t> oblig2;
        if (!StepOblig(key.oblig, sym, &oblig2)) continue;

        // Consume sym unchanged.  Scanning past a position claims that no
        // application starts there, so the claim run is seeded; it dies
        // the moment the claim is disproved.
        std::uint64_t claims = key.pend;
        if (key.mode == kScan && lam_ok) claims |= pair_.StartMask();
        if (!pair_.Accepts(claims)) {
          std::uint64_t pend2 = pair_.Step(claims, sym);
          if (!pair_.Accepts(pend2)) {
            Key next{lam2, kScan, 0, oblig2, pend2};
            fst->AddArc(s, Arc(sym, sym, Weight::One(), Intern(fst, next)));
          }
        }

        // Open a match whose focus starts with sym.
        if (key.mode == kScan && lam_ok) {
          std::uint64_t f1 = phi_.Step(phi_.StartMask(), sym);
          if (f1 != 0) {
            std::uint64_t pend2 = pair_.Step(key.pend, sym);
            if (!pair_.Accepts(pend2)) {
              Key next{lam2, kFocus, f1, oblig2, pend2};
              fst->AddArc(s, Arc(sym, kEpsilon, Weight::One(),
                                 Intern(fst, next)));
            }
          }
        }
      }

      // Insert psi over an empty focus.  The scan resumes one symbol
      // later; meanwhile pending runs of the focus machine watch for a
      // longer match here, which would have taken priority.
      if (key.mode == kScan && lam_ok && zero_width) {
        std::vector<std::uint64_t> oblig2 = key.oblig;
        AddOblig(rho_, &oblig2);
        std::uint64_t pend2 = key.pend | phi_.StartMask();
        Key next{key.lam, kAfterIns, 0, oblig2, pend2};
        StateId target = Intern(fst, next);
        EmitPsi(fst, s, target);
      }
    } else {  // kFocus
      for (Label sym = 1; sym < nsyms; ++sym) {
        std::uint64_t f2 = phi_.Step(key.focus, sym);
        if (f2 == 0) continue;
        std::uint64_t lam2 = lam_.Step(key.lam, sym) | lam_.StartMask();
        std::vector<std::uint64_t> oblig2;
        if (!StepOblig(key.oblig, sym, &oblig2)) continue;
        std::uint64_t pend2 = pair_.Step(key.pend, sym);
        if (pair_.Accepts(pend2)) continue;
        Key next{lam2, kFocus, f2, oblig2, pend2};
        fst->AddArc(s, Arc(sym, kEpsilon, Weight::One(), Intern(fst, next)));
      }

      if (phi_.Accepts(key.focus)) {
        // Close the match: emit psi, owe the right context, and keep the
        // focus runs alive to rule out a longer match from the same spot.
        std::vector<std::uint64_t> oblig2 = key.oblig;
        AddOblig(rho_, &oblig2);
        std::uint64_t pend2 = key.pend | key.focus;
        Key next{key.lam, kScan, 0, oblig2, pend2};
        StateId target = Intern(fst, next);
        EmitPsi(fst, s, target);
      }
    }
  }

  static constexpr std::size_t kMaxStates = 200000;

  const RewriteRule &rule_;
  std::shared_ptr<SymbolTable> table_;
  TokenNfa phi_, lam_, rho_, pair_;
  std::map<Key, StateId> ids_;
  std::deque<Key> work_;
};

}  // namespace internal

inline Fst CompileRule(const RewriteRule &rule,
                       const std::shared_ptr<SymbolTable> &table) {
  return internal::RuleExpansion(rule, table).Compile();
}

// A rule file denotes the composition of its rules, applied top to bottom.
inline Fst CompileRules(const std::vector<RewriteRule> &rules,
                        const std::shared_ptr<SymbolTable> &table) {
  if (rules.empty()) return AvoidSymbols(table, {});
  Fst acc = CompileRule(rules[0], table);
  for (std::size_t i = 1; i < rules.size(); ++i)
    acc = Connect(Compose(acc, CompileRule(rules[i], table)));
  return acc;
}

}  // namespace lexfst

#endif  // LEXFST_RULES_H_
