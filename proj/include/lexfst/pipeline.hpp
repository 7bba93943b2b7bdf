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

#ifndef LEXFST_PIPELINE_H_
#define LEXFST_PIPELINE_H_

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lexfst/errors.hpp"
#include "lexfst/fst.hpp"
#include "lexfst/ops.hpp"
#include "lexfst/paths.hpp"
#include "lexfst/symbols.hpp"

namespace lexfst {

// The named grammar components of one language, all sharing one symbol
// table.  Every machine is stored in the generative direction, reading an
// analysis and writing text; the analyzer inverts them.  A component left
// unset simply contributes no branch.
//
//   word       lexical analysis -> annotated stem form
//   surface    annotated stem form -> spelling
//   abbr       lexical analysis -> abbreviated spelling
//   numbers    number name -> digit string
//   special    lexical analysis -> sign (percent and friends)
//   space      {wb} -> separator text
//   punct      {pb} -> punctuation text
//   lm         rewrite cascades applied to the analysis lattice, in order
//   mma_map    lexical analysis -> annotated pronunciation form
//   phon       annotated pronunciation form -> phonemes
struct GrammarSet {
  std::shared_ptr<SymbolTable> table;
  std::optional<Fst> word;
  std::optional<Fst> surface;
  std::optional<Fst> abbr;
  std::optional<Fst> numbers;
  std::optional<Fst> special;
  std::optional<Fst> space;
  std::optional<Fst> punct;
  std::vector<Fst> lm;
  std::optional<Fst> mma_map;
  std::optional<Fst> phon;
  std::vector<std::string> filter_tags{"{*}"};

  // Cache filled by the manifest loader; analyze() rebuilds when unset.
  std::optional<Fst> analyzer;
};

inline constexpr char kWordBoundaryToken[] = "{wb}";
inline constexpr char kPhraseBoundaryToken[] = "{pb}";

// (state count, arc count) of a machine, the shape reported by stats.
inline std::pair<int, std::size_t> Stats(const Fst &fst) {
  std::size_t arcs = 0;
  for (StateId s = 0; s < fst.NumStates(); ++s) arcs += fst.Arcs(s).size();
  return {fst.NumStates(), arcs};
}

// Generative whitespace model: one {wb} covers a nonempty run of blanks,
// tabs and newlines.
inline Fst BuildWhitespaceModel(const std::shared_ptr<SymbolTable> &table) {
  Label wb = table->AddSymbol(kWordBoundaryToken);
  Label ws[] = {table->AddSymbol(" "), table->AddSymbol("\t"),
                table->AddSymbol("\n")};
  Fst fst(table);
  StateId s0 = fst.AddState();
  StateId s1 = fst.AddState();
  fst.SetStart(s0);
  fst.SetFinal(s1);
  for (Label c : ws) {
    fst.AddArc(s0, Arc(wb, c, Weight::One(), s1));
    fst.AddArc(s1, Arc(kEpsilon, c, Weight::One(), s1));
  }
  return fst;
}

// Generative punctuation model: one {pb} covers a single mark with optional
// flanking whitespace.  Inverted, the shortest match is the bare mark, so
// the separator side of the analyzer always consumes at least one
// character through this machine.
inline Fst BuildPunctModel(const std::shared_ptr<SymbolTable> &table,
                           const std::vector<std::string> &marks) {
  if (marks.empty()) throw Error("punctuation model needs at least one mark");
  Label pb = table->AddSymbol(kPhraseBoundaryToken);
  Label ws[] = {table->AddSymbol(" "), table->AddSymbol("\t"),
                table->AddSymbol("\n")};
  Fst fst(table);
  StateId s0 = fst.AddState();
  StateId before = fst.AddState();
  StateId after = fst.AddState();
  fst.SetStart(s0);
  fst.SetFinal(after);
  fst.AddArc(s0, Arc(pb, kEpsilon, Weight::One(), before));
  for (Label c : ws) {
    fst.AddArc(before, Arc(kEpsilon, c, Weight::One(), before));
    fst.AddArc(after, Arc(kEpsilon, c, Weight::One(), after));
  }
  for (const auto &mark : marks) {
    Label m = table->AddSymbol(mark);
    fst.AddArc(before, Arc(kEpsilon, m, Weight::One(), after));
  }
  return fst;
}

// Identity acceptor that deletes every {...} tag.  Like the rule compiler,
// it only covers symbols registered when it is built.
inline Fst BuildTagDeleter(const std::shared_ptr<SymbolTable> &table) {
  Fst fst(table);
  StateId s = fst.AddState();
  fst.SetStart(s);
  fst.SetFinal(s);
  const auto &tokens = table->Tokens();
  for (int id = 1; id < static_cast<int>(tokens.size()); ++id) {
    const std::string &t = tokens[id];
    bool tag = t.size() >= 2 && t.front() == '{' && t.back() == '}';
    fst.AddArc(s, Arc(id, tag ? kEpsilon : id, Weight::One(), s));
  }
  return fst;
}

namespace internal {

inline void CheckNonEmptyComponent(const std::optional<Fst> &m,
                                   const char *name) {
  if (m && m->Empty())
    throw Error(std::string(name) + " machine is empty");
}

// True when some accepting path consumes no input symbols.
inline bool AcceptsEpsilonInput(const Fst &fst) {
  if (fst.Empty()) return false;
  std::vector<bool> seen(fst.NumStates(), false);
  std::vector<StateId> queue{fst.Start()};
  seen[fst.Start()] = true;
  while (!queue.empty()) {
    StateId s = queue.back();
    queue.pop_back();
    if (fst.IsFinal(s)) return true;
    for (const auto &a : fst.Arcs(s)) {
      if (a.ilabel == kEpsilon && !seen[a.nextstate]) {
        seen[a.nextstate] = true;
        queue.push_back(a.nextstate);
      }
    }
  }
  return false;
}

inline Fst BuildAnalyzerImpl(const GrammarSet &g, const Fst *extra_token) {
  if (!g.table) throw Error("grammar set has no symbol table");
  CheckNonEmptyComponent(g.word, "word");
  CheckNonEmptyComponent(g.surface, "surface");
  CheckNonEmptyComponent(g.abbr, "abbr");
  CheckNonEmptyComponent(g.numbers, "numbers");
  CheckNonEmptyComponent(g.special, "special");
  CheckNonEmptyComponent(g.space, "space");
  CheckNonEmptyComponent(g.punct, "punct");
  if (g.surface && !g.word)
    throw Error("surface machine requires a word machine");

  std::optional<Fst> tok;
  auto add_branch = [&](Fst b) {
    tok = tok ? Union(*tok, std::move(b)) : std::move(b);
  };
  if (g.word) {
    Fst chain = g.surface ? Connect(Compose(*g.word, *g.surface)) : *g.word;
    if (chain.Empty())
      throw Error("word and surface machines compose to an empty machine");
    add_branch(Invert(chain));
  }
  if (g.abbr) add_branch(Invert(*g.abbr));
  if (g.numbers) {
    Fst branch = Invert(*g.numbers);
    if (g.special)
      branch = Concat(std::move(branch), Optional(Invert(*g.special)));
    add_branch(std::move(branch));
  }
  if (g.special) add_branch(Invert(*g.special));
  if (extra_token) add_branch(*extra_token);
  if (!tok) throw Error("grammar set has no token machines");

  if (!g.space) throw Error("space machine is missing");
  Fst sep = Invert(*g.space);
  if (g.punct) sep = Union(std::move(sep), Invert(*g.punct));

  // With an epsilon space model (undelimited scripts) the tokens themselves
  // must consume text, or the analysis lattice would grow cycles.
  if (AcceptsEpsilonInput(*tok) && AcceptsEpsilonInput(sep))
    throw Error(
        "token and separator machines both accept empty input; "
        "the analyzer would admit unbounded empty tokens");

  return Concat(ClosureStar(Concat(*tok, sep)), Optional(*tok));
}

// Longest prefix of the token sequence consumable by the analyzer,
// tracking (analyzer state, position) pairs.  Used to point at the first
// failing span when analysis comes up empty.
inline std::size_t MaxConsumedPrefix(const std::vector<std::string> &tokens,
                                     const Fst &analyzer) {
  if (analyzer.Empty()) return 0;
  const auto &table = *analyzer.Table();
  std::vector<Label> labels;
  labels.reserve(tokens.size());
  for (const auto &tok : tokens) labels.push_back(table.Find(tok));

  std::size_t width = tokens.size() + 1;
  std::vector<bool> seen(static_cast<std::size_t>(analyzer.NumStates()) *
                         width);
  std::vector<std::pair<StateId, std::size_t>> queue{{analyzer.Start(), 0}};
  seen[analyzer.Start() * width] = true;
  std::size_t best = 0;
  while (!queue.empty()) {
    auto [s, pos] = queue.back();
    queue.pop_back();
    if (pos > best) best = pos;
    for (const auto &a : analyzer.Arcs(s)) {
      std::size_t next = pos;
      if (a.ilabel != kEpsilon) {
        if (pos == tokens.size() || a.ilabel != labels[pos]) continue;
        next = pos + 1;
      }
      std::size_t key = a.nextstate * width + next;
      if (!seen[key]) {
        seen[key] = true;
        queue.emplace_back(a.nextstate, next);
      }
    }
  }
  return best;
}

inline std::string JoinFrom(const std::vector<std::string> &tokens,
                            std::size_t from) {
  std::string out;
  for (std::size_t i = from; i < tokens.size(); ++i) out += tokens[i];
  return out;
}

inline Fst ComposeWithAnalyzer(const std::vector<std::string> &chars,
                               const Fst &analyzer,
                               const std::shared_ptr<SymbolTable> &table) {
  for (std::size_t i = 0; i < chars.size(); ++i) {
    if (!table->Member(chars[i]))
      throw NoAnalysisError(i, JoinFrom(chars, i));
  }
  Fst input = CompileString(table, chars, false);
  Fst lattice = Connect(Compose(input, analyzer));
  if (lattice.Empty()) {
    std::size_t at = MaxConsumedPrefix(chars, analyzer);
    throw NoAnalysisError(at, JoinFrom(chars, at));
  }
  return lattice;
}

}  // namespace internal

// The surface-to-analysis transducer (token separator)* token?, built from
// the inverted generative components.
inline Fst BuildAnalyzer(const GrammarSet &g) {
  return internal::BuildAnalyzerImpl(g, nullptr);
}

// Lattice of every analysis of the text: the input projection spells the
// text, the output projection lists candidate analyses with costs.  Throws
// NoAnalysisError locating the earliest uncovered span.
inline Fst Analyze(const std::string &text, const GrammarSet &g) {
  auto chars = SplitChars(text);
  if (g.analyzer)
    return internal::ComposeWithAnalyzer(chars, *g.analyzer, g.table);
  return internal::ComposeWithAnalyzer(chars, BuildAnalyzer(g), g.table);
}

// Like Analyze, but with an extra token branch accepting any run of the
// text's own characters at fallback_cost per character, so whole-text
// analysis cannot fail.  Registers unseen characters in the shared symbol
// table, so unlike the strict entry points this must not run concurrently
// with other uses of the grammar set.
inline Fst AnalyzePermissive(const std::string &text, const GrammarSet &g,
                             double fallback_cost = 100.0) {
  if (!g.table) throw Error("grammar set has no symbol table");
  auto chars = SplitChars(text);
  Fst fallback(g.table);
  StateId s0 = fallback.AddState();
  StateId s1 = fallback.AddState();
  fallback.SetStart(s0);
  fallback.SetFinal(s1);
  std::set<std::string> distinct(chars.begin(), chars.end());
  for (const auto &tok : distinct) {
    Label l = g.table->AddSymbol(tok);
    fallback.AddArc(s0, Arc(l, l, Weight(fallback_cost), s1));
    fallback.AddArc(s1, Arc(l, l, Weight(fallback_cost), s1));
  }
  Fst analyzer = internal::BuildAnalyzerImpl(g, &fallback);
  return internal::ComposeWithAnalyzer(chars, analyzer, g.table);
}

// Applies the rewrite cascades, then drops every path still carrying a
// filter tag.  The cascades run first, so they may rescue a tagged
// analysis by rewriting the tag away.
inline Fst Disambiguate(const Fst &lattice, const GrammarSet &g) {
  Fst cur = lattice;
  for (const auto &cascade : g.lm) cur = Connect(Compose(cur, cascade));
  cur = Connect(Compose(cur, AvoidSymbols(g.table, g.filter_tags)));
  if (cur.Empty()) throw EmptyAfterFilteringError();
  return cur;
}

// Cheapest path of the disambiguated lattice.
inline Path Select(const Fst &lattice) { return BestPath(lattice); }

// Maps the selected analysis through the annotation and pronunciation
// machines and returns the phoneme tokens of the cheapest rendition.
inline std::vector<std::string> Pronounce(const Path &lexical,
                                          const GrammarSet &g) {
  if (!g.mma_map || !g.phon)
    throw Error("grammar set has no pronunciation chain (mma, phon)");
  std::vector<std::string> tokens;
  for (const auto &a : lexical.arcs)
    if (a.olabel != kEpsilon) tokens.push_back(g.table->Find(a.olabel));

  Fst input = CompileString(g.table, tokens, false);
  Fst annotated = Connect(Compose(input, *g.mma_map));
  if (annotated.Empty()) throw NoPronunciationError(internal::JoinFrom(tokens, 0));
  Fst chain = Connect(Compose(annotated, *g.phon));
  if (chain.Empty()) throw NoPronunciationError(internal::JoinFrom(tokens, 0));

  Path best = BestPath(chain);
  std::vector<std::string> phonemes;
  for (const auto &a : best.arcs)
    if (a.olabel != kEpsilon) phonemes.push_back(g.table->Find(a.olabel));
  return phonemes;
}

struct AnalyzeTextResult {
  Path lexical;
  std::vector<std::string> phonemes;
};

// Full pipeline: analyze, disambiguate, select, pronounce.  Each stage
// names itself in the error it throws.
inline AnalyzeTextResult AnalyzeText(const std::string &text,
                                     const GrammarSet &g,
                                     bool permissive = false) {
  Fst lattice = permissive ? AnalyzePermissive(text, g) : Analyze(text, g);
  Fst pruned = Disambiguate(lattice, g);
  Path best = Select(pruned);
  return {best, Pronounce(best, g)};
}

}  // namespace lexfst

#endif  // LEXFST_PIPELINE_H_
