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

#ifndef LEXFST_REGEX_H_
#define LEXFST_REGEX_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <functional>

#include "lexfst/fst.hpp"

namespace lexfst {

// Regular expressions over tokens.  Metacharacters: ( ) | * + ? [ ] . and
// backslash to escape them; whitespace between atoms is ignored.  Brace
// groups and backquoted characters are single tokens as everywhere else.
struct Regex {
  enum Kind { kToken, kAny, kClass, kSeq, kAlt, kStar, kPlus, kOpt };
  Kind kind;
  Label sym = kEpsilon;      // kToken
  std::vector<Label> syms;   // kClass
  std::vector<Regex> kids;
};

namespace internal {

struct RegexLexeme {
  enum Kind { kSym, kMeta } kind;
  char meta = 0;         // one of ( ) | * + ? [ ] .
  std::string token;
};

inline std::vector<RegexLexeme> LexRegex(const std::string &text,
                                         const std::string &file, int line) {
  std::vector<RegexLexeme> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t') {
      ++i;
      continue;
    }
    if (std::string("()|*+?[].").find(c) != std::string::npos) {
      out.push_back({RegexLexeme::kMeta, c, ""});
      ++i;
      continue;
    }
    if (c == '\\') {
      if (i + 1 >= text.size())
        throw ParseError(file, line, "dangling backslash in regex");
      int n = Utf8SeqLen(static_cast<unsigned char>(text[i + 1]));
      out.push_back({RegexLexeme::kSym, 0, text.substr(i + 1, n)});
      i += 1 + n;
      continue;
    }
    if (c == '{') {
      auto close = text.find('}', i);
      if (close == std::string::npos)
        throw ParseError(file, line, "unclosed { in regex");
      std::string tok = text.substr(i, close - i + 1);
      if (tok == "{sp}") tok = " ";
      else if (tok == "{tab}") tok = "\t";
      else if (tok == "{nl}") tok = "\n";
      out.push_back({RegexLexeme::kSym, 0, tok});
      i = close + 1;
      continue;
    }
    if (c == '`') {
      if (i + 1 >= text.size())
        throw ParseError(file, line, "dangling ` in regex");
      int n = Utf8SeqLen(static_cast<unsigned char>(text[i + 1]));
      out.push_back({RegexLexeme::kSym, 0, text.substr(i, n + 1)});
      i += 1 + n;
      continue;
    }
    int n = Utf8SeqLen(static_cast<unsigned char>(c));
    out.push_back({RegexLexeme::kSym, 0, text.substr(i, n)});
    i += n;
  }
  return out;
}

class RegexParser {
 public:
  RegexParser(std::vector<RegexLexeme> lexemes,
              std::shared_ptr<SymbolTable> table, std::string file, int line)
      : lexemes_(std::move(lexemes)), table_(std::move(table)),
        file_(std::move(file)), line_(line) {}

  Regex Parse() {
    Regex r = ParseAlt();
    if (pos_ != lexemes_.size())
      throw ParseError(file_, line_, "unexpected trailing regex input");
    return r;
  }

 private:
  bool AtMeta(char c) const {
    return pos_ < lexemes_.size() &&
           lexemes_[pos_].kind == RegexLexeme::kMeta &&
           lexemes_[pos_].meta == c;
  }

  Regex ParseAlt() {
    Regex first = ParseSeq();
    if (!AtMeta('|')) return first;
    Regex alt{Regex::kAlt};
    alt.kids.push_back(std::move(first));
    while (AtMeta('|')) {
      ++pos_;
      alt.kids.push_back(ParseSeq());
    }
    return alt;
  }

  Regex ParseSeq() {
    Regex seq{Regex::kSeq};
    while (pos_ < lexemes_.size() && !AtMeta('|') && !AtMeta(')'))
      seq.kids.push_back(ParsePostfix());
    if (seq.kids.size() == 1) return std::move(seq.kids[0]);
    return seq;
  }

  Regex ParsePostfix() {
    Regex r = ParseAtom();
    while (pos_ < lexemes_.size()) {
      if (AtMeta('*')) r = Wrap(Regex::kStar, std::move(r));
      else if (AtMeta('+')) r = Wrap(Regex::kPlus, std::move(r));
      else if (AtMeta('?')) r = Wrap(Regex::kOpt, std::move(r));
      else break;
      ++pos_;
    }
    return r;
  }

  static Regex Wrap(Regex::Kind kind, Regex inner) {
    Regex r{kind};
    r.kids.push_back(std::move(inner));
    return r;
  }

  Regex ParseAtom() {
    if (pos_ >= lexemes_.size())
      throw ParseError(file_, line_, "regex ended where an atom was expected");
    const RegexLexeme &lx = lexemes_[pos_];
    if (lx.kind == RegexLexeme::kSym) {
      Regex r{Regex::kToken};
      r.sym = table_->AddSymbol(lx.token);
      ++pos_;
      return r;
    }
    switch (lx.meta) {
      case '.': {
        ++pos_;
        return Regex{Regex::kAny};
      }
      case '(': {
        ++pos_;
        Regex inner = ParseAlt();
        if (!AtMeta(')'))
          throw ParseError(file_, line_, "missing ) in regex");
        ++pos_;
        return inner;
      }
      case '[': {
        ++pos_;
        Regex r{Regex::kClass};
        while (!AtMeta(']')) {
          if (pos_ >= lexemes_.size())
            throw ParseError(file_, line_, "missing ] in regex");
          if (lexemes_[pos_].kind != RegexLexeme::kSym)
            throw ParseError(file_, line_,
                             "only plain tokens may appear in a class");
          r.syms.push_back(table_->AddSymbol(lexemes_[pos_].token));
          ++pos_;
        }
        ++pos_;
        if (r.syms.empty())
          throw ParseError(file_, line_, "empty class in regex");
        return r;
      }
      default:
        throw ParseError(file_, line_,
                         std::string("unexpected ") + lx.meta + " in regex");
    }
  }

  std::vector<RegexLexeme> lexemes_;
  std::shared_ptr<SymbolTable> table_;
  std::string file_;
  int line_;
  std::size_t pos_ = 0;
};

}  // namespace internal

inline Regex ParseRegex(const std::string &text,
                        const std::shared_ptr<SymbolTable> &table,
                        const std::string &file = "<regex>", int line = 0) {
  internal::RegexParser parser(internal::LexRegex(text, file, line), table,
                               file, line);
  return parser.Parse();
}

// Unweighted acceptor for the language of re.  "." and classes expand over
// the symbols known to the table at call time.
inline Fst CompileRegex(const Regex &re,
                        const std::shared_ptr<SymbolTable> &table) {
  Fst fst(table);
  StateId start = fst.AddState();
  fst.SetStart(start);

  // Builds the fragment for r between a fresh pair of states, returning
  // (entry, exit).
  std::function<std::pair<StateId, StateId>(const Regex &)> build =
      [&](const Regex &r) -> std::pair<StateId, StateId> {
    StateId s = fst.AddState();
    StateId t = fst.AddState();
    switch (r.kind) {
      case Regex::kToken:
        fst.AddArc(s, Arc(r.sym, r.sym, Weight::One(), t));
        break;
      case Regex::kAny:
        for (Label sym = 1; sym < table->NumSymbols(); ++sym)
          fst.AddArc(s, Arc(sym, sym, Weight::One(), t));
        break;
      case Regex::kClass:
        for (Label sym : r.syms)
          fst.AddArc(s, Arc(sym, sym, Weight::One(), t));
        break;
      case Regex::kSeq: {
        StateId at = s;
        for (const Regex &kid : r.kids) {
          auto [ks, kt] = build(kid);
          fst.AddArc(at, Arc(kEpsilon, kEpsilon, Weight::One(), ks));
          at = kt;
        }
        fst.AddArc(at, Arc(kEpsilon, kEpsilon, Weight::One(), t));
        break;
      }
      case Regex::kAlt:
        for (const Regex &kid : r.kids) {
          auto [ks, kt] = build(kid);
          fst.AddArc(s, Arc(kEpsilon, kEpsilon, Weight::One(), ks));
          fst.AddArc(kt, Arc(kEpsilon, kEpsilon, Weight::One(), t));
        }
        break;
      case Regex::kStar: {
        auto [ks, kt] = build(r.kids[0]);
        fst.AddArc(s, Arc(kEpsilon, kEpsilon, Weight::One(), ks));
        fst.AddArc(s, Arc(kEpsilon, kEpsilon, Weight::One(), t));
        fst.AddArc(kt, Arc(kEpsilon, kEpsilon, Weight::One(), ks));
        fst.AddArc(kt, Arc(kEpsilon, kEpsilon, Weight::One(), t));
        break;
      }
      case Regex::kPlus: {
        auto [ks, kt] = build(r.kids[0]);
        fst.AddArc(s, Arc(kEpsilon, kEpsilon, Weight::One(), ks));
        fst.AddArc(kt, Arc(kEpsilon, kEpsilon, Weight::One(), ks));
        fst.AddArc(kt, Arc(kEpsilon, kEpsilon, Weight::One(), t));
        break;
      }
      case Regex::kOpt: {
        auto [ks, kt] = build(r.kids[0]);
        fst.AddArc(s, Arc(kEpsilon, kEpsilon, Weight::One(), ks));
        fst.AddArc(s, Arc(kEpsilon, kEpsilon, Weight::One(), t));
        fst.AddArc(kt, Arc(kEpsilon, kEpsilon, Weight::One(), t));
        break;
      }
    }
    return {s, t};
  };

  auto [s, t] = build(re);
  fst.AddArc(start, Arc(kEpsilon, kEpsilon, Weight::One(), s));
  fst.SetFinal(t);
  return fst;
}

inline Fst CompileRegex(const std::string &text,
                        const std::shared_ptr<SymbolTable> &table,
                        const std::string &file = "<regex>", int line = 0) {
  return CompileRegex(ParseRegex(text, table, file, line), table);
}

// Thompson construction with at most 64 states, so subsets fit in one
// machine word.  Symbol predicates stay symbolic ("any", explicit set), so
// stepping works for every symbol the table may later contain.
class TokenNfa {
 public:
  static constexpr int kMaxStates = 64;

  explicit TokenNfa(const Regex &re, const std::string &what = "regex") {
    auto [s, t] = Build(re, what);
    start_ = s;
    accept_ = t;
    ComputeClosures();
  }

  // Two machines glued with an epsilon edge from the first's accept to the
  // second's start; used for focus-plus-right-context claims.
  TokenNfa(const TokenNfa &head, const TokenNfa &tail,
           const std::string &what = "regex pair") {
    int total = head.NumStates() + tail.NumStates();
    if (total > kMaxStates)
      throw Error(what + " needs " + std::to_string(total) +
                  " states; the limit is 64");
    edges_ = head.edges_;
    eps_ = head.eps_;
    int off = head.NumStates();
    for (int i = 0; i < tail.NumStates(); ++i) {
      edges_.push_back(tail.edges_[i]);
      for (auto &e : edges_.back()) e.next += off;
      eps_.push_back(tail.eps_[i]);
      for (auto &n : eps_.back()) n += off;
    }
    eps_[head.accept_].push_back(tail.start_ + off);
    start_ = head.start_;
    accept_ = tail.accept_ + off;
    ComputeClosures();
  }

  int NumStates() const { return static_cast<int>(edges_.size()); }

  std::uint64_t StartMask() const { return closure_[start_]; }
  std::uint64_t AcceptBit() const { return std::uint64_t{1} << accept_; }
  bool Accepts(std::uint64_t mask) const { return mask & AcceptBit(); }
  bool MatchesEmpty() const { return Accepts(StartMask()); }

  // One-symbol move plus epsilon closure.
  std::uint64_t Step(std::uint64_t mask, Label sym) const {
    std::uint64_t next = 0;
    for (int i = 0; i < NumStates(); ++i) {
      if (!(mask & (std::uint64_t{1} << i))) continue;
      for (const auto &e : edges_[i])
        if (MatchesEdge(e, sym)) next |= closure_[e.next];
    }
    return next;
  }

 private:
  struct Edge {
    enum Kind { kSym, kAny, kSet } kind;
    Label sym;
    std::vector<Label> set;
    int next;
  };

  static bool MatchesEdge(const Edge &e, Label sym) {
    switch (e.kind) {
      case Edge::kSym: return sym == e.sym;
      case Edge::kAny: return sym != kEpsilon;
      case Edge::kSet:
        for (Label l : e.set)
          if (l == sym) return true;
        return false;
    }
    return false;
  }

  int NewState(const std::string &what) {
    if (NumStates() >= kMaxStates)
      throw Error(what + " is too complex; the pattern limit is 64 states");
    edges_.emplace_back();
    eps_.emplace_back();
    return NumStates() - 1;
  }

  std::pair<int, int> Build(const Regex &re, const std::string &what) {
    switch (re.kind) {
      case Regex::kToken: {
        int s = NewState(what), t = NewState(what);
        edges_[s].push_back({Edge::kSym, re.sym, {}, t});
        return {s, t};
      }
      case Regex::kAny: {
        int s = NewState(what), t = NewState(what);
        edges_[s].push_back({Edge::kAny, kEpsilon, {}, t});
        return {s, t};
      }
      case Regex::kClass: {
        int s = NewState(what), t = NewState(what);
        edges_[s].push_back({Edge::kSet, kEpsilon, re.syms, t});
        return {s, t};
      }
      case Regex::kSeq: {
        int s = NewState(what), prev = s;
        for (const auto &k : re.kids) {
          auto [ks, kt] = Build(k, what);
          eps_[prev].push_back(ks);
          prev = kt;
        }
        return {s, prev};
      }
      case Regex::kAlt: {
        int s = NewState(what), t = NewState(what);
        for (const auto &k : re.kids) {
          auto [ks, kt] = Build(k, what);
          eps_[s].push_back(ks);
          eps_[kt].push_back(t);
        }
        return {s, t};
      }
      case Regex::kStar: {
        int s = NewState(what), t = NewState(what);
        auto [ks, kt] = Build(re.kids[0], what);
        eps_[s].push_back(ks);
        eps_[s].push_back(t);
        eps_[kt].push_back(ks);
        eps_[kt].push_back(t);
        return {s, t};
      }
      case Regex::kPlus: {
        int s = NewState(what), t = NewState(what);
        auto [ks, kt] = Build(re.kids[0], what);
        eps_[s].push_back(ks);
        eps_[kt].push_back(ks);
        eps_[kt].push_back(t);
        return {s, t};
      }
      case Regex::kOpt: {
        int s = NewState(what), t = NewState(what);
        auto [ks, kt] = Build(re.kids[0], what);
        eps_[s].push_back(ks);
        eps_[s].push_back(t);
        eps_[kt].push_back(t);
        return {s, t};
      }
    }
    throw Error("unreachable regex kind");
  }

  void ComputeClosures() {
    closure_.assign(NumStates(), 0);
    for (int i = 0; i < NumStates(); ++i) {
      std::uint64_t seen = std::uint64_t{1} << i;
      std::vector<int> stack{i};
      while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        for (int n : eps_[s])
          if (!(seen & (std::uint64_t{1} << n))) {
            seen |= std::uint64_t{1} << n;
            stack.push_back(n);
          }
      }
      closure_[i] = seen;
    }
  }

  std::vector<std::vector<Edge>> edges_;
  std::vector<std::vector<int>> eps_;
  std::vector<std::uint64_t> closure_;
  int start_ = 0;
  int accept_ = 0;
};

}  // namespace lexfst

#endif  // LEXFST_REGEX_H_
