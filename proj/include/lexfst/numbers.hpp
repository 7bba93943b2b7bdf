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

#ifndef LEXFST_NUMBERS_H_
#define LEXFST_NUMBERS_H_

#include <memory>
#include <string>
#include <vector>

#include "lexfst/fst.hpp"
#include "lexfst/ops.hpp"
#include "lexfst/paths.hpp"
#include "lexfst/symbols.hpp"
#include "lexfst/wordlist.hpp"

namespace lexfst {

namespace internal {

inline std::string DigitToken(int d) { return "{" + std::to_string(d) + "}"; }

inline std::string PowerToken(int k) { return "{10^" + std::to_string(k) + "}"; }

// True for tokens of the form {10^k}; k is written out when requested.
inline bool IsPowerToken(const std::string &token, int *power = nullptr) {
  if (token.size() < 6 || token.compare(0, 4, "{10^") != 0 ||
      token.back() != '}')
    return false;
  int value = 0;
  for (std::size_t i = 4; i + 1 < token.size(); ++i) {
    if (token[i] < '0' || token[i] > '9') return false;
    value = value * 10 + (token[i] - '0');
  }
  if (power != nullptr) *power = value;
  return true;
}

}  // namespace internal

inline const char kPlusToken[] = "{+++}";

// Digit strings of up to max_digits characters to factorization token
// sequences, highest power first: "234" -> {2}{10^2}{+++}{3}{10^1}{+++}{4}.
// Interior and trailing zero terms are kept ("10" -> {1}{10^1}{+++}{0});
// downstream filters decide what to do with them.  Inputs with leading
// zeros, other than "0" itself, are outside the domain.
inline Fst BuildFactorizer(int base, int max_digits,
                           const std::shared_ptr<SymbolTable> &table) {
  if (base != 10)
    throw Error("factorizer only supports base 10, got " +
                std::to_string(base));
  if (max_digits < 1 || max_digits > 9)
    throw Error("factorizer max_digits must be in 1..9, got " +
                std::to_string(max_digits));

  std::vector<Label> digit_char(10), digit_tok(10);
  for (int d = 0; d < 10; ++d) {
    digit_char[d] = table->AddSymbol(std::string(1, static_cast<char>('0' + d)));
    digit_tok[d] = table->AddSymbol(internal::DigitToken(d));
  }
  std::vector<Label> power_tok(max_digits);
  for (int k = 1; k < max_digits; ++k)
    power_tok[k] = table->AddSymbol(internal::PowerToken(k));
  Label plus = table->AddSymbol(kPlusToken);

  Fst fst(table);
  StateId start = fst.AddState();
  fst.SetStart(start);

  // One branch per input length; the branch taken is forced by the length,
  // so the machine stays functional.
  StateId single = fst.AddState();
  fst.SetFinal(single);
  for (int d = 0; d < 10; ++d)
    fst.AddArc(start, Arc(digit_char[d], digit_tok[d], Weight::One(), single));

  for (int len = 2; len <= max_digits; ++len) {
    StateId at = start;
    for (int pos = 1; pos < len; ++pos) {
      int low = pos == 1 ? 1 : 0;  // no leading zeros on multi-digit numbers
      StateId next = fst.AddState();
      for (int d = low; d < 10; ++d) {
        StateId a = fst.AddState();
        StateId b = fst.AddState();
        fst.AddArc(at, Arc(digit_char[d], digit_tok[d], Weight::One(), a));
        fst.AddArc(a, Arc(0, power_tok[len - pos], Weight::One(), b));
        fst.AddArc(b, Arc(0, plus, Weight::One(), next));
      }
      at = next;
    }
    StateId accept = fst.AddState();
    fst.SetFinal(accept);
    for (int d = 0; d < 10; ++d)
      fst.AddArc(at, Arc(digit_char[d], digit_tok[d], Weight::One(), accept));
  }
  return fst;
}

// Identity over factorization strings except that a decade term followed by
// a unit term trades places: {d}{10^1}{+++}{u} -> {u}{+++}{d}{10^1}, for
// d in 1..9 and any unit digit u.  Teens flop the same way, which is what
// lines the result up with the {u}{+++}{1}{10^1} lexicon entries.  The
// machine buffers a potential pattern without emitting; when the pattern
// breaks, the buffer is flushed before the breaking symbol is handled, and
// at end of input a chain of epsilon-input arcs flushes into a dead-end
// final state.
inline Fst BuildDecadeFlop(const std::shared_ptr<SymbolTable> &table) {
  std::vector<Label> digit_tok(10);
  for (int d = 0; d < 10; ++d)
    digit_tok[d] = table->AddSymbol(internal::DigitToken(d));
  Label ten = table->AddSymbol(internal::PowerToken(1));
  Label plus = table->AddSymbol(kPlusToken);

  auto is_digit_tok = [&](Label id, int *d) {
    for (int v = 0; v < 10; ++v) {
      if (id == digit_tok[v]) {
        *d = v;
        return true;
      }
    }
    return false;
  };

  Fst fst(table);
  StateId q0 = fst.AddState();
  fst.SetStart(q0);
  fst.SetFinal(q0);

  // emit() threads a chain of epsilon-input arcs writing out |out|, with the
  // first arc consuming |in| instead, ending at |to|.
  auto emit = [&](StateId from, Label in, const std::vector<Label> &out,
                  StateId to) {
    StateId at = from;
    Label consume = in;
    for (std::size_t i = 0; i < out.size(); ++i) {
      StateId next = i + 1 == out.size() ? to : fst.AddState();
      fst.AddArc(at, Arc(consume, out[i], Weight::One(), next));
      consume = 0;
      at = next;
    }
  };

  std::vector<StateId> qd(10, kNoState), qdp(10, kNoState), qds(10, kNoState);
  for (int d = 1; d < 10; ++d) {
    qd[d] = fst.AddState();   // buffer holds {d}
    qdp[d] = fst.AddState();  // buffer holds {d}{10^1}
    qds[d] = fst.AddState();  // buffer holds {d}{10^1}{+++}
  }

  for (int d = 1; d < 10; ++d) {
    fst.AddArc(q0, Arc(digit_tok[d], 0, Weight::One(), qd[d]));
    fst.AddArc(qd[d], Arc(ten, 0, Weight::One(), qdp[d]));
    fst.AddArc(qdp[d], Arc(plus, 0, Weight::One(), qds[d]));

    // Pattern completes: write the flopped order and return to scanning.
    StateId fl = fst.AddState();
    for (int u = 0; u < 10; ++u)
      fst.AddArc(qds[d], Arc(digit_tok[u], digit_tok[u], Weight::One(), fl));
    emit(fl, 0, {plus, digit_tok[d], ten}, q0);

    // End of input mid-pattern: flush what was buffered.
    StateId dead = fst.AddState();
    fst.SetFinal(dead);
    emit(qd[d], 0, {digit_tok[d]}, dead);
    emit(qdp[d], 0, {digit_tok[d], ten}, dead);
    emit(qds[d], 0, {digit_tok[d], ten, plus}, dead);

    // Pattern breaks: flush the buffer, consuming the breaking symbol on the
    // first arc out.  A breaking digit starts a fresh buffer.
    for (int u = 1; u < 10; ++u)
      emit(qd[d], digit_tok[u], {digit_tok[d]}, qd[u]);
    emit(qd[d], digit_tok[0], {digit_tok[d], digit_tok[0]}, q0);
    emit(qd[d], plus, {digit_tok[d], plus}, q0);
    for (int u = 1; u < 10; ++u)
      emit(qdp[d], digit_tok[u], {digit_tok[d], ten}, qd[u]);
    emit(qdp[d], digit_tok[0], {digit_tok[d], ten, digit_tok[0]}, q0);
    emit(qdp[d], ten, {digit_tok[d], ten, ten}, q0);
    emit(qds[d], plus, {digit_tok[d], ten, plus, plus}, q0);
    emit(qds[d], ten, {digit_tok[d], ten, plus, ten}, q0);
  }

  // Everything else in the table passes through untouched, including tokens
  // registered by other grammar components before this call.
  int num_symbols = static_cast<int>(table->Tokens().size());
  for (int id = 1; id < num_symbols; ++id) {
    int d = 0;
    bool digit = is_digit_tok(id, &d);
    if (digit && d != 0) continue;  // handled above
    fst.AddArc(q0, Arc(id, id, Weight::One(), q0));
    if (digit || id == ten || id == plus) continue;
    for (int b = 1; b < 10; ++b) {
      emit(qd[b], id, {digit_tok[b], id}, q0);
      emit(qdp[b], id, {digit_tok[b], ten, id}, q0);
      emit(qds[b], id, {digit_tok[b], ten, plus, id}, q0);
    }
  }

  return fst;
}

// factorizer composed with each filter in order, then with the transitive
// closure of the number lexicon, then with the cleanup cascade when one is
// given.  The composition is trimmed after every step; an empty result
// raises an Error naming the stage and a shortest digit string that the
// preceding stages still covered.
inline Fst BuildExpander(const Fst &factorizer, const std::vector<Fst> &filters,
                         const std::vector<WordListEntry> &lexicon,
                         const Fst *cleanup,
                         const std::shared_ptr<SymbolTable> &table) {
  Fst lex = CompileWordList(lexicon, table);
  if (lex.Empty()) throw Error("number lexicon is empty");

  auto witness = [&](const Fst &last_good) -> std::string {
    for (int n = 0; n < 100000; ++n) {
      std::string digits = std::to_string(n);
      std::vector<Label> labels;
      bool known = true;
      for (char c : digits) {
        int id = table->Find(std::string(1, c));
        if (id < 0) {
          known = false;
          break;
        }
        labels.push_back(id);
      }
      if (!known) continue;
      if (!Transduce(last_good, labels).empty()) return digits;
    }
    return "";
  };

  Fst result = factorizer;
  auto step = [&](const Fst &next, const std::string &stage) {
    Fst prev = result;
    result = Connect(Compose(result, next));
    if (result.Empty()) {
      std::string w = witness(prev);
      std::string msg = "number expander is empty after composing " + stage;
      if (!w.empty()) msg += "; digit string \"" + w + "\" no longer covered";
      throw Error(msg);
    }
  };

  for (std::size_t i = 0; i < filters.size(); ++i)
    step(filters[i], "filter " + std::to_string(i + 1));
  step(ClosurePlus(lex), "the number lexicon closure");
  if (cleanup != nullptr) step(*cleanup, "the cleanup cascade");
  return result;
}

}  // namespace lexfst

#endif  // LEXFST_NUMBERS_H_
