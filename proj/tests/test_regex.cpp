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

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

#include "lexfst/regex.hpp"
#include "helpers.hpp"

using namespace lexfst;

namespace {

Regex Parse(const std::string &text, const std::shared_ptr<SymbolTable> &t) {
  return ParseRegex(text, t, "<test>", 1);
}

bool NfaMatch(const TokenNfa &nfa, const std::vector<Label> &syms) {
  std::uint64_t mask = nfa.StartMask();
  for (Label sym : syms) {
    mask = nfa.Step(mask, sym);
    if (mask == 0) return false;
  }
  return nfa.Accepts(mask);
}

}  // namespace

TEST_CASE("regex parsing") {
  auto table = testutil::MakeTable({"a", "b", "c", "{noun}"});

  SECTION("precedence of alternation over concatenation") {
    Regex r = Parse("ab|c*", table);
    REQUIRE(r.kind == Regex::kAlt);
    REQUIRE(r.kids.size() == 2);
    CHECK(r.kids[0].kind == Regex::kSeq);
    CHECK(r.kids[0].kids.size() == 2);
    CHECK(r.kids[1].kind == Regex::kStar);
  }

  SECTION("grouping changes the parse") {
    Regex r = Parse("(ab)+", table);
    REQUIRE(r.kind == Regex::kPlus);
    CHECK(r.kids[0].kind == Regex::kSeq);
  }

  SECTION("postfix binds to the last atom") {
    Regex r = Parse("ab?", table);
    REQUIRE(r.kind == Regex::kSeq);
    CHECK(r.kids[0].kind == Regex::kToken);
    CHECK(r.kids[1].kind == Regex::kOpt);
  }

  SECTION("classes and dot") {
    Regex r = Parse("[abc].", table);
    REQUIRE(r.kind == Regex::kSeq);
    CHECK(r.kids[0].kind == Regex::kClass);
    CHECK(r.kids[0].syms.size() == 3);
    CHECK(r.kids[1].kind == Regex::kAny);
  }

  SECTION("brace group is one token") {
    Regex r = Parse("{noun}a", table);
    REQUIRE(r.kind == Regex::kSeq);
    CHECK(r.kids[0].kind == Regex::kToken);
    CHECK(r.kids[0].sym == table->Find("{noun}"));
  }

  SECTION("whitespace is insignificant") {
    Regex spaced = Parse("a b | c *", table);
    Regex dense = Parse("ab|c*", table);
    CHECK(spaced.kind == dense.kind);
  }

  SECTION("escape makes a metacharacter literal") {
    Regex r = Parse("\\*", table);
    REQUIRE(r.kind == Regex::kToken);
    CHECK(table->Find(r.sym) == "*");
  }

  SECTION("empty pattern matches the empty string") {
    Regex r = Parse("", table);
    TokenNfa nfa(r, "test");
    CHECK(nfa.MatchesEmpty());
    CHECK_FALSE(NfaMatch(nfa, {table->Find("a")}));
  }

  SECTION("errors") {
    CHECK_THROWS_AS(Parse("(a", table), ParseError);
    CHECK_THROWS_AS(Parse("a)", table), ParseError);
    CHECK_THROWS_AS(Parse("[]", table), ParseError);
    CHECK_THROWS_AS(Parse("[a", table), ParseError);
    CHECK_THROWS_AS(Parse("*a", table), ParseError);
    CHECK_THROWS_AS(Parse("{oops", table), ParseError);
  }
}

TEST_CASE("token nfa matching") {
  auto table = testutil::MakeTable({"a", "b", "c", "d"});
  Label a = table->Find("a"), b = table->Find("b");
  Label c = table->Find("c"), d = table->Find("d");

  SECTION("star accepts every repetition count") {
    TokenNfa nfa(Parse("a*", table), "test");
    CHECK(nfa.MatchesEmpty());
    CHECK(NfaMatch(nfa, {a}));
    CHECK(NfaMatch(nfa, {a, a, a}));
    CHECK_FALSE(NfaMatch(nfa, {a, b}));
  }

  SECTION("plus needs at least one") {
    TokenNfa nfa(Parse("a+", table), "test");
    CHECK_FALSE(nfa.MatchesEmpty());
    CHECK(NfaMatch(nfa, {a}));
    CHECK(NfaMatch(nfa, {a, a}));
  }

  SECTION("alternation of sequences") {
    TokenNfa nfa(Parse("ab|cd", table), "test");
    CHECK(NfaMatch(nfa, {a, b}));
    CHECK(NfaMatch(nfa, {c, d}));
    CHECK_FALSE(NfaMatch(nfa, {a, d}));
    CHECK_FALSE(NfaMatch(nfa, {a}));
  }

  SECTION("dot matches any single token") {
    TokenNfa nfa(Parse(".", table), "test");
    CHECK(NfaMatch(nfa, {a}));
    CHECK(NfaMatch(nfa, {d}));
    CHECK_FALSE(nfa.MatchesEmpty());
    CHECK_FALSE(NfaMatch(nfa, {a, b}));
  }

  SECTION("class membership") {
    TokenNfa nfa(Parse("[ab]c", table), "test");
    CHECK(NfaMatch(nfa, {a, c}));
    CHECK(NfaMatch(nfa, {b, c}));
    CHECK_FALSE(NfaMatch(nfa, {c, c}));
  }

  SECTION("joined head and tail machines") {
    TokenNfa head(Parse("a*", table), "head");
    TokenNfa tail(Parse("b", table), "tail");
    TokenNfa joined(head, tail, "joined");
    CHECK_FALSE(joined.MatchesEmpty());
    CHECK(NfaMatch(joined, {b}));
    CHECK(NfaMatch(joined, {a, b}));
    CHECK(NfaMatch(joined, {a, a, b}));
    CHECK_FALSE(NfaMatch(joined, {a}));
  }

  SECTION("state budget is enforced") {
    std::string big;
    for (int i = 0; i < 40; ++i) big += "(a|b)";
    CHECK_THROWS_AS(TokenNfa(Parse(big, table), "test"), Error);
  }
}

TEST_CASE("token nfa agrees with brute-force matching") {
  auto table = testutil::MakeTable({"a", "b", "c"});
  std::vector<std::string> sigma2 = {"a", "b"};
  std::vector<std::string> sigma3 = {"a", "b", "c"};
  std::mt19937 rng(20240819);

  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto &sigma = trial % 2 == 0 ? sigma2 : sigma3;
    testutil::Rx rx = testutil::RandomRx(rng, sigma, 2);
    std::string rendered = testutil::RxRender(rx);

    Regex parsed = Parse(rendered, table);
    TokenNfa nfa(parsed, "random");
    CHECK(nfa.MatchesEmpty() == testutil::RxNullable(rx));

    int max_len = sigma.size() == 2 ? 5 : 4;
    std::vector<testutil::Tokens> inputs = {{}};
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      testutil::Tokens cur = inputs[i];
      bool expect =
          testutil::RxMatch(rx, cur, 0, static_cast<int>(cur.size()));
      std::vector<Label> labels;
      for (const auto &tok : cur) labels.push_back(table->Find(tok));
      bool got = NfaMatch(nfa, labels);
      if (expect != got) {
        INFO("regex " << rendered << " input length " << cur.size());
        REQUIRE(expect == got);
      }
      ++checked;
      if (static_cast<int>(cur.size()) < max_len) {
        for (const auto &tok : sigma) {
          cur.push_back(tok);
          inputs.push_back(cur);
          cur.pop_back();
        }
      }
    }
  }
  CHECK(checked > 10000);
}
