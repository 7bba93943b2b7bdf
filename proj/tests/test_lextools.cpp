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

#include <map>
#include <sstream>
#include <string>

#include "lexfst/arclist.hpp"
#include "lexfst/paradigm.hpp"
#include "lexfst/paths.hpp"
#include "lexfst/regex.hpp"
#include "lexfst/wordlist.hpp"
#include "helpers.hpp"

using namespace lexfst;

namespace {

Fst FromWordList(const std::string &text,
                 const std::shared_ptr<SymbolTable> &table) {
  std::istringstream is(text);
  return CompileWordListText(is, table, "test.wl");
}

bool Accepts(const Fst &fst, const std::string &tokens) {
  return !TransduceString(fst, SplitTokens(tokens)).empty();
}

}  // namespace

TEST_CASE("word list compilation") {
  auto table = std::make_shared<SymbolTable>();

  SECTION("transducer entry") {
    Fst m = FromWordList("{2} : zw`ei{num}{##}\n", table);
    auto outs = TransduceString(m, SplitTokens("{2}"));
    REQUIRE(outs.size() == 1);
    CHECK(outs.begin()->first == "zw`ei{num}{##}");
    CHECK(outs.begin()->second.Value() == 0.0);
  }

  SECTION("entry cost rides the first arc") {
    Fst m = FromWordList("{1} : `eins{num}{##}\n"
                         "{1} : `eine{num}{fem}{##} <1.0>\n", table);
    auto outs = TransduceString(m, SplitTokens("{1}"));
    REQUIRE(outs.size() == 2);
    CHECK(outs.at("`eins{num}{##}").Value() == 0.0);
    CHECK(outs.at("`eine{num}{fem}{##}").Value() == 1.0);
  }

  SECTION("acceptor entries map to themselves") {
    Fst m = FromWordList("abc\nde <0.5>\n", table);
    auto rel = testutil::Relation(m, 6);
    REQUIRE(rel.size() == 2);
    CHECK(rel.at({"abc", "abc"}) == 0.0);
    CHECK(rel.at({"de", "de"}) == 0.5);
  }

  SECTION("uneven sides pad with epsilon") {
    Fst m = FromWordList("abc : z\n: xy <2>\n", table);
    auto rel = testutil::Relation(m, 6);
    REQUIRE(rel.size() == 2);
    CHECK(rel.at({"abc", "z"}) == 0.0);
    CHECK(rel.at({"", "xy"}) == 2.0);
  }

  SECTION("comments and blank lines are skipped") {
    Fst m = FromWordList("# lexicon\n\na : b\n", table);
    CHECK(testutil::Relation(m, 4).size() == 1);
  }

  SECTION("empty file gives the empty machine") {
    CHECK(FromWordList("", table).Empty());
  }

  SECTION("errors") {
    std::istringstream bad1(":\n");
    CHECK_THROWS_AS(CompileWordListText(bad1, table), ParseError);
    std::istringstream bad2("a <x>\n");
    CHECK_THROWS_AS(CompileWordListText(bad2, table), ParseError);
  }
}

TEST_CASE("paradigm compilation") {
  auto table = std::make_shared<SymbolTable>();
  const std::string source =
      "# end-stressed masculine nouns\n"
      "paradigm m_end\n"
      "slot `a {sg}{gen}\n"
      "slot `u {sg}{dat}\n"
      "slot - {sg}{nom} <0.5>\n"
      "stem kostr m_end {noun}{masc}{inan}\n"
      "stem stol m_end {noun}{masc}{inan}\n";

  SECTION("stem and features map to stem and suffix") {
    std::istringstream is(source);
    Fst m = CompileParadigmText(is, table, "test.par");
    auto outs =
        TransduceString(m, SplitTokens("kostr{noun}{masc}{inan}{sg}{gen}"));
    REQUIRE(outs.size() == 1);
    CHECK(outs.begin()->first == "kostr`a");
    CHECK(outs.begin()->second.Value() == 0.0);
  }

  SECTION("zero ending and slot cost") {
    std::istringstream is(source);
    Fst m = CompileParadigmText(is, table, "test.par");
    auto outs =
        TransduceString(m, SplitTokens("stol{noun}{masc}{inan}{sg}{nom}"));
    REQUIRE(outs.size() == 1);
    CHECK(outs.begin()->first == "stol");
    CHECK(outs.begin()->second.Value() == 0.5);
  }

  SECTION("path count is stems times slots") {
    std::istringstream is(source);
    Fst m = CompileParadigmText(is, table, "test.par");
    CHECK(testutil::Relation(m, 16).size() == 6);
  }

  SECTION("zero-slot paradigm accepts nothing") {
    std::istringstream is("paradigm empty\nstem ab empty {noun}\n");
    Fst m = CompileParadigmText(is, table, "test.par");
    CHECK(testutil::Relation(m, 10).empty());
  }

  SECTION("unknown paradigm is an error") {
    std::istringstream is("paradigm p\nslot a {x}\nstem b q {y}\n");
    CHECK_THROWS_AS(CompileParadigmText(is, table, "test.par"), Error);
  }

  SECTION("slot before paradigm is an error") {
    std::istringstream is("slot a {x}\n");
    CHECK_THROWS_AS(CompileParadigmText(is, table, "test.par"), ParseError);
  }
}

TEST_CASE("arclist compilation") {
  auto table = std::make_shared<SymbolTable>();

  SECTION("single reference arc reproduces the sub-lexicon") {
    Fst sub(table);
    StateId s0 = sub.AddState(), s1 = sub.AddState();
    sub.SetStart(s0);
    sub.AddArc(s0, Arc(table->AddSymbol("a"), table->AddSymbol("x"),
                       Weight(1.0), s1));
    sub.SetFinal(s1, Weight(0.5));

    std::istringstream is(
        "state S\n"
        "state F\n"
        "final F\n"
        "arc S F $L <0.25>\n");
    Fst m = CompileArcListText(is, {{"L", sub}}, table, "test.arc");
    auto rel = testutil::Relation(m, 6);
    REQUIRE(rel.size() == 1);
    CHECK(rel.at({"a", "x"}) == 1.75);
  }

  SECTION("chained references concatenate") {
    Fst stems = FromWordList("ab\n", table);
    Fst sufs = FromWordList("c\nd\n", table);
    std::istringstream is(
        "state S\n"
        "state M\n"
        "state F\n"
        "final F\n"
        "arc S M $stems\n"
        "arc M F $sufs\n");
    Fst m = CompileArcListText(is, {{"stems", stems}, {"sufs", sufs}}, table,
                               "test.arc");
    auto rel = testutil::Relation(m, 8);
    REQUIRE(rel.size() == 2);
    CHECK(rel.count({"abc", "abc"}) == 1);
    CHECK(rel.count({"abd", "abd"}) == 1);
  }

  SECTION("looped reference gives unbounded suffixation") {
    Fst suf = FromWordList("c\n", table);
    std::istringstream is(
        "state S\n"
        "final S\n"
        "arc S S $suf\n");
    Fst m = CompileArcListText(is, {{"suf", suf}}, table, "test.arc");
    CHECK(Accepts(m, ""));
    CHECK(Accepts(m, "c"));
    CHECK(Accepts(m, "ccc"));
    CHECK_FALSE(Accepts(m, "d"));
  }

  SECTION("token arcs and final costs") {
    std::istringstream is(
        "state S\n"
        "state F\n"
        "final F <0.5>\n"
        "arc S F x <0.25>\n");
    Fst m = CompileArcListText(is, {}, table, "test.arc");
    auto rel = testutil::Relation(m, 4);
    REQUIRE(rel.size() == 1);
    CHECK(rel.at({"x", "x"}) == 0.75);
  }

  SECTION("errors") {
    std::istringstream bad1("state S\narc S T x\n");
    CHECK_THROWS_AS(CompileArcListText(bad1, {}, table, "test.arc"), Error);
    std::istringstream bad2("state S\nfinal S\narc S S $missing\n");
    CHECK_THROWS_AS(CompileArcListText(bad2, {}, table, "test.arc"), Error);
    std::istringstream bad3("state S\nstate S\n");
    CHECK_THROWS_AS(CompileArcListText(bad3, {}, table, "test.arc"), Error);
  }
}

TEST_CASE("regex acceptors") {
  auto table = testutil::MakeTable({"a", "b", "c", "d"});

  SECTION("single token") {
    Fst m = CompileRegex("a", table);
    auto rel = testutil::Relation(m, 4);
    REQUIRE(rel.size() == 1);
    CHECK(rel.at({"a", "a"}) == 0.0);
  }

  SECTION("closure and alternation") {
    Fst m = CompileRegex("(a|b)*c", table);
    CHECK(Accepts(m, "c"));
    CHECK(Accepts(m, "abc"));
    CHECK(Accepts(m, "babac"));
    CHECK_FALSE(Accepts(m, "ca"));
    CHECK_FALSE(Accepts(m, ""));
  }

  SECTION("dot covers the whole table") {
    Fst m = CompileRegex(".", table);
    for (int id = 1; id < table->NumSymbols(); ++id)
      CHECK(Accepts(m, table->Find(id)));
    CHECK_FALSE(Accepts(m, ""));
  }
}
