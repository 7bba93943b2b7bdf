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

// lexfst: command-line front end for the toolkit.  One subcommand per
// invocation.  Machines are saved as a text .fst plus a sibling .sym; both
// "name" and "name.fst" address the same pair on the command line.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "lexfst/arclist.hpp"
#include "lexfst/errors.hpp"
#include "lexfst/fst.hpp"
#include "lexfst/grammar.hpp"
#include "lexfst/io.hpp"
#include "lexfst/numbers.hpp"
#include "lexfst/ops.hpp"
#include "lexfst/paradigm.hpp"
#include "lexfst/paths.hpp"
#include "lexfst/pipeline.hpp"
#include "lexfst/rules.hpp"
#include "lexfst/symbols.hpp"
#include "lexfst/wordlist.hpp"

namespace {

using lexfst::Fst;
using lexfst::SymbolTable;

std::shared_ptr<SymbolTable> NewTable() {
  return std::make_shared<SymbolTable>();
}

std::ifstream OpenSource(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw lexfst::Error("cannot read \"" + path + "\"");
  return is;
}

void Save(const Fst &fst, const std::string &out) {
  lexfst::SaveFst(fst, lexfst::FstBaseName(out));
}

Fst Load(const std::shared_ptr<SymbolTable> &table, const std::string &in) {
  return lexfst::LoadFst(table, lexfst::FstBaseName(in));
}

std::string Concat(const std::vector<std::string> &tokens) {
  std::string s;
  for (const auto &t : tokens) s += t;
  return s;
}

// Everything any subcommand binds; only the active subcommand reads it.
struct Args {
  std::string input;
  std::string second;   // compose rhs
  std::string output;
  std::string manifest;
  std::string text;
  std::string lexicon;
  std::string cleanup;
  std::string lattice_out;
  std::vector<std::string> subs;     // name=machine bindings
  std::vector<std::string> filters;  // file or "decade-flop"
  int base = 10;
  int max_digits = 0;
  int nbest = 0;
  bool permissive = false;
  bool raw = false;
};

void RunCompileWordlist(const Args &a) {
  auto table = NewTable();
  auto is = OpenSource(a.input);
  Save(lexfst::CompileWordListText(is, table, a.input), a.output);
}

void RunCompileParadigm(const Args &a) {
  auto table = NewTable();
  auto is = OpenSource(a.input);
  Save(lexfst::CompileParadigmText(is, table, a.input), a.output);
}

void RunCompileArclist(const Args &a) {
  auto table = NewTable();
  std::map<std::string, Fst> subs;
  for (const auto &binding : a.subs) {
    auto eq = binding.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == binding.size())
      throw lexfst::Error("--sub takes name=machine, got \"" + binding +
                          "\"");
    subs.emplace(binding.substr(0, eq),
                 Load(table, binding.substr(eq + 1)));
  }
  auto is = OpenSource(a.input);
  Save(lexfst::CompileArcListText(is, subs, table, a.input), a.output);
}

void RunCompileRules(const Args &a) {
  auto table = NewTable();
  auto is = OpenSource(a.input);
  auto rules = lexfst::ParseRulesText(is, table, a.input);
  Save(lexfst::CompileRules(rules, table), a.output);
}

// Parsed but not yet compiled filter source.  Rule machines route unnamed
// symbols through complement arcs, so compilation waits until every file
// has registered its symbols, the same two passes the manifest loader
// makes.
struct NumberFilter {
  enum class Kind { kDecadeFlop, kWordList, kRules, kFst } kind;
  std::vector<lexfst::WordListEntry> wordlist;
  std::vector<lexfst::RewriteRule> rules;
  std::optional<Fst> fst;
};

NumberFilter ParseNumberFilter(const std::string &spec,
                               const std::shared_ptr<SymbolTable> &table) {
  NumberFilter f;
  if (spec == "decade-flop") {
    f.kind = NumberFilter::Kind::kDecadeFlop;
    return f;
  }
  auto dot = spec.find_last_of('.');
  std::string ext = dot == std::string::npos ? "" : spec.substr(dot);
  if (ext == ".wl") {
    f.kind = NumberFilter::Kind::kWordList;
    auto is = OpenSource(spec);
    f.wordlist = lexfst::ParseWordListText(is, table, spec);
  } else if (ext == ".rules") {
    f.kind = NumberFilter::Kind::kRules;
    auto is = OpenSource(spec);
    f.rules = lexfst::ParseRulesText(is, table, spec);
  } else if (ext == ".fst") {
    f.kind = NumberFilter::Kind::kFst;
    f.fst = lexfst::LoadFst(table, lexfst::FstBaseName(spec));
  } else {
    throw lexfst::Error("cannot tell the format of \"" + spec +
                        "\" (expected .wl, .rules or .fst)");
  }
  return f;
}

Fst CompileNumberFilter(const NumberFilter &f,
                        const std::shared_ptr<SymbolTable> &table) {
  switch (f.kind) {
    case NumberFilter::Kind::kDecadeFlop:
      return lexfst::BuildDecadeFlop(table);
    case NumberFilter::Kind::kWordList:
      return lexfst::CompileWordList(f.wordlist, table);
    case NumberFilter::Kind::kRules:
      return lexfst::CompileRules(f.rules, table);
    case NumberFilter::Kind::kFst:
      return *f.fst;
  }
  throw lexfst::Error("unreachable filter kind");
}

void RunBuildNumbers(const Args &a) {
  if (a.base < 2) throw lexfst::Error("--base must be at least 2");
  if (a.max_digits < 1) throw lexfst::Error("--max-digits must be positive");
  auto table = NewTable();

  std::vector<lexfst::WordListEntry> lexicon;
  {
    auto is = OpenSource(a.lexicon);
    lexicon = lexfst::ParseWordListText(is, table, a.lexicon);
  }
  std::vector<NumberFilter> filters;
  for (const auto &spec : a.filters)
    filters.push_back(ParseNumberFilter(spec, table));
  std::optional<NumberFilter> cleanup;
  if (!a.cleanup.empty()) cleanup = ParseNumberFilter(a.cleanup, table);
  lexfst::BuildFactorizer(a.base, a.max_digits, table);  // register symbols
  bool flop = std::any_of(filters.begin(), filters.end(), [](const auto &f) {
    return f.kind == NumberFilter::Kind::kDecadeFlop;
  });
  if (flop) lexfst::BuildDecadeFlop(table);

  Fst factorizer = lexfst::BuildFactorizer(a.base, a.max_digits, table);
  std::vector<Fst> filter_fsts;
  for (const auto &f : filters)
    filter_fsts.push_back(CompileNumberFilter(f, table));
  std::optional<Fst> cleanup_fst;
  if (cleanup) cleanup_fst = CompileNumberFilter(*cleanup, table);
  Fst expander = lexfst::BuildExpander(factorizer, filter_fsts, lexicon,
                                       cleanup_fst ? &*cleanup_fst : nullptr,
                                       table);
  // Saved generative, names on the left, so the result drops into a
  // manifest's numbers slot like any wordlist machine.
  Save(lexfst::Invert(expander), a.output);
}

void RunBuildAnalyzer(const Args &a) {
  lexfst::GrammarSet g = lexfst::LoadGrammar(a.manifest);
  Save(*g.analyzer, a.output);
}

Fst DisambiguatedLattice(const Args &a, const lexfst::GrammarSet &g) {
  Fst lattice = a.permissive ? lexfst::AnalyzePermissive(a.text, g)
                             : lexfst::Analyze(a.text, g);
  return lexfst::Disambiguate(lattice, g);
}

void RunAnalyze(const Args &a) {
  lexfst::GrammarSet g = lexfst::LoadGrammar(a.manifest);
  Fst pruned = DisambiguatedLattice(a, g);
  if (!a.lattice_out.empty()) Save(pruned, a.lattice_out);
  if (a.nbest > 0) {
    auto paths = lexfst::EnumeratePaths(pruned, pruned.NumStates(), 100000);
    std::vector<std::pair<std::string, lexfst::Weight>> lines;
    lines.reserve(paths.size());
    for (const auto &p : paths)
      lines.emplace_back(p.OString(*g.table), p.weight);
    std::sort(lines.begin(), lines.end(), [](const auto &x, const auto &y) {
      if (x.second.Value() != y.second.Value())
        return x.second.Value() < y.second.Value();
      return x.first < y.first;
    });
    int k = std::min<int>(a.nbest, static_cast<int>(lines.size()));
    for (int i = 0; i < k; ++i)
      std::cout << lines[i].first << "\t" << lines[i].second.ToString()
                << "\n";
    return;
  }
  lexfst::Path best = lexfst::Select(pruned);
  std::cout << best.OString(*g.table) << "\t" << best.weight.ToString()
            << "\n";
  std::cout << Concat(lexfst::Pronounce(best, g)) << "\n";
}

void RunLattice(const Args &a) {
  lexfst::GrammarSet g = lexfst::LoadGrammar(a.manifest);
  if (a.raw) {
    Fst lattice = a.permissive ? lexfst::AnalyzePermissive(a.text, g)
                               : lexfst::Analyze(a.text, g);
    Save(lattice, a.output);
    return;
  }
  Save(DisambiguatedLattice(a, g), a.output);
}

void RunBestpath(const Args &a) {
  auto table = NewTable();
  Fst fst = Load(table, a.input);
  lexfst::Path best = lexfst::BestPath(fst);
  std::cout << best.IString(*table) << "\t" << best.OString(*table) << "\t"
            << best.weight.ToString() << "\n";
}

void RunCompose(const Args &a) {
  auto table = NewTable();
  Fst lhs = Load(table, a.input);
  Fst rhs = Load(table, a.second);
  Save(lexfst::Connect(lexfst::Compose(lhs, rhs)), a.output);
}

void RunPrint(const Args &a) {
  auto table = NewTable();
  Fst fst = Load(table, a.input);
  lexfst::WriteFstText(fst, std::cout);
}

void RunDraw(const Args &a) {
  auto table = NewTable();
  Fst fst = Load(table, a.input);
  lexfst::WriteDot(fst, std::cout);
}

void RunStats(const Args &a) {
  auto table = NewTable();
  Fst fst = Load(table, a.input);
  auto [states, arcs] = lexfst::Stats(fst);
  std::cout << "states=" << states << " arcs=" << arcs << "\n";
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"weighted transducer toolkit for text-analysis front ends"};
  app.require_subcommand(1);
  Args a;

  auto machine_arg = [&](CLI::App *cmd, const char *name, std::string &slot,
                         const char *help) {
    cmd->add_option(name, slot, help)->required();
  };

  auto *cw = app.add_subcommand("compile-wordlist",
                                "compile a wordlist source into a machine");
  machine_arg(cw, "input", a.input, "wordlist source file");
  machine_arg(cw, "output", a.output, "machine to write (.fst/.sym pair)");
  cw->callback([&] { RunCompileWordlist(a); });

  auto *cp = app.add_subcommand("compile-paradigm",
                                "compile an inflectional paradigm file");
  machine_arg(cp, "input", a.input, "paradigm source file");
  machine_arg(cp, "output", a.output, "machine to write");
  cp->callback([&] { RunCompileParadigm(a); });

  auto *ca = app.add_subcommand("compile-arclist",
                                "compile an arc-list grammar");
  machine_arg(ca, "input", a.input, "arc-list source file");
  machine_arg(ca, "output", a.output, "machine to write");
  ca->add_option("--sub", a.subs,
                 "sub-lexicon binding name=machine, usable as $name");
  ca->callback([&] { RunCompileArclist(a); });

  auto *cr = app.add_subcommand("compile-rules",
                                "compile a rewrite-rule cascade");
  machine_arg(cr, "input", a.input, "rule source file");
  machine_arg(cr, "output", a.output, "machine to write");
  cr->callback([&] { RunCompileRules(a); });

  auto *bn = app.add_subcommand(
      "build-numbers", "build a number-name machine from a factorization "
                       "lexicon (saved generative, names to digits)");
  machine_arg(bn, "output", a.output, "machine to write");
  bn->add_option("--max-digits", a.max_digits, "widest number accepted")
      ->required();
  bn->add_option("--lexicon", a.lexicon, "number wordlist (.wl)")
      ->required();
  bn->add_option("--base", a.base, "number base (default 10)");
  bn->add_option("--filter", a.filters,
                 "factorization filter: decade-flop or a .wl/.rules/.fst");
  bn->add_option("--cleanup", a.cleanup,
                 "cascade applied after the lexicon (.wl/.rules/.fst)");
  bn->callback([&] { RunBuildNumbers(a); });

  auto *ba = app.add_subcommand("build-analyzer",
                                "build a manifest's analyzer machine");
  machine_arg(ba, "manifest", a.manifest, "grammar manifest");
  machine_arg(ba, "output", a.output, "machine to write");
  ba->callback([&] { RunBuildAnalyzer(a); });

  auto *an = app.add_subcommand(
      "analyze", "run text through the pipeline; prints the selected "
                 "analysis with its weight, then the phoneme line");
  an->add_option("--manifest", a.manifest, "grammar manifest")->required();
  an->add_option("--text", a.text, "input text")->required();
  an->add_flag("--permissive", a.permissive,
               "cover unanalyzable spans at a high per-character cost");
  an->add_option("--nbest", a.nbest,
                 "print the k cheapest analyses instead of the selection");
  an->add_option("--lattice", a.lattice_out,
                 "also save the disambiguated lattice to this machine");
  an->callback([&] { RunAnalyze(a); });

  auto *la = app.add_subcommand("lattice",
                                "save a text's analysis lattice");
  la->add_option("--manifest", a.manifest, "grammar manifest")->required();
  la->add_option("--text", a.text, "input text")->required();
  machine_arg(la, "output", a.output, "machine to write");
  la->add_flag("--permissive", a.permissive,
               "cover unanalyzable spans at a high per-character cost");
  la->add_flag("--raw", a.raw,
               "skip disambiguation and filtering, keep every analysis");
  la->callback([&] { RunLattice(a); });

  auto *bp = app.add_subcommand("bestpath",
                                "print a machine's cheapest path");
  machine_arg(bp, "input", a.input, "machine to read");
  bp->callback([&] { RunBestpath(a); });

  auto *co = app.add_subcommand("compose", "compose two machines");
  machine_arg(co, "lhs", a.input, "left machine");
  machine_arg(co, "rhs", a.second, "right machine");
  machine_arg(co, "output", a.output, "machine to write");
  co->callback([&] { RunCompose(a); });

  auto *pr = app.add_subcommand("print",
                                "write a machine's text form to stdout");
  machine_arg(pr, "input", a.input, "machine to read");
  pr->callback([&] { RunPrint(a); });

  auto *dr = app.add_subcommand("draw",
                                "write a machine as graph-description text");
  machine_arg(dr, "input", a.input, "machine to read");
  dr->callback([&] { RunDraw(a); });

  auto *st = app.add_subcommand("stats", "print a machine's size");
  machine_arg(st, "input", a.input, "machine to read");
  st->callback([&] { RunStats(a); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  } catch (const lexfst::ParseError &e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const lexfst::NoAnalysisError &e) {
    std::cerr << "analysis error: " << e.what() << "\n";
    return 1;
  } catch (const lexfst::EmptyAfterFilteringError &e) {
    std::cerr << "filter error: " << e.what() << "\n";
    return 1;
  } catch (const lexfst::NoPronunciationError &e) {
    std::cerr << "pronunciation error: " << e.what() << "\n";
    return 1;
  } catch (const lexfst::NoPathError &e) {
    std::cerr << "path error: " << e.what() << "\n";
    return 1;
  } catch (const lexfst::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
