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

#ifndef LEXFST_GRAMMAR_H_
#define LEXFST_GRAMMAR_H_

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lexfst/arclist.hpp"
#include "lexfst/errors.hpp"
#include "lexfst/fst.hpp"
#include "lexfst/io.hpp"
#include "lexfst/numbers.hpp"
#include "lexfst/ops.hpp"
#include "lexfst/paradigm.hpp"
#include "lexfst/pipeline.hpp"
#include "lexfst/rules.hpp"
#include "lexfst/symbols.hpp"
#include "lexfst/wordlist.hpp"

namespace lexfst {
namespace internal {

// One grammar source file, parsed but not yet compiled.  Loading happens in
// two passes: every referenced file is parsed first, which registers its
// symbols, and only then are machines built, so that rule cascades and
// other total constructions see the complete alphabet.
struct GrammarSource {
  enum class Kind { kWordList, kParadigm, kArcList, kRules, kFst };
  Kind kind = Kind::kWordList;
  std::vector<WordListEntry> wordlist;
  ParadigmFile paradigm;
  ArcListGrammar arclist;
  std::vector<RewriteRule> rules;
  std::optional<Fst> fst;
};

struct NumbersDirective {
  int base = 10;
  int max_digits = 0;
  std::string lexicon;
  std::vector<std::string> filters;  // resolved path or "decade-flop"
  std::string cleanup;               // empty when absent
};

class GrammarLoader {
 public:
  explicit GrammarLoader(const std::string &manifest_path)
      : path_(manifest_path), table_(std::make_shared<SymbolTable>()) {
    auto slash = path_.find_last_of('/');
    dir_ = slash == std::string::npos ? std::string(".")
                                      : path_.substr(0, slash);
  }

  GrammarSet Load() {
    ReadManifest();
    for (const auto &e : entries_) {
      try {
        Prefetch(e);
      } catch (const ParseError &) {
        throw;
      } catch (const Error &err) {
        throw ParseError(path_, e.lineno, err.what());
      }
    }

    GrammarSet g;
    g.table = table_;
    for (const auto &e : entries_) {
      try {
        Assign(&g, e);
      } catch (const ParseError &) {
        throw;
      } catch (const Error &err) {
        throw ParseError(path_, e.lineno, err.what());
      }
    }
    try {
      g.analyzer = BuildAnalyzer(g);
    } catch (const Error &err) {
      throw Error(path_ + ": " + err.what());
    }
    return g;
  }

 private:
  struct Entry {
    std::string key, value;
    int lineno = 0;
  };

  void ReadManifest() {
    std::ifstream is(path_);
    if (!is) throw Error("cannot read \"" + path_ + "\"");
    std::string line;
    int lineno = 0;
    std::set<std::string> seen;
    while (std::getline(is, line)) {
      ++lineno;
      std::string text = StripComment(line);
      if (text.empty()) continue;
      auto eq = FindOutsideBraces(text, "=");
      if (eq == std::string::npos)
        throw ParseError(path_, lineno, "expected key = value");
      Entry e{Trim(text.substr(0, eq)), Trim(text.substr(eq + 1)), lineno};
      if (e.key.empty() || e.value.empty())
        throw ParseError(path_, lineno, "expected key = value");
      CheckKey(e.key, lineno);
      if (!seen.insert(e.key).second)
        throw ParseError(path_, lineno, "duplicate key \"" + e.key + "\"");
      entries_.push_back(std::move(e));
    }
  }

  void CheckKey(const std::string &key, int lineno) const {
    static const std::set<std::string> simple{
        "word", "surface", "abbr",       "numbers", "special",
        "space", "punct",   "filter_tags", "mma",     "phon"};
    if (simple.count(key)) return;
    if (key.rfind("lm.", 0) == 0) {
      std::string n = key.substr(3);
      bool digits = !n.empty() &&
                    std::all_of(n.begin(), n.end(), [](unsigned char c) {
                      return std::isdigit(c);
                    });
      if (!digits)
        throw ParseError(path_, lineno,
                         "language-model keys look like lm.1, lm.2, ...");
      return;
    }
    if (key.rfind("sub.", 0) == 0) {
      if (key.size() == 4)
        throw ParseError(path_, lineno, "sub-lexicon key needs a name");
      return;
    }
    throw ParseError(path_, lineno, "unknown manifest key \"" + key + "\"");
  }

  std::string Resolve(const std::string &ref) const {
    return !ref.empty() && ref[0] == '/' ? ref : dir_ + "/" + ref;
  }

  static std::vector<std::string> SplitFields(const std::string &text) {
    std::vector<std::string> fields;
    std::istringstream ss(text);
    std::string f;
    while (ss >> f) fields.push_back(f);
    return fields;
  }

  int ParseInt(const std::string &text, int lineno) const {
    try {
      std::size_t used = 0;
      int v = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    } catch (const std::exception &) {
      throw ParseError(path_, lineno, "bad number \"" + text + "\"");
    }
  }

  // First pass: parse every referenced file and pre-register the symbols
  // the builtin models would add, so no symbol enters the table during the
  // compile pass.
  void Prefetch(const Entry &e) {
    if (e.key == "filter_tags") {
      for (const auto &tok : SplitTokens(e.value, path_, e.lineno))
        table_->AddSymbol(tok);
      return;
    }
    if (e.key == "space" &&
        (e.value == "whitespace" || e.value == "epsilon")) {
      if (e.value == "whitespace") RegisterWhitespace();
      return;
    }
    auto fields = SplitFields(e.value);
    const std::string &head = fields.front();
    if (head == "@numbers") {
      NumbersDirective spec = ParseNumbersDirective(fields, e.lineno);
      PrefetchFile(spec.lexicon, e.lineno);
      if (sources_.at(spec.lexicon).kind != GrammarSource::Kind::kWordList)
        throw ParseError(path_, e.lineno,
                         "@numbers lexicon must be a wordlist (.wl)");
      bool flop = false;
      for (const auto &f : spec.filters) {
        if (f == "decade-flop") flop = true;
        else PrefetchFile(f, e.lineno);
      }
      if (!spec.cleanup.empty()) PrefetchFile(spec.cleanup, e.lineno);
      // Register the digit and factor symbols now; the compile pass will
      // rebuild these machines against the finished table.
      BuildFactorizer(spec.base, spec.max_digits, table_);
      if (flop) BuildDecadeFlop(table_);
      numbers_specs_.emplace(e.key, std::move(spec));
    } else if (head == "@star") {
      if (fields.size() < 2)
        throw ParseError(path_, e.lineno, "@star needs at least one file");
      for (std::size_t i = 1; i < fields.size(); ++i)
        PrefetchFile(Resolve(fields[i]), e.lineno);
    } else if (head == "@punct") {
      if (fields.size() < 2)
        throw ParseError(path_, e.lineno, "@punct needs at least one mark");
      RegisterWhitespace();
      table_->AddSymbol(kPhraseBoundaryToken);
      for (std::size_t i = 1; i < fields.size(); ++i) {
        auto toks = SplitTokens(fields[i], path_, e.lineno);
        if (toks.size() != 1)
          throw ParseError(path_, e.lineno,
                           "@punct marks are single tokens: \"" + fields[i] +
                               "\"");
        table_->AddSymbol(toks[0]);
      }
    } else if (head == "@tagdel") {
      if (fields.size() != 1)
        throw ParseError(path_, e.lineno, "@tagdel takes no arguments");
    } else if (head[0] == '@') {
      throw ParseError(path_, e.lineno, "unknown directive \"" + head + "\"");
    } else {
      for (const auto &f : fields) PrefetchFile(Resolve(f), e.lineno);
    }
  }

  void RegisterWhitespace() {
    table_->AddSymbol(kWordBoundaryToken);
    table_->AddSymbol(" ");
    table_->AddSymbol("\t");
    table_->AddSymbol("\n");
  }

  NumbersDirective ParseNumbersDirective(
      const std::vector<std::string> &fields, int lineno) const {
    NumbersDirective spec;
    bool saw_max = false, saw_lexicon = false;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      auto eq = fields[i].find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == fields[i].size())
        throw ParseError(path_, lineno,
                         "@numbers arguments look like name=value, got \"" +
                             fields[i] + "\"");
      std::string name = fields[i].substr(0, eq);
      std::string val = fields[i].substr(eq + 1);
      if (name == "base") {
        spec.base = ParseInt(val, lineno);
      } else if (name == "max-digits") {
        spec.max_digits = ParseInt(val, lineno);
        saw_max = true;
      } else if (name == "lexicon") {
        spec.lexicon = Resolve(val);
        saw_lexicon = true;
      } else if (name == "filter") {
        spec.filters.push_back(val == "decade-flop" ? val : Resolve(val));
      } else if (name == "cleanup") {
        spec.cleanup = Resolve(val);
      } else {
        throw ParseError(path_, lineno,
                         "unknown @numbers argument \"" + name + "\"");
      }
    }
    if (!saw_max || !saw_lexicon)
      throw ParseError(path_, lineno,
                       "@numbers needs max-digits= and lexicon=");
    return spec;
  }

  void PrefetchFile(const std::string &path, int lineno) {
    if (sources_.count(path)) return;
    auto dot = path.find_last_of('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot);
    GrammarSource src;
    if (ext == ".fst") {
      src.kind = GrammarSource::Kind::kFst;
      src.fst = LoadFst(table_, FstBaseName(path));
    } else {
      std::ifstream is(path);
      if (!is) throw Error("cannot read \"" + path + "\"");
      if (ext == ".wl") {
        src.kind = GrammarSource::Kind::kWordList;
        src.wordlist = ParseWordListText(is, table_, path);
      } else if (ext == ".par") {
        src.kind = GrammarSource::Kind::kParadigm;
        src.paradigm = ParseParadigmText(is, table_, path);
      } else if (ext == ".arc") {
        src.kind = GrammarSource::Kind::kArcList;
        src.arclist = ParseArcListText(is, table_, path);
      } else if (ext == ".rules") {
        src.kind = GrammarSource::Kind::kRules;
        src.rules = ParseRulesText(is, table_, path);
      } else {
        throw ParseError(path_, lineno,
                         "cannot tell the format of \"" + path +
                             "\" (expected .wl, .par, .arc, .rules or .fst)");
      }
    }
    sources_.emplace(path, std::move(src));
  }

  // Second pass: build machines against the complete symbol table.
  // Sub-lexicons compile when their manifest line is reached, so an arclist
  // can only reference subs declared above it.
  void Assign(GrammarSet *g, const Entry &e) {
    if (e.key == "filter_tags") {
      g->filter_tags = SplitTokens(e.value, path_, e.lineno);
      return;
    }
    if (e.key.rfind("sub.", 0) == 0) {
      subs_.emplace(e.key.substr(4), CompileValue(e));
      return;
    }
    if (e.key.rfind("lm.", 0) == 0) {
      int n = ParseInt(e.key.substr(3), e.lineno);
      lms_.emplace_back(n, CompileValue(e));
      std::stable_sort(lms_.begin(), lms_.end(),
                       [](const auto &a, const auto &b) {
                         return a.first < b.first;
                       });
      g->lm.clear();
      for (const auto &[unused_n, fst] : lms_) g->lm.push_back(fst);
      return;
    }
    Fst m = CompileValue(e);
    if (e.key == "word") g->word = std::move(m);
    else if (e.key == "surface") g->surface = std::move(m);
    else if (e.key == "abbr") g->abbr = std::move(m);
    else if (e.key == "numbers") g->numbers = std::move(m);
    else if (e.key == "special") g->special = std::move(m);
    else if (e.key == "space") g->space = std::move(m);
    else if (e.key == "punct") g->punct = std::move(m);
    else if (e.key == "mma") g->mma_map = std::move(m);
    else if (e.key == "phon") g->phon = std::move(m);
  }

  Fst CompileValue(const Entry &e) {
    if (e.key == "space" && e.value == "whitespace")
      return BuildWhitespaceModel(table_);
    if (e.key == "space" && e.value == "epsilon") {
      Fst eps(table_);
      StateId s = eps.AddState();
      eps.SetStart(s);
      eps.SetFinal(s);
      return eps;
    }
    auto fields = SplitFields(e.value);
    const std::string &head = fields.front();
    if (head == "@numbers") {
      const NumbersDirective &spec = numbers_specs_.at(e.key);
      Fst factorizer = BuildFactorizer(spec.base, spec.max_digits, table_);
      std::vector<Fst> filters;
      for (const auto &f : spec.filters) {
        filters.push_back(f == "decade-flop" ? BuildDecadeFlop(table_)
                                             : CompileFile(f));
      }
      std::optional<Fst> cleanup;
      if (!spec.cleanup.empty()) cleanup = CompileFile(spec.cleanup);
      Fst expander =
          BuildExpander(factorizer, filters,
                        sources_.at(spec.lexicon).wordlist,
                        cleanup ? &*cleanup : nullptr, table_);
      return Invert(expander);
    }
    if (head == "@star") {
      std::optional<Fst> acc;
      for (std::size_t i = 1; i < fields.size(); ++i) {
        Fst m = CompileFile(Resolve(fields[i]));
        acc = acc ? Union(std::move(*acc), std::move(m)) : std::move(m);
      }
      return ClosureStar(*acc);
    }
    if (head == "@punct") {
      std::vector<std::string> marks;
      for (std::size_t i = 1; i < fields.size(); ++i)
        marks.push_back(SplitTokens(fields[i], path_, e.lineno)[0]);
      return BuildPunctModel(table_, marks);
    }
    if (head == "@tagdel") return BuildTagDeleter(table_);
    std::optional<Fst> acc;
    for (const auto &f : fields) {
      Fst m = CompileFile(Resolve(f));
      acc = acc ? Union(std::move(*acc), std::move(m)) : std::move(m);
    }
    return *acc;
  }

  Fst CompileFile(const std::string &path) {
    const GrammarSource &src = sources_.at(path);
    switch (src.kind) {
      case GrammarSource::Kind::kWordList:
        return CompileWordList(src.wordlist, table_);
      case GrammarSource::Kind::kParadigm:
        return CompileParadigms(src.paradigm, table_);
      case GrammarSource::Kind::kArcList:
        return CompileArcList(src.arclist, subs_, table_);
      case GrammarSource::Kind::kRules:
        return CompileRules(src.rules, table_);
      case GrammarSource::Kind::kFst:
        return *src.fst;
    }
    throw Error("unreachable source kind");
  }

  std::string path_, dir_;
  std::shared_ptr<SymbolTable> table_;
  std::vector<Entry> entries_;
  std::map<std::string, GrammarSource> sources_;
  std::map<std::string, NumbersDirective> numbers_specs_;
  std::map<std::string, Fst> subs_;
  std::vector<std::pair<int, Fst>> lms_;
};

}  // namespace internal

// Loads a grammar manifest and builds the full grammar set, analyzer
// included.  Machine paths are resolved relative to the manifest.
//
// Manifest lines are `key = value` with # comments.  Keys: word, surface,
// abbr, numbers, special, space, punct, mma, phon, lm.N (cascades applied
// in order of N), filter_tags (token list), and sub.NAME (a machine an
// arclist can splice via $NAME).  A value of several files unions them;
// files compile by extension (.wl, .par, .arc, .rules, .fst).  Special
// values: `space = whitespace` or `space = epsilon`; `@numbers` builds a
// number-name expander; `@star FILES` takes the closure of a union;
// `@punct MARKS` builds the punctuation model; `@tagdel` deletes all {...}
// tags.
inline GrammarSet LoadGrammar(const std::string &manifest_path) {
  internal::GrammarLoader loader(manifest_path);
  return loader.Load();
}

}  // namespace lexfst

#endif  // LEXFST_GRAMMAR_H_
