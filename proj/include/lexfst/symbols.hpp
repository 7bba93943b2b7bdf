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

#ifndef LEXFST_SYMBOLS_H_
#define LEXFST_SYMBOLS_H_

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "lexfst/errors.hpp"

namespace lexfst {

constexpr int kEpsilon = 0;
inline const char kEpsilonToken[] = "<eps>";

// Bidirectional token <-> id map shared by every machine in a grammar.
// Id 0 is reserved for epsilon.  Ids are assigned in insertion order, so
// building the table in a fixed order gives stable ids across runs.
class SymbolTable {
 public:
  SymbolTable() {
    id_of_[kEpsilonToken] = 0;
    tokens_.push_back(kEpsilonToken);
  }

  int AddSymbol(const std::string &token) {
    auto it = id_of_.find(token);
    if (it != id_of_.end()) return it->second;
    int id = static_cast<int>(tokens_.size());
    id_of_[token] = id;
    tokens_.push_back(token);
    return id;
  }

  // -1 when the token has not been registered.
  int Find(const std::string &token) const {
    auto it = id_of_.find(token);
    return it == id_of_.end() ? -1 : it->second;
  }

  const std::string &Find(int id) const {
    if (id < 0 || id >= static_cast<int>(tokens_.size()))
      throw Error("symbol id out of range: " + std::to_string(id));
    return tokens_[id];
  }

  bool Member(const std::string &token) const { return Find(token) >= 0; }
  int NumSymbols() const { return static_cast<int>(tokens_.size()); }

  // All tokens in id order, epsilon included at index 0.
  const std::vector<std::string> &Tokens() const { return tokens_; }

 private:
  std::map<std::string, int> id_of_;
  std::vector<std::string> tokens_;
};

// Number of bytes in the UTF-8 sequence starting with lead byte b.
inline int Utf8SeqLen(unsigned char b) {
  if (b < 0x80) return 1;
  if ((b & 0xE0) == 0xC0) return 2;
  if ((b & 0xF0) == 0xE0) return 3;
  if ((b & 0xF8) == 0xF0) return 4;
  return 1;  // stray continuation byte, treat as a unit
}

// Splits text into one token per UTF-8 code point.  No brace or backquote
// handling; this is how raw input text is segmented.
inline std::vector<std::string> SplitChars(const std::string &text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    int n = Utf8SeqLen(static_cast<unsigned char>(text[i]));
    if (i + n > text.size()) n = 1;
    out.push_back(text.substr(i, n));
    i += n;
  }
  return out;
}

// Splits grammar-file text into tokens:
//   {...}   one token, braces included ("{noun}"); {sp} {tab} {nl} denote
//           the literal space, tab and newline characters
//   `x      backquote plus the next code point is a single token ("`a")
//   other   one token per code point
inline std::vector<std::string> SplitTokens(const std::string &text,
                                            const std::string &where = "",
                                            int line = 0) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '{') {
      auto close = text.find('}', i);
      if (close == std::string::npos)
        throw ParseError(where, line, "unclosed { in \"" + text + "\"");
      std::string tok = text.substr(i, close - i + 1);
      if (tok == "{sp}") tok = " ";
      else if (tok == "{tab}") tok = "\t";
      else if (tok == "{nl}") tok = "\n";
      out.push_back(tok);
      i = close + 1;
    } else if (c == '`') {
      if (i + 1 >= text.size())
        throw ParseError(where, line, "dangling ` in \"" + text + "\"");
      int n = Utf8SeqLen(static_cast<unsigned char>(text[i + 1]));
      if (i + 1 + n > text.size()) n = 1;
      out.push_back(text.substr(i, n + 1));
      i += 1 + n;
    } else {
      int n = Utf8SeqLen(static_cast<unsigned char>(c));
      if (i + n > text.size()) n = 1;
      out.push_back(text.substr(i, n));
      i += n;
    }
  }
  return out;
}

// Inverse of the {sp}/{tab}/{nl} lexer aliases, applied when writing tokens
// back out to text files.
inline std::string EscapeToken(const std::string &token) {
  if (token == " ") return "{sp}";
  if (token == "\t") return "{tab}";
  if (token == "\n") return "{nl}";
  return token;
}

namespace internal {

inline std::string Trim(const std::string &s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Finds |needle| outside brace groups, so tokens like {##} or {->} cannot
// be mistaken for punctuation.
inline std::size_t FindOutsideBraces(const std::string &text,
                                     const std::string &needle,
                                     std::size_t from = 0) {
  int depth = 0;
  for (std::size_t i = from; i < text.size(); ++i) {
    if (text[i] == '{') ++depth;
    else if (text[i] == '}' && depth > 0) --depth;
    else if (depth == 0 && text.compare(i, needle.size(), needle) == 0)
      return i;
  }
  return std::string::npos;
}

// Drops a # comment (outside braces) and surrounding whitespace.
inline std::string StripComment(const std::string &line) {
  auto hash = FindOutsideBraces(line, "#");
  return Trim(hash == std::string::npos ? line : line.substr(0, hash));
}

// Removes a trailing "<number>" cost marker from *text if present and
// stores its value.  Returns false when the text carries no marker.
inline bool ExtractTrailingCost(std::string *text, double *cost,
                                const std::string &file, int line) {
  if (text->empty() || text->back() != '>') return false;
  std::size_t open = std::string::npos;
  int depth = 0;
  for (std::size_t i = 0; i + 1 < text->size(); ++i) {
    char c = (*text)[i];
    if (c == '{') ++depth;
    else if (c == '}' && depth > 0) --depth;
    else if (c == '<' && depth == 0) open = i;
  }
  if (open == std::string::npos)
    throw ParseError(file, line, "unmatched > at end of line");
  std::string num = text->substr(open + 1, text->size() - open - 2);
  try {
    std::size_t used = 0;
    *cost = std::stod(num, &used);
    if (used != num.size()) throw std::invalid_argument(num);
  } catch (const std::exception &) {
    throw ParseError(file, line, "bad cost \"" + num + "\"");
  }
  if (*cost < 0) throw ParseError(file, line, "cost must be nonnegative");
  *text = Trim(text->substr(0, open));
  return true;
}

}  // namespace internal

}  // namespace lexfst

#endif  // LEXFST_SYMBOLS_H_
