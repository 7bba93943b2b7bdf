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

#ifndef LEXFST_ERRORS_H_
#define LEXFST_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexfst {

// Base class for everything this library throws.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// Malformed source file (wordlist, rule file, manifest, ...).  Carries the
// file name and 1-based line where parsing stopped.
class ParseError : public Error {
 public:
  ParseError(const std::string &file, int line, const std::string &msg)
      : Error(file + ":" + std::to_string(line) + ": " + msg),
        file_(file), line_(line) {}

  const std::string &file() const { return file_; }
  int line() const { return line_; }

 private:
  std::string file_;
  int line_;
};

// Two machines were combined without sharing a symbol table.
class TableMismatchError : public Error {
 public:
  explicit TableMismatchError(const std::string &op)
      : Error(op + ": operands do not share a symbol table") {}
};

// best_path() on a machine with no accepting path.
class NoPathError : public Error {
 public:
  NoPathError() : Error("no accepting path") {}
};

// No token decomposition covers the input text.  offset is the character
// index (in tokens, 0-based) where coverage first fails.
class NoAnalysisError : public Error {
 public:
  NoAnalysisError(std::size_t offset, const std::string &substring)
      : Error("no analysis at offset " + std::to_string(offset) + ": \"" +
              substring + "\""),
        offset_(offset), substring_(substring) {}

  std::size_t offset() const { return offset_; }
  const std::string &substring() const { return substring_; }

 private:
  std::size_t offset_;
  std::string substring_;
};

// Every path of the lattice was removed by the tag filter.
class EmptyAfterFilteringError : public Error {
 public:
  EmptyAfterFilteringError() : Error("all analyses removed by filtering") {}
};

// The pronunciation chain rejects the selected analysis.
class NoPronunciationError : public Error {
 public:
  explicit NoPronunciationError(const std::string &substring)
      : Error("no pronunciation for \"" + substring + "\""),
        substring_(substring) {}

  const std::string &substring() const { return substring_; }

 private:
  std::string substring_;
};

}  // namespace lexfst

#endif  // LEXFST_ERRORS_H_
