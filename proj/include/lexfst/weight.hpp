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

#ifndef LEXFST_WEIGHT_H_
#define LEXFST_WEIGHT_H_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace lexfst {

// Tropical weight: costs combine by addition along a path and by minimum
// across alternative paths.  Zero() annihilates, One() is the identity cost.
class Weight {
 public:
  Weight() : value_(0.0) {}
  explicit Weight(double value) : value_(value) {}

  static Weight One() { return Weight(0.0); }
  static Weight Zero() {
    return Weight(std::numeric_limits<double>::infinity());
  }

  double Value() const { return value_; }
  bool IsZero() const { return std::isinf(value_); }

  Weight Plus(Weight other) const {
    return Weight(std::min(value_, other.value_));
  }
  Weight Times(Weight other) const {
    if (IsZero() || other.IsZero()) return Zero();
    return Weight(value_ + other.value_);
  }

  bool operator==(Weight other) const {
    if (IsZero() && other.IsZero()) return true;
    return value_ == other.value_;
  }
  bool operator!=(Weight other) const { return !(*this == other); }
  bool operator<(Weight other) const { return value_ < other.value_; }

  // "0.5", "2.0", "inf".  At least one fractional digit, no trailing zeros
  // beyond that, so output files are stable across platforms.
  std::string ToString() const {
    if (IsZero()) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value_);
    std::string s(buf);
    auto dot = s.find('.');
    auto last = s.find_last_not_of('0');
    if (last == dot) ++last;
    s.erase(last + 1);
    return s;
  }

 private:
  double value_;
};

}  // namespace lexfst

#endif  // LEXFST_WEIGHT_H_
