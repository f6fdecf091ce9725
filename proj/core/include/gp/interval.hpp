// Copyright 2026 The gamma-persist authors
//
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

#pragma once

#include <compare>
#include <optional>
#include <string>

#include "gp/extended_rational.hpp"

namespace gp {

// Non-empty convex subset of the line, encoded by its two endpoints and
// whether each is attained. Invariants: lower < upper, or lower == upper
// with both ends closed (a singleton); an infinite endpoint is never closed.
class Interval {
 public:
  // Throws std::invalid_argument when the data would denote the empty set
  // or a closed infinite endpoint.
  Interval(ExtRat lower, ExtRat upper, bool lower_closed, bool upper_closed);

  static Interval closed(ExtRat lo, ExtRat up) { return Interval(lo, up, true, true); }
  static Interval open(ExtRat lo, ExtRat up) { return Interval(lo, up, false, false); }
  // The half-open persistence bar [birth, death).
  static Interval bar(ExtRat birth, ExtRat death);
  static Interval point(Rat x) { return closed(ExtRat(x), ExtRat(x)); }
  static Interval line() { return open(ExtRat::neg_inf(), ExtRat::pos_inf()); }

  const ExtRat& lower() const { return lower_; }
  const ExtRat& upper() const { return upper_; }
  bool lower_closed() const { return lower_closed_; }
  bool upper_closed() const { return upper_closed_; }

  // A persistence bar [a,b): closed at a finite birth (open when born at
  // -inf), always open at death. These are exactly the intervals fixed by
  // the half-line cone.
  bool is_gamma_bar() const {
    return !upper_closed_ && lower_closed_ == lower_.is_finite();
  }
  bool is_singleton() const { return lower_ == upper_; }
  bool is_bounded() const { return lower_.is_finite() && upper_.is_finite(); }

  bool contains(const ExtRat& x) const;
  bool contains(const Interval& o) const;

  std::optional<Interval> intersect(const Interval& o) const;

  // Lexicographic canonical order by (lower, lower flag, upper, upper flag);
  // for equal endpoint values a closed lower end starts earlier on the line
  // and an open upper end stops earlier.
  std::strong_ordering operator<=>(const Interval& o) const;
  bool operator==(const Interval& o) const = default;

  std::string to_string() const;

 private:
  ExtRat lower_, upper_;
  bool lower_closed_, upper_closed_;
};

// dim Hom(k_i, k_j) for intervals on the line: 1 iff i and j meet, the
// overlap is closed in i and open in j; 0 otherwise. For two bars [a,b),
// [c,d) this reduces to the classical a <= c < b <= d test.
int hom_dim(const Interval& i, const Interval& j);

}  // namespace gp
