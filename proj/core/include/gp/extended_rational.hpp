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
#include <string>

#include "gp/rational.hpp"

namespace gp {

// Rational number extended with -inf and +inf. Interval endpoints live here.
// The order is total: neg_inf < every finite value < pos_inf. Sums mixing
// the two infinities are undefined and throw.
class ExtRat {
 public:
  enum class Tag { neg_inf = 0, finite = 1, pos_inf = 2 };

  ExtRat() : tag_(Tag::finite), value_(0) {}
  ExtRat(Rat v) : tag_(Tag::finite), value_(std::move(v)) {}
  ExtRat(int v) : tag_(Tag::finite), value_(v) {}
  static ExtRat neg_inf() { return ExtRat(Tag::neg_inf); }
  static ExtRat pos_inf() { return ExtRat(Tag::pos_inf); }

  bool is_finite() const { return tag_ == Tag::finite; }
  bool is_neg_inf() const { return tag_ == Tag::neg_inf; }
  bool is_pos_inf() const { return tag_ == Tag::pos_inf; }
  Tag tag() const { return tag_; }

  // Finite value; throws std::domain_error when infinite.
  const Rat& value() const;

  ExtRat operator-() const;
  // Throws std::domain_error on (+inf) + (-inf).
  ExtRat operator+(const ExtRat& o) const;
  ExtRat operator-(const ExtRat& o) const { return *this + (-o); }

  std::strong_ordering operator<=>(const ExtRat& o) const;
  bool operator==(const ExtRat& o) const { return (*this <=> o) == 0; }

  std::string to_string() const;
  // Accepts "-inf", "+inf", or anything rat_from_string accepts.
  static ExtRat from_string(const std::string& s);

 private:
  explicit ExtRat(Tag t) : tag_(t), value_(0) {}
  Tag tag_;
  Rat value_;
};

// min/max following the total order.
inline const ExtRat& ext_min(const ExtRat& a, const ExtRat& b) { return b < a ? b : a; }
inline const ExtRat& ext_max(const ExtRat& a, const ExtRat& b) { return a < b ? b : a; }

}  // namespace gp
