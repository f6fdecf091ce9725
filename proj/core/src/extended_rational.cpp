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

#include "gp/extended_rational.hpp"

#include <stdexcept>

namespace gp {

const Rat& ExtRat::value() const {
  if (!is_finite()) throw std::domain_error("value() on infinite ExtRat");
  return value_;
}

ExtRat ExtRat::operator-() const {
  switch (tag_) {
    case Tag::neg_inf:
      return pos_inf();
    case Tag::pos_inf:
      return neg_inf();
    default:
      return ExtRat(Rat(-value_));
  }
}

ExtRat ExtRat::operator+(const ExtRat& o) const {
  if (is_finite() && o.is_finite()) return ExtRat(Rat(value_ + o.value_));
  if (is_finite()) return o;
  if (o.is_finite()) return *this;
  if (tag_ != o.tag_) throw std::domain_error("inf + (-inf) is undefined");
  return *this;
}

std::strong_ordering ExtRat::operator<=>(const ExtRat& o) const {
  if (tag_ != o.tag_)
    return static_cast<int>(tag_) <=> static_cast<int>(o.tag_);
  if (tag_ != Tag::finite) return std::strong_ordering::equal;
  int c = cmp(value_, o.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string ExtRat::to_string() const {
  switch (tag_) {
    case Tag::neg_inf:
      return "-inf";
    case Tag::pos_inf:
      return "+inf";
    default:
      return rat_to_string(value_);
  }
}

ExtRat ExtRat::from_string(const std::string& s) {
  if (s == "-inf") return neg_inf();
  if (s == "+inf" || s == "inf") return pos_inf();
  return ExtRat(rat_from_string(s));
}

}  // namespace gp
