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

#include "gp/interval.hpp"

#include <stdexcept>

namespace gp {

Interval::Interval(ExtRat lower, ExtRat upper, bool lower_closed, bool upper_closed)
    : lower_(std::move(lower)),
      upper_(std::move(upper)),
      lower_closed_(lower_closed),
      upper_closed_(upper_closed) {
  if (!lower_.is_finite() && lower_closed_)
    throw std::invalid_argument("infinite endpoint cannot be closed");
  if (!upper_.is_finite() && upper_closed_)
    throw std::invalid_argument("infinite endpoint cannot be closed");
  if (lower_ > upper_) throw std::invalid_argument("empty interval");
  if (lower_ == upper_ && !(lower_closed_ && upper_closed_))
    throw std::invalid_argument("empty interval");
}

Interval Interval::bar(ExtRat birth, ExtRat death) {
  if (!(birth < death)) throw std::invalid_argument("bar needs birth < death");
  return Interval(birth, std::move(death), birth.is_finite(), false);
}

bool Interval::contains(const ExtRat& x) const {
  if (x < lower_ || x > upper_) return false;
  if (x == lower_ && !lower_closed_) return false;
  if (x == upper_ && !upper_closed_) return false;
  return true;
}

bool Interval::contains(const Interval& o) const {
  bool lo_ok = lower_ < o.lower_ || (lower_ == o.lower_ && (lower_closed_ || !o.lower_closed_));
  bool up_ok = upper_ > o.upper_ || (upper_ == o.upper_ && (upper_closed_ || !o.upper_closed_));
  return lo_ok && up_ok;
}

std::optional<Interval> Interval::intersect(const Interval& o) const {
  ExtRat lo = lower_;
  bool lo_closed = lower_closed_;
  if (o.lower_ > lo) {
    lo = o.lower_;
    lo_closed = o.lower_closed_;
  } else if (o.lower_ == lo) {
    lo_closed = lo_closed && o.lower_closed_;
  }
  ExtRat up = upper_;
  bool up_closed = upper_closed_;
  if (o.upper_ < up) {
    up = o.upper_;
    up_closed = o.upper_closed_;
  } else if (o.upper_ == up) {
    up_closed = up_closed && o.upper_closed_;
  }
  if (lo > up) return std::nullopt;
  if (lo == up && !(lo_closed && up_closed)) return std::nullopt;
  return Interval(lo, up, lo_closed, up_closed);
}

std::strong_ordering Interval::operator<=>(const Interval& o) const {
  if (auto c = lower_ <=> o.lower_; c != 0) return c;
  // A closed lower end starts earlier on the line than an open one.
  if (lower_closed_ != o.lower_closed_)
    return lower_closed_ ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto c = upper_ <=> o.upper_; c != 0) return c;
  // An open upper end stops earlier than a closed one.
  if (upper_closed_ != o.upper_closed_)
    return upper_closed_ ? std::strong_ordering::greater : std::strong_ordering::less;
  return std::strong_ordering::equal;
}

std::string Interval::to_string() const {
  std::string s = lower_closed_ ? "[" : "(";
  s += lower_.to_string();
  s += ",";
  s += upper_.to_string();
  s += upper_closed_ ? "]" : ")";
  return s;
}

int hom_dim(const Interval& i, const Interval& j) {
  auto meet = i.intersect(j);
  if (!meet) return 0;
  const Interval& k = *meet;
  // Overlap closed in i: no finite open end of the overlap may lie in i.
  if (k.lower().is_finite() && !k.lower_closed() && i.contains(k.lower())) return 0;
  if (k.upper().is_finite() && !k.upper_closed() && i.contains(k.upper())) return 0;
  // Overlap open in j: at a finite closed end of the overlap, j must stop too.
  if (k.lower().is_finite() && k.lower_closed() && j.lower() != k.lower()) return 0;
  if (k.upper().is_finite() && k.upper_closed() && j.upper() != k.upper()) return 0;
  return 1;
}

}  // namespace gp
