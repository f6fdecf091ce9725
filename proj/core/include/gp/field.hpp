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

#include <cstdint>
#include <string>

#include "gp/rational.hpp"

namespace gp {

// The two-element field. Together with Rat these are the coefficient fields
// of the library; generic code is templated on the field type and uses only
// construction from 0/1 and the arithmetic operators.
struct F2 {
  std::uint8_t v;

  constexpr F2() : v(0) {}
  constexpr F2(int x) : v(static_cast<std::uint8_t>(x & 1)) {}

  constexpr F2 operator+(F2 o) const { return F2(v ^ o.v); }
  constexpr F2 operator-(F2 o) const { return F2(v ^ o.v); }
  constexpr F2 operator-() const { return *this; }
  constexpr F2 operator*(F2 o) const { return F2(v & o.v); }
  constexpr F2 operator/(F2 o) const {
    // Division by zero is a programming error; o.v == 1 in all call sites.
    return F2(v & o.v);
  }
  F2& operator+=(F2 o) {
    v ^= o.v;
    return *this;
  }
  F2& operator-=(F2 o) {
    v ^= o.v;
    return *this;
  }
  F2& operator*=(F2 o) {
    v &= o.v;
    return *this;
  }
  constexpr bool operator==(const F2&) const = default;
};

inline std::string field_elem_to_string(const F2& x) { return x.v ? "1" : "0"; }
inline std::string field_elem_to_string(const Rat& x) { return rat_to_string(x); }

template <class K>
struct field_name;
template <>
struct field_name<F2> {
  static constexpr const char* value = "f2";
};
template <>
struct field_name<Rat> {
  static constexpr const char* value = "q";
};

}  // namespace gp
