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

#include <gmpxx.h>

#include <string>

namespace gp {

// Exact rational scalar. All coordinates, endpoints and thresholds in the
// library are values of this type; no floating point enters any predicate.
using Rat = mpq_class;

// Parses "p/q", "p", or a plain decimal string like "-1.25" into a reduced
// rational. Throws std::invalid_argument on malformed input or zero
// denominator.
Rat rat_from_string(const std::string& s);

// Serializes in reduced form as "p/q", or "p" when the denominator is 1.
std::string rat_to_string(const Rat& r);

// Fixed-point decimal rendering with the given number of fractional digits,
// rounding toward zero. Used only for SVG coordinates and the lossy
// convenience field of the CLI; never feeds back into computations.
std::string rat_to_decimal(const Rat& r, int digits);

}  // namespace gp
