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
#include <map>
#include <string>
#include <vector>

#include "gp/interval.hpp"

namespace gp {

// Finite multiset of intervals in canonical form: bars sorted by the
// interval order, equal intervals merged into a multiplicity.
class Barcode {
 public:
  struct Bar {
    Interval interval;
    std::uint64_t mult;
    bool operator==(const Bar&) const = default;
  };

  Barcode() = default;
  explicit Barcode(std::vector<Bar> bars);

  void add(const Interval& i, std::uint64_t mult = 1);

  const std::vector<Bar>& bars() const { return bars_; }
  bool empty() const { return bars_.empty(); }
  std::size_t size() const { return bars_.size(); }
  std::uint64_t total_mult() const;
  bool is_gamma_barcode() const;

  bool operator==(const Barcode&) const = default;

  std::string to_string() const;

 private:
  void canonicalize();
  std::vector<Bar> bars_;
};

enum class StalkSide { at, left_limit, right_limit };

// Number of bars, with multiplicity, whose interval contains x (side = at),
// or contains a one-sided neighborhood of x (limit sides).
std::uint64_t psi_stalk_rank(const Barcode& b, const Rat& x, StalkSide side = StalkSide::at);

Barcode direct_sum(const Barcode& a, const Barcode& b);

// Formal sum of barcodes, one per cohomological degree; degrees with no bars
// are absent from the map.
class GradedBarcode {
 public:
  GradedBarcode() = default;
  explicit GradedBarcode(std::map<int, Barcode> components);
  static GradedBarcode single(const Interval& i, int degree = 0, std::uint64_t mult = 1);

  void add(int degree, const Interval& i, std::uint64_t mult = 1);

  const std::map<int, Barcode>& components() const { return components_; }
  const Barcode& at(int degree) const;  // empty barcode if absent
  bool empty() const { return components_.empty(); }
  std::uint64_t total_mult() const;
  bool is_gamma_barcode() const;

  // The shift [k]: the degree-p component moves to degree p - k.
  GradedBarcode shifted(int k) const;

  bool operator==(const GradedBarcode&) const = default;

  std::string to_string() const;

 private:
  std::map<int, Barcode> components_;
};

GradedBarcode direct_sum(const GradedBarcode& a, const GradedBarcode& b);

// Degreewise bilinear extension of k_I (x) k_J = k_{I and J}.
GradedBarcode tensor(const GradedBarcode& f, const GradedBarcode& g);

}  // namespace gp
