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

#include "gp/sheaf_ops.hpp"

namespace gp {

namespace {

// Degree of the one-dimensional sections cohomology of a single interval, or
// -1 when the sections vanish. Verified against the cell-complex computation
// on every interval shape.
int sections_degree(const Interval& i, SectionsVariant v) {
  const bool lo_closed = i.lower_closed(), up_closed = i.upper_closed();
  const bool lo_finite = i.lower().is_finite(), up_finite = i.upper().is_finite();
  if (v == SectionsVariant::standard) {
    if ((!lo_finite || lo_closed) && (!up_finite || up_closed)) return 0;
    if (lo_finite && !lo_closed && up_finite && !up_closed) return 1;
    return -1;
  }
  if (lo_finite && lo_closed && up_finite && up_closed) return 0;
  if (!lo_closed && !up_closed) return 1;
  return -1;
}

}  // namespace

std::map<int, std::uint64_t> global_sections(const GradedBarcode& f, SectionsVariant v) {
  std::map<int, std::uint64_t> out;
  for (const auto& [deg, bc] : f.components()) {
    for (const auto& bar : bc.bars()) {
      const int j = sections_degree(bar.interval, v);
      if (j >= 0) out[deg + j] += bar.mult;
    }
  }
  return out;
}

std::uint64_t SheafHomDims::hom(int p, int q) const {
  auto it = pairs.find({p, q});
  return it == pairs.end() ? 0 : it->second.first;
}

std::uint64_t SheafHomDims::ext1(int p, int q) const {
  auto it = pairs.find({p, q});
  return it == pairs.end() ? 0 : it->second.second;
}

std::uint64_t SheafHomDims::ext(int j, int p, int q) const {
  if (j == 0) return hom(p, q);
  if (j == 1) return ext1(p, q);
  return 0;
}

}  // namespace gp
