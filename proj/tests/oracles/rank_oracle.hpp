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

// Brute-force interval-multiplicity oracle for zigzag representations.
//
// For a cell range [p, q], let N(p, q) be the rank of the canonical map
// lim -> colim over the restriction of the representation to that range.
// N is additive over direct sums and equals 1 on an interval summand exactly
// when the summand's support contains [p, q], so inclusion-exclusion in the
// two endpoints recovers the multiplicity of every interval. This is
// deliberately independent of the production sweep in decompose().

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "gp/barcode.hpp"
#include "gp/matrix.hpp"
#include "gp/zigzag.hpp"

namespace gp_test {

template <class K>
std::size_t zigzag_span_rank(const gp::ZigzagRep<K>& z, std::size_t p, std::size_t q) {
  const std::size_t cells = q - p + 1;
  std::vector<std::size_t> off(cells + 1, 0);
  for (std::size_t c = 0; c < cells; ++c) off[c + 1] = off[c] + z.dims[p + c];
  const std::size_t total = off[cells];

  // Constraint rows for the limit: x_U - f(x_P) = 0 per arrow in range.
  // Relation columns for the colimit: incl_U(f(e)) - incl_P(e) per arrow
  // and basis vector of the point-cell stalk.
  std::vector<std::vector<K>> con_rows;
  std::vector<std::vector<K>> rel_cols;
  auto add_arrow = [&](std::size_t cell_p, std::size_t cell_u, const gp::Matrix<K>& f) {
    const std::size_t op = off[cell_p - p], ou = off[cell_u - p];
    for (std::size_t r = 0; r < z.dims[cell_u]; ++r) {
      std::vector<K> row(total, K(0));
      row[ou + r] = K(1);
      for (std::size_t c = 0; c < z.dims[cell_p]; ++c) row[op + c] = row[op + c] - f(r, c);
      con_rows.push_back(std::move(row));
    }
    for (std::size_t c = 0; c < z.dims[cell_p]; ++c) {
      std::vector<K> col(total, K(0));
      col[op + c] = col[op + c] - K(1);
      for (std::size_t r = 0; r < z.dims[cell_u]; ++r) col[ou + r] = col[ou + r] + f(r, c);
      rel_cols.push_back(std::move(col));
    }
  };
  for (std::size_t k = p; k <= q; ++k) {
    if (k % 2 == 0) continue;
    const std::size_t j = (k - 1) / 2;
    if (k - 1 >= p) add_arrow(k, k - 1, z.left[j]);
    if (k + 1 <= q) add_arrow(k, k + 1, z.right[j]);
  }

  gp::Matrix<K> con(con_rows.size(), total);
  for (std::size_t r = 0; r < con_rows.size(); ++r)
    for (std::size_t c = 0; c < total; ++c) con(r, c) = con_rows[r][c];
  gp::Matrix<K> lim = con_rows.empty() ? gp::Matrix<K>::identity(total) : kernel_basis(con);

  // The canonical map projects a compatible tuple to one cell (any cell gives
  // the same class modulo the relations) and includes it into the quotient.
  gp::Matrix<K> emb(total, lim.cols());
  for (std::size_t r = 0; r < z.dims[p]; ++r)
    for (std::size_t c = 0; c < lim.cols(); ++c) emb(r, c) = lim(r, c);

  gp::Matrix<K> rel(total, rel_cols.size());
  for (std::size_t c = 0; c < rel_cols.size(); ++c)
    for (std::size_t r = 0; r < total; ++r) rel(r, c) = rel_cols[c][r];

  return rank(hstack(emb, rel)) - rank(rel);
}

template <class K>
gp::Barcode decompose_by_rank_oracle(const gp::ZigzagRep<K>& z) {
  const std::size_t cells = 2 * z.grid.size() + 1;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> n;
  auto N = [&](std::size_t p, std::size_t q) -> long {
    if (p >= cells || q >= cells || p > q) return 0;  // out of range
    auto it = n.find({p, q});
    if (it == n.end()) it = n.emplace(std::pair{p, q}, zigzag_span_rank(z, p, q)).first;
    return static_cast<long>(it->second);
  };
  gp::Barcode out;
  for (std::size_t p = 0; p < cells; ++p)
    for (std::size_t q = p; q < cells; ++q) {
      long mult = N(p, q) - N(p, q + 1) - (p == 0 ? 0 : N(p - 1, q)) +
                  (p == 0 ? 0 : N(p - 1, q + 1));
      if (mult > 0) out.add(gp::cell_range_to_interval(z.grid, p, q), static_cast<std::uint64_t>(mult));
    }
  return out;
}

}  // namespace gp_test
