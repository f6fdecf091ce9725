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

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "gp/barcode.hpp"
#include "gp/interval.hpp"
#include "gp/matrix.hpp"
#include "gp/rational.hpp"

namespace gp {

// A critical grid c_1 < ... < c_m cuts the line into 2m+1 cells, indexed
// left to right: even index 2j is the open cell U_j, odd index 2j-1 is the
// point cell {c_j}. U_0 and U_m are the unbounded end cells.
inline Interval cell_range_to_interval(const std::vector<Rat>& grid, std::size_t s,
                                       std::size_t e) {
  const std::size_t m = grid.size();
  ExtRat lo = s == 0 ? ExtRat::neg_inf()
                     : (s % 2 == 1 ? ExtRat(grid[(s - 1) / 2]) : ExtRat(grid[s / 2 - 1]));
  ExtRat hi = e == 2 * m ? ExtRat::pos_inf()
                         : (e % 2 == 1 ? ExtRat(grid[(e - 1) / 2]) : ExtRat(grid[e / 2]));
  return Interval(lo, hi, s % 2 == 1, e % 2 == 1);
}

inline Interval cell_interval(const std::vector<Rat>& grid, std::size_t c) {
  return cell_range_to_interval(grid, c, c);
}

// Cellular model of a constructible sheaf on the line over a critical grid:
// one stalk per cell, and for each point cell the two generization maps into
// the adjacent open cells. Every such representation is a sheaf; there is no
// gluing condition to check.
template <class K>
struct ZigzagRep {
  std::vector<Rat> grid;           // strictly increasing critical values
  std::vector<std::size_t> dims;   // size 2*grid.size()+1
  std::vector<Matrix<K>> left;     // left[j]: {c_{j+1}} -> U_j
  std::vector<Matrix<K>> right;    // right[j]: {c_{j+1}} -> U_{j+1}

  std::size_t cells() const { return 2 * grid.size() + 1; }

  void validate() const {
    const std::size_t m = grid.size();
    for (std::size_t j = 0; j + 1 < m; ++j)
      if (!(grid[j] < grid[j + 1])) throw std::invalid_argument("grid not increasing");
    if (dims.size() != 2 * m + 1 || left.size() != m || right.size() != m)
      throw std::invalid_argument("cell count mismatch");
    for (std::size_t j = 0; j < m; ++j) {
      if (left[j].rows() != dims[2 * j] || left[j].cols() != dims[2 * j + 1] ||
          right[j].rows() != dims[2 * j + 2] || right[j].cols() != dims[2 * j + 1])
        throw std::invalid_argument("generization map shape mismatch");
    }
  }
};

namespace detail {

template <class K>
std::optional<std::size_t> lowest_nonzero(const std::vector<K>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!(v[i] == K(0))) return i;
  return std::nullopt;
}

template <class K>
std::optional<std::size_t> highest_nonzero(const std::vector<K>& v) {
  for (std::size_t i = v.size(); i-- > 0;)
    if (!(v[i] == K(0))) return i;
  return std::nullopt;
}

template <class K>
std::vector<K> apply(const Matrix<K>& a, const std::vector<K>& x) {
  std::vector<K> y(a.rows(), K(0));
  for (std::size_t c = 0; c < a.cols(); ++c) {
    if (x[c] == K(0)) continue;
    for (std::size_t r = 0; r < a.rows(); ++r) y[r] = y[r] + a(r, c) * x[c];
  }
  return y;
}

template <class K>
void axpy(std::vector<K>& v, const K& f, const std::vector<K>& u) {
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = v[i] - f * u[i];
}

template <class K>
std::vector<K> column_vector(const Matrix<K>& m, std::size_t c) {
  std::vector<K> v(m.rows(), K(0));
  for (std::size_t r = 0; r < m.rows(); ++r) v[r] = m(r, c);
  return v;
}

template <class K>
Matrix<K> columns_to_matrix(const std::vector<std::vector<K>>& cols, std::size_t rows) {
  Matrix<K> m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  return m;
}

/// Absorption rank of a strand. Rewriting the strand basis may add strand s
/// into strand t only when both recorded births stay honest: a strand born at
/// a point cell must keep its representative inside the kernel of its birth
/// arrow, so it may absorb only point-born strands that are not older, while
/// a strand born at an open cell (or at the leftmost cell) may additionally
/// absorb anything older. Sorting ascending by this key, every strand may
/// absorb every strand ranked below it: point-born strands youngest first,
/// then open-born strands oldest first. The tiebreak index is the strand's
/// position in the current basis; same-birth strands absorb either way.
inline std::tuple<int, long long, std::size_t> strand_rank(std::size_t birth,
                                                           std::size_t pos) {
  if (birth % 2 == 1) return {0, -static_cast<long long>(birth), pos};
  return {1, static_cast<long long>(birth), pos};
}

}  // namespace detail

template <class K>
ZigzagRep<K> from_barcode(const Barcode& b) {
  std::set<Rat> endpoints;
  for (const auto& bar : b.bars()) {
    if (bar.interval.lower().is_finite()) endpoints.insert(bar.interval.lower().value());
    if (bar.interval.upper().is_finite()) endpoints.insert(bar.interval.upper().value());
  }
  ZigzagRep<K> z;
  z.grid.assign(endpoints.begin(), endpoints.end());
  const std::size_t m = z.grid.size();
  z.dims.assign(2 * m + 1, 0);

  // Per-cell offset of each bar's coordinate block; absent means the cell
  // lies outside the bar's support.
  std::vector<std::map<std::size_t, std::size_t>> off(2 * m + 1);
  for (std::size_t c = 0; c < 2 * m + 1; ++c) {
    Interval cell = cell_interval(z.grid, c);
    for (std::size_t i = 0; i < b.bars().size(); ++i) {
      if (!b.bars()[i].interval.contains(cell)) continue;
      off[c][i] = z.dims[c];
      z.dims[c] += b.bars()[i].mult;
    }
  }

  // Generization is the identity on every bar containing both cells.
  auto block_map = [&](std::size_t cp, std::size_t cu) {
    Matrix<K> f(z.dims[cu], z.dims[cp]);
    for (const auto& [bar, op] : off[cp]) {
      auto it = off[cu].find(bar);
      if (it == off[cu].end()) continue;
      for (std::uint64_t r = 0; r < b.bars()[bar].mult; ++r) f(it->second + r, op + r) = K(1);
    }
    return f;
  };
  for (std::size_t j = 0; j < m; ++j) {
    z.left.push_back(block_map(2 * j + 1, 2 * j));
    z.right.push_back(block_map(2 * j + 1, 2 * j + 2));
  }
  return z;
}

template <class K>
std::map<int, ZigzagRep<K>> from_barcode(const GradedBarcode& g) {
  std::map<int, ZigzagRep<K>> out;
  for (const auto& [deg, b] : g.components()) out.emplace(deg, from_barcode<K>(b));
  return out;
}

// Inserts one critical value, splitting the open cell containing it; the new
// point cell carries identity generization both ways. No-op on grid members.
template <class K>
ZigzagRep<K> refine(const ZigzagRep<K>& z, const Rat& v) {
  auto pos = std::lower_bound(z.grid.begin(), z.grid.end(), v);
  if (pos != z.grid.end() && !(v < *pos)) return z;
  const std::size_t j = static_cast<std::size_t>(pos - z.grid.begin());  // v inside U_j
  ZigzagRep<K> out;
  out.grid = z.grid;
  out.grid.insert(out.grid.begin() + static_cast<std::ptrdiff_t>(j), v);
  out.dims = z.dims;
  out.dims.insert(out.dims.begin() + static_cast<std::ptrdiff_t>(2 * j + 1), 2,
                  z.dims[2 * j]);
  out.left = z.left;
  out.right = z.right;
  out.left.insert(out.left.begin() + static_cast<std::ptrdiff_t>(j),
                  Matrix<K>::identity(z.dims[2 * j]));
  out.right.insert(out.right.begin() + static_cast<std::ptrdiff_t>(j),
                   Matrix<K>::identity(z.dims[2 * j]));
  return out;
}

template <class K>
ZigzagRep<K> refine(const ZigzagRep<K>& z, const std::vector<Rat>& values) {
  ZigzagRep<K> out = z;
  for (const auto& v : values) out = refine(out, v);
  return out;
}

// Interval decomposition by a single left-to-right sweep. A set of strands,
// one per interval summand alive at the current cell, is carried as a basis
// of the current stalk. Every basis rewrite adds a strand into one of higher
// absorption rank (see detail::strand_rank), which keeps each recorded birth
// honest: point-born strands stay inside the kernel of their birth arrow.
template <class K>
Barcode decompose(const ZigzagRep<K>& z) {
  z.validate();
  const std::size_t m = z.grid.size();
  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> spans;

  std::vector<std::size_t> birth;        // per strand
  std::vector<std::vector<K>> cols;      // per strand, coordinates in current stalk
  for (std::size_t r = 0; r < z.dims[0]; ++r) {
    std::vector<K> e(z.dims[0], K(0));
    e[r] = K(1);
    cols.push_back(std::move(e));
    birth.push_back(0);
  }
  // Position of the highest-ranked strand in a column's support; that strand
  // may absorb the rest of the support, so it is the one that survives.
  auto rank_pivot = [&](const std::vector<K>& v) -> std::optional<std::size_t> {
    std::optional<std::size_t> best;
    for (std::size_t p = 0; p < v.size(); ++p) {
      if (v[p] == K(0)) continue;
      if (!best ||
          detail::strand_rank(birth[*best], *best) < detail::strand_rank(birth[p], p))
        best = p;
    }
    return best;
  };

  for (std::size_t i = 1; i <= m; ++i) {
    // Arrow against the sweep: B maps the new point stalk into the current
    // one. A strand survives exactly when absorbing strands of lower rank
    // puts its representative in the image of B; echelonizing the image in
    // strand coordinates with highest-rank pivots finds those corrections.
    {
      const Matrix<K>& B = z.left[i - 1];
      const std::size_t cell_v = 2 * i - 2, cell_p = 2 * i - 1;
      Matrix<K> S = detail::columns_to_matrix(cols, z.dims[cell_v]);
      auto C = solve(S, B);
      if (!C) throw std::logic_error("strand matrix lost invertibility");
      std::map<std::size_t, std::vector<K>> echelon;  // pivot position -> column
      for (std::size_t c = 0; c < C->cols(); ++c) {
        std::vector<K> v = detail::column_vector(*C, c);
        while (auto piv = rank_pivot(v)) {
          auto it = echelon.find(*piv);
          if (it == echelon.end()) {
            echelon.emplace(*piv, std::move(v));
            break;
          }
          K f = v[*piv] / it->second[*piv];
          detail::axpy(v, f, it->second);
        }
      }
      Matrix<K> targets(z.dims[cell_v], echelon.size());
      {
        std::size_t c = 0;
        for (const auto& [piv, comb] : echelon) {
          std::vector<K> t = detail::apply(S, comb);
          for (std::size_t r = 0; r < t.size(); ++r) targets(r, c) = t[r];
          ++c;
        }
      }
      auto cont = solve(B, targets);
      if (!cont) throw std::logic_error("echelon column left the image");
      std::vector<std::size_t> new_birth;
      std::vector<std::vector<K>> new_cols;
      {
        std::size_t c = 0;
        for (const auto& [piv, comb] : echelon) {
          new_birth.push_back(birth[piv]);
          new_cols.push_back(detail::column_vector(*cont, c++));
        }
      }
      for (std::size_t s = 0; s < birth.size(); ++s)
        if (!echelon.count(s)) spans[{birth[s], cell_v}] += 1;
      Matrix<K> ker = kernel_basis(B);
      for (std::size_t c = 0; c < ker.cols(); ++c) {
        new_birth.push_back(cell_p);
        new_cols.push_back(detail::column_vector(ker, c));
      }
      birth = std::move(new_birth);
      cols = std::move(new_cols);
    }
    // Arrow along the sweep: push every strand forward in ascending rank
    // order and reduce to distinct lowest pivots, so collisions are resolved
    // by the later (higher-ranked) strand absorbing the kept one; a strand
    // whose image dies here ends at the point cell. Unused coordinates start
    // fresh strands.
    {
      const Matrix<K>& A = z.right[i - 1];
      const std::size_t cell_p = 2 * i - 1, cell_u = 2 * i;
      std::vector<std::size_t> order(birth.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return detail::strand_rank(birth[a], a) < detail::strand_rank(birth[b], b);
      });
      std::map<std::size_t, std::size_t> pivot_of;  // pivot row -> kept index
      std::vector<std::size_t> new_birth;
      std::vector<std::vector<K>> new_cols;
      for (std::size_t s : order) {
        std::vector<K> v = detail::apply(A, cols[s]);
        std::optional<std::size_t> piv;
        while ((piv = detail::lowest_nonzero(v))) {
          auto it = pivot_of.find(*piv);
          if (it == pivot_of.end()) break;
          const auto& u = new_cols[it->second];
          K f = v[*piv] / u[*piv];
          detail::axpy(v, f, u);
        }
        if (!piv) {
          spans[{birth[s], cell_p}] += 1;
          continue;
        }
        pivot_of[*piv] = new_cols.size();
        new_cols.push_back(std::move(v));
        new_birth.push_back(birth[s]);
      }
      for (std::size_t r = 0; r < z.dims[cell_u]; ++r) {
        if (pivot_of.count(r)) continue;
        std::vector<K> e(z.dims[cell_u], K(0));
        e[r] = K(1);
        new_cols.push_back(std::move(e));
        new_birth.push_back(cell_u);
      }
      birth = std::move(new_birth);
      cols = std::move(new_cols);
    }
  }
  for (std::size_t s = 0; s < birth.size(); ++s) spans[{birth[s], 2 * m}] += 1;

  Barcode out;
  for (const auto& [span, mult] : spans)
    out.add(cell_range_to_interval(z.grid, span.first, span.second), mult);
  return out;
}

template <class K>
GradedBarcode decompose(const std::map<int, ZigzagRep<K>>& g) {
  GradedBarcode out;
  for (const auto& [deg, z] : g) {
    Barcode b = decompose(z);
    for (const auto& bar : b.bars()) out.add(deg, bar.interval, bar.mult);
  }
  return out;
}

}  // namespace gp
