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
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gp/barcode.hpp"
#include "gp/interval.hpp"
#include "gp/matrix.hpp"
#include "gp/rational.hpp"
#include "gp/zigzag.hpp"

namespace gp {

enum class SectionsVariant { standard, compact };
enum class DualVariant { dual, naive_dual };  // with / without the [1] twist of the line

// Cohomology dimensions of (compactly supported) global sections, degree by
// degree. Additive over bars, so evaluated through the per-shape table: plain
// sections see k in degree 0 for intervals closed at every finite end and k
// in degree 1 for bounded open ones; compact support sees k in degree 0 for
// compact intervals and k in degree 1 when no end is a finite closed one.
std::map<int, std::uint64_t> global_sections(const GradedBarcode& f, SectionsVariant v);

// Hom and Ext^1 dimensions between the degree-p part of the source and the
// degree-q part of the target. The underlying two-term cell complex has no
// higher cohomology, so ext(j) vanishes for j > 1 identically.
struct SheafHomDims {
  std::map<std::pair<int, int>, std::pair<std::uint64_t, std::uint64_t>> pairs;

  std::uint64_t hom(int p = 0, int q = 0) const;
  std::uint64_t ext1(int p = 0, int q = 0) const;
  std::uint64_t ext(int j, int p = 0, int q = 0) const;
  bool operator==(const SheafHomDims&) const = default;
};

namespace detail {

// Sorted union of all finite interval endpoints appearing in f.
inline void collect_endpoints(const GradedBarcode& f, std::set<Rat>& into) {
  for (const auto& [deg, bc] : f.components()) {
    for (const auto& bar : bc.bars()) {
      if (bar.interval.lower().is_finite()) into.insert(bar.interval.lower().value());
      if (bar.interval.upper().is_finite()) into.insert(bar.interval.upper().value());
    }
  }
}

// Two-term sections complex of a zigzag module over the leftmost 2i+1 cells:
// C0 = sum of those stalks, C1 = one slot per generization arrow between
// them, d(s)|arrow = arrow(s_P) - s_U. Windows onto successive prefixes are
// how both sections over open rays and their restriction maps are read off.
template <class K>
struct PrefixComplex {
  std::vector<std::size_t> off0;  // per cell, offset into C0
  std::size_t c0 = 0, c1 = 0;
  Matrix<K> d;

  PrefixComplex(const ZigzagRep<K>& z, std::size_t i) {
    off0.assign(2 * i + 1, 0);
    for (std::size_t c = 0; c <= 2 * i; ++c) {
      off0[c] = c0;
      c0 += z.dims[c];
    }
    for (std::size_t j = 1; j <= i; ++j) c1 += z.dims[2 * j - 2] + z.dims[2 * j];
    d = Matrix<K>(c1, c0);
    std::size_t row = 0;
    auto slot = [&](const Matrix<K>& a, std::size_t cell_p, std::size_t cell_u) {
      for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) d(row + r, off0[cell_p] + c) = a(r, c);
        d(row + r, off0[cell_u] + r) = K(-1);
      }
      row += a.rows();
    };
    for (std::size_t j = 1; j <= i; ++j) {
      slot(z.left[j - 1], 2 * j - 1, 2 * j - 2);
      slot(z.right[j - 1], 2 * j - 1, 2 * j);
    }
  }
};

// Unit columns of the ambient space completing the column space of im to a
// basis; the cosets of these units are a basis of the cokernel.
template <class K>
Matrix<K> coker_reps(const Matrix<K>& im) {
  const std::size_t n = im.rows();
  const std::size_t base = rank(im);
  std::vector<std::size_t> chosen;
  Matrix<K> acc = im;
  for (std::size_t r = 0; r < n && base + chosen.size() < n; ++r) {
    Matrix<K> e(n, 1);
    e(r, 0) = K(1);
    Matrix<K> wider = hstack(acc, e);
    if (rank(wider) == base + chosen.size() + 1) {
      chosen.push_back(r);
      acc = std::move(wider);
    }
  }
  Matrix<K> out(n, chosen.size());
  for (std::size_t c = 0; c < chosen.size(); ++c) out(chosen[c], c) = K(1);
  return out;
}

}  // namespace detail

// Chain-level RHom on a common grid refinement. For each degree pair the
// complex is C0 = sum over cells of Hom(F_cell, G_cell) and C1 = one slot
// Hom(F_P, G_U) per generization arrow, with d(phi)|arrow =
// G_arrow . phi_P - phi_U . F_arrow; Hom is the kernel, Ext^1 the cokernel.
template <class K>
SheafHomDims sheaf_hom(const GradedBarcode& f, const GradedBarcode& g) {
  std::set<Rat> endpoint_set;
  detail::collect_endpoints(f, endpoint_set);
  detail::collect_endpoints(g, endpoint_set);
  const std::vector<Rat> common(endpoint_set.begin(), endpoint_set.end());

  SheafHomDims out;
  for (const auto& [p, fb] : f.components()) {
    for (const auto& [q, gb] : g.components()) {
      ZigzagRep<K> zf = refine(from_barcode<K>(fb), common);
      ZigzagRep<K> zg = refine(from_barcode<K>(gb), common);
      const std::size_t m = zf.grid.size();

      std::vector<std::size_t> off0(2 * m + 1, 0);
      std::size_t c0 = 0;
      for (std::size_t c = 0; c < 2 * m + 1; ++c) {
        off0[c] = c0;
        c0 += zf.dims[c] * zg.dims[c];
      }
      std::size_t c1 = 0;
      for (std::size_t j = 1; j <= m; ++j)
        c1 += zf.dims[2 * j - 1] * (zg.dims[2 * j - 2] + zg.dims[2 * j]);

      // phi_cell is a (zg.dims x zf.dims) block, flattened row major.
      Matrix<K> d(c1, c0);
      std::size_t row = 0;
      auto slot = [&](const Matrix<K>& fa, const Matrix<K>& ga, std::size_t cell_p,
                      std::size_t cell_u) {
        const std::size_t fp = zf.dims[cell_p], fu = zf.dims[cell_u];
        const std::size_t gp = zg.dims[cell_p], gu = zg.dims[cell_u];
        for (std::size_t u = 0; u < gu; ++u) {
          for (std::size_t i = 0; i < fp; ++i) {
            const std::size_t r = row + u * fp + i;
            for (std::size_t j = 0; j < gp; ++j)
              d(r, off0[cell_p] + j * fp + i) = ga(u, j);
            for (std::size_t k = 0; k < fu; ++k)
              d(r, off0[cell_u] + u * fu + k) = d(r, off0[cell_u] + u * fu + k) - fa(k, i);
          }
        }
        row += gu * fp;
      };
      for (std::size_t j = 1; j <= m; ++j) {
        slot(zf.left[j - 1], zg.left[j - 1], 2 * j - 1, 2 * j - 2);
        slot(zf.right[j - 1], zg.right[j - 1], 2 * j - 1, 2 * j);
      }

      const std::uint64_t rk = rank(d);
      const std::uint64_t hom = c0 - rk, ext1 = c1 - rk;
      if (hom || ext1) out.pairs[{p, q}] = {hom, ext1};
    }
  }
  return out;
}

// Duality via the local RHom complex at each point cell: with dual open-cell
// stalks Hom(F_U, k), the stalk at a point is the kernel of
// (phiP, phiL, phiR) -> (phiP - phiL . F_left, phiP - phiR . F_right), its
// generizations read off the phiL / phiR blocks, and the cokernel contributes
// skyscrapers one degree up. The degree-p part lands in degree -p; the
// variant with the twist of the line shifts everything one degree further.
template <class K>
GradedBarcode dualize(const GradedBarcode& f, DualVariant v) {
  GradedBarcode out;
  for (const auto& [p, bc] : f.components()) {
    ZigzagRep<K> z = from_barcode<K>(bc);
    const std::size_t m = z.grid.size();

    ZigzagRep<K> dz;
    dz.grid = z.grid;
    dz.dims.assign(2 * m + 1, 0);
    for (std::size_t j = 0; j <= m; ++j) dz.dims[2 * j] = z.dims[2 * j];
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t dp = z.dims[2 * j - 1];
      const std::size_t dl = z.dims[2 * j - 2], dr = z.dims[2 * j];
      const Matrix<K>& fl = z.left[j - 1];
      const Matrix<K>& fr = z.right[j - 1];
      Matrix<K> local(2 * dp, dp + dl + dr);
      for (std::size_t r = 0; r < dp; ++r) {
        local(r, r) = K(1);
        local(dp + r, r) = K(1);
        // (phiL . F_left)_r = sum_k phiL_k F_left(k, r), same on the right
        for (std::size_t k = 0; k < dl; ++k) local(r, dp + k) = K(0) - fl(k, r);
        for (std::size_t k = 0; k < dr; ++k) local(dp + r, dp + dl + k) = K(0) - fr(k, r);
      }
      Matrix<K> ker = kernel_basis(local);
      dz.dims[2 * j - 1] = ker.cols();
      Matrix<K> to_left(dl, ker.cols()), to_right(dr, ker.cols());
      for (std::size_t c = 0; c < ker.cols(); ++c) {
        for (std::size_t k = 0; k < dl; ++k) to_left(k, c) = ker(dp + k, c);
        for (std::size_t k = 0; k < dr; ++k) to_right(k, c) = ker(dp + dl + k, c);
      }
      dz.left.push_back(std::move(to_left));
      dz.right.push_back(std::move(to_right));

      const std::uint64_t coker = 2 * dp - rank(local);
      if (coker) out.add(-p + 1, Interval::point(z.grid[j - 1]), coker);
    }
    Barcode dual_bars = decompose(dz);
    for (const auto& bar : dual_bars.bars()) out.add(-p, bar.interval, bar.mult);
  }
  return v == DualVariant::dual ? out.shifted(1) : out;
}

// Gamma-fication through sections over the rays (-inf, t): the stalk of the
// output at x is the sections complex over the cells strictly left of the
// next critical value, the leftward generizations are restrictions of such
// sections, and the rightward ones are identities. Each cohomology degree j
// of the window complexes yields one zigzag module, placed j degrees up.
template <class K>
GradedBarcode gammafy(const GradedBarcode& f) {
  GradedBarcode out;
  for (const auto& [p, bc] : f.components()) {
    ZigzagRep<K> z = from_barcode<K>(bc);
    const std::size_t m = z.grid.size();

    std::vector<detail::PrefixComplex<K>> win;
    win.reserve(m + 1);
    for (std::size_t i = 0; i <= m; ++i) win.emplace_back(z, i);

    std::vector<Matrix<K>> ker, reps;
    for (std::size_t i = 0; i <= m; ++i) {
      ker.push_back(kernel_basis(win[i].d));
      reps.push_back(detail::coker_reps(win[i].d));
    }

    // Degree 0: kernels and restricted kernels.
    ZigzagRep<K> z0;
    z0.grid = z.grid;
    z0.dims.assign(2 * m + 1, 0);
    z0.dims[0] = ker[0].cols();
    for (std::size_t i = 1; i <= m; ++i)
      z0.dims[2 * i - 1] = z0.dims[2 * i] = ker[i].cols();
    // Degree 1: cokernel representatives and their restrictions.
    ZigzagRep<K> z1;
    z1.grid = z.grid;
    z1.dims.assign(2 * m + 1, 0);
    z1.dims[0] = reps[0].cols();
    for (std::size_t i = 1; i <= m; ++i)
      z1.dims[2 * i - 1] = z1.dims[2 * i] = reps[i].cols();

    for (std::size_t i = 1; i <= m; ++i) {
      // Restriction drops the coordinates of the point cell 2i-1 and the
      // open cell 2i (and, on slots, the two arrows at that point cell).
      const std::size_t keep0 = win[i - 1].c0, keep1 = win[i - 1].c1;
      Matrix<K> pk(keep0, ker[i].cols());
      for (std::size_t r = 0; r < keep0; ++r)
        for (std::size_t c = 0; c < ker[i].cols(); ++c) pk(r, c) = ker[i](r, c);
      auto x0 = solve(ker[i - 1], pk);
      if (!x0) throw std::logic_error("restricted section left the kernel");
      z0.left.push_back(*x0);
      z0.right.push_back(Matrix<K>::identity(z0.dims[2 * i - 1]));

      Matrix<K> pr(keep1, reps[i].cols());
      for (std::size_t r = 0; r < keep1; ++r)
        for (std::size_t c = 0; c < reps[i].cols(); ++c) pr(r, c) = reps[i](r, c);
      Matrix<K> basis = hstack(win[i - 1].d, reps[i - 1]);
      auto x1 = solve(basis, pr);
      if (!x1) throw std::logic_error("restricted class left the cokernel");
      Matrix<K> x1q(reps[i - 1].cols(), reps[i].cols());
      for (std::size_t r = 0; r < x1q.rows(); ++r)
        for (std::size_t c = 0; c < x1q.cols(); ++c)
          x1q(r, c) = (*x1)(win[i - 1].d.cols() + r, c);
      z1.left.push_back(std::move(x1q));
      z1.right.push_back(Matrix<K>::identity(z1.dims[2 * i - 1]));
    }

    Barcode b0 = decompose(z0);
    for (const auto& bar : b0.bars()) out.add(p, bar.interval, bar.mult);
    Barcode b1 = decompose(z1);
    for (const auto& bar : b1.bars()) out.add(p + 1, bar.interval, bar.mult);
  }
  return out;
}

}  // namespace gp
