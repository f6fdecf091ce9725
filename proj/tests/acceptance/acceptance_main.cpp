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

// End-to-end acceptance suite. Each criterion prints exactly one PASS/FAIL
// line; the process exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gp/barcode.hpp"
#include "gp/convolution.hpp"
#include "gp/field.hpp"
#include "gp/geometry.hpp"
#include "gp/interval.hpp"
#include "gp/rational.hpp"
#include "gp/sheaf_ops.hpp"
#include "gp/zigzag.hpp"
#include "oracles/geometry_oracle.hpp"
#include "oracles/random_gen.hpp"
#include "oracles/rank_oracle.hpp"

namespace {

using namespace gp;
using gp_test::make_rat;

bool not_implemented() { return false; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Criterion 1: decomposing the cellular model of a random barcode returns
// the barcode verbatim, a thousand times, within the time budget.
bool round_trip_1000() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(410001);
  for (int it = 0; it < 1000; ++it) {
    Barcode b = gp_test::random_barcode(rng, 20);
    if (!(decompose(from_barcode<F2>(b)) == b)) return false;
  }
  return seconds_since(t0) < 10.0;
}

// Criterion 2: bar multiplicities of random zigzag modules match the
// rank-function brute force.
bool decompose_vs_rank_oracle() {
  std::mt19937_64 rng(410002);
  for (int it = 0; it < 200; ++it) {
    auto z = gp_test::random_zigzag<F2>(rng, 6, 4);
    if (!(decompose(z) == gp_test::decompose_by_rank_oracle(z))) return false;
  }
  return true;
}

// Criterion 3: no extension group above degree one ever appears, and the
// half-line against the open complement carries exactly one.
bool ext_vanishes_above_one() {
  std::mt19937_64 rng(410003);
  for (int it = 0; it < 500; ++it) {
    GradedBarcode f = gp_test::random_graded_barcode(rng);
    GradedBarcode g = gp_test::random_graded_barcode(rng);
    SheafHomDims d = sheaf_hom<F2>(f, g);
    for (const auto& [pq, hd] : d.pairs) {
      (void)hd;
      for (int j = 2; j <= 5; ++j)
        if (d.ext(j, pq.first, pq.second) != 0) return false;
    }
  }
  GradedBarcode ray = GradedBarcode::single(Interval(ExtRat(Rat(0)), ExtRat::pos_inf(), true, false), 0);
  GradedBarcode cmp = GradedBarcode::single(Interval(ExtRat::neg_inf(), ExtRat(Rat(0)), false, false), 0);
  SheafHomDims d = sheaf_hom<F2>(ray, cmp);
  return d.ext1(0, 0) == 1 && d.hom(0, 0) == 0;
}

// Criterion 4: the kernels compose additively in the shift parameter.
bool kernel_group_law() {
  std::vector<Rat> vals = {make_rat(-2), make_rat(-1), make_rat(-1, 2), make_rat(0),
                           make_rat(1, 2), make_rat(1), make_rat(2)};
  for (const Rat& a : vals)
    for (const Rat& b : vals) {
      GradedBarcode lhs = convolve(Kernel(a), Kernel(b).as_barcode());
      if (!(lhs == Kernel(a + b).as_barcode())) return false;
    }
  return true;
}

// Criterion 5: duality swaps a kernel for its inverse kernel.
bool duality_intertwines() {
  std::mt19937_64 rng(410005);
  std::vector<Rat> shifts = {make_rat(1, 2), make_rat(1), make_rat(2)};
  for (int it = 0; it < 100; ++it) {
    GradedBarcode f = gp_test::random_graded_barcode(rng);
    for (const Rat& a : shifts) {
      GradedBarcode lhs = dualize<F2>(convolve(Kernel(a), f), DualVariant::dual);
      GradedBarcode rhs = convolve(Kernel(-a), dualize<F2>(f, DualVariant::dual));
      if (!(lhs == rhs)) return false;
    }
  }
  return true;
}

// Criterion 6: pinned distance values and the triangle inequality on the
// certified upper bounds.
bool distance_fixtures_and_triangle() {
  auto seg = [](long lo, long hi) {
    return GradedBarcode::single(Interval::closed(ExtRat(Rat(lo)), ExtRat(Rat(hi))), 0);
  };
  DistanceBounds d1 = distance_bounds(seg(0, 2), seg(0, 3));
  if (!(d1.exact && d1.lower == ExtRat(Rat(1)) && d1.upper == ExtRat(Rat(1)))) return false;

  DistanceBounds d2 = distance_bounds(seg(-1, 1), seg(0, 0));
  if (!(d2.upper <= ExtRat(Rat(1)))) return false;

  DistanceBounds d3 = distance_bounds(Kernel(make_rat(-1)).as_barcode(),
                                      Kernel(make_rat(0)).as_barcode());
  if (!(d3.upper <= ExtRat(Rat(1)))) return false;

  GradedBarcode half = GradedBarcode::single(Interval::bar(ExtRat(Rat(0)), ExtRat(Rat(2))), 0);
  DistanceBounds d4 = distance_bounds(half, GradedBarcode());
  if (!(d4.exact && d4.lower == ExtRat(Rat(1)) && d4.upper == ExtRat(Rat(1)))) return false;

  std::mt19937_64 rng(410006);
  auto random_gamma = [&rng] { return gp_test::random_graded_barcode(rng, 3, -1, 1, true); };
  for (int it = 0; it < 100; ++it) {
    GradedBarcode f = random_gamma(), g = random_gamma(), h = random_gamma();
    DistanceBounds fg = distance_bounds(f, g);
    DistanceBounds gh = distance_bounds(g, h);
    DistanceBounds fh = distance_bounds(f, h);
    if (fg.upper.is_finite() && gh.upper.is_finite()) {
      if (!(fh.upper <= ExtRat(fg.upper.value() + gh.upper.value()))) return false;
    }
  }
  return true;
}

// Criterion 8: the cone topology toolkit against the point-sampling oracle
// on at least 300 random instances, quadrant, octant and a non-simplicial
// cone included; every identity exact, every sampled point must agree.
bool cone_topology_suite() {
  using gp_test::cone_rows;
  using gp_test::grid_points;
  using gp_test::member_sum;
  using gp_test::random_gamma_flat_open;
  using gp_test::random_polyhedron;
  using gp_test::random_proper_solid_cone;
  using gp_test::rows_of;
  using gp_test::strictify;
  using gp_test::weaken;

  std::mt19937_64 rng(410008);
  Cone quadrant = Cone::from_normals(2, {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
  Cone octant = Cone::from_normals(
      3, {{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)}});
  // Cone over a square: four extremal rays, not simplicial.
  Cone pyramid = Cone::from_normals(3, {{Rat(1), Rat(0), Rat(1)},
                                        {Rat(-1), Rat(0), Rat(1)},
                                        {Rat(0), Rat(1), Rat(1)},
                                        {Rat(0), Rat(-1), Rat(1)}});
  if (pyramid.rays().size() != 4 || !pyramid.is_proper() || !pyramid.is_solid()) return false;

  const auto grid2 = grid_points(2), grid3 = grid_points(3);
  for (int it = 0; it < 300; ++it) {
    const bool three = it % 4 == 3;
    const std::size_t dim = three ? 3 : 2;
    Cone c = three ? (it % 12 == 3 ? octant : it % 12 == 7 ? pyramid
                                                           : random_proper_solid_cone(rng, 3))
                   : (it % 8 == 0 ? quadrant : random_proper_solid_cone(rng, 2));
    // Sampled points: the full plane grid, or a thinned spatial grid.
    std::vector<Vec> pts;
    if (three) {
      std::uniform_int_distribution<std::size_t> pick(0, grid3.size() - 1);
      for (int k = 0; k < 80; ++k) pts.push_back(grid3[pick(rng)]);
    } else {
      pts = grid2;
    }
    const auto gamma = cone_rows(c);
    const auto anti = cone_rows(c.antipodal());

    // The correspondence between flat open and locally closed sets.
    HPolyhedron u = random_gamma_flat_open(rng, c);
    HPolyhedron z = omega_to_z(u, c);
    GammaPredicates pz = gamma_predicates(z, c);
    if (!pz.gamma_locally_closed || !pz.gamma_flat) return false;
    if (!z_to_omega(z, c).same_set(u)) return false;
    if (!interior(z).same_set(u)) return false;
    const auto ru = rows_of(u);
    const auto rz = rows_of(z);
    const bool u_empty = u.is_empty();
    for (const auto& x : pts) {
      bool in_z = member_sum(x, ru, gamma) && !u_empty && member_sum(x, weaken(ru), anti);
      if (z.contains(x) != in_z) return false;
      bool in_u = member_sum(x, rz, gamma) && member_sum(x, rz, strictify(anti));
      if (u.contains(x) != in_u) return false;
    }

    switch (it % 3) {
      case 0: {
        // Sums against the membership oracle, and closure invisibility
        // under the open sweep.
        auto ra = gp_test::random_halfspaces(rng, dim);
        auto rb = gp_test::random_halfspaces(rng, dim);
        HPolyhedron a(dim, ra), b(dim, rb);
        HPolyhedron s = minkowski_sum(a, b);
        for (const auto& x : pts)
          if (s.contains(x) != member_sum(x, rows_of(ra), rows_of(rb))) return false;
        HPolyhedron gin = interior(c.as_polyhedron());
        if (!minkowski_sum(a, gin).same_set(minkowski_sum(closure(a), gin))) return false;
        break;
      }
      case 1: {
        // Open sets sweep the same with the cone or its interior; invariant
        // open sets are interiors of their closures.
        HPolyhedron a = random_polyhedron(rng, dim);
        HPolyhedron gin = interior(c.as_polyhedron());
        HPolyhedron uo = interior(a);
        HPolyhedron swept = minkowski_sum(uo, gin);
        if (!swept.same_set(minkowski_cone(uo, c))) return false;
        if (!swept.includes(uo)) return false;
        HPolyhedron w = interior(minkowski_cone(a, c));
        if (!interior(closure(w)).same_set(w)) return false;
        if (!minkowski_cone(z, c).same_set(minkowski_sum(interior(z), gin))) return false;
        break;
      }
      default: {
        // Disjoint flat open sets stay disjoint as locally closed sets.
        Vec n = c.normals()[0];
        Vec m = n;
        for (auto& e : m) e = -e;
        HPolyhedron u1 = u.intersect(HPolyhedron(dim, {HalfSpace{n, Rat(0), true}}));
        HPolyhedron u2 = random_gamma_flat_open(rng, c).intersect(
            HPolyhedron(dim, {HalfSpace{m, Rat(0), true}}));
        if (!u1.intersect(u2).is_empty()) return false;
        if (!omega_to_z(u1, c).intersect(omega_to_z(u2, c)).is_empty()) return false;
        break;
      }
    }
  }
  return true;
}

struct Criterion {
  int id;
  std::string title;
  std::function<bool()> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "decomposition round trip, 1000 random barcodes, under 10 s", round_trip_1000},
      {2, "decomposition agrees with rank oracle on 200 random modules", decompose_vs_rank_oracle},
      {3, "Ext vanishes above degree 1; boundary Ext fixture", ext_vanishes_above_one},
      {4, "convolution kernel group law, 49 parameter pairs", kernel_group_law},
      {5, "duality intertwines convolution on 100 random inputs", duality_intertwines},
      {6, "convolution distance fixtures and triangle inequality", distance_fixtures_and_triangle},
      {7, "stability under perturbation, 100 trials, under 60 s", not_implemented},
      {8, "cone topology lemma suite on 300 random polyhedra", cone_topology_suite},
      {9, "stratification fixtures and 50 random arrangements", not_implemented},
      {10, "pipeline barcodes match brute force oracle", not_implemented},
      {11, "interval hom rule consistent across dimensions", not_implemented},
  };

  bool all_ok = true;
  for (const Criterion& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      ok = false;
      note = std::string(" (exception: ") + e.what() + ")";
    }
    auto t1 = std::chrono::steady_clock::now();
    double secs = std::chrono::duration<double>(t1 - t0).count();
    std::printf("%s  criterion %2d: %s [%.2fs]%s\n", ok ? "PASS" : "FAIL", c.id,
                c.title.c_str(), secs, note.c_str());
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}
