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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "doctest.h"
#include "gp/barcode.hpp"
#include "gp/convolution.hpp"
#include "gp/field.hpp"
#include "gp/interval.hpp"
#include "gp/sheaf_ops.hpp"
#include "oracles/convolution_oracle.hpp"
#include "oracles/random_gen.hpp"
#include "oracles/sheaf_oracles.hpp"

using namespace gp;
using gp_test::make_rat;
using gp_test::random_gamma_bar;
using gp_test::random_graded_barcode;
using gp_test::random_interval;

namespace {

GradedBarcode single(const Interval& i, int deg) { return GradedBarcode::single(i, deg); }

Interval gbar(long b, long d) { return Interval(ExtRat(make_rat(b)), ExtRat(make_rat(d)), true, false); }

GradedBarcode random_bounded_graded(std::mt19937_64& rng, int max_bars = 3) {
  std::uniform_int_distribution<int> nb(0, max_bars), deg(-1, 1);
  GradedBarcode out;
  const int n = nb(rng);
  for (int k = 0; k < n; ++k) {
    Interval i = random_interval(rng);
    while (!i.is_bounded()) i = random_interval(rng);
    out.add(deg(rng), i, 1);
  }
  return out;
}

std::map<int, std::uint64_t> stalks(const GradedBarcode& h, const Rat& t) {
  std::map<int, std::uint64_t> out;
  for (const auto& [deg, b] : h.components())
    for (const auto& bar : b.bars())
      if (bar.interval.contains(ExtRat(t))) out[deg] += bar.mult;
  return out;
}

GradedMorphism random_morphism(std::mt19937_64& rng, const GradedBarcode& f,
                               const GradedBarcode& g) {
  GradedMorphism u(f, g);
  std::uniform_int_distribution<int> coin(0, 1);
  for (std::size_t s = 0; s < u.source_bars().size(); ++s)
    for (std::size_t t = 0; t < u.target_bars().size(); ++t)
      if (u.block_dim(s, t) && coin(rng)) u.set_entry(s, t, 1);
  return u;
}

// Definitional interleaving check: enumerate both morphisms over their
// nonzero blocks and test the two composite identities through the public
// operations. nullopt when the search space is too large for a test.
std::optional<bool> brute_interleaved(const GradedBarcode& f, const GradedBarcode& g,
                                      const Rat& a) {
  const Kernel k{a};
  const GradedBarcode tf = convolve(k, f), tg = convolve(k, g);
  GradedMorphism u0(tf, g), v0(tg, f);
  std::vector<std::pair<std::size_t, std::size_t>> bu, bv;
  for (std::size_t s = 0; s < u0.source_bars().size(); ++s)
    for (std::size_t t = 0; t < u0.target_bars().size(); ++t)
      if (u0.block_dim(s, t)) bu.push_back({s, t});
  for (std::size_t s = 0; s < v0.source_bars().size(); ++s)
    for (std::size_t t = 0; t < v0.target_bars().size(); ++t)
      if (v0.block_dim(s, t)) bv.push_back({s, t});
  if (bu.size() + bv.size() > 9) return std::nullopt;
  const GradedMorphism want_f = chi(Rat(0), a * 2, f);
  const GradedMorphism want_g = chi(Rat(0), a * 2, g);
  std::vector<GradedMorphism> vs;
  std::vector<GradedMorphism> tvs;
  for (std::uint32_t mv = 0; mv < (1u << bv.size()); ++mv) {
    GradedMorphism v = v0;
    for (std::size_t h = 0; h < bv.size(); ++h)
      if (mv >> h & 1) v.set_entry(bv[h].first, bv[h].second, 1);
    vs.push_back(v);
    tvs.push_back(convolve(k, v));
  }
  for (std::uint32_t mu = 0; mu < (1u << bu.size()); ++mu) {
    GradedMorphism u = u0;
    for (std::size_t e = 0; e < bu.size(); ++e)
      if (mu >> e & 1) u.set_entry(bu[e].first, bu[e].second, 1);
    const GradedMorphism tu = convolve(k, u);
    for (std::size_t idx = 0; idx < vs.size(); ++idx) {
      if (!(compose(tu, vs[idx]) == want_f)) continue;
      if (compose(tvs[idx], u) == want_g) return true;
    }
  }
  return false;
}

ExtRat absdiff(const ExtRat& x, const ExtRat& y) {
  if (x == y) return ExtRat(Rat(0));
  return ext_max(x, y) - ext_min(x, y);
}

ExtRat half_length(const Interval& i) {
  const ExtRat len = absdiff(i.lower(), i.upper());
  if (!len.is_finite()) return ExtRat::pos_inf();
  return ExtRat(len.value() / 2);
}

ExtRat match_cost(const Interval& x, const Interval& y) {
  return ext_max(absdiff(x.lower(), y.lower()), absdiff(x.upper(), y.upper()));
}

// Exact bottleneck value for one degree by exhaustive matching: pairing
// costs the endpoint sup distance, leaving a bar unmatched costs half its
// length.
ExtRat bottleneck_rec(const std::vector<Interval>& ls, const std::vector<Interval>& rs,
                      std::size_t i, std::uint32_t used) {
  if (i == ls.size()) {
    ExtRat worst(Rat(0));
    for (std::size_t j = 0; j < rs.size(); ++j)
      if (!(used >> j & 1)) worst = ext_max(worst, half_length(rs[j]));
    return worst;
  }
  ExtRat best = ext_max(half_length(ls[i]), bottleneck_rec(ls, rs, i + 1, used));
  for (std::size_t j = 0; j < rs.size(); ++j) {
    if (used >> j & 1) continue;
    const ExtRat cand = ext_max(match_cost(ls[i], rs[j]),
                                bottleneck_rec(ls, rs, i + 1, used | (1u << j)));
    best = ext_min(best, cand);
  }
  return best;
}

ExtRat bottleneck_oracle(const GradedBarcode& f, const GradedBarcode& g) {
  std::set<int> degs;
  for (const auto& [d, b] : f.components()) degs.insert(d);
  for (const auto& [d, b] : g.components()) degs.insert(d);
  ExtRat out(Rat(0));
  for (int d : degs) {
    std::vector<Interval> ls, rs;
    for (const auto& bar : f.at(d).bars())
      for (std::uint64_t m = 0; m < bar.mult; ++m) ls.push_back(bar.interval);
    for (const auto& bar : g.at(d).bars())
      for (std::uint64_t m = 0; m < bar.mult; ++m) rs.push_back(bar.interval);
    out = ext_max(out, bottleneck_rec(ls, rs, 0, 0));
  }
  return out;
}

GradedBarcode random_gamma_graded(std::mt19937_64& rng, int max_bars, int min_deg = 0,
                                  int max_deg = 1) {
  std::uniform_int_distribution<int> nb(0, max_bars), deg(min_deg, max_deg);
  GradedBarcode out;
  const int n = nb(rng);
  for (int k = 0; k < n; ++k) out.add(deg(rng), random_gamma_bar(rng), 1);
  return out;
}

}  // namespace

TEST_CASE("kernels as barcodes") {
  CHECK(Kernel(make_rat(1)).as_barcode() ==
        single(Interval::closed(ExtRat(make_rat(-1)), ExtRat(make_rat(1))), 0));
  CHECK(Kernel(make_rat(0)).as_barcode() == single(Interval::point(make_rat(0)), 0));
  CHECK(Kernel(make_rat(-1)).as_barcode() ==
        single(Interval::open(ExtRat(make_rat(-1)), ExtRat(make_rat(1))), -1));
  CHECK(Kernel(make_rat(-3, 4)).as_barcode() ==
        single(Interval::open(ExtRat(make_rat(-3, 4)), ExtRat(make_rat(3, 4))), -1));
}

TEST_CASE("products of single segments") {
  auto seg = [](long lo, long up) {
    return Interval::closed(ExtRat(make_rat(lo)), ExtRat(make_rat(up)));
  };
  CHECK(convolve(single(seg(-1, 1), 0), single(seg(-2, 2), 0)) == single(seg(-3, 3), 0));
  CHECK(convolve(single(seg(-1, 1), 0), single(gbar(0, 2), 0)) == single(gbar(-1, 1), 0));

  // Translation action of a point kernel.
  const GradedBarcode delta = single(Interval::point(make_rat(2)), 0);
  CHECK(convolve(delta, single(gbar(0, 3), 1)) == single(gbar(2, 5), 1));
  CHECK(convolve(delta,
                 single(Interval(ExtRat(make_rat(0)), ExtRat(make_rat(3)), false, true), -1)) ==
        single(Interval(ExtRat(make_rat(2)), ExtRat(make_rat(5)), false, true), -1));

  // A closed kernel shrinks bounded open bars and collapses short ones one
  // degree up.
  const Kernel k1{make_rat(1)};
  CHECK(convolve(k1, single(Interval::open(ExtRat(make_rat(0)), ExtRat(make_rat(4))), 0)) ==
        single(Interval::open(ExtRat(make_rat(1)), ExtRat(make_rat(3))), 0));
  CHECK(convolve(k1, single(Interval::open(ExtRat(make_rat(0)), ExtRat(make_rat(1))), 0)) ==
        single(Interval::closed(ExtRat(make_rat(0)), ExtRat(make_rat(1))), 1));
  CHECK(convolve(k1, single(Interval::open(ExtRat(make_rat(0)), ExtRat(make_rat(2))), 0)) ==
        single(Interval::point(make_rat(1)), 1));

  // Rays convolve within the same side.
  const Interval ray0(ExtRat(make_rat(0)), ExtRat::pos_inf(), true, false);
  const Interval ray1(ExtRat(make_rat(1)), ExtRat::pos_inf(), true, false);
  CHECK(convolve(single(ray0, 0), single(ray1, 0)) ==
        single(Interval(ExtRat(make_rat(1)), ExtRat::pos_inf(), true, false), 0));
}

TEST_CASE("kernel group law") {
  const std::vector<Rat> vals = {make_rat(-2), make_rat(-1), make_rat(-1, 2), make_rat(0),
                                 make_rat(1, 2), make_rat(1), make_rat(2)};
  for (const Rat& a : vals) {
    for (const Rat& b : vals) {
      CAPTURE(a.get_str());
      CAPTURE(b.get_str());
      CHECK(convolve(Kernel(a).as_barcode(), Kernel(b).as_barcode()) ==
            Kernel(a + b).as_barcode());
    }
  }
}

TEST_CASE("unit kernel and ring laws") {
  std::mt19937_64 rng(901);
  const GradedBarcode unit = Kernel(make_rat(0)).as_barcode();
  for (int it = 0; it < 60; ++it) {
    const GradedBarcode f = random_graded_barcode(rng);
    CHECK(convolve(unit, f) == f);
    CHECK(convolve(f, unit) == f);
  }
  for (int it = 0; it < 40; ++it) {
    const GradedBarcode f = random_bounded_graded(rng);
    const GradedBarcode g = random_bounded_graded(rng);
    const GradedBarcode h = random_bounded_graded(rng);
    CHECK(convolve(f, g) == convolve(g, f));
    CHECK(convolve(f, convolve(g, h)) == convolve(convolve(f, g), h));
  }
}

TEST_CASE("properness") {
  const GradedBarcode left = single(Interval(ExtRat::neg_inf(), ExtRat(make_rat(0)), false, true), 0);
  const GradedBarcode right = single(Interval(ExtRat(make_rat(0)), ExtRat::pos_inf(), true, false), 0);
  CHECK_THROWS_AS(convolve(left, right), std::invalid_argument);
  CHECK_THROWS_AS(convolve(right, left), std::invalid_argument);
  CHECK_THROWS_AS(convolve(single(Interval::line(), 0), right), std::invalid_argument);
  CHECK_NOTHROW(convolve(right, right));
  CHECK_NOTHROW(convolve(left, left));
  CHECK_NOTHROW(convolve(Kernel(make_rat(2)).as_barcode(), single(Interval::line(), 0)));
}

TEST_CASE("stalkwise agreement with the slice oracle") {
  std::mt19937_64 rng(902);
  for (int it = 0; it < 60; ++it) {
    const GradedBarcode f = random_bounded_graded(rng);
    const GradedBarcode g = random_bounded_graded(rng);
    const GradedBarcode fg = convolve(f, g);
    for (const Rat& t : gp_test::convolve_sample_points(f, g)) {
      CAPTURE(it);
      CAPTURE(t.get_str());
      CHECK(stalks(fg, t) == gp_test::convolve_stalk_oracle(f, g, t));
    }
  }
  // Kernels against arbitrary (possibly unbounded) inputs stay proper.
  std::uniform_int_distribution<int> av(-2, 2);
  for (int it = 0; it < 60; ++it) {
    const Kernel k{make_rat(av(rng), 2)};
    const GradedBarcode f = k.as_barcode();
    const GradedBarcode g = random_graded_barcode(rng);
    const GradedBarcode fg = convolve(f, g);
    for (const Rat& t : gp_test::convolve_sample_points(f, g)) {
      CHECK(stalks(fg, t) == gp_test::convolve_stalk_oracle(f, g, t));
    }
  }
}

TEST_CASE("extension dimension against the chain model") {
  CHECK(ext1_dim(Interval(ExtRat(make_rat(0)), ExtRat::pos_inf(), true, false),
                 Interval(ExtRat::neg_inf(), ExtRat(make_rat(0)), false, false)) == 1);
  std::mt19937_64 rng(903);
  for (int it = 0; it < 500; ++it) {
    const Interval i = random_interval(rng);
    const Interval j = random_interval(rng);
    CAPTURE(it);
    const SheafHomDims dims = sheaf_hom<F2>(single(i, 0), single(j, 0));
    CHECK(static_cast<std::uint64_t>(ext1_dim(i, j)) == dims.ext1(0, 0));
    CHECK(static_cast<std::uint64_t>(hom_dim(i, j)) == dims.hom(0, 0));
    CHECK(ext1_dim(i, j) >= 0);
  }
}

TEST_CASE("morphism blocks") {
  const GradedBarcode f = single(Interval::closed(ExtRat(make_rat(-1)), ExtRat(make_rat(1))), 0);
  const GradedBarcode g = single(Interval::open(ExtRat(make_rat(-1)), ExtRat(make_rat(1))), -1);
  GradedMorphism u(f, g);
  REQUIRE(u.source_bars().size() == 1);
  REQUIRE(u.target_bars().size() == 1);
  // Degree drops by one across the block, so it is an extension component.
  CHECK(u.block_dim(0, 0) == 1);
  CHECK(u.entry(0, 0) == 0);
  u.set_entry(0, 0, 1);
  CHECK(u.entry(0, 0) == 1);
  CHECK_FALSE(u.is_zero());
  u.set_entry(0, 0, 2);
  CHECK(u.is_zero());

  GradedMorphism w(g, f);  // degree rises; every block vanishes
  CHECK(w.block_dim(0, 0) == 0);
  CHECK_THROWS_AS(w.set_entry(0, 0, 1), std::invalid_argument);
  CHECK_NOTHROW(w.set_entry(0, 0, 0));

  GradedMorphism h(f, f);
  CHECK(h.block_dim(0, 0) == 1);
  CHECK(identity_morphism(f).entry(0, 0) == 1);
}

TEST_CASE("composition laws") {
  std::mt19937_64 rng(904);
  for (int it = 0; it < 40; ++it) {
    const GradedBarcode f = random_graded_barcode(rng, 3);
    const GradedBarcode g = random_graded_barcode(rng, 3);
    const GradedMorphism u = random_morphism(rng, f, g);
    CHECK(compose(identity_morphism(f), u) == u);
    CHECK(compose(u, identity_morphism(g)) == u);
  }
  for (int it = 0; it < 30; ++it) {
    const GradedBarcode f = random_graded_barcode(rng, 2);
    const GradedBarcode g = random_graded_barcode(rng, 2);
    const GradedBarcode h = random_graded_barcode(rng, 2);
    const GradedBarcode l = random_graded_barcode(rng, 2);
    const GradedMorphism u = random_morphism(rng, f, g);
    const GradedMorphism v = random_morphism(rng, g, h);
    const GradedMorphism w = random_morphism(rng, h, l);
    CAPTURE(it);
    CHECK(compose(compose(u, v), w) == compose(u, compose(v, w)));
  }
}

TEST_CASE("kernel action on morphisms is functorial") {
  std::mt19937_64 rng(905);
  std::uniform_int_distribution<int> av(0, 4);
  for (int it = 0; it < 30; ++it) {
    const GradedBarcode f = random_graded_barcode(rng, 2);
    const GradedBarcode g = random_graded_barcode(rng, 2);
    const GradedBarcode h = random_graded_barcode(rng, 2);
    const GradedMorphism u = random_morphism(rng, f, g);
    const GradedMorphism v = random_morphism(rng, g, h);
    const Kernel k{make_rat(av(rng), 2)};
    CAPTURE(it);
    CHECK(convolve(Kernel(make_rat(0)), u) == u);
    CHECK(convolve(k, identity_morphism(f)) == identity_morphism(convolve(k, f)));
    CHECK(convolve(k, compose(u, v)) == compose(convolve(k, u), convolve(k, v)));
  }
  CHECK_THROWS_AS(convolve(Kernel(make_rat(-1)), identity_morphism(GradedBarcode{})),
                  std::invalid_argument);
}

TEST_CASE("comparison morphisms") {
  std::mt19937_64 rng(906);
  CHECK_THROWS_AS(chi(make_rat(2), make_rat(1), GradedBarcode{}), std::invalid_argument);
  CHECK_THROWS_AS(chi(make_rat(-1), make_rat(1), GradedBarcode{}), std::invalid_argument);

  // A bar of length exactly 2a dies along chi(0, 2a, .).
  CHECK(chi(make_rat(0), make_rat(2), single(gbar(0, 2), 0)).is_zero());
  CHECK_FALSE(chi(make_rat(0), make_rat(1), single(gbar(0, 2), 0)).is_zero());

  std::uniform_int_distribution<int> av(0, 4);
  for (int it = 0; it < 40; ++it) {
    const GradedBarcode f = random_graded_barcode(rng, 3);
    int x = av(rng), y = av(rng), z = av(rng);
    if (x < y) std::swap(x, y);
    if (y < z) std::swap(y, z);
    if (x < y) std::swap(x, y);
    const Rat a = make_rat(x, 2), b = make_rat(y, 2), c = make_rat(z, 2);
    CAPTURE(it);
    CHECK(chi(a, a, f) == identity_morphism(convolve(Kernel(a), f)));
    CHECK(compose(chi(b, a, f), chi(c, b, f)) == chi(c, a, f));
  }

  // Naturality square against arbitrary morphisms.
  for (int it = 0; it < 25; ++it) {
    const GradedBarcode f = random_graded_barcode(rng, 2);
    const GradedBarcode g = random_graded_barcode(rng, 2);
    const GradedMorphism u = random_morphism(rng, f, g);
    int x = av(rng), y = av(rng);
    if (x < y) std::swap(x, y);
    const Rat a = make_rat(x, 2), b = make_rat(y, 2);
    CAPTURE(it);
    CHECK(compose(convolve(Kernel(a), u), chi(b, a, g)) ==
          compose(chi(b, a, f), convolve(Kernel(b), u)));
  }
}

TEST_CASE("interleaving fixtures") {
  CHECK_THROWS_AS(is_a_isomorphic(GradedBarcode{}, GradedBarcode{}, make_rat(-1)),
                  std::invalid_argument);
  CHECK(is_a_isomorphic(GradedBarcode{}, GradedBarcode{}, make_rat(0)).status ==
        IsoDecision::Status::yes);

  const GradedBarcode bar02 = single(gbar(0, 2), 0);
  CHECK(is_a_isomorphic(bar02, GradedBarcode{}, make_rat(1)).status == IsoDecision::Status::yes);
  CHECK(is_a_isomorphic(bar02, GradedBarcode{}, make_rat(9, 10)).status ==
        IsoDecision::Status::no);

  // Sky against point across one degree: isomorphic at shift one, not below.
  const GradedBarcode sky = Kernel(make_rat(-1)).as_barcode();
  const GradedBarcode point = Kernel(make_rat(0)).as_barcode();
  const IsoDecision mixed = is_a_isomorphic(sky, point, make_rat(1));
  REQUIRE(mixed.status == IsoDecision::Status::yes);
  REQUIRE(mixed.witness.has_value());
  CHECK_FALSE(mixed.witness->f.is_zero());
  CHECK_FALSE(mixed.witness->g.is_zero());
  CHECK(is_a_isomorphic(sky, point, make_rat(1, 2)).status == IsoDecision::Status::no);
  CHECK(is_a_isomorphic(sky, point, make_rat(2)).status == IsoDecision::Status::yes);

  // Oversized non-gamma inputs come back indeterminate, not guessed.
  GradedBarcode big1, big2;
  for (int k = 0; k < 5; ++k) {
    big1.add(0, Interval::closed(ExtRat(make_rat(k)), ExtRat(make_rat(k + 3))), 1);
    big2.add(0, Interval::closed(ExtRat(make_rat(k)), ExtRat(make_rat(k + 4))), 1);
  }
  const IsoDecision nd = is_a_isomorphic(big1, big2, make_rat(1));
  CHECK(nd.status == IsoDecision::Status::indeterminate);
  CHECK_FALSE(nd.witness.has_value());
  CHECK(is_a_isomorphic(big1, big2, make_rat(1), 10).status != IsoDecision::Status::indeterminate);
}

TEST_CASE("self interleaving at shift zero") {
  std::mt19937_64 rng(907);
  for (int it = 0; it < 25; ++it) {
    const GradedBarcode f = random_gamma_graded(rng, 4, -1, 2);
    CHECK(is_a_isomorphic(f, f, make_rat(0)).status == IsoDecision::Status::yes);
  }
  for (int it = 0; it < 15; ++it) {
    const GradedBarcode f = random_graded_barcode(rng, 3);
    CAPTURE(it);
    CHECK(is_a_isomorphic(f, f, make_rat(0)).status == IsoDecision::Status::yes);
  }
}

TEST_CASE("interleaving decisions match brute force") {
  std::mt19937_64 rng(908);
  std::uniform_int_distribution<int> av(0, 4);
  int gamma_cases = 0, general_cases = 0, yes_seen = 0;
  while (gamma_cases < 60 || general_cases < 45) {
    const bool want_gamma = gamma_cases < 60;
    const GradedBarcode f =
        want_gamma ? random_gamma_graded(rng, 2) : random_graded_barcode(rng, 2, 0, 1);
    const GradedBarcode g =
        want_gamma ? random_gamma_graded(rng, 2) : random_graded_barcode(rng, 2, 0, 1);
    const Rat a = make_rat(av(rng), 2);
    const auto expected = brute_interleaved(f, g, a);
    if (!expected) continue;
    const IsoDecision got = is_a_isomorphic(f, g, a);
    REQUIRE(got.status != IsoDecision::Status::indeterminate);
    const bool got_yes = got.status == IsoDecision::Status::yes;
    CAPTURE(want_gamma);
    CAPTURE(a.get_str());
    CHECK(got_yes == *expected);
    if (got_yes) {
      ++yes_seen;
      REQUIRE(got.witness.has_value());
      const Kernel k{a};
      CHECK(compose(convolve(k, got.witness->f), got.witness->g) == chi(make_rat(0), a * 2, f));
      CHECK(compose(convolve(k, got.witness->g), got.witness->f) == chi(make_rat(0), a * 2, g));
    }
    (want_gamma ? gamma_cases : general_cases) += 1;
  }
  CHECK(yes_seen > 10);
}

TEST_CASE("interleaving is monotone in the shift") {
  std::mt19937_64 rng(909);
  std::uniform_int_distribution<int> av(0, 3);
  for (int it = 0; it < 40; ++it) {
    const GradedBarcode f = random_gamma_graded(rng, 3);
    const GradedBarcode g = random_gamma_graded(rng, 3);
    const Rat a = make_rat(av(rng), 2);
    if (is_a_isomorphic(f, g, a).status != IsoDecision::Status::yes) continue;
    CHECK(is_a_isomorphic(f, g, a + make_rat(1, 2)).status == IsoDecision::Status::yes);
    CHECK(is_a_isomorphic(f, g, a + make_rat(2)).status == IsoDecision::Status::yes);
  }
}

TEST_CASE("duality intertwines the kernels") {
  std::mt19937_64 rng(910);
  const std::vector<Rat> shifts = {make_rat(1, 2), make_rat(1), make_rat(2)};
  for (int it = 0; it < 120; ++it) {
    const GradedBarcode f = random_graded_barcode(rng, 3);
    const Rat& a = shifts[static_cast<std::size_t>(it) % shifts.size()];
    CAPTURE(it);
    CHECK(dualize<F2>(convolve(Kernel(a), f), DualVariant::dual) ==
          convolve(Kernel(-a), dualize<F2>(f, DualVariant::dual)));
  }
}

TEST_CASE("distance fixtures") {
  auto seg = [](long lo, long up) {
    return Interval::closed(ExtRat(make_rat(lo)), ExtRat(make_rat(up)));
  };
  const DistanceBounds d1 = distance_bounds(single(seg(0, 2), 0), single(seg(0, 3), 0));
  CHECK(d1.exact);
  CHECK(d1.lower == ExtRat(make_rat(1)));
  CHECK(d1.upper == ExtRat(make_rat(1)));

  const DistanceBounds d2 =
      distance_bounds(single(seg(-1, 1), 0), single(Interval::point(make_rat(0)), 0));
  CHECK(d2.upper <= ExtRat(make_rat(1)));

  const DistanceBounds d3 =
      distance_bounds(Kernel(make_rat(-1)).as_barcode(), Kernel(make_rat(0)).as_barcode());
  CHECK(d3.upper <= ExtRat(make_rat(1)));

  const DistanceBounds d4 = distance_bounds(single(gbar(0, 2), 0), GradedBarcode{});
  CHECK(d4.exact);
  CHECK(d4.lower == ExtRat(make_rat(1)));
  CHECK(d4.upper == ExtRat(make_rat(1)));

  const DistanceBounds d5 = distance_bounds(GradedBarcode{}, GradedBarcode{});
  CHECK(d5.exact);
  CHECK(d5.lower == ExtRat(make_rat(0)));
  CHECK(d5.upper == ExtRat(make_rat(0)));

  // Closed bars never die, so against zero the distance is infinite.
  const DistanceBounds d6 = distance_bounds(single(seg(0, 1), 0), GradedBarcode{});
  CHECK(d6.exact);
  CHECK(d6.lower == ExtRat::pos_inf());
  CHECK(d6.upper == ExtRat::pos_inf());
}

TEST_CASE("distance equals the matching bottleneck") {
  std::mt19937_64 rng(911);
  for (int it = 0; it < 60; ++it) {
    const GradedBarcode f = random_gamma_graded(rng, 3, 0, 1);
    const GradedBarcode g = random_gamma_graded(rng, 3, 0, 1);
    const ExtRat expected = bottleneck_oracle(f, g);
    const DistanceBounds db = distance_bounds(f, g);
    CAPTURE(it);
    REQUIRE(db.exact);
    CHECK(db.lower == expected);
    CHECK(db.upper == expected);
  }
}

TEST_CASE("distance is a metric upper bound family") {
  std::mt19937_64 rng(912);
  for (int it = 0; it < 100; ++it) {
    const GradedBarcode f = random_gamma_graded(rng, 3);
    const GradedBarcode g = random_gamma_graded(rng, 3);
    const GradedBarcode h = random_gamma_graded(rng, 3);
    const DistanceBounds fg = distance_bounds(f, g);
    const DistanceBounds gh = distance_bounds(g, h);
    const DistanceBounds fh = distance_bounds(f, h);
    const DistanceBounds gf = distance_bounds(g, f);
    CAPTURE(it);
    CHECK(fg.lower == gf.lower);
    CHECK(fg.upper == gf.upper);
    CHECK(distance_bounds(f, f).upper == ExtRat(make_rat(0)));
    if (fg.upper.is_finite() && gh.upper.is_finite()) {
      CHECK(fh.upper <= ExtRat(fg.upper.value() + gh.upper.value()));
    }
  }
}

TEST_CASE("distance is stable under shared convolution and gammafication") {
  std::mt19937_64 rng(913);
  for (int it = 0; it < 40; ++it) {
    const GradedBarcode f = random_gamma_graded(rng, 2);
    const GradedBarcode g = random_gamma_graded(rng, 2);
    Interval hb = random_gamma_bar(rng);
    while (!hb.is_bounded()) hb = random_gamma_bar(rng);
    GradedBarcode h;
    h.add(0, hb, 1);
    const DistanceBounds base = distance_bounds(f, g);
    const DistanceBounds moved = distance_bounds(convolve(f, h), convolve(g, h));
    CAPTURE(it);
    CHECK(moved.upper <= base.upper);
  }
  for (int it = 0; it < 40; ++it) {
    const GradedBarcode f = random_graded_barcode(rng, 2, 0, 1);
    const GradedBarcode g = random_graded_barcode(rng, 2, 0, 1);
    const DistanceBounds base = distance_bounds(f, g);
    if (!base.exact) continue;
    const DistanceBounds gamma = distance_bounds(gammafy<F2>(f), gammafy<F2>(g));
    CAPTURE(it);
    CHECK(gamma.upper <= base.upper);
  }
}

TEST_CASE("finite distance forces equal section counts") {
  std::mt19937_64 rng(914);
  int finite_seen = 0;
  for (int it = 0; it < 80; ++it) {
    const GradedBarcode f = random_gamma_graded(rng, 3);
    const GradedBarcode g = random_gamma_graded(rng, 3);
    const DistanceBounds db = distance_bounds(f, g);
    if (!db.upper.is_finite()) continue;
    ++finite_seen;
    CHECK(global_sections(f, SectionsVariant::standard) ==
          global_sections(g, SectionsVariant::standard));
  }
  CHECK(finite_seen > 5);
}
