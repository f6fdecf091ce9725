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

#include "gp/convolution.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "gp/field.hpp"
#include "gp/matrix.hpp"
#include "gp/sheaf_ops.hpp"

namespace gp {

GradedBarcode Kernel::as_barcode() const {
  if (a >= 0) return GradedBarcode::single(Interval::closed(ExtRat(-a), ExtRat(a)), 0);
  return GradedBarcode::single(Interval::open(ExtRat(a), ExtRat(-a)), -1);
}

namespace detail {

namespace {

std::optional<Interval> meet(const std::optional<Interval>& x,
                             const std::optional<Interval>& y) {
  if (!x || !y) return std::nullopt;
  return x->intersect(*y);
}

}  // namespace

PairParts convolve_pair(const Interval& i, const Interval& j) {
  const ExtRat& a = i.lower();
  const ExtRat& b = i.upper();
  const ExtRat& c = j.lower();
  const ExtRat& d = j.upper();
  const bool al = i.lower_closed(), bu = i.upper_closed();
  const bool cl = j.lower_closed(), du = j.upper_closed();

  // The fiber over t is I cap (t - J); it is nonempty exactly on the
  // sumset, whose ends are attained only when both contributing ends are.
  const std::optional<Interval> support(Interval(a + c, b + d, al && cl, bu && du));

  // The fiber's lower end is max(a, t - d), attained iff the binding side
  // is closed (ties need both). Branching on the two flags first keeps the
  // endpoint sums free of opposite infinities.
  std::optional<Interval> lo_closed, lo_open, up_closed, up_open;
  if (al && du) {
    lo_closed = Interval::line();
  } else if (al) {
    lo_closed = Interval(ExtRat::neg_inf(), a + d, false, false);
    if (!(a + d).is_pos_inf()) lo_open = Interval(a + d, ExtRat::pos_inf(), true, false);
  } else if (du) {
    lo_closed = Interval(a + d, ExtRat::pos_inf(), false, false);
    if (!(a + d).is_neg_inf()) lo_open = Interval(ExtRat::neg_inf(), a + d, false, true);
  } else {
    lo_open = Interval::line();
  }

  // Upper end min(b, t - c), same discussion mirrored.
  if (bu && cl) {
    up_closed = Interval::line();
  } else if (bu) {
    up_closed = Interval(b + c, ExtRat::pos_inf(), false, false);
    if (!(b + c).is_neg_inf()) up_open = Interval(ExtRat::neg_inf(), b + c, false, true);
  } else if (cl) {
    up_closed = Interval(ExtRat::neg_inf(), b + c, false, false);
    if (!(b + c).is_pos_inf()) up_open = Interval(b + c, ExtRat::pos_inf(), true, false);
  } else {
    up_open = Interval::line();
  }

  PairParts out;
  out.compact_part = meet(meet(support, lo_closed), up_closed);
  out.open_part = meet(meet(support, lo_open), up_open);
  return out;
}

}  // namespace detail

namespace {

void unbounded_sides(const GradedBarcode& f, bool& below, bool& above) {
  below = above = false;
  for (const auto& [deg, b] : f.components()) {
    for (const auto& bar : b.bars()) {
      if (!bar.interval.lower().is_finite()) below = true;
      if (!bar.interval.upper().is_finite()) above = true;
    }
  }
}

}  // namespace

GradedBarcode convolve(const GradedBarcode& f, const GradedBarcode& g) {
  bool f_below, f_above, g_below, g_above;
  unbounded_sides(f, f_below, f_above);
  unbounded_sides(g, g_below, g_above);
  if ((f_below && g_above) || (f_above && g_below))
    throw std::invalid_argument("non-proper convolution");
  GradedBarcode out;
  for (const auto& [p, fc] : f.components()) {
    for (const auto& fbar : fc.bars()) {
      for (const auto& [q, gc] : g.components()) {
        for (const auto& gbar : gc.bars()) {
          auto parts = detail::convolve_pair(fbar.interval, gbar.interval);
          const std::uint64_t m = fbar.mult * gbar.mult;
          if (parts.compact_part) out.add(p + q, *parts.compact_part, m);
          if (parts.open_part) out.add(p + q + 1, *parts.open_part, m);
        }
      }
    }
  }
  return out;
}

GradedBarcode convolve(const Kernel& k, const GradedBarcode& f) {
  return convolve(k.as_barcode(), f);
}

// ---------------------------------------------------------------------------
// Chain models for single-pair Hom/Ext and their Yoneda products.

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

std::vector<Rat> endpoint_grid(std::initializer_list<const Interval*> parts) {
  std::set<Rat> s;
  for (const Interval* i : parts) {
    if (i->lower().is_finite()) s.insert(i->lower().value());
    if (i->upper().is_finite()) s.insert(i->upper().value());
  }
  return {s.begin(), s.end()};
}

// Whether the interval contains cell c of the grid; cells alternate
// (-inf,x0), {x0}, (x0,x1), ..., {x_{m-1}}, (x_{m-1},+inf). Membership is
// constant on open cells because all endpoints lie on the grid.
bool cell_inside(const Interval& i, const std::vector<Rat>& grid, std::size_t c) {
  const std::size_t m = grid.size();
  if (c % 2 == 1) return i.contains(ExtRat(grid[c / 2]));
  if (m == 0) return i.contains(ExtRat(Rat(0)));
  const std::size_t j = c / 2;
  Rat rep;
  if (j == 0)
    rep = grid[0] - 1;
  else if (j == m)
    rep = grid[m - 1] + 1;
  else
    rep = (grid[j - 1] + grid[j]) / 2;
  return i.contains(ExtRat(rep));
}

int euler_pairing(const Interval& i, const Interval& j) {
  auto grid = endpoint_grid({&i, &j});
  const std::size_t ncells = 2 * grid.size() + 1;
  int chi = 0;
  std::vector<int> fi(ncells), gj(ncells);
  for (std::size_t c = 0; c < ncells; ++c) {
    fi[c] = cell_inside(i, grid, c) ? 1 : 0;
    gj[c] = cell_inside(j, grid, c) ? 1 : 0;
    chi += fi[c] * gj[c];
  }
  for (std::size_t p = 1; p < ncells; p += 2) {
    chi -= fi[p] * gj[p - 1];
    chi -= fi[p] * gj[p + 1];
  }
  return chi;
}

// Arrows are numbered two per grid point: 2k is P_{k+1} -> U_k and 2k+1 is
// P_{k+1} -> U_{k+1} in cell coordinates.
std::size_t arrow_point(std::size_t ar) { return 2 * (ar / 2) + 1; }
std::size_t arrow_open(std::size_t ar) { return ar % 2 == 0 ? 2 * (ar / 2) : 2 * (ar / 2) + 2; }

// Two-term chain model of RHom(k_i, k_j) on a fixed grid: one degree-0 slot
// per common cell, one degree-1 slot per generization arrow leaving i and
// landing in j; d(phi)|(P,U) = phi_P - phi_U since all arrows are units.
struct HomModel {
  std::vector<int> fi, gj;
  std::vector<std::size_t> cell_slot, arrow_slot;
  std::size_t c0 = 0, c1 = 0;
  Matrix<F2> d;
};

HomModel build_hom_model(const Interval& i, const Interval& j, const std::vector<Rat>& grid) {
  HomModel m;
  const std::size_t ncells = 2 * grid.size() + 1;
  m.fi.resize(ncells);
  m.gj.resize(ncells);
  for (std::size_t c = 0; c < ncells; ++c) {
    m.fi[c] = cell_inside(i, grid, c) ? 1 : 0;
    m.gj[c] = cell_inside(j, grid, c) ? 1 : 0;
  }
  m.cell_slot.assign(ncells, npos);
  for (std::size_t c = 0; c < ncells; ++c)
    if (m.fi[c] && m.gj[c]) m.cell_slot[c] = m.c0++;
  m.arrow_slot.assign(2 * grid.size(), npos);
  for (std::size_t ar = 0; ar < m.arrow_slot.size(); ++ar)
    if (m.fi[arrow_point(ar)] && m.gj[arrow_open(ar)]) m.arrow_slot[ar] = m.c1++;
  m.d = Matrix<F2>(m.c1, m.c0);
  for (std::size_t ar = 0; ar < m.arrow_slot.size(); ++ar) {
    if (m.arrow_slot[ar] == npos) continue;
    const std::size_t row = m.arrow_slot[ar];
    const std::size_t p = arrow_point(ar), u = arrow_open(ar);
    if (m.cell_slot[p] != npos) m.d(row, m.cell_slot[p]) += F2(1);
    if (m.cell_slot[u] != npos) m.d(row, m.cell_slot[u]) -= F2(1);
  }
  return m;
}

// A degree-1 cocycle representing the nonzero extension class. Requires
// ext1 = 1 for the pair.
std::vector<int> ext_generator(const HomModel& m) {
  Matrix<F2> reps = detail::coker_reps(m.d);
  std::vector<int> v(m.c1, 0);
  for (std::size_t r = 0; r < m.c1; ++r)
    if (reps(r, 0) != F2(0)) v[r] = 1;
  return v;
}

bool is_coboundary(const HomModel& m, const std::vector<int>& v) {
  Matrix<F2> rhs(m.c1, 1);
  for (std::size_t r = 0; r < m.c1; ++r) rhs(r, 0) = F2(v[r]);
  return solve(m.d, rhs).has_value();
}

// Class of ext(j -> l) after hom(i -> j) against the canonical generator
// of Ext^1(i, l). The canonical hom cocycle is the indicator of i cap j.
int yoneda_ext_after_hom(const Interval& i, const Interval& j, const Interval& l) {
  if (hom_dim(i, j) == 0 || ext1_dim(j, l) == 0 || ext1_dim(i, l) == 0) return 0;
  auto grid = endpoint_grid({&i, &j, &l});
  HomModel mjl = build_hom_model(j, l, grid);
  HomModel mil = build_hom_model(i, l, grid);
  std::vector<int> psi = ext_generator(mjl);
  std::vector<int> comp(mil.c1, 0);
  for (std::size_t ar = 0; ar < mil.arrow_slot.size(); ++ar) {
    if (mil.arrow_slot[ar] == npos || mjl.arrow_slot[ar] == npos) continue;
    const std::size_t p = arrow_point(ar);
    if (mil.fi[p] && mjl.fi[p]) comp[mil.arrow_slot[ar]] = psi[mjl.arrow_slot[ar]];
  }
  return is_coboundary(mil, comp) ? 0 : 1;
}

// Class of hom(j -> l) after ext(i -> j).
int yoneda_hom_after_ext(const Interval& i, const Interval& j, const Interval& l) {
  if (ext1_dim(i, j) == 0 || hom_dim(j, l) == 0 || ext1_dim(i, l) == 0) return 0;
  auto grid = endpoint_grid({&i, &j, &l});
  HomModel mij = build_hom_model(i, j, grid);
  HomModel mil = build_hom_model(i, l, grid);
  std::vector<int> psi = ext_generator(mij);
  std::vector<int> comp(mil.c1, 0);
  for (std::size_t ar = 0; ar < mil.arrow_slot.size(); ++ar) {
    if (mil.arrow_slot[ar] == npos || mij.arrow_slot[ar] == npos) continue;
    const std::size_t u = arrow_open(ar);
    if (mij.gj[u] && mil.gj[u]) comp[mil.arrow_slot[ar]] = psi[mij.arrow_slot[ar]];
  }
  return is_coboundary(mil, comp) ? 0 : 1;
}

// Scalar of canonical(m -> t) after canonical(s -> m) against the canonical
// generator of the composite block. Hom pairs compose by the overlap rule;
// anything landing in Ext^2 dies.
int compose_gate(const GradedMorphism::BarRef& s, const GradedMorphism::BarRef& m,
                 const GradedMorphism::BarRef& t) {
  const int d1 = s.degree - m.degree, d2 = m.degree - t.degree;
  if (d1 == 0 && d2 == 0)
    return hom_dim(s.interval, m.interval) && hom_dim(m.interval, t.interval) &&
                   hom_dim(s.interval, t.interval)
               ? 1
               : 0;
  if (d1 == 0 && d2 == 1) return yoneda_ext_after_hom(s.interval, m.interval, t.interval);
  if (d1 == 1 && d2 == 0) return yoneda_hom_after_ext(s.interval, m.interval, t.interval);
  return 0;
}

std::vector<GradedMorphism::BarRef> expand_bars(const GradedBarcode& g) {
  std::vector<GradedMorphism::BarRef> out;
  for (const auto& [deg, b] : g.components())
    for (const auto& bar : b.bars())
      for (std::uint64_t k = 0; k < bar.mult; ++k) out.push_back({bar.interval, deg});
  return out;
}

int block_dim_refs(const GradedMorphism::BarRef& s, const GradedMorphism::BarRef& t) {
  if (s.degree == t.degree) return hom_dim(s.interval, t.interval);
  if (s.degree - t.degree == 1) return ext1_dim(s.interval, t.interval);
  return 0;
}

}  // namespace

int ext1_dim(const Interval& i, const Interval& j) {
  return hom_dim(i, j) - euler_pairing(i, j);
}

// ---------------------------------------------------------------------------
// GradedMorphism.

GradedMorphism::GradedMorphism(const GradedBarcode& source, const GradedBarcode& target)
    : source_(source),
      target_(target),
      src_(expand_bars(source)),
      tgt_(expand_bars(target)),
      e_(src_.size() * tgt_.size(), 0) {}

int GradedMorphism::block_dim(std::size_t s, std::size_t t) const {
  return block_dim_refs(src_[s], tgt_[t]);
}

int GradedMorphism::entry(std::size_t s, std::size_t t) const {
  return e_[s * tgt_.size() + t];
}

void GradedMorphism::set_entry(std::size_t s, std::size_t t, int v) {
  const int r = ((v % 2) + 2) % 2;
  if (r && block_dim(s, t) == 0)
    throw std::invalid_argument("entry outside the nonzero blocks");
  e_[s * tgt_.size() + t] = static_cast<unsigned char>(r);
}

bool GradedMorphism::is_zero() const {
  for (unsigned char x : e_)
    if (x) return false;
  return true;
}

bool GradedMorphism::operator==(const GradedMorphism& o) const {
  return source_ == o.source_ && target_ == o.target_ && e_ == o.e_;
}

GradedMorphism identity_morphism(const GradedBarcode& f) {
  GradedMorphism u(f, f);
  for (std::size_t s = 0; s < u.source_bars().size(); ++s) u.set_entry(s, s, 1);
  return u;
}

GradedMorphism compose(const GradedMorphism& u, const GradedMorphism& v) {
  if (!(u.target() == v.source()))
    throw std::invalid_argument("compose requires matching middle object");
  GradedMorphism out(u.source(), v.target());
  const auto& sb = u.source_bars();
  const auto& mb = u.target_bars();
  const auto& tb = v.target_bars();
  for (std::size_t s = 0; s < sb.size(); ++s) {
    for (std::size_t t = 0; t < tb.size(); ++t) {
      if (out.block_dim(s, t) == 0) continue;
      int acc = 0;
      for (std::size_t m = 0; m < mb.size(); ++m) {
        if (!u.entry(s, m) || !v.entry(m, t)) continue;
        acc ^= compose_gate(sb[s], mb[m], tb[t]);
      }
      out.set_entry(s, t, acc);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Kernel transport of objects and morphisms.

namespace {

// K_a * bar for a >= 0: gamma bars translate left, closed ends thicken,
// open ends shrink, and a bounded open bar of length <= 2a collapses to a
// closed bar one degree up. Exactly one part survives.
std::optional<GradedMorphism::BarRef> transport_bar(const Interval& segment,
                                                    const GradedMorphism::BarRef& b) {
  auto parts = detail::convolve_pair(segment, b.interval);
  if (parts.compact_part && parts.open_part)
    throw std::logic_error("segment kernel split a bar");
  if (parts.compact_part) return GradedMorphism::BarRef{*parts.compact_part, b.degree};
  if (parts.open_part) return GradedMorphism::BarRef{*parts.open_part, b.degree + 1};
  return std::nullopt;
}

// Instance-aligned transport: where each expanded bar of f lands inside the
// expanded bar list of K_a * f.
struct Transport {
  GradedBarcode object;
  std::vector<std::optional<std::size_t>> to;
};

Transport transport_object(const Rat& a, const GradedBarcode& f) {
  if (a < 0) throw std::invalid_argument("morphism transport needs a >= 0");
  const Interval segment = Interval::closed(ExtRat(-a), ExtRat(a));
  const std::vector<GradedMorphism::BarRef> bars = expand_bars(f);
  std::vector<std::optional<GradedMorphism::BarRef>> moved(bars.size());
  GradedBarcode obj;
  for (std::size_t k = 0; k < bars.size(); ++k) {
    moved[k] = transport_bar(segment, bars[k]);
    if (moved[k]) obj.add(moved[k]->degree, moved[k]->interval, 1);
  }
  Transport out{obj, std::vector<std::optional<std::size_t>>(bars.size())};
  const std::vector<GradedMorphism::BarRef> ebars = expand_bars(obj);
  std::vector<char> used(ebars.size(), 0);
  for (std::size_t k = 0; k < bars.size(); ++k) {
    if (!moved[k]) continue;
    for (std::size_t pos = 0; pos < ebars.size(); ++pos) {
      if (used[pos] || ebars[pos].degree != moved[k]->degree ||
          !(ebars[pos].interval == moved[k]->interval))
        continue;
      used[pos] = 1;
      out.to[k] = pos;
      break;
    }
  }
  return out;
}

}  // namespace

GradedMorphism convolve(const Kernel& k, const GradedMorphism& u) {
  if (k.a < 0) throw std::invalid_argument("morphism convolution needs a kernel with a >= 0");
  Transport ts = transport_object(k.a, u.source());
  Transport tt = transport_object(k.a, u.target());
  GradedMorphism out(ts.object, tt.object);
  for (std::size_t s = 0; s < u.source_bars().size(); ++s) {
    if (!ts.to[s]) continue;
    for (std::size_t t = 0; t < u.target_bars().size(); ++t) {
      if (!tt.to[t] || !u.entry(s, t)) continue;
      if (out.block_dim(*ts.to[s], *tt.to[t]))
        out.set_entry(*ts.to[s], *tt.to[t], out.entry(*ts.to[s], *tt.to[t]) ^ 1);
    }
  }
  return out;
}

GradedMorphism chi(const Rat& b, const Rat& a, const GradedBarcode& f) {
  if (b < 0 || a < b) throw std::invalid_argument("chi requires a >= b >= 0");
  Transport ta = transport_object(a, f);
  Transport tb = transport_object(b, f);
  GradedMorphism out(ta.object, tb.object);
  for (std::size_t k = 0; k < ta.to.size(); ++k) {
    if (!ta.to[k] || !tb.to[k]) continue;
    if (out.block_dim(*ta.to[k], *tb.to[k])) out.set_entry(*ta.to[k], *tb.to[k], 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Interleaving decision.

namespace {

bool all_gamma(const GradedBarcode& f) {
  for (const auto& [deg, b] : f.components())
    for (const auto& bar : b.bars())
      if (!bar.interval.is_gamma_bar()) return false;
  return true;
}

bool bars_close(const Interval& x, const Interval& y, const Rat& a) {
  const ExtRat ea{a};
  return x.lower() <= y.lower() + ea && y.lower() <= x.lower() + ea &&
         x.upper() <= y.upper() + ea && y.upper() <= x.upper() + ea;
}

// A bar survives the comparison map chi(0, 2a, .) iff it is longer than 2a.
bool bar_long(const Interval& x, const Rat& two_a) {
  return x.lower() + ExtRat(two_a) < x.upper();
}

struct MatchProblem {
  std::vector<std::vector<std::size_t>> adj;
  std::size_t n_right = 0;
};

bool try_augment(const MatchProblem& mp, std::size_t l, std::vector<char>& seen,
                 std::vector<std::ptrdiff_t>& match_r) {
  for (std::size_t r : mp.adj[l]) {
    if (seen[r]) continue;
    seen[r] = 1;
    if (match_r[r] < 0 ||
        try_augment(mp, static_cast<std::size_t>(match_r[r]), seen, match_r)) {
      match_r[r] = static_cast<std::ptrdiff_t>(l);
      return true;
    }
  }
  return false;
}

// Matching saturating the given left vertices, as right -> left, or nullopt.
std::optional<std::vector<std::ptrdiff_t>> saturate(const MatchProblem& mp,
                                                    const std::vector<std::size_t>& need) {
  std::vector<std::ptrdiff_t> match_r(mp.n_right, -1);
  for (std::size_t l : need) {
    std::vector<char> seen(mp.n_right, 0);
    if (!try_augment(mp, l, seen, match_r)) return std::nullopt;
  }
  return match_r;
}

// Merge a matching covering the required left vertices with one covering
// the required right vertices into a single matching covering both. Walk
// each alternating component; on a path, keep the matching whose forced
// endpoint is critical (parity makes a critical forced endpoint on both
// sides impossible), on a cycle either matching covers everything.
std::vector<std::ptrdiff_t> merge_matchings(std::size_t n_left, std::size_t n_right,
                                            const std::vector<std::ptrdiff_t>& a_left,
                                            const std::vector<std::ptrdiff_t>& b_left,
                                            const std::vector<char>& crit_l,
                                            const std::vector<char>& crit_r) {
  std::vector<std::ptrdiff_t> a_right(n_right, -1), b_right(n_right, -1);
  for (std::size_t l = 0; l < n_left; ++l) {
    if (a_left[l] >= 0) a_right[static_cast<std::size_t>(a_left[l])] = static_cast<std::ptrdiff_t>(l);
    if (b_left[l] >= 0) b_right[static_cast<std::size_t>(b_left[l])] = static_cast<std::ptrdiff_t>(l);
  }
  const std::size_t nv = n_left + n_right;
  auto edge_to = [&](std::size_t v, int lab) -> std::ptrdiff_t {
    if (v < n_left) {
      const std::ptrdiff_t r = lab == 0 ? a_left[v] : b_left[v];
      return r < 0 ? -1 : static_cast<std::ptrdiff_t>(n_left) + r;
    }
    return lab == 0 ? a_right[v - n_left] : b_right[v - n_left];
  };
  auto critical = [&](std::size_t v) {
    return v < n_left ? crit_l[v] != 0 : crit_r[v - n_left] != 0;
  };
  std::vector<char> vis(nv, 0);
  std::vector<std::array<char, 2>> edge_done(n_left, {0, 0});
  std::vector<std::ptrdiff_t> out(n_left, -1);

  // Collect the alternating edge run from start; returns (edges, far end).
  auto walk = [&](std::size_t start, int lab0) {
    std::vector<std::pair<std::size_t, int>> edges;
    std::size_t v = start;
    int lab = lab0;
    while (true) {
      const std::ptrdiff_t w = edge_to(v, lab);
      if (w < 0) break;
      const std::size_t left_end = v < n_left ? v : static_cast<std::size_t>(w);
      if (edge_done[left_end][lab]) break;
      edge_done[left_end][lab] = 1;
      edges.push_back({left_end, lab});
      vis[v] = 1;
      vis[static_cast<std::size_t>(w)] = 1;
      v = static_cast<std::size_t>(w);
      lab ^= 1;
    }
    return std::pair{edges, v};
  };

  for (std::size_t v = 0; v < nv; ++v) {
    if (vis[v]) continue;
    const bool has_a = edge_to(v, 0) >= 0, has_b = edge_to(v, 1) >= 0;
    if (static_cast<int>(has_a) + static_cast<int>(has_b) != 1) continue;
    const int lab0 = has_a ? 0 : 1;
    auto [edges, far] = walk(v, lab0);
    int choose = 0;
    if (critical(v))
      choose = lab0;
    else if (critical(far))
      choose = edges.back().second;
    for (const auto& [lv, lab] : edges)
      if (lab == choose) out[lv] = lab == 0 ? a_left[lv] : b_left[lv];
  }
  // Remaining components are cycles; the first matching covers them.
  for (std::size_t l = 0; l < n_left; ++l) {
    if (vis[l] || a_left[l] < 0) continue;
    auto [edges, far] = walk(l, 0);
    for (const auto& [lv, lab] : edges)
      if (lab == 0) out[lv] = a_left[lv];
  }
  return out;
}

struct GammaMatch {
  bool ok = false;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (f instance, g instance)
};

GammaMatch gamma_match(const GradedBarcode& f, const GradedBarcode& g, const Rat& a) {
  const Rat two_a = a * 2;
  const auto fbars = expand_bars(f);
  const auto gbars = expand_bars(g);
  GammaMatch out;
  out.ok = true;
  std::set<int> degs;
  for (const auto& b : fbars) degs.insert(b.degree);
  for (const auto& b : gbars) degs.insert(b.degree);
  for (int deg : degs) {
    std::vector<std::size_t> lf, rg;
    for (std::size_t i = 0; i < fbars.size(); ++i)
      if (fbars[i].degree == deg) lf.push_back(i);
    for (std::size_t j = 0; j < gbars.size(); ++j)
      if (gbars[j].degree == deg) rg.push_back(j);
    MatchProblem mp, mpt;
    mp.n_right = rg.size();
    mp.adj.resize(lf.size());
    mpt.n_right = lf.size();
    mpt.adj.resize(rg.size());
    for (std::size_t x = 0; x < lf.size(); ++x) {
      for (std::size_t y = 0; y < rg.size(); ++y) {
        if (!bars_close(fbars[lf[x]].interval, gbars[rg[y]].interval, a)) continue;
        mp.adj[x].push_back(y);
        mpt.adj[y].push_back(x);
      }
    }
    std::vector<std::size_t> need_l, need_r;
    std::vector<char> crit_l(lf.size(), 0), crit_r(rg.size(), 0);
    for (std::size_t x = 0; x < lf.size(); ++x) {
      if (!bar_long(fbars[lf[x]].interval, two_a)) continue;
      need_l.push_back(x);
      crit_l[x] = 1;
    }
    for (std::size_t y = 0; y < rg.size(); ++y) {
      if (!bar_long(gbars[rg[y]].interval, two_a)) continue;
      need_r.push_back(y);
      crit_r[y] = 1;
    }
    auto ma = saturate(mp, need_l);
    auto mb = saturate(mpt, need_r);
    if (!ma || !mb) {
      out.ok = false;
      out.pairs.clear();
      return out;
    }
    std::vector<std::ptrdiff_t> a_left(lf.size(), -1), b_left(lf.size(), -1);
    for (std::size_t y = 0; y < rg.size(); ++y)
      if ((*ma)[y] >= 0) a_left[static_cast<std::size_t>((*ma)[y])] = static_cast<std::ptrdiff_t>(y);
    for (std::size_t x = 0; x < lf.size(); ++x)
      if ((*mb)[x] >= 0) b_left[x] = (*mb)[x];
    auto merged = merge_matchings(lf.size(), rg.size(), a_left, b_left, crit_l, crit_r);
    for (std::size_t x = 0; x < lf.size(); ++x) {
      if (merged[x] < 0) continue;
      const std::size_t y = static_cast<std::size_t>(merged[x]);
      // Pairs of two short bars carry zero maps; leave both unmatched.
      if (!crit_l[x] && !crit_r[y]) continue;
      out.pairs.push_back({lf[x], rg[y]});
    }
  }
  return out;
}

bool witness_checks(const Rat& a, const GradedBarcode& f, const GradedBarcode& g,
                    const GradedMorphism& uf, const GradedMorphism& ug) {
  const Rat two_a = a * 2;
  const Kernel k{a};
  return compose(convolve(k, uf), ug) == chi(Rat(0), two_a, f) &&
         compose(convolve(k, ug), uf) == chi(Rat(0), two_a, g);
}

IsoDecision gamma_decide(const GradedBarcode& f, const GradedBarcode& g, const Rat& a) {
  GammaMatch m = gamma_match(f, g, a);
  if (!m.ok) return {IsoDecision::Status::no, std::nullopt};
  Transport tf = transport_object(a, f);
  Transport tg = transport_object(a, g);
  GradedMorphism uf(tf.object, g);
  GradedMorphism ug(tg.object, f);
  for (const auto& [fi, gi] : m.pairs) {
    if (tf.to[fi] && uf.block_dim(*tf.to[fi], gi)) uf.set_entry(*tf.to[fi], gi, 1);
    if (tg.to[gi] && ug.block_dim(*tg.to[gi], fi)) ug.set_entry(*tg.to[gi], fi, 1);
  }
  if (!witness_checks(a, f, g, uf, ug))
    throw std::logic_error("matching witness failed verification");
  return {IsoDecision::Status::yes, InterleavingWitness{a, uf, ug}};
}

// Solve the packed F2 system; bit nvars of each row is the right hand side.
std::optional<std::vector<int>> solve_f2_bits(std::vector<std::uint64_t> rows,
                                              std::size_t nvars) {
  std::vector<std::ptrdiff_t> pivot_row(nvars, -1);
  std::size_t rr = 0;
  for (std::size_t col = 0; col < nvars && rr < rows.size(); ++col) {
    std::size_t sel = rr;
    while (sel < rows.size() && !(rows[sel] >> col & 1)) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[rr], rows[sel]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rr && (rows[r] >> col & 1)) rows[r] ^= rows[rr];
    pivot_row[col] = static_cast<std::ptrdiff_t>(rr);
    ++rr;
  }
  for (std::size_t r = rr; r < rows.size(); ++r)
    if (rows[r]) return std::nullopt;
  std::vector<int> x(nvars, 0);
  for (std::size_t col = 0; col < nvars; ++col)
    if (pivot_row[col] >= 0)
      x[col] = static_cast<int>(rows[static_cast<std::size_t>(pivot_row[col])] >> nvars & 1);
  return x;
}

struct EqIndex {
  std::vector<std::ptrdiff_t> at;  // s * nt + t -> equation id or -1
  std::vector<int> rhs;
  std::size_t nt = 0;
};

EqIndex index_blocks(const GradedMorphism& scaffold, std::size_t base) {
  EqIndex ix;
  ix.nt = scaffold.target_bars().size();
  ix.at.assign(scaffold.source_bars().size() * ix.nt, -1);
  std::size_t id = base;
  for (std::size_t s = 0; s < scaffold.source_bars().size(); ++s) {
    for (std::size_t t = 0; t < ix.nt; ++t) {
      if (scaffold.block_dim(s, t) == 0) continue;
      ix.at[s * ix.nt + t] = static_cast<std::ptrdiff_t>(id++);
      ix.rhs.push_back(scaffold.entry(s, t));
    }
  }
  return ix;
}

IsoDecision decide_exact(const GradedBarcode& f, const GradedBarcode& g, const Rat& a) {
  const Rat two_a = a * 2;
  Transport taf = transport_object(a, f);
  Transport tag = transport_object(a, g);
  GradedMorphism u0(taf.object, g), v0(tag.object, f);
  auto valid_blocks = [](const GradedMorphism& m) {
    std::vector<std::pair<std::size_t, std::size_t>> vb;
    for (std::size_t s = 0; s < m.source_bars().size(); ++s)
      for (std::size_t t = 0; t < m.target_bars().size(); ++t)
        if (m.block_dim(s, t)) vb.push_back({s, t});
    return vb;
  };
  const auto vb_u = valid_blocks(u0);
  const auto vb_v = valid_blocks(v0);
  if (vb_u.size() > vb_v.size()) {
    IsoDecision sw = decide_exact(g, f, a);
    if (sw.status == IsoDecision::Status::yes)
      sw.witness = InterleavingWitness{a, sw.witness->g, sw.witness->f};
    return sw;
  }
  if (vb_u.size() > 20 || vb_v.size() >= 63)
    return {IsoDecision::Status::indeterminate, std::nullopt};

  const GradedMorphism chi_f = chi(Rat(0), two_a, f);
  const GradedMorphism chi_g = chi(Rat(0), two_a, g);
  Transport tsu = transport_object(a, taf.object);
  Transport tsv = transport_object(a, tag.object);
  if (!(tsu.object == chi_f.source()) || !(tsv.object == chi_g.source()))
    throw std::logic_error("kernel convolution is not associative on objects");

  const EqIndex eq1 = index_blocks(chi_f, 0);
  const EqIndex eq2 = index_blocks(chi_g, eq1.rhs.size());
  const std::size_t n_eq = eq1.rhs.size() + eq2.rhs.size();
  const std::size_t n_f = vb_u.size(), n_v = vb_v.size();

  const auto& t2f_bars = chi_f.source_bars();
  const auto& t2g_bars = chi_g.source_bars();
  const auto& taf_bars = u0.source_bars();
  const auto& tag_bars = v0.source_bars();
  const auto& f_bars = v0.target_bars();
  const auto& g_bars = u0.target_bars();

  // mask[eq * n_f + e] holds the g-variables whose product with f-variable
  // e feeds the equation, so each composite constraint stays linear in g
  // once the f side is fixed.
  std::vector<std::uint64_t> mask(n_eq * n_f, 0);
  for (std::size_t e = 0; e < n_f; ++e) {
    const auto [su, tu] = vb_u[e];
    // First composite: v after (K_a * u), against chi(0, 2a, f).
    if (tsu.to[su] && tag.to[tu]) {
      const std::size_t s2 = *tsu.to[su], m2 = *tag.to[tu];
      if (block_dim_refs(t2f_bars[s2], tag_bars[m2])) {
        for (std::size_t h = 0; h < n_v; ++h) {
          const auto [mv, tv] = vb_v[h];
          if (mv != m2) continue;
          if (!compose_gate(t2f_bars[s2], tag_bars[m2], f_bars[tv])) continue;
          const std::ptrdiff_t eq = eq1.at[s2 * eq1.nt + tv];
          if (eq >= 0) mask[static_cast<std::size_t>(eq) * n_f + e] ^= 1ull << h;
        }
      }
    }
    // Second composite: u after (K_a * v), against chi(0, 2a, g).
    for (std::size_t h = 0; h < n_v; ++h) {
      const auto [sv, tv] = vb_v[h];
      if (!tsv.to[sv] || !taf.to[tv]) continue;
      const std::size_t s2 = *tsv.to[sv], m2 = *taf.to[tv];
      if (!block_dim_refs(t2g_bars[s2], taf_bars[m2])) continue;
      const auto [mu, tu2] = vb_u[e];
      if (mu != m2) continue;
      if (!compose_gate(t2g_bars[s2], taf_bars[m2], g_bars[tu2])) continue;
      const std::ptrdiff_t eq = eq2.at[s2 * eq2.nt + tu2];
      if (eq >= 0) mask[static_cast<std::size_t>(eq) * n_f + e] ^= 1ull << h;
    }
  }

  std::vector<std::uint64_t> rows(n_eq);
  for (std::size_t q = 0; q < eq1.rhs.size(); ++q)
    rows[q] = static_cast<std::uint64_t>(eq1.rhs[q]) << n_v;
  for (std::size_t q = 0; q < eq2.rhs.size(); ++q)
    rows[eq1.rhs.size() + q] = static_cast<std::uint64_t>(eq2.rhs[q]) << n_v;

  std::uint64_t fbits = 0;
  for (std::uint64_t code = 0;; ++code) {
    if (auto sol = solve_f2_bits(rows, n_v)) {
      GradedMorphism uf(taf.object, g), vg(tag.object, f);
      for (std::size_t e = 0; e < n_f; ++e)
        if (fbits >> e & 1) uf.set_entry(vb_u[e].first, vb_u[e].second, 1);
      for (std::size_t h = 0; h < n_v; ++h)
        if ((*sol)[h]) vg.set_entry(vb_v[h].first, vb_v[h].second, 1);
      if (!witness_checks(a, f, g, uf, vg))
        throw std::logic_error("enumerated witness failed verification");
      return {IsoDecision::Status::yes, InterleavingWitness{a, uf, vg}};
    }
    if (code + 1 >= (1ull << n_f)) break;
    const int flip = std::countr_zero(code + 1);
    fbits ^= 1ull << flip;
    for (std::size_t q = 0; q < n_eq; ++q) rows[q] ^= mask[q * n_f + flip];
  }
  return {IsoDecision::Status::no, std::nullopt};
}

}  // namespace

IsoDecision is_a_isomorphic(const GradedBarcode& f, const GradedBarcode& g, const Rat& a,
                            std::size_t exact_bound) {
  if (a < 0) throw std::invalid_argument("is_a_isomorphic requires a >= 0");
  if (all_gamma(f) && all_gamma(g)) return gamma_decide(f, g, a);
  if (f.total_mult() + g.total_mult() > exact_bound)
    return {IsoDecision::Status::indeterminate, std::nullopt};
  return decide_exact(f, g, a);
}

DistanceBounds distance_bounds(const GradedBarcode& f, const GradedBarcode& g) {
  std::set<Rat> ends;
  auto grab = [&](const GradedBarcode& h) {
    for (const auto& [deg, b] : h.components()) {
      for (const auto& bar : b.bars()) {
        if (bar.interval.lower().is_finite()) ends.insert(bar.interval.lower().value());
        if (bar.interval.upper().is_finite()) ends.insert(bar.interval.upper().value());
      }
    }
  };
  grab(f);
  grab(g);
  std::set<Rat> cset;
  cset.insert(Rat(0));
  for (auto i1 = ends.begin(); i1 != ends.end(); ++i1) {
    for (auto i2 = std::next(i1); i2 != ends.end(); ++i2) {
      const Rat d = *i2 - *i1;
      cset.insert(d);
      cset.insert(d / 2);
    }
  }
  const std::vector<Rat> cand(cset.begin(), cset.end());
  std::vector<signed char> memo(cand.size(), 2);  // 2 untested, -1 indet, 0 no, 1 yes
  auto decide = [&](std::size_t idx) {
    if (memo[idx] == 2) {
      const IsoDecision d = is_a_isomorphic(f, g, cand[idx]);
      memo[idx] = d.status == IsoDecision::Status::yes  ? 1
                  : d.status == IsoDecision::Status::no ? 0
                                                        : -1;
    }
    return memo[idx];
  };

  // Monotone in the shift and piecewise constant between candidates: a no
  // at cand[i] certifies the distance is at least cand[i+1], a yes at
  // cand[i] is a witnessed upper bound.
  bool indeterminate_seen = false;
  std::ptrdiff_t lo = -1;
  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(cand.size());
  while (hi - lo > 1) {
    const std::size_t mid = static_cast<std::size_t>(lo + (hi - lo) / 2);
    const int r = decide(mid);
    if (r == 1) {
      hi = static_cast<std::ptrdiff_t>(mid);
    } else if (r == 0) {
      lo = static_cast<std::ptrdiff_t>(mid);
    } else {
      indeterminate_seen = true;
      break;
    }
  }
  if (!indeterminate_seen) {
    if (hi == static_cast<std::ptrdiff_t>(cand.size()))
      return {ExtRat::pos_inf(), ExtRat::pos_inf(), true};
    const std::size_t h = static_cast<std::size_t>(hi);
    return {ExtRat(cand[h]), ExtRat(cand[h]), true};
  }

  // Fall back to a linear sweep that skips indeterminate shifts.
  std::ptrdiff_t last_no = -1;
  std::ptrdiff_t first_yes = -1;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    const int r = decide(i);
    if (r == 0) last_no = static_cast<std::ptrdiff_t>(i);
    if (r == 1) {
      first_yes = static_cast<std::ptrdiff_t>(i);
      break;
    }
  }
  ExtRat lower = last_no + 1 < static_cast<std::ptrdiff_t>(cand.size())
                     ? ExtRat(cand[static_cast<std::size_t>(last_no + 1)])
                     : ExtRat::pos_inf();
  ExtRat upper = first_yes >= 0 ? ExtRat(cand[static_cast<std::size_t>(first_yes)])
                                : ExtRat::pos_inf();
  return {lower, upper, lower == upper};
}

}  // namespace gp
