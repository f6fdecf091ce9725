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

#include "gp/geometry.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>

namespace gp {

Rat dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Rat s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

namespace {

// Internal inequality <a, x> <= b (< when strict); unlike the public rows, a
// may be zero while an elimination is in flight.
struct Row {
  Vec a;
  Rat b;
  bool strict = false;
};

bool vec_zero(const Vec& v) {
  for (const auto& c : v)
    if (c != 0) return false;
  return true;
}

bool vec_less(const Vec& x, const Vec& y) {
  for (std::size_t k = 0; k < x.size() && k < y.size(); ++k) {
    int c = cmp(x[k], y[k]);
    if (c != 0) return c < 0;
  }
  return x.size() < y.size();
}

// Scales a nonzero vector by a positive rational so its entries become
// coprime integers; the direction is preserved.
void normalize_vec(Vec& v) {
  mpz_class den = 1;
  for (const auto& c : v) den = lcm(den, c.get_den());
  mpz_class g = 0;
  for (const auto& c : v) g = gcd(g, mpz_class(c.get_num() * (den / c.get_den())));
  if (g == 0) return;
  Rat scale = Rat(den) / Rat(g);
  for (auto& c : v) c *= scale;
}

void normalize_row(Row& r) {
  mpz_class den = 1;
  for (const auto& c : r.a) den = lcm(den, c.get_den());
  mpz_class g = 0;
  for (const auto& c : r.a) g = gcd(g, mpz_class(c.get_num() * (den / c.get_den())));
  if (g == 0) return;
  Rat scale = Rat(den) / Rat(g);
  for (auto& c : r.a) c *= scale;
  r.b *= scale;
}

// For a zero-normal row: -1 when unsatisfiable, +1 when vacuous.
int classify_trivial(const Row& r) {
  return (r.b < 0 || (r.b == 0 && r.strict)) ? -1 : 1;
}

// The complement of a half-space is again one, with flipped strictness.
Row negate_row(const Row& r) {
  Row n;
  n.a.reserve(r.a.size());
  for (const auto& c : r.a) n.a.push_back(-c);
  n.b = -r.b;
  n.strict = !r.strict;
  return n;
}

bool row_less(const Row& x, const Row& y) {
  if (x.a != y.a) return vec_less(x.a, y.a);
  int c = cmp(x.b, y.b);
  if (c != 0) return c < 0;
  return x.strict && !y.strict;
}

// Sorts, then keeps one row per normal direction: the smallest offset wins,
// and at equal offsets the strict row implies the weak one. Returns false
// when a vacuously false row shows up.
bool dedupe_rows(std::vector<Row>& rows) {
  for (auto& r : rows) normalize_row(r);
  std::vector<Row> kept;
  std::sort(rows.begin(), rows.end(), row_less);
  for (auto& r : rows) {
    if (vec_zero(r.a)) {
      if (classify_trivial(r) < 0) return false;
      continue;
    }
    if (!kept.empty() && kept.back().a == r.a) continue;
    kept.push_back(std::move(r));
  }
  rows = std::move(kept);
  return true;
}

// One Fourier-Motzkin step removing variable v. Each derived row is the
// positive combination of a row bounding v above with one bounding it below
// and is strict exactly when either parent is; eliminating a variable this
// way is exact quantifier elimination, also for the strict flags. Returns
// false when the system is recognized as infeasible.
bool eliminate_var(std::vector<Row>& rows, std::size_t v) {
  std::vector<Row> pos, neg, rest;
  for (auto& r : rows) {
    int s = sgn(r.a[v]);
    if (s > 0)
      pos.push_back(std::move(r));
    else if (s < 0)
      neg.push_back(std::move(r));
    else
      rest.push_back(std::move(r));
  }
  for (const auto& p : pos)
    for (const auto& n : neg) {
      Row c;
      c.a.resize(p.a.size());
      const Rat lp = -n.a[v], ln = p.a[v];
      for (std::size_t k = 0; k < c.a.size(); ++k) c.a[k] = lp * p.a[k] + ln * n.a[k];
      c.b = lp * p.b + ln * n.b;
      c.strict = p.strict || n.strict;
      rest.push_back(std::move(c));
    }
  rows = std::move(rest);
  return dedupe_rows(rows);
}

// Picks the remaining variable whose elimination creates the fewest rows.
std::size_t cheapest_var(const std::vector<Row>& rows, const std::vector<std::size_t>& vars) {
  std::size_t best = vars[0], best_cost = static_cast<std::size_t>(-1);
  for (std::size_t v : vars) {
    std::size_t p = 0, n = 0;
    for (const auto& r : rows) {
      int s = sgn(r.a[v]);
      p += s > 0;
      n += s < 0;
    }
    std::size_t cost = p * n;
    if (cost < best_cost) best_cost = cost, best = v;
  }
  return best;
}

// Runs Bland-rule simplex steps on the tableau until the objective row has
// no positive reduced cost among the admissible columns. Basic columns are
// kept as unit columns throughout; obj_val accumulates the objective.
void simplex_max(std::vector<std::vector<Rat>>& a, std::vector<Rat>& rhs,
                 std::vector<Rat>& obj, Rat& obj_val, std::vector<std::size_t>& basis,
                 std::size_t admissible) {
  const std::size_t m = a.size(), n = obj.size();
  for (;;) {
    std::size_t e = n;
    for (std::size_t j = 0; j < admissible; ++j)
      if (sgn(obj[j]) > 0) {
        e = j;
        break;
      }
    if (e == n) return;
    std::size_t l = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(a[i][e]) <= 0) continue;
      if (l == m) {
        l = i;
        continue;
      }
      int c = cmp(rhs[i] * a[l][e], rhs[l] * a[i][e]);
      if (c < 0 || (c == 0 && basis[i] < basis[l])) l = i;
    }
    if (l == m) return;
    Rat piv = a[l][e];
    for (auto& c : a[l]) c /= piv;
    rhs[l] /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == l || a[i][e] == 0) continue;
      Rat f = a[i][e];
      for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[l][j];
      rhs[i] -= f * rhs[l];
    }
    if (obj[e] != 0) {
      Rat f = obj[e];
      for (std::size_t j = 0; j < n; ++j) obj[j] -= f * a[l][j];
      obj_val += f * rhs[l];
    }
    basis[l] = e;
  }
}

// Exact feasibility of a mixed strict and weak system, by a two-phase
// rational simplex: split the point into a difference of nonnegatives,
// give every strict row one shared slack eps capped at 1, and maximize
// eps. The system has a point iff phase one succeeds and the optimum is
// positive (with no strict rows the cap row alone pushes eps to 1).
bool rows_feasible(std::vector<Row> rows, std::size_t nvars) {
  if (!dedupe_rows(rows)) return false;
  if (rows.empty()) return true;

  const std::size_t m = rows.size() + 1;
  const std::size_t nreal = 2 * nvars + 1 + m;
  std::vector<std::vector<Rat>> a(m, std::vector<Rat>(nreal, Rat(0)));
  std::vector<Rat> rhs(m, Rat(0));
  for (std::size_t i = 0; i + 1 < m; ++i) {
    for (std::size_t k = 0; k < nvars; ++k) {
      a[i][k] = rows[i].a[k];
      a[i][nvars + k] = -rows[i].a[k];
    }
    if (rows[i].strict) a[i][2 * nvars] = 1;
    a[i][2 * nvars + 1 + i] = 1;
    rhs[i] = rows[i].b;
  }
  a[m - 1][2 * nvars] = 1;
  a[m - 1][nreal - 1] = 1;
  rhs[m - 1] = 1;

  // Negative right sides get an artificial basic variable; the rest start
  // on their slack.
  std::vector<std::size_t> basis(m), art_rows;
  for (std::size_t i = 0; i < m; ++i) {
    if (sgn(rhs[i]) < 0) {
      for (auto& c : a[i]) c = -c;
      rhs[i] = -rhs[i];
      art_rows.push_back(i);
    } else {
      basis[i] = 2 * nvars + 1 + i;
    }
  }
  const std::size_t n = nreal + art_rows.size();
  for (std::size_t t = 0; t < art_rows.size(); ++t) {
    for (std::size_t i = 0; i < m; ++i) a[i].resize(n, Rat(0));
    a[art_rows[t]][nreal + t] = 1;
    basis[art_rows[t]] = nreal + t;
  }

  if (!art_rows.empty()) {
    std::vector<Rat> obj(n, Rat(0));
    Rat obj_val = 0;
    for (std::size_t i : art_rows) {
      for (std::size_t j = 0; j < n; ++j) obj[j] += a[i][j];
      obj_val -= rhs[i];
    }
    for (std::size_t j = nreal; j < n; ++j) obj[j] = 0;
    simplex_max(a, rhs, obj, obj_val, basis, n);
    if (obj_val != 0) return false;
    // Pivot leftover artificials out on any real column; an all-zero row
    // is a redundant equation and may keep its artificial at level zero.
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < nreal) continue;
      for (std::size_t j = 0; j < nreal; ++j)
        if (a[i][j] != 0) {
          Rat piv = a[i][j];
          for (auto& c : a[i]) c /= piv;
          rhs[i] /= piv;
          for (std::size_t r = 0; r < m; ++r) {
            if (r == i || a[r][j] == 0) continue;
            Rat f = a[r][j];
            for (std::size_t k = 0; k < n; ++k) a[r][k] -= f * a[i][k];
            rhs[r] -= f * rhs[i];
          }
          basis[i] = j;
          break;
        }
    }
  }

  std::vector<Rat> obj(n, Rat(0));
  obj[2 * nvars] = 1;
  Rat obj_val = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (obj[basis[i]] != 0) {
      Rat f = obj[basis[i]];
      for (std::size_t j = 0; j < n; ++j) obj[j] -= f * a[i][j];
      obj_val += f * rhs[i];
    }
  simplex_max(a, rhs, obj, obj_val, basis, nreal);
  return sgn(obj_val) > 0;
}

// Drops every row implied by the remaining ones; the test is emptiness of
// the system joined with the row's complement.
void prune_redundant(std::vector<Row>& rows, std::size_t nvars) {
  for (std::size_t i = 0; i < rows.size();) {
    std::vector<Row> others;
    for (std::size_t j = 0; j < rows.size(); ++j)
      if (j != i) others.push_back(rows[j]);
    others.push_back(negate_row(rows[i]));
    if (!rows_feasible(std::move(others), nvars))
      rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
}

// Projects onto the first keep variables, eliminating the tail. Returns
// false when the system is infeasible. Every elimination starts from a
// minimal description, which keeps the derived row count in check.
bool project_rows(std::vector<Row>& rows, std::size_t nvars, std::size_t keep) {
  if (!dedupe_rows(rows)) return false;
  std::vector<std::size_t> vars;
  for (std::size_t k = keep; k < nvars; ++k) vars.push_back(k);
  while (!vars.empty()) {
    if (rows.size() > 24) prune_redundant(rows, nvars);
    std::size_t v = cheapest_var(rows, vars);
    vars.erase(std::find(vars.begin(), vars.end(), v));
    if (!eliminate_var(rows, v)) return false;
  }
  for (auto& r : rows) r.a.resize(keep);
  return true;
}

std::vector<Row> rows_of(const std::vector<HalfSpace>& hs) {
  std::vector<Row> rows;
  rows.reserve(hs.size());
  for (const auto& h : hs) rows.push_back({h.normal, h.offset, h.strict});
  return rows;
}

std::vector<HalfSpace> rows_to_halfspaces(std::vector<Row> rows) {
  std::vector<HalfSpace> hs;
  hs.reserve(rows.size());
  for (auto& r : rows) hs.push_back({std::move(r.a), std::move(r.b), r.strict});
  return hs;
}

// Reduced row echelon basis with coprime integer rows and positive pivots;
// the canonical basis of the spanned subspace.
void rref(std::vector<Vec>& rows) {
  if (rows.empty()) return;
  const std::size_t d = rows[0].size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < d && r < rows.size(); ++col) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    Rat p = rows[r][col];
    for (auto& c : rows[r]) c /= p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      Rat f = rows[i][col];
      for (std::size_t k = 0; k < d; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  rows.resize(r);
  for (auto& row : rows) normalize_vec(row);
  std::sort(rows.begin(), rows.end(), vec_less);
}

std::size_t rank_of(std::vector<Vec> rows) {
  rref(rows);
  return rows.size();
}

// Subtracts lineality components so each ray is zero on the pivot
// coordinates of the echelon basis.
void reduce_mod_lineality(Vec& ray, const std::vector<Vec>& lin) {
  for (const auto& l : lin) {
    std::size_t j = 0;
    while (j < l.size() && l[j] == 0) ++j;
    if (j == l.size()) continue;
    Rat f = ray[j] / l[j];
    for (std::size_t k = 0; k < ray.size(); ++k) ray[k] -= f * l[k];
  }
}

void canonicalize_rays(std::vector<Vec>& rays, const std::vector<Vec>& lin) {
  for (auto& r : rays) {
    reduce_mod_lineality(r, lin);
    normalize_vec(r);
  }
  std::sort(rays.begin(), rays.end(), vec_less);
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  rays.erase(std::remove_if(rays.begin(), rays.end(), vec_zero), rays.end());
}

// Is x a conic combination of the rays plus a linear one of the lines?
// Decided by feasibility of the defining system in the multipliers.
bool in_generated_cone(const Vec& x, const std::vector<Vec>& rays,
                       const std::vector<Vec>& lines) {
  const std::size_t d = x.size(), nr = rays.size(), nv = nr + lines.size();
  if (nv == 0) return vec_zero(x);
  std::vector<Row> sys;
  for (std::size_t c = 0; c < d; ++c) {
    Row up, dn;
    up.a.resize(nv);
    for (std::size_t i = 0; i < nr; ++i) up.a[i] = rays[i][c];
    for (std::size_t j = nr; j < nv; ++j) up.a[j] = lines[j - nr][c];
    dn = up;
    for (auto& e : dn.a) e = -e;
    up.b = x[c];
    dn.b = -x[c];
    sys.push_back(std::move(up));
    sys.push_back(std::move(dn));
  }
  for (std::size_t i = 0; i < nr; ++i) {
    Row r;
    r.a.resize(nv);
    r.a[i] = -1;
    r.b = 0;
    sys.push_back(std::move(r));
  }
  return rows_feasible(std::move(sys), nv);
}

// Double description: generators (extremal rays, lineality basis) of
// {x : <n, x> <= 0 for all n}. Start from the whole space and cut one
// half-space at a time. While lineality meets the cutting hyperplane
// transversally, pivot: one lineality direction becomes the ray entering
// the cut side and everything else is projected along it onto the
// hyperplane. Otherwise combine each crossing pair of rays; extremality of
// the output is restored by a final prune.
std::pair<std::vector<Vec>, std::vector<Vec>> dual_rays(std::size_t dim,
                                                        std::vector<Vec> normals) {
  for (auto& n : normals) normalize_vec(n);
  std::sort(normals.begin(), normals.end(), vec_less);
  normals.erase(std::unique(normals.begin(), normals.end()), normals.end());
  normals.erase(std::remove_if(normals.begin(), normals.end(), vec_zero), normals.end());

  std::vector<Vec> lin, rays;
  for (std::size_t k = 0; k < dim; ++k) {
    Vec e(dim, Rat(0));
    e[k] = 1;
    lin.push_back(std::move(e));
  }
  for (const auto& n : normals) {
    std::size_t piv = lin.size();
    for (std::size_t j = 0; j < lin.size(); ++j)
      if (dot(n, lin[j]) != 0) {
        piv = j;
        break;
      }
    if (piv < lin.size()) {
      Vec l0 = lin[piv];
      lin.erase(lin.begin() + static_cast<std::ptrdiff_t>(piv));
      Rat d0 = dot(n, l0);
      if (d0 > 0) {
        for (auto& c : l0) c = -c;
        d0 = -d0;
      }
      auto drop = [&](Vec& v) {
        Rat f = dot(n, v) / d0;
        for (std::size_t k = 0; k < dim; ++k) v[k] -= f * l0[k];
      };
      for (auto& l : lin) drop(l);
      for (auto& r : rays) drop(r);
      rays.push_back(std::move(l0));
    } else {
      std::vector<Vec> keep, plus, minus;
      std::vector<Rat> dp, dm;
      for (auto& r : rays) {
        Rat d = dot(n, r);
        int s = sgn(d);
        if (s > 0)
          plus.push_back(std::move(r)), dp.push_back(std::move(d));
        else if (s < 0)
          minus.push_back(std::move(r)), dm.push_back(std::move(d));
        else
          keep.push_back(std::move(r));
      }
      for (std::size_t i = 0; i < plus.size(); ++i)
        for (std::size_t j = 0; j < minus.size(); ++j) {
          Vec c(dim);
          for (std::size_t k = 0; k < dim; ++k) c[k] = dp[i] * minus[j][k] - dm[j] * plus[i][k];
          if (!vec_zero(c)) keep.push_back(std::move(c));
        }
      for (auto& r : minus) keep.push_back(std::move(r));
      rays = std::move(keep);
    }
    for (auto& r : rays) normalize_vec(r);
    std::sort(rays.begin(), rays.end(), vec_less);
    rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  }

  rref(lin);
  canonicalize_rays(rays, lin);
  for (std::size_t i = 0; i < rays.size();) {
    std::vector<Vec> others;
    for (std::size_t j = 0; j < rays.size(); ++j)
      if (j != i) others.push_back(rays[j]);
    if (in_generated_cone(rays[i], others, lin))
      rays.erase(rays.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  return {std::move(rays), std::move(lin)};
}

// Extremal generators of the dual cone {n : <n, x> <= 0 on the given cone},
// flattened to a plain list of normals for the primal; by biduality these
// normals cut out exactly the cone spanned by the inputs.
std::vector<Vec> dual_normals(std::size_t dim, const std::vector<Vec>& rays,
                              const std::vector<Vec>& lin) {
  std::vector<Vec> gens = rays;
  for (const auto& l : lin) {
    gens.push_back(l);
    Vec m = l;
    for (auto& c : m) c = -c;
    gens.push_back(std::move(m));
  }
  auto [rd, ld] = dual_rays(dim, std::move(gens));
  std::vector<Vec> normals = std::move(rd);
  for (const auto& l : ld) {
    normals.push_back(l);
    Vec m = l;
    for (auto& c : m) c = -c;
    normals.push_back(std::move(m));
  }
  for (auto& n : normals) normalize_vec(n);
  std::sort(normals.begin(), normals.end(), vec_less);
  normals.erase(std::unique(normals.begin(), normals.end()), normals.end());
  return normals;
}

void check_dim(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("geometry: dimension must be positive");
}

std::vector<Row> empty_rows(std::size_t dim) {
  Row a, b;
  a.a.assign(dim, Rat(0));
  b.a.assign(dim, Rat(0));
  a.a[0] = 1;
  b.a[0] = -1;
  a.b = b.b = -1;
  return {std::move(a), std::move(b)};
}

}  // namespace

HPolyhedron::HPolyhedron(std::size_t dim, std::vector<HalfSpace> constraints) : dim_(dim) {
  check_dim(dim);
  for (const auto& h : constraints) {
    if (h.normal.size() != dim) throw std::invalid_argument("half-space dimension mismatch");
    if (vec_zero(h.normal)) throw std::invalid_argument("half-space normal must be nonzero");
  }
  std::vector<Row> rows = rows_of(constraints);
  if (!dedupe_rows(rows) || !rows_feasible(rows, dim)) {
    empty_ = true;
    rows_ = rows_to_halfspaces(empty_rows(dim));
    return;
  }
  prune_redundant(rows, dim);
  std::sort(rows.begin(), rows.end(), row_less);
  rows_ = rows_to_halfspaces(std::move(rows));
}

HPolyhedron HPolyhedron::whole(std::size_t dim) {
  check_dim(dim);
  HPolyhedron p;
  p.dim_ = dim;
  return p;
}

HPolyhedron HPolyhedron::empty_set(std::size_t dim) {
  check_dim(dim);
  HPolyhedron p;
  p.dim_ = dim;
  p.empty_ = true;
  p.rows_ = rows_to_halfspaces(empty_rows(dim));
  return p;
}

bool HPolyhedron::contains(const Vec& x) const {
  if (x.size() != dim_) throw std::invalid_argument("point dimension mismatch");
  for (const auto& h : rows_) {
    Rat v = dot(h.normal, x);
    if (h.strict ? !(v < h.offset) : !(v <= h.offset)) return false;
  }
  return true;
}

bool HPolyhedron::includes(const HPolyhedron& other) const {
  if (other.dim_ != dim_) throw std::invalid_argument("polyhedron dimension mismatch");
  if (other.empty_) return true;
  if (rows_ == other.rows_) return true;
  for (const auto& h : rows_) {
    std::vector<Row> sys = rows_of(other.rows_);
    sys.push_back(negate_row({h.normal, h.offset, h.strict}));
    if (rows_feasible(std::move(sys), dim_)) return false;
  }
  return true;
}

bool HPolyhedron::same_set(const HPolyhedron& other) const {
  return includes(other) && other.includes(*this);
}

HPolyhedron HPolyhedron::intersect(const HPolyhedron& other) const {
  if (other.dim_ != dim_) throw std::invalid_argument("polyhedron dimension mismatch");
  std::vector<HalfSpace> rows = rows_;
  rows.insert(rows.end(), other.rows_.begin(), other.rows_.end());
  return HPolyhedron(dim_, std::move(rows));
}

std::string HPolyhedron::to_string() const {
  if (empty_) return "{}";
  if (rows_.empty()) return "{ all }";
  std::string s = "{";
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    s += i ? "; (" : " (";
    for (std::size_t k = 0; k < dim_; ++k)
      s += (k ? "," : "") + rat_to_string(rows_[i].normal[k]);
    s += rows_[i].strict ? ") < " : ") <= ";
    s += rat_to_string(rows_[i].offset);
  }
  return s + " }";
}

HPolyhedron closure(const HPolyhedron& p) {
  if (p.is_empty()) return HPolyhedron::empty_set(p.dim());
  std::vector<HalfSpace> rows = p.constraints();
  for (auto& h : rows) h.strict = false;
  return HPolyhedron(p.dim(), std::move(rows));
}

HPolyhedron interior(const HPolyhedron& p) {
  std::vector<HalfSpace> rows = p.constraints();
  for (auto& h : rows) h.strict = true;
  return HPolyhedron(p.dim(), std::move(rows));
}

HPolyhedron minkowski_sum(const HPolyhedron& p, const HPolyhedron& q) {
  const std::size_t d = p.dim();
  if (q.dim() != d) throw std::invalid_argument("polyhedron dimension mismatch");
  if (p.is_empty() || q.is_empty()) return HPolyhedron::empty_set(d);
  // Variables (x, y): y ranges over p and x - y over q; x stays.
  std::vector<Row> sys;
  for (const auto& h : p.constraints()) {
    Row r;
    r.a.assign(2 * d, Rat(0));
    for (std::size_t k = 0; k < d; ++k) r.a[d + k] = h.normal[k];
    r.b = h.offset;
    r.strict = h.strict;
    sys.push_back(std::move(r));
  }
  for (const auto& h : q.constraints()) {
    Row r;
    r.a.assign(2 * d, Rat(0));
    for (std::size_t k = 0; k < d; ++k) {
      r.a[k] = h.normal[k];
      r.a[d + k] = -h.normal[k];
    }
    r.b = h.offset;
    r.strict = h.strict;
    sys.push_back(std::move(r));
  }
  if (!project_rows(sys, 2 * d, d)) return HPolyhedron::empty_set(d);
  std::vector<HalfSpace> rows;
  for (auto& r : sys)
    if (!vec_zero(r.a)) rows.push_back({std::move(r.a), std::move(r.b), r.strict});
  return HPolyhedron(d, std::move(rows));
}

Cone Cone::from_normals(std::size_t dim, std::vector<Vec> normals) {
  check_dim(dim);
  for (const auto& n : normals) {
    if (n.size() != dim) throw std::invalid_argument("cone normal dimension mismatch");
    if (vec_zero(n)) throw std::invalid_argument("cone normal must be nonzero");
  }
  Cone c;
  c.dim_ = dim;
  auto [rays, lin] = dual_rays(dim, std::move(normals));
  c.rays_ = std::move(rays);
  c.lineality_ = std::move(lin);
  c.normals_ = dual_normals(dim, c.rays_, c.lineality_);
  return c;
}

Cone Cone::from_rays(std::size_t dim, std::vector<Vec> rays) {
  check_dim(dim);
  for (const auto& r : rays)
    if (r.size() != dim) throw std::invalid_argument("cone ray dimension mismatch");
  rays.erase(std::remove_if(rays.begin(), rays.end(), vec_zero), rays.end());
  // Valid inequalities of the generated cone are the dual cone's members;
  // its extremal generators cut out the original cone again.
  auto [rd, ld] = dual_rays(dim, std::move(rays));
  std::vector<Vec> normals = std::move(rd);
  for (const auto& l : ld) {
    normals.push_back(l);
    Vec m = l;
    for (auto& c : m) c = -c;
    normals.push_back(std::move(m));
  }
  return from_normals(dim, std::move(normals));
}

HPolyhedron Cone::as_polyhedron() const {
  std::vector<HalfSpace> rows;
  for (const auto& n : normals_) rows.push_back({n, Rat(0), false});
  return HPolyhedron(dim_, std::move(rows));
}

Cone Cone::antipodal() const {
  Cone c = *this;
  for (auto& r : c.rays_)
    for (auto& e : r) e = -e;
  for (auto& n : c.normals_)
    for (auto& e : n) e = -e;
  canonicalize_rays(c.rays_, c.lineality_);
  std::sort(c.normals_.begin(), c.normals_.end(), vec_less);
  return c;
}

bool Cone::contains(const Vec& x) const {
  if (x.size() != dim_) throw std::invalid_argument("point dimension mismatch");
  for (const auto& n : normals_)
    if (dot(n, x) > 0) return false;
  return true;
}

bool Cone::is_solid() const {
  std::vector<Vec> gens = rays_;
  gens.insert(gens.end(), lineality_.begin(), lineality_.end());
  return rank_of(std::move(gens)) == dim_;
}

bool Cone::same_set(const Cone& other) const {
  if (other.dim_ != dim_) throw std::invalid_argument("cone dimension mismatch");
  return normals_ == other.normals_ ||
         as_polyhedron().same_set(other.as_polyhedron());
}

Cone polar(const Cone& c) {
  std::vector<Vec> normals;
  for (const auto& r : c.rays()) {
    Vec m = r;
    for (auto& e : m) e = -e;
    normals.push_back(std::move(m));
  }
  for (const auto& l : c.lineality()) {
    normals.push_back(l);
    Vec m = l;
    for (auto& e : m) e = -e;
    normals.push_back(std::move(m));
  }
  return Cone::from_normals(c.dim(), std::move(normals));
}

Cone recession(const HPolyhedron& p) {
  std::vector<Vec> normals;
  if (p.is_empty()) {
    for (std::size_t k = 0; k < p.dim(); ++k) {
      Vec e(p.dim(), Rat(0));
      e[k] = 1;
      normals.push_back(e);
      for (auto& c : e) c = -c;
      normals.push_back(std::move(e));
    }
  } else {
    for (const auto& h : p.constraints()) normals.push_back(h.normal);
  }
  return Cone::from_normals(p.dim(), std::move(normals));
}

HPolyhedron minkowski_cone(const HPolyhedron& p, const Cone& c) {
  return minkowski_sum(p, c.as_polyhedron());
}

namespace {

void check_cone_topology(std::size_t dim, const Cone& c) {
  if (c.dim() != dim) throw std::invalid_argument("cone dimension mismatch");
  if (!c.is_proper() || !c.is_solid())
    throw std::invalid_argument("cone topology needs a proper solid cone");
}

bool cones_meet_only_at_origin(const Cone& a, const Cone& b) {
  std::vector<Vec> normals = a.normals();
  normals.insert(normals.end(), b.normals().begin(), b.normals().end());
  auto [rays, lin] = dual_rays(a.dim(), std::move(normals));
  return rays.empty() && lin.empty();
}

}  // namespace

GammaPredicates gamma_predicates(const HPolyhedron& p, const Cone& c) {
  check_cone_topology(p.dim(), c);
  GammaPredicates g;
  g.open = p.same_set(interior(p));
  g.closed = p.same_set(closure(p));
  HPolyhedron up = minkowski_cone(p, c);
  HPolyhedron dn = minkowski_cone(p, c.antipodal());
  g.gamma_open = g.open && p.same_set(up);
  g.gamma_closed = g.closed && p.same_set(dn);
  g.gamma_flat = p.same_set(up.intersect(dn));
  // p is an intersection of an invariant open with an invariant closed set
  // iff p + c is open and cutting its closure on the antipodal side gives p
  // back; both sets are invariant for their respective sides by
  // construction.
  g.gamma_locally_closed = up.same_set(interior(up)) && p.same_set(up.intersect(closure(dn)));
  g.gamma_proper = cones_meet_only_at_origin(recession(closure(p)), c);
  return g;
}

HPolyhedron omega_to_z(const HPolyhedron& omega, const Cone& c) {
  check_cone_topology(omega.dim(), c);
  HPolyhedron up = minkowski_cone(omega, c);
  HPolyhedron dn = minkowski_cone(omega, c.antipodal());
  if (!omega.same_set(interior(omega)) || !omega.same_set(up.intersect(dn)))
    throw std::invalid_argument("omega_to_z expects an open set flat for the cone");
  return up.intersect(closure(dn));
}

HPolyhedron z_to_omega(const HPolyhedron& z, const Cone& c) {
  check_cone_topology(z.dim(), c);
  HPolyhedron up = minkowski_cone(z, c);
  HPolyhedron dn = minkowski_cone(z, c.antipodal());
  if (!up.same_set(interior(up)) || !z.same_set(up.intersect(closure(dn))))
    throw std::invalid_argument("z_to_omega expects a locally closed set for the cone topology");
  return up.intersect(minkowski_sum(z, interior(c.antipodal().as_polyhedron())));
}

}  // namespace gp
