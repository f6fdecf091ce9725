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

#include "gp/stratify.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace gp {

namespace {

Vec negated_vec(const Vec& v) {
  Vec out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = -v[k];
  return out;
}

// The complementary open or closed half-space.
HalfSpace negated(const HalfSpace& h) { return {negated_vec(h.normal), -h.offset, !h.strict}; }

bool vec_less(const Vec& a, const Vec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool row_less(const HalfSpace& x, const HalfSpace& y) {
  if (x.normal != y.normal) return vec_less(x.normal, y.normal);
  if (x.offset != y.offset) return x.offset < y.offset;
  return x.strict < y.strict;
}

bool rows_less(const std::vector<HalfSpace>& a, const std::vector<HalfSpace>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), row_less);
}

// Canonical descriptions make row equality a set equality for the
// full-dimensional regions handled here.
bool piece_less(const BarcodeSheafND::Piece& x, const BarcodeSheafND::Piece& y) {
  if (x.degree != y.degree) return x.degree < y.degree;
  return rows_less(x.region.constraints(), y.region.constraints());
}

// Scale to a coprime integer normal whose first nonzero entry is positive,
// so equal hyperplanes get equal representations.
void normalize_plane(Hyperplane& h) {
  mpz_class den = 1;
  for (const auto& c : h.normal) den = lcm(den, c.get_den());
  mpz_class g = 0;
  for (const auto& c : h.normal) g = gcd(g, mpz_class(c.get_num() * (den / c.get_den())));
  const Rat scale = Rat(den) / Rat(g);
  for (auto& c : h.normal) c *= scale;
  h.offset *= scale;
  for (const auto& c : h.normal) {
    if (c == 0) continue;
    if (c < 0) {
      h.normal = negated_vec(h.normal);
      h.offset = -h.offset;
    }
    break;
  }
}

// Whether p is contained in the union of parts[from..]. A part covering p
// settles it; otherwise p is cut along the first relevant part into the
// piece inside it and the slices outside each of its constraints, and the
// slices must be covered by the remaining parts.
bool union_includes(const HPolyhedron& p, const std::vector<HPolyhedron>& parts,
                    std::size_t from) {
  if (p.is_empty()) return true;
  for (std::size_t i = from; i < parts.size(); ++i)
    if (parts[i].includes(p)) return true;
  if (from >= parts.size()) return false;
  const HPolyhedron& head = parts[from];
  if (head.is_empty() || p.intersect(head).is_empty()) return union_includes(p, parts, from + 1);
  HPolyhedron rest = p;
  for (const auto& row : head.constraints()) {
    const HPolyhedron outside = rest.intersect(HPolyhedron(p.dim(), {negated(row)}));
    if (!union_includes(outside, parts, from + 1)) return false;
    rest = rest.intersect(HPolyhedron(p.dim(), {row}));
  }
  return true;  // what is left lies inside head
}

}  // namespace

Arrangement::Arrangement(std::size_t dim, std::vector<Hyperplane> planes)
    : dim_(dim), planes_(std::move(planes)) {
  if (dim == 0) throw std::invalid_argument("arrangement dimension must be positive");
  for (const auto& h : planes_) {
    if (h.normal.size() != dim)
      throw std::invalid_argument("hyperplane normal has the wrong dimension");
    bool zero = true;
    for (const auto& c : h.normal)
      if (c != 0) zero = false;
    if (zero) throw std::invalid_argument("hyperplane normal must be nonzero");
  }
}

bool gamma_compatible(const Arrangement& arr, const Cone& c) {
  if (arr.dim() != c.dim())
    throw std::invalid_argument("arrangement and cone dimensions disagree");
  const Cone pol = polar(c);
  for (const auto& h : arr.hyperplanes())
    if (!pol.contains(h.normal) && !pol.contains(negated_vec(h.normal))) return false;
  return true;
}

std::vector<HPolyhedron> enumerate_cells(const Arrangement& arr, const HPolyhedron& region) {
  if (arr.dim() != region.dim())
    throw std::invalid_argument("arrangement and region dimensions disagree");
  std::vector<HPolyhedron> cells;
  if (region.is_empty()) return cells;
  cells.push_back(region);
  for (const auto& h : arr.hyperplanes()) {
    const HPolyhedron below(arr.dim(), {HalfSpace{h.normal, h.offset, true}});
    const HPolyhedron above(arr.dim(), {negated(HalfSpace{h.normal, h.offset, false})});
    std::vector<HPolyhedron> next;
    for (const auto& cell : cells)
      for (const auto* side : {&below, &above}) {
        HPolyhedron cut = cell.intersect(*side);
        if (!cut.is_empty()) next.push_back(std::move(cut));
      }
    cells = std::move(next);
  }
  return cells;
}

Stratification stratify(const PLGammaSheafSpec& spec, const StratifyOptions& opts) {
  const std::size_t dim = spec.arrangement.dim();
  if (spec.cone.dim() != dim)
    throw std::invalid_argument("cone dimension disagrees with the arrangement");
  for (const auto& part : spec.support)
    if (part.dim() != dim)
      throw std::invalid_argument("support dimension disagrees with the arrangement");
  if (!spec.cone.is_proper() || !spec.cone.is_solid())
    throw std::invalid_argument("stratification needs a proper solid cone");

  const Cone pol = polar(spec.cone);
  const auto& given = spec.arrangement.hyperplanes();
  for (std::size_t i = 0; i < given.size(); ++i)
    if (!pol.contains(given[i].normal) && !pol.contains(negated_vec(given[i].normal)))
      throw std::invalid_argument("hyperplane " + std::to_string(i) +
                                  " is not compatible with the cone");
  for (std::size_t i = 0; i < spec.support.size(); ++i)
    if (!closure(spec.support[i]).same_set(spec.support[i]))
      throw std::invalid_argument("support part " + std::to_string(i) + " is not closed");

  std::vector<Hyperplane> planes = given;
  std::vector<HPolyhedron> window_in, window_off;
  if (opts.boxed) {
    if (opts.box_radius < 1) throw std::invalid_argument("box radius must be at least 1");
    Vec v;
    if (opts.direction) {
      v = *opts.direction;
    } else {
      v.assign(dim, Rat(0));
      for (const auto& ray : spec.cone.rays())
        for (std::size_t k = 0; k < dim; ++k) v[k] += ray[k];
    }
    if (v.size() != dim || !interior(spec.cone.as_polyhedron()).contains(v))
      throw std::invalid_argument("direction must point into the cone interior");
    // Between radius steps backward and forward along v, the translated
    // facet hyperplanes of the cone cut the window into boxes that are
    // differences of consecutive translates, one open side and one closed.
    const Rat radius(opts.box_radius);
    std::vector<HalfSpace> open_hi, open_lo, closed_hi, closed_lo;
    for (const auto& n : spec.cone.normals()) {
      const Rat step = dot(n, v);  // negative, since v is interior
      for (int t = -opts.box_radius; t <= opts.box_radius; ++t)
        planes.push_back({n, Rat(t) * step});
      open_hi.push_back({n, -radius * step, true});
      open_lo.push_back({n, radius * step, true});
      closed_hi.push_back({negated_vec(n), -radius * step, false});
      closed_lo.push_back({negated_vec(n), radius * step, false});
    }
    window_in.push_back(HPolyhedron(dim, open_hi));      // inside the widest open translate
    window_in.push_back(HPolyhedron(dim, closed_hi));    // inside the widest closed translate
    window_off.push_back(HPolyhedron(dim, open_lo));     // off the narrowest open translate
    window_off.push_back(HPolyhedron(dim, closed_lo));   // off the narrowest closed translate
  }
  for (auto& h : planes) normalize_plane(h);
  std::sort(planes.begin(), planes.end(), [](const Hyperplane& a, const Hyperplane& b) {
    if (a.normal != b.normal) return vec_less(a.normal, b.normal);
    return a.offset < b.offset;
  });
  planes.erase(std::unique(planes.begin(), planes.end()), planes.end());

  Stratification out;
  for (const auto& cell : enumerate_cells(Arrangement(dim, planes), HPolyhedron::whole(dim))) {
    bool keep = true;
    for (const auto& w : window_in) keep = keep && w.includes(cell);
    for (const auto& w : window_off) keep = keep && cell.intersect(w).is_empty();
    if (!keep) continue;
    bool meets = false;
    for (const auto& part : spec.support) meets = meets || !cell.intersect(part).is_empty();
    if (!meets) continue;
    // Each cell sits strictly on one side of every hyperplane, so a carried
    // support meets it in nothing or in the whole cell.
    if (!union_includes(cell, spec.support, 0))
      throw std::invalid_argument(
          "a support boundary crosses a cell; the arrangement does not carry the support");
    out.strata.push_back(omega_to_z(cell, spec.cone));
  }
  return out;
}

StratificationReport validate_stratification(const Stratification& s,
                                             const std::vector<HPolyhedron>& target,
                                             const Cone& c) {
  if (!c.is_proper() || !c.is_solid())
    throw std::invalid_argument("validation needs a proper solid cone");
  const std::size_t dim = c.dim();
  for (const auto& z : s.strata)
    if (z.dim() != dim) throw std::invalid_argument("stratum dimension disagrees with the cone");
  for (const auto& p : target)
    if (p.dim() != dim) throw std::invalid_argument("target dimension disagrees with the cone");

  StratificationReport report;
  for (std::size_t i = 0; i < s.strata.size(); ++i) {
    if (s.strata[i].is_empty()) {
      report.violations.push_back("stratum " + std::to_string(i) + " is empty");
    } else if (!gamma_predicates(s.strata[i], c).gamma_locally_closed) {
      report.violations.push_back("stratum " + std::to_string(i) +
                                  " is not locally closed for the cone topology");
    }
  }
  for (std::size_t i = 0; i < s.strata.size(); ++i)
    for (std::size_t j = i + 1; j < s.strata.size(); ++j)
      if (!s.strata[i].intersect(s.strata[j]).is_empty())
        report.violations.push_back("strata " + std::to_string(i) + " and " + std::to_string(j) +
                                    " overlap");

  std::vector<HPolyhedron> closures;
  for (const auto& z : s.strata)
    if (!z.is_empty()) closures.push_back(closure(z));
  for (std::size_t i = 0; i < closures.size(); ++i)
    if (!union_includes(closures[i], target, 0))
      report.violations.push_back("closure of stratum " + std::to_string(i) +
                                  " escapes the target support");
  for (std::size_t j = 0; j < target.size(); ++j)
    if (!union_includes(target[j], closures, 0))
      report.violations.push_back("target part " + std::to_string(j) +
                                  " is not covered by the stratum closures");

  report.ok = report.violations.empty();
  return report;
}

int hom_dim_nd(const HPolyhedron& s, const HPolyhedron& t) {
  if (s.dim() != t.dim()) throw std::invalid_argument("hom needs equal ambient dimensions");
  const HPolyhedron w = s.intersect(t);
  if (w.is_empty()) return 0;
  // Closed in s: the closure of the overlap meets s inside the overlap.
  if (!w.includes(closure(w).intersect(s))) return 0;
  // Open in t: the part of t outside s is a union of slices, one per
  // constraint of s, and no slice accumulates onto the overlap.
  for (const auto& row : s.constraints()) {
    const HPolyhedron slice = t.intersect(HPolyhedron(t.dim(), {negated(row)}));
    if (slice.is_empty()) continue;
    if (!closure(slice).intersect(w).is_empty()) return 0;
  }
  return 1;
}

BarcodeSheafND::BarcodeSheafND(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw std::invalid_argument("sheaf dimension must be positive");
}

void BarcodeSheafND::add(HPolyhedron region, int degree, std::uint64_t mult) {
  if (region.dim() != dim_)
    throw std::invalid_argument("piece dimension disagrees with the sheaf");
  if (mult == 0 || region.is_empty()) return;
  Piece p{std::move(region), degree, mult};
  const auto it = std::lower_bound(pieces_.begin(), pieces_.end(), p, piece_less);
  if (it != pieces_.end() && it->degree == p.degree &&
      it->region.constraints() == p.region.constraints()) {
    it->mult += p.mult;
    return;
  }
  pieces_.insert(it, std::move(p));
}

std::uint64_t BarcodeSheafND::stalk(const Vec& x, int degree) const {
  std::uint64_t total = 0;
  for (const auto& p : pieces_)
    if (p.degree == degree && p.region.contains(x)) total += p.mult;
  return total;
}

bool BarcodeSheafND::operator==(const BarcodeSheafND& o) const {
  if (dim_ != o.dim_ || pieces_.size() != o.pieces_.size()) return false;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const Piece& a = pieces_[i];
    const Piece& b = o.pieces_[i];
    if (a.degree != b.degree || a.mult != b.mult ||
        a.region.constraints() != b.region.constraints())
      return false;
  }
  return true;
}

std::string BarcodeSheafND::to_string() const {
  if (pieces_.empty()) return "0";
  std::string out;
  for (const auto& p : pieces_) {
    if (!out.empty()) out += "\n";
    out += "deg " + std::to_string(p.degree) + ": " + std::to_string(p.mult) + " x " +
           p.region.to_string();
  }
  return out;
}

HomSpaceND hom_space_nd(const BarcodeSheafND& a, const BarcodeSheafND& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("hom needs equal ambient dimensions");
  HomSpaceND out;
  for (std::size_t i = 0; i < a.pieces().size(); ++i)
    for (std::size_t j = 0; j < b.pieces().size(); ++j) {
      const auto& p = a.pieces()[i];
      const auto& q = b.pieces()[j];
      if (p.degree != q.degree || hom_dim_nd(p.region, q.region) == 0) continue;
      out.dim += p.mult * q.mult;
      out.pairs.emplace_back(i, j);
    }
  return out;
}

BarcodeSheafND tensor_nd(const BarcodeSheafND& a, const BarcodeSheafND& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("tensor needs equal ambient dimensions");
  BarcodeSheafND out(a.dim());
  for (const auto& p : a.pieces())
    for (const auto& q : b.pieces())
      out.add(p.region.intersect(q.region), p.degree + q.degree, p.mult * q.mult);
  return out;
}

PullbackResult pullback_linear(const std::vector<Vec>& map_rows,
                               const BarcodeSheafND& target_sheaf,
                               const Cone& source_cone, const Cone& target_cone) {
  const std::size_t sdim = source_cone.dim(), tdim = target_cone.dim();
  if (target_sheaf.dim() != tdim)
    throw std::invalid_argument("target sheaf and target cone dimensions disagree");
  if (map_rows.size() != tdim)
    throw std::invalid_argument("the map needs one row per target coordinate");
  for (const auto& r : map_rows)
    if (r.size() != sdim) throw std::invalid_argument("map rows must have the source width");

  PullbackResult out{BarcodeSheafND(sdim), true};
  const auto image = [&](const Vec& x) {
    Vec y(tdim);
    for (std::size_t i = 0; i < tdim; ++i) y[i] = dot(map_rows[i], x);
    return y;
  };
  for (const auto& ray : source_cone.rays())
    out.gamma_compatible = out.gamma_compatible && target_cone.contains(image(ray));
  for (const auto& l : source_cone.lineality()) {
    const Vec y = image(l);
    out.gamma_compatible = out.gamma_compatible && target_cone.contains(y) &&
                           target_cone.contains(negated_vec(y));
  }

  for (const auto& piece : target_sheaf.pieces()) {
    std::vector<HalfSpace> rows;
    bool dead = false;
    for (const auto& h : piece.region.constraints()) {
      Vec m(sdim, Rat(0));
      for (std::size_t i = 0; i < tdim; ++i)
        for (std::size_t k = 0; k < sdim; ++k) m[k] += h.normal[i] * map_rows[i][k];
      bool zero = true;
      for (const auto& v : m)
        if (v != 0) zero = false;
      if (zero) {
        // The constraint no longer mentions x: it holds everywhere or
        // nowhere on the preimage.
        if (h.strict ? !(Rat(0) < h.offset) : h.offset < 0) {
          dead = true;
          break;
        }
        continue;
      }
      rows.push_back({std::move(m), h.offset, h.strict});
    }
    if (dead) continue;
    out.sheaf.add(HPolyhedron(sdim, rows), piece.degree, piece.mult);
  }
  return out;
}

}  // namespace gp
