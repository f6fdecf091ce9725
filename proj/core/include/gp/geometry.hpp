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

// Exact polyhedral geometry over the rationals: convex sets cut out by
// finitely many weak or strict half-spaces, closed convex polyhedral cones
// with both generator and inequality descriptions, and the point-set
// operations a cone topology needs (Minkowski sums, closure, interior, the
// invariance predicates, and the correspondence between flat open sets and
// locally closed sets). Every operation is exact; quantifier elimination is
// Fourier-Motzkin with strict flags, where a derived row is strict exactly
// when one of its two parents is.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gp/rational.hpp"

namespace gp {

using Vec = std::vector<Rat>;

Rat dot(const Vec& a, const Vec& b);

// The half-space {x : <normal, x> <= offset}, with < instead of <= when
// strict. The normal must be nonzero in any constraint handed to a
// polyhedron.
struct HalfSpace {
  Vec normal;
  Rat offset;
  bool strict = false;

  bool operator==(const HalfSpace&) const = default;
};

// Convex subset of Q^dim cut out by finitely many half-spaces, possibly
// neither open nor closed. The constructor canonicalizes: rows are scaled
// to coprime integer normals, dominated and redundant rows are removed, and
// an infeasible system collapses to a fixed two-row empty description.
class HPolyhedron {
 public:
  HPolyhedron(std::size_t dim, std::vector<HalfSpace> constraints);

  static HPolyhedron whole(std::size_t dim);
  static HPolyhedron empty_set(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const std::vector<HalfSpace>& constraints() const { return rows_; }

  bool is_empty() const { return empty_; }
  bool contains(const Vec& x) const;

  // Set inclusion: other is a subset of this. Decided one constraint at a
  // time by checking that other meets the complementary half-space nowhere.
  bool includes(const HPolyhedron& other) const;
  bool same_set(const HPolyhedron& other) const;
  bool operator==(const HPolyhedron& other) const { return same_set(other); }

  HPolyhedron intersect(const HPolyhedron& other) const;

  std::string to_string() const;

 private:
  HPolyhedron() = default;

  std::size_t dim_ = 0;
  std::vector<HalfSpace> rows_;
  bool empty_ = false;
};

// Topological closure. For a nonempty polyhedron this weakens every strict
// row: any weak point is the limit of the segment toward a point of the set,
// along which all strict rows hold strictly.
HPolyhedron closure(const HPolyhedron& p);

// Topological interior, always the set where every row holds strictly: a
// constraint of the description cannot be tight at an interior point.
HPolyhedron interior(const HPolyhedron& p);

HPolyhedron minkowski_sum(const HPolyhedron& p, const HPolyhedron& q);

// Closed convex polyhedral cone, stored in both descriptions: inequalities
// <n, x> <= 0 and generators (extremal rays plus a lineality basis). The
// two are kept consistent by double description at construction.
class Cone {
 public:
  static Cone from_normals(std::size_t dim, std::vector<Vec> normals);
  static Cone from_rays(std::size_t dim, std::vector<Vec> rays);

  std::size_t dim() const { return dim_; }
  const std::vector<Vec>& normals() const { return normals_; }
  const std::vector<Vec>& rays() const { return rays_; }
  const std::vector<Vec>& lineality() const { return lineality_; }

  HPolyhedron as_polyhedron() const;
  Cone antipodal() const;

  bool contains(const Vec& x) const;
  // No nonzero x has both x and -x in the cone, i.e. no lineality.
  bool is_proper() const { return lineality_.empty(); }
  // Nonempty interior, i.e. the generators span the whole space.
  bool is_solid() const;
  bool same_set(const Cone& other) const;
  bool operator==(const Cone& other) const { return same_set(other); }

 private:
  Cone() = default;

  std::size_t dim_ = 0;
  std::vector<Vec> normals_;
  std::vector<Vec> rays_;
  std::vector<Vec> lineality_;
};

// The polar cone {xi : <xi, v> >= 0 for all v in c}. Polar is an involution
// on closed convex cones.
Cone polar(const Cone& c);

// Recession cone {v : p + v is contained in p} of a nonempty polyhedron,
// read off the normals; the empty set recedes to the origin.
Cone recession(const HPolyhedron& p);

// p + c as a polyhedron.
HPolyhedron minkowski_cone(const HPolyhedron& p, const Cone& c);

// Point-set predicates of a polyhedron relative to a cone topology. The
// open sets of that topology are the invariant open sets U + c = U; flat
// means p = (p + c) intersect (p + c:antipodal), and proper means every
// intersection with a translate of the cone is compact.
struct GammaPredicates {
  bool open = false;
  bool closed = false;
  bool gamma_open = false;
  bool gamma_closed = false;
  bool gamma_locally_closed = false;
  bool gamma_flat = false;
  bool gamma_proper = false;
};

// Throws std::invalid_argument unless the cone is proper and solid.
GammaPredicates gamma_predicates(const HPolyhedron& p, const Cone& c);

// The locally closed set (omega + c) intersect closure(omega + c.antipodal)
// attached to a flat open set; inverse to z_to_omega. Throws
// std::invalid_argument unless omega is open and flat for the cone.
HPolyhedron omega_to_z(const HPolyhedron& omega, const Cone& c);

// The interior (z + c) intersect (z + interior of c.antipodal) of a locally
// closed set; inverse to omega_to_z. Throws std::invalid_argument unless z
// is locally closed for the cone topology.
HPolyhedron z_to_omega(const HPolyhedron& z, const Cone& c);

}  // namespace gp
