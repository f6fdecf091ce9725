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

// Stratifications in several variables: hyperplane arrangements compatible
// with a cone, the open cells they cut out of a closed support, the locally
// closed strata those cells generate, and the hom / tensor / pullback
// calculus of finite sums of constant sheaves on such strata. Everything is
// exact rational arithmetic on top of the polyhedron layer.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gp/geometry.hpp"
#include "gp/rational.hpp"

namespace gp {

// The affine hyperplane {x : <normal, x> = offset}.
struct Hyperplane {
  Vec normal;
  Rat offset;

  bool operator==(const Hyperplane&) const = default;
};

// Finite family of affine hyperplanes in a fixed ambient dimension.
class Arrangement {
 public:
  // Throws std::invalid_argument on ambient dimension zero, a normal of the
  // wrong width, or a zero normal.
  Arrangement(std::size_t dim, std::vector<Hyperplane> planes);

  std::size_t dim() const { return dim_; }
  const std::vector<Hyperplane>& hyperplanes() const { return planes_; }

 private:
  std::size_t dim_ = 0;
  std::vector<Hyperplane> planes_;
};

// True when every hyperplane normal lies in the polar cone of c or in its
// antipode, so each open side of each hyperplane is invariant under c or
// under -c and the cells below are flat for the cone topology.
bool gamma_compatible(const Arrangement& arr, const Cone& c);

// The nonempty cells of the arrangement inside region: intersections of
// region with one strict side of every hyperplane. Cells are pairwise
// disjoint, avoid every hyperplane, and cover the points of region off the
// hyperplanes. Throws std::invalid_argument on a dimension mismatch.
std::vector<HPolyhedron> enumerate_cells(const Arrangement& arr,
                                         const HPolyhedron& region);

// Input of stratify: a closed support carried by an arrangement compatible
// with the cone. Each support part must be topologically closed, and every
// facet of the union must lie on an arrangement hyperplane; the union need
// not be convex.
struct PLGammaSheafSpec {
  Arrangement arrangement;
  std::vector<HPolyhedron> support;
  Cone cone;
};

// Opt-in exhaustion of the ambient space before cutting cells, for supports
// that are unbounded in the cone directions. The window between the
// translates of the open cone by +/- radius * direction (and of the closed
// antipodal cone likewise) is cut into boxes by the translated facet
// hyperplanes; those hyperplanes join the arrangement, so strata from
// different boxes stay separate, and only the cells inside the window are
// kept.
struct StratifyOptions {
  bool boxed = false;
  int box_radius = 1;
  // Must point into the cone interior; defaults to the sum of the cone rays.
  std::optional<Vec> direction;
};

// Pairwise disjoint locally closed convex pieces whose closures cover a
// closed support.
struct Stratification {
  std::vector<HPolyhedron> strata;
};

/// Cuts the support along the arrangement and attaches to every covered
/// cell the locally closed set it spans: the cell pushed along the cone,
/// intersected with the closure of the cell pushed the opposite way. The
/// cells are the connected components of the support minus the
/// hyperplanes, so the result is the coarsest stratification the
/// arrangement generates.
///
/// Throws std::invalid_argument when a hyperplane normal is not compatible
/// with the cone (the message names the hyperplane), when a support part
/// is not closed, when a support boundary crosses a cell (the arrangement
/// does not carry the support), or on inconsistent dimensions or boxing
/// options.
Stratification stratify(const PLGammaSheafSpec& spec,
                        const StratifyOptions& opts = {});

struct StratificationReport {
  bool ok = true;
  std::vector<std::string> violations;

  bool operator==(const StratificationReport&) const = default;
};

// Checks that every stratum is nonempty, convex by construction, locally
// closed for the cone topology, that strata are pairwise disjoint, and that
// the union of the stratum closures equals the union of the target parts.
// All checks are exact; each violation is reported in words.
StratificationReport validate_stratification(const Stratification& s,
                                             const std::vector<HPolyhedron>& target,
                                             const Cone& c);

// dim Hom(k_s, k_t) for locally closed convex polytopes s and t: 1 iff the
// two sets meet, the overlap is closed in s and open in t; 0 otherwise.
// Both relative topology tests are exact: closed in s compares the overlap
// with its closure inside s, and open in t checks that the closure of no
// complement slice of t meets the overlap.
int hom_dim_nd(const HPolyhedron& s, const HPolyhedron& t);

// Finite direct sum of constant sheaves on locally closed convex pieces,
// with an integer placement degree per piece. The piece list is canonical:
// empty regions and zero multiplicities are dropped, equal (degree, region)
// pairs merge their multiplicities, and pieces are sorted by degree and
// then by their constraint rows.
class BarcodeSheafND {
 public:
  struct Piece {
    HPolyhedron region;
    int degree = 0;
    std::uint64_t mult = 1;
  };

  explicit BarcodeSheafND(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }

  // Throws std::invalid_argument when the region dimension disagrees.
  void add(HPolyhedron region, int degree, std::uint64_t mult = 1);

  // Stalk dimension at x in one degree: total multiplicity of the pieces
  // whose region contains x.
  std::uint64_t stalk(const Vec& x, int degree) const;

  bool operator==(const BarcodeSheafND& o) const;

  std::string to_string() const;

 private:
  std::size_t dim_;
  std::vector<Piece> pieces_;
};

// Hom between sums of constant sheaves: one block per pair of equal-degree
// pieces whose regions admit a map, multiplicities multiplying. pairs lists
// (index into a.pieces(), index into b.pieces()) of the contributing
// blocks in order.
struct HomSpaceND {
  std::uint64_t dim = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  bool operator==(const HomSpaceND&) const = default;
};

HomSpaceND hom_space_nd(const BarcodeSheafND& a, const BarcodeSheafND& b);

// Tensor product: regions intersect pairwise, multiplicities multiply,
// degrees add, empty intersections vanish. The intersection of two locally
// closed pieces is again locally closed, so the class is stable.
BarcodeSheafND tensor_nd(const BarcodeSheafND& a, const BarcodeSheafND& b);

// Inverse image of a sum of constant sheaves along the linear map
// x -> (<row_0, x>, ..., <row_m-1, x>): each region pulls back to its
// preimage by substituting the map into every constraint.
struct PullbackResult {
  BarcodeSheafND sheaf;
  // True when the map sends the source cone into the target cone, so the
  // pullback respects the two cone topologies; otherwise the result is
  // only piecewise linear.
  bool gamma_compatible = false;
};

// map_rows holds target_sheaf.dim() rows of width source_cone.dim().
// Throws std::invalid_argument on inconsistent dimensions.
PullbackResult pullback_linear(const std::vector<Vec>& map_rows,
                               const BarcodeSheafND& target_sheaf,
                               const Cone& source_cone, const Cone& target_cone);

}  // namespace gp
