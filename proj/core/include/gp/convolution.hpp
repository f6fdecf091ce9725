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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "gp/barcode.hpp"
#include "gp/extended_rational.hpp"
#include "gp/interval.hpp"
#include "gp/rational.hpp"

namespace gp {

/// Convolution kernel on the line. For a >= 0 it is the closed segment
/// sheaf k_{[-a,a]} in degree 0, for a < 0 the open segment k_{(a,-a)}
/// placed in degree -1; with that placement kernels compose additively,
/// convolve(K_a, K_b) = K_{a+b} for all signs.
struct Kernel {
  Rat a;
  explicit Kernel(Rat v) : a(std::move(v)) {}
  GradedBarcode as_barcode() const;
};

namespace detail {

// The product of two single interval sheaves, split by fiber shape: the
// degree-0 part collects the points whose fiber is compact, the degree-1
// part those whose fiber is open at both ends. Half-open fibers contribute
// nothing.
struct PairParts {
  std::optional<Interval> compact_part;  // adds at degree p + q
  std::optional<Interval> open_part;     // adds at degree p + q + 1
};
PairParts convolve_pair(const Interval& i, const Interval& j);

}  // namespace detail

/// Product of two sheaves along addition on the line, bilinear over bars.
/// Throws std::invalid_argument("non-proper convolution") unless at least
/// one argument has all bars bounded or both are bounded on the same side;
/// otherwise addition is not proper on the support.
GradedBarcode convolve(const GradedBarcode& f, const GradedBarcode& g);
GradedBarcode convolve(const Kernel& k, const GradedBarcode& f);

/// dim Ext^1(k_i, k_j) for single intervals: the Hom dimension minus the
/// Euler pairing of the two cell-complex dimension vectors on a common
/// refinement. Higher Ext groups vanish on the line.
int ext1_dim(const Interval& i, const Interval& j);

/// Morphism between graded barcodes, stored blockwise over F2 as scalars
/// against the canonical generator of each one-dimensional block. A block
/// from a bar in degree p to a bar in degree q is a Hom component when
/// p == q and an extension component when p - q == 1; every other block
/// vanishes. Bars are expanded to unit multiplicity, ordered by degree and
/// then by the canonical interval order.
class GradedMorphism {
 public:
  struct BarRef {
    Interval interval;
    int degree;
  };

  GradedMorphism(const GradedBarcode& source, const GradedBarcode& target);

  const GradedBarcode& source() const { return source_; }
  const GradedBarcode& target() const { return target_; }
  const std::vector<BarRef>& source_bars() const { return src_; }
  const std::vector<BarRef>& target_bars() const { return tgt_; }

  // Dimension (0 or 1) of the block from source bar s to target bar t.
  int block_dim(std::size_t s, std::size_t t) const;

  int entry(std::size_t s, std::size_t t) const;
  // Throws std::invalid_argument when the block vanishes and v is odd.
  void set_entry(std::size_t s, std::size_t t, int v);

  bool is_zero() const;
  bool operator==(const GradedMorphism& o) const;

 private:
  GradedBarcode source_, target_;
  std::vector<BarRef> src_, tgt_;
  std::vector<unsigned char> e_;  // src x tgt, row-major by source index
};

GradedMorphism identity_morphism(const GradedBarcode& f);

/// v after u; requires u.target() == v.source(). Hom-Hom products follow
/// the interval overlap rule, mixed Hom/Ext products are evaluated at chain
/// level on a common refinement, and Ext-Ext products land in Ext^2 = 0.
GradedMorphism compose(const GradedMorphism& u, const GradedMorphism& v);

/// The functor K_k * (-) on morphisms, for k.a >= 0: every bar transports
/// to at most one bar, and each block scalar is carried to the transported
/// block whenever that block is nonzero.
GradedMorphism convolve(const Kernel& k, const GradedMorphism& u);

/// Canonical comparison morphism convolve(K_a, f) -> convolve(K_b, f) for
/// a >= b >= 0: the restriction map K_a -> K_b convolved with the identity
/// of f. Satisfies chi(c, b, f) after chi(b, a, f) = chi(c, a, f), and
/// chi(a, a, f) is the identity.
GradedMorphism chi(const Rat& b, const Rat& a, const GradedBarcode& f);

/// A shift-a interleaving pair: f: K_a*F -> G and g: K_a*G -> F whose two
/// composites are the canonical comparison maps chi(0, 2a, .). Checked on
/// construction by the decision procedure.
struct InterleavingWitness {
  Rat a;
  GradedMorphism f, g;
};

struct IsoDecision {
  enum class Status { yes, no, indeterminate };
  Status status;
  std::optional<InterleavingWitness> witness;  // present iff status == yes
};

/// Decides whether f and g are a-interleaved, exactly, over F2. Pairs of
/// gamma barcodes reduce degreewise to a bipartite matching problem; any
/// other pair is decided by enumerating one morphism over its nonzero
/// blocks and solving the two composite constraints linearly for the
/// other. Instances whose total bar count exceeds exact_bound come back
/// indeterminate rather than approximated.
IsoDecision is_a_isomorphic(const GradedBarcode& f, const GradedBarcode& g, const Rat& a,
                            std::size_t exact_bound = 8);

/// Certified bracket around the interleaving distance. The decision is
/// monotone in the shift and piecewise constant between candidate shifts
/// (differences and half-differences of bar endpoints), so a failure at one
/// candidate pushes the lower bound to the next one; the upper bound is
/// always witnessed, and +inf when no candidate succeeds. exact means the
/// two bounds met.
struct DistanceBounds {
  ExtRat lower, upper;
  bool exact;
};
DistanceBounds distance_bounds(const GradedBarcode& f, const GradedBarcode& g);

}  // namespace gp
