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

#include <map>
#include <stdexcept>
#include <utility>

#include "gp/barcode.hpp"
#include "gp/matrix.hpp"

namespace gp {

// Morphism between barcodes, stored blockwise: entry (i, j) is the matrix of
// the component from bar i of the source to bar j of the target, of shape
// target_mult x source_mult. A block may be present only where the interval
// Hom space is nonzero; zero blocks are dropped, so equality of the block
// maps is equality of morphisms.
template <class K>
class BarcodeMorphism {
 public:
  BarcodeMorphism() = default;
  BarcodeMorphism(Barcode source, Barcode target)
      : source_(std::move(source)), target_(std::move(target)) {}

  static BarcodeMorphism identity(const Barcode& b) {
    BarcodeMorphism m(b, b);
    for (std::size_t i = 0; i < b.size(); ++i)
      m.set_block(i, i, Matrix<K>::identity(b.bars()[i].mult));
    return m;
  }

  const Barcode& source() const { return source_; }
  const Barcode& target() const { return target_; }
  const std::map<std::pair<std::size_t, std::size_t>, Matrix<K>>& blocks() const {
    return blocks_;
  }

  // Throws when the block shape is wrong or the interval Hom space vanishes.
  void set_block(std::size_t i, std::size_t j, Matrix<K> block) {
    const Interval& si = source_.bars().at(i).interval;
    const Interval& tj = target_.bars().at(j).interval;
    if (block.rows() != target_.bars()[j].mult || block.cols() != source_.bars()[i].mult)
      throw std::invalid_argument("morphism block shape mismatch");
    if (block.is_zero()) {
      blocks_.erase({i, j});
      return;
    }
    if (hom_dim(si, tj) == 0)
      throw std::invalid_argument("nonzero block where Hom(" + si.to_string() + ", " +
                                  tj.to_string() + ") = 0");
    blocks_[{i, j}] = std::move(block);
  }

  const Matrix<K>* block(std::size_t i, std::size_t j) const {
    auto it = blocks_.find({i, j});
    return it == blocks_.end() ? nullptr : &it->second;
  }

  bool is_zero() const { return blocks_.empty(); }

  bool operator==(const BarcodeMorphism&) const = default;

 private:
  Barcode source_, target_;
  std::map<std::pair<std::size_t, std::size_t>, Matrix<K>> blocks_;
};

// Diagrammatic composition: first u, then v. Blockwise sum over the middle
// index; a composite block survives only where the source-to-final Hom space
// is nonzero. For intervals, composing canonical generators across a middle
// interval never vanishes when that Hom space is nonzero, so gating by the
// target Hom space computes the true composition.
template <class K>
BarcodeMorphism<K> compose(const BarcodeMorphism<K>& u, const BarcodeMorphism<K>& v) {
  if (!(u.target() == v.source())) throw std::invalid_argument("compose: shape mismatch");
  BarcodeMorphism<K> out(u.source(), v.target());
  for (std::size_t i = 0; i < u.source().size(); ++i) {
    for (std::size_t k = 0; k < v.target().size(); ++k) {
      if (hom_dim(u.source().bars()[i].interval, v.target().bars()[k].interval) == 0) continue;
      Matrix<K> acc(v.target().bars()[k].mult, u.source().bars()[i].mult);
      bool any = false;
      for (std::size_t j = 0; j < u.target().size(); ++j) {
        const Matrix<K>* a = u.block(i, j);
        const Matrix<K>* b = v.block(j, k);
        if (!a || !b) continue;
        acc = acc + (*b) * (*a);
        any = true;
      }
      if (any && !acc.is_zero()) out.set_block(i, k, std::move(acc));
    }
  }
  return out;
}

}  // namespace gp
