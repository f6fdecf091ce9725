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

#include "gp/barcode.hpp"

#include <algorithm>
#include <stdexcept>

namespace gp {

Barcode::Barcode(std::vector<Bar> bars) : bars_(std::move(bars)) { canonicalize(); }

void Barcode::add(const Interval& i, std::uint64_t mult) {
  if (mult == 0) return;
  bars_.push_back(Bar{i, mult});
  canonicalize();
}

void Barcode::canonicalize() {
  std::sort(bars_.begin(), bars_.end(),
            [](const Bar& a, const Bar& b) { return a.interval < b.interval; });
  std::vector<Bar> merged;
  for (const Bar& b : bars_) {
    if (b.mult == 0) continue;
    if (!merged.empty() && merged.back().interval == b.interval)
      merged.back().mult += b.mult;
    else
      merged.push_back(b);
  }
  bars_ = std::move(merged);
}

std::uint64_t Barcode::total_mult() const {
  std::uint64_t n = 0;
  for (const Bar& b : bars_) n += b.mult;
  return n;
}

bool Barcode::is_gamma_barcode() const {
  for (const Bar& b : bars_)
    if (!b.interval.is_gamma_bar()) return false;
  return true;
}

std::string Barcode::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < bars_.size(); ++i) {
    if (i) s += ", ";
    s += bars_[i].interval.to_string();
    if (bars_[i].mult != 1) s += "x" + std::to_string(bars_[i].mult);
  }
  return s + "}";
}

std::uint64_t psi_stalk_rank(const Barcode& b, const Rat& x, StalkSide side) {
  ExtRat ex(x);
  std::uint64_t n = 0;
  for (const Barcode::Bar& bar : b.bars()) {
    const Interval& i = bar.interval;
    bool hit = false;
    switch (side) {
      case StalkSide::at:
        hit = i.contains(ex);
        break;
      case StalkSide::left_limit:
        hit = i.lower() < ex && ex <= i.upper();
        break;
      case StalkSide::right_limit:
        hit = i.lower() <= ex && ex < i.upper();
        break;
    }
    if (hit) n += bar.mult;
  }
  return n;
}

Barcode direct_sum(const Barcode& a, const Barcode& b) {
  std::vector<Barcode::Bar> all = a.bars();
  all.insert(all.end(), b.bars().begin(), b.bars().end());
  return Barcode(std::move(all));
}

GradedBarcode::GradedBarcode(std::map<int, Barcode> components)
    : components_(std::move(components)) {
  for (auto it = components_.begin(); it != components_.end();)
    it = it->second.empty() ? components_.erase(it) : std::next(it);
}

GradedBarcode GradedBarcode::single(const Interval& i, int degree, std::uint64_t mult) {
  GradedBarcode g;
  g.add(degree, i, mult);
  return g;
}

void GradedBarcode::add(int degree, const Interval& i, std::uint64_t mult) {
  if (mult == 0) return;
  components_[degree].add(i, mult);
}

const Barcode& GradedBarcode::at(int degree) const {
  static const Barcode kEmpty;
  auto it = components_.find(degree);
  return it == components_.end() ? kEmpty : it->second;
}

std::uint64_t GradedBarcode::total_mult() const {
  std::uint64_t n = 0;
  for (const auto& [d, bc] : components_) n += bc.total_mult();
  return n;
}

bool GradedBarcode::is_gamma_barcode() const {
  for (const auto& [d, bc] : components_)
    if (!bc.is_gamma_barcode()) return false;
  return true;
}

GradedBarcode GradedBarcode::shifted(int k) const {
  std::map<int, Barcode> out;
  for (const auto& [d, bc] : components_) out[d - k] = bc;
  return GradedBarcode(std::move(out));
}

std::string GradedBarcode::to_string() const {
  if (components_.empty()) return "0";
  std::string s;
  for (const auto& [d, bc] : components_) {
    if (!s.empty()) s += " ";
    s += "deg " + std::to_string(d) + ": " + bc.to_string();
  }
  return s;
}

GradedBarcode direct_sum(const GradedBarcode& a, const GradedBarcode& b) {
  GradedBarcode out = a;
  for (const auto& [d, bc] : b.components())
    for (const Barcode::Bar& bar : bc.bars()) out.add(d, bar.interval, bar.mult);
  return out;
}

GradedBarcode tensor(const GradedBarcode& f, const GradedBarcode& g) {
  GradedBarcode out;
  for (const auto& [p, fb] : f.components())
    for (const auto& [q, gb] : g.components())
      for (const Barcode::Bar& a : fb.bars())
        for (const Barcode::Bar& b : gb.bars())
          if (auto meet = a.interval.intersect(b.interval))
            out.add(p + q, *meet, a.mult * b.mult);
  return out;
}

}  // namespace gp
