// Copyright 2026 The agecmpc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AGECMPC_POWER_SET_HPP
#define AGECMPC_POWER_SET_HPP

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace agecmpc {

using Exponent = std::int64_t;

/// Sorted, duplicate-free set of non-negative polynomial exponents.
class PowerSet {
 public:
  struct Run {
    Exponent first;
    Exponent last;  // inclusive
    friend bool operator==(const Run&, const Run&) = default;
  };

  PowerSet() = default;
  PowerSet(std::initializer_list<Exponent> xs) : PowerSet(std::vector<Exponent>(xs)) {}
  explicit PowerSet(std::vector<Exponent> xs) : elems_(std::move(xs)) { normalize(); }

  /// {first, ..., last}; empty when last < first.
  static PowerSet interval(Exponent first, Exponent last) {
    PowerSet out;
    for (Exponent e = first; e <= last; ++e) out.elems_.push_back(e);
    return out;
  }

  void insert(Exponent e) {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), e);
    if (it == elems_.end() || *it != e) elems_.insert(it, e);
  }

  bool contains(Exponent e) const { return std::binary_search(elems_.begin(), elems_.end(), e); }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  Exponent min() const { return elems_.front(); }
  Exponent max() const { return elems_.back(); }
  Exponent operator[](std::size_t i) const { return elems_[i]; }
  const std::vector<Exponent>& elements() const { return elems_; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  /// Position of `e` in ascending order, or size() when absent.
  std::size_t index_of(Exponent e) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), e);
    if (it == elems_.end() || *it != e) return elems_.size();
    return static_cast<std::size_t>(it - elems_.begin());
  }

  PowerSet set_union(const PowerSet& other) const {
    std::vector<Exponent> out;
    out.reserve(elems_.size() + other.elems_.size());
    std::set_union(elems_.begin(), elems_.end(), other.begin(), other.end(),
                   std::back_inserter(out));
    PowerSet r;
    r.elems_ = std::move(out);
    return r;
  }

  PowerSet intersection(const PowerSet& other) const {
    std::vector<Exponent> out;
    std::set_intersection(elems_.begin(), elems_.end(), other.begin(), other.end(),
                          std::back_inserter(out));
    PowerSet r;
    r.elems_ = std::move(out);
    return r;
  }

  bool disjoint(const PowerSet& other) const { return intersection(other).empty(); }

  bool subset_of(const PowerSet& other) const {
    return std::includes(other.begin(), other.end(), elems_.begin(), elems_.end());
  }

  /// Minkowski sum {a + b : a in this, b in other}.
  PowerSet sumset(const PowerSet& other) const {
    if (empty() || other.empty()) return {};
    const Exponent lo = min() + other.min();
    std::vector<char> hit(static_cast<std::size_t>(max() + other.max() - lo + 1), 0);
    for (Exponent a : elems_)
      for (Exponent b : other.elems_) hit[static_cast<std::size_t>(a + b - lo)] = 1;
    PowerSet r;
    for (std::size_t i = 0; i < hit.size(); ++i)
      if (hit[i]) r.elems_.push_back(lo + static_cast<Exponent>(i));
    return r;
  }

  /// Maximal runs of consecutive exponents, ascending.
  std::vector<Run> runs() const {
    std::vector<Run> out;
    for (Exponent e : elems_) {
      if (!out.empty() && out.back().last + 1 == e) {
        out.back().last = e;
      } else {
        out.push_back({e, e});
      }
    }
    return out;
  }

  /// Compact text form, e.g. "{0..14,16..18}".
  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (const Run& r : runs()) {
      if (!first) s += ",";
      first = false;
      s += std::to_string(r.first);
      if (r.last != r.first) s += ".." + std::to_string(r.last);
    }
    return s + "}";
  }

  friend bool operator==(const PowerSet&, const PowerSet&) = default;

 private:
  void normalize() {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  }

  std::vector<Exponent> elems_;
};

}  // namespace agecmpc

#endif  // AGECMPC_POWER_SET_HPP
