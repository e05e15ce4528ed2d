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

#ifndef AGECMPC_RNG_HPP
#define AGECMPC_RNG_HPP

#include <cstdint>

#include "agecmpc/field.hpp"

namespace agecmpc {

/// Stable stream identifiers; each party draws from its own stream.
enum class Stream : std::uint64_t {
  kSourceA = 1,
  kSourceB = 2,
  kInputs = 3,
  kEvaluationPoints = 4,
  kSubsets = 5,
  kWorkerBase = 1000,  // worker n uses kWorkerBase + n
};

inline constexpr std::uint64_t stream_id(Stream s) { return static_cast<std::uint64_t>(s); }
inline constexpr std::uint64_t worker_stream(std::uint64_t n) { return stream_id(Stream::kWorkerBase) + n; }

/// Counter-based generator: output i of stream k under seed s is
/// splitmix64(s, k, i), so draws are independent of scheduling.
/// Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// Uniform draw from [0, bound) by rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x;
    do {
      x = (*this)();
    } while (x >= limit);
    return x % bound;
  }

  Fe uniform(const PrimeField& f) { return Fe(below(f.prime())); }

  BlockMatrix uniform_block(const PrimeField& f, std::size_t rows, std::size_t cols) {
    BlockMatrix m(rows, cols);
    for (Fe& x : m.data()) x = uniform(f);
    return m;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace agecmpc

#endif  // AGECMPC_RNG_HPP
