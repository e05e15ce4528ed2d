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


// Helpers shared by the unit tests. Reference computations use plain
// 128-bit arithmetic and std::set.

#ifndef AGECMPC_TESTS_TEST_SUPPORT_HPP
#define AGECMPC_TESTS_TEST_SUPPORT_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "agecmpc/agecmpc.hpp"

namespace agecmpc::testing {

inline std::uint64_t ref_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t ref_pow(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  for (std::uint64_t i = 0; i < e; ++i) r = ref_mul(r, b, p);
  return r;
}

/// Schoolbook A^T B entry by entry.
inline BlockMatrix ref_atb(const BlockMatrix& a, const BlockMatrix& b, std::uint64_t p) {
  BlockMatrix y(a.cols(), b.cols());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      unsigned __int128 acc = 0;
      for (std::size_t k = 0; k < a.rows(); ++k) acc = (acc + ref_mul(a(k, i).v, b(k, j).v, p)) % p;
      y(i, j) = Fe(static_cast<std::uint64_t>(acc));
    }
  return y;
}

inline std::set<Exponent> ref_sumset(const PowerSet& x, const PowerSet& y) {
  std::set<Exponent> out;
  for (Exponent a : x)
    for (Exponent b : y) out.insert(a + b);
  return out;
}

/// Code of the Error thrown by `fn`, or nullopt when it returns normally.
template <class Fn>
std::optional<ErrorCode> error_code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline std::set<Exponent> as_set(const PowerSet& x) { return {x.begin(), x.end()}; }

inline BlockMatrix random_matrix(const PrimeField& f, std::size_t rows, std::size_t cols, std::uint64_t seed) {
  CounterRng rng(seed, stream_id(Stream::kInputs));
  return rng.uniform_block(f, rows, cols);
}

}  // namespace agecmpc::testing

#endif  // AGECMPC_TESTS_TEST_SUPPORT_HPP
