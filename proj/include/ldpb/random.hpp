// Copyright 2026 The ldpboost Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LDPB_RANDOM_HPP_
#define LDPB_RANDOM_HPP_

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace ldpb {

// Deterministic uniform source. Every sampler in the library is built on the
// raw mt19937_64 stream because the distribution adaptors in <random> are not
// pinned by the standard; this keeps results bit-identical across platforms
// and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1); safe to feed inverse CDFs that diverge at 0 or 1.
  double uniform_open() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  bool bernoulli(double p) { return uniform() < p; }

  // Unbiased integer on [0, n); consumes nothing when n <= 1 so degenerate
  // choices do not perturb the stream.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    std::uint64_t r = engine_();
    while (r < threshold) r = engine_();
    return r % n;
  }

 private:
  std::mt19937_64 engine_;
};

// Folds extra words into a master seed (splitmix64 finisher per word) so
// every owner/round/session gets an independent, reproducible stream.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                          std::uint64_t b = 0, std::uint64_t c = 0);

// Fisher-Yates; std::shuffle is implementation-defined and would break the
// cross-platform determinism contract.
template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(items[i - 1], items[j]);
  }
}

// k distinct indices drawn uniformly from {0, .., n-1}, in draw order.
std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                    std::size_t k, Rng& rng);

// Standard normal via Box-Muller on the deterministic uniform stream.
double standard_normal(Rng& rng);

}  // namespace ldpb

#endif  // LDPB_RANDOM_HPP_
