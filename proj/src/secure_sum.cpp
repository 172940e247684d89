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

#include "ldpb/secure_sum.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ldpb/errors.hpp"

namespace ldpb {

std::uint64_t FixedPoint::encode(double value) {
  if (!(std::fabs(value) < kMaxAbs)) {  // also rejects NaN
    throw FixedPointOverflow("fixed-point encode: |" + std::to_string(value) +
                             "| not below 2^42");
  }
  const double scaled = value * static_cast<double>(1u << kFractionBits);
  return static_cast<std::uint64_t>(static_cast<std::int64_t>(std::llround(scaled)));
}

double FixedPoint::decode(std::uint64_t raw) {
  return static_cast<double>(static_cast<std::int64_t>(raw)) * kStep;
}

double secure_sum(std::span<const double> values, Rng& rng,
                  std::vector<RingMessage>* trace, std::uint64_t session) {
  if (values.empty()) throw DomainError("secure_sum: no participants");
  const std::size_t n = values.size();

  std::vector<std::uint64_t> encoded(n), masks(n);
  __int128 exact = 0;
  for (std::size_t i = 0; i < n; ++i) {
    encoded[i] = FixedPoint::encode(values[i]);
    exact += static_cast<std::int64_t>(encoded[i]);
  }
  // The final carrier is only meaningful while the true total still fits in
  // the signed range; beyond that the decode would be silently wrong.
  if (exact > std::numeric_limits<std::int64_t>::max() ||
      exact < std::numeric_limits<std::int64_t>::min()) {
    throw FixedPointOverflow("secure_sum: total exceeds fixed-point headroom");
  }
  for (std::size_t i = 0; i < n; ++i) masks[i] = rng.next_u64();

  std::uint64_t carrier = 0;
  for (std::size_t i = 0; i < n; ++i) {
    carrier += encoded[i] + masks[i];
    if (trace) {
      trace->push_back(RingMessage{session, static_cast<std::uint32_t>(i), 1,
                                   carrier});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    carrier -= masks[i];
    if (trace) {
      trace->push_back(RingMessage{session, static_cast<std::uint32_t>(i), 2,
                                   carrier});
    }
  }
  return FixedPoint::decode(carrier);
}

}  // namespace ldpb
