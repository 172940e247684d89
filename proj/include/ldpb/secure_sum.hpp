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

#ifndef LDPB_SECURE_SUM_HPP_
#define LDPB_SECURE_SUM_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "ldpb/random.hpp"

namespace ldpb {

// Value encoding used on the masked ring: two's-complement fixed point kept
// in a uint64 so addition wraps modulo 2^64. 2^20 steps per unit leaves
// |value| < 2^42 of headroom before intermediate sums can overflow.
struct FixedPoint {
  static constexpr int kFractionBits = 20;
  static constexpr double kStep = 1.0 / static_cast<double>(1u << kFractionBits);
  static constexpr double kMaxAbs = 4398046511104.0;  // 2^42

  // Nearest-step rounding, |encode error| <= 2^-21. Values with
  // |value| >= 2^42 (and NaN) raise FixedPointOverflow.
  static std::uint64_t encode(double value);
  static double decode(std::uint64_t raw);
};

// One hop on the wire, as any observer of the link would see it.
struct RingMessage {
  std::uint64_t session;
  std::uint32_t hop;   // 0-based ring position of the sender
  std::uint8_t pass;   // 1 = masking pass, 2 = unmasking pass
  std::uint64_t carrier;
};

// Two-pass masked ring: every participant adds value+mask on the first pass
// and removes its mask on the second, so the final carrier is exactly the
// modular sum of the encoded inputs and no intermediate carrier reveals a
// partial sum. Masks are uniform over the full modulus. `trace`, when given,
// receives one entry per hop.
//
// Raises DomainError on an empty session and FixedPointOverflow if any input
// or the exact total falls outside the encoding's range.
double secure_sum(std::span<const double> values, Rng& rng,
                  std::vector<RingMessage>* trace = nullptr,
                  std::uint64_t session = 0);

}  // namespace ldpb

#endif  // LDPB_SECURE_SUM_HPP_
