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

#ifndef LDPB_AGGREGATE_HPP_
#define LDPB_AGGREGATE_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace ldpb {

struct MeanEstimate {
  std::vector<double> value;
  std::size_t count = 0;
};

// Coordinate-wise mean of equally sized records. Empty input or ragged
// records raise DomainError.
MeanEstimate estimate_mean(std::span<const std::vector<double>> records);

// Mean over coordinates of the squared estimate-vs-truth difference.
double mse(std::span<const double> estimate, std::span<const double> truth);

struct HittingRateReport {
  std::size_t k = 0;
  double rate = 0.0;
  std::size_t runs = 0;
};

// Fraction of chosen attribute ids that land in the first k entries of the
// noise-free ranking (ranking is best-first). k must be in [1, ranked size].
HittingRateReport top_k_hitting_rate(std::span<const std::size_t> ranked,
                                     std::span<const std::size_t> chosen,
                                     std::size_t k);

}  // namespace ldpb

#endif  // LDPB_AGGREGATE_HPP_
