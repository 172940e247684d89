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

#include "ldpb/aggregate.hpp"

#include <algorithm>

#include "ldpb/errors.hpp"

namespace ldpb {

MeanEstimate estimate_mean(std::span<const std::vector<double>> records) {
  if (records.empty()) throw DomainError("estimate_mean: no records");
  const std::size_t dim = records.front().size();
  if (dim == 0) throw DomainError("estimate_mean: zero-dimensional records");
  MeanEstimate out;
  out.value.assign(dim, 0.0);
  out.count = records.size();
  for (const auto& r : records) {
    if (r.size() != dim) {
      throw DomainError("estimate_mean: ragged record dimensions");
    }
    for (std::size_t j = 0; j < dim; ++j) out.value[j] += r[j];
  }
  for (double& v : out.value) v /= static_cast<double>(out.count);
  return out;
}

double mse(std::span<const double> estimate, std::span<const double> truth) {
  if (estimate.size() != truth.size() || estimate.empty()) {
    throw DomainError("mse: dimension mismatch or empty input");
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < estimate.size(); ++j) {
    const double d = estimate[j] - truth[j];
    acc += d * d;
  }
  return acc / static_cast<double>(estimate.size());
}

HittingRateReport top_k_hitting_rate(std::span<const std::size_t> ranked,
                                     std::span<const std::size_t> chosen,
                                     std::size_t k) {
  if (k == 0 || k > ranked.size()) {
    throw DomainError("top_k_hitting_rate: k outside [1, d]");
  }
  if (chosen.empty()) throw DomainError("top_k_hitting_rate: no runs");
  const auto top = ranked.first(k);
  std::size_t hits = 0;
  for (std::size_t c : chosen) {
    if (std::find(top.begin(), top.end(), c) != top.end()) ++hits;
  }
  return HittingRateReport{
      .k = k,
      .rate = static_cast<double>(hits) / static_cast<double>(chosen.size()),
      .runs = chosen.size(),
  };
}

}  // namespace ldpb
