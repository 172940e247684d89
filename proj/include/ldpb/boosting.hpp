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

#ifndef LDPB_BOOSTING_HPP_
#define LDPB_BOOSTING_HPP_

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ldpb/data.hpp"
#include "ldpb/learners.hpp"

namespace ldpb {

inline constexpr std::size_t kAllMembers =
    std::numeric_limits<std::size_t>::max();

// Everything a fitted base model needs at prediction time beyond its own
// parameters: the attribute binarization used by stumps and the distance
// order used by centroid models.
struct PredictContext {
  Binarizer binarizer;
  int norm_order = 2;
};

using BaseModel = std::variant<Stump, CentroidModel, LinearModel>;

int predict_base(const BaseModel& model, std::span<const double> row,
                 const PredictContext& context);

struct WeightedMember {
  BaseModel model;
  double alpha = 0.0;
};

struct Ensemble {
  int class_count = 2;
  PredictContext context;
  std::vector<WeightedMember> members;
};

// Weighted plurality vote over the first `prefix` members (all by default).
// Ties go to the lowest class.
int ensemble_predict(const Ensemble& ensemble, std::span<const double> row,
                     std::size_t prefix = kAllMembers);

double evaluate_accuracy(const Ensemble& ensemble, const EncodedDataset& data,
                         std::size_t prefix = kAllMembers);

// Uniform starting distribution: every sample carries 1/n.
std::vector<double> init_weights(std::size_t n);

// Stage weight for a base model with the given weighted error under
// `class_count` classes. The error is clamped away from 0 and 1 before the
// log; the result can still be negative (worse than chance) and callers
// decide how to react.
double alpha_from_error(double error, int class_count);

// A weighted-error numerator/denominator pair, summable across owners.
struct ErrorStat {
  double error_mass = 0.0;   // sum of weights on misclassified samples
  double weight_mass = 0.0;  // sum of all weights in scope
};

ErrorStat weighted_error_local(const BaseModel& model,
                               const PredictContext& context,
                               const EncodedDataset& data,
                               std::span<const std::size_t> rows,
                               std::span<const double> weights);

// Multiplies the weight of every misclassified sample in `rows` by
// exp(alpha) and returns the new total weight over those rows. The caller
// renormalizes once the global total is known.
double boost_weights_local(std::vector<double>& weights,
                           const EncodedDataset& data,
                           std::span<const std::size_t> rows,
                           const BaseModel& model,
                           const PredictContext& context, double alpha);

void scale_weights(std::vector<double>& weights,
                   std::span<const std::size_t> rows, double factor);

// ---------------------------------------------------------------------------
// Pooled single-round fits. The centralized trainer and the non-private
// federated path share these so their members agree bit for bit.
// ---------------------------------------------------------------------------

Stump fit_stump_pooled(const EncodedDataset& data,
                       std::span<const std::size_t> rows,
                       std::span<const double> weights,
                       const Binarizer& binarizer);

// Centroids from relevance-weighted samples: each row contributes
// min(1, total_count * w_i) * x_i toward its class mean, where total_count
// is the global training size (so a uniform distribution contributes the
// plain per-class means).
CentroidModel fit_centroids_pooled(const EncodedDataset& data,
                                   std::span<const std::size_t> rows,
                                   std::span<const double> weights,
                                   std::size_t total_count, int class_count);

LinearModel fit_linear_pooled(const EncodedDataset& data,
                              std::span<const std::size_t> rows,
                              std::span<const double> weights, int class_count,
                              const LrConfig& config);

// ---------------------------------------------------------------------------
// Centralized boosting over pooled data — the reference the federated
// non-private mode must reproduce exactly.
// ---------------------------------------------------------------------------

enum class LearnerKind { kStump, kCentroid, kLinear };

LearnerKind learner_from_name(const std::string& name);
std::string learner_name(LearnerKind kind);

struct RoundSummary {
  std::size_t round = 0;   // 1-based
  double error = 0.0;      // weighted error before clamping
  double alpha = 0.0;      // stage weight actually applied (>= 0)
  bool alpha_clipped = false;
};

struct CentralizedConfig {
  LearnerKind learner = LearnerKind::kStump;
  std::size_t rounds = 1;
  PredictContext context;
  LrConfig lr;
  // When true, a base model no better than chance aborts the run instead of
  // entering with zero stage weight.
  bool strict_alpha = false;
};

struct CentralizedRun {
  Ensemble ensemble;
  std::vector<RoundSummary> rounds;
};

CentralizedRun fit_samme(const EncodedDataset& data,
                         const CentralizedConfig& config);

}  // namespace ldpb

#endif  // LDPB_BOOSTING_HPP_
