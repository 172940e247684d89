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

#include "ldpb/boosting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ldpb/errors.hpp"

namespace ldpb {

namespace {

constexpr double kErrorFloor = 1e-10;

struct BasePredictor {
  std::span<const double> row;
  const PredictContext& context;
  int operator()(const Stump& s) const {
    return stump_predict(s, row, context.binarizer);
  }
  int operator()(const CentroidModel& m) const {
    return ncc_predict(m, row, context.norm_order);
  }
  int operator()(const LinearModel& m) const { return linear_predict(m, row); }
};

}  // namespace

int predict_base(const BaseModel& model, std::span<const double> row,
                 const PredictContext& context) {
  return std::visit(BasePredictor{row, context}, model);
}

int ensemble_predict(const Ensemble& ensemble, std::span<const double> row,
                     std::size_t prefix) {
  const std::size_t used = std::min(prefix, ensemble.members.size());
  if (used == 0) throw DomainError("ensemble_predict: no members to vote");
  std::vector<double> votes(static_cast<std::size_t>(ensemble.class_count),
                            0.0);
  for (std::size_t m = 0; m < used; ++m) {
    const auto& member = ensemble.members[m];
    const int cls = predict_base(member.model, row, ensemble.context);
    if (cls < 0 || cls >= ensemble.class_count) {
      throw DomainError("ensemble_predict: member voted outside class range");
    }
    votes[static_cast<std::size_t>(cls)] += member.alpha;
  }
  int best = 0;
  for (int c = 1; c < ensemble.class_count; ++c) {
    if (votes[static_cast<std::size_t>(c)] >
        votes[static_cast<std::size_t>(best)]) {
      best = c;
    }
  }
  return best;
}

double evaluate_accuracy(const Ensemble& ensemble, const EncodedDataset& data,
                         std::size_t prefix) {
  if (data.size() == 0) throw DomainError("evaluate_accuracy: empty dataset");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (ensemble_predict(ensemble, data.row(i), prefix) == data.labels[i]) {
      ++correct;
    }
  }
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

std::vector<double> init_weights(std::size_t n) {
  if (n == 0) throw DomainError("init_weights: empty dataset");
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

double alpha_from_error(double error, int class_count) {
  if (class_count < 2) throw DomainError("alpha_from_error: class_count < 2");
  if (!std::isfinite(error) || error < 0.0 || error > 1.0) {
    throw DomainError("alpha_from_error: error must lie in [0, 1]");
  }
  const double e = std::min(1.0 - kErrorFloor, std::max(kErrorFloor, error));
  return std::log((1.0 - e) / e) +
         std::log(static_cast<double>(class_count - 1));
}

ErrorStat weighted_error_local(const BaseModel& model,
                               const PredictContext& context,
                               const EncodedDataset& data,
                               std::span<const std::size_t> rows,
                               std::span<const double> weights) {
  ErrorStat stat;
  for (std::size_t i : rows) {
    if (i >= data.size() || i >= weights.size()) {
      throw DomainError("weighted_error_local: row index out of range");
    }
    stat.weight_mass += weights[i];
    if (predict_base(model, data.row(i), context) != data.labels[i]) {
      stat.error_mass += weights[i];
    }
  }
  return stat;
}

double boost_weights_local(std::vector<double>& weights,
                           const EncodedDataset& data,
                           std::span<const std::size_t> rows,
                           const BaseModel& model,
                           const PredictContext& context, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw DomainError("boost_weights_local: alpha must be finite and >= 0");
  }
  const double bump = std::exp(alpha);
  double total = 0.0;
  for (std::size_t i : rows) {
    if (i >= data.size() || i >= weights.size()) {
      throw DomainError("boost_weights_local: row index out of range");
    }
    if (predict_base(model, data.row(i), context) != data.labels[i]) {
      weights[i] *= bump;
    }
    total += weights[i];
  }
  return total;
}

void scale_weights(std::vector<double>& weights,
                   std::span<const std::size_t> rows, double factor) {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw DomainError("scale_weights: factor must be positive and finite");
  }
  for (std::size_t i : rows) {
    if (i >= weights.size()) {
      throw DomainError("scale_weights: row index out of range");
    }
    weights[i] *= factor;
  }
}

// ---------------------------------------------------------------------------
// Pooled single-round fits.
// ---------------------------------------------------------------------------

Stump fit_stump_pooled(const EncodedDataset& data,
                       std::span<const std::size_t> rows,
                       std::span<const double> weights,
                       const Binarizer& binarizer) {
  return stump_from_diffs(crosstable_diffs(data, rows, weights, binarizer));
}

CentroidModel fit_centroids_pooled(const EncodedDataset& data,
                                   std::span<const std::size_t> rows,
                                   std::span<const double> weights,
                                   std::size_t total_count, int class_count) {
  if (total_count == 0) {
    throw DomainError("fit_centroids_pooled: total_count must be positive");
  }
  std::vector<WeightedShare> shares;
  shares.reserve(rows.size());
  const double scale = static_cast<double>(total_count);
  for (std::size_t i : rows) {
    if (i >= data.size() || i >= weights.size()) {
      throw DomainError("fit_centroids_pooled: row index out of range");
    }
    const double relevance = std::min(1.0, scale * weights[i]);
    shares.push_back(
        weighted_sample_share(data.row(i), data.labels[i], relevance));
  }
  return fit_centroids(shares, data.dim, class_count);
}

LinearModel fit_linear_pooled(const EncodedDataset& data,
                              std::span<const std::size_t> rows,
                              std::span<const double> weights, int class_count,
                              const LrConfig& config) {
  return fit_local_linear(data, rows, weights, class_count, config);
}

// ---------------------------------------------------------------------------
// Centralized boosting.
// ---------------------------------------------------------------------------

LearnerKind learner_from_name(const std::string& name) {
  if (name == "bdt") return LearnerKind::kStump;
  if (name == "ncc") return LearnerKind::kCentroid;
  if (name == "lr") return LearnerKind::kLinear;
  throw DomainError("unknown learner '" + name + "' (expected bdt, ncc, lr)");
}

std::string learner_name(LearnerKind kind) {
  switch (kind) {
    case LearnerKind::kStump:
      return "bdt";
    case LearnerKind::kCentroid:
      return "ncc";
    case LearnerKind::kLinear:
      return "lr";
  }
  throw DomainError("unknown learner kind");
}

CentralizedRun fit_samme(const EncodedDataset& data,
                         const CentralizedConfig& config) {
  if (config.rounds == 0) throw DomainError("fit_samme: rounds must be >= 1");
  const std::size_t n = data.size();
  std::vector<std::size_t> rows(n);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  std::vector<double> weights = init_weights(n);

  CentralizedRun run;
  run.ensemble.class_count = data.class_count;
  run.ensemble.context = config.context;

  for (std::size_t round = 1; round <= config.rounds; ++round) {
    BaseModel model;
    switch (config.learner) {
      case LearnerKind::kStump:
        model = fit_stump_pooled(data, rows, weights, config.context.binarizer);
        break;
      case LearnerKind::kCentroid:
        model = fit_centroids_pooled(data, rows, weights, n, data.class_count);
        break;
      case LearnerKind::kLinear:
        model = fit_linear_pooled(data, rows, weights, data.class_count,
                                  config.lr);
        break;
    }

    const ErrorStat stat =
        weighted_error_local(model, config.context, data, rows, weights);
    const double error = stat.error_mass / stat.weight_mass;
    double alpha = alpha_from_error(error, data.class_count);
    RoundSummary summary{round, error, alpha, false};
    if (alpha <= 0.0) {
      if (config.strict_alpha) {
        throw WeakLearnerError("round " + std::to_string(round) +
                               ": base model no better than chance (error " +
                               std::to_string(error) + ")");
      }
      alpha = 0.0;
      summary.alpha_clipped = true;
    }
    summary.alpha = alpha;

    const double total = boost_weights_local(weights, data, rows, model,
                                             config.context, alpha);
    scale_weights(weights, rows, 1.0 / total);

    run.ensemble.members.push_back(WeightedMember{std::move(model), alpha});
    run.rounds.push_back(summary);
  }
  return run;
}

}  // namespace ldpb
