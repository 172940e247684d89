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

#include "ldpb/learners.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ldpb/errors.hpp"

namespace ldpb {

namespace {

constexpr double kUnitSlack = 1e-9;

void check_row_in_range(const EncodedDataset& data, std::size_t row) {
  if (row >= data.size()) {
    throw DomainError("sample index " + std::to_string(row) +
                      " out of range for dataset of size " +
                      std::to_string(data.size()));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Decision stumps.
// ---------------------------------------------------------------------------

CrossTableDiffs crosstable_diffs(const EncodedDataset& data,
                                 std::span<const std::size_t> rows,
                                 std::span<const double> weights,
                                 const Binarizer& binarizer) {
  if (data.dim == 0) throw DomainError("crosstable_diffs: empty dataset");
  CrossTableDiffs diffs(2 * data.dim, 0.0);
  for (std::size_t i : rows) {
    check_row_in_range(data, i);
    if (i >= weights.size()) {
      throw DomainError("crosstable_diffs: weight vector too short");
    }
    const int y = data.labels[i];
    if (y != 0 && y != 1) {
      throw DomainError("crosstable_diffs: labels must be binary");
    }
    const double signed_w = y == 0 ? weights[i] : -weights[i];
    const auto row = data.row(i);
    for (std::size_t j = 0; j < data.dim; ++j) {
      diffs[2 * j + (binarizer.branch(row[j]) ? 1 : 0)] += signed_w;
    }
  }
  return diffs;
}

CrossTableDiffs perturb_crosstable(const CrossTableDiffs& diffs,
                                   MechanismKind kind, PrivacyBudget eps,
                                   Rng& rng) {
  CrossTableDiffs clamped(diffs.size());
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    const double v = diffs[i];
    if (!(std::fabs(v) <= 1.0 + kUnitSlack)) {
      throw DomainError("perturb_crosstable: entry " + std::to_string(i) +
                        " is outside [-1, 1]");
    }
    clamped[i] = std::min(1.0, std::max(-1.0, v));
  }
  return perturb(kind, clamped, eps, rng);
}

std::vector<double> attribute_scores(const CrossTableDiffs& diffs) {
  if (diffs.empty() || diffs.size() % 2 != 0) {
    throw DomainError("attribute_scores: diffs must hold two entries per attribute");
  }
  std::vector<double> scores(diffs.size() / 2);
  for (std::size_t j = 0; j < scores.size(); ++j) {
    scores[j] = std::fabs(diffs[2 * j]) + std::fabs(diffs[2 * j + 1]);
  }
  return scores;
}

std::size_t choose_best_attribute(const CrossTableDiffs& diffs) {
  const auto scores = attribute_scores(diffs);
  std::size_t best = 0;
  for (std::size_t j = 1; j < scores.size(); ++j) {
    if (scores[j] > scores[best]) best = j;
  }
  return best;
}

std::vector<std::size_t> rank_attributes(const CrossTableDiffs& diffs) {
  const auto scores = attribute_scores(diffs);
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return scores[a] > scores[b];
                   });
  return order;
}

Stump stump_from_diffs(const CrossTableDiffs& diffs) {
  Stump stump;
  stump.attribute = choose_best_attribute(diffs);
  stump.label_low = diffs[2 * stump.attribute] >= 0.0 ? 0 : 1;
  stump.label_high = diffs[2 * stump.attribute + 1] >= 0.0 ? 0 : 1;
  return stump;
}

int stump_predict(const Stump& stump, std::span<const double> row,
                  const Binarizer& binarizer) {
  if (stump.attribute >= row.size()) {
    throw DomainError("stump_predict: attribute index out of range");
  }
  return binarizer.branch(row[stump.attribute]) ? stump.label_high
                                                : stump.label_low;
}

// ---------------------------------------------------------------------------
// Nearest-centroid classifier.
// ---------------------------------------------------------------------------

WeightedShare weighted_sample_share(std::span<const double> row, int label,
                                    double relevance) {
  if (!(relevance >= 0.0 && relevance <= 1.0)) {
    throw DomainError("weighted_sample_share: relevance must lie in [0, 1]");
  }
  if (label < 0) throw DomainError("weighted_sample_share: negative label");
  WeightedShare share;
  share.label = label;
  share.value.resize(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (!(std::fabs(row[j]) <= 1.0 + kUnitSlack)) {
      throw DomainError("weighted_sample_share: attribute outside [-1, 1]");
    }
    share.value[j] = relevance * std::min(1.0, std::max(-1.0, row[j]));
  }
  return share;
}

CentroidModel fit_centroids(std::span<const WeightedShare> shares,
                            std::size_t dim, int class_count) {
  if (dim == 0 || class_count < 2) {
    throw DomainError("fit_centroids: need dim >= 1 and class_count >= 2");
  }
  CentroidModel model;
  model.dim = dim;
  model.class_count = class_count;
  model.centroids.assign(static_cast<std::size_t>(class_count) * dim, 0.0);
  model.counts.assign(static_cast<std::size_t>(class_count), 0);
  for (const auto& share : shares) {
    if (share.value.size() != dim) {
      throw DomainError("fit_centroids: share has wrong dimension");
    }
    if (share.label < 0 || share.label >= class_count) {
      throw DomainError("fit_centroids: label out of range");
    }
    const std::size_t base = static_cast<std::size_t>(share.label) * dim;
    for (std::size_t j = 0; j < dim; ++j) {
      model.centroids[base + j] += share.value[j];
    }
    ++model.counts[static_cast<std::size_t>(share.label)];
  }
  for (int c = 0; c < class_count; ++c) {
    const std::size_t n = model.counts[static_cast<std::size_t>(c)];
    if (n == 0) continue;
    const std::size_t base = static_cast<std::size_t>(c) * dim;
    for (std::size_t j = 0; j < dim; ++j) {
      model.centroids[base + j] /= static_cast<double>(n);
    }
  }
  return model;
}

int ncc_predict(const CentroidModel& model, std::span<const double> row,
                int norm_order) {
  if (row.size() != model.dim) {
    throw DomainError("ncc_predict: row has wrong dimension");
  }
  if (norm_order < 1) throw DomainError("ncc_predict: norm order must be >= 1");
  int best = -1;
  double best_dist = 0.0;
  for (int c = 0; c < model.class_count; ++c) {
    if (model.counts[static_cast<std::size_t>(c)] == 0) continue;
    const std::size_t base = static_cast<std::size_t>(c) * model.dim;
    double dist = 0.0;
    for (std::size_t j = 0; j < model.dim; ++j) {
      const double gap = std::fabs(model.centroids[base + j] - row[j]);
      dist += norm_order == 1   ? gap
              : norm_order == 2 ? gap * gap
                                : std::pow(gap, norm_order);
    }
    if (best < 0 || dist < best_dist) {
      best = c;
      best_dist = dist;
    }
  }
  if (best < 0) throw DomainError("ncc_predict: no class has any share");
  return best;
}

// ---------------------------------------------------------------------------
// Multinomial linear classifier.
// ---------------------------------------------------------------------------

namespace {

std::size_t param_count(std::size_t dim, int class_count) {
  return static_cast<std::size_t>(class_count) * (dim + 1);
}

// Class scores for one row; softmax shifts by the max for stability.
void class_probabilities(const LinearModel& model, std::span<const double> row,
                         std::vector<double>& probs) {
  const std::size_t stride = model.dim + 1;
  probs.resize(static_cast<std::size_t>(model.class_count));
  double max_score = -1e308;
  for (int c = 0; c < model.class_count; ++c) {
    const double* p = model.params.data() + static_cast<std::size_t>(c) * stride;
    double score = p[model.dim];
    for (std::size_t j = 0; j < model.dim; ++j) score += p[j] * row[j];
    probs[static_cast<std::size_t>(c)] = score;
    max_score = std::max(max_score, score);
  }
  double total = 0.0;
  for (double& v : probs) {
    v = std::exp(v - max_score);
    total += v;
  }
  for (double& v : probs) v /= total;
}

}  // namespace

double logistic_loss_and_grad(const LinearModel& model,
                              const EncodedDataset& data,
                              std::span<const std::size_t> rows,
                              std::span<const double> weights,
                              std::vector<double>* grad) {
  if (model.params.size() != param_count(model.dim, model.class_count)) {
    throw DomainError("logistic_loss_and_grad: parameter vector has wrong size");
  }
  if (data.dim != model.dim) {
    throw DomainError("logistic_loss_and_grad: dataset dimension mismatch");
  }
  if (rows.empty()) throw DomainError("logistic_loss_and_grad: no rows");
  if (grad) grad->assign(model.params.size(), 0.0);

  const std::size_t stride = model.dim + 1;
  double total_weight = 0.0;
  double loss = 0.0;
  std::vector<double> probs;
  for (std::size_t i : rows) {
    check_row_in_range(data, i);
    if (i >= weights.size()) {
      throw DomainError("logistic_loss_and_grad: weight vector too short");
    }
    const double w = weights[i];
    if (!(w >= 0.0)) {
      throw DomainError("logistic_loss_and_grad: weights must be >= 0");
    }
    total_weight += w;
    const int y = data.labels[i];
    if (y < 0 || y >= model.class_count) {
      throw DomainError("logistic_loss_and_grad: label out of range");
    }
    const auto row = data.row(i);
    class_probabilities(model, row, probs);
    loss -= w * std::log(std::max(probs[static_cast<std::size_t>(y)], 1e-300));
    if (!grad) continue;
    for (int c = 0; c < model.class_count; ++c) {
      const double delta =
          w * (probs[static_cast<std::size_t>(c)] - (c == y ? 1.0 : 0.0));
      double* g = grad->data() + static_cast<std::size_t>(c) * stride;
      for (std::size_t j = 0; j < model.dim; ++j) g[j] += delta * row[j];
      g[model.dim] += delta;
    }
  }
  if (!(total_weight > 0.0)) {
    throw DomainError("logistic_loss_and_grad: total weight must be positive");
  }
  if (grad) {
    for (double& g : *grad) g /= total_weight;
  }
  return loss / total_weight;
}

LinearModel fit_local_linear(const EncodedDataset& data,
                             std::span<const std::size_t> rows,
                             std::span<const double> weights, int class_count,
                             const LrConfig& config) {
  if (class_count < 2) throw DomainError("fit_local_linear: class_count < 2");
  LinearModel model;
  model.dim = data.dim;
  model.class_count = class_count;
  model.params.assign(param_count(data.dim, class_count), 0.0);
  std::vector<double> grad;
  for (std::size_t it = 0; it < config.iterations; ++it) {
    logistic_loss_and_grad(model, data, rows, weights, &grad);
    for (std::size_t k = 0; k < model.params.size(); ++k) {
      model.params[k] -= config.step * grad[k];
    }
  }
  return model;
}

std::vector<double> linear_share(const LinearModel& model, double clip_bound) {
  if (!(clip_bound > 0.0) || !std::isfinite(clip_bound)) {
    throw DomainError("linear_share: clip bound must be positive and finite");
  }
  std::vector<double> share(model.params.size());
  for (std::size_t k = 0; k < model.params.size(); ++k) {
    const double clipped =
        std::min(clip_bound, std::max(-clip_bound, model.params[k]));
    share[k] = scale_to_unit(clipped, clip_bound);
  }
  return share;
}

LinearModel aggregate_linear(std::span<const std::vector<double>> shares,
                             double clip_bound, std::size_t dim,
                             int class_count) {
  if (shares.empty()) throw DomainError("aggregate_linear: no shares");
  const std::size_t expected = param_count(dim, class_count);
  LinearModel model;
  model.dim = dim;
  model.class_count = class_count;
  model.params.assign(expected, 0.0);
  for (const auto& share : shares) {
    if (share.size() != expected) {
      throw DomainError("aggregate_linear: share has wrong size");
    }
    for (std::size_t k = 0; k < expected; ++k) model.params[k] += share[k];
  }
  for (double& p : model.params) {
    p = unscale(p / static_cast<double>(shares.size()), clip_bound);
  }
  return model;
}

int linear_predict(const LinearModel& model, std::span<const double> row) {
  if (row.size() != model.dim) {
    throw DomainError("linear_predict: row has wrong dimension");
  }
  const std::size_t stride = model.dim + 1;
  int best = 0;
  double best_score = -1e308;
  for (int c = 0; c < model.class_count; ++c) {
    const double* p = model.params.data() + static_cast<std::size_t>(c) * stride;
    double score = p[model.dim];
    for (std::size_t j = 0; j < model.dim; ++j) score += p[j] * row[j];
    if (score > best_score) {
      best = c;
      best_score = score;
    }
  }
  return best;
}

}  // namespace ldpb
