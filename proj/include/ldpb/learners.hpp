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

#ifndef LDPB_LEARNERS_HPP_
#define LDPB_LEARNERS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "ldpb/data.hpp"
#include "ldpb/mechanisms.hpp"
#include "ldpb/random.hpp"

namespace ldpb {

// ---------------------------------------------------------------------------
// Decision stumps over binarized attributes.
// ---------------------------------------------------------------------------

// Maps a numeric attribute to one of two branches: false for values at or
// below the threshold, true above it. Features are normalized to [-1, 1],
// so 0 splits each attribute at the middle of its declared range.
struct Binarizer {
  double threshold = 0.0;
  bool branch(double value) const { return value > threshold; }
};

// Per-branch weighted label differences for every attribute, flattened in
// attribute order with the low branch first:
//   diffs[2j]   = sum of w_i over (branch(x_ij)=false, y_i=0)
//               - sum of w_i over (branch(x_ij)=false, y_i=1)
//   diffs[2j+1] = the same for the high branch.
// With weights summing to s, every entry lies in [-s, s].
using CrossTableDiffs = std::vector<double>;

// Accumulates the cross-table differences over `rows` of `data`, taking each
// sample's weight from `weights` (indexed by sample id, not by position in
// `rows`). Labels must be binary.
CrossTableDiffs crosstable_diffs(const EncodedDataset& data,
                                 std::span<const std::size_t> rows,
                                 std::span<const double> weights,
                                 const Binarizer& binarizer);

// Privatizes one owner's cross-table differences as a single record. Entries
// must already be within [-1, 1] (up to rounding slack); anything further out
// is a caller bug.
CrossTableDiffs perturb_crosstable(const CrossTableDiffs& diffs,
                                   MechanismKind kind, PrivacyBudget eps,
                                   Rng& rng);

// Split quality per attribute: |diffs[2j]| + |diffs[2j+1]|. Larger is better;
// the score is exactly the weight mass a two-leaf stump on that attribute
// classifies correctly, shifted and scaled by constants shared across
// attributes.
std::vector<double> attribute_scores(const CrossTableDiffs& diffs);

// Index of the best attribute; ties go to the lowest index.
std::size_t choose_best_attribute(const CrossTableDiffs& diffs);

// Attribute indices ordered from best to worst score, ties by ascending index.
std::vector<std::size_t> rank_attributes(const CrossTableDiffs& diffs);

// One-split decision tree over a binarized attribute.
struct Stump {
  std::size_t attribute = 0;
  int label_low = 0;   // predicted class on the low branch
  int label_high = 0;  // predicted class on the high branch
};

// Builds the stump the diffs vote for: best-scoring attribute, and each
// branch predicts class 0 when its difference is >= 0, class 1 otherwise.
Stump stump_from_diffs(const CrossTableDiffs& diffs);

int stump_predict(const Stump& stump, std::span<const double> row,
                  const Binarizer& binarizer);

// ---------------------------------------------------------------------------
// Nearest-centroid classifier.
// ---------------------------------------------------------------------------

// One owner's submission toward the class centroids: the sample itself,
// attenuated by a clipped relative weight so that every entry stays a valid
// single-record mechanism input.
struct WeightedShare {
  int label = 0;
  std::vector<double> value;
};

// Builds the share u * x for relevance u in [0, 1]; throws outside that range
// or when any |x_j| > 1.
WeightedShare weighted_sample_share(std::span<const double> row, int label,
                                    double relevance);

// Per-class centroids, class-major flattened. Classes that received no share
// keep a zero count and are skipped at prediction time.
struct CentroidModel {
  std::vector<double> centroids;  // class_count x dim
  std::vector<std::size_t> counts;
  std::size_t dim = 0;
  int class_count = 0;
};

// Averages the shares per class. Shares must all have length `dim` and labels
// within [0, class_count).
CentroidModel fit_centroids(std::span<const WeightedShare> shares,
                            std::size_t dim, int class_count);

// Nearest centroid under the sum of |coordinate difference|^norm_order
// (monotone in the usual p-norm, so no root is needed). Only classes with a
// nonzero share count compete; ties go to the lowest class.
int ncc_predict(const CentroidModel& model, std::span<const double> row,
                int norm_order);

// ---------------------------------------------------------------------------
// Multinomial linear classifier.
// ---------------------------------------------------------------------------

// Flattened class-major parameters: for each class, `dim` weights followed by
// one bias, giving class_count * (dim + 1) entries.
struct LinearModel {
  std::vector<double> params;
  std::size_t dim = 0;
  int class_count = 0;
};

struct LrConfig {
  double step = 0.5;
  std::size_t iterations = 200;
};

// Weighted cross-entropy under softmax over `rows`: (1/sum w) * sum of
// w_i * -log p(y_i). Writes the matching gradient into `grad` (same layout
// as params) when non-null. Weights are indexed by sample id.
double logistic_loss_and_grad(const LinearModel& model,
                              const EncodedDataset& data,
                              std::span<const std::size_t> rows,
                              std::span<const double> weights,
                              std::vector<double>* grad);

// Full-batch gradient descent from zero initialization.
LinearModel fit_local_linear(const EncodedDataset& data,
                             std::span<const std::size_t> rows,
                             std::span<const double> weights, int class_count,
                             const LrConfig& config);

// Clips every parameter to [-clip_bound, clip_bound] and rescales to [-1, 1]
// so the whole model travels as one mechanism record.
std::vector<double> linear_share(const LinearModel& model, double clip_bound);

// Coordinate-wise mean of the shares, mapped back to parameter space.
LinearModel aggregate_linear(std::span<const std::vector<double>> shares,
                             double clip_bound, std::size_t dim,
                             int class_count);

// Argmax of the class scores; ties go to the lowest class.
int linear_predict(const LinearModel& model, std::span<const double> row);

}  // namespace ldpb

#endif  // LDPB_LEARNERS_HPP_
