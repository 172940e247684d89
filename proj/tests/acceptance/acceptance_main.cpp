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
//
// Acceptance suite: one line per criterion, PASS or FAIL, nonzero exit when
// anything fails. Every tolerance is pinned here in code.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "ldpb/aggregate.hpp"
#include "ldpb/boosting.hpp"
#include "ldpb/cli.hpp"
#include "ldpb/data.hpp"
#include "ldpb/errors.hpp"
#include "ldpb/federation.hpp"
#include "ldpb/format.hpp"
#include "ldpb/learners.hpp"
#include "ldpb/mechanisms.hpp"
#include "ldpb/random.hpp"
#include "ldpb/secure_sum.hpp"

using namespace ldpb;

namespace {

using Failures = std::vector<std::string>;

double mean_of(const std::vector<double>& xs) {
  double total = 0.0;
  for (double x : xs) total += x;
  return total / static_cast<double>(xs.size());
}

std::string fmt(double v) { return format_double(v); }

// A failure message builder that keeps the criterion functions terse.
template <typename... Parts>
std::string msg(const Parts&... parts) {
  std::ostringstream out;
  (out << ... << parts);
  return out.str();
}

// ---------------------------------------------------------------------------
// Shared synthetic data: two balanced classes, one class-conditional Gaussian
// per attribute with its own separation and spread, clamped to the unit range
// the mechanisms require.
// ---------------------------------------------------------------------------

EncodedDataset gauss_dataset(std::size_t n, std::span<const double> seps,
                             std::span<const double> sigmas,
                             std::uint64_t seed) {
  const std::size_t dim = seps.size();
  EncodedDataset ds;
  ds.dim = dim;
  ds.class_count = 2;
  ds.features.resize(n * dim);
  ds.labels.resize(n);
  Rng rng(derive_seed(seed, 0x6761));
  for (std::size_t i = 0; i < n; ++i) {
    const int y = static_cast<int>(i % 2);
    ds.labels[i] = y;
    const double sign = y == 0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < dim; ++j) {
      const double v = sign * seps[j] + sigmas[j] * standard_normal(rng);
      ds.features[i * dim + j] = std::min(1.0, std::max(-1.0, v));
    }
  }
  return ds;
}

// Profile for stump-friendly data: every attribute informative, graded
// usefulness, equal spread.
std::pair<std::vector<double>, std::vector<double>> stump_profile() {
  std::vector<double> seps{0.45, 0.38, 0.32, 0.27, 0.23,
                           0.19, 0.15, 0.12, 0.09, 0.06};
  std::vector<double> sigmas(seps.size(), 0.4);
  return {seps, sigmas};
}

// Profile that handicaps the plain centroid rule: one dominant but very
// noisy attribute steers the first centroid direction, while six clean
// low-separation attributes carry most of the recoverable signal. The first
// fit leans on the noisy attribute; reweighting rotates later fits onto the
// clean ones, so the ensemble has real room to improve.
std::pair<std::vector<double>, std::vector<double>> ncc_profile() {
  std::vector<double> seps{0.5, 0.12, 0.12, 0.12, 0.12,
                           0.12, 0.12, 0.0, 0.0, 0.0};
  std::vector<double> sigmas{2.0, 0.18, 0.18, 0.18, 0.18,
                             0.18, 0.18, 0.5, 0.5, 0.5};
  return {seps, sigmas};
}

double misclassification(const Ensemble& ensemble, const EncodedDataset& data,
                         std::size_t prefix = kAllMembers) {
  return 1.0 - evaluate_accuracy(ensemble, data, prefix);
}

// ---------------------------------------------------------------------------
// [01] Two-level density of the bounded piecewise mechanism.
// ---------------------------------------------------------------------------

Failures criterion_pm_density_ratio() {
  Failures fails;
  constexpr double kAnalyticRelTol = 1e-12;
  constexpr std::size_t kBins = 200;
  constexpr std::size_t kDraws = 1'000'000;
  // Chi-square statistic against the exact two-level bin masses: mean df,
  // allowance three standard deviations of the chi-square distribution.
  const double chi_limit =
      static_cast<double>(kBins - 1) + 3.0 * std::sqrt(2.0 * (kBins - 1));

  Rng pick(20260101);
  for (int pair = 0; pair < 20; ++pair) {
    const double x = pick.uniform(-1.0, 1.0);
    const double eps = pick.uniform(0.4, 8.0);
    const PmParams p = compute_pm_params(x, PrivacyBudget(eps));

    const double core_len = p.core_hi - p.core_lo;
    const double tail_len = 2.0 * p.out_bound - core_len;
    const double dc = p.core_prob / core_len;
    const double dt = (1.0 - p.core_prob) / tail_len;
    const double ratio = dc / dt;
    const double target = std::exp(eps);
    if (std::fabs(ratio / target - 1.0) > kAnalyticRelTol) {
      fails.push_back(msg("pair ", pair, ": analytic density ratio ",
                          fmt(ratio), " != e^eps ", fmt(target)));
      continue;
    }

    // Histogram over the output interval.
    std::vector<std::size_t> counts(kBins, 0);
    Rng draw(derive_seed(20260102, static_cast<std::uint64_t>(pair)));
    const double lo = -p.out_bound;
    const double width = 2.0 * p.out_bound / static_cast<double>(kBins);
    std::size_t core_hits = 0;
    for (std::size_t i = 0; i < kDraws; ++i) {
      const double v = pm_perturb_1d(x, PrivacyBudget(eps), draw);
      auto bin = static_cast<std::size_t>((v - lo) / width);
      if (bin >= kBins) bin = kBins - 1;
      ++counts[bin];
      if (v >= p.core_lo && v <= p.core_hi) ++core_hits;
    }

    // Exact expected mass per bin from the two-level density.
    double chi2 = 0.0;
    for (std::size_t b = 0; b < kBins; ++b) {
      const double a = lo + static_cast<double>(b) * width;
      const double z = a + width;
      const double core_part =
          std::max(0.0, std::min(z, p.core_hi) - std::max(a, p.core_lo));
      const double expected =
          static_cast<double>(kDraws) *
          (core_part * dc + (width - core_part) * dt);
      const double diff = static_cast<double>(counts[b]) - expected;
      chi2 += diff * diff / expected;
    }
    if (chi2 > chi_limit) {
      fails.push_back(msg("pair ", pair, ": histogram chi-square ", fmt(chi2),
                          " above ", fmt(chi_limit)));
    }

    // The headline high/low split itself, within three binomial sd.
    const double expected_core = static_cast<double>(kDraws) * p.core_prob;
    const double core_sd =
        std::sqrt(static_cast<double>(kDraws) * p.core_prob *
                  (1.0 - p.core_prob));
    if (std::fabs(static_cast<double>(core_hits) - expected_core) >
        3.0 * core_sd) {
      fails.push_back(msg("pair ", pair, ": core mass ", core_hits,
                          " outside 3 sd of ", fmt(expected_core)));
    }

    // Empirical density ratio on the log scale, within three sd.
    const double nc = static_cast<double>(core_hits);
    const double nt = static_cast<double>(kDraws - core_hits);
    const double log_ratio_hat =
        std::log((nc / core_len) / (nt / tail_len));
    const double log_sd = std::sqrt(1.0 / nc + 1.0 / nt);
    if (std::fabs(log_ratio_hat - eps) > 3.0 * log_sd) {
      fails.push_back(msg("pair ", pair, ": empirical log density ratio ",
                          fmt(log_ratio_hat), " vs eps ", fmt(eps)));
    }
  }
  return fails;
}

// ---------------------------------------------------------------------------
// [02] All mechanisms are unbiased.
// ---------------------------------------------------------------------------

Failures criterion_unbiasedness() {
  Failures fails;
  constexpr std::size_t kDraws = 1'000'000;
  const std::vector<double> budgets{0.8, 2.0, 5.0};
  constexpr std::size_t kMdDim = 5;

  // Ten scalar inputs spanning the unit interval, and ten vector inputs.
  std::vector<double> scalar_inputs;
  for (int i = 0; i < 10; ++i) {
    scalar_inputs.push_back(-1.0 + 2.0 * static_cast<double>(i) / 9.0);
  }
  Rng pick(20260201);
  std::vector<std::vector<double>> vector_inputs(10);
  for (auto& v : vector_inputs) {
    v.resize(kMdDim);
    for (double& c : v) c = pick.uniform(-1.0, 1.0);
  }

  // Accumulates one Monte-Carlo cell and checks every coordinate.
  auto check_cell = [&](const std::string& label, std::size_t dim,
                        std::span<const double> input,
                        const std::function<void(Rng&, std::vector<double>&)>&
                            draw_fn,
                        std::uint64_t seed) {
    std::vector<double> sum(dim, 0.0), sumsq(dim, 0.0), out(dim);
    Rng rng(seed);
    for (std::size_t i = 0; i < kDraws; ++i) {
      draw_fn(rng, out);
      for (std::size_t j = 0; j < dim; ++j) {
        sum[j] += out[j];
        sumsq[j] += out[j] * out[j];
      }
    }
    for (std::size_t j = 0; j < dim; ++j) {
      const double mc_mean = sum[j] / static_cast<double>(kDraws);
      const double var =
          std::max(0.0, sumsq[j] / static_cast<double>(kDraws) -
                            mc_mean * mc_mean);
      const double bound =
          4.0 * std::sqrt(var) / std::sqrt(static_cast<double>(kDraws));
      if (std::fabs(mc_mean - input[j]) > bound) {
        fails.push_back(msg(label, " coord ", j, ": mc mean ", fmt(mc_mean),
                            " vs input ", fmt(input[j]), " (bound ",
                            fmt(bound), ")"));
      }
    }
  };

  std::uint64_t cell = 0;
  for (double eps : budgets) {
    const PrivacyBudget budget(eps);
    for (double x : scalar_inputs) {
      const std::vector<double> in1{x};
      check_cell(msg("pm-1d eps=", fmt(eps), " x=", fmt(x)), 1, in1,
                 [&](Rng& rng, std::vector<double>& out) {
                   out[0] = pm_perturb_1d(x, budget, rng);
                 },
                 derive_seed(20260202, cell));
      ++cell;
      check_cell(msg("laplace-1d eps=", fmt(eps), " x=", fmt(x)), 1, in1,
                 [&](Rng& rng, std::vector<double>& out) {
                   out[0] = laplace_perturb_1d(x, budget, rng);
                 },
                 derive_seed(20260203, cell));
      ++cell;
    }
    for (std::size_t v = 0; v < vector_inputs.size(); ++v) {
      const auto& input = vector_inputs[v];
      check_cell(msg("pm-md eps=", fmt(eps), " input ", v), kMdDim, input,
                 [&](Rng& rng, std::vector<double>& out) {
                   out = pm_perturb_md(input, budget, rng);
                 },
                 derive_seed(20260204, cell));
      ++cell;
      check_cell(msg("laplace-md eps=", fmt(eps), " input ", v), kMdDim, input,
                 [&](Rng& rng, std::vector<double>& out) {
                   out = laplace_perturb_md(input, budget, rng);
                 },
                 derive_seed(20260205, cell));
      ++cell;
      check_cell(msg("duchi eps=", fmt(eps), " input ", v), kMdDim, input,
                 [&](Rng& rng, std::vector<double>& out) {
                   out = duchi_perturb_md(input, budget, rng);
                 },
                 derive_seed(20260206, cell));
      ++cell;
    }
  }
  return fails;
}

// ---------------------------------------------------------------------------
// [03] Mean-estimation error ordering across mechanisms.
// ---------------------------------------------------------------------------

Failures criterion_mse_ordering() {
  Failures fails;
  constexpr std::size_t kDim = 50;
  constexpr std::size_t kOwners = 500;
  constexpr std::size_t kReps = 20;
  const std::vector<double> budgets{3.0, 5.0, 7.0, 9.0};

  Rng pop_rng(20260301);
  std::vector<std::vector<double>> population(kOwners);
  for (auto& record : population) {
    record.resize(kDim);
    for (double& x : record) x = pop_rng.uniform(-1.0, 1.0);
  }
  const std::vector<double> truth = estimate_mean(population).value;

  auto mean_mse = [&](MechanismKind kind, double eps,
                      std::uint64_t seed) {
    std::vector<double> rep_mse(kReps);
    for (std::size_t rep = 0; rep < kReps; ++rep) {
      Rng rng(derive_seed(seed, rep));
      std::vector<std::vector<double>> perturbed(kOwners);
      for (std::size_t i = 0; i < kOwners; ++i) {
        perturbed[i] = perturb(kind, population[i], PrivacyBudget(eps), rng);
      }
      rep_mse[rep] = mse(estimate_mean(perturbed).value, truth);
    }
    return mean_of(rep_mse);
  };

  for (std::size_t e = 0; e < budgets.size(); ++e) {
    const double eps = budgets[e];
    const double pm =
        mean_mse(MechanismKind::kPiecewise, eps, derive_seed(20260302, e));
    const double duchi =
        mean_mse(MechanismKind::kDuchi, eps, derive_seed(20260303, e));
    const double laplace =
        mean_mse(MechanismKind::kLaplace, eps, derive_seed(20260304, e));
    if (!(pm < duchi / 2.0)) {
      fails.push_back(msg("eps=", fmt(eps), ": pm mse ", fmt(pm),
                          " not below half of duchi mse ", fmt(duchi)));
    }
    if (!(pm < laplace / 10.0)) {
      fails.push_back(msg("eps=", fmt(eps), ": pm mse ", fmt(pm),
                          " not below a tenth of laplace mse ", fmt(laplace)));
    }
  }
  return fails;
}

// ---------------------------------------------------------------------------
// [04] Additive mechanism matches its analytic mean-estimation error.
// ---------------------------------------------------------------------------

Failures criterion_laplace_analytic_mse() {
  Failures fails;
  constexpr double kRelTol = 0.20;
  struct Case {
    std::size_t dim;
    double eps;
    std::size_t owners;
    std::size_t reps;  // sized so the tolerance is several sigma wide
  };
  const std::vector<Case> cases{{50, 1.0, 500, 40}, {10, 2.0, 1000, 120}};

  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto& [dim, eps, owners, reps] = cases[c];
    Rng pop_rng(derive_seed(20260401, c));
    std::vector<std::vector<double>> population(owners);
    for (auto& record : population) {
      record.resize(dim);
      for (double& x : record) x = pop_rng.uniform(-1.0, 1.0);
    }
    const std::vector<double> truth = estimate_mean(population).value;

    std::vector<double> rep_mse(reps);
    for (std::size_t rep = 0; rep < reps; ++rep) {
      Rng rng(derive_seed(20260402, c, rep));
      std::vector<std::vector<double>> perturbed(owners);
      for (std::size_t i = 0; i < owners; ++i) {
        perturbed[i] =
            laplace_perturb_md(population[i], PrivacyBudget(eps), rng);
      }
      rep_mse[rep] = mse(estimate_mean(perturbed).value, truth);
    }
    const double empirical = mean_of(rep_mse);
    const double analytic = 8.0 * static_cast<double>(dim * dim) /
                            (eps * eps * static_cast<double>(owners));
    if (std::fabs(empirical / analytic - 1.0) > kRelTol) {
      fails.push_back(msg("d=", dim, " eps=", fmt(eps), " L=", owners,
                          ": empirical ", fmt(empirical), " vs analytic ",
                          fmt(analytic)));
    }
  }
  return fails;
}

// ---------------------------------------------------------------------------
// [05] Split-score equivalence oracle.
// ---------------------------------------------------------------------------

Failures criterion_split_score_equivalence() {
  Failures fails;
  Rng rng(20260501);
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 5 + rng.below(36);
    const std::size_t d = 2 + rng.below(7);  // up to 8 attributes
    // Weights on a dyadic grid keep every accumulation exact in both paths,
    // so cross-attribute ties (any attribute whose branches share a majority
    // label scores the global label-mass difference) are exact equalities
    // and the shared lowest-index tie-break is well defined.
    const double grid = trial % 2 == 0 ? 1024.0 : 1048576.0;
    EncodedDataset ds;
    ds.dim = d;
    ds.class_count = 2;
    ds.features.resize(n * d);
    ds.labels.resize(n);
    std::vector<double> weights(n);
    for (std::size_t i = 0; i < n; ++i) {
      ds.labels[i] = static_cast<int>(rng.below(2));
      weights[i] =
          static_cast<double>(1 + rng.below(static_cast<std::size_t>(grid) - 1)) /
          grid;
      for (std::size_t j = 0; j < d; ++j) {
        ds.features[i * d + j] = rng.bernoulli(0.5) ? 0.5 : -0.5;
      }
    }
    std::vector<std::size_t> rows(n);
    std::iota(rows.begin(), rows.end(), std::size_t{0});

    // Independent path: per-attribute weighted cells, then the summed
    // misclassification impurity, first strict minimum wins.
    std::size_t brute_best = 0;
    double brute_cost = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < d; ++j) {
      double cell[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
      for (std::size_t i = 0; i < n; ++i) {
        const int branch = ds.features[i * d + j] > 0.0 ? 1 : 0;
        cell[branch][ds.labels[i]] += weights[i];
      }
      double cost = 0.0;
      for (int b = 0; b < 2; ++b) {
        cost += cell[b][0] + cell[b][1] - std::max(cell[b][0], cell[b][1]);
      }
      if (cost < brute_cost) {
        brute_best = j;
        brute_cost = cost;
      }
    }

    const CrossTableDiffs diffs =
        crosstable_diffs(ds, rows, weights, Binarizer{0.0});
    if (choose_best_attribute(diffs) != brute_best) ++mismatches;
  }
  if (mismatches != 0) {
    fails.push_back(msg(mismatches, " of 1000 trials disagreed with the "
                                    "impurity minimizer"));
  }
  return fails;
}

// ---------------------------------------------------------------------------
// [06] Non-private federation equals centralized boosting.
// ---------------------------------------------------------------------------

Failures criterion_federated_equals_centralized() {
  Failures fails;
  constexpr double kAlphaTol = 1e-9;
  const auto [seps, sigmas] = stump_profile();
  const EncodedDataset ds = gauss_dataset(2000, seps, sigmas, 20260601);

  FederationConfig fed;
  fed.owner_count = 20;
  fed.group_size = 0;
  fed.rounds = 8;
  fed.mechanism = MechanismKind::kNoOp;
  fed.learner = LearnerKind::kStump;
  fed.seed = 606;

  CentralizedConfig central;
  central.learner = LearnerKind::kStump;
  central.rounds = 8;
  central.context = fed.context;

  const FederatedRun fed_run = run_boosting(ds, fed);
  const CentralizedRun central_run = fit_samme(ds, central);

  if (fed_run.ensemble.members.size() != 8 ||
      central_run.ensemble.members.size() != 8) {
    fails.push_back("unexpected member count");
    return fails;
  }
  for (std::size_t m = 0; m < 8; ++m) {
    const auto& fs = std::get<Stump>(fed_run.ensemble.members[m].model);
    const auto& cs = std::get<Stump>(central_run.ensemble.members[m].model);
    if (fs.attribute != cs.attribute || fs.label_low != cs.label_low ||
        fs.label_high != cs.label_high) {
      fails.push_back(msg("member ", m, ": stumps differ (attribute ",
                          fs.attribute, " vs ", cs.attribute, ")"));
    }
    const double da = std::fabs(fed_run.ensemble.members[m].alpha -
                                central_run.ensemble.members[m].alpha);
    if (da > kAlphaTol) {
      fails.push_back(msg("member ", m, ": alpha gap ", fmt(da)));
    }
  }
  return fails;
}

// ---------------------------------------------------------------------------
// [07] Boosting improves both stump and centroid learners (non-private).
// ---------------------------------------------------------------------------

Failures criterion_boosting_utility() {
  Failures fails;

  // Stumps: twelve rounds strictly beat one round on held-out data, per seed.
  {
    const auto [seps, sigmas] = stump_profile();
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const EncodedDataset ds =
          gauss_dataset(3000, seps, sigmas, derive_seed(20260701, seed));
      const SplitResult split =
          train_test_split(ds, 0.2, derive_seed(20260702, seed));
      CentralizedConfig config;
      config.learner = LearnerKind::kStump;
      config.rounds = 12;
      const CentralizedRun run = fit_samme(split.train, config);
      const double mis1 = misclassification(run.ensemble, split.test, 1);
      const double mis12 = misclassification(run.ensemble, split.test);
      if (!(mis12 < mis1)) {
        fails.push_back(msg("stumps seed ", seed, ": twelve rounds ",
                            fmt(mis12), " not below one round ", fmt(mis1)));
      }
    }
  }

  // Centroids: the boosted ensemble gains at least one point on average.
  {
    const auto [seps, sigmas] = ncc_profile();
    std::vector<double> gains;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const EncodedDataset ds =
          gauss_dataset(3000, seps, sigmas, derive_seed(20260703, seed));
      const SplitResult split =
          train_test_split(ds, 0.2, derive_seed(20260704, seed));
      CentralizedConfig config;
      config.learner = LearnerKind::kCentroid;
      config.rounds = 12;
      const CentralizedRun run = fit_samme(split.train, config);
      const double single = evaluate_accuracy(run.ensemble, split.test, 1);
      const double boosted = evaluate_accuracy(run.ensemble, split.test);
      gains.push_back(boosted - single);
    }
    const double gain = mean_of(gains);
    if (!(gain >= 0.01)) {
      fails.push_back(msg("centroids: mean boosted gain ", fmt(gain),
                          " below one percentage point"));
    }
  }
  return fails;
}

// ---------------------------------------------------------------------------
// [08] Private boosting does not hurt the centroid learner.
// ---------------------------------------------------------------------------

Failures criterion_private_boosting_helps() {
  Failures fails;
  const auto [seps, sigmas] = ncc_profile();
  for (double eps : {3.0, 5.0}) {
    std::vector<double> boosted_mis, single_mis;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const EncodedDataset ds =
          gauss_dataset(3000, seps, sigmas, derive_seed(20260801, seed));
      const SplitResult split =
          train_test_split(ds, 0.2, derive_seed(20260802, seed));

      FederationConfig config;
      config.owner_count = split.train.size();  // one sample per owner
      config.group_size = 400;
      config.rounds = 6;
      config.mechanism = MechanismKind::kPiecewise;
      config.epsilon = eps;
      config.learner = LearnerKind::kCentroid;
      config.seed = derive_seed(20260803, seed);

      const FederatedRun run = run_boosting(split.train, config);
      boosted_mis.push_back(misclassification(run.ensemble, split.test));
      single_mis.push_back(misclassification(run.ensemble, split.test, 1));
    }
    const double boosted = mean_of(boosted_mis);
    const double single = mean_of(single_mis);
    if (!(boosted <= single)) {
      fails.push_back(msg("eps=", fmt(eps), ": boosted misclassification ",
                          fmt(boosted), " above round-1 value ", fmt(single)));
    }
  }
  return fails;
}

// ---------------------------------------------------------------------------
// [09] Accuracy grows with the privacy budget for every learner.
// ---------------------------------------------------------------------------

Failures criterion_epsilon_monotonicity() {
  Failures fails;

  auto mean_accuracy = [](LearnerKind learner, double eps,
                          std::uint64_t stream) {
    std::vector<double> accs;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto [seps, sigmas] =
          learner == LearnerKind::kCentroid ? ncc_profile() : stump_profile();
      const EncodedDataset ds =
          gauss_dataset(3000, seps, sigmas, derive_seed(stream, seed));
      const SplitResult split =
          train_test_split(ds, 0.2, derive_seed(stream, seed, 1));

      FederationConfig config;
      config.mechanism = MechanismKind::kPiecewise;
      config.epsilon = eps;
      config.learner = learner;
      config.seed = derive_seed(stream, seed, 2);
      switch (learner) {
        case LearnerKind::kStump:
          config.owner_count = 600;
          config.group_size = 100;
          config.rounds = 5;
          break;
        case LearnerKind::kCentroid:
          config.owner_count = split.train.size();
          config.group_size = 400;
          config.rounds = 6;
          break;
        case LearnerKind::kLinear:
          config.owner_count = 200;
          config.group_size = 50;
          config.rounds = 1;
          config.lr = LrConfig{0.5, 80};
          break;
      }
      const FederatedRun run = run_boosting(split.train, config);
      accs.push_back(evaluate_accuracy(run.ensemble, split.test));
    }
    return mean_of(accs);
  };

  const std::vector<std::pair<LearnerKind, std::uint64_t>> learners{
      {LearnerKind::kStump, 20260901},
      {LearnerKind::kCentroid, 20260902},
      {LearnerKind::kLinear, 20260903}};
  for (const auto& [learner, stream] : learners) {
    const double tight = mean_accuracy(learner, 1.0, stream);
    const double loose = mean_accuracy(learner, 9.0, stream);
    if (!(loose >= tight)) {
      fails.push_back(msg(learner_name(learner), ": accuracy at eps=9 ",
                          fmt(loose), " below accuracy at eps=1 ",
                          fmt(tight)));
    }
  }
  return fails;
}

// ---------------------------------------------------------------------------
// [10] Top-k hitting rate of private attribute selection.
// ---------------------------------------------------------------------------

Failures criterion_hitting_rate() {
  Failures fails;
  constexpr std::size_t kRuns = 100;
  const auto [seps, sigmas] = stump_profile();
  const std::size_t d = seps.size();
  const EncodedDataset ds = gauss_dataset(2000, seps, sigmas, 20261001);

  std::vector<std::size_t> all_rows(ds.size());
  std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});
  const std::vector<double> weights = init_weights(ds.size());
  const CrossTableDiffs exact =
      crosstable_diffs(ds, all_rows, weights, Binarizer{0.0});
  const std::vector<std::size_t> ranked = rank_attributes(exact);

  const std::vector<DataOwner> owners = partition_owners(ds.size(), 500, 1002);

  auto run_rates = [&](double eps) {
    FederationConfig config;
    config.mechanism = MechanismKind::kPiecewise;
    config.epsilon = eps;
    config.seed = derive_seed(20261003, std::llround(eps * 1000));
    std::vector<std::size_t> chosen(kRuns);
    for (std::size_t r = 0; r < kRuns; ++r) {
      std::vector<std::vector<double>> records;
      records.reserve(owners.size());
      for (const auto& owner : owners) {
        records.push_back(owner_diff_share(ds, owner, weights, config, r + 1));
      }
      chosen[r] = choose_best_attribute(estimate_mean(records).value);
    }
    std::vector<double> rates(d);
    for (std::size_t k = 1; k <= d; ++k) {
      rates[k - 1] = top_k_hitting_rate(ranked, chosen, k).rate;
    }
    return rates;
  };

  const std::vector<double> rate_tight = run_rates(1.0);
  const std::vector<double> rate_loose = run_rates(5.0);

  for (const auto& [label, rates] :
       {std::pair{"eps=1", &rate_tight}, std::pair{"eps=5", &rate_loose}}) {
    if ((*rates)[d - 1] != 1.0) {
      fails.push_back(msg(label, ": rate at k=d is ", fmt((*rates)[d - 1]),
                          ", expected exactly 1"));
    }
    for (std::size_t k = 1; k < d; ++k) {
      if ((*rates)[k] < (*rates)[k - 1]) {
        fails.push_back(msg(label, ": rate not monotone at k=", k + 1));
      }
    }
  }
  for (std::size_t k = 1; k <= d; ++k) {
    const double r1 = rate_tight[k - 1];
    const double sd =
        std::sqrt(r1 * (1.0 - r1) / static_cast<double>(kRuns));
    if (!(rate_loose[k - 1] >= r1 - 2.0 * sd)) {
      fails.push_back(msg("k=", k, ": rate at eps=5 ", fmt(rate_loose[k - 1]),
                          " below eps=1 rate ", fmt(r1), " minus 2 sd"));
    }
  }
  return fails;
}

// ---------------------------------------------------------------------------
// [11] Masked ring summation.
// ---------------------------------------------------------------------------

Failures criterion_secure_sum() {
  Failures fails;
  constexpr double kPerValue = 1.0 / (1 << 21);  // half quantization step
  Rng rng(20261101);
  std::size_t loose = 0, permutation_breaks = 0;
  for (std::size_t session = 0; session < 10'000; ++session) {
    const std::size_t n = 1 + rng.below(30);
    std::vector<double> values(n);
    double plain = 0.0;
    for (double& v : values) {
      v = rng.uniform(-100.0, 100.0);
      plain += v;
    }
    const std::uint64_t seed = derive_seed(20261102, session);
    Rng ring(seed);
    const double total = secure_sum(values, ring, nullptr, session);
    if (std::fabs(total - plain) > static_cast<double>(n) * kPerValue) {
      ++loose;
    }
    if (session < 300) {
      std::vector<double> shuffled = values;
      std::reverse(shuffled.begin(), shuffled.end());
      std::rotate(shuffled.begin(),
                  shuffled.begin() + static_cast<std::ptrdiff_t>(n / 2),
                  shuffled.end());
      Rng ring2(seed);
      if (secure_sum(shuffled, ring2, nullptr, session) != total) {
        ++permutation_breaks;
      }
    }
  }
  if (loose != 0) {
    fails.push_back(msg(loose, " of 10000 sessions beyond the quantization "
                               "bound"));
  }
  if (permutation_breaks != 0) {
    fails.push_back(msg(permutation_breaks,
                        " permuted sessions changed the exact total"));
  }

  // Single participant: the protocol is the identity up to encoding.
  for (int i = 0; i < 200; ++i) {
    const double v = rng.uniform(-1000.0, 1000.0);
    Rng ring(derive_seed(20261103, static_cast<std::uint64_t>(i)));
    const double total = secure_sum(std::vector<double>{v}, ring);
    const double expected = FixedPoint::decode(FixedPoint::encode(v));
    if (total != expected) {
      fails.push_back(msg("single-owner identity broken at ", fmt(v)));
      break;
    }
  }
  // Grid-aligned values survive exactly.
  Rng ring(20261104);
  const double grid_total =
      secure_sum(std::vector<double>{1.25, -3.5, 0.0078125}, ring);
  if (grid_total != 1.25 - 3.5 + 0.0078125) {
    fails.push_back("grid-aligned sum not exact");
  }
  return fails;
}

// ---------------------------------------------------------------------------
// [12] Participation ledger.
// ---------------------------------------------------------------------------

Failures criterion_budget_ledger() {
  Failures fails;
  Rng rng(20261201);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t owner_count = 2 + rng.below(29);
    std::vector<DataOwner> owners(owner_count);
    for (std::size_t o = 0; o < owner_count; ++o) {
      owners[o].id = o;
      owners[o].samples = {o};
    }
    std::size_t fresh = owner_count;
    for (int step = 0; step < 12; ++step) {
      const std::size_t group = 1 + rng.below(owner_count);
      bool threw = false;
      try {
        select_group(owners, group, rng);
      } catch (const BudgetExhausted&) {
        threw = true;
      }
      const bool should_throw = group > fresh;
      if (threw != should_throw) {
        fails.push_back(msg("trial ", trial, ": draw of ", group, " with ",
                            fresh, " fresh owners ",
                            threw ? "threw unexpectedly" : "did not throw"));
        break;
      }
      if (threw) break;
      fresh -= group;
    }
  }

  // End to end: a schedule needing more submissions than owners exist.
  const auto [seps, sigmas] = stump_profile();
  const EncodedDataset ds = gauss_dataset(60, seps, sigmas, 20261202);
  FederationConfig config;
  config.owner_count = 6;
  config.group_size = 4;
  config.rounds = 2;
  config.mechanism = MechanismKind::kLaplace;
  config.epsilon = 2.0;
  bool threw = false;
  try {
    run_boosting(ds, config);
  } catch (const BudgetExhausted&) {
    threw = true;
  }
  if (!threw) {
    fails.push_back("over-subscribed schedule did not raise the budget error");
  }
  return fails;
}

// ---------------------------------------------------------------------------
// [13] Loss gradient against central finite differences.
// ---------------------------------------------------------------------------

Failures criterion_gradient_check() {
  Failures fails;
  constexpr double kRelTol = 1e-5;
  constexpr double kStep = 1e-6;
  Rng rng(20261301);
  for (int point = 0; point < 100; ++point) {
    const std::size_t n = 3 + rng.below(10);
    const std::size_t d = 1 + rng.below(6);
    const int classes = 2 + static_cast<int>(rng.below(4));
    EncodedDataset ds;
    ds.dim = d;
    ds.class_count = classes;
    ds.features.resize(n * d);
    ds.labels.resize(n);
    std::vector<double> weights(n);
    for (std::size_t i = 0; i < n; ++i) {
      ds.labels[i] = static_cast<int>(rng.below(static_cast<std::size_t>(classes)));
      weights[i] = rng.uniform(0.05, 1.0);
      for (std::size_t j = 0; j < d; ++j) {
        ds.features[i * d + j] = rng.uniform(-1.0, 1.0);
      }
    }
    std::vector<std::size_t> rows(n);
    std::iota(rows.begin(), rows.end(), std::size_t{0});

    LinearModel model;
    model.dim = d;
    model.class_count = classes;
    model.params.resize(static_cast<std::size_t>(classes) * (d + 1));
    for (double& p : model.params) p = rng.uniform(-1.0, 1.0);

    std::vector<double> grad;
    logistic_loss_and_grad(model, ds, rows, weights, &grad);

    double gap_sq = 0.0, norm_sq = 0.0;
    for (std::size_t k = 0; k < model.params.size(); ++k) {
      LinearModel up = model, down = model;
      up.params[k] += kStep;
      down.params[k] -= kStep;
      const double fd =
          (logistic_loss_and_grad(up, ds, rows, weights, nullptr) -
           logistic_loss_and_grad(down, ds, rows, weights, nullptr)) /
          (2.0 * kStep);
      gap_sq += (grad[k] - fd) * (grad[k] - fd);
      norm_sq += fd * fd;
    }
    const double rel = std::sqrt(gap_sq) / std::max(1e-8, std::sqrt(norm_sq));
    if (rel >= kRelTol) {
      fails.push_back(msg("point ", point, ": relative gradient error ",
                          fmt(rel)));
    }
  }
  return fails;
}

// ---------------------------------------------------------------------------
// [14] Command-line determinism.
// ---------------------------------------------------------------------------

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("ldpb-acceptance-" + tag + "-" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Failures criterion_cli_determinism() {
  Failures fails;
  TempDir dir("cli");
  const std::string data = dir.file("toy.csv");
  const std::string schema = dir.file("toy.schema.json");

  auto expect_same = [&](const std::string& what, const std::string& a,
                         const std::string& b) {
    const std::string ca = read_file(a), cb = read_file(b);
    if (ca.empty() || ca != cb) {
      fails.push_back(msg(what, ": reruns differ (", a, " vs ", b, ")"));
    }
  };
  auto expect_ok = [&](int rc, const std::string& what) {
    if (rc != 0) fails.push_back(msg(what, ": exit code ", rc));
  };

  // synth: identical data and schema files under a second identical call.
  expect_ok(run_cli({"synth", "--out", data, "--n", "300", "--informative",
                     "4", "--combos", "2", "--seed", "11"}),
            "synth run 1");
  const std::string data2 = dir.file("toy2.csv");
  expect_ok(run_cli({"synth", "--out", data2, "--schema",
                     dir.file("toy2.schema.json"), "--n", "300",
                     "--informative", "4", "--combos", "2", "--seed", "11"}),
            "synth run 2");
  expect_same("synth data", data, data2);
  expect_same("synth schema", schema, dir.file("toy2.schema.json"));

  // mse-bench.
  for (int r = 1; r <= 2; ++r) {
    expect_ok(run_cli({"mse-bench", "--mechanism", "laplace,pm,duchi", "--eps",
                       "1,3", "--dim", "5", "--owners", "50", "--reps", "3",
                       "--seed", "3", "--out",
                       dir.file("bench" + std::to_string(r) + ".csv")}),
              "mse-bench");
  }
  expect_same("mse-bench table", dir.file("bench1.csv"),
              dir.file("bench2.csv"));

  // train with a private mechanism, including the saved model.
  for (int r = 1; r <= 2; ++r) {
    const std::string tag = std::to_string(r);
    expect_ok(run_cli({"train", "--dataset", data, "--learner", "bdt",
                       "--mechanism", "pm", "--eps", "5", "--owners", "30",
                       "--group-size", "10", "--rounds", "2", "--seed", "21",
                       "--out", dir.file("train" + tag + ".csv"),
                       "--model-out", dir.file("model" + tag + ".json")}),
              "train");
  }
  expect_same("train table", dir.file("train1.csv"), dir.file("train2.csv"));
  expect_same("train model", dir.file("model1.json"), dir.file("model2.json"));

  // hitrate.
  for (int r = 1; r <= 2; ++r) {
    expect_ok(run_cli({"hitrate", "--dataset", data, "--mechanism", "pm",
                       "--eps", "2", "--top-k", "1,2", "--owners", "30",
                       "--reps", "5", "--seed", "8", "--out",
                       dir.file("hit" + std::to_string(r) + ".csv")}),
              "hitrate");
  }
  expect_same("hitrate table", dir.file("hit1.csv"), dir.file("hit2.csv"));

  // eval on the model trained above.
  for (int r = 1; r <= 2; ++r) {
    expect_ok(run_cli({"eval", "--model", dir.file("model1.json"), "--dataset",
                       data, "--out",
                       dir.file("eval" + std::to_string(r) + ".csv")}),
              "eval");
  }
  expect_same("eval table", dir.file("eval1.csv"), dir.file("eval2.csv"));
  return fails;
}

// ---------------------------------------------------------------------------
// Harness.
// ---------------------------------------------------------------------------

struct Criterion {
  int id;
  const char* name;
  std::function<Failures()> run;
  double time_limit_s;  // 0: no limit pinned
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "pm-density-ratio", criterion_pm_density_ratio, 30.0},
      {2, "mechanism-unbiasedness", criterion_unbiasedness, 120.0},
      {3, "mse-ordering", criterion_mse_ordering, 60.0},
      {4, "laplace-analytic-mse", criterion_laplace_analytic_mse, 0.0},
      {5, "split-score-equivalence", criterion_split_score_equivalence, 0.0},
      {6, "federated-equals-centralized", criterion_federated_equals_centralized,
       0.0},
      {7, "boosting-utility", criterion_boosting_utility, 120.0},
      {8, "private-boosting-helps", criterion_private_boosting_helps, 0.0},
      {9, "epsilon-monotonicity", criterion_epsilon_monotonicity, 0.0},
      {10, "hitting-rate", criterion_hitting_rate, 0.0},
      {11, "secure-sum", criterion_secure_sum, 0.0},
      {12, "budget-ledger", criterion_budget_ledger, 0.0},
      {13, "gradient-check", criterion_gradient_check, 0.0},
      {14, "cli-determinism", criterion_cli_determinism, 0.0},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Failures fails;
    try {
      fails = criterion.run();
    } catch (const std::exception& e) {
      fails.push_back(msg("unhandled exception: ", e.what()));
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (criterion.time_limit_s > 0.0 && seconds > criterion.time_limit_s) {
      fails.push_back(msg("runtime ", fmt(seconds), "s above the ",
                          fmt(criterion.time_limit_s), "s limit"));
    }
    std::printf("[%02d] %-32s %s (%.1fs)\n", criterion.id, criterion.name,
                fails.empty() ? "PASS" : "FAIL", seconds);
    for (const auto& f : fails) std::printf("     - %s\n", f.c_str());
    std::fflush(stdout);
    failures += fails.empty() ? 0 : 1;
  }
  if (failures != 0) {
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
