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

#include "ldpb/federation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ldpb/aggregate.hpp"
#include "ldpb/errors.hpp"
#include "ldpb/format.hpp"

namespace ldpb {

namespace {

// Stream labels keeping the partition, group draw, share perturbations and
// ring masks on independent deterministic streams.
constexpr std::uint64_t kPartitionStream = 0x7061;
constexpr std::uint64_t kGroupStream = 0x6772;
constexpr std::uint64_t kShareStream = 0x7368;
constexpr std::uint64_t kRingStream = 0x7269;

Rng share_rng(const FederationConfig& config, std::size_t round,
              std::size_t owner_id) {
  return Rng(derive_seed(config.seed, kShareStream,
                         static_cast<std::uint64_t>(round),
                         static_cast<std::uint64_t>(owner_id)));
}

double local_weight_mass(const DataOwner& owner,
                         std::span<const double> weights) {
  double mass = 0.0;
  for (std::size_t i : owner.samples) {
    if (i >= weights.size()) {
      throw DomainError("owner share: row index out of range");
    }
    mass += weights[i];
  }
  if (!(mass > 0.0)) {
    throw DomainError("owner share: slice weight mass must be positive");
  }
  return mass;
}

std::string summarize(const BaseModel& model) {
  struct Visitor {
    std::string operator()(const Stump& s) const {
      return "stump attr=" + std::to_string(s.attribute) +
             " low=" + std::to_string(s.label_low) +
             " high=" + std::to_string(s.label_high);
    }
    std::string operator()(const CentroidModel& m) const {
      std::size_t usable = 0;
      for (std::size_t c : m.counts) usable += c > 0 ? 1 : 0;
      return "centroids classes=" + std::to_string(usable) + "/" +
             std::to_string(m.class_count);
    }
    std::string operator()(const LinearModel& m) const {
      return "linear params=" + std::to_string(m.params.size());
    }
  };
  return std::visit(Visitor{}, model);
}

std::size_t record_width(const FederationConfig& config,
                         const EncodedDataset& data) {
  switch (config.learner) {
    case LearnerKind::kStump:
      return 2 * data.dim;
    case LearnerKind::kCentroid:
      return data.dim;
    case LearnerKind::kLinear:
      return static_cast<std::size_t>(data.class_count) * (data.dim + 1);
  }
  throw DomainError("unknown learner kind");
}

void validate(const EncodedDataset& data, const FederationConfig& config) {
  if (data.size() == 0) throw DomainError("run_boosting: empty dataset");
  if (data.class_count < 2) {
    throw DomainError("run_boosting: need at least two classes");
  }
  if (config.owner_count == 0 || config.owner_count > data.size()) {
    throw DomainError(
        "run_boosting: owner count must be in [1, sample count]");
  }
  if (config.rounds == 0) throw DomainError("run_boosting: rounds must be >= 1");
  if (config.mechanism == MechanismKind::kNoOp) {
    if (config.group_size != 0 && config.group_size != config.owner_count) {
      throw DomainError(
          "run_boosting: non-private runs use every owner each round; "
          "leave the group size at 0");
    }
  } else {
    PrivacyBudget check(config.epsilon);  // validates the budget
    (void)check;
    if (config.group_size == 0 || config.group_size > config.owner_count) {
      throw DomainError(
          "run_boosting: private runs need a group size in [1, owner count]");
    }
  }
  if (config.learner == LearnerKind::kStump && data.class_count != 2) {
    throw DomainError("run_boosting: the stump learner is binary only");
  }
}

}  // namespace

std::vector<DataOwner> partition_owners(std::size_t sample_count,
                                        std::size_t owner_count,
                                        std::uint64_t seed) {
  if (owner_count == 0 || owner_count > sample_count) {
    throw DomainError("partition_owners: owner count must be in [1, samples]");
  }
  std::vector<std::size_t> order(sample_count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(seed, kPartitionStream));
  shuffle(order, rng);

  std::vector<DataOwner> owners(owner_count);
  const std::size_t base = sample_count / owner_count;
  const std::size_t extra = sample_count % owner_count;
  std::size_t next = 0;
  for (std::size_t o = 0; o < owner_count; ++o) {
    owners[o].id = o;
    const std::size_t take = base + (o < extra ? 1 : 0);
    owners[o].samples.assign(order.begin() + static_cast<std::ptrdiff_t>(next),
                             order.begin() +
                                 static_cast<std::ptrdiff_t>(next + take));
    std::sort(owners[o].samples.begin(), owners[o].samples.end());
    next += take;
  }
  return owners;
}

std::vector<std::size_t> select_group(std::vector<DataOwner>& owners,
                                      std::size_t group_size, Rng& rng) {
  if (group_size == 0) throw DomainError("select_group: empty group");
  std::vector<std::size_t> fresh;
  for (std::size_t o = 0; o < owners.size(); ++o) {
    if (!owners[o].participated) fresh.push_back(o);
  }
  if (fresh.size() < group_size) {
    throw BudgetExhausted("select_group: " + std::to_string(fresh.size()) +
                          " fresh owners left, " + std::to_string(group_size) +
                          " needed; every owner participates at most once");
  }
  const auto picks = sample_without_replacement(fresh.size(), group_size, rng);
  std::vector<std::size_t> group;
  group.reserve(group_size);
  for (std::size_t p : picks) group.push_back(owners[fresh[p]].id);
  std::sort(group.begin(), group.end());
  for (std::size_t id : group) owners[id].participated = true;
  return group;
}

CrossTableDiffs owner_diff_share(const EncodedDataset& data,
                                 const DataOwner& owner,
                                 std::span<const double> weights,
                                 const FederationConfig& config,
                                 std::size_t round) {
  // Cross-table differences are linear in the weights, so renormalizing the
  // slice to unit mass is a plain division of the raw differences.
  const double mass = local_weight_mass(owner, weights);
  CrossTableDiffs diffs = crosstable_diffs(data, owner.samples, weights,
                                           config.context.binarizer);
  for (double& d : diffs) d /= mass;
  Rng rng = share_rng(config, round, owner.id);
  return perturb_crosstable(diffs, config.mechanism,
                            PrivacyBudget(config.epsilon), rng);
}

std::vector<WeightedShare> owner_sample_shares(const EncodedDataset& data,
                                               const DataOwner& owner,
                                               std::span<const double> weights,
                                               const FederationConfig& config,
                                               std::size_t round) {
  Rng rng = share_rng(config, round, owner.id);
  const double scale = static_cast<double>(data.size());
  std::vector<WeightedShare> shares;
  shares.reserve(owner.samples.size());
  for (std::size_t i : owner.samples) {
    if (i >= weights.size()) {
      throw DomainError("owner share: row index out of range");
    }
    const double relevance = std::min(1.0, scale * weights[i]);
    WeightedShare share =
        weighted_sample_share(data.row(i), data.labels[i], relevance);
    share.value = perturb(config.mechanism, share.value,
                          PrivacyBudget(config.epsilon), rng);
    shares.push_back(std::move(share));
  }
  return shares;
}

std::vector<double> owner_linear_share(const EncodedDataset& data,
                                       const DataOwner& owner,
                                       std::span<const double> weights,
                                       const FederationConfig& config,
                                       std::size_t round) {
  // The weighted loss normalizes by the slice's own mass, so the raw global
  // weights can be used directly.
  const LinearModel local = fit_local_linear(data, owner.samples, weights,
                                             data.class_count, config.lr);
  const std::vector<double> scaled = linear_share(local, config.clip_bound);
  Rng rng = share_rng(config, round, owner.id);
  return perturb(config.mechanism, scaled, PrivacyBudget(config.epsilon), rng);
}

double mechanism_output_bound(MechanismKind kind, std::size_t record_dim,
                              double epsilon) {
  if (record_dim == 0) {
    throw DomainError("mechanism_output_bound: empty record");
  }
  switch (kind) {
    case MechanismKind::kNoOp:
      return 1.0;
    case MechanismKind::kLaplace:
      // Per-coordinate noise scale under an evenly split budget.
      return 2.0 * static_cast<double>(record_dim) / epsilon;
    case MechanismKind::kPiecewise: {
      const std::size_t k =
          pm_sampled_coordinates(record_dim, PrivacyBudget(epsilon));
      const PmParams params =
          compute_pm_params(0.0, PrivacyBudget(epsilon / static_cast<double>(k)));
      return params.out_bound * static_cast<double>(record_dim) /
             static_cast<double>(k);
    }
    case MechanismKind::kDuchi:
      return compute_duchi_params(record_dim, PrivacyBudget(epsilon)).bound_b;
  }
  throw DomainError("unknown mechanism kind");
}

namespace {

// Aggregates one round's privatized submissions into a base model.
BaseModel aggregate_round_model(const EncodedDataset& data,
                                const FederationConfig& config,
                                std::vector<DataOwner>& owners,
                                std::span<const std::size_t> group,
                                std::span<const double> weights,
                                std::size_t round,
                                std::vector<TraceEvent>* trace) {
  switch (config.learner) {
    case LearnerKind::kStump: {
      std::vector<std::vector<double>> records;
      records.reserve(group.size());
      for (std::size_t id : group) {
        records.push_back(
            owner_diff_share(data, owners[id], weights, config, round));
        if (trace) {
          trace->push_back({TraceKind::kPerturbedShare, round, id,
                            "cross-table record dim " +
                                std::to_string(records.back().size())});
        }
      }
      return stump_from_diffs(estimate_mean(records).value);
    }
    case LearnerKind::kCentroid: {
      std::vector<WeightedShare> shares;
      for (std::size_t id : group) {
        auto owner_shares =
            owner_sample_shares(data, owners[id], weights, config, round);
        if (trace) {
          trace->push_back({TraceKind::kPerturbedShare, round, id,
                            std::to_string(owner_shares.size()) +
                                " sample shares dim " +
                                std::to_string(data.dim)});
        }
        for (auto& s : owner_shares) shares.push_back(std::move(s));
      }
      return fit_centroids(shares, data.dim, data.class_count);
    }
    case LearnerKind::kLinear: {
      std::vector<std::vector<double>> shares;
      shares.reserve(group.size());
      for (std::size_t id : group) {
        shares.push_back(
            owner_linear_share(data, owners[id], weights, config, round));
        if (trace) {
          trace->push_back({TraceKind::kPerturbedShare, round, id,
                            "linear record dim " +
                                std::to_string(shares.back().size())});
        }
      }
      return aggregate_linear(shares, config.clip_bound, data.dim,
                              data.class_count);
    }
  }
  throw DomainError("unknown learner kind");
}

// Sums one scalar per owner through the masked ring.
double federated_sum(std::span<const double> values,
                     const FederationConfig& config, std::size_t round,
                     std::size_t sum_index, const std::string& label,
                     FederatedRun* run) {
  Rng rng(derive_seed(config.seed, kRingStream,
                      static_cast<std::uint64_t>(round),
                      static_cast<std::uint64_t>(sum_index)));
  const std::uint64_t session =
      (static_cast<std::uint64_t>(round) << 8) | sum_index;
  std::vector<RingMessage>* log =
      config.collect_trace ? &run->ring_log : nullptr;
  const double total = secure_sum(values, rng, log, session);
  if (config.collect_trace) {
    run->trace.push_back({TraceKind::kSecureSumResult, round, kServerActor,
                          label + " = " + format_double(total)});
  }
  return total;
}

}  // namespace

FederatedRun run_boosting(const EncodedDataset& data,
                          const FederationConfig& config) {
  validate(data, config);
  const bool non_private = config.mechanism == MechanismKind::kNoOp;
  const std::size_t n = data.size();

  std::vector<DataOwner> owners =
      partition_owners(n, config.owner_count, config.seed);
  std::vector<std::size_t> all_rows(n);
  std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});
  std::vector<double> weights = init_weights(n);

  Rng group_rng(derive_seed(config.seed, kGroupStream));

  FederatedRun run;
  run.non_private = non_private;
  run.ensemble.class_count = data.class_count;
  run.ensemble.context = config.context;

  for (std::size_t round = 1; round <= config.rounds; ++round) {
    RoundReport report;
    report.round = round;

    BaseModel model;
    if (non_private) {
      // Exact path: every owner pools its raw statistics each round, so the
      // round reproduces centralized boosting bit for bit. The participation
      // ledger is irrelevant because nothing privatized leaves an owner.
      for (const auto& owner : owners) report.group.push_back(owner.id);
      switch (config.learner) {
        case LearnerKind::kStump:
          model = fit_stump_pooled(data, all_rows, weights,
                                   config.context.binarizer);
          break;
        case LearnerKind::kCentroid:
          model = fit_centroids_pooled(data, all_rows, weights, n,
                                       data.class_count);
          break;
        case LearnerKind::kLinear:
          model = fit_linear_pooled(data, all_rows, weights, data.class_count,
                                    config.lr);
          break;
      }
      report.noise_scale = 0.0;
    } else {
      report.group = select_group(owners, config.group_size, group_rng);
      model = aggregate_round_model(data, config, owners, report.group,
                                    weights, round,
                                    config.collect_trace ? &run.trace : nullptr);
      report.noise_scale = mechanism_output_bound(
          config.mechanism, record_width(config, data), config.epsilon);
    }
    report.model_summary = summarize(model);
    if (config.collect_trace) {
      run.trace.push_back({TraceKind::kBroadcastModel, round, kServerActor,
                           report.model_summary});
    }

    // Boosting bookkeeping: weighted error of the broadcast model over every
    // sample, then the weight update and renormalization. Private runs move
    // the per-owner partial sums through the masked ring so that only totals
    // surface; the non-private path sums in global row order, matching the
    // centralized reference exactly.
    double error = 0.0;
    if (non_private) {
      const ErrorStat stat = weighted_error_local(model, config.context, data,
                                                  all_rows, weights);
      error = stat.error_mass / stat.weight_mass;
    } else {
      std::vector<double> error_parts(owners.size());
      std::vector<double> mass_parts(owners.size());
      for (std::size_t o = 0; o < owners.size(); ++o) {
        const ErrorStat stat = weighted_error_local(
            model, config.context, data, owners[o].samples, weights);
        error_parts[o] = stat.error_mass;
        mass_parts[o] = stat.weight_mass;
      }
      const double error_mass =
          federated_sum(error_parts, config, round, 0, "weighted error", &run);
      const double weight_mass =
          federated_sum(mass_parts, config, round, 1, "weight total", &run);
      if (!(weight_mass > 0.0)) {
        throw DomainError("run_boosting: aggregated weight mass vanished");
      }
      error = std::min(1.0, std::max(0.0, error_mass / weight_mass));
    }

    double alpha = alpha_from_error(error, data.class_count);
    report.error = error;
    if (alpha <= 0.0) {
      if (config.strict_alpha) {
        throw WeakLearnerError("round " + std::to_string(round) +
                               ": base model no better than chance (error " +
                               format_double(error) + ")");
      }
      alpha = 0.0;
      report.alpha_clipped = true;
    }
    report.alpha = alpha;

    if (non_private) {
      const double total = boost_weights_local(weights, data, all_rows, model,
                                               config.context, alpha);
      scale_weights(weights, all_rows, 1.0 / total);
    } else {
      std::vector<double> totals(owners.size());
      for (std::size_t o = 0; o < owners.size(); ++o) {
        totals[o] = boost_weights_local(weights, data, owners[o].samples,
                                        model, config.context, alpha);
      }
      const double total =
          federated_sum(totals, config, round, 2, "updated weight total", &run);
      if (!(total > 0.0)) {
        throw DomainError("run_boosting: updated weight total vanished");
      }
      scale_weights(weights, all_rows, 1.0 / total);
    }

    run.ensemble.members.push_back(WeightedMember{std::move(model), alpha});
    run.rounds.push_back(std::move(report));
  }
  return run;
}

}  // namespace ldpb
