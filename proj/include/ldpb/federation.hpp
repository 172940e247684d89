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

#ifndef LDPB_FEDERATION_HPP_
#define LDPB_FEDERATION_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ldpb/boosting.hpp"
#include "ldpb/data.hpp"
#include "ldpb/mechanisms.hpp"
#include "ldpb/secure_sum.hpp"

namespace ldpb {

// One participant: a disjoint slice of the training samples plus a ledger bit
// recording whether it has already submitted a privatized share. Privacy
// accounting is per record: every record is perturbed at most once, at the
// full stated budget, across the whole run.
struct DataOwner {
  std::size_t id = 0;
  std::vector<std::size_t> samples;  // ascending global row indices
  bool participated = false;
};

struct FederationConfig {
  std::size_t owner_count = 1;
  // Owners drawn per round among those that never participated. Required for
  // private runs; must be 0 (or equal to owner_count) for non-private runs,
  // which always use every owner and skip the ledger.
  std::size_t group_size = 0;
  std::size_t rounds = 1;
  MechanismKind mechanism = MechanismKind::kNoOp;
  double epsilon = 0.0;  // ignored for the non-private mechanism
  LearnerKind learner = LearnerKind::kStump;
  std::uint64_t seed = 1;
  PredictContext context;
  LrConfig lr;
  double clip_bound = 1.0;  // linear-model parameter clipping before transport
  bool strict_alpha = false;
  bool collect_trace = false;
};

enum class TraceKind { kPerturbedShare, kSecureSumResult, kBroadcastModel };

// Owner-visible protocol event; server-side events use kServerActor.
inline constexpr std::size_t kServerActor =
    std::numeric_limits<std::size_t>::max();

struct TraceEvent {
  TraceKind kind = TraceKind::kPerturbedShare;
  std::size_t round = 0;
  std::size_t actor = kServerActor;
  std::string detail;
};

struct RoundReport {
  std::size_t round = 0;                // 1-based
  std::vector<std::size_t> group;       // participating owner ids, ascending
  double error = 0.0;                   // weighted error the stage weight used
  double alpha = 0.0;
  bool alpha_clipped = false;
  double noise_scale = 0.0;  // characteristic magnitude of one perturbed coordinate
  std::string model_summary;
};

struct FederatedRun {
  Ensemble ensemble;
  std::vector<RoundReport> rounds;
  bool non_private = false;
  std::vector<TraceEvent> trace;     // only when collect_trace is set
  std::vector<RingMessage> ring_log; // only when collect_trace is set
};

// Splits rows 0..sample_count-1 into owner_count disjoint trunks after a
// seeded shuffle; the first (sample_count mod owner_count) owners hold one
// extra row. Every owner's slice is sorted ascending.
std::vector<DataOwner> partition_owners(std::size_t sample_count,
                                        std::size_t owner_count,
                                        std::uint64_t seed);

// Draws group_size distinct owners uniformly among those that never
// participated, marks them, and returns their ids ascending. Throws
// BudgetExhausted when too few fresh owners remain.
std::vector<std::size_t> select_group(std::vector<DataOwner>& owners,
                                      std::size_t group_size, Rng& rng);

// ---------------------------------------------------------------------------
// Per-owner privatized submissions. Each is a pure function of
// (config.seed, round, owner.id) and the current weights, so the result does
// not depend on the order owners are processed in.
// ---------------------------------------------------------------------------

// Cross-table differences of the owner's slice under its locally renormalized
// weights (slice mass scaled to exactly 1, keeping every entry inside the
// mechanism's unit domain with no slack lost), perturbed as one record.
CrossTableDiffs owner_diff_share(const EncodedDataset& data,
                                 const DataOwner& owner,
                                 std::span<const double> weights,
                                 const FederationConfig& config,
                                 std::size_t round);

// One perturbed share per sample held by the owner, each attenuated by the
// clipped relevance min(1, total_count * weight) before perturbation.
std::vector<WeightedShare> owner_sample_shares(const EncodedDataset& data,
                                               const DataOwner& owner,
                                               std::span<const double> weights,
                                               const FederationConfig& config,
                                               std::size_t round);

// The owner's locally fitted linear model, clipped, rescaled and perturbed as
// one record.
std::vector<double> owner_linear_share(const EncodedDataset& data,
                                       const DataOwner& owner,
                                       std::span<const double> weights,
                                       const FederationConfig& config,
                                       std::size_t round);

// Characteristic magnitude of one perturbed coordinate for a record of the
// given width: 1 for the non-private mechanism, the per-coordinate noise
// scale for the additive mechanism, and the output bound for the bounded
// mechanisms.
double mechanism_output_bound(MechanismKind kind, std::size_t record_dim,
                              double epsilon);

// Runs the full federated boosting protocol. Private runs draw a fresh owner
// group each round, aggregate privatized shares into the round's base model,
// and push the exact boosting bookkeeping (weighted error, weight totals)
// through masked ring sums. Non-private runs reproduce centralized boosting
// over the pooled data exactly.
FederatedRun run_boosting(const EncodedDataset& data,
                          const FederationConfig& config);

}  // namespace ldpb

#endif  // LDPB_FEDERATION_HPP_
