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

#include "ldpb/cli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <utility>

#include <CLI11.hpp>

#include "ldpb/aggregate.hpp"
#include "ldpb/boosting.hpp"
#include "ldpb/data.hpp"
#include "ldpb/errors.hpp"
#include "ldpb/federation.hpp"
#include "ldpb/format.hpp"
#include "ldpb/model_io.hpp"
#include "ldpb/random.hpp"

namespace ldpb {

namespace {

// Stream labels for the per-command deterministic seeds.
constexpr std::uint64_t kSplitStream = 0x73706c;
constexpr std::uint64_t kTrainStream = 0x747261;
constexpr std::uint64_t kBenchStream = 0x62656e;
constexpr std::uint64_t kHitStream = 0x686974;
constexpr std::uint64_t kPopulationStream = 0x706f70;

std::string path_stem(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

std::string default_schema_path(const std::string& data_path) {
  std::filesystem::path p(data_path);
  p.replace_extension();
  return p.string() + ".schema.json";
}

double sample_mean(const std::vector<double>& xs) {
  double total = 0.0;
  for (double x : xs) total += x;
  return total / static_cast<double>(xs.size());
}

double sample_sd(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double mean = sample_mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

// ---------------------------------------------------------------------------
// Result tables: comment lines carrying the full effective configuration,
// then a fixed header and one comma-separated row per measurement.
// ---------------------------------------------------------------------------

struct TableRow {
  std::string dataset;
  std::string learner;
  std::string mechanism;
  double epsilon = 0.0;
  std::size_t rounds = 0;
  std::string seed;
  std::string metric;
  double value = 0.0;
  double sd = 0.0;
};

using ConfigItems = std::vector<std::pair<std::string, std::string>>;

void write_table(const std::string& out_path, const std::string& command,
                 const ConfigItems& config, const std::vector<TableRow>& rows) {
  std::ostringstream text;
  text << "# ldpboost " << command << "\n# config:";
  for (const auto& [key, value] : config) text << ' ' << key << '=' << value;
  text << "\ndataset,learner,mechanism,epsilon,rounds,seed,metric,value,sd\n";
  for (const auto& row : rows) {
    text << row.dataset << ',' << row.learner << ',' << row.mechanism << ','
         << format_double(row.epsilon) << ',' << row.rounds << ',' << row.seed
         << ',' << row.metric << ',' << format_double(row.value) << ','
         << format_double(row.sd) << '\n';
  }
  if (out_path.empty()) {
    std::cout << text.str();
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw DomainError("cannot write output file: " + out_path);
  out << text.str();
}

std::string join_doubles(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += format_double(xs[i]);
  }
  return out;
}

template <typename T>
std::string join_integers(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(xs[i]);
  }
  return out;
}

std::string join_strings(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += xs[i];
  }
  return out;
}

// The non-private mechanism ignores the budget, but the perturbation entry
// points still demand a valid one.
PrivacyBudget effective_budget(MechanismKind kind, double epsilon) {
  return PrivacyBudget(kind == MechanismKind::kNoOp ? 1.0 : epsilon);
}

// Default budget grid: {0} for the non-private mechanism, required otherwise.
std::vector<double> resolve_eps(std::vector<double> eps, MechanismKind kind) {
  if (!eps.empty()) return eps;
  if (kind == MechanismKind::kNoOp) return {0.0};
  throw DomainError("--eps is required for private mechanisms");
}

// ---------------------------------------------------------------------------
// synth
// ---------------------------------------------------------------------------

struct SynthOptions {
  std::string out;
  std::string schema;
  SynthSpec spec;
};

int cmd_synth(const SynthOptions& opt) {
  const std::string schema_path =
      opt.schema.empty() ? default_schema_path(opt.out) : opt.schema;
  const SynthResult synth = gen_synthetic(opt.spec);
  save_dataset_csv(synth, opt.out, schema_path);
  std::cout << "wrote " << synth.dataset.size() << " samples x "
            << synth.dataset.dim << " features to " << opt.out << " (schema "
            << schema_path << ")\n";
  return 0;
}

// ---------------------------------------------------------------------------
// mse-bench
// ---------------------------------------------------------------------------

struct MseBenchOptions {
  std::vector<std::string> mechanisms{"laplace", "pm", "duchi"};
  std::vector<double> eps{1.0, 3.0, 5.0};
  std::size_t dim = 10;
  std::size_t owners = 200;
  std::size_t reps = 20;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_mse_bench(const MseBenchOptions& opt) {
  if (opt.dim == 0 || opt.owners == 0 || opt.reps == 0) {
    throw DomainError("mse-bench: --dim, --owners and --reps must be >= 1");
  }

  // One fixed population of records in the unit cube; only the mechanism
  // randomness varies across repetitions.
  Rng pop_rng(derive_seed(opt.seed, kPopulationStream));
  std::vector<std::vector<double>> population(opt.owners);
  for (auto& record : population) {
    record.resize(opt.dim);
    for (double& x : record) x = pop_rng.uniform(-1.0, 1.0);
  }
  const MeanEstimate truth = estimate_mean(population);

  std::vector<TableRow> rows;
  for (std::size_t m = 0; m < opt.mechanisms.size(); ++m) {
    const MechanismKind kind = mechanism_from_name(opt.mechanisms[m]);
    for (std::size_t e = 0; e < opt.eps.size(); ++e) {
      const double eps = opt.eps[e];
      const PrivacyBudget budget = effective_budget(kind, eps);
      const std::uint64_t cell_seed =
          derive_seed(opt.seed, kBenchStream, std::bit_cast<std::uint64_t>(eps),
                      static_cast<std::uint64_t>(kind));
      std::vector<double> rep_mse(opt.reps);
      for (std::size_t rep = 0; rep < opt.reps; ++rep) {
        Rng rng(derive_seed(cell_seed, rep));
        std::vector<std::vector<double>> perturbed(opt.owners);
        for (std::size_t i = 0; i < opt.owners; ++i) {
          perturbed[i] = perturb(kind, population[i], budget, rng);
        }
        rep_mse[rep] = mse(estimate_mean(perturbed).value, truth.value);
      }
      rows.push_back(TableRow{"uniform", "-", std::string(mechanism_name(kind)),
                              eps, 0, std::to_string(opt.seed), "mean-mse",
                              sample_mean(rep_mse), sample_sd(rep_mse)});
    }
  }

  write_table(opt.out, "mse-bench",
              {{"mechanism", join_strings(opt.mechanisms)},
               {"eps", join_doubles(opt.eps)},
               {"dim", std::to_string(opt.dim)},
               {"owners", std::to_string(opt.owners)},
               {"reps", std::to_string(opt.reps)},
               {"seed", std::to_string(opt.seed)}},
              rows);
  return 0;
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

struct TrainOptions {
  std::string dataset;
  std::string schema;
  std::string learner = "bdt";
  std::string mechanism = "noop";
  std::vector<double> eps;
  std::size_t owners = 1;
  std::size_t group_size = 0;
  std::vector<std::size_t> rounds{1};
  std::size_t reps = 1;
  std::uint64_t seed = 1;
  double test_fraction = 0.2;
  double clip_bound = 1.0;
  double binarize_threshold = 0.0;
  int norm_order = 2;
  double lr_step = 0.5;
  std::size_t lr_iterations = 200;
  bool strict_alpha = false;
  bool boost_linear = false;
  std::string out;
  std::string model_out;
};

int cmd_train(const TrainOptions& opt) {
  const MechanismKind mechanism = mechanism_from_name(opt.mechanism);
  const LearnerKind learner = learner_from_name(opt.learner);
  const std::vector<double> eps_grid = resolve_eps(opt.eps, mechanism);
  // The linear learner aggregates whole models, so boosting it is optional
  // and off by default: a single round fits the plain federated model.
  std::vector<std::size_t> rounds_grid = opt.rounds;
  if (learner == LearnerKind::kLinear && !opt.boost_linear) {
    rounds_grid = {1};
  }
  if (!opt.model_out.empty() &&
      (eps_grid.size() != 1 || rounds_grid.size() != 1 || opt.reps != 1)) {
    throw DomainError(
        "--model-out needs a single grid cell: one budget, one round count, "
        "one repetition");
  }

  const std::string schema_path =
      opt.schema.empty() ? default_schema_path(opt.dataset) : opt.schema;
  const Schema schema = load_schema(schema_path);
  const RawTable table = load_csv(opt.dataset);
  auto [dataset, encoding] = encode_dataset(table, schema);
  const SplitResult split = train_test_split(
      dataset, opt.test_fraction, derive_seed(opt.seed, kSplitStream));

  std::vector<TableRow> rows;
  for (double eps : eps_grid) {
    for (std::size_t round_count : rounds_grid) {
      std::vector<double> accs(opt.reps);
      for (std::size_t rep = 0; rep < opt.reps; ++rep) {
        FederationConfig config;
        config.owner_count = opt.owners;
        config.group_size = opt.group_size;
        config.rounds = round_count;
        config.mechanism = mechanism;
        config.epsilon = mechanism == MechanismKind::kNoOp ? 0.0 : eps;
        config.learner = learner;
        config.seed = derive_seed(
            opt.seed, kTrainStream,
            std::bit_cast<std::uint64_t>(eps) ^ round_count, rep);
        config.context.binarizer.threshold = opt.binarize_threshold;
        config.context.norm_order = opt.norm_order;
        config.lr = LrConfig{opt.lr_step, opt.lr_iterations};
        config.clip_bound = opt.clip_bound;
        config.strict_alpha = opt.strict_alpha;

        const FederatedRun run = run_boosting(split.train, config);
        accs[rep] = evaluate_accuracy(run.ensemble, split.test);

        if (!opt.model_out.empty()) {
          save_model(opt.model_out, run.ensemble, encoding,
                     {{"learner", opt.learner},
                      {"mechanism", opt.mechanism},
                      {"epsilon", format_double(eps)},
                      {"rounds", std::to_string(round_count)},
                      {"owners", std::to_string(opt.owners)},
                      {"group_size", std::to_string(opt.group_size)},
                      {"seed", std::to_string(opt.seed)}});
        }
      }
      rows.push_back(TableRow{path_stem(opt.dataset), opt.learner,
                              opt.mechanism, eps, round_count,
                              std::to_string(opt.seed), "accuracy",
                              sample_mean(accs), sample_sd(accs)});
    }
  }

  write_table(
      opt.out, "train",
      {{"dataset", opt.dataset},
       {"schema", schema_path},
       {"learner", opt.learner},
       {"mechanism", opt.mechanism},
       {"eps", join_doubles(eps_grid)},
       {"owners", std::to_string(opt.owners)},
       {"group-size", std::to_string(opt.group_size)},
       {"rounds", join_integers(rounds_grid)},
       {"reps", std::to_string(opt.reps)},
       {"seed", std::to_string(opt.seed)},
       {"test-fraction", format_double(opt.test_fraction)},
       {"clip-bound", format_double(opt.clip_bound)},
       {"binarize-threshold", format_double(opt.binarize_threshold)},
       {"norm-order", std::to_string(opt.norm_order)},
       {"lr-step", format_double(opt.lr_step)},
       {"lr-iters", std::to_string(opt.lr_iterations)},
       {"strict-alpha", opt.strict_alpha ? "true" : "false"},
       {"boost-lr", opt.boost_linear ? "true" : "false"}},
      rows);
  return 0;
}

// ---------------------------------------------------------------------------
// hitrate
// ---------------------------------------------------------------------------

struct HitrateOptions {
  std::string dataset;
  std::string schema;
  std::string mechanism = "pm";
  std::vector<double> eps;
  std::vector<std::size_t> top_k{1, 3};
  std::size_t owners = 100;
  std::size_t reps = 50;
  std::uint64_t seed = 1;
  double binarize_threshold = 0.0;
  std::string out;
};

int cmd_hitrate(const HitrateOptions& opt) {
  if (opt.reps == 0) throw DomainError("hitrate: --reps must be >= 1");
  const MechanismKind mechanism = mechanism_from_name(opt.mechanism);
  const std::vector<double> eps_grid = resolve_eps(opt.eps, mechanism);

  const std::string schema_path =
      opt.schema.empty() ? default_schema_path(opt.dataset) : opt.schema;
  const Schema schema = load_schema(schema_path);
  const RawTable table = load_csv(opt.dataset);
  auto [dataset, encoding] = encode_dataset(table, schema);

  // Ground truth: the attribute ranking of the exact pooled statistics under
  // uniform weights.
  std::vector<std::size_t> all_rows(dataset.size());
  std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});
  const std::vector<double> weights = init_weights(dataset.size());
  Binarizer binarizer{opt.binarize_threshold};
  const CrossTableDiffs exact =
      crosstable_diffs(dataset, all_rows, weights, binarizer);
  const std::vector<std::size_t> ranked = rank_attributes(exact);

  const std::vector<DataOwner> owners = partition_owners(
      dataset.size(), opt.owners, derive_seed(opt.seed, kHitStream));

  std::vector<TableRow> rows;
  for (double eps : eps_grid) {
    FederationConfig share_config;
    share_config.mechanism = mechanism;
    // The share path always constructs a budget, so give the non-private
    // mechanism a valid placeholder; it never reads the value.
    share_config.epsilon = mechanism == MechanismKind::kNoOp ? 1.0 : eps;
    share_config.seed = derive_seed(opt.seed, kHitStream,
                                    std::bit_cast<std::uint64_t>(eps));
    share_config.context.binarizer = binarizer;

    std::vector<std::size_t> chosen(opt.reps);
    for (std::size_t rep = 0; rep < opt.reps; ++rep) {
      std::vector<std::vector<double>> records;
      records.reserve(owners.size());
      for (const auto& owner : owners) {
        records.push_back(
            owner_diff_share(dataset, owner, weights, share_config, rep + 1));
      }
      chosen[rep] = choose_best_attribute(estimate_mean(records).value);
    }

    for (std::size_t k : opt.top_k) {
      const HittingRateReport report = top_k_hitting_rate(ranked, chosen, k);
      const double se = std::sqrt(report.rate * (1.0 - report.rate) /
                                  static_cast<double>(report.runs));
      rows.push_back(TableRow{path_stem(opt.dataset), "bdt", opt.mechanism,
                              eps, 1, std::to_string(opt.seed),
                              "hitrate@" + std::to_string(k), report.rate,
                              se});
    }
  }

  write_table(opt.out, "hitrate",
              {{"dataset", opt.dataset},
               {"schema", schema_path},
               {"mechanism", opt.mechanism},
               {"eps", join_doubles(eps_grid)},
               {"top-k", join_integers(opt.top_k)},
               {"owners", std::to_string(opt.owners)},
               {"reps", std::to_string(opt.reps)},
               {"seed", std::to_string(opt.seed)},
               {"binarize-threshold", format_double(opt.binarize_threshold)}},
              rows);
  return 0;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

struct EvalOptions {
  std::string model;
  std::string dataset;
  std::string out;
};

int cmd_eval(const EvalOptions& opt) {
  const LoadedModel loaded = load_model(opt.model);
  const RawTable table = load_csv(opt.dataset);
  const EncodedDataset dataset = encode_with(table, loaded.encoding);
  const double accuracy = evaluate_accuracy(loaded.ensemble, dataset);

  auto meta = [&](const std::string& key, const std::string& fallback) {
    const auto it = loaded.meta.find(key);
    return it == loaded.meta.end() ? fallback : it->second;
  };
  TableRow row;
  row.dataset = path_stem(opt.dataset);
  row.learner = meta("learner", "-");
  row.mechanism = meta("mechanism", "-");
  row.epsilon = parse_double(meta("epsilon", "0"), "model meta epsilon");
  row.rounds = loaded.ensemble.members.size();
  row.seed = meta("seed", "0");
  row.metric = "accuracy";
  row.value = accuracy;
  row.sd = 0.0;

  write_table(opt.out, "eval",
              {{"model", opt.model}, {"dataset", opt.dataset}}, {row});
  return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args) {
  CLI::App app{"Privacy-preserving federated boosting toolkit", "ldpboost"};
  app.require_subcommand(1);

  SynthOptions synth;
  auto* synth_cmd =
      app.add_subcommand("synth", "Generate a synthetic dataset with a schema");
  synth_cmd->add_option("--out", synth.out, "Output CSV path")->required();
  synth_cmd->add_option("--schema", synth.schema,
                        "Schema sidecar path (default: derived from --out)");
  synth_cmd->add_option("--n", synth.spec.n, "Sample count");
  synth_cmd->add_option("--informative", synth.spec.informative,
                        "Independently informative attribute count");
  synth_cmd->add_option("--combos", synth.spec.combos,
                        "Linear-combination attribute count");
  synth_cmd->add_option("--separation", synth.spec.separation,
                        "Class mean separation");
  synth_cmd->add_option("--combo-noise", synth.spec.combo_noise,
                        "Extra noise on combination attributes");
  synth_cmd->add_option("--seed", synth.spec.seed, "Master seed");

  MseBenchOptions bench;
  auto* bench_cmd = app.add_subcommand(
      "mse-bench", "Mean-estimation error of the perturbation mechanisms");
  bench_cmd->add_option("--mechanism", bench.mechanisms, "Mechanisms to compare")
      ->delimiter(',');
  bench_cmd->add_option("--eps", bench.eps, "Privacy budgets")->delimiter(',');
  bench_cmd->add_option("--dim", bench.dim, "Record dimension");
  bench_cmd->add_option("--owners", bench.owners, "Population size");
  bench_cmd->add_option("--reps", bench.reps, "Repetitions per cell");
  bench_cmd->add_option("--seed", bench.seed, "Master seed");
  bench_cmd->add_option("--out", bench.out, "Output table path (default stdout)");

  TrainOptions train;
  auto* train_cmd =
      app.add_subcommand("train", "Run federated boosting and report accuracy");
  train_cmd->add_option("--dataset", train.dataset, "Training CSV")->required();
  train_cmd->add_option("--schema", train.schema,
                        "Schema path (default: derived from --dataset)");
  train_cmd->add_option("--learner", train.learner, "Base learner: bdt, ncc, lr");
  train_cmd->add_option("--mechanism", train.mechanism,
                        "Perturbation mechanism: noop, laplace, pm, duchi");
  train_cmd->add_option("--eps", train.eps, "Privacy budget grid")
      ->delimiter(',');
  train_cmd->add_option("--owners", train.owners, "Data owner count");
  train_cmd->add_option("--group-size", train.group_size,
                        "Owners drawn per round (private runs)");
  train_cmd->add_option("--rounds", train.rounds, "Boosting round grid")
      ->delimiter(',');
  train_cmd->add_option("--reps", train.reps, "Repetitions per grid cell");
  train_cmd->add_option("--seed", train.seed, "Master seed");
  train_cmd->add_option("--test-fraction", train.test_fraction,
                        "Held-out fraction for the accuracy metric");
  train_cmd->add_option("--clip-bound", train.clip_bound,
                        "Linear-model parameter clip bound");
  train_cmd->add_option("--binarize-threshold", train.binarize_threshold,
                        "Attribute binarization threshold for stumps");
  train_cmd->add_option("--norm-order", train.norm_order,
                        "Distance order for the centroid learner");
  train_cmd->add_option("--lr-step", train.lr_step,
                        "Gradient step for the linear learner");
  train_cmd->add_option("--lr-iters", train.lr_iterations,
                        "Gradient iterations for the linear learner");
  train_cmd->add_flag("--strict-alpha", train.strict_alpha,
                      "Abort when a round is no better than chance");
  train_cmd->add_flag("--boost-lr", train.boost_linear,
                      "Boost the linear learner over multiple rounds");
  train_cmd->add_option("--out", train.out, "Output table path (default stdout)");
  train_cmd->add_option("--model-out", train.model_out,
                        "Save the trained model (single grid cell only)");

  HitrateOptions hitrate;
  auto* hitrate_cmd = app.add_subcommand(
      "hitrate", "How often private aggregation finds the top attributes");
  hitrate_cmd->add_option("--dataset", hitrate.dataset, "Training CSV")
      ->required();
  hitrate_cmd->add_option("--schema", hitrate.schema,
                          "Schema path (default: derived from --dataset)");
  hitrate_cmd->add_option("--mechanism", hitrate.mechanism,
                          "Perturbation mechanism");
  hitrate_cmd->add_option("--eps", hitrate.eps, "Privacy budget grid")
      ->delimiter(',');
  hitrate_cmd->add_option("--top-k", hitrate.top_k, "Hit thresholds")
      ->delimiter(',');
  hitrate_cmd->add_option("--owners", hitrate.owners, "Data owner count");
  hitrate_cmd->add_option("--reps", hitrate.reps, "Selection repetitions");
  hitrate_cmd->add_option("--seed", hitrate.seed, "Master seed");
  hitrate_cmd->add_option("--binarize-threshold", hitrate.binarize_threshold,
                          "Attribute binarization threshold");
  hitrate_cmd->add_option("--out", hitrate.out,
                          "Output table path (default stdout)");

  EvalOptions eval;
  auto* eval_cmd =
      app.add_subcommand("eval", "Evaluate a saved model on a dataset");
  eval_cmd->add_option("--model", eval.model, "Model JSON path")->required();
  eval_cmd->add_option("--dataset", eval.dataset, "Evaluation CSV")->required();
  eval_cmd->add_option("--out", eval.out, "Output table path (default stdout)");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (synth_cmd->parsed()) return cmd_synth(synth);
    if (bench_cmd->parsed()) return cmd_mse_bench(bench);
    if (train_cmd->parsed()) return cmd_train(train);
    if (hitrate_cmd->parsed()) return cmd_hitrate(hitrate);
    if (eval_cmd->parsed()) return cmd_eval(eval);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  std::cerr << "error: no command given\n";
  return 2;
}

}  // namespace ldpb
