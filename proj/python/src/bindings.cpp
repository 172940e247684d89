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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "ldpb/aggregate.hpp"
#include "ldpb/boosting.hpp"
#include "ldpb/cli.hpp"
#include "ldpb/data.hpp"
#include "ldpb/errors.hpp"
#include "ldpb/federation.hpp"
#include "ldpb/mechanisms.hpp"
#include "ldpb/model_io.hpp"
#include "ldpb/random.hpp"
#include "ldpb/secure_sum.hpp"

namespace py = pybind11;

namespace {

std::vector<double> py_perturb(const std::string& mechanism,
                               const std::vector<double>& values, double eps,
                               std::uint64_t seed) {
  ldpb::Rng rng(seed);
  const ldpb::MechanismKind kind = ldpb::mechanism_from_name(mechanism);
  const double budget = kind == ldpb::MechanismKind::kNoOp ? 1.0 : eps;
  return ldpb::perturb(kind, values, ldpb::PrivacyBudget(budget), rng);
}

std::vector<double> py_estimate_mean(
    const std::vector<std::vector<double>>& records) {
  return ldpb::estimate_mean(records).value;
}

double py_secure_sum(const std::vector<double>& values, std::uint64_t seed) {
  ldpb::Rng rng(seed);
  return ldpb::secure_sum(values, rng);
}

py::dict py_synth_csv(const std::string& out, const std::string& schema_out,
                      std::size_t n, std::size_t informative,
                      std::size_t combos, double separation,
                      double combo_noise, std::uint64_t seed) {
  ldpb::SynthSpec spec;
  spec.n = n;
  spec.informative = informative;
  spec.combos = combos;
  spec.separation = separation;
  spec.combo_noise = combo_noise;
  spec.seed = seed;
  const ldpb::SynthResult synth = ldpb::gen_synthetic(spec);
  ldpb::save_dataset_csv(synth, out, schema_out);
  py::dict result;
  result["samples"] = synth.dataset.size();
  result["dim"] = synth.dataset.dim;
  return result;
}

py::dict py_train_csv(const std::string& dataset, const std::string& schema,
                      const std::string& learner, const std::string& mechanism,
                      double eps, std::size_t owners, std::size_t group_size,
                      std::size_t rounds, std::uint64_t seed,
                      double test_fraction, double clip_bound,
                      double binarize_threshold, int norm_order,
                      bool strict_alpha, const std::string& model_out) {
  const ldpb::Schema loaded_schema = ldpb::load_schema(schema);
  const ldpb::RawTable table = ldpb::load_csv(dataset);
  auto [encoded, encoding] = ldpb::encode_dataset(table, loaded_schema);
  const ldpb::SplitResult split = ldpb::train_test_split(
      encoded, test_fraction, ldpb::derive_seed(seed, 0x73706c));

  ldpb::FederationConfig config;
  config.owner_count = owners;
  config.group_size = group_size;
  config.rounds = rounds;
  config.mechanism = ldpb::mechanism_from_name(mechanism);
  config.epsilon =
      config.mechanism == ldpb::MechanismKind::kNoOp ? 0.0 : eps;
  config.learner = ldpb::learner_from_name(learner);
  config.seed = seed;
  config.context.binarizer.threshold = binarize_threshold;
  config.context.norm_order = norm_order;
  config.clip_bound = clip_bound;
  config.strict_alpha = strict_alpha;

  const ldpb::FederatedRun run = ldpb::run_boosting(split.train, config);
  if (!model_out.empty()) {
    ldpb::save_model(model_out, run.ensemble, encoding,
                     {{"learner", learner},
                      {"mechanism", mechanism},
                      {"epsilon", std::to_string(eps)},
                      {"rounds", std::to_string(rounds)},
                      {"seed", std::to_string(seed)}});
  }

  py::list round_reports;
  for (const auto& report : run.rounds) {
    py::dict entry;
    entry["round"] = report.round;
    entry["error"] = report.error;
    entry["alpha"] = report.alpha;
    entry["group_size"] = report.group.size();
    entry["model"] = report.model_summary;
    round_reports.append(entry);
  }
  py::dict result;
  result["accuracy"] = ldpb::evaluate_accuracy(run.ensemble, split.test);
  result["train_accuracy"] = ldpb::evaluate_accuracy(run.ensemble, split.train);
  result["non_private"] = run.non_private;
  result["rounds"] = round_reports;
  return result;
}

double py_eval_csv(const std::string& model, const std::string& dataset) {
  const ldpb::LoadedModel loaded = ldpb::load_model(model);
  const ldpb::RawTable table = ldpb::load_csv(dataset);
  return ldpb::evaluate_accuracy(loaded.ensemble,
                                 ldpb::encode_with(table, loaded.encoding));
}

}  // namespace

PYBIND11_MODULE(_ldpboost, m) {
  m.doc() = "Privacy-preserving federated boosting toolkit";

  py::register_exception<ldpb::DomainError>(m, "DomainError",
                                            PyExc_ValueError);
  py::register_exception<ldpb::FixedPointOverflow>(m, "FixedPointOverflow",
                                                   PyExc_OverflowError);
  py::register_exception<ldpb::BudgetExhausted>(m, "BudgetExhausted",
                                                PyExc_RuntimeError);
  py::register_exception<ldpb::WeakLearnerError>(m, "WeakLearnerError",
                                                 PyExc_RuntimeError);

  m.def("perturb", &py_perturb, py::arg("mechanism"), py::arg("values"),
        py::arg("eps"), py::arg("seed"),
        "Perturb one record with the named mechanism");
  m.def("estimate_mean", &py_estimate_mean, py::arg("records"),
        "Coordinate-wise mean of perturbed records");
  m.def("secure_sum", &py_secure_sum, py::arg("values"), py::arg("seed"),
        "Masked two-pass ring sum");
  m.def("synth_csv", &py_synth_csv, py::arg("out"), py::arg("schema_out"),
        py::arg("n") = 10000, py::arg("informative") = 10,
        py::arg("combos") = 10, py::arg("separation") = 0.6,
        py::arg("combo_noise") = 0.0, py::arg("seed") = 1,
        "Generate a synthetic dataset with a schema sidecar");
  m.def("train_csv", &py_train_csv, py::arg("dataset"), py::arg("schema"),
        py::arg("learner") = "bdt", py::arg("mechanism") = "noop",
        py::arg("eps") = 0.0, py::arg("owners") = 1,
        py::arg("group_size") = 0, py::arg("rounds") = 1, py::arg("seed") = 1,
        py::arg("test_fraction") = 0.2, py::arg("clip_bound") = 1.0,
        py::arg("binarize_threshold") = 0.0, py::arg("norm_order") = 2,
        py::arg("strict_alpha") = false, py::arg("model_out") = "",
        "Run federated boosting on a CSV and report accuracy");
  m.def("eval_csv", &py_eval_csv, py::arg("model"), py::arg("dataset"),
        "Accuracy of a saved model on a CSV");
  m.def("run_cli", &ldpb::run_cli, py::arg("args"),
        "Run the command-line tool; returns its exit code");
}
