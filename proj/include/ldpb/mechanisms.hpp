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

#ifndef LDPB_MECHANISMS_HPP_
#define LDPB_MECHANISMS_HPP_

#include <span>
#include <string_view>
#include <vector>

#include "ldpb/random.hpp"

namespace ldpb {

// Validated privacy loss bound. Construction rejects non-finite and
// non-positive values; there is no failure-probability parameter anywhere in
// the library (the guarantees here are pure, not approximate).
class PrivacyBudget {
 public:
  explicit PrivacyBudget(double epsilon);
  double value() const { return epsilon_; }

 private:
  double epsilon_;
};

enum class MechanismKind { kNoOp, kLaplace, kPiecewise, kDuchi };

// Accepts "noop", "laplace", "pm", "duchi".
MechanismKind mechanism_from_name(std::string_view name);
std::string_view mechanism_name(MechanismKind kind);

// Shape of the single-attribute piecewise output density for a given input:
// a short high-density core [core_lo, core_hi] inside the output range
// [-out_bound, out_bound] and flat low-density tails elsewhere. The two
// density levels differ by a factor of exactly e^eps.
struct PmParams {
  double out_bound;  // half-range of the output support
  double core_lo;    // left edge of the high-density core
  double core_hi;    // right edge of the high-density core
  double core_prob;  // probability mass assigned to the core
};

PmParams compute_pm_params(double x, PrivacyBudget eps);

// Single-attribute piecewise perturbation. Input in [-1,1]; output in
// [-out_bound, out_bound]; unbiased.
double pm_perturb_1d(double x, PrivacyBudget eps, Rng& rng);

// Number of coordinates the multi-dimensional variant reports:
// max{1, min{dim, floor(eps/2.5)}}.
std::size_t pm_sampled_coordinates(std::size_t dim, PrivacyBudget eps);

// Multi-attribute piecewise perturbation: k coordinates drawn without
// replacement, each perturbed at eps/k and scaled by dim/k; the rest are
// exactly zero. Unbiased per coordinate. With dim == 1 this consumes the
// stream identically to pm_perturb_1d.
std::vector<double> pm_perturb_md(std::span<const double> x, PrivacyBudget eps,
                                  Rng& rng);

// Additive Laplace noise with scale 2/eps (the [-1,1] domain has width 2).
double laplace_perturb_1d(double x, PrivacyBudget eps, Rng& rng);

// Budget split evenly across coordinates: per-coordinate scale 2*dim/eps.
std::vector<double> laplace_perturb_md(std::span<const double> x,
                                       PrivacyBudget eps, Rng& rng);

// Output magnitude of the corner-vote mechanism below, calibrated so the
// estimator is unbiased for every dim and eps.
struct DuchiParams {
  double bound_b;
};

DuchiParams compute_duchi_params(std::size_t dim, PrivacyBudget eps);

// Corner-vote baseline: a sign vector drawn per coordinate from the input,
// then a corner of {-B, B}^dim sampled on the agreeing (probability
// e^eps/(e^eps+1)) or opposing side of that vector's hyperplane.
std::vector<double> duchi_perturb_md(std::span<const double> x,
                                     PrivacyBudget eps, Rng& rng);

// Affine rescaling between a public domain [-bound, bound] and the unit
// domain [-1, 1] the mechanisms operate on.
double scale_to_unit(double value, double bound);
double unscale(double value, double bound);

// Dispatch on kind; kNoOp copies the input and ignores eps. Multi-dimensional
// inputs route to the *_md variants.
std::vector<double> perturb(MechanismKind kind, std::span<const double> x,
                            PrivacyBudget eps, Rng& rng);

}  // namespace ldpb

#endif  // LDPB_MECHANISMS_HPP_
