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

#include "ldpb/mechanisms.hpp"

#include <cmath>
#include <string>

#include "ldpb/errors.hpp"

namespace ldpb {

namespace {

void require_unit(double x, const char* who) {
  if (!(x >= -1.0 && x <= 1.0)) {
    throw DomainError(std::string(who) + ": input " + std::to_string(x) +
                      " outside [-1, 1]");
  }
}

void require_unit_vector(std::span<const double> x, const char* who) {
  if (x.empty()) throw DomainError(std::string(who) + ": empty input");
  for (double v : x) require_unit(v, who);
}

double laplace_noise(double scale, Rng& rng) {
  // Inverse CDF on a strictly interior uniform so log1p never sees -1.
  const double u = rng.uniform_open() - 0.5;
  return u < 0.0 ? scale * std::log1p(2.0 * u) : -scale * std::log1p(-2.0 * u);
}

}  // namespace

PrivacyBudget::PrivacyBudget(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("PrivacyBudget: epsilon must be finite and positive, got " +
                      std::to_string(epsilon));
  }
}

MechanismKind mechanism_from_name(std::string_view name) {
  if (name == "noop") return MechanismKind::kNoOp;
  if (name == "laplace") return MechanismKind::kLaplace;
  if (name == "pm") return MechanismKind::kPiecewise;
  if (name == "duchi") return MechanismKind::kDuchi;
  throw DomainError("unknown mechanism name: " + std::string(name));
}

std::string_view mechanism_name(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kNoOp:
      return "noop";
    case MechanismKind::kLaplace:
      return "laplace";
    case MechanismKind::kPiecewise:
      return "pm";
    case MechanismKind::kDuchi:
      return "duchi";
  }
  throw DomainError("unknown mechanism kind");
}

PmParams compute_pm_params(double x, PrivacyBudget eps) {
  require_unit(x, "compute_pm_params");
  const double half = std::exp(eps.value() / 2.0);
  const double out_bound = (half + 1.0) / (half - 1.0);
  const double core_lo = 0.5 * ((out_bound + 1.0) * x - (out_bound - 1.0));
  return PmParams{
      .out_bound = out_bound,
      .core_lo = core_lo,
      .core_hi = core_lo + out_bound - 1.0,
      .core_prob = half / (half + 1.0),
  };
}

double pm_perturb_1d(double x, PrivacyBudget eps, Rng& rng) {
  const PmParams p = compute_pm_params(x, eps);
  if (rng.uniform() < p.core_prob) {
    return rng.uniform(p.core_lo, p.core_hi);
  }
  // Tails get the remaining mass; pick a side proportionally to its length
  // so the density level is constant across both pieces.
  const double left_len = p.core_lo + p.out_bound;
  const double right_len = p.out_bound - p.core_hi;
  const double u = rng.uniform() * (left_len + right_len);
  return u < left_len ? -p.out_bound + u : p.core_hi + (u - left_len);
}

std::size_t pm_sampled_coordinates(std::size_t dim, PrivacyBudget eps) {
  if (dim == 0) throw DomainError("pm_sampled_coordinates: zero dimension");
  const double raw = std::floor(eps.value() / 2.5);
  if (raw < 1.0) return 1;
  if (raw >= static_cast<double>(dim)) return dim;
  return static_cast<std::size_t>(raw);
}

std::vector<double> pm_perturb_md(std::span<const double> x, PrivacyBudget eps,
                                  Rng& rng) {
  require_unit_vector(x, "pm_perturb_md");
  const std::size_t d = x.size();
  const std::size_t k = pm_sampled_coordinates(d, eps);
  const PrivacyBudget sub(eps.value() / static_cast<double>(k));
  const double gain = static_cast<double>(d) / static_cast<double>(k);
  std::vector<double> out(d, 0.0);
  for (std::size_t j : sample_without_replacement(d, k, rng)) {
    out[j] = gain * pm_perturb_1d(x[j], sub, rng);
  }
  return out;
}

double laplace_perturb_1d(double x, PrivacyBudget eps, Rng& rng) {
  require_unit(x, "laplace_perturb_1d");
  return x + laplace_noise(2.0 / eps.value(), rng);
}

std::vector<double> laplace_perturb_md(std::span<const double> x,
                                       PrivacyBudget eps, Rng& rng) {
  require_unit_vector(x, "laplace_perturb_md");
  const PrivacyBudget sub(eps.value() / static_cast<double>(x.size()));
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    out[j] = laplace_perturb_1d(x[j], sub, rng);
  }
  return out;
}

DuchiParams compute_duchi_params(std::size_t dim, PrivacyBudget eps) {
  if (dim == 0) throw DomainError("compute_duchi_params: zero dimension");
  // r = C(2k, k) / 4^k, the central binomial ratio, built as a stable
  // product. The per-coordinate attenuation of a uniform same-side corner is
  // m = r for odd dim (k = (dim-1)/2) and m = r/(1+r) for even dim
  // (k = dim/2, where the boundary corners belong to both sides); B = 1/m
  // divided by the vote bias restores unbiasedness.
  const std::size_t k = (dim % 2 == 1) ? (dim - 1) / 2 : dim / 2;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    r *= (2.0 * static_cast<double>(i) - 1.0) / (2.0 * static_cast<double>(i));
  }
  const double m = (dim % 2 == 1) ? r : r / (1.0 + r);
  const double e = std::exp(eps.value());
  return DuchiParams{.bound_b = (e + 1.0) / ((e - 1.0) * m)};
}

std::vector<double> duchi_perturb_md(std::span<const double> x,
                                     PrivacyBudget eps, Rng& rng) {
  require_unit_vector(x, "duchi_perturb_md");
  const std::size_t d = x.size();
  const double b = compute_duchi_params(d, eps).bound_b;

  std::vector<int> v(d);
  for (std::size_t j = 0; j < d; ++j) {
    v[j] = rng.bernoulli(0.5 + 0.5 * x[j]) ? 1 : -1;
  }
  const double e = std::exp(eps.value());
  const bool agree = rng.bernoulli(e / (e + 1.0));

  // Uniform corner on the requested side of the hyperplane v·z = 0 by
  // rejection; at least half of all corners qualify, so this terminates
  // quickly. Corners on the hyperplane itself belong to both sides.
  std::vector<double> out(d);
  while (true) {
    long dot = 0;
    for (std::size_t j = 0; j < d; ++j) {
      const int s = rng.bernoulli(0.5) ? 1 : -1;
      out[j] = s;
      dot += s * v[j];
    }
    if (agree ? dot >= 0 : dot <= 0) break;
  }
  for (double& o : out) o *= b;
  return out;
}

double scale_to_unit(double value, double bound) {
  if (!(bound > 0.0) || !std::isfinite(bound)) {
    throw DomainError("scale_to_unit: bound must be finite and positive");
  }
  if (!(std::fabs(value) <= bound)) {
    throw DomainError("scale_to_unit: |" + std::to_string(value) +
                      "| exceeds bound " + std::to_string(bound));
  }
  return value / bound;
}

double unscale(double value, double bound) {
  if (!(bound > 0.0) || !std::isfinite(bound)) {
    throw DomainError("unscale: bound must be finite and positive");
  }
  return value * bound;
}

std::vector<double> perturb(MechanismKind kind, std::span<const double> x,
                            PrivacyBudget eps, Rng& rng) {
  switch (kind) {
    case MechanismKind::kNoOp:
      return std::vector<double>(x.begin(), x.end());
    case MechanismKind::kLaplace:
      return laplace_perturb_md(x, eps, rng);
    case MechanismKind::kPiecewise:
      return pm_perturb_md(x, eps, rng);
    case MechanismKind::kDuchi:
      return duchi_perturb_md(x, eps, rng);
  }
  throw DomainError("perturb: unknown mechanism kind");
}

}  // namespace ldpb
