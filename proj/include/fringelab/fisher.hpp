// Copyright 2026 The FringeLab Authors
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

#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "fringelab/fock.hpp"
#include "fringelab/fringes.hpp"
#include "fringelab/peak_search.hpp"

namespace fringelab {

/// Fisher terms with p below this are candidates for the removable-singularity rule.
inline constexpr double kVanishingProbability = 1e-12;
/// ... and are dropped only if the slope is also below this.
inline constexpr double kVanishingSlope = 1e-9;

/// Sampled Fisher information curve.
struct FisherProfile {
  std::vector<double> phis;
  std::vector<double> values;
  std::optional<std::vector<double>> band;
  std::string label;
};

/// p * (d ln p)^2 evaluated as slope^2 / p. Zero at a removable singularity.
inline double fisher_term(double probability, double slope) {
  if (probability < kVanishingProbability && std::abs(slope) < kVanishingSlope) return 0.0;
  if (probability <= 0.0) return std::numeric_limits<double>::infinity();
  return slope * slope / probability;
}

/// Two-outcome Fisher information slope^2 / (p (1 - p)).
inline double binary_fisher(const FringePoint& point) {
  const double p = point.probability;
  const double q = point.complement;
  const bool at_edge = p < kVanishingProbability || q < kVanishingProbability;
  if (at_edge && std::abs(point.slope) < kVanishingSlope) return 0.0;
  const double denom = p * q;
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  return point.slope * point.slope / denom;
}

/// Amplitude form of slope^2 / p: with A = <m|psi(phi)> and B = <m|h|psi(phi)>,
/// slope^2 / p = 4 Im(conj(A) B)^2 / |A|^2. Small-p terms keep full precision.
/// Where A vanishes to rounding the term takes its limit 4|B|^2 (zero when B
/// vanishes as well).
inline double amplitude_fisher_term(const FringePoint& point) {
  constexpr double kAmplitudeFloor = 1e-12;
  const double mod = std::abs(point.amplitude);
  if (mod < kAmplitudeFloor) return 4.0 * std::norm(point.generator_amplitude);
  const double projected = std::imag(std::conj(point.amplitude) * point.generator_amplitude) / mod;
  return 4.0 * projected * projected;
}

/// Fisher information of full photon counting over all N+1 outcomes.
inline double full_fisher(const TwoModeState& input, double phi) {
  const int n = input.total_photons();
  double total = 0.0;
  for (int k = 0; k <= n; ++k) {
    total += amplitude_fisher_term(detail::fringe_point(input, detected_ket({k, n - k}), phi));
  }
  return total;
}

/// Fisher information of a single fringe together with its null complement.
inline double single_fringe_fisher(const TwoModeState& input, const OutcomePattern& outcome, double phi) {
  return binary_fisher(fringe_point(input, outcome, phi));
}

inline double single_fringe_fisher_model(const FringeModel& model, double phi) {
  return binary_fisher(model.evaluate(phi));
}

/// Single-fringe Fisher information of a model and its 1-sigma half-width
/// from first-order propagation of the parameter covariance.
struct FisherWithError {
  double value = 0.0;
  double sigma = 0.0;
};

inline FisherWithError single_fringe_fisher_model(const FringeModel& model, double phi,
                                                  const std::array<std::array<double, 2>, 2>& covariance) {
  const FringePoint point = model.evaluate(phi);
  FisherWithError out{binary_fisher(point), 0.0};
  const double p = point.probability;
  const double q = point.complement;
  const double denom = p * q;
  if (!(denom > 0.0) || !std::isfinite(out.value) || out.value == 0.0) return out;
  const ParameterGradient g = model.parameter_gradient(phi);
  // F = D^2 / (p q), q = 1 - p:  dF = 2 D dD / (p q) - D^2 (q - p) dp / (p q)^2
  std::array<double, 2> grad{};
  for (int i = 0; i < 2; ++i) {
    grad[i] = 2.0 * point.slope * g.slope[i] / denom -
              point.slope * point.slope * (q - p) * g.probability[i] / (denom * denom);
  }
  double var = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) var += grad[i] * covariance[i][j] * grad[j];
  }
  out.sigma = std::sqrt(std::max(0.0, var));
  return out;
}

/// <m|(n1 - n2)^2|m> for the detected ket m = BS^-1 |outcome>.
inline double output_uncertainty_bound(const OutcomePattern& outcome) {
  const TwoModeState m = detected_ket(outcome);
  const int n = m.total_photons();
  double second = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double d = static_cast<double>(2 * k - n);
    second += std::norm(m.amplitudes()[static_cast<std::size_t>(k)]) * d * d;
  }
  return second;
}

/// N(N+2)/2, the single-fringe Fisher information of the HB state at phi -> 0.
inline double hb_limit(int photons) {
  if (photons < 2 || photons % 2 != 0) {
    throw PhysicsError("the Holland-Burnett limit is defined for even N >= 2, got N=" + std::to_string(photons));
  }
  const double n = photons;
  return 0.5 * n * (n + 2.0);
}

/// log C(n, k)
inline double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

/// Best single-fringe Fisher information of an ideal NOON state:
/// N^2 C(N, floor(N/2)) / 2^(N-1). Exact products up to N = 60, log-gamma beyond.
inline double noon_single_fringe_max(int photons) {
  if (photons < 1) throw std::invalid_argument("noon_single_fringe_max needs N >= 1");
  const double n = photons;
  const int half = photons / 2;
  double ratio = 0.0;
  if (photons <= 60) {
    // C(N, half) / 2^(N-1) accumulated term by term.
    ratio = 2.0;
    for (int i = 1; i <= half; ++i) ratio *= static_cast<double>(photons - half + i) / static_cast<double>(i);
    ratio = std::ldexp(ratio, -photons);
  } else {
    ratio = std::exp(log_binomial(photons, half) - (n - 1.0) * std::numbers::ln2);
  }
  return n * n * ratio;
}

/// sqrt(8/pi) N^(3/2).
inline double noon_asymptotic(double photons) { return std::sqrt(8.0 / std::numbers::pi) * std::pow(photons, 1.5); }

struct ScalingRow {
  int photons = 0;
  double shot_noise = 0.0;
  double noon_single = 0.0;
  std::optional<double> hb_single;  // HB states exist only for even N
  std::optional<double> noon_asymptote;
};

/// Rows N = 1..n_max. The HB column is filled for even N only.
inline std::vector<ScalingRow> scaling_table(int n_max, bool with_asymptote = false) {
  if (n_max < 1) throw std::invalid_argument("scaling table needs n_max >= 1");
  std::vector<ScalingRow> rows;
  rows.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    ScalingRow row;
    row.photons = n;
    row.shot_noise = n;
    row.noon_single = noon_single_fringe_max(n);
    if (n % 2 == 0) row.hb_single = hb_limit(n);
    if (with_asymptote) row.noon_asymptote = noon_asymptotic(n);
    rows.push_back(row);
  }
  return rows;
}

/// The chain  F_i(phi) <= 4|<m|h|psi(phi)>|^2 / (1 - p) <= <m|(n1-n2)^2|m>.
struct OptimalityCertificate {
  double single_fringe = 0.0;
  double overlap_bound = 0.0;
  double output_bound = 0.0;
  bool first_tight = false;
  bool second_tight = false;
};

inline OptimalityCertificate optimality_certificate(const TwoModeState& input, const OutcomePattern& outcome,
                                                    double phi, double tolerance = 1e-9) {
  check_outcome(input, outcome);
  const TwoModeState m = detected_ket(outcome);
  const FringePoint point = detail::fringe_point(input, m, phi);

  const int n = input.total_photons();
  Complex generator_overlap{};
  for (int k = 0; k <= n; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    const double h = generator_eigenvalue(n, k);
    generator_overlap += std::conj(m.amplitudes()[idx]) * h * input.amplitudes()[idx] * std::polar(1.0, -phi * h);
  }

  OptimalityCertificate cert;
  cert.single_fringe = binary_fisher(point);
  const double num = 4.0 * std::norm(generator_overlap);
  cert.overlap_bound = point.complement > 0.0 ? num / point.complement
                                              : (num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  cert.output_bound = output_uncertainty_bound(outcome);
  auto close = [tolerance](double a, double b) { return std::abs(a - b) <= tolerance * std::max(1.0, std::abs(b)); };
  cert.first_tight = close(cert.single_fringe, cert.overlap_bound);
  cert.second_tight = close(cert.overlap_bound, cert.output_bound);
  return cert;
}

/// Samples a Fisher curve over a phase grid.
template <class Function>
FisherProfile sample_profile(Function&& fisher, const std::vector<double>& phis, std::string label) {
  FisherProfile profile;
  profile.phis = phis;
  profile.values.reserve(phis.size());
  for (double phi : phis) profile.values.push_back(fisher(phi));
  profile.label = std::move(label);
  return profile;
}

}  // namespace fringelab
