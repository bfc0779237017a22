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

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fringelab/fock.hpp"
#include "fringelab/peak_search.hpp"

namespace fringelab {

/// Probability of one outcome, of its null complement, and the phase slope.
///
/// `complement` is evaluated directly rather than as 1 - probability so that
/// fringes close to unity keep full relative precision.
struct FringePoint {
  double probability = 0.0;
  double complement = 1.0;
  double slope = 0.0;
  // <m|psi(phi)> and <m|h|psi(phi)>; zero for reduced-contrast models.
  Complex amplitude{};
  Complex generator_amplitude{};
};

inline void check_outcome(const TwoModeState& state, const OutcomePattern& outcome) {
  if (outcome.out_port_1 < 0 || outcome.out_port_2 < 0 || outcome.total() != state.total_photons()) {
    throw PhysicsError("outcome " + to_string(outcome) + " does not carry the state's N=" +
                       std::to_string(state.total_photons()) + " photons");
  }
}

/// Detected output ket transported back inside the interferometer, BS^-1 |outcome>.
inline TwoModeState detected_ket(const OutcomePattern& outcome) {
  const int n = outcome.total();
  check_photon_number(n);
  // The splitter matrix is real symmetric, so row n1 of BS^-1 = BS^T is column n1.
  auto column = detail::splitter_column(n, outcome.out_port_1);
  return make_state(n, std::vector<Complex>(column.begin(), column.end()));
}

namespace detail {

inline FringePoint fringe_point(const TwoModeState& input, const TwoModeState& detected, double phi) {
  const int n = input.total_photons();
  const auto psi = input.amplitudes();
  const auto m = detected.amplitudes();
  std::vector<Complex> evolved(psi.size());
  Complex overlap{};
  Complex generator_overlap{};
  for (int k = 0; k <= n; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    const double h = generator_eigenvalue(n, k);
    evolved[idx] = psi[idx] * std::polar(1.0, -phi * h);
    overlap += std::conj(m[idx]) * evolved[idx];
    generator_overlap += std::conj(m[idx]) * h * evolved[idx];
  }
  double complement = 0.0;
  for (std::size_t k = 0; k < evolved.size(); ++k) complement += std::norm(evolved[k] - overlap * m[k]);
  FringePoint point;
  point.probability = std::norm(overlap);
  point.complement = complement;
  point.slope = 2.0 * std::imag(std::conj(overlap) * generator_overlap);
  point.amplitude = overlap;
  point.generator_amplitude = generator_overlap;
  return point;
}

}  // namespace detail

inline FringePoint fringe_point(const TwoModeState& input, const OutcomePattern& outcome, double phi) {
  check_outcome(input, outcome);
  return detail::fringe_point(input, detected_ket(outcome), phi);
}

/// p(phi) = |<outcome| BS U(phi) |input>|^2.
inline double fringe_probability(const TwoModeState& input, const OutcomePattern& outcome, double phi) {
  return fringe_point(input, outcome, phi).probability;
}

/// dp/dphi = 2 Im[<psi|m><m|h|psi>], evaluated at phi.
inline double fringe_derivative(const TwoModeState& input, const OutcomePattern& outcome, double phi) {
  return fringe_point(input, outcome, phi).slope;
}

/// Probabilities of all N+1 outcomes, indexed by the count at output port 1.
inline std::vector<double> output_distribution(const TwoModeState& input, double phi) {
  const TwoModeState out = beam_splitter(phase_shift(input, phi));
  std::vector<double> probs(out.dimension());
  for (std::size_t k = 0; k < probs.size(); ++k) probs[k] = std::norm(out.amplitudes()[k]);
  return probs;
}

/// (5/8 cos 3phi + 3/8 cos phi)^2, the |3,3> fringe of the six-photon HB state.
inline double p33_closed_form(double phi) {
  const double g = 0.625 * std::cos(3.0 * phi) + 0.375 * std::cos(phi);
  return g * g;
}

/// Expectation of (-1)^{n1} at output port 1.
inline double parity_expectation(const TwoModeState& input, double phi) {
  const auto probs = output_distribution(input, phi);
  double sum = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) sum += (k % 2 == 0 ? 1.0 : -1.0) * probs[k];
  return sum;
}

/// Smallest and largest value of a state fringe over one 2pi period.
struct FringeRange {
  double min = 0.0;
  double max = 1.0;
};

inline FringeRange fringe_range(const TwoModeState& input, const OutcomePattern& outcome) {
  check_outcome(input, outcome);
  const TwoModeState m = detected_ket(outcome);
  const double two_pi = 2.0 * std::numbers::pi;
  const double step = to_radians(0.25);
  const Peak hi = find_peak([&](double x) { return detail::fringe_point(input, m, x).probability; }, 0.0, two_pi, step);
  const Peak lo = find_peak([&](double x) { return -detail::fringe_point(input, m, x).probability; }, 0.0, two_pi, step);
  return {std::max(0.0, -lo.value), std::min(1.0, hi.value)};
}

enum class ModelKind { ideal, affine, noon_cosine };

inline std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::ideal: return "ideal";
    case ModelKind::affine: return "affine";
    case ModelKind::noon_cosine: return "noon-cosine";
  }
  return "?";
}

inline ModelKind parse_model_kind(const std::string& text) {
  if (text == "ideal") return ModelKind::ideal;
  if (text == "affine") return ModelKind::affine;
  if (text == "noon-cosine") return ModelKind::noon_cosine;
  throw std::invalid_argument("unknown model '" + text + "' (expected ideal, affine or noon-cosine)");
}

/// Derivatives of p and dp/dphi with respect to the two model parameters.
struct ParameterGradient {
  std::array<double, 2> probability{};
  std::array<double, 2> slope{};
};

/// Fringe with reduced contrast.
///
///   ideal        p(phi) = p_state(phi)
///   affine       p(phi) = a * p_state(phi) + b                      parameters (a, b)
///   noon-cosine  p(phi) = q * (1 + V cos(N phi - phase_offset))     parameters (q, V)
class FringeModel {
 public:
  static FringeModel ideal(TwoModeState base, OutcomePattern outcome) {
    check_outcome(base, outcome);
    FringeModel model(ModelKind::ideal, base.total_photons());
    model.range_ = fringe_range(base, outcome);
    model.base_ = std::move(base);
    model.outcome_ = outcome;
    model.detected_ = detected_ket(outcome);
    return model;
  }

  static FringeModel affine(TwoModeState base, OutcomePattern outcome, double amplitude, double offset) {
    FringeModel model = unchecked_affine(std::move(base), outcome, amplitude, offset);
    if (!(amplitude >= 0.0) || !(offset >= 0.0) || offset + amplitude * model.range_.max > 1.0 + 1e-12) {
      throw std::invalid_argument("affine fringe needs a >= 0, b >= 0 and b + a * max p <= 1");
    }
    return model;
  }

  /// Affine fringe of visibility V whose maximum reaches probability one (a + b = 1).
  static FringeModel affine_unit_peak(TwoModeState base, OutcomePattern outcome, double visibility) {
    check_visibility(visibility);
    return affine(std::move(base), outcome, 2.0 * visibility / (1.0 + visibility),
                  (1.0 - visibility) / (1.0 + visibility));
  }

  /// Affine fringe of visibility V contracted about p = 1/2: a = V, b = (1 - V)/2.
  /// Equivalent to mixing the ideal yes/no outcome with an unbiased coin.
  static FringeModel affine_midpoint(TwoModeState base, OutcomePattern outcome, double visibility) {
    check_visibility(visibility);
    return affine(std::move(base), outcome, visibility, 0.5 * (1.0 - visibility));
  }

  static FringeModel noon_cosine(int photons, double scale, double visibility, double phase_offset = 0.0) {
    check_visibility(visibility);
    if (photons < 1) throw std::invalid_argument("noon-cosine model needs N >= 1");
    if (!(scale >= 0.0) || scale * (1.0 + visibility) > 1.0 + 1e-12) {
      throw std::invalid_argument("noon-cosine model needs q >= 0 and q (1 + V) <= 1");
    }
    return unchecked_noon_cosine(photons, scale, visibility, phase_offset);
  }

  /// NOON fringe of the given outcome with reduced visibility. The scale is
  /// the binomial weight C(N, n1)/2^N and the phase offset reproduces the
  /// ideal NOON fringe in this library's splitter convention when V = 1.
  static FringeModel noon_cosine_for(const OutcomePattern& outcome, double visibility) {
    const int n = outcome.total();
    const double scale = std::exp(std::lgamma(n + 1.0) - std::lgamma(outcome.out_port_1 + 1.0) -
                                  std::lgamma(outcome.out_port_2 + 1.0) - n * std::numbers::ln2);
    const double offset = outcome.out_port_2 % 2 == 0 ? 0.0 : std::numbers::pi;
    FringeModel model = noon_cosine(n, scale, visibility, offset);
    model.outcome_ = outcome;
    return model;
  }

  [[nodiscard]] ModelKind kind() const { return kind_; }
  [[nodiscard]] int photons() const { return photons_; }
  [[nodiscard]] const OutcomePattern& outcome() const { return outcome_; }
  [[nodiscard]] const std::optional<TwoModeState>& base() const { return base_; }
  [[nodiscard]] double amplitude() const { return amplitude_; }
  [[nodiscard]] double offset() const { return offset_; }
  [[nodiscard]] double scale() const { return scale_; }
  [[nodiscard]] double phase_offset() const { return phase_offset_; }
  [[nodiscard]] const FringeRange& ideal_range() const { return range_; }

  /// (a, b) for affine, (q, V) for noon-cosine, empty for ideal.
  [[nodiscard]] std::vector<double> parameters() const {
    switch (kind_) {
      case ModelKind::affine: return {amplitude_, offset_};
      case ModelKind::noon_cosine: return {scale_, visibility_};
      case ModelKind::ideal: break;
    }
    return {};
  }

  /// (p_max - p_min)/(p_max + p_min) over one period.
  [[nodiscard]] double visibility() const {
    switch (kind_) {
      case ModelKind::ideal: return contrast(range_.max, range_.min);
      case ModelKind::affine:
        return contrast(amplitude_ * range_.max + offset_, amplitude_ * range_.min + offset_);
      case ModelKind::noon_cosine: return visibility_;
    }
    return 0.0;
  }

  /// Gradient of visibility() with respect to parameters().
  [[nodiscard]] std::array<double, 2> visibility_gradient() const {
    if (kind_ == ModelKind::noon_cosine) return {0.0, 1.0};
    if (kind_ != ModelKind::affine) return {0.0, 0.0};
    const double spread = range_.max - range_.min;
    const double denom = amplitude_ * (range_.max + range_.min) + 2.0 * offset_;
    if (denom <= 0.0) return {0.0, 0.0};
    const double v = amplitude_ * spread / denom;
    return {(spread - v * (range_.max + range_.min)) / denom, -2.0 * v / denom};
  }

  [[nodiscard]] FringePoint evaluate(double phi) const {
    FringePoint point;
    switch (kind_) {
      case ModelKind::ideal: return detail::fringe_point(*base_, *detected_, phi);
      case ModelKind::affine: {
        const FringePoint ideal = detail::fringe_point(*base_, *detected_, phi);
        point.probability = amplitude_ * ideal.probability + offset_;
        // Headroom within rounding of zero is a unit-peak curve; keep 1 - p exact there.
        double headroom = 1.0 - amplitude_ - offset_;
        if (std::abs(headroom) < 4 * std::numeric_limits<double>::epsilon()) headroom = 0.0;
        point.complement = headroom + amplitude_ * ideal.complement;
        point.slope = amplitude_ * ideal.slope;
        break;
      }
      case ModelKind::noon_cosine: {
        const double arg = photons_ * phi - phase_offset_;
        const double half = std::cos(0.5 * arg);
        point.probability = scale_ * ((1.0 - visibility_) + 2.0 * visibility_ * half * half);
        point.complement = 1.0 - point.probability;
        point.slope = -scale_ * visibility_ * photons_ * std::sin(arg);
        break;
      }
    }
    point.probability = std::clamp(point.probability, 0.0, 1.0);
    point.complement = std::clamp(point.complement, 0.0, 1.0);
    return point;
  }

  [[nodiscard]] double probability(double phi) const { return evaluate(phi).probability; }
  [[nodiscard]] double derivative(double phi) const { return evaluate(phi).slope; }

  [[nodiscard]] ParameterGradient parameter_gradient(double phi) const {
    ParameterGradient g;
    if (kind_ == ModelKind::affine) {
      const FringePoint ideal = detail::fringe_point(*base_, *detected_, phi);
      g.probability = {ideal.probability, 1.0};
      g.slope = {ideal.slope, 0.0};
    } else if (kind_ == ModelKind::noon_cosine) {
      const double arg = photons_ * phi - phase_offset_;
      const double c = std::cos(arg);
      const double s = std::sin(arg);
      g.probability = {1.0 + visibility_ * c, scale_ * c};
      g.slope = {-visibility_ * photons_ * s, -scale_ * photons_ * s};
    }
    return g;
  }

  /// Builds a model without the probability-range checks; fitted parameters
  /// may stray slightly outside the physical region.
  static FringeModel unchecked_affine(TwoModeState base, OutcomePattern outcome, double amplitude, double offset) {
    check_outcome(base, outcome);
    FringeModel model(ModelKind::affine, base.total_photons());
    model.range_ = fringe_range(base, outcome);
    model.base_ = std::move(base);
    model.outcome_ = outcome;
    model.amplitude_ = amplitude;
    model.offset_ = offset;
    model.detected_ = detected_ket(outcome);
    return model;
  }

  static FringeModel unchecked_noon_cosine(int photons, double scale, double visibility, double phase_offset) {
    FringeModel model(ModelKind::noon_cosine, photons);
    model.scale_ = scale;
    model.visibility_ = visibility;
    model.phase_offset_ = phase_offset;
    model.outcome_ = {photons / 2, photons - photons / 2};
    return model;
  }

  static FringeModel with_outcome(FringeModel model, const OutcomePattern& outcome) {
    model.outcome_ = outcome;
    return model;
  }

 private:
  FringeModel(ModelKind kind, int photons) : kind_(kind), photons_(photons) {}

  static void check_visibility(double v) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("visibility must lie in [0, 1]");
  }

  static double contrast(double hi, double lo) { return hi + lo > 0.0 ? (hi - lo) / (hi + lo) : 0.0; }

  ModelKind kind_;
  int photons_ = 0;
  OutcomePattern outcome_{};
  std::optional<TwoModeState> base_;
  std::optional<TwoModeState> detected_;
  FringeRange range_{};
  double amplitude_ = 1.0;
  double offset_ = 0.0;
  double scale_ = 0.0;
  double visibility_ = 1.0;
  double phase_offset_ = 0.0;
};

/// Model probability at phi.
inline double apply_model(const FringeModel& model, double phi) { return model.probability(phi); }

/// Event counts registered at one phase setting.
struct CountRecord {
  double phi = 0.0;  // radians
  long long shots = 0;
  std::map<OutcomePattern, long long> outcome_counts;

  [[nodiscard]] long long count(const OutcomePattern& outcome) const {
    const auto it = outcome_counts.find(outcome);
    return it == outcome_counts.end() ? 0 : it->second;
  }
  [[nodiscard]] long long total_counts() const {
    long long sum = 0;
    for (const auto& [pattern, n] : outcome_counts) sum += n;
    return sum;
  }
  bool operator==(const CountRecord&) const = default;
};

struct FitResult {
  FringeModel model;
  std::array<double, 2> parameters{};
  std::array<std::array<double, 2>, 2> covariance{};
  std::array<double, 2> sigmas{};
  double visibility = 0.0;
  double visibility_sigma = 0.0;
  double chi_squared = 0.0;
  int degrees_of_freedom = 0;
  /// False when the fitted parameters leave the model's physical region.
  bool physical = true;
};

/// Weighted least-squares fit of one outcome's counts.
///
/// Counts are modelled as shots * p(phi). Each point carries the Poisson
/// weight 1/max(count, 1). Both families are linear in a reparameterization,
/// so the minimum is exact and the covariance is the inverse of the weighted
/// normal matrix.
inline FitResult fit_fringe(std::span<const CountRecord> records, const TwoModeState& base,
                            const OutcomePattern& outcome, ModelKind kind) {
  check_outcome(base, outcome);
  if (kind == ModelKind::ideal) throw std::invalid_argument("the ideal model has no parameters to fit");

  std::vector<double> phases;
  for (const auto& r : records) {
    if (r.shots > 0 &&
        std::none_of(phases.begin(), phases.end(), [&](double p) { return std::abs(p - r.phi) < 1e-12; })) {
      phases.push_back(r.phi);
    }
  }
  if (phases.size() < 3) throw std::invalid_argument("fit needs at least 3 distinct phases with nonzero shots");

  std::optional<FringeModel> noon_template;
  std::optional<TwoModeState> detected;
  if (kind == ModelKind::noon_cosine) {
    noon_template = FringeModel::noon_cosine_for(outcome, 1.0);
  } else {
    detected = detected_ket(outcome);
  }

  // Linear basis: affine uses (p_state, 1); noon-cosine uses (1, cos(N phi - offset)).
  auto basis = [&](double phi) -> std::array<double, 2> {
    if (kind == ModelKind::affine) return {detail::fringe_point(base, *detected, phi).probability, 1.0};
    return {1.0, std::cos(noon_template->photons() * phi - noon_template->phase_offset())};
  };

  std::array<std::array<double, 2>, 2> normal{};
  std::array<double, 2> rhs{};
  for (const auto& r : records) {
    if (r.shots <= 0) continue;
    const auto f = basis(r.phi);
    const double y = static_cast<double>(r.count(outcome));
    const double w = 1.0 / std::max(y, 1.0);
    const double s = static_cast<double>(r.shots);
    for (int i = 0; i < 2; ++i) {
      rhs[i] += w * s * f[i] * y;
      for (int j = 0; j < 2; ++j) normal[i][j] += w * s * s * f[i] * f[j];
    }
  }
  const double det = normal[0][0] * normal[1][1] - normal[0][1] * normal[1][0];
  const double scale = std::abs(normal[0][0] * normal[1][1]) + std::abs(normal[0][1] * normal[1][0]);
  if (!(scale > 0.0) || std::abs(det) <= 1e-12 * scale) {
    throw std::runtime_error("singular normal equations in fringe fit");
  }
  const std::array<std::array<double, 2>, 2> inv{{{normal[1][1] / det, -normal[0][1] / det},
                                                   {-normal[1][0] / det, normal[0][0] / det}}};
  const std::array<double, 2> coef{inv[0][0] * rhs[0] + inv[0][1] * rhs[1], inv[1][0] * rhs[0] + inv[1][1] * rhs[1]};

  double chi2 = 0.0;
  int points = 0;
  for (const auto& r : records) {
    if (r.shots <= 0) continue;
    const auto f = basis(r.phi);
    const double y = static_cast<double>(r.count(outcome));
    const double model = static_cast<double>(r.shots) * (coef[0] * f[0] + coef[1] * f[1]);
    chi2 += (y - model) * (y - model) / std::max(y, 1.0);
    ++points;
  }

  FitResult result{FringeModel::unchecked_noon_cosine(1, 0.0, 0.0, 0.0)};
  std::array<double, 2> params = coef;
  std::array<std::array<double, 2>, 2> cov = inv;
  if (kind == ModelKind::affine) {
    result.model = FringeModel::unchecked_affine(base, outcome, coef[0], coef[1]);
    const double pmax = coef[0] * result.model.ideal_range().max + coef[1];
    result.physical = coef[0] >= 0.0 && coef[1] >= 0.0 && pmax <= 1.0;
  } else {
    // (alpha, beta) -> (q, V) with q = alpha, V = beta / alpha.
    const double q = coef[0];
    const double v = q != 0.0 ? coef[1] / q : 0.0;
    const std::array<std::array<double, 2>, 2> jac{{{1.0, 0.0}, {q != 0.0 ? -coef[1] / (q * q) : 0.0, q != 0.0 ? 1.0 / q : 0.0}}};
    params = {q, v};
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        double acc = 0.0;
        for (int k = 0; k < 2; ++k) {
          for (int l = 0; l < 2; ++l) acc += jac[i][k] * inv[k][l] * jac[j][l];
        }
        cov[i][j] = acc;
      }
    }
    result.model = FringeModel::with_outcome(
        FringeModel::unchecked_noon_cosine(noon_template->photons(), q, v, noon_template->phase_offset()), outcome);
    result.physical = q >= 0.0 && v >= 0.0 && v <= 1.0 && q * (1.0 + v) <= 1.0;
  }
  result.parameters = params;
  result.covariance = cov;
  result.sigmas = {std::sqrt(std::max(0.0, cov[0][0])), std::sqrt(std::max(0.0, cov[1][1]))};
  result.visibility = result.model.visibility();
  const auto dv = result.model.visibility_gradient();
  double var_v = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) var_v += dv[i] * cov[i][j] * dv[j];
  }
  result.visibility_sigma = std::sqrt(std::max(0.0, var_v));
  result.chi_squared = chi2;
  result.degrees_of_freedom = points - 2;
  return result;
}

}  // namespace fringelab
