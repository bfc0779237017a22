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
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "fringelab/detection.hpp"
#include "fringelab/fisher.hpp"
#include "fringelab/fock.hpp"
#include "fringelab/fringes.hpp"
#include "fringelab/states.hpp"

namespace fringelab {

/// SplitMix64 step; used to derive independent engine seeds from one master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of sub-stream `index` of `seed`.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Engine for sub-stream `index`. Every phase point and every replication
/// draws from its own stream, so results do not depend on evaluation order.
inline std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(split_seed(seed, index));
}

struct ExperimentPlan {
  StateKind state = StateKind::holland_burnett;
  int photons = 6;
  std::vector<double> phases;  // radians
  long long shots = 1;
  std::optional<DetectorArrayConfig> detectors;
  std::uint64_t seed = 0;

  void validate() const {
    if (shots < 1) throw std::invalid_argument("plan needs shots >= 1");
    if (phases.empty()) throw std::invalid_argument("plan needs at least one phase");
    if (detectors) detectors->validate();
  }
};

/// Draws one multinomial sample by sequential conditional binomials.
inline std::vector<long long> sample_multinomial(long long trials, std::span<const double> probs, std::mt19937_64& rng) {
  std::vector<long long> counts(probs.size(), 0);
  double remaining_mass = 1.0;
  long long remaining = trials;
  for (std::size_t i = 0; i < probs.size() && remaining > 0; ++i) {
    const double p = std::max(0.0, probs[i]);
    if (p == 0.0) continue;
    const double ratio = remaining_mass > 0.0 ? std::clamp(p / remaining_mass, 0.0, 1.0) : 0.0;
    std::binomial_distribution<long long> draw(remaining, ratio);
    counts[i] = draw(rng);
    remaining -= counts[i];
    remaining_mass -= p;
  }
  return counts;
}

/// Simulates photon counting for an explicit input state. With a detector
/// model, only events whose click pattern resolves all N photons are kept;
/// lossy and colliding events are discarded as in post-selected analysis.
inline std::vector<CountRecord> simulate_counts(const TwoModeState& input, std::span<const double> phases,
                                                long long shots, const std::optional<DetectorArrayConfig>& detectors,
                                                std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  const int n = input.total_photons();
  std::vector<CountRecord> records;
  records.reserve(phases.size());
  for (std::size_t i = 0; i < phases.size(); ++i) {
    auto rng = make_engine(seed, i);
    const auto probs = output_distribution(input, phases[i]);
    CountRecord record;
    record.phi = phases[i];
    record.shots = shots;
    if (!detectors) {
      const auto counts = sample_multinomial(shots, probs, rng);
      for (int k = 0; k <= n; ++k) record.outcome_counts[{k, n - k}] = counts[static_cast<std::size_t>(k)];
    } else {
      std::map<OutcomePattern, double> photon_probs;
      for (int k = 0; k <= n; ++k) photon_probs[{k, n - k}] = probs[static_cast<std::size_t>(k)];
      const auto clicks = click_distribution(photon_probs, *detectors);
      std::vector<OutcomePattern> patterns;
      std::vector<double> weights;
      for (const auto& [pattern, p] : clicks) {
        patterns.push_back(pattern);
        weights.push_back(p);
      }
      const auto counts = sample_multinomial(shots, weights, rng);
      for (int k = 0; k <= n; ++k) record.outcome_counts[{k, n - k}] = 0;
      for (std::size_t j = 0; j < patterns.size(); ++j) {
        if (patterns[j].total() == n) record.outcome_counts[patterns[j]] = counts[j];
      }
    }
    records.push_back(std::move(record));
  }
  return records;
}

inline std::vector<CountRecord> simulate_counts(const ExperimentPlan& plan) {
  plan.validate();
  return simulate_counts(make_benchmark_state(plan.state, plan.photons), plan.phases, plan.shots, plan.detectors,
                         plan.seed);
}

/// Fisher information estimated from a stretch of measured fringe.
struct DirectFisherEstimate {
  double phi_mid = 0.0;      // centroid of the phases used
  double fisher = 0.0;
  double sigma = 0.0;
  double probability = 0.0;  // regression value at phi_mid
  double slope = 0.0;        // regression slope
  int points = 0;
  bool low_confidence = false;
};

/// Unweighted linear regression of frequencies on phase; the intercept and
/// slope at the phase centroid feed slope^2 / (p (1 - p)). Binomial counting
/// variance p(1-p)/shots at each point, evaluated on the regression line, is
/// propagated to sigma. `shots` may be +inf for exact probabilities.
inline DirectFisherEstimate direct_fisher_from_frequencies(std::span<const double> phis,
                                                           std::span<const double> frequencies,
                                                           std::span<const double> shots) {
  if (phis.size() != frequencies.size() || phis.size() != shots.size()) {
    throw std::invalid_argument("phases, frequencies and shots must have equal length");
  }
  const std::size_t n = phis.size();
  if (n < 3) throw std::invalid_argument("direct Fisher estimate needs at least 3 phases");
  double centroid = 0.0;
  for (double x : phis) centroid += x;
  centroid /= static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  double mean_f = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = phis[i] - centroid;
    sxx += dx * dx;
    sxy += dx * frequencies[i];
    mean_f += frequencies[i];
  }
  mean_f /= static_cast<double>(n);
  if (!(sxx > 0.0)) throw std::invalid_argument("direct Fisher estimate needs distinct phases");

  DirectFisherEstimate est;
  est.phi_mid = centroid;
  est.points = static_cast<int>(n);
  est.probability = mean_f;
  est.slope = sxy / sxx;

  double var_p = 0.0;
  double var_s = 0.0;
  double cov_ps = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = phis[i] - centroid;
    const double fitted = std::clamp(est.probability + est.slope * dx, 0.0, 1.0);
    const double var = std::isinf(shots[i]) ? 0.0 : fitted * (1.0 - fitted) / shots[i];
    const double wp = 1.0 / static_cast<double>(n);
    const double ws = dx / sxx;
    var_p += wp * wp * var;
    var_s += ws * ws * var;
    cov_ps += wp * ws * var;
  }

  const double p = est.probability;
  const double q = 1.0 - p;
  if (!(p > 0.0 && q > 0.0)) {
    est.fisher = 0.0;
    est.sigma = std::numeric_limits<double>::infinity();
    est.low_confidence = true;
    return est;
  }
  est.fisher = binary_fisher({p, q, est.slope});
  const double d_slope = 2.0 * est.slope / (p * q);
  const double d_prob = -est.slope * est.slope * (q - p) / (p * q * p * q);
  est.sigma = std::sqrt(std::max(0.0, d_prob * d_prob * var_p + d_slope * d_slope * var_s + 2.0 * d_prob * d_slope * cov_ps));
  const double slope_sigma = std::sqrt(var_s);
  est.low_confidence = std::abs(est.slope) <= 2.0 * slope_sigma || est.slope == 0.0;
  return est;
}

/// Direct estimate from count records whose phase lies in [window_lo, window_hi] (radians).
inline DirectFisherEstimate direct_fisher_from_data(std::span<const CountRecord> records, const OutcomePattern& outcome,
                                                    double window_lo, double window_hi) {
  std::vector<double> phis;
  std::vector<double> freqs;
  std::vector<double> shots;
  for (const auto& r : records) {
    if (r.shots <= 0 || r.phi < window_lo - 1e-12 || r.phi > window_hi + 1e-12) continue;
    phis.push_back(r.phi);
    freqs.push_back(static_cast<double>(r.count(outcome)) / static_cast<double>(r.shots));
    shots.push_back(static_cast<double>(r.shots));
  }
  return direct_fisher_from_frequencies(phis, freqs, shots);
}

struct PhaseInterval {
  double lo = 0.0;
  double hi = 0.0;
};

struct PhaseEstimate {
  double phi = 0.0;
  double standard_error = 0.0;
  double log_likelihood = 0.0;
  bool at_boundary = false;
};

namespace detail {

// Maximizes a log-likelihood on [lo, hi] given its score function: grid scan,
// then a bracketed root of the score next to the best grid point.
inline PhaseEstimate maximize_likelihood(const std::function<double(double)>& loglik,
                                         const std::function<double(double)>& score, PhaseInterval interval) {
  if (!(interval.hi > interval.lo)) throw std::invalid_argument("phase interval must have lo < hi");
  constexpr int kGrid = 400;
  const double step = (interval.hi - interval.lo) / kGrid;
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGrid; ++i) {
    const double v = loglik(interval.lo + i * step);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }

  PhaseEstimate est;
  double a = interval.lo + std::max(0, best - 1) * step;
  double b = interval.lo + std::min(kGrid, best + 1) * step;
  double sa = score(a);
  double sb = score(b);
  double phi = interval.lo + best * step;
  auto tol = boost::math::tools::eps_tolerance<double>(52);
  if (sa > 0.0 && sb < 0.0) {
    std::uintmax_t iters = 200;
    const auto root = boost::math::tools::toms748_solve(score, a, b, sa, sb, tol, iters);
    phi = 0.5 * (root.first + root.second);
  } else if (sa == 0.0) {
    phi = a;
  } else if (sb == 0.0) {
    phi = b;
  } else {
    // No interior stationary point next to the best grid value: the maximum sits on the boundary.
    const double s_lo = score(interval.lo);
    const double s_hi = score(interval.hi);
    if (best == 0 && s_lo < 0.0) {
      phi = interval.lo;
    } else if (best == kGrid && s_hi > 0.0) {
      phi = interval.hi;
    }
    est.at_boundary = true;
  }
  est.phi = phi;
  est.log_likelihood = loglik(phi);
  if (phi <= interval.lo + 1e-12 || phi >= interval.hi - 1e-12) est.at_boundary = true;

  const double h = 1e-5;
  const double curvature = -(score(phi + h) - score(phi - h)) / (2.0 * h);
  est.standard_error = curvature > 0.0 ? 1.0 / std::sqrt(curvature) : std::numeric_limits<double>::infinity();
  return est;
}

}  // namespace detail

/// Binomial (single-fringe) maximum-likelihood phase from `successes` out of
/// `trials` events. Counts may be fractional, e.g. exact expected frequencies.
inline PhaseEstimate mle_phase_single(double successes, double trials, const FringeModel& model,
                                      PhaseInterval interval) {
  if (!(trials > 0.0) || successes < 0.0 || successes > trials) {
    throw std::invalid_argument("need 0 <= successes <= trials and trials > 0");
  }
  const double failures = trials - successes;
  auto loglik = [&](double phi) {
    const FringePoint pt = model.evaluate(phi);
    double l = 0.0;
    if (successes > 0.0) l += successes * std::log(pt.probability);
    if (failures > 0.0) l += failures * std::log(pt.complement);
    return std::isnan(l) ? -std::numeric_limits<double>::infinity() : l;
  };
  auto score = [&](double phi) {
    const FringePoint pt = model.evaluate(phi);
    double s = 0.0;
    if (successes > 0.0) s += successes * pt.slope / pt.probability;
    if (failures > 0.0) s -= failures * pt.slope / pt.complement;
    return s;
  };
  return detail::maximize_likelihood(loglik, score, interval);
}

/// Binomial MLE over all records (assumed taken at one common phase).
inline PhaseEstimate mle_phase(std::span<const CountRecord> records, const FringeModel& model,
                               PhaseInterval interval) {
  double successes = 0.0;
  double trials = 0.0;
  for (const auto& r : records) {
    successes += static_cast<double>(r.count(model.outcome()));
    trials += static_cast<double>(r.shots);
  }
  return mle_phase_single(successes, trials, model, interval);
}

/// Multinomial (full-counting) maximum-likelihood phase. counts[k] refers to
/// outcome (k, N - k).
inline PhaseEstimate mle_phase_full(std::span<const double> counts, const TwoModeState& state,
                                    PhaseInterval interval) {
  const int n = state.total_photons();
  if (counts.size() != static_cast<std::size_t>(n) + 1) throw std::invalid_argument("need N+1 outcome counts");
  std::vector<TwoModeState> detected;
  detected.reserve(counts.size());
  for (int k = 0; k <= n; ++k) detected.push_back(detected_ket({k, n - k}));
  auto loglik = [&](double phi) {
    double l = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double c = counts[static_cast<std::size_t>(k)];
      if (c > 0.0) l += c * std::log(detail::fringe_point(state, detected[static_cast<std::size_t>(k)], phi).probability);
    }
    return std::isnan(l) ? -std::numeric_limits<double>::infinity() : l;
  };
  auto score = [&](double phi) {
    double s = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double c = counts[static_cast<std::size_t>(k)];
      if (c > 0.0) {
        const auto pt = detail::fringe_point(state, detected[static_cast<std::size_t>(k)], phi);
        s += c * pt.slope / pt.probability;
      }
    }
    return s;
  };
  return detail::maximize_likelihood(loglik, score, interval);
}

inline PhaseEstimate mle_phase(std::span<const CountRecord> records, const TwoModeState& state,
                               PhaseInterval interval) {
  const int n = state.total_photons();
  std::vector<double> counts(static_cast<std::size_t>(n) + 1, 0.0);
  for (const auto& r : records) {
    for (const auto& [pattern, c] : r.outcome_counts) {
      if (pattern.total() == n) counts[static_cast<std::size_t>(pattern.out_port_1)] += static_cast<double>(c);
    }
  }
  return mle_phase_full(counts, state, interval);
}

/// Phase-variance improvement over the shot-noise limit, F / N.
inline double snl_comparison(double fisher, int photons) {
  if (photons < 1) throw std::invalid_argument("snl_comparison needs N >= 1");
  return fisher / static_cast<double>(photons);
}

}  // namespace fringelab
