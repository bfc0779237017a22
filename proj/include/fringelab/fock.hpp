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
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fringelab {

using Complex = std::complex<double>;

/// Largest photon number accepted by the dense two-mode representation.
inline constexpr int kMaxPhotons = 4096;

/// Tolerance on the squared norm of a state before it is renormalized.
inline constexpr double kNormTolerance = 1e-12;

/// Raised for physically inconsistent requests (parity constraints,
/// photon-number mismatches). Plain argument errors use std::invalid_argument.
class PhysicsError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Photon counts (n1, n2) registered at the two interferometer outputs.
struct OutcomePattern {
  int out_port_1 = 0;
  int out_port_2 = 0;

  [[nodiscard]] int total() const { return out_port_1 + out_port_2; }
  auto operator<=>(const OutcomePattern&) const = default;
};

/// "n1:n2"
inline std::string to_string(const OutcomePattern& outcome) {
  return std::to_string(outcome.out_port_1) + ":" + std::to_string(outcome.out_port_2);
}

inline OutcomePattern parse_outcome(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
    throw std::invalid_argument("outcome must look like n1:n2, got '" + text + "'");
  }
  std::size_t used1 = 0;
  std::size_t used2 = 0;
  const std::string left = text.substr(0, colon);
  const std::string right = text.substr(colon + 1);
  int n1 = 0;
  int n2 = 0;
  try {
    n1 = std::stoi(left, &used1);
    n2 = std::stoi(right, &used2);
  } catch (const std::exception&) {
    throw std::invalid_argument("outcome must look like n1:n2, got '" + text + "'");
  }
  if (used1 != left.size() || used2 != right.size() || n1 < 0 || n2 < 0) {
    throw std::invalid_argument("outcome must look like n1:n2, got '" + text + "'");
  }
  return {n1, n2};
}

/// Pure state of N photons distributed over the two interferometer paths.
///
/// Amplitudes are stored in ascending n1: index n1 holds the coefficient of
/// |n1, N - n1>. Instances are always normalized; construct through
/// make_state() or TwoModeState::basis().
class TwoModeState {
 public:
  static TwoModeState basis(int n1, int n2);

  [[nodiscard]] int total_photons() const { return photons_; }
  [[nodiscard]] std::size_t dimension() const { return amplitudes_.size(); }
  [[nodiscard]] std::span<const Complex> amplitudes() const { return amplitudes_; }
  [[nodiscard]] Complex amplitude(int n1) const { return amplitudes_.at(static_cast<std::size_t>(n1)); }

  /// True when the input handed to make_state() was off-normalized and had to be rescaled.
  [[nodiscard]] bool renormalized() const { return renormalized_; }

 private:
  TwoModeState(int photons, std::vector<Complex> amplitudes, bool renormalized)
      : photons_(photons), amplitudes_(std::move(amplitudes)), renormalized_(renormalized) {}

  friend TwoModeState make_state(int photons, std::vector<Complex> amplitudes);

  int photons_ = 0;
  std::vector<Complex> amplitudes_;
  bool renormalized_ = false;
};

inline double squared_norm(std::span<const Complex> amplitudes) {
  double sum = 0.0;
  for (const Complex& c : amplitudes) sum += std::norm(c);
  return sum;
}

inline void check_photon_number(int photons) {
  if (photons < 0 || photons > kMaxPhotons) {
    throw std::invalid_argument("photon number must lie in [0, " + std::to_string(kMaxPhotons) + "], got " +
                                std::to_string(photons));
  }
}

/// Builds a normalized state. Inputs whose squared norm is off by more than
/// kNormTolerance are rescaled and flagged via renormalized().
inline TwoModeState make_state(int photons, std::vector<Complex> amplitudes) {
  check_photon_number(photons);
  if (amplitudes.size() != static_cast<std::size_t>(photons) + 1) {
    throw std::invalid_argument("expected " + std::to_string(photons + 1) + " amplitudes for N=" +
                                std::to_string(photons) + ", got " + std::to_string(amplitudes.size()));
  }
  const double norm2 = squared_norm(amplitudes);
  if (!std::isfinite(norm2)) throw std::invalid_argument("state amplitudes must be finite");
  if (norm2 == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
  bool rescaled = false;
  if (std::abs(norm2 - 1.0) > kNormTolerance) {
    const double scale = 1.0 / std::sqrt(norm2);
    for (Complex& c : amplitudes) c *= scale;
    rescaled = true;
  }
  return TwoModeState(photons, std::move(amplitudes), rescaled);
}

inline TwoModeState TwoModeState::basis(int n1, int n2) {
  if (n1 < 0 || n2 < 0) throw std::invalid_argument("photon numbers must be non-negative");
  std::vector<Complex> amps(static_cast<std::size_t>(n1 + n2) + 1, Complex{});
  amps[static_cast<std::size_t>(n1)] = 1.0;
  return make_state(n1 + n2, std::move(amps));
}

/// Eigenvalue of (n1 - n2)/2 on |n1, N - n1>.
inline double generator_eigenvalue(int photons, int n1) { return 0.5 * static_cast<double>(2 * n1 - photons); }

namespace detail {

// Column n of the 50:50 splitter in the N-photon sector, i.e. the image of
// |n, N-n> under a1+ -> (a1+ + a2+)/sqrt2, a2+ -> (a1+ - a2+)/sqrt2.
//
// That image is the eigenvector of Jx = (a1+ a2 + a2+ a1)/2 with eigenvalue
// n - N/2, so the column satisfies a three-term recurrence in n1. The
// recurrence is run inward from both edges (where the solution grows) and the
// halves are matched next to the centre. The sign is fixed by the entry on
// |N, 0>, which is positive for every column.
inline std::vector<double> splitter_column(int photons, int column) {
  const int n = photons;
  std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
  if (n == 0) {
    v[0] = 1.0;
    return v;
  }
  const double twice_lambda = static_cast<double>(2 * column - n);
  auto up = [n](int k) { return std::sqrt(static_cast<double>(k + 1) * static_cast<double>(n - k)); };
  constexpr double kRescaleAbove = 1e150;

  const int centre = n / 2;
  const int match_hi = std::min(centre + 1, n);

  std::vector<double> fwd(static_cast<std::size_t>(match_hi) + 1, 0.0);
  fwd[0] = 1.0;
  for (int k = 0; k < match_hi; ++k) {
    const double prev = k > 0 ? up(k - 1) * fwd[static_cast<std::size_t>(k - 1)] : 0.0;
    fwd[static_cast<std::size_t>(k + 1)] = (twice_lambda * fwd[static_cast<std::size_t>(k)] - prev) / up(k);
    if (std::abs(fwd[static_cast<std::size_t>(k + 1)]) > kRescaleAbove) {
      for (int j = 0; j <= k + 1; ++j) fwd[static_cast<std::size_t>(j)] /= kRescaleAbove;
    }
  }

  std::vector<double> bwd(static_cast<std::size_t>(n) + 1, 0.0);
  bwd[static_cast<std::size_t>(n)] = 1.0;
  for (int k = n; k > centre; --k) {
    const double next = k < n ? up(k) * bwd[static_cast<std::size_t>(k + 1)] : 0.0;
    bwd[static_cast<std::size_t>(k - 1)] = (twice_lambda * bwd[static_cast<std::size_t>(k)] - next) / up(k - 1);
    if (std::abs(bwd[static_cast<std::size_t>(k - 1)]) > kRescaleAbove) {
      for (int j = k - 1; j <= n; ++j) bwd[static_cast<std::size_t>(j)] /= kRescaleAbove;
    }
  }

  // Two neighbouring entries of a nonzero solution never vanish together.
  double cross = 0.0;
  double self = 0.0;
  for (int k = centre; k <= match_hi; ++k) {
    cross += fwd[static_cast<std::size_t>(k)] * bwd[static_cast<std::size_t>(k)];
    self += fwd[static_cast<std::size_t>(k)] * fwd[static_cast<std::size_t>(k)];
  }
  const double scale = cross / self;
  for (int k = 0; k < centre; ++k) v[static_cast<std::size_t>(k)] = scale * fwd[static_cast<std::size_t>(k)];
  for (int k = centre; k <= n; ++k) v[static_cast<std::size_t>(k)] = bwd[static_cast<std::size_t>(k)];

  double norm2 = 0.0;
  for (double x : v) norm2 += x * x;
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& x : v) x *= inv;
  return v;
}

}  // namespace detail

/// Dense real matrix of the 50:50 splitter in the N-photon sector, row-major,
/// element (row k, column n) = <k, N-k| BS |n, N-n>.
///
/// The matrix is real, symmetric and squares to the identity, so the same
/// matrix serves as the input splitter and as the inverse used for detection.
inline std::vector<double> splitter_matrix(int photons) {
  check_photon_number(photons);
  const auto dim = static_cast<std::size_t>(photons) + 1;
  std::vector<double> m(dim * dim);
  for (std::size_t n = 0; n < dim; ++n) {
    const auto col = detail::splitter_column(photons, static_cast<int>(n));
    for (std::size_t k = 0; k < dim; ++k) m[k * dim + n] = col[k];
  }
  return m;
}

/// Applies the fixed 50:50 beam splitter. Maps |3,3> onto
/// (sqrt5|6,0> - sqrt3|4,2> + sqrt3|2,4> - sqrt5|0,6>)/4.
inline TwoModeState beam_splitter(const TwoModeState& state) {
  const int n = state.total_photons();
  const auto in = state.amplitudes();
  std::vector<Complex> out(in.size(), Complex{});
  for (int col = 0; col <= n; ++col) {
    const Complex c = in[static_cast<std::size_t>(col)];
    if (c == Complex{}) continue;
    const auto column = detail::splitter_column(n, col);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += column[k] * c;
  }
  return make_state(n, std::move(out));
}

/// Inverse splitter (transpose of the real splitter matrix).
inline TwoModeState beam_splitter_inverse(const TwoModeState& state) {
  const int n = state.total_photons();
  const auto in = state.amplitudes();
  std::vector<Complex> out(in.size(), Complex{});
  for (int row = 0; row <= n; ++row) {
    const auto column = detail::splitter_column(n, row);
    Complex acc{};
    for (std::size_t k = 0; k < in.size(); ++k) acc += column[k] * in[k];
    out[static_cast<std::size_t>(row)] = acc;
  }
  return make_state(n, std::move(out));
}

/// exp(-i phi (n1 - n2)/2) applied to every basis amplitude.
inline TwoModeState phase_shift(const TwoModeState& state, double phi) {
  const int n = state.total_photons();
  const auto in = state.amplitudes();
  std::vector<Complex> out(in.size());
  for (int k = 0; k <= n; ++k) {
    out[static_cast<std::size_t>(k)] =
        in[static_cast<std::size_t>(k)] * std::polar(1.0, -phi * generator_eigenvalue(n, k));
  }
  return make_state(n, std::move(out));
}

/// (n1 - n2)/2 applied to the state. The result is not normalized.
inline std::vector<Complex> generator_apply(const TwoModeState& state) {
  const int n = state.total_photons();
  const auto in = state.amplitudes();
  std::vector<Complex> out(in.size());
  for (int k = 0; k <= n; ++k) out[static_cast<std::size_t>(k)] = generator_eigenvalue(n, k) * in[static_cast<std::size_t>(k)];
  return out;
}

/// Variance of the path photon-number difference, <(n1-n2)^2> - <n1-n2>^2.
inline double generator_variance(const TwoModeState& state) {
  const int n = state.total_photons();
  const auto in = state.amplitudes();
  double mean = 0.0;
  double second = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double d = static_cast<double>(2 * k - n);
    const double w = std::norm(in[static_cast<std::size_t>(k)]);
    mean += w * d;
    second += w * d * d;
  }
  return second - mean * mean;
}

/// <a|b>, antilinear in the first argument.
inline Complex inner_product(const TwoModeState& a, const TwoModeState& b) {
  if (a.total_photons() != b.total_photons()) {
    throw PhysicsError("inner product between sectors N=" + std::to_string(a.total_photons()) + " and N=" +
                       std::to_string(b.total_photons()));
  }
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  Complex acc{};
  for (std::size_t k = 0; k < x.size(); ++k) acc += std::conj(x[k]) * y[k];
  return acc;
}

}  // namespace fringelab
