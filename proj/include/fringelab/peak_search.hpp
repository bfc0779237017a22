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
#include <numbers>
#include <limits>
#include <stdexcept>
#include <vector>

namespace fringelab {

inline constexpr double kDegree = std::numbers::pi / 180.0;

inline double to_radians(double degrees) { return degrees * kDegree; }
inline double to_degrees(double radians) { return radians / kDegree; }

struct Peak {
  double phi = 0.0;
  double value = 0.0;
};

/// Maximizes a smooth function on [lo, hi]: scan a grid of spacing `step`,
/// then golden-section refine around the best grid point (the first one on
/// ties). The returned point
/// is the best one actually evaluated, so isolated zeros of `f` (removable
/// singularities) never replace a good neighbour.
template <class Function>
Peak find_peak(Function&& f, double lo, double hi, double step) {
  if (!(hi > lo) || !(step > 0.0)) throw std::invalid_argument("find_peak needs lo < hi and step > 0");
  const auto cells = static_cast<long>(std::ceil((hi - lo) / step - 1e-9));
  std::vector<Peak> grid;
  grid.reserve(static_cast<std::size_t>(cells) + 1);
  grid.push_back({lo, f(lo)});
  for (long i = 1; i <= cells; ++i) {
    const double x = std::min(hi, lo + static_cast<double>(i) * step);
    grid.push_back({x, f(x)});
  }
  // Symmetric fringes have equal maxima; take the one at the smallest phase.
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& g : grid) top = std::max(top, g.value);
  const double slack = std::isfinite(top) ? 1e-9 * std::max(1.0, std::abs(top)) : 0.0;
  Peak best = grid.front();
  for (const auto& g : grid) {
    if (g.value >= top - slack) {
      best = g;
      break;
    }
  }
  auto consider = [&best](double x, double v) {
    if (v > best.value) best = {x, v};
  };

  double a = std::max(lo, best.phi - step);
  double b = std::min(hi, best.phi + step);
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  consider(x1, f1);
  consider(x2, f2);
  for (int iter = 0; iter < 200 && (b - a) > 1e-13; ++iter) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
      consider(x1, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
      consider(x2, f2);
    }
  }
  return best;
}

/// Peak search with the default fringe grid: 0.25 degree steps over [0, 180] degrees.
template <class Function>
Peak find_fringe_peak(Function&& f) {
  return find_peak(std::forward<Function>(f), 0.0, std::numbers::pi, to_radians(0.25));
}

}  // namespace fringelab
