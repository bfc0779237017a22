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

#include "fringelab/detection.hpp"

#include <cmath>
#include <set>

#include "fringelab/fringes.hpp"
#include "fringelab/states.hpp"
#include "gtest/gtest.h"

using namespace fringelab;

namespace {

// Enumerates every (lost or detector index) assignment of n photons.
std::vector<double> enumerate_port(int photons, int k, double eta) {
  std::vector<double> dist(static_cast<std::size_t>(photons) + 1, 0.0);
  long long total = 1;
  for (int i = 0; i < photons; ++i) total *= (k + 1);
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    double w = 1.0;
    std::set<int> fired;
    for (int i = 0; i < photons; ++i) {
      const int slot = static_cast<int>(c % (k + 1));
      c /= (k + 1);
      if (slot == k) {
        w *= 1.0 - eta;
      } else {
        w *= eta / k;
        fired.insert(slot);
      }
    }
    dist[fired.size()] += w;
  }
  return dist;
}

}  // namespace

TEST(resolve_probability, values) {
  const DetectorArrayConfig five{5, 1.0};
  EXPECT_NEAR(resolve_probability(3, five), 0.48, 1e-15);
  EXPECT_NEAR(resolve_probability(0, five), 1.0, 1e-15);
  EXPECT_NEAR(resolve_probability(1, five), 1.0, 1e-15);
  EXPECT_EQ(resolve_probability(6, five), 0.0);
  EXPECT_NEAR(resolve_probability(3, {5, 0.9}), 0.48 * 0.729, 1e-15);
  EXPECT_NEAR(sixfold_selection_rate(1.0, five), 0.2304, 1e-15);
  EXPECT_NEAR(selection_rate(0.5, {2, 1}, five), 0.5 * 0.8, 1e-15);
}

TEST(resolve_probability, rejects_bad_config) {
  EXPECT_THROW(resolve_probability(1, {0, 1.0}), std::invalid_argument);
  EXPECT_THROW(resolve_probability(1, {5, 1.5}), std::invalid_argument);
  EXPECT_THROW(resolve_probability(-1, {5, 1.0}), std::invalid_argument);
  EXPECT_THROW(selection_rate(1.2, {3, 3}, {}), std::invalid_argument);
}

TEST(port_click_distribution, matches_exhaustive_enumeration) {
  for (int k : {1, 2, 3, 5}) {
    for (double eta : {1.0, 0.7, 0.0}) {
      for (int n = 0; n <= 5; ++n) {
        const auto fast = port_click_distribution(n, {k, eta});
        const auto slow = enumerate_port(n, k, eta);
        for (std::size_t c = 0; c < slow.size(); ++c) {
          const double got = c < fast.size() ? fast[c] : 0.0;
          EXPECT_NEAR(got, slow[c], 1e-12) << "k=" << k << " eta=" << eta << " n=" << n << " c=" << c;
        }
        double total = 0.0;
        for (double v : fast) total += v;
        EXPECT_NEAR(total, 1.0, 1e-12);
        if (n <= k) EXPECT_NEAR(fast[static_cast<std::size_t>(n)], resolve_probability(n, {k, eta}), 1e-12);
      }
    }
  }
}

TEST(click_distribution, six_photon_fringe_against_joint_enumeration) {
  const auto hb = hb_state(6);
  const double phi = 0.2;
  std::map<OutcomePattern, double> outcomes;
  for (int k = 0; k <= 6; ++k) outcomes[{k, 6 - k}] = fringe_probability(hb, {k, 6 - k}, phi);
  const DetectorArrayConfig config{5, 0.9};
  const auto clicks = click_distribution(outcomes, config);
  double total = 0.0;
  for (const auto& [pattern, p] : clicks) total += p;
  EXPECT_NEAR(total, 1.0, 1e-12);

  // Joint oracle: independent port enumerations for every photon split.
  std::map<OutcomePattern, double> oracle_clicks;
  for (const auto& [pattern, p] : outcomes) {
    const auto d1 = enumerate_port(pattern.out_port_1, 5, 0.9);
    const auto d2 = enumerate_port(pattern.out_port_2, 5, 0.9);
    for (std::size_t a = 0; a < d1.size(); ++a) {
      for (std::size_t b = 0; b < d2.size(); ++b) oracle_clicks[{static_cast<int>(a), static_cast<int>(b)}] += p * d1[a] * d2[b];
    }
  }
  for (const auto& [pattern, p] : oracle_clicks) {
    const auto it = clicks.find(pattern);
    EXPECT_NEAR(it == clicks.end() ? 0.0 : it->second, p, 1e-12) << to_string(pattern);
  }
  // A 3+3 click pattern can only come from the (3,3) outcome at unit efficiency.
  const auto ideal = click_distribution(outcomes, {5, 1.0});
  EXPECT_NEAR(ideal.at({3, 3}), outcomes.at({3, 3}) * 0.48 * 0.48, 1e-12);
}

TEST(click_distribution, rejects_invalid_input) {
  EXPECT_THROW(click_distribution({{{3, 3}, -0.1}}, {}), std::invalid_argument);
  EXPECT_THROW(click_distribution({{{3, 3}, 0.8}, {{2, 4}, 0.3}}, {}), std::invalid_argument);
}

TEST(parse_detector_config, formats) {
  const auto a = parse_detector_config("detectors { k = 5, eta = 1.0 }");
  EXPECT_EQ(a.detectors_per_port, 5);
  EXPECT_EQ(a.efficiency, 1.0);
  const auto b = parse_detector_config("# lab setup\ndetectors {\n  k = 8   # fan-out\n  eta = 0.85\n}\n");
  EXPECT_EQ(b.detectors_per_port, 8);
  EXPECT_EQ(b.efficiency, 0.85);
  const auto c = parse_detector_config("detectors { eta = 0.5 }");
  EXPECT_EQ(c.detectors_per_port, 5);
  EXPECT_EQ(c.efficiency, 0.5);
}

TEST(parse_detector_config, errors) {
  EXPECT_THROW(parse_detector_config("k = 5"), std::invalid_argument);
  EXPECT_THROW(parse_detector_config("detectors { k = 5"), std::invalid_argument);
  EXPECT_THROW(parse_detector_config("detectors { k = five }"), std::invalid_argument);
  EXPECT_THROW(parse_detector_config("detectors { k = 5x }"), std::invalid_argument);
  EXPECT_THROW(parse_detector_config("detectors { q = 5 }"), std::invalid_argument);
  EXPECT_THROW(parse_detector_config("detectors { k 5 }"), std::invalid_argument);
  EXPECT_THROW(parse_detector_config("detectors { eta = 1.5 }"), std::invalid_argument);
  EXPECT_THROW(load_detector_config("/nonexistent/fringelab.conf"), std::runtime_error);
}

TEST(port_click_distribution, normalized_over_parameter_grid) {
  double worst = 0.0;
  for (int n = 0; n <= 12; ++n) {
    for (int k = 1; k <= 16; ++k) {
      for (int e = 0; e <= 4; ++e) {
        const auto d = port_click_distribution(n, {k, 0.25 * e});
        double total = 0.0;
        for (double v : d) total += v;
        worst = std::max(worst, std::abs(total - 1.0));
      }
    }
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(resolve_probability, monotone_in_k_and_eta) {
  for (int n = 1; n <= 8; ++n) {
    for (int k = 1; k < 20; ++k) {
      EXPECT_LE(resolve_probability(n, {k, 0.8}), resolve_probability(n, {k + 1, 0.8}) + 1e-15);
    }
    for (int e = 0; e < 10; ++e) {
      EXPECT_LE(resolve_probability(n, {5, 0.1 * e}), resolve_probability(n, {5, 0.1 * (e + 1)}) + 1e-15);
    }
  }
}

TEST(click_distribution, limits) {
  // Single detector per port at unit efficiency: at most one click.
  for (int n = 0; n <= 6; ++n) {
    const auto d = click_distribution({{{n, 0}, 1.0}}, {1, 1.0});
    EXPECT_NEAR(d.at({std::min(n, 1), 0}), 1.0, 1e-15);
  }
  const auto half = click_distribution({{{1, 0}, 1.0}}, {5, 0.5});
  EXPECT_NEAR(half.at({0, 0}), 0.5, 1e-15);
  EXPECT_NEAR(half.at({1, 0}), 0.5, 1e-15);

  // Large fan-out approaches the identity mapping. Every collision lowers the
  // click total below N, so the L1 deviation is twice the collision mass.
  const auto hb = hb_state(6);
  std::map<OutcomePattern, double> outcomes;
  for (int k = 0; k <= 6; ++k) outcomes[{k, 6 - k}] = fringe_probability(hb, {k, 6 - k}, 0.4);
  double previous = 1.0;
  for (int fan_out : {64, 512, 4096}) {
    const DetectorArrayConfig config{fan_out, 1.0};
    const auto clicks = click_distribution(outcomes, config);
    double deviation = 0.0;
    double collision = 0.0;
    for (const auto& [pattern, p] : clicks) {
      const auto it = outcomes.find(pattern);
      deviation += std::abs(p - (it == outcomes.end() ? 0.0 : it->second));
    }
    for (const auto& [pattern, p] : outcomes) {
      collision += p * (1.0 - resolve_probability(pattern.out_port_1, config) *
                                  resolve_probability(pattern.out_port_2, config));
    }
    EXPECT_NEAR(deviation, 2.0 * collision, 1e-12) << fan_out;
    EXPECT_LT(deviation, previous);
    previous = deviation;
  }
  EXPECT_LT(previous, 5e-3);
  EXPECT_NEAR(click_distribution({{{3, 3}, 1.0}}, {5, 1.0}).at({3, 3}), 0.2304, 1e-15);
  EXPECT_EQ(sixfold_selection_rate(0.0, {}), 0.0);
  EXPECT_EQ(sixfold_selection_rate(1.0, {5, 0.0}), 0.0);
}
