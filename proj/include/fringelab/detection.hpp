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

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fringelab/fock.hpp"

namespace fringelab {

/// Balanced fan-out of k binary click detectors behind each output port.
struct DetectorArrayConfig {
  int detectors_per_port = 5;
  double efficiency = 1.0;

  void validate() const {
    if (detectors_per_port < 1) throw std::invalid_argument("detectors_per_port must be >= 1");
    if (!(efficiency >= 0.0 && efficiency <= 1.0)) throw std::invalid_argument("efficiency must lie in [0, 1]");
  }
};

/// Probability that all n photons at a port survive and fire n distinct
/// detectors: eta^n k! / ((k-n)! k^n).
inline double resolve_probability(int photons, const DetectorArrayConfig& config) {
  config.validate();
  if (photons < 0) throw std::invalid_argument("photon number must be non-negative");
  const int k = config.detectors_per_port;
  if (photons > k) return 0.0;
  double p = 1.0;
  for (int i = 0; i < photons; ++i) p *= config.efficiency * static_cast<double>(k - i) / static_cast<double>(k);
  return p;
}

/// Rate at which an outcome of probability p is registered with every photon
/// resolved at both ports.
inline double selection_rate(double fringe_probability, const OutcomePattern& outcome,
                             const DetectorArrayConfig& config) {
  if (!(fringe_probability >= 0.0 && fringe_probability <= 1.0)) {
    throw std::invalid_argument("probability must lie in [0, 1]");
  }
  return fringe_probability * resolve_probability(outcome.out_port_1, config) *
         resolve_probability(outcome.out_port_2, config);
}

/// Registered 3+3 clicks from the (3,3) outcome.
inline double sixfold_selection_rate(double fringe_probability, const DetectorArrayConfig& config) {
  return selection_rate(fringe_probability, {3, 3}, config);
}

/// Distribution of the number of fired detectors at one port fed with n photons.
/// Each photon survives with probability eta and picks one of the k detectors
/// uniformly; index c of the result is P(c clicks).
inline std::vector<double> port_click_distribution(int photons, const DetectorArrayConfig& config) {
  config.validate();
  if (photons < 0) throw std::invalid_argument("photon number must be non-negative");
  const int k = config.detectors_per_port;
  const int max_clicks = std::min(photons, k);
  std::vector<double> dist(static_cast<std::size_t>(max_clicks) + 1, 0.0);
  dist[0] = 1.0;
  const double eta = config.efficiency;
  for (int photon = 0; photon < photons; ++photon) {
    std::vector<double> next(dist.size(), 0.0);
    for (int c = 0; c <= max_clicks; ++c) {
      const double w = dist[static_cast<std::size_t>(c)];
      if (w == 0.0) continue;
      const double fresh = static_cast<double>(k - c) / static_cast<double>(k);
      next[static_cast<std::size_t>(c)] += w * ((1.0 - eta) + eta * (1.0 - fresh));
      if (c < max_clicks) next[static_cast<std::size_t>(c + 1)] += w * eta * fresh;
    }
    dist = std::move(next);
  }
  return dist;
}

/// Click-pattern distribution produced by a photon-number outcome distribution.
inline std::map<OutcomePattern, double> click_distribution(const std::map<OutcomePattern, double>& outcome_probs,
                                                          const DetectorArrayConfig& config) {
  double total = 0.0;
  for (const auto& [pattern, p] : outcome_probs) {
    if (pattern.out_port_1 < 0 || pattern.out_port_2 < 0) throw std::invalid_argument("negative photon count");
    if (!(p >= 0.0)) throw std::invalid_argument("outcome probabilities must be non-negative");
    total += p;
  }
  if (total > 1.0 + 1e-12) throw std::invalid_argument("outcome probabilities sum above 1");

  std::map<int, std::vector<double>> per_port;
  auto port = [&](int n) -> const std::vector<double>& {
    auto it = per_port.find(n);
    if (it == per_port.end()) it = per_port.emplace(n, port_click_distribution(n, config)).first;
    return it->second;
  };

  std::map<OutcomePattern, double> clicks;
  for (const auto& [pattern, p] : outcome_probs) {
    if (p == 0.0) continue;
    const auto& d1 = port(pattern.out_port_1);
    const auto& d2 = port(pattern.out_port_2);
    for (std::size_t c1 = 0; c1 < d1.size(); ++c1) {
      for (std::size_t c2 = 0; c2 < d2.size(); ++c2) {
        const double w = p * d1[c1] * d2[c2];
        if (w != 0.0) clicks[{static_cast<int>(c1), static_cast<int>(c2)}] += w;
      }
    }
  }
  return clicks;
}

/// Reads the detector block of a configuration file:
///
///   detectors { k = 5, eta = 1.0 }
///
/// Separators may be commas or newlines; `#` starts a comment. Keys missing
/// from the block keep their defaults.
inline DetectorArrayConfig parse_detector_config(const std::string& text) {
  std::string clean;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    clean += line.substr(0, line.find('#'));
    clean += '\n';
  }
  const auto key = clean.find("detectors");
  if (key == std::string::npos) throw std::invalid_argument("config has no detectors block");
  const auto open = clean.find('{', key);
  const auto close = clean.find('}', open);
  if (open == std::string::npos || close == std::string::npos) {
    throw std::invalid_argument("detectors block must be enclosed in braces");
  }
  DetectorArrayConfig config;
  std::string body = clean.substr(open + 1, close - open - 1);
  for (char& c : body) {
    if (c == ',' || c == '\n' || c == ';') c = '\n';
  }
  std::istringstream entries(body);
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  for (std::string entry; std::getline(entries, entry);) {
    entry = trim(entry);
    if (entry.empty()) continue;
    const auto eq = entry.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected key = value in detectors block, got '" + entry + "'");
    const std::string name = trim(entry.substr(0, eq));
    const std::string value = trim(entry.substr(eq + 1));
    std::size_t used = 0;
    try {
      if (name == "k") {
        config.detectors_per_port = std::stoi(value, &used);
      } else if (name == "eta") {
        config.efficiency = std::stod(value, &used);
      } else {
        throw std::invalid_argument("unknown detectors key '" + name + "'");
      }
    } catch (const std::invalid_argument&) {
      if (used == 0 && (name == "k" || name == "eta")) {
        throw std::invalid_argument("bad value '" + value + "' for detectors key '" + name + "'");
      }
      throw;
    }
    if (used != value.size()) throw std::invalid_argument("bad value '" + value + "' for detectors key '" + name + "'");
  }
  config.validate();
  return config;
}

inline DetectorArrayConfig load_detector_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_detector_config(buffer.str());
}

}  // namespace fringelab
