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
#include <string>
#include <vector>

#include "fringelab/fock.hpp"

namespace fringelab {

/// Benchmark input states.
enum class StateKind { holland_burnett, noon, shot_noise };

inline std::string to_string(StateKind kind) {
  switch (kind) {
    case StateKind::holland_burnett: return "hb";
    case StateKind::noon: return "noon";
    case StateKind::shot_noise: return "snl";
  }
  return "?";
}

inline StateKind parse_state_kind(const std::string& text) {
  if (text == "hb") return StateKind::holland_burnett;
  if (text == "noon") return StateKind::noon;
  if (text == "snl") return StateKind::shot_noise;
  throw std::invalid_argument("unknown state '" + text + "' (expected hb, noon or snl)");
}

/// |N/2, N/2>, the dual Fock input.
inline TwoModeState dual_fock(int photons) {
  check_photon_number(photons);
  if (photons < 2 || photons % 2 != 0) {
    throw PhysicsError("Holland-Burnett states need an even photon number N >= 2 (dual N/2 Fock input), got N=" +
                       std::to_string(photons));
  }
  return TwoModeState::basis(photons / 2, photons / 2);
}

/// Holland-Burnett state: the splitter image of the dual Fock input.
inline TwoModeState hb_state(int photons) { return beam_splitter(dual_fock(photons)); }

/// (|N,0> + |0,N>)/sqrt2 inside the interferometer.
inline TwoModeState noon_state(int photons) {
  check_photon_number(photons);
  if (photons < 1) throw PhysicsError("NOON states need N >= 1");
  std::vector<Complex> amps(static_cast<std::size_t>(photons) + 1, Complex{});
  amps.front() = 1.0 / std::sqrt(2.0);
  amps.back() = 1.0 / std::sqrt(2.0);
  return make_state(photons, std::move(amps));
}

/// N uncorrelated photons: |N,0> sent through the splitter.
inline TwoModeState snl_state(int photons) {
  check_photon_number(photons);
  if (photons < 1) throw PhysicsError("shot-noise reference states need N >= 1");
  return beam_splitter(TwoModeState::basis(photons, 0));
}

inline TwoModeState make_benchmark_state(StateKind kind, int photons) {
  switch (kind) {
    case StateKind::holland_burnett: return hb_state(photons);
    case StateKind::noon: return noon_state(photons);
    case StateKind::shot_noise: return snl_state(photons);
  }
  throw std::invalid_argument("unknown state kind");
}

}  // namespace fringelab
