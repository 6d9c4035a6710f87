// Copyright 2026 The bellsim Authors
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

// Schroedinger's cat as explicit unitaries on nucleus (x) cat (x) observer.
//
// Basis labels:
//   nucleus   0 = up (radioactive), 1 = down (decayed)
//   cat       0 = q=+1 alive,       1 = q=-1 dead
//   observer  0 = Q=0 ignorant,     1 = Q=+1 happy,   2 = Q=-1 shocked

#ifndef BELLSIM_CAT_SCENARIO_HPP_
#define BELLSIM_CAT_SCENARIO_HPP_

#include <array>

#include <nlohmann/json.hpp>

#include "bellsim/qlin.hpp"

namespace bellsim::cat {

enum Nucleus : std::size_t { kRadioactive = 0, kDecayed = 1 };
enum CatState : std::size_t { kAlive = 0, kDead = 1 };
enum Observer : std::size_t { kIgnorant = 0, kHappy = 1, kShocked = 2 };

const qlin::TensorSpace& universe_space();

// Pure state of the whole universe; purity is checked on construction.
class CatUniverse {
 public:
  explicit CatUniverse(qlin::DensityMatrix state);

  const qlin::DensityMatrix& state() const { return state_; }

 private:
  qlin::DensityMatrix state_;
};

// |radioactive, alive, ignorant>
CatUniverse initial_state();

// Decay over `half_lives`: |up, alive> -> s |up, alive> + d |down, dead> with
// s = sqrt(2^-t), d = sqrt(1 - 2^-t); a rotation inside span{|up, alive>,
// |down, dead>}, identity elsewhere and on the observer.
qlin::UnitaryOperator u_waiting(double half_lives);

// Observer looks: alive swaps Q ignorant<->happy, dead swaps ignorant<->shocked.
qlin::UnitaryOperator u_seeing();

CatUniverse apply(const CatUniverse& universe, const qlin::UnitaryOperator& u);

struct StageReport {
  qlin::DensityMatrix nucleus;
  qlin::DensityMatrix cat;
  qlin::DensityMatrix observer;
  double purity_universe = 0.0;
  double purity_nucleus = 0.0;
  double purity_cat = 0.0;
  double purity_observer = 0.0;
  // joint[q][Q]
  std::array<std::array<double, 3>, 2> joint{};
  // P(alive, happy) + P(dead, shocked)
  double agreement = 0.0;

  double p_alive() const { return joint[kAlive][0] + joint[kAlive][1] + joint[kAlive][2]; }
  double p_dead() const { return joint[kDead][0] + joint[kDead][1] + joint[kDead][2]; }
  double p_observer(Observer q) const { return joint[kAlive][q] + joint[kDead][q]; }
};

StageReport stage_report(const CatUniverse& universe);

struct Story {
  CatUniverse initial;
  CatUniverse waited;
  CatUniverse seen;
};

// initial -> u_waiting(t) -> u_seeing
Story run_story(double half_lives);

nlohmann::ordered_json to_json(const StageReport& report);

}  // namespace bellsim::cat

#endif  // BELLSIM_CAT_SCENARIO_HPP_
