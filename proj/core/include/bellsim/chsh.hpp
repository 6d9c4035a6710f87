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

// Shared CHSH vocabulary for the classical and quantum sides.

#ifndef BELLSIM_CHSH_HPP_
#define BELLSIM_CHSH_HPP_

#include <cstddef>

#include "bellsim/angle.hpp"

namespace bellsim {

// Analyzer angles (theta_A, theta_A', theta_B, theta_B').
struct ChshSettings {
  Angle theta_a;
  Angle theta_a_prime;
  Angle theta_b;
  Angle theta_b_prime;

  // theta_A = 0, theta_A' = 90, theta_B = 45, theta_B' = -45 degrees, where
  // the singlet reaches |S| = 2 sqrt(2).
  static ChshSettings maximal_violation() {
    return {Angle::from_degrees(0.0), Angle::from_degrees(90.0), Angle::from_degrees(45.0),
            Angle::from_degrees(-45.0)};
  }
};

// Setting indices of S = <ab> + <ab'> + <a'b> - <a'b'>.
struct ChshPairing {
  std::size_t a = 0;
  std::size_t a_prime = 1;
  std::size_t b = 0;
  std::size_t b_prime = 1;
};

struct ChshEstimate {
  double exact = 0.0;
  double empirical = 0.0;
  // sqrt of the summed per-term variances; terms are estimated independently.
  double std_error = 0.0;
  std::size_t trials_per_term = 0;
};

}  // namespace bellsim

#endif  // BELLSIM_CHSH_HPP_
