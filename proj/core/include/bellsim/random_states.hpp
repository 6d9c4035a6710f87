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

// Random states, unitaries and measurements for property tests and benchmarks.

#ifndef BELLSIM_RANDOM_STATES_HPP_
#define BELLSIM_RANDOM_STATES_HPP_

#include <cstddef>

#include "bellsim/mc_harness.hpp"
#include "bellsim/measurement.hpp"
#include "bellsim/qlin.hpp"

namespace bellsim::qlin {

// Haar-distributed (Gaussian matrix, then modified Gram-Schmidt).
ComplexMatrix random_unitary_matrix(std::size_t dim, mc::TrialRng& rng);
UnitaryOperator random_unitary(const TensorSpace& space, mc::TrialRng& rng);

PureState random_pure_state(const TensorSpace& space, mc::TrialRng& rng);

// G G^dagger / tr(G G^dagger) for a complex Gaussian G; full rank almost surely.
DensityMatrix random_density_matrix(const TensorSpace& space, mc::TrialRng& rng);

}  // namespace bellsim::qlin

namespace bellsim::measurement {

// Splits the columns of a random unitary into `outcomes` nonempty groups.
ProjectorSet random_projector_set(const qlin::TensorSpace& space, std::size_t outcomes,
                                  mc::TrialRng& rng);

}  // namespace bellsim::measurement

#endif  // BELLSIM_RANDOM_STATES_HPP_
