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

// Projective measurement: Born distributions, collapse, the dephasing
// channel sum_a P rho P, and the ideal measurement unitary sum_a P (x) D.

#ifndef BELLSIM_MEASUREMENT_HPP_
#define BELLSIM_MEASUREMENT_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bellsim/angle.hpp"
#include "bellsim/qlin.hpp"

namespace bellsim::measurement {

// Physical value attached to an outcome. Product measurements carry one
// component per factor, e.g. (+1, -1) for a two-spin outcome.
struct OutcomeLabel {
  std::vector<double> components;

  OutcomeLabel() = default;
  OutcomeLabel(double value) : components{value} {}  // NOLINT: implicit by intent
  explicit OutcomeLabel(std::vector<double> values) : components(std::move(values)) {}

  // Product of the components.
  double value() const;
  friend bool operator==(const OutcomeLabel&, const OutcomeLabel&) = default;
};

struct Projector {
  OutcomeLabel label;
  qlin::ComplexMatrix matrix;
};

// Complete family of orthogonal projectors, validated on construction.
class ProjectorSet {
 public:
  ProjectorSet(qlin::TensorSpace space, std::vector<Projector> projectors);

  const qlin::TensorSpace& space() const { return space_; }
  const std::vector<Projector>& projectors() const { return projectors_; }
  std::size_t size() const { return projectors_.size(); }

 private:
  qlin::TensorSpace space_;
  std::vector<Projector> projectors_;
};

// Projectors onto the computational basis of a single subsystem of dim n,
// labelled by `first_label`, `first_label + 1`, ...
ProjectorSet basis_projectors(std::size_t n, double first_label = 0.0);

// Spin-1/2 analyzer along n(theta) = (sin theta, 0, cos theta): (I +/- n.sigma)/2,
// labels +1 then -1.
ProjectorSet spin_projectors(Angle theta);

// n.sigma for the same analyzer convention.
qlin::ComplexMatrix spin_observable(Angle theta);

// Discrete Fourier modes v_k(x) = exp(i 2 pi k x / n) / sqrt(n) on sites
// x = 1..n; label k * 2 pi / n for k = 0..n-1.
ProjectorSet ring_momentum_projectors(std::size_t n_sites);

// Position projectors |x><x| for sites x = 1..n, labelled by x.
ProjectorSet position_projectors(std::size_t n_sites);

// Joint measurement of two independent sets on the concatenated space.
ProjectorSet product(const ProjectorSet& a, const ProjectorSet& b);

inline constexpr double kNullBranch = 1e-12;

struct MeasurementOutcome {
  OutcomeLabel label;
  double probability = 0.0;
  // P rho P / p; absent when p <= 1e-12.
  std::optional<qlin::DensityMatrix> conditional_state;
};

std::vector<MeasurementOutcome> born_distribution(const qlin::DensityMatrix& rho,
                                                  const ProjectorSet& m);

// Probabilities only; no conditional states are built.
std::vector<double> born_probabilities(const qlin::DensityMatrix& rho, const ProjectorSet& m);

// Conditional state for outcome `index`. Throws DomainError for a null branch.
qlin::DensityMatrix collapse(const qlin::DensityMatrix& rho, const ProjectorSet& m,
                             std::size_t index);

qlin::DensityMatrix dephasing_channel(const qlin::DensityMatrix& rho, const ProjectorSet& m);

// sum_a P^(a) (x) D^(a), where D^(a) is the cyclic shift |q> -> |q + a mod d>
// on a pointer of dimension d and a is the outcome's position in `m`.
qlin::UnitaryOperator ideal_measurement_unitary(const ProjectorSet& m, std::size_t pointer_dim);

// [{"label": ..., "p": ...}] in projector order. Scalar labels serialize as
// numbers, product labels as arrays.
nlohmann::ordered_json to_json(const std::vector<MeasurementOutcome>& outcomes);
nlohmann::ordered_json to_json(const OutcomeLabel& label);

}  // namespace bellsim::measurement

#endif  // BELLSIM_MEASUREMENT_HPP_
