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

#include "bellsim/measurement.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bellsim/errors.hpp"

namespace bellsim::measurement {

using qlin::Complex;
using qlin::ComplexMatrix;
using qlin::DensityMatrix;
using qlin::TensorSpace;

double OutcomeLabel::value() const {
  double v = 1.0;
  for (double c : components) v *= c;
  return v;
}

ProjectorSet::ProjectorSet(TensorSpace space, std::vector<Projector> projectors)
    : space_(std::move(space)), projectors_(std::move(projectors)) {
  const std::size_t d = space_.dimension();
  if (projectors_.empty()) throw DomainError("ProjectorSet: no projectors");
  ComplexMatrix total(d, d);
  for (std::size_t a = 0; a < projectors_.size(); ++a) {
    const ComplexMatrix& p = projectors_[a].matrix;
    if (p.rows() != d || p.cols() != d) {
      throw DomainError("ProjectorSet: projector " + std::to_string(a) +
                        " does not match the space dimension");
    }
    if (!qlin::is_hermitian(p)) {
      throw DomainError("ProjectorSet: projector " + std::to_string(a) + " is not Hermitian");
    }
    if (qlin::max_abs_diff(p * p, p) > qlin::kAlgebraTolerance) {
      throw DomainError("ProjectorSet: projector " + std::to_string(a) + " is not idempotent");
    }
    for (std::size_t b = 0; b < a; ++b) {
      if (qlin::max_abs_diff(p * projectors_[b].matrix, ComplexMatrix(d, d)) >
          qlin::kAlgebraTolerance) {
        throw DomainError("ProjectorSet: projectors " + std::to_string(b) + " and " +
                          std::to_string(a) + " are not orthogonal");
      }
    }
    total = total + p;
  }
  if (qlin::max_abs_diff(total, ComplexMatrix::identity(d)) > qlin::kAlgebraTolerance) {
    throw DomainError("ProjectorSet: projectors do not sum to the identity");
  }
}

ProjectorSet basis_projectors(std::size_t n, double first_label) {
  if (n == 0) throw DomainError("basis_projectors: dimension must be >= 1");
  std::vector<Projector> ps;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Complex> diag(n);
    diag[k] = 1.0;
    ps.push_back({first_label + static_cast<double>(k), ComplexMatrix::diagonal(diag)});
  }
  return ProjectorSet(TensorSpace::single(n), std::move(ps));
}

ComplexMatrix spin_observable(Angle theta) {
  const double s = std::sin(theta.radians());
  const double c = std::cos(theta.radians());
  // sin(theta) sigma_x + cos(theta) sigma_z
  return ComplexMatrix::from_rows({{c, s}, {s, -c}});
}

ProjectorSet spin_projectors(Angle theta) {
  const ComplexMatrix n_sigma = spin_observable(theta);
  const ComplexMatrix id = ComplexMatrix::identity(2);
  return ProjectorSet(TensorSpace::single(2),
                      {{+1.0, Complex(0.5) * (id + n_sigma)}, {-1.0, Complex(0.5) * (id - n_sigma)}});
}

ProjectorSet ring_momentum_projectors(std::size_t n_sites) {
  if (n_sites == 0) throw DomainError("ring_momentum_projectors: n_sites must be >= 1");
  const double n = static_cast<double>(n_sites);
  const double step = 2.0 * std::numbers::pi / n;
  std::vector<Projector> ps;
  for (std::size_t k = 0; k < n_sites; ++k) {
    std::vector<Complex> v(n_sites);
    for (std::size_t i = 0; i < n_sites; ++i) {
      // Reduce k*x mod n first so the phase stays exact for large n.
      const std::size_t x = i + 1;
      const double phase = step * static_cast<double>((k * x) % n_sites);
      v[i] = std::polar(1.0 / std::sqrt(n), phase);
    }
    ps.push_back({step * static_cast<double>(k), ComplexMatrix::outer(v, v)});
  }
  return ProjectorSet(TensorSpace::single(n_sites), std::move(ps));
}

ProjectorSet position_projectors(std::size_t n_sites) { return basis_projectors(n_sites, 1.0); }

ProjectorSet product(const ProjectorSet& a, const ProjectorSet& b) {
  std::vector<Projector> ps;
  ps.reserve(a.size() * b.size());
  for (const Projector& pa : a.projectors()) {
    for (const Projector& pb : b.projectors()) {
      std::vector<double> label = pa.label.components;
      label.insert(label.end(), pb.label.components.begin(), pb.label.components.end());
      ps.push_back({OutcomeLabel(std::move(label)), qlin::tensor_product(pa.matrix, pb.matrix)});
    }
  }
  return ProjectorSet(a.space().concat(b.space()), std::move(ps));
}

namespace {

void require_matching(const DensityMatrix& rho, const ProjectorSet& m, const char* op) {
  if (!(rho.space() == m.space())) {
    throw DomainError(std::string(op) + ": state and projector set live on different spaces");
  }
}

// P rho P, Hermitized.
ComplexMatrix sandwich(const ComplexMatrix& p, const ComplexMatrix& rho) {
  ComplexMatrix out = p * rho * p;
  return Complex(0.5) * (out + out.adjoint());
}

}  // namespace

std::vector<double> born_probabilities(const DensityMatrix& rho, const ProjectorSet& m) {
  require_matching(rho, m, "born_probabilities");
  std::vector<double> probs;
  probs.reserve(m.size());
  for (const Projector& p : m.projectors()) {
    // tr(P rho P) = tr(P rho) for a projector.
    probs.push_back(qlin::expectation(rho, p.matrix));
  }
  return probs;
}

std::vector<MeasurementOutcome> born_distribution(const DensityMatrix& rho, const ProjectorSet& m) {
  require_matching(rho, m, "born_distribution");
  std::vector<MeasurementOutcome> out;
  out.reserve(m.size());
  for (const Projector& p : m.projectors()) {
    const ComplexMatrix projected = sandwich(p.matrix, rho.matrix());
    const double prob = projected.trace().real();
    MeasurementOutcome outcome{p.label, prob, std::nullopt};
    if (prob > kNullBranch) {
      outcome.conditional_state.emplace(rho.space(), Complex(1.0 / prob) * projected);
    }
    out.push_back(std::move(outcome));
  }
  return out;
}

DensityMatrix collapse(const DensityMatrix& rho, const ProjectorSet& m, std::size_t index) {
  require_matching(rho, m, "collapse");
  if (index >= m.size()) throw DomainError("collapse: outcome index out of range");
  const ComplexMatrix projected = sandwich(m.projectors()[index].matrix, rho.matrix());
  const double prob = projected.trace().real();
  if (!(prob > kNullBranch)) {
    throw DomainError("collapse: outcome " + std::to_string(index) +
                      " has zero probability; the conditional state is undefined");
  }
  return DensityMatrix(rho.space(), Complex(1.0 / prob) * projected);
}

DensityMatrix dephasing_channel(const DensityMatrix& rho, const ProjectorSet& m) {
  require_matching(rho, m, "dephasing_channel");
  const std::size_t d = rho.dimension();
  ComplexMatrix out(d, d);
  for (const Projector& p : m.projectors()) out = out + p.matrix * rho.matrix() * p.matrix;
  out = Complex(0.5) * (out + out.adjoint());
  return DensityMatrix(rho.space(), std::move(out));
}

qlin::UnitaryOperator ideal_measurement_unitary(const ProjectorSet& m, std::size_t pointer_dim) {
  if (pointer_dim < m.size()) {
    throw DomainError("ideal_measurement_unitary: pointer dimension " +
                      std::to_string(pointer_dim) + " is smaller than the outcome count " +
                      std::to_string(m.size()));
  }
  const std::size_t d = m.space().dimension();
  ComplexMatrix u(d * pointer_dim, d * pointer_dim);
  for (std::size_t a = 0; a < m.size(); ++a) {
    std::vector<Complex> shift(pointer_dim * pointer_dim);
    for (std::size_t q = 0; q < pointer_dim; ++q) shift[((q + a) % pointer_dim) * pointer_dim + q] = 1.0;
    u = u + qlin::tensor_product(m.projectors()[a].matrix,
                                 ComplexMatrix(pointer_dim, pointer_dim, std::move(shift)));
  }
  return qlin::UnitaryOperator(m.space().concat(TensorSpace::single(pointer_dim)), std::move(u));
}

nlohmann::ordered_json to_json(const OutcomeLabel& label) {
  if (label.components.size() == 1) return label.components.front();
  return label.components;
}

nlohmann::ordered_json to_json(const std::vector<MeasurementOutcome>& outcomes) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const MeasurementOutcome& o : outcomes) {
    nlohmann::ordered_json j;
    j["label"] = to_json(o.label);
    j["p"] = o.probability;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace bellsim::measurement
