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

#include "bellsim/random_states.hpp"

#include <cmath>
#include <vector>

#include "bellsim/errors.hpp"

namespace bellsim::qlin {

ComplexMatrix random_unitary_matrix(std::size_t dim, mc::TrialRng& rng) {
  std::vector<std::vector<Complex>> cols(dim, std::vector<Complex>(dim));
  for (auto& col : cols) {
    for (Complex& z : col) z = Complex(rng.normal(), rng.normal());
  }
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      Complex dot = 0.0;
      for (std::size_t r = 0; r < dim; ++r) dot += std::conj(cols[i][r]) * cols[j][r];
      for (std::size_t r = 0; r < dim; ++r) cols[j][r] -= dot * cols[i][r];
    }
    double norm2 = 0.0;
    for (const Complex& z : cols[j]) norm2 += std::norm(z);
    const double inv = 1.0 / std::sqrt(norm2);
    for (Complex& z : cols[j]) z *= inv;
  }
  std::vector<Complex> e(dim * dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) e[r * dim + c] = cols[c][r];
  }
  return ComplexMatrix(dim, dim, std::move(e));
}

UnitaryOperator random_unitary(const TensorSpace& space, mc::TrialRng& rng) {
  return UnitaryOperator(space, random_unitary_matrix(space.dimension(), rng));
}

PureState random_pure_state(const TensorSpace& space, mc::TrialRng& rng) {
  std::vector<Complex> amps(space.dimension());
  for (Complex& z : amps) z = Complex(rng.normal(), rng.normal());
  return PureState::normalized(space, std::move(amps));
}

DensityMatrix random_density_matrix(const TensorSpace& space, mc::TrialRng& rng) {
  const std::size_t d = space.dimension();
  std::vector<Complex> g(d * d);
  for (Complex& z : g) z = Complex(rng.normal(), rng.normal());
  const ComplexMatrix gm(d, d, std::move(g));
  ComplexMatrix m = gm * gm.adjoint();
  m = Complex(1.0 / m.trace().real()) * m;
  m = Complex(0.5) * (m + m.adjoint());
  return DensityMatrix(space, std::move(m));
}

}  // namespace bellsim::qlin

namespace bellsim::measurement {

ProjectorSet random_projector_set(const qlin::TensorSpace& space, std::size_t outcomes,
                                  mc::TrialRng& rng) {
  const std::size_t d = space.dimension();
  if (outcomes == 0 || outcomes > d) {
    throw DomainError("random_projector_set: need 1 <= outcomes <= dimension");
  }
  const qlin::ComplexMatrix u = qlin::random_unitary_matrix(d, rng);
  // First `outcomes` columns seed one group each; the rest land uniformly.
  std::vector<std::size_t> group(d);
  for (std::size_t c = 0; c < d; ++c) {
    group[c] = c < outcomes ? c : static_cast<std::size_t>(rng.uniform_index(outcomes));
  }
  std::vector<qlin::ComplexMatrix> mats(outcomes, qlin::ComplexMatrix(d, d));
  for (std::size_t c = 0; c < d; ++c) {
    std::vector<qlin::Complex> v(d);
    for (std::size_t r = 0; r < d; ++r) v[r] = u(r, c);
    mats[group[c]] = mats[group[c]] + qlin::ComplexMatrix::outer(v, v);
  }
  std::vector<Projector> ps;
  for (std::size_t a = 0; a < outcomes; ++a) {
    ps.push_back({static_cast<double>(a), std::move(mats[a])});
  }
  return ProjectorSet(space, std::move(ps));
}

}  // namespace bellsim::measurement
