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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bellsim/errors.hpp"
#include "bellsim/random_states.hpp"
#include "unit/oracles.h"

namespace bellsim::measurement {
namespace {

using qlin::Complex;
using qlin::ComplexMatrix;
using qlin::DensityMatrix;
using qlin::PureState;
using qlin::TensorSpace;

DensityMatrix spin_state(Complex psi1, Complex psi2) {
  return DensityMatrix(PureState(TensorSpace::single(2), {psi1, psi2}));
}

TEST(BornDistribution, EigenstateOfTheMeasurement) {
  mc::TrialRng rng({1, 0}, 0);
  const PureState phi = qlin::random_pure_state(TensorSpace::single(3), rng);
  const ComplexMatrix p = ComplexMatrix::outer(phi.amplitudes(), phi.amplitudes());
  const ProjectorSet m(TensorSpace::single(3), {{1.0, p}, {0.0, ComplexMatrix::identity(3) - p}});
  const auto out = born_distribution(DensityMatrix(phi), m);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_NEAR(out[0].probability, 1.0, 1e-12);
  EXPECT_NEAR(out[1].probability, 0.0, 1e-12);
  EXPECT_TRUE(out[0].conditional_state.has_value());
  EXPECT_FALSE(out[1].conditional_state.has_value());
}

TEST(BornDistribution, SpinUpDown) {
  const auto out = born_distribution(spin_state(0.6, Complex(0.0, 0.8)), basis_projectors(2));
  EXPECT_NEAR(out[0].probability, 0.36, 1e-15);
  EXPECT_NEAR(out[1].probability, 0.64, 1e-15);
}

TEST(RingMomentum, SingleSiteIsIdentity) {
  const ProjectorSet m = ring_momentum_projectors(1);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_LE(qlin::max_abs_diff(m.projectors()[0].matrix, ComplexMatrix::identity(1)), 1e-15);
  EXPECT_EQ(m.projectors()[0].label.value(), 0.0);
}

TEST(RingMomentum, UniformSuperpositionHasZeroMomentum) {
  const DensityMatrix uniform(PureState::normalized(TensorSpace::single(5), std::vector<Complex>(5, 1.0)));
  const ProjectorSet m = ring_momentum_projectors(5);
  const auto probs = born_probabilities(uniform, m);
  EXPECT_NEAR(probs[0], 1.0, 1e-12);
  // Prob(p = 3 (2 pi / 5))
  EXPECT_NEAR(m.projectors()[3].label.value(), 3.0 * 2.0 * std::numbers::pi / 5.0, 1e-15);
  EXPECT_NEAR(probs[3], 0.0, 1e-12);
}

TEST(RingMomentum, LocalizedStateIsFlatInMomentum) {
  // Site x = 3 of x = 1..5.
  const DensityMatrix localized(PureState::basis(TensorSpace::single(5), 2));
  for (double p : born_probabilities(localized, ring_momentum_projectors(5))) {
    EXPECT_NEAR(p, 0.2, 1e-12);
  }
  const auto pos = born_probabilities(localized, position_projectors(5));
  EXPECT_EQ(position_projectors(5).projectors()[2].label.value(), 3.0);
  EXPECT_NEAR(pos[2], 1.0, 1e-15);
}

TEST(DephasingChannel, SpinExampleLosesCoherences) {
  const double psi1 = 0.6, psi2 = 0.8;
  const DensityMatrix rho = spin_state(psi1, psi2);
  EXPECT_DOUBLE_EQ(rho.matrix()(0, 1).real(), psi1 * psi2);
  const DensityMatrix out = dephasing_channel(rho, basis_projectors(2));
  EXPECT_LT(std::abs(out.matrix()(0, 1)), 1e-15);
  EXPECT_LT(std::abs(out.matrix()(1, 0)), 1e-15);
  EXPECT_NEAR(out.matrix()(0, 0).real(), 0.36, 1e-15);
  EXPECT_NEAR(out.matrix()(1, 1).real(), 0.64, 1e-15);
}

TEST(DephasingChannel, EqualWeightsGiveHalfPurity) {
  const DensityMatrix out = dephasing_channel(
      spin_state(1.0 / std::numbers::sqrt2, Complex(0.0, 1.0 / std::numbers::sqrt2)),
      basis_projectors(2));
  EXPECT_NEAR(qlin::purity(out), 0.5, 1e-15);
}

TEST(DephasingChannel, FixedPointAndIdempotence) {
  const Complex d[] = {0.2, 0.3, 0.5};
  const DensityMatrix diag(TensorSpace::single(3), ComplexMatrix::diagonal(d));
  EXPECT_EQ(dephasing_channel(diag, basis_projectors(3)).matrix(), diag.matrix());

  mc::TrialRng rng({2, 0}, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const TensorSpace space = TensorSpace::single(4);
    const DensityMatrix rho = qlin::random_density_matrix(space, rng);
    const ProjectorSet m = random_projector_set(space, 1 + rng.uniform_index(4), rng);
    const DensityMatrix once = dephasing_channel(rho, m);
    EXPECT_LE(qlin::max_abs_diff(dephasing_channel(once, m).matrix(), once.matrix()), 1e-12);
  }
}

TEST(IdealMeasurementUnitary, SingleOutcomeIsIdentity) {
  const ProjectorSet trivial(TensorSpace::single(2), {{0.0, ComplexMatrix::identity(2)}});
  for (std::size_t pointer : {1u, 3u}) {
    const auto u = ideal_measurement_unitary(trivial, pointer);
    EXPECT_EQ(u.matrix(), ComplexMatrix::identity(2 * pointer));
  }
}

TEST(IdealMeasurementUnitary, QubitMatchesHandExpandedCnot) {
  const auto u = ideal_measurement_unitary(basis_projectors(2), 2);
  // P0 (x) I + P1 (x) X
  const oracle::Dense cnot = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
  EXPECT_EQ(oracle::max_diff(cnot, u.matrix()), 0.0);

  const double h = 1.0 / std::numbers::sqrt2;
  const auto out = u.matrix().apply(std::vector<Complex>{h, 0.0, h, 0.0});
  EXPECT_NEAR(std::abs(out[0] - h), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out[1]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out[2]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out[3] - h), 0.0, 1e-15);
}

TEST(IdealMeasurementUnitary, PointerTooSmallThrows) {
  EXPECT_THROW(ideal_measurement_unitary(basis_projectors(3), 2), DomainError);
}

TEST(IdealMeasurementUnitary, CorrelatesPointerWithEigenbasis) {
  // sum psi_a |a> (x) |q=0>  ->  sum psi_a |a> (x) |q=a>
  const ProjectorSet m = basis_projectors(3);
  const auto u = ideal_measurement_unitary(m, 4);
  const std::vector<Complex> psi = {Complex(0.5, 0.1), Complex(-0.3, 0.6), Complex(0.2, 0.0)};
  std::vector<Complex> in(12);
  for (std::size_t a = 0; a < 3; ++a) in[a * 4] = psi[a];
  const auto out = u.matrix().apply(in);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t q = 0; q < 4; ++q) {
      EXPECT_EQ(out[a * 4 + q], q == a ? psi[a] : Complex(0.0));
    }
  }
}

// Dephasing written out directly: sum_a P rho P with plain loops.
oracle::Dense dephase_oracle(const oracle::Dense& rho, const ProjectorSet& m) {
  const std::size_t d = rho.size();
  oracle::Dense out(d, std::vector<Complex>(d));
  for (const Projector& p : m.projectors()) {
    const oracle::Dense pd = oracle::to_dense(p.matrix);
    const oracle::Dense term = oracle::matmul(oracle::matmul(pd, rho), pd);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) out[i][j] += term[i][j];
  }
  return out;
}

// U (rho (x) |0><0|) U^dagger with the pointer traced out, by plain loops.
oracle::Dense unitary_route_oracle(const oracle::Dense& rho, const ComplexMatrix& u,
                                   std::size_t pointer) {
  const std::size_t d = rho.size();
  oracle::Dense joint(d * pointer, std::vector<Complex>(d * pointer));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) joint[i * pointer][j * pointer] = rho[i][j];
  const oracle::Dense ud = oracle::to_dense(u);
  const oracle::Dense evolved = oracle::matmul(oracle::matmul(ud, joint), oracle::adjoint(ud));
  return oracle::trace_out_second(evolved, d, pointer);
}

TEST(IdealMeasurementUnitary, TraceOutEqualsDephasingOnRandomStates) {
  mc::TrialRng rng({3, 0}, 0);
  for (std::size_t d : {2u, 3u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const TensorSpace space = TensorSpace::single(d);
      const DensityMatrix rho = qlin::random_density_matrix(space, rng);
      const ProjectorSet m =
          trial % 2 == 0 ? basis_projectors(d) : random_projector_set(space, 1 + rng.uniform_index(d), rng);
      const auto u = ideal_measurement_unitary(m, m.size());
      const oracle::Dense rho_d = oracle::to_dense(rho.matrix());

      const DensityMatrix channel = dephasing_channel(rho, m);
      EXPECT_LE(oracle::max_diff(dephase_oracle(rho_d, m), channel.matrix()), 1e-12);
      EXPECT_LE(oracle::max_diff(unitary_route_oracle(rho_d, u.matrix(), m.size()), channel.matrix()),
                1e-12);

      const DensityMatrix pointer0(PureState::basis(TensorSpace::single(m.size()), 0));
      const DensityMatrix lib_route =
          qlin::partial_trace(qlin::evolve(qlin::tensor_product(rho, pointer0), u), {0});
      EXPECT_LE(qlin::max_abs_diff(lib_route.matrix(), channel.matrix()), 1e-10);
    }
  }
}

TEST(SpinProjectors, ZeroAngleIsUpDown) {
  const ProjectorSet m = spin_projectors(Angle::from_degrees(0.0));
  const Complex up[] = {1.0, 0.0};
  const Complex down[] = {0.0, 1.0};
  EXPECT_EQ(m.projectors()[0].label.value(), 1.0);
  EXPECT_EQ(m.projectors()[1].label.value(), -1.0);
  EXPECT_LE(qlin::max_abs_diff(m.projectors()[0].matrix, ComplexMatrix::diagonal(up)), 1e-15);
  EXPECT_LE(qlin::max_abs_diff(m.projectors()[1].matrix, ComplexMatrix::diagonal(down)), 1e-15);
}

TEST(SpinProjectors, AntipodalAnalyzerSwapsProjectors) {
  const ProjectorSet zero = spin_projectors(Angle::from_degrees(0.0));
  const ProjectorSet pi = spin_projectors(Angle::from_degrees(180.0));
  EXPECT_LE(qlin::max_abs_diff(zero.projectors()[0].matrix, pi.projectors()[1].matrix), 1e-15);
  EXPECT_LE(qlin::max_abs_diff(zero.projectors()[1].matrix, pi.projectors()[0].matrix), 1e-15);
}

TEST(SpinProjectors, CompleteForAnyAngle) {
  mc::TrialRng rng({4, 0}, 0);
  for (int i = 0; i < 200; ++i) {
    const ProjectorSet m = spin_projectors(Angle::from_radians(20.0 * (rng.uniform() - 0.5)));
    EXPECT_LE(qlin::max_abs_diff(m.projectors()[0].matrix + m.projectors()[1].matrix,
                                 ComplexMatrix::identity(2)),
              1e-15);
  }
}

TEST(ProjectorSet, RejectsIncompleteOrOverlappingFamilies) {
  const Complex up[] = {1.0, 0.0};
  EXPECT_THROW(ProjectorSet(TensorSpace::single(2), {{1.0, ComplexMatrix::diagonal(up)}}), DomainError);
  EXPECT_THROW(ProjectorSet(TensorSpace::single(2),
                            {{1.0, ComplexMatrix::diagonal(up)}, {2.0, ComplexMatrix::identity(2)}}),
               DomainError);
  EXPECT_THROW(ProjectorSet(TensorSpace::single(2),
                            {{1.0, Complex(0.5) * ComplexMatrix::identity(2)},
                             {2.0, Complex(0.5) * ComplexMatrix::identity(2)}}),
               DomainError);
}

TEST(Collapse, NullBranchIsAnErrorNotNaN) {
  const DensityMatrix up = spin_state(1.0, 0.0);
  EXPECT_THROW(collapse(up, basis_projectors(2), 1), DomainError);
  EXPECT_EQ(collapse(up, basis_projectors(2), 0).matrix(), up.matrix());
}

TEST(MeasurementProperties, RandomStatesAndMeasurements) {
  mc::TrialRng rng({5, 0}, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 2 + rng.uniform_index(4);
    const TensorSpace space = TensorSpace::single(d);
    const DensityMatrix rho = qlin::random_density_matrix(space, rng);
    const ProjectorSet m = random_projector_set(space, 1 + rng.uniform_index(d), rng);
    const auto outcomes = born_distribution(rho, m);
    double total = 0.0;
    for (const auto& o : outcomes) {
      EXPECT_GE(o.probability, -1e-12);
      total += o.probability;
      if (!o.conditional_state) continue;
      // Repeating the measurement on the collapsed state gives its own label.
      const auto again = born_probabilities(*o.conditional_state, m);
      const std::size_t self = static_cast<std::size_t>(&o - outcomes.data());
      EXPECT_NEAR(again[self], 1.0, 1e-10);
    }
    EXPECT_NEAR(total, 1.0, 1e-10);
    EXPECT_LE(qlin::purity(dephasing_channel(rho, m)), qlin::purity(rho) + 1e-10);
  }
}

TEST(MeasurementJson, OutcomeListShape) {
  const auto j = to_json(born_distribution(spin_state(0.6, 0.8), spin_projectors(Angle())));
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["label"], 1.0);
  EXPECT_NEAR(j[0]["p"].get<double>(), 0.36, 1e-15);
  const auto joint = product(spin_projectors(Angle()), spin_projectors(Angle()));
  EXPECT_EQ(to_json(joint.projectors()[1].label).dump(), "[1.0,-1.0]");
}

TEST(Measurement, DimensionMismatchThrows) {
  const DensityMatrix rho = spin_state(1.0, 0.0);
  EXPECT_THROW(born_distribution(rho, basis_projectors(3)), DomainError);
  EXPECT_THROW(dephasing_channel(rho, basis_projectors(3)), DomainError);
}

}  // namespace
}  // namespace bellsim::measurement
