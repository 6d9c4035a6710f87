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

#include "bellsim/cat_scenario.hpp"

#include <cmath>
#include <string>

#include "bellsim/errors.hpp"
#include "bellsim/json_io.hpp"

namespace bellsim::cat {

using qlin::Complex;
using qlin::ComplexMatrix;
using qlin::DensityMatrix;

namespace {

constexpr std::size_t kObserverDim = 3;
constexpr std::size_t kDim = 2 * 2 * kObserverDim;

std::size_t index_of(std::size_t nucleus, std::size_t cat, std::size_t observer) {
  return (nucleus * 2 + cat) * kObserverDim + observer;
}

}  // namespace

const qlin::TensorSpace& universe_space() {
  static const qlin::TensorSpace space{2, 2, kObserverDim};
  return space;
}

CatUniverse::CatUniverse(DensityMatrix state) : state_(std::move(state)) {
  if (!(state_.space() == universe_space())) {
    throw DomainError("CatUniverse: state must live on nucleus (x) cat (x) observer");
  }
  if (std::abs(qlin::purity(state_) - 1.0) > qlin::kAlgebraTolerance) {
    throw DomainError("CatUniverse: the universe must stay in a pure state");
  }
}

CatUniverse initial_state() {
  return CatUniverse(DensityMatrix(
      qlin::PureState::basis(universe_space(), index_of(kRadioactive, kAlive, kIgnorant))));
}

qlin::UnitaryOperator u_waiting(double half_lives) {
  if (!(half_lives >= 0.0) || !std::isfinite(half_lives)) {
    throw DomainError("waiting time must be a finite number of half-lives >= 0");
  }
  const double survive = std::exp2(-half_lives);
  const double s = std::sqrt(survive);
  const double d = std::sqrt(-std::expm1(-half_lives * std::log(2.0)));
  // Nucleus (x) cat block, ordered |up,alive>, |up,dead>, |down,alive>, |down,dead>.
  const ComplexMatrix block = ComplexMatrix::from_rows({
      {s, 0.0, 0.0, -d},
      {0.0, 1.0, 0.0, 0.0},
      {0.0, 0.0, 1.0, 0.0},
      {d, 0.0, 0.0, s},
  });
  return qlin::UnitaryOperator(universe_space(),
                               qlin::tensor_product(block, ComplexMatrix::identity(kObserverDim)));
}

qlin::UnitaryOperator u_seeing() {
  std::vector<Complex> e(kDim * kDim);
  for (std::size_t n = 0; n < 2; ++n) {
    for (std::size_t c = 0; c < 2; ++c) {
      const std::size_t seen = c == kAlive ? kHappy : kShocked;
      for (std::size_t q = 0; q < kObserverDim; ++q) {
        // Swap ignorant with the matching memory; the third level is fixed.
        std::size_t to = q;
        if (q == kIgnorant) to = seen;
        else if (q == seen) to = kIgnorant;
        e[index_of(n, c, to) * kDim + index_of(n, c, q)] = 1.0;
      }
    }
  }
  return qlin::UnitaryOperator(universe_space(), ComplexMatrix(kDim, kDim, std::move(e)));
}

CatUniverse apply(const CatUniverse& universe, const qlin::UnitaryOperator& u) {
  return CatUniverse(qlin::evolve(universe.state(), u));
}

StageReport stage_report(const CatUniverse& universe) {
  const DensityMatrix& rho = universe.state();
  StageReport r{qlin::partial_trace(rho, {0}), qlin::partial_trace(rho, {1}),
                qlin::partial_trace(rho, {2})};
  r.purity_universe = qlin::purity(rho);
  r.purity_nucleus = qlin::purity(r.nucleus);
  r.purity_cat = qlin::purity(r.cat);
  r.purity_observer = qlin::purity(r.observer);

  const DensityMatrix cat_observer = qlin::partial_trace(rho, {1, 2});
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t q = 0; q < kObserverDim; ++q) {
      const std::size_t i = c * kObserverDim + q;
      r.joint[c][q] = cat_observer.matrix()(i, i).real();
    }
  }
  r.agreement = r.joint[kAlive][kHappy] + r.joint[kDead][kShocked];
  return r;
}

Story run_story(double half_lives) {
  CatUniverse initial = initial_state();
  CatUniverse waited = apply(initial, u_waiting(half_lives));
  CatUniverse seen = apply(waited, u_seeing());
  return {std::move(initial), std::move(waited), std::move(seen)};
}

nlohmann::ordered_json to_json(const StageReport& r) {
  nlohmann::ordered_json j;
  j["purity"] = {{"universe", r.purity_universe},
                 {"nucleus", r.purity_nucleus},
                 {"cat", r.purity_cat},
                 {"observer", r.purity_observer}};
  j["reduced"] = {{"nucleus", qlin::to_json(r.nucleus.matrix())},
                  {"cat", qlin::to_json(r.cat.matrix())},
                  {"observer", qlin::to_json(r.observer.matrix())}};
  nlohmann::ordered_json joint;
  const char* cat_names[2] = {"alive", "dead"};
  const char* obs_names[3] = {"ignorant", "happy", "shocked"};
  for (std::size_t c = 0; c < 2; ++c) {
    nlohmann::ordered_json row;
    for (std::size_t q = 0; q < 3; ++q) row[obs_names[q]] = r.joint[c][q];
    joint[cat_names[c]] = std::move(row);
  }
  j["joint_cat_observer"] = std::move(joint);
  j["p_alive"] = r.p_alive();
  j["p_dead"] = r.p_dead();
  j["p_ignorant"] = r.p_observer(kIgnorant);
  j["p_happy"] = r.p_observer(kHappy);
  j["p_shocked"] = r.p_observer(kShocked);
  j["agreement"] = r.agreement;
  return j;
}

}  // namespace bellsim::cat
