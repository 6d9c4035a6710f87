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

// The quantum side of the Bell experiment on the spin singlet.

#ifndef BELLSIM_QUANTUM_BELL_HPP_
#define BELLSIM_QUANTUM_BELL_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <utility>

#include <nlohmann/json.hpp>

#include "bellsim/angle.hpp"
#include "bellsim/chsh.hpp"
#include "bellsim/mc_harness.hpp"
#include "bellsim/qlin.hpp"

namespace bellsim::quantum_bell {

// (|up,down> - |down,up>) / sqrt(2) on a 2 (x) 2 space.
qlin::DensityMatrix singlet();

struct CorrelationReport {
  Angle theta_a;
  Angle theta_b;
  // tr(rho_singlet (n_A.sigma) (x) (n_B.sigma))
  double exact_value = 0.0;
  // -cos(theta_A - theta_B)
  double closed_form = 0.0;
  std::optional<std::size_t> n_trials;
  std::optional<double> empirical;
  std::optional<double> std_error;
};

CorrelationReport correlation(Angle theta_a, Angle theta_b);

// Same correlation summed from the four-outcome Born pmf; a cross-check on
// the observable route.
double correlation_from_pmf(Angle theta_a, Angle theta_b);

// Exact correlation plus an empirical estimate from n sampled pairs.
CorrelationReport correlation_with_trials(Angle theta_a, Angle theta_b, std::size_t n,
                                          mc::StreamSpec spec, unsigned workers = 1);

// C(A-B) + C(A-B') + C(A'-B) - C(A'-B')
double chsh_quantum(const ChshSettings& settings);

// Four independent runs of n pairs on stream ids spec.stream_id + 0..3.
ChshEstimate chsh_quantum_empirical(const ChshSettings& settings, std::size_t n,
                                    mc::StreamSpec spec, unsigned workers = 1);

// Samples (a, b) from the Born distribution of spin_projectors(theta_A) (x)
// spin_projectors(theta_B) on the singlet. Outcomes are ordered
// (+,+), (+,-), (-,+), (-,-).
class SingletSampler {
 public:
  SingletSampler(Angle theta_a, Angle theta_b);

  const std::array<double, 4>& pmf() const { return pmf_; }
  std::pair<int, int> sample(mc::TrialRng& rng) const;

 private:
  std::array<double, 4> pmf_{};
};

std::pair<int, int> sample_singlet_pair(Angle theta_a, Angle theta_b, mc::TrialRng& rng);

nlohmann::ordered_json to_json(const CorrelationReport& report);

// Header and row for theta_a_deg,theta_b_deg,exact,closed_form,empirical,stderr,n
const char* csv_header();
std::string to_csv_row(const CorrelationReport& report);

}  // namespace bellsim::quantum_bell

#endif  // BELLSIM_QUANTUM_BELL_HPP_
