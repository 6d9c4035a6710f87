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

#include "bellsim/quantum_bell.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "bellsim/errors.hpp"
#include "bellsim/measurement.hpp"

namespace bellsim::quantum_bell {

using qlin::Complex;
using qlin::ComplexMatrix;
using qlin::DensityMatrix;

DensityMatrix singlet() {
  const qlin::PureState up = qlin::PureState::basis(qlin::TensorSpace::single(2), 0);
  const qlin::PureState down = qlin::PureState::basis(qlin::TensorSpace::single(2), 1);
  const std::vector<Complex> up_down = qlin::tensor_product(up.amplitudes(), down.amplitudes());
  const std::vector<Complex> down_up = qlin::tensor_product(down.amplitudes(), up.amplitudes());
  std::vector<Complex> psi(4);
  for (std::size_t i = 0; i < 4; ++i) psi[i] = (up_down[i] - down_up[i]) / std::numbers::sqrt2;
  return DensityMatrix(qlin::PureState(qlin::TensorSpace{2, 2}, std::move(psi)));
}

namespace {

const DensityMatrix& cached_singlet() {
  static const DensityMatrix rho = singlet();
  return rho;
}

void require_finite(Angle a, Angle b) {
  if (!std::isfinite(a.radians()) || !std::isfinite(b.radians())) {
    throw DomainError("analyzer angles must be finite");
  }
}

}  // namespace

CorrelationReport correlation(Angle theta_a, Angle theta_b) {
  require_finite(theta_a, theta_b);
  const ComplexMatrix observable = qlin::tensor_product(measurement::spin_observable(theta_a),
                                                        measurement::spin_observable(theta_b));
  CorrelationReport r;
  r.theta_a = theta_a;
  r.theta_b = theta_b;
  r.exact_value = qlin::expectation(cached_singlet(), observable);
  r.closed_form = -std::cos(theta_a.radians() - theta_b.radians());
  if (std::abs(r.exact_value - r.closed_form) > qlin::kAlgebraTolerance) {
    throw InternalError("singlet correlation disagrees with -cos(theta_A - theta_B)");
  }
  return r;
}

double correlation_from_pmf(Angle theta_a, Angle theta_b) {
  const measurement::ProjectorSet joint = measurement::product(
      measurement::spin_projectors(theta_a), measurement::spin_projectors(theta_b));
  const std::vector<double> probs = measurement::born_probabilities(cached_singlet(), joint);
  double sum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    sum += probs[i] * joint.projectors()[i].label.value();
  }
  return sum;
}

SingletSampler::SingletSampler(Angle theta_a, Angle theta_b) {
  require_finite(theta_a, theta_b);
  const measurement::ProjectorSet joint = measurement::product(
      measurement::spin_projectors(theta_a), measurement::spin_projectors(theta_b));
  const std::vector<double> probs = measurement::born_probabilities(cached_singlet(), joint);
  for (std::size_t i = 0; i < 4; ++i) pmf_[i] = std::max(0.0, probs[i]);
}

std::pair<int, int> SingletSampler::sample(mc::TrialRng& rng) const {
  static constexpr std::pair<int, int> kOutcomes[4] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  const double total = pmf_[0] + pmf_[1] + pmf_[2] + pmf_[3];
  double u = rng.uniform() * total;
  for (std::size_t i = 0; i < 3; ++i) {
    if (u < pmf_[i]) return kOutcomes[i];
    u -= pmf_[i];
  }
  // Skip trailing zero-probability outcomes reached through roundoff.
  for (std::size_t i = 4; i-- > 0;) {
    if (pmf_[i] > 0.0) return kOutcomes[i];
  }
  throw InternalError("SingletSampler: empty pmf");
}

std::pair<int, int> sample_singlet_pair(Angle theta_a, Angle theta_b, mc::TrialRng& rng) {
  return SingletSampler(theta_a, theta_b).sample(rng);
}

CorrelationReport correlation_with_trials(Angle theta_a, Angle theta_b, std::size_t n,
                                          mc::StreamSpec spec, unsigned workers) {
  CorrelationReport r = correlation(theta_a, theta_b);
  const SingletSampler sampler(theta_a, theta_b);
  const mc::TrialSummary s = mc::run_trials(
      [&sampler](mc::TrialRng& rng) {
        const auto [a, b] = sampler.sample(rng);
        return static_cast<double>(a * b);
      },
      n, spec, workers);
  r.n_trials = n;
  r.empirical = s.mean;
  r.std_error = s.std_error;
  return r;
}

double chsh_quantum(const ChshSettings& s) {
  return correlation(s.theta_a, s.theta_b).exact_value +
         correlation(s.theta_a, s.theta_b_prime).exact_value +
         correlation(s.theta_a_prime, s.theta_b).exact_value -
         correlation(s.theta_a_prime, s.theta_b_prime).exact_value;
}

ChshEstimate chsh_quantum_empirical(const ChshSettings& s, std::size_t n, mc::StreamSpec spec,
                                    unsigned workers) {
  const std::pair<Angle, Angle> terms[4] = {{s.theta_a, s.theta_b},
                                            {s.theta_a, s.theta_b_prime},
                                            {s.theta_a_prime, s.theta_b},
                                            {s.theta_a_prime, s.theta_b_prime}};
  const double signs[4] = {1.0, 1.0, 1.0, -1.0};
  ChshEstimate est;
  est.exact = chsh_quantum(s);
  est.trials_per_term = n;
  double var = 0.0;
  for (std::uint32_t t = 0; t < 4; ++t) {
    const CorrelationReport r = correlation_with_trials(
        terms[t].first, terms[t].second, n, spec.with_stream(spec.stream_id + t), workers);
    est.empirical += signs[t] * *r.empirical;
    var += *r.std_error * *r.std_error;
  }
  est.std_error = std::sqrt(var);
  return est;
}

nlohmann::ordered_json to_json(const CorrelationReport& r) {
  nlohmann::ordered_json j;
  j["theta_a_deg"] = r.theta_a.degrees();
  j["theta_b_deg"] = r.theta_b.degrees();
  j["exact"] = r.exact_value;
  j["closed_form"] = r.closed_form;
  j["empirical"] = r.empirical ? nlohmann::ordered_json(*r.empirical) : nlohmann::ordered_json(nullptr);
  j["stderr"] = r.std_error ? nlohmann::ordered_json(*r.std_error) : nlohmann::ordered_json(nullptr);
  j["n"] = r.n_trials ? nlohmann::ordered_json(*r.n_trials) : nlohmann::ordered_json(nullptr);
  return j;
}

const char* csv_header() { return "theta_a_deg,theta_b_deg,exact,closed_form,empirical,stderr,n"; }

std::string to_csv_row(const CorrelationReport& r) {
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  std::string row = num(r.theta_a.degrees()) + "," + num(r.theta_b.degrees()) + "," +
                    num(r.exact_value) + "," + num(r.closed_form) + ",";
  row += (r.empirical ? num(*r.empirical) : "") + ",";
  row += (r.std_error ? num(*r.std_error) : "") + ",";
  row += r.n_trials ? std::to_string(*r.n_trials) : "";
  return row;
}

}  // namespace bellsim::quantum_bell
