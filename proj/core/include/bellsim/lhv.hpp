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

// Local hidden variable models as finite explicit objects.
//
// A model is a pmf over hidden states lambda plus deterministic +/-1
// response tables. Side A's table is indexed by (A setting, lambda) only, so
// an outcome can never depend on the distant analyzer.

#ifndef BELLSIM_LHV_HPP_
#define BELLSIM_LHV_HPP_

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bellsim/angle.hpp"
#include "bellsim/chsh.hpp"
#include "bellsim/errors.hpp"
#include "bellsim/mc_harness.hpp"

namespace bellsim::lhv {

// Malformed model document; what() names the offending JSON location.
class ModelFormatError : public DomainError {
 public:
  using DomainError::DomainError;
};

class LhvModel {
 public:
  // response_a[s][l] is A's outcome at setting s for hidden state l.
  // Throws DomainError if the pmf is negative or does not sum to 1 within
  // 1e-12, if a table entry is not +/-1, or if shapes disagree.
  LhvModel(std::vector<std::string> lambdas, std::vector<double> pmf,
           std::vector<Angle> settings_a, std::vector<Angle> settings_b,
           std::vector<std::vector<int>> response_a, std::vector<std::vector<int>> response_b);

  std::size_t lambda_count() const { return lambdas_.size(); }
  const std::vector<std::string>& lambdas() const { return lambdas_; }
  const std::vector<double>& pmf() const { return pmf_; }
  const std::vector<Angle>& settings_a() const { return settings_a_; }
  const std::vector<Angle>& settings_b() const { return settings_b_; }
  const std::vector<std::vector<int>>& response_a() const { return response_a_; }
  const std::vector<std::vector<int>>& response_b() const { return response_b_; }

  int a(std::size_t setting, std::size_t lambda) const;
  int b(std::size_t setting, std::size_t lambda) const;

  // Index of the hidden state selected by a uniform draw u in [0, 1).
  std::size_t lambda_for(double u) const;

 private:
  std::vector<std::string> lambdas_;
  std::vector<double> pmf_;
  std::vector<double> cdf_;
  std::vector<Angle> settings_a_;
  std::vector<Angle> settings_b_;
  std::vector<std::vector<int>> response_a_;
  std::vector<std::vector<int>> response_b_;
};

// sum_lambda pmf(lambda) a(setting_a, lambda) b(setting_b, lambda)
double correlation_exact(const LhvModel& model, std::size_t a_idx, std::size_t b_idx);

// <ab> + <ab'> + <a'b> - <a'b'>
double chsh_exact(const LhvModel& model, const ChshPairing& pairing);

// ab + ab' + a'b - a'b' for one sign pattern; always +/-2.
int identity_value(int a, int a_prime, int b, int b_prime);

// identity_value for the responses of one hidden state. Throws InternalError
// if the tables were somehow corrupted into producing anything but +/-2.
int identity_check(const LhvModel& model, std::size_t lambda, const ChshPairing& pairing);

// One run of the experiment: lambda drawn from the pmf, outcomes read off.
std::pair<int, int> sample_trial(const LhvModel& model, std::size_t a_idx, std::size_t b_idx,
                                 mc::TrialRng& rng);

// Model with settings {theta_A, theta_A'} x {theta_B, theta_B'}, pmf from
// normalized uniform(0, 1] draws, and independent fair +/-1 tables.
LhvModel random_model(std::size_t n_lambdas, const ChshSettings& settings, mc::TrialRng& rng);

// Empirical <ab> over n trials of (a_idx, b_idx).
mc::TrialSummary correlation_empirical(const LhvModel& model, std::size_t a_idx,
                                       std::size_t b_idx, std::size_t n, mc::StreamSpec spec,
                                       unsigned workers = 1);

// Four independent runs of n trials, on stream ids spec.stream_id + 0..3.
ChshEstimate chsh_empirical(const LhvModel& model, const ChshPairing& pairing, std::size_t n,
                            mc::StreamSpec spec, unsigned workers = 1);

// {"lambdas", "pmf", "settings_a_deg", "settings_b_deg", "response_a",
//  "response_b"}
nlohmann::ordered_json to_json(const LhvModel& model);
LhvModel model_from_json(const nlohmann::json& j);
// Parses text; syntax errors are reported with their byte offset.
LhvModel model_from_json_text(const std::string& text);

}  // namespace bellsim::lhv

#endif  // BELLSIM_LHV_HPP_
