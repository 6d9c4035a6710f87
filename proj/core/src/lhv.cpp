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

#include "bellsim/lhv.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bellsim::lhv {
namespace {

void check_table(const std::vector<std::vector<int>>& table, std::size_t settings,
                 std::size_t lambdas, const char* side) {
  if (table.size() != settings) {
    throw DomainError(std::string("LhvModel: response_") + side + " has " +
                      std::to_string(table.size()) + " rows for " + std::to_string(settings) +
                      " settings");
  }
  for (std::size_t s = 0; s < table.size(); ++s) {
    if (table[s].size() != lambdas) {
      throw DomainError(std::string("LhvModel: response_") + side + "[" + std::to_string(s) +
                        "] has " + std::to_string(table[s].size()) + " entries for " +
                        std::to_string(lambdas) + " hidden states");
    }
    for (std::size_t l = 0; l < lambdas; ++l) {
      if (table[s][l] != 1 && table[s][l] != -1) {
        throw DomainError(std::string("LhvModel: response_") + side + "[" + std::to_string(s) +
                          "][" + std::to_string(l) + "] must be +1 or -1");
      }
    }
  }
}

}  // namespace

LhvModel::LhvModel(std::vector<std::string> lambdas, std::vector<double> pmf,
                   std::vector<Angle> settings_a, std::vector<Angle> settings_b,
                   std::vector<std::vector<int>> response_a,
                   std::vector<std::vector<int>> response_b)
    : lambdas_(std::move(lambdas)),
      pmf_(std::move(pmf)),
      settings_a_(std::move(settings_a)),
      settings_b_(std::move(settings_b)),
      response_a_(std::move(response_a)),
      response_b_(std::move(response_b)) {
  if (lambdas_.empty()) throw DomainError("LhvModel: at least one hidden state is required");
  if (pmf_.size() != lambdas_.size()) {
    throw DomainError("LhvModel: pmf has " + std::to_string(pmf_.size()) + " entries for " +
                      std::to_string(lambdas_.size()) + " hidden states");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < pmf_.size(); ++i) {
    if (!(pmf_[i] >= 0.0) || !std::isfinite(pmf_[i])) {
      throw DomainError("LhvModel: pmf[" + std::to_string(i) + "] is negative or not finite");
    }
    total += pmf_[i];
  }
  if (!(std::abs(total - 1.0) <= 1e-12)) {
    throw DomainError("LhvModel: pmf sums to " + std::to_string(total) + ", not 1");
  }
  if (settings_a_.empty() || settings_b_.empty()) {
    throw DomainError("LhvModel: each side needs at least one setting");
  }
  for (const Angle& a : settings_a_) {
    if (!std::isfinite(a.radians())) throw DomainError("LhvModel: non-finite A setting");
  }
  for (const Angle& b : settings_b_) {
    if (!std::isfinite(b.radians())) throw DomainError("LhvModel: non-finite B setting");
  }
  check_table(response_a_, settings_a_.size(), lambdas_.size(), "a");
  check_table(response_b_, settings_b_.size(), lambdas_.size(), "b");

  cdf_.resize(pmf_.size());
  std::partial_sum(pmf_.begin(), pmf_.end(), cdf_.begin());
}

int LhvModel::a(std::size_t setting, std::size_t lambda) const {
  if (setting >= settings_a_.size() || lambda >= lambdas_.size()) {
    throw DomainError("LhvModel::a: index out of range");
  }
  return response_a_[setting][lambda];
}

int LhvModel::b(std::size_t setting, std::size_t lambda) const {
  if (setting >= settings_b_.size() || lambda >= lambdas_.size()) {
    throw DomainError("LhvModel::b: index out of range");
  }
  return response_b_[setting][lambda];
}

std::size_t LhvModel::lambda_for(double u) const {
  // The cdf may end a hair below 1; anything past it maps to the last state
  // with nonzero weight.
  const double target = u * cdf_.back();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
  std::size_t idx = it == cdf_.end() ? cdf_.size() - 1 : static_cast<std::size_t>(it - cdf_.begin());
  while (pmf_[idx] == 0.0 && idx > 0) --idx;
  return idx;
}

double correlation_exact(const LhvModel& model, std::size_t a_idx, std::size_t b_idx) {
  if (a_idx >= model.settings_a().size() || b_idx >= model.settings_b().size()) {
    throw DomainError("correlation_exact: setting index out of range");
  }
  double sum = 0.0;
  for (std::size_t l = 0; l < model.lambda_count(); ++l) {
    sum += model.pmf()[l] * model.response_a()[a_idx][l] * model.response_b()[b_idx][l];
  }
  return sum;
}

double chsh_exact(const LhvModel& model, const ChshPairing& p) {
  return correlation_exact(model, p.a, p.b) + correlation_exact(model, p.a, p.b_prime) +
         correlation_exact(model, p.a_prime, p.b) - correlation_exact(model, p.a_prime, p.b_prime);
}

int identity_value(int a, int a_prime, int b, int b_prime) {
  return a * b + a * b_prime + a_prime * b - a_prime * b_prime;
}

int identity_check(const LhvModel& model, std::size_t lambda, const ChshPairing& p) {
  const int v = identity_value(model.a(p.a, lambda), model.a(p.a_prime, lambda),
                               model.b(p.b, lambda), model.b(p.b_prime, lambda));
  if (v != 2 && v != -2) {
    throw InternalError("identity_check: pointwise CHSH value " + std::to_string(v) +
                        " is not +/-2");
  }
  return v;
}

std::pair<int, int> sample_trial(const LhvModel& model, std::size_t a_idx, std::size_t b_idx,
                                 mc::TrialRng& rng) {
  const std::size_t lambda = model.lambda_for(rng.uniform());
  return {model.a(a_idx, lambda), model.b(b_idx, lambda)};
}

LhvModel random_model(std::size_t n_lambdas, const ChshSettings& settings, mc::TrialRng& rng) {
  if (n_lambdas == 0) throw DomainError("random_model: n_lambdas must be >= 1");
  std::vector<std::string> names(n_lambdas);
  std::vector<double> weights(n_lambdas);
  double total = 0.0;
  for (std::size_t l = 0; l < n_lambdas; ++l) {
    names[l] = "l" + std::to_string(l);
    weights[l] = 1.0 - rng.uniform();
    total += weights[l];
  }
  for (double& w : weights) w /= total;

  auto table = [&](std::size_t rows) {
    std::vector<std::vector<int>> t(rows, std::vector<int>(n_lambdas));
    for (auto& row : t) {
      for (int& v : row) v = rng.sign();
    }
    return t;
  };
  auto response_a = table(2);
  auto response_b = table(2);
  return LhvModel(std::move(names), std::move(weights), {settings.theta_a, settings.theta_a_prime},
                  {settings.theta_b, settings.theta_b_prime}, std::move(response_a),
                  std::move(response_b));
}

mc::TrialSummary correlation_empirical(const LhvModel& model, std::size_t a_idx,
                                       std::size_t b_idx, std::size_t n, mc::StreamSpec spec,
                                       unsigned workers) {
  if (a_idx >= model.settings_a().size() || b_idx >= model.settings_b().size()) {
    throw DomainError("correlation_empirical: setting index out of range");
  }
  return mc::run_trials(
      [&](mc::TrialRng& rng) {
        const auto [a, b] = sample_trial(model, a_idx, b_idx, rng);
        return static_cast<double>(a * b);
      },
      n, spec, workers);
}

ChshEstimate chsh_empirical(const LhvModel& model, const ChshPairing& p, std::size_t n,
                            mc::StreamSpec spec, unsigned workers) {
  const std::pair<std::size_t, std::size_t> terms[4] = {
      {p.a, p.b}, {p.a, p.b_prime}, {p.a_prime, p.b}, {p.a_prime, p.b_prime}};
  const double signs[4] = {1.0, 1.0, 1.0, -1.0};
  ChshEstimate est;
  est.exact = chsh_exact(model, p);
  est.trials_per_term = n;
  double var = 0.0;
  for (std::uint32_t t = 0; t < 4; ++t) {
    const mc::TrialSummary s = correlation_empirical(model, terms[t].first, terms[t].second, n,
                                                     spec.with_stream(spec.stream_id + t), workers);
    est.empirical += signs[t] * s.mean;
    var += s.std_error * s.std_error;
  }
  est.std_error = std::sqrt(var);
  return est;
}

nlohmann::ordered_json to_json(const LhvModel& model) {
  nlohmann::ordered_json j;
  j["lambdas"] = model.lambdas();
  j["pmf"] = model.pmf();
  auto degrees = [](const std::vector<Angle>& angles) {
    std::vector<double> out;
    for (const Angle& a : angles) out.push_back(a.degrees());
    return out;
  };
  j["settings_a_deg"] = degrees(model.settings_a());
  j["settings_b_deg"] = degrees(model.settings_b());
  j["response_a"] = model.response_a();
  j["response_b"] = model.response_b();
  return j;
}

namespace {

const nlohmann::json& field(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ModelFormatError(std::string("/") + key + ": missing field");
  if (!it->is_array()) throw ModelFormatError(std::string("/") + key + ": expected an array");
  return *it;
}

std::vector<double> numbers(const nlohmann::json& j, const char* key) {
  const nlohmann::json& arr = field(j, key);
  std::vector<double> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      throw ModelFormatError(std::string("/") + key + "/" + std::to_string(i) +
                             ": expected a number");
    }
    out.push_back(arr[i].get<double>());
  }
  return out;
}

std::vector<std::vector<int>> sign_table(const nlohmann::json& j, const char* key) {
  const nlohmann::json& arr = field(j, key);
  std::vector<std::vector<int>> out;
  for (std::size_t s = 0; s < arr.size(); ++s) {
    const std::string where = std::string("/") + key + "/" + std::to_string(s);
    if (!arr[s].is_array()) throw ModelFormatError(where + ": expected an array");
    std::vector<int> row;
    for (std::size_t l = 0; l < arr[s].size(); ++l) {
      if (!arr[s][l].is_number_integer()) {
        throw ModelFormatError(where + "/" + std::to_string(l) + ": expected +1 or -1");
      }
      row.push_back(arr[s][l].get<int>());
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<Angle> angles(const nlohmann::json& j, const char* key) {
  std::vector<Angle> out;
  for (double d : numbers(j, key)) out.push_back(Angle::from_degrees(d));
  return out;
}

}  // namespace

LhvModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ModelFormatError("/: expected an object");
  const nlohmann::json& names = field(j, "lambdas");
  std::vector<std::string> lambdas;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].is_string()) {
      lambdas.push_back(names[i].get<std::string>());
    } else if (names[i].is_number()) {
      lambdas.push_back(names[i].dump());
    } else {
      throw ModelFormatError("/lambdas/" + std::to_string(i) + ": expected a string or number");
    }
  }
  return LhvModel(std::move(lambdas), numbers(j, "pmf"), angles(j, "settings_a_deg"),
                  angles(j, "settings_b_deg"), sign_table(j, "response_a"),
                  sign_table(j, "response_b"));
}

LhvModel model_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ModelFormatError("byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return model_from_json(j);
}

}  // namespace bellsim::lhv
