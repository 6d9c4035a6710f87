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

#include <gtest/gtest.h>

#include <cmath>

namespace bellsim::lhv {
namespace {

const std::vector<Angle> kTwo = {Angle::from_degrees(0.0), Angle::from_degrees(90.0)};

LhvModel constant_model(int a, int b) {
  return LhvModel({"only"}, {1.0}, kTwo, kTwo, {{a}, {a}}, {{b}, {b}});
}

TEST(CorrelationExact, ConstantResponses) {
  EXPECT_EQ(correlation_exact(constant_model(1, 1), 0, 0), 1.0);
  EXPECT_EQ(correlation_exact(constant_model(1, -1), 0, 1), -1.0);
}

TEST(CorrelationExact, TwoLambdaEnumeration) {
  // lambda=0: a=+1, b=+1 (weight 1/2); lambda=1: a=-1, b=-1 (weight 1/2)
  // <ab> = 1/2 (+1)(+1) + 1/2 (-1)(-1) = 1
  const LhvModel m({"x", "y"}, {0.5, 0.5}, {Angle()}, {Angle()}, {{1, -1}}, {{1, -1}});
  EXPECT_EQ(correlation_exact(m, 0, 0), 1.0);
}

TEST(CorrelationExact, IndexOutOfRange) {
  EXPECT_THROW(correlation_exact(constant_model(1, 1), 2, 0), DomainError);
  EXPECT_THROW(chsh_exact(constant_model(1, 1), {0, 1, 0, 5}), DomainError);
}

TEST(ChshExact, ConstantModelSaturatesBound) {
  EXPECT_EQ(chsh_exact(constant_model(1, 1), {}), 2.0);
}

TEST(ChshExact, AntiCorrelatedPrimedSetting) {
  // b' = -b for every lambda; S = 2 <a b> for each lambda, so |S| <= 2.
  mc::TrialRng rng({1, 0}, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.uniform_index(6);
    std::vector<std::string> names(n, "l");
    std::vector<double> pmf(n, 1.0 / n);
    std::vector<int> a(n), ap(n), b(n), bp(n);
    double expected = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
      a[l] = rng.sign();
      ap[l] = rng.sign();
      b[l] = rng.sign();
      bp[l] = -b[l];
      expected += pmf[l] * (a[l] * b[l] + a[l] * bp[l] + ap[l] * b[l] - ap[l] * bp[l]);
    }
    const LhvModel m(names, pmf, kTwo, kTwo, {a, ap}, {b, bp});
    EXPECT_NEAR(chsh_exact(m, {}), expected, 1e-12);
    EXPECT_LE(std::abs(chsh_exact(m, {})), 2.0 + 1e-12);
  }
}

TEST(ChshExact, BruteForceOverLambdasOnRandomModels) {
  mc::TrialRng rng({2, 0}, 0);
  const ChshSettings settings = ChshSettings::maximal_violation();
  for (int trial = 0; trial < 200; ++trial) {
    const LhvModel m = random_model(8, settings, rng);
    double brute = 0.0;
    for (std::size_t l = 0; l < 8; ++l) {
      const int a = m.response_a()[0][l], ap = m.response_a()[1][l];
      const int b = m.response_b()[0][l], bp = m.response_b()[1][l];
      brute += m.pmf()[l] * (a * b + a * bp + ap * b - ap * bp);
    }
    const double s = chsh_exact(m, {});
    EXPECT_NEAR(s, brute, 1e-12);
    EXPECT_LE(std::abs(s), 2.0 + 1e-12);

    double via_identity = 0.0;
    for (std::size_t l = 0; l < 8; ++l) via_identity += m.pmf()[l] * identity_check(m, l, {});
    EXPECT_NEAR(s, via_identity, 1e-12);
  }
}

TEST(IdentityCheck, ExhaustiveTruthTable) {
  int count = 0;
  for (int a : {-1, 1})
    for (int ap : {-1, 1})
      for (int b : {-1, 1})
        for (int bp : {-1, 1}) {
          const int v = identity_value(a, ap, b, bp);
          EXPECT_TRUE(v == 2 || v == -2);
          // Case split: b = b' gives 2a, b = -b' gives 2a'.
          EXPECT_EQ(v, b == bp ? 2 * a * b : 2 * ap * b);
          ++count;
        }
  EXPECT_EQ(count, 16);
}

TEST(IdentityCheck, NamedCases) {
  EXPECT_EQ(identity_check(constant_model(1, 1), 0, {}), 2);
  const LhvModel m({"l"}, {1.0}, kTwo, kTwo, {{1}, {1}}, {{1}, {-1}});
  EXPECT_EQ(identity_check(m, 0, {}), 2);
}

TEST(ExhaustiveStrategies, AllSingleLambdaPatternsRespectBound) {
  // Four settings per side: 8 table entries, 2^8 deterministic strategies.
  std::vector<Angle> four;
  for (double deg : {0.0, 45.0, 90.0, 135.0}) four.push_back(Angle::from_degrees(deg));
  int models = 0;
  for (unsigned bits = 0; bits < 256; ++bits) {
    std::vector<std::vector<int>> ra(4, std::vector<int>(1)), rb(4, std::vector<int>(1));
    for (int s = 0; s < 4; ++s) {
      ra[s][0] = (bits >> s) & 1u ? 1 : -1;
      rb[s][0] = (bits >> (s + 4)) & 1u ? 1 : -1;
    }
    const LhvModel m({"l"}, {1.0}, four, four, ra, rb);
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t ap = 0; ap < 4; ++ap)
        for (std::size_t b = 0; b < 4; ++b)
          for (std::size_t bp = 0; bp < 4; ++bp) {
            ASSERT_LE(std::abs(chsh_exact(m, {a, ap, b, bp})), 2.0 + 1e-12);
          }
    ++models;
  }
  EXPECT_EQ(models, 256);
}

TEST(RandomModel, ContractAndBound) {
  mc::TrialRng rng({3, 0}, 0);
  const LhvModel one = random_model(1, ChshSettings::maximal_violation(), rng);
  EXPECT_EQ(one.pmf(), std::vector<double>{1.0});
  EXPECT_THROW(random_model(0, ChshSettings::maximal_violation(), rng), DomainError);
  for (int i = 0; i < 1000; ++i) {
    const LhvModel m = random_model(1 + rng.uniform_index(32), ChshSettings::maximal_violation(), rng);
    EXPECT_LE(std::abs(chsh_exact(m, {})), 2.0 + 1e-12);
  }
}

TEST(SampleTrial, SingleLambdaIsDeterministic) {
  const LhvModel m({"l"}, {1.0}, kTwo, kTwo, {{1}, {-1}}, {{-1}, {1}});
  for (std::uint64_t t = 0; t < 100; ++t) {
    mc::TrialRng rng({5, 0}, t);
    EXPECT_EQ(sample_trial(m, 1, 0, rng), std::make_pair(-1, -1));
  }
}

TEST(SampleTrial, SameSeedSameSequence) {
  mc::TrialRng gen({6, 0}, 0);
  const LhvModel m = random_model(5, ChshSettings::maximal_violation(), gen);
  mc::TrialRng r1({77, 1}, 3);
  mc::TrialRng r2({77, 1}, 3);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(sample_trial(m, 0, 1, r1), sample_trial(m, 0, 1, r2));
}

TEST(SampleTrial, ZeroWeightStatesAreNeverDrawn) {
  const LhvModel m({"x", "y", "z"}, {0.0, 1.0, 0.0}, {Angle()}, {Angle()}, {{-1, 1, -1}},
                   {{-1, 1, -1}});
  for (std::uint64_t t = 0; t < 2000; ++t) {
    mc::TrialRng rng({8, 0}, t);
    EXPECT_EQ(sample_trial(m, 0, 0, rng), std::make_pair(1, 1));
  }
  EXPECT_EQ(m.lambda_for(0.0), 1u);
  EXPECT_EQ(m.lambda_for(std::nextafter(1.0, 0.0)), 1u);
}

TEST(SampleTrial, EmpiricalCorrelationMatchesExact) {
  mc::TrialRng gen({9, 0}, 0);
  const LhvModel m = random_model(6, ChshSettings::maximal_violation(), gen);
  const std::size_t n = 1000000;
  const auto s = correlation_empirical(m, 0, 1, n, {42, 0});
  const double exact = correlation_exact(m, 0, 1);
  const double sigma = std::sqrt((1.0 - exact * exact) / n);
  EXPECT_LE(std::abs(s.mean - exact), 4.0 * sigma + 1e-12);
}

TEST(ChshEmpirical, WithinMonteCarloEnvelope) {
  mc::TrialRng gen({10, 0}, 0);
  const LhvModel m = random_model(12, ChshSettings::maximal_violation(), gen);
  const std::size_t n = 1000000;
  const ChshEstimate est = chsh_empirical(m, {}, n, {42, 0});
  EXPECT_LE(std::abs(est.empirical - est.exact), 5.0 * 4.0 / std::sqrt(double(n)));
  EXPECT_EQ(est.trials_per_term, n);
}

TEST(LhvModel, ValidationMessages) {
  EXPECT_THROW(LhvModel({"a", "b"}, {0.5, 0.6}, kTwo, kTwo, {{1, 1}, {1, 1}}, {{1, 1}, {1, 1}}),
               DomainError);
  EXPECT_THROW(LhvModel({"a"}, {1.0}, kTwo, kTwo, {{1}, {0}}, {{1}, {1}}), DomainError);
  EXPECT_THROW(LhvModel({"a"}, {1.0}, kTwo, kTwo, {{1}}, {{1}, {1}}), DomainError);
  EXPECT_THROW(LhvModel({}, {}, kTwo, kTwo, {{}, {}}, {{}, {}}), DomainError);
  EXPECT_THROW(LhvModel({"a", "b"}, {1.5, -0.5}, {Angle()}, {Angle()}, {{1, 1}}, {{1, 1}}),
               DomainError);
}

TEST(LhvJson, RoundTripPreservesModel) {
  mc::TrialRng gen({11, 0}, 0);
  const LhvModel m = random_model(7, ChshSettings::maximal_violation(), gen);
  const auto text = to_json(m).dump();
  const LhvModel back = model_from_json_text(text);
  EXPECT_EQ(to_json(back).dump(), text);
  EXPECT_EQ(chsh_exact(back, {}), chsh_exact(m, {}));
  EXPECT_EQ(to_json(m)["settings_b_deg"][1], -45.0);
}

TEST(LhvJson, ErrorsNameTheLocation) {
  try {
    model_from_json_text(R"({"lambdas": ["a"], "pmf": [1.0], "settings_a_deg": [0],
        "settings_b_deg": [0], "response_a": [[1]], "response_b": [["up"]]})");
    FAIL() << "expected ModelFormatError";
  } catch (const ModelFormatError& e) {
    EXPECT_NE(std::string(e.what()).find("/response_b/0/0"), std::string::npos) << e.what();
  }
  try {
    model_from_json_text(R"({"lambdas": ["a"], "pmf": [1.0,)");
    FAIL() << "expected ModelFormatError";
  } catch (const ModelFormatError& e) {
    EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos) << e.what();
  }
  EXPECT_THROW(model_from_json_text(R"({"pmf": [1.0]})"), ModelFormatError);
}

}  // namespace
}  // namespace bellsim::lhv
