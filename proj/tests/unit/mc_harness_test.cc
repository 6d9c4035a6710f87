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

#include "bellsim/mc_harness.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "bellsim/errors.hpp"

namespace bellsim::mc {
namespace {

// Known-answer vectors published with the Random123 reference implementation.
TEST(Philox, KnownAnswerVectors) {
  using Block = std::array<std::uint32_t, 4>;
  EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}),
            (Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                          {0xffffffff, 0xffffffff}),
            (Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                          {0xa4093822, 0x299f31d0}),
            (Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(TrialRng, DeterminedBySeedStreamAndTrial) {
  TrialRng a({42, 3}, 17);
  TrialRng b({42, 3}, 17);
  TrialRng other_trial({42, 3}, 18);
  TrialRng other_stream({42, 4}, 17);
  TrialRng other_seed({43, 3}, 17);
  bool differs_trial = false, differs_stream = false, differs_seed = false;
  for (int i = 0; i < 64; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    differs_trial |= x != other_trial.next_u64();
    differs_stream |= x != other_stream.next_u64();
    differs_seed |= x != other_seed.next_u64();
  }
  EXPECT_TRUE(differs_trial);
  EXPECT_TRUE(differs_stream);
  EXPECT_TRUE(differs_seed);
}

TEST(TrialRng, UniformIndexCoversRangeEvenly) {
  TrialRng rng({1, 0}, 0);
  std::vector<int> counts(7);
  const int n = 70000;
  for (int i = 0; i < n; ++i) ++counts[rng.uniform_index(7)];
  for (int c : counts) EXPECT_NEAR(c, n / 7.0, 5.0 * std::sqrt(n / 7.0));
  EXPECT_THROW(rng.uniform_index(0), DomainError);
}

TEST(TrialRng, UniformAndNormalMoments) {
  TrialRng rng({2, 0}, 0);
  const int n = 200000;
  double su = 0, sn = 0, sn2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
  }
  EXPECT_NEAR(su / n, 0.5, 5.0 * std::sqrt(1.0 / 12.0 / n));
  EXPECT_NEAR(sn / n, 0.0, 5.0 / std::sqrt(n));
  EXPECT_NEAR(sn2 / n, 1.0, 5.0 * std::sqrt(2.0 / n));
}

TEST(RunTrials, ConstantTrial) {
  const TrialSummary s = run_trials([](TrialRng&) { return 1.0; }, 1000, {42, 0});
  EXPECT_EQ(s.n_trials, 1000u);
  EXPECT_EQ(s.mean, 1.0);
  EXPECT_EQ(s.std_error, 0.0);
  EXPECT_EQ(s.ci95_lo, 1.0);
  EXPECT_EQ(s.ci95_hi, 1.0);
}

TEST(RunTrials, ZeroTrialsIsAnError) {
  EXPECT_THROW(run_trials([](TrialRng&) { return 0.0; }, 0, {42, 0}), DomainError);
}

// log P(|S_n| >= t) for S_n a sum of n fair +/-1 steps, by direct summation
// of the binomial pmf in log space.
double log_two_sided_tail(int n, double t) {
  double log_total = -INFINITY;
  for (int heads = 0; heads <= n; ++heads) {
    const double sum = 2.0 * heads - n;
    if (std::abs(sum) < t) continue;
    const double lp = std::lgamma(n + 1.0) - std::lgamma(heads + 1.0) -
                      std::lgamma(n - heads + 1.0) - n * std::log(2.0);
    log_total = std::max(log_total, lp) + std::log1p(std::exp(-std::abs(log_total - lp)));
  }
  return log_total;
}

TEST(RunTrials, FairCoinConcentrates) {
  const std::size_t n = 1000000;
  // The 5/sqrt(n) envelope fails with probability below 1e-6.
  EXPECT_LT(log_two_sided_tail(static_cast<int>(n), 5.0 * std::sqrt(static_cast<double>(n))),
            std::log(1e-6));
  const TrialSummary s = run_trials([](TrialRng& r) { return double(r.sign()); }, n, {42, 0});
  EXPECT_LE(std::abs(s.mean), 5.0 / std::sqrt(static_cast<double>(n)));
  EXPECT_NEAR(s.std_error, 1.0 / std::sqrt(static_cast<double>(n)), 1e-5);
  EXPECT_NEAR(s.ci95_hi - s.ci95_lo, 2 * 1.96 * s.std_error, 1e-15);
}

TEST(RunTrials, WorkerCountDoesNotChangeResult) {
  auto trial = [](TrialRng& r) { return r.uniform() * r.normal(); };
  const TrialSummary one = run_trials(trial, 100003, {99, 5}, 1);
  for (unsigned w : {2u, 3u, 4u, 7u}) {
    const TrialSummary many = run_trials(trial, 100003, {99, 5}, w);
    EXPECT_EQ(one, many) << "workers=" << w;
    EXPECT_EQ(to_json(one, {99, 5}, 1)["mean"].dump(), to_json(many, {99, 5}, w)["mean"].dump());
  }
}

TEST(RunTrials, PropagatesTrialExceptions) {
  auto trial = [](TrialRng& r) -> double {
    if (r.uniform() < 0.01) throw DomainError("boom");
    return 0.0;
  };
  EXPECT_THROW(run_trials(trial, 10000, {1, 0}, 4), DomainError);
}

TEST(Streams, DistinctStreamsAreUncorrelated) {
  const int n = 100000;
  double sxy = 0, sx = 0, sy = 0, sxx = 0, syy = 0;
  for (int i = 0; i < n; ++i) {
    TrialRng a({42, 0}, i);
    TrialRng b({42, 1}, i);
    const double x = a.uniform(), y = b.uniform();
    sx += x;
    sy += y;
    sxy += x * y;
    sxx += x * x;
    syy += y * y;
  }
  const double cov = sxy / n - (sx / n) * (sy / n);
  const double corr = cov / std::sqrt((sxx / n - sx * sx / n / n) * (syy / n - sy * sy / n / n));
  EXPECT_LT(std::abs(corr), 0.01);
}

TEST(PairwiseSum, ExactOnSmallIntegersAndStableOnLargeInputs) {
  std::vector<double> v(1001);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  EXPECT_EQ(pairwise_sum(v), 500500.0);
  std::vector<double> tenths(1 << 20, 0.1);
  EXPECT_NEAR(pairwise_sum(tenths), 0.1 * (1 << 20), 1e-8);
}

TEST(Summary, JsonRecordsAuditFields) {
  const TrialSummary s = summarize(std::vector<double>{1.0, 3.0});
  EXPECT_EQ(s.mean, 2.0);
  EXPECT_DOUBLE_EQ(s.std_error, 1.0);
  const auto j = to_json(s, {7, 2}, 3);
  EXPECT_EQ(j["seed"], 7u);
  EXPECT_EQ(j["stream_id"], 2u);
  EXPECT_EQ(j["workers"], 3u);
  EXPECT_EQ(j["n_trials"], 2u);
}

}  // namespace
}  // namespace bellsim::mc
