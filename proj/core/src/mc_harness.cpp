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

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>
#include <vector>

#include "bellsim/errors.hpp"

namespace bellsim::mc {
namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85;

void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

constexpr std::size_t kPairwiseBlock = 8;

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kPhiloxW0;
      key[1] += kPhiloxW1;
    }
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

TrialRng::TrialRng(StreamSpec spec, std::uint64_t trial_index)
    : key_{static_cast<std::uint32_t>(spec.master_seed),
           static_cast<std::uint32_t>(spec.master_seed >> 32)},
      counter_{0, static_cast<std::uint32_t>(trial_index),
               static_cast<std::uint32_t>(trial_index >> 32), spec.stream_id} {}

void TrialRng::refill() {
  block_ = philox4x32_10(counter_, key_);
  ++counter_[0];
  if (counter_[0] == 0) throw InternalError("TrialRng: per-trial draw budget exhausted");
  used_ = 0;
}

std::uint32_t TrialRng::next_u32() {
  if (used_ == 4) refill();
  return block_[used_++];
}

std::uint64_t TrialRng::next_u64() {
  const std::uint64_t hi = next_u32();
  return (hi << 32) | next_u32();
}

double TrialRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::uint64_t TrialRng::uniform_index(std::uint64_t n) {
  if (n == 0) throw DomainError("uniform_index: empty range");
  // Rejection on the largest multiple of n below 2^64.
  const std::uint64_t limit = max() - max() % n;
  for (;;) {
    const std::uint64_t x = next_u64();
    if (x < limit) return x % n;
  }
}

double TrialRng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

int TrialRng::sign() { return (next_u32() & 1u) ? 1 : -1; }

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= kPairwiseBlock) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

TrialSummary summarize(std::span<const double> values) {
  if (values.empty()) throw DomainError("summarize: no trials");
  const double n = static_cast<double>(values.size());
  TrialSummary s;
  s.n_trials = values.size();
  s.mean = pairwise_sum(values) / n;
  if (values.size() > 1) {
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double d = values[i] - s.mean;
      sq[i] = d * d;
    }
    const double variance = pairwise_sum(sq) / (n - 1.0);
    s.std_error = std::sqrt(variance / n);
  }
  s.ci95_lo = s.mean - 1.96 * s.std_error;
  s.ci95_hi = s.mean + 1.96 * s.std_error;
  return s;
}

TrialSummary run_trials(const TrialFunction& trial, std::size_t n, StreamSpec spec,
                        unsigned workers) {
  if (n == 0) throw DomainError("run_trials: n must be >= 1");
  workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(std::min<std::size_t>(n, 256)));
  std::vector<double> values(n);

  std::vector<std::exception_ptr> failures(workers);

  auto run_range = [&](unsigned worker, std::size_t begin, std::size_t end) {
    try {
      for (std::size_t i = begin; i < end; ++i) {
        TrialRng rng(spec, i);
        values[i] = trial(rng);
      }
    } catch (...) {
      failures[worker] = std::current_exception();
    }
  };

  if (workers == 1) {
    run_range(0, 0, n);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(n, w * chunk);
      const std::size_t end = std::min(n, begin + chunk);
      pool.emplace_back(run_range, w, begin, end);
    }
  }
  for (const std::exception_ptr& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return summarize(values);
}

nlohmann::ordered_json to_json(const TrialSummary& summary, StreamSpec spec, unsigned workers) {
  nlohmann::ordered_json j;
  j["n_trials"] = summary.n_trials;
  j["mean"] = summary.mean;
  j["stderr"] = summary.std_error;
  j["ci95"] = {summary.ci95_lo, summary.ci95_hi};
  j["seed"] = spec.master_seed;
  j["stream_id"] = spec.stream_id;
  j["workers"] = workers;
  return j;
}

}  // namespace bellsim::mc
