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

// Reproducible Monte Carlo.
//
// Every trial draws from its own counter-based stream keyed by
// (master_seed, stream_id, trial_index), so the sequence a trial sees does
// not depend on how trials are scheduled across threads. Results are reduced
// in trial order by pairwise summation, which makes a TrialSummary
// bit-identical for any worker count.

#ifndef BELLSIM_MC_HARNESS_HPP_
#define BELLSIM_MC_HARNESS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>

#include <nlohmann/json.hpp>

namespace bellsim::mc {

struct StreamSpec {
  std::uint64_t master_seed = 42;
  std::uint32_t stream_id = 0;

  StreamSpec with_stream(std::uint32_t id) const { return {master_seed, id}; }
};

// Philox4x32 with 10 rounds.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

// Random stream of one trial. Satisfies UniformRandomBitGenerator, but the
// library only uses its own distribution helpers below, whose output is
// specified bit-for-bit (std:: distributions are implementation-defined).
class TrialRng {
 public:
  using result_type = std::uint64_t;

  TrialRng(StreamSpec spec, std::uint64_t trial_index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next_u64(); }

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  // 53-bit uniform in [0, 1).
  double uniform();
  // Unbiased integer in [0, n); n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);
  // Standard normal (Box-Muller, one output per call).
  double normal();
  // Fair +1/-1.
  int sign();

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;
};

struct TrialSummary {
  std::size_t n_trials = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double ci95_lo = 0.0;
  double ci95_hi = 0.0;

  friend bool operator==(const TrialSummary&, const TrialSummary&) = default;
};

using TrialFunction = std::function<double(TrialRng&)>;

// Runs `n` trials; trial i gets TrialRng(spec, i). `workers` threads share
// the index range; 0 is treated as 1.
TrialSummary run_trials(const TrialFunction& trial, std::size_t n, StreamSpec spec,
                        unsigned workers = 1);

// Summary of precomputed trial values: sample standard deviation over sqrt(n),
// ci95 = mean +/- 1.96 stderr.
TrialSummary summarize(std::span<const double> values);

// Fixed-shape pairwise (cascade) summation.
double pairwise_sum(std::span<const double> values);

// Audit form, includes the seed, stream, and worker count.
nlohmann::ordered_json to_json(const TrialSummary& summary, StreamSpec spec, unsigned workers);

}  // namespace bellsim::mc

#endif  // BELLSIM_MC_HARNESS_HPP_
