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

#include "bellsim/monty.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "bellsim/errors.hpp"

namespace bellsim::monty {

std::string_view to_string(Strategy s) { return s == Strategy::kStay ? "stay" : "switch"; }

Strategy strategy_from_string(std::string_view s) {
  if (s == "stay") return Strategy::kStay;
  if (s == "switch") return Strategy::kSwitch;
  throw DomainError("unknown strategy '" + std::string(s) + "' (expected stay or switch)");
}

void check_game(std::size_t n, std::size_t k) {
  if (n < 3) throw DomainError("Monty Hall needs at least 3 doors, got " + std::to_string(n));
  if (k < 1 || k > n - 2) {
    throw DomainError("the host must open between 1 and n-2 = " + std::to_string(n - 2) +
                      " doors, got " + std::to_string(k));
  }
}

HostPolicy::HostPolicy(std::size_t n_doors, std::size_t k_opened) : n_(n_doors), k_(k_opened) {
  check_game(n_, k_);
}

namespace {

// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    const std::uint64_t g = std::gcd(r, i);
    const std::uint64_t num = n - k + i;
    const std::uint64_t a = r / g;
    const std::uint64_t b = num / (i / g);
    if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
    r = a * b;
  }
  return r;
}

}  // namespace

std::uint64_t HostPolicy::legal_set_count(std::size_t car, std::size_t pick) const {
  const std::size_t candidates = car == pick ? n_ - 1 : n_ - 2;
  return binomial(candidates, k_);
}

double HostPolicy::relative_likelihood(std::size_t car, std::size_t pick,
                                       const std::vector<bool>& is_opened) const {
  if (is_opened[car] || is_opened[pick]) return 0.0;
  // 1/C(n-1,k) when the car is behind the pick, 1/C(n-2,k) otherwise; their
  // ratio is (n-1-k)/(n-1).
  if (car == pick) {
    return static_cast<double>(n_ - 1 - k_) / static_cast<double>(n_ - 1);
  }
  return 1.0;
}

std::vector<std::size_t> HostPolicy::remaining_closed(std::size_t car, std::size_t pick,
                                                      mc::TrialRng& rng) const {
  // Candidates for opening, in door order with pick and car removed. The host
  // opens a uniform k-subset, i.e. leaves a uniform (m-k)-subset closed, which
  // Floyd's algorithm draws in O(m-k).
  const std::size_t m = car == pick ? n_ - 1 : n_ - 2;
  const std::size_t keep = m - k_;
  auto candidate_door = [&](std::size_t idx) {
    std::size_t door = idx;
    const std::size_t lo = std::min(car, pick);
    const std::size_t hi = std::max(car, pick);
    if (door >= lo) ++door;
    if (car != pick && door >= hi) ++door;
    return door;
  };
  std::set<std::size_t> chosen;
  for (std::size_t j = m - keep; j < m; ++j) {
    const std::size_t t = static_cast<std::size_t>(rng.uniform_index(j + 1));
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::size_t> out;
  out.reserve(keep + 1);
  for (std::size_t idx : chosen) out.push_back(candidate_door(idx));
  if (car != pick) out.push_back(car);
  std::sort(out.begin(), out.end());
  return out;
}

MontyInstance::MontyInstance(std::size_t n_doors, std::size_t player_pick,
                             std::vector<std::size_t> opened, std::vector<double> prior)
    : n_(n_doors), pick_(player_pick), opened_(std::move(opened)), prior_(std::move(prior)) {
  check_game(n_, opened_.size());
  if (pick_ >= n_) throw DomainError("player pick is not a door");
  std::vector<bool> seen(n_, false);
  for (std::size_t d : opened_) {
    if (d >= n_) throw DomainError("opened door " + std::to_string(d + 1) + " does not exist");
    if (d == pick_) throw DomainError("the host cannot open the player's pick");
    if (seen[d]) throw DomainError("door " + std::to_string(d + 1) + " opened twice");
    seen[d] = true;
  }
  if (prior_.empty()) {
    prior_.assign(n_, 1.0 / static_cast<double>(n_));
  } else {
    if (prior_.size() != n_) throw DomainError("prior must have one entry per door");
    double total = 0.0;
    for (double p : prior_) {
      if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("prior entries must be >= 0");
      total += p;
    }
    if (!(std::abs(total - 1.0) <= 1e-12)) throw DomainError("prior does not sum to 1");
  }
}

std::vector<double> posterior(const MontyInstance& inst) {
  const HostPolicy host(inst.n_doors(), inst.k_opened());
  std::vector<bool> is_opened(inst.n_doors(), false);
  for (std::size_t d : inst.opened()) is_opened[d] = true;

  std::vector<double> post(inst.n_doors());
  double total = 0.0;
  for (std::size_t d = 0; d < inst.n_doors(); ++d) {
    post[d] = inst.prior()[d] * host.relative_likelihood(d, inst.player_pick(), is_opened);
    total += post[d];
  }
  if (!(total > 0.0)) {
    throw DomainError("the opened set has zero probability under the prior");
  }
  for (double& p : post) p /= total;
  return post;
}

Fraction reduce(Fraction f) {
  const std::uint64_t g = std::gcd(f.num, f.den);
  if (g > 1) {
    f.num /= g;
    f.den /= g;
  }
  return f;
}

Fraction win_fraction(std::size_t n, std::size_t k, Strategy strategy) {
  check_game(n, k);
  if (strategy == Strategy::kStay) return {1, n};
  return reduce({n - 1, static_cast<std::uint64_t>(n) * (n - k - 1)});
}

double win_probability(std::size_t n, std::size_t k, Strategy strategy) {
  return win_fraction(n, k, strategy).value();
}

GameRecord play_game(std::size_t n, std::size_t k, Strategy strategy, mc::TrialRng& rng) {
  const HostPolicy host(n, k);
  GameRecord g;
  g.pick = 0;
  g.car = static_cast<std::size_t>(rng.uniform_index(n));
  g.remaining = host.remaining_closed(g.car, g.pick, rng);
  if (strategy == Strategy::kStay) {
    g.final_choice = g.pick;
  } else {
    g.final_choice = g.remaining[rng.uniform_index(g.remaining.size())];
  }
  return g;
}

bool simulate_game(std::size_t n, std::size_t k, Strategy strategy, mc::TrialRng& rng) {
  return play_game(n, k, strategy, rng).won();
}

mc::TrialSummary simulate_win_rate(std::size_t n, std::size_t k, Strategy strategy,
                                   std::size_t n_trials, mc::StreamSpec spec, unsigned workers) {
  check_game(n, k);
  return mc::run_trials(
      [=](mc::TrialRng& rng) { return simulate_game(n, k, strategy, rng) ? 1.0 : 0.0; }, n_trials,
      spec, workers);
}

}  // namespace bellsim::monty
