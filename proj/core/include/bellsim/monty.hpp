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

// Generalized Monty Hall: n doors, the host opens k empty doors that are not
// the player's pick. Doors are 0-indexed here; reports add 1.

#ifndef BELLSIM_MONTY_HPP_
#define BELLSIM_MONTY_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "bellsim/mc_harness.hpp"

namespace bellsim::monty {

enum class Strategy { kStay, kSwitch };

std::string_view to_string(Strategy s);
// "stay" or "switch"; throws DomainError otherwise.
Strategy strategy_from_string(std::string_view s);

// Throws DomainError unless n >= 3 and 1 <= k <= n - 2.
void check_game(std::size_t n, std::size_t k);

// Host that opens k doors uniformly at random among the doors that are
// neither the pick nor the car.
class HostPolicy {
 public:
  HostPolicy(std::size_t n_doors, std::size_t k_opened);

  // Number of door sets the host may open when the car is at `car`.
  std::uint64_t legal_set_count(std::size_t car, std::size_t pick) const;

  // P(host opens exactly `opened` | car), up to a factor common to all car
  // positions: returns 0 when the set is illegal for this car.
  double relative_likelihood(std::size_t car, std::size_t pick,
                             const std::vector<bool>& is_opened) const;

  // Closed doors other than the pick after the host acts, ascending.
  std::vector<std::size_t> remaining_closed(std::size_t car, std::size_t pick,
                                            mc::TrialRng& rng) const;

 private:
  std::size_t n_;
  std::size_t k_;
};

class MontyInstance {
 public:
  // Uniform prior when `prior` is empty. Throws DomainError if the opened
  // set contains the pick or a duplicate, has the wrong size for the game,
  // or the prior is not a pmf over n doors.
  MontyInstance(std::size_t n_doors, std::size_t player_pick, std::vector<std::size_t> opened,
                std::vector<double> prior = {});

  std::size_t n_doors() const { return n_; }
  std::size_t k_opened() const { return opened_.size(); }
  std::size_t player_pick() const { return pick_; }
  const std::vector<std::size_t>& opened() const { return opened_; }
  const std::vector<double>& prior() const { return prior_; }

 private:
  std::size_t n_;
  std::size_t pick_;
  std::vector<std::size_t> opened_;
  std::vector<double> prior_;
};

// P(car = d | host opened the instance's set), exact Bayes update.
std::vector<double> posterior(const MontyInstance& instance);

struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

Fraction reduce(Fraction f);

// stay: 1/n; switch (uniform among the other closed doors):
// (n-1) / (n (n-k-1)). Returned in lowest terms.
Fraction win_fraction(std::size_t n, std::size_t k, Strategy strategy);
double win_probability(std::size_t n, std::size_t k, Strategy strategy);

struct GameRecord {
  std::size_t car = 0;
  std::size_t pick = 0;
  std::size_t final_choice = 0;
  // Closed non-pick doors after the host acts.
  std::vector<std::size_t> remaining;

  bool won() const { return final_choice == car; }
};

// One full game: uniform car, pick = door 0, uniform legal host action,
// then the strategy.
GameRecord play_game(std::size_t n, std::size_t k, Strategy strategy, mc::TrialRng& rng);
bool simulate_game(std::size_t n, std::size_t k, Strategy strategy, mc::TrialRng& rng);

mc::TrialSummary simulate_win_rate(std::size_t n, std::size_t k, Strategy strategy,
                                   std::size_t n_trials, mc::StreamSpec spec,
                                   unsigned workers = 1);

}  // namespace bellsim::monty

#endif  // BELLSIM_MONTY_HPP_
