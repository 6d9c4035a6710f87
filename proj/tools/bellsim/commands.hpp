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

// The bellsim command-line front end. Each subcommand is a plain function
// from options to a Report so tests can call it without spawning a process.

#ifndef BELLSIM_TOOLS_COMMANDS_HPP_
#define BELLSIM_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bellsim/chsh.hpp"
#include "bellsim/errors.hpp"
#include "bellsim/report.hpp"

namespace bellsim::cli {

// Bad flags or flag values. Maps to exit code 1.
class UsageError : public DomainError {
 public:
  using DomainError::DomainError;
};

struct RunConfig {
  std::uint64_t seed = 42;
  std::size_t trials = 1'000'000;
  unsigned workers = 1;
  Format format = Format::kTable;
  std::string out;  // empty: stdout
};

struct ChshQuantumOptions {
  ChshSettings settings = ChshSettings::maximal_violation();
};

struct ChshLhvOptions {
  std::optional<std::string> model_path;
  std::size_t random_models = 0;
  std::size_t max_lambdas = 32;
  ChshPairing pairing;
};

struct CorrelationOptions {
  // Extra relative angles in degrees, appended after 0, 45, 90, 180.
  std::vector<double> extra_degrees;
};

struct MontyOptions {
  std::size_t doors = 3;
  std::optional<std::size_t> open;
  bool open_all_but_one = false;
  std::string strategy = "both";
  std::size_t pick = 1;              // 1-based, as printed
  std::vector<std::size_t> opened;   // 1-based; empty picks the lowest doors
};

struct CatOptions {
  double half_lives = 1.0;
};

struct MeasureOptions {
  std::optional<std::string> spin;   // "a,b" with each entry re or re:im
  std::optional<std::string> sites;  // same syntax, any length
  std::optional<std::size_t> uniform;
  std::optional<std::size_t> site;   // 1-based, used with n_sites
  std::size_t n_sites = 5;
  std::optional<std::string> basis;  // spin | position | momentum
  double angle_deg = 0.0;
};

Report cmd_chsh_quantum(const RunConfig& config, const ChshQuantumOptions& options);
Report cmd_chsh_lhv(const RunConfig& config, const ChshLhvOptions& options);
Report cmd_correlation_table(const RunConfig& config, const CorrelationOptions& options);
Report cmd_monty(const RunConfig& config, const MontyOptions& options);
Report cmd_cat(const RunConfig& config, const CatOptions& options);
Report cmd_measure(const RunConfig& config, const MeasureOptions& options);

// Parses argv, runs one subcommand and writes the rendered report. Returns
// the process exit code: 0 ok, 1 usage or validation, 2 internal failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bellsim::cli

#endif  // BELLSIM_TOOLS_COMMANDS_HPP_
