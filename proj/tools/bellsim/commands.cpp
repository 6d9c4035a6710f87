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

#include "bellsim/commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "bellsim/cat_scenario.hpp"
#include "bellsim/json_io.hpp"
#include "bellsim/lhv.hpp"
#include "bellsim/mc_harness.hpp"
#include "bellsim/measurement.hpp"
#include "bellsim/monty.hpp"
#include "bellsim/qlin.hpp"
#include "bellsim/quantum_bell.hpp"

namespace bellsim::cli {

namespace {

using nlohmann::ordered_json;

constexpr double kLhvBound = 2.0;
constexpr double kLhvSlack = 1e-12;
// Larger games only get the posterior summary, not one entry per door.
constexpr std::size_t kFullPosteriorDoors = 64;

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::string fmt_pm(double value, double err) { return fmt7(value) + " +/- " + fmt7(err); }

std::string fmt_complex(qlin::Complex z) {
  if (std::abs(z.imag()) < 1e-15) return fmt7(z.real());
  return fmt7(z.real()) + (z.imag() < 0 ? "-" : "+") + fmt7(std::abs(z.imag())) + "i";
}

std::string matrix_text(const qlin::ComplexMatrix& m) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<std::string> row;
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(fmt_complex(m(r, c)));
    rows.push_back(std::move(row));
  }
  // No header row here, so render by hand.
  std::vector<std::size_t> width(m.cols(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::string out;
  for (const auto& row : rows) {
    out += "  [";
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out += "  ";
      out.append(width[c] - row[c].size(), ' ');
      out += row[c];
    }
    out += "]\n";
  }
  return out;
}

double parse_double(const std::string& token, const std::string& what) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (token.empty() || end != begin + token.size() || !std::isfinite(v)) {
    throw UsageError(what + ": cannot parse '" + token + "' as a number");
  }
  return v;
}

std::vector<qlin::Complex> parse_amplitudes(const std::string& text, const std::string& what) {
  std::vector<qlin::Complex> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const auto colon = token.find(':');
    if (colon == std::string::npos) {
      out.emplace_back(parse_double(token, what), 0.0);
    } else {
      out.emplace_back(parse_double(token.substr(0, colon), what),
                       parse_double(token.substr(colon + 1), what));
    }
  }
  if (out.empty()) throw UsageError(what + ": no amplitudes given");
  return out;
}

void require_finite(double v, const char* flag) {
  if (!std::isfinite(v)) throw UsageError(std::string(flag) + " must be finite");
}

ordered_json settings_json(const ChshSettings& s) {
  ordered_json j;
  j["a"] = s.theta_a.degrees();
  j["a_prime"] = s.theta_a_prime.degrees();
  j["b"] = s.theta_b.degrees();
  j["b_prime"] = s.theta_b_prime.degrees();
  return j;
}

}  // namespace

Report cmd_chsh_quantum(const RunConfig& config, const ChshQuantumOptions& options) {
  const ChshSettings& s = options.settings;
  for (Angle a : {s.theta_a, s.theta_a_prime, s.theta_b, s.theta_b_prime}) {
    require_finite(a.degrees(), "angle");
  }
  const double exact = quantum_bell::chsh_quantum(s);
  std::optional<ChshEstimate> est;
  if (config.trials > 0) {
    est = quantum_bell::chsh_quantum_empirical(s, config.trials, {config.seed, 0}, config.workers);
  }

  Report r;
  r.json["command"] = "chsh-quantum";
  r.json["seed"] = config.seed;
  r.json["settings_deg"] = settings_json(s);
  r.json["exact"] = exact;
  r.json["abs_exact"] = std::abs(exact);
  r.json["quantum_reference"] = 2.0 * std::sqrt(2.0);
  r.json["classical_bound"] = kLhvBound;
  r.json["trials_per_term"] = config.trials;
  r.json["empirical"] = optional_number(est ? std::optional(est->empirical) : std::nullopt);
  r.json["stderr"] = optional_number(est ? std::optional(est->std_error) : std::nullopt);

  std::vector<std::vector<std::string>> rows = {{"quantity", "value"},
                                                {"S exact", fmt7(exact)},
                                                {"|S| exact", fmt7(std::abs(exact))},
                                                {"2*sqrt(2)", fmt7(2.0 * std::sqrt(2.0))},
                                                {"classical bound", fmt7(kLhvBound)}};
  if (est) {
    rows.push_back({"S empirical", fmt_pm(est->empirical, est->std_error)});
    rows.push_back({"trials per term", std::to_string(config.trials)});
  }
  r.table = "CHSH, singlet state, analyzers at a=" + fmt7(s.theta_a.degrees()) +
            " a'=" + fmt7(s.theta_a_prime.degrees()) + " b=" + fmt7(s.theta_b.degrees()) +
            " b'=" + fmt7(s.theta_b_prime.degrees()) + " deg\n" + text_table(rows);
  return r;
}

Report cmd_chsh_lhv(const RunConfig& config, const ChshLhvOptions& options) {
  if (options.model_path.has_value() == (options.random_models > 0)) {
    throw UsageError("chsh-lhv: give exactly one of --model or --random");
  }
  if (options.max_lambdas == 0) throw UsageError("chsh-lhv: --max-lambdas must be >= 1");

  std::vector<lhv::LhvModel> models;
  if (options.model_path) {
    std::ifstream in(*options.model_path);
    if (!in) throw UsageError("chsh-lhv: cannot open '" + *options.model_path + "'");
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
      models.push_back(lhv::model_from_json_text(text));
    } catch (const DomainError& e) {
      throw DomainError(*options.model_path + ": " + e.what());
    }
  } else {
    // Model i is a pure function of (seed, i), like any other trial.
    const mc::StreamSpec spec{config.seed, 0};
    for (std::size_t i = 0; i < options.random_models; ++i) {
      mc::TrialRng rng(spec, i);
      const std::size_t n_lambdas = 1 + rng.uniform_index(options.max_lambdas);
      models.push_back(lhv::random_model(n_lambdas, ChshSettings::maximal_violation(), rng));
    }
  }

  Report r;
  r.json["command"] = "chsh-lhv";
  r.json["seed"] = config.seed;
  r.json["source"] = options.model_path ? "file" : "random";
  r.json["classical_bound"] = kLhvBound;
  ordered_json list = ordered_json::array();
  double max_abs = 0.0;
  std::size_t worst = 0;
  for (std::size_t i = 0; i < models.size(); ++i) {
    const double s = lhv::chsh_exact(models[i], options.pairing);
    if (std::abs(s) > max_abs) {
      max_abs = std::abs(s);
      worst = i;
    }
    ordered_json m;
    m["index"] = i;
    m["n_lambdas"] = models[i].lambda_count();
    m["S"] = s;
    list.push_back(std::move(m));
  }
  const bool holds = max_abs <= kLhvBound + kLhvSlack;
  if (!holds) {
    throw InternalError("chsh-lhv: model " + std::to_string(worst) + " has |S| = " +
                        std::to_string(max_abs) + " > 2");
  }
  r.json["n_models"] = models.size();
  r.json["max_abs_S"] = max_abs;
  r.json["bound_holds"] = holds;

  std::optional<ChshEstimate> est;
  if (options.model_path && config.trials > 0) {
    est = lhv::chsh_empirical(models[0], options.pairing, config.trials, {config.seed, 0},
                              config.workers);
  }
  r.json["trials_per_term"] = options.model_path ? config.trials : 0;
  r.json["empirical"] = optional_number(est ? std::optional(est->empirical) : std::nullopt);
  r.json["stderr"] = optional_number(est ? std::optional(est->std_error) : std::nullopt);
  r.json["models"] = std::move(list);

  std::vector<std::vector<std::string>> rows = {{"quantity", "value"}};
  if (options.model_path) {
    rows.push_back({"model", *options.model_path});
    rows.push_back({"lambdas", std::to_string(models[0].lambda_count())});
    rows.push_back({"S exact", fmt7(r.json["models"][0]["S"].get<double>())});
    if (est) rows.push_back({"S empirical", fmt_pm(est->empirical, est->std_error)});
  } else {
    rows.push_back({"random models", std::to_string(models.size())});
    rows.push_back({"lambdas per model", "1.." + std::to_string(options.max_lambdas)});
  }
  rows.push_back({"max |S|", fmt7(max_abs)});
  rows.push_back({"|S| <= 2", holds ? "yes" : "no"});
  r.table = "CHSH, local hidden variable models\n" + text_table(rows);
  return r;
}

Report cmd_correlation_table(const RunConfig& config, const CorrelationOptions& options) {
  std::vector<double> grid = {0.0, 45.0, 90.0, 180.0};
  for (double d : options.extra_degrees) {
    require_finite(d, "--angles");
    grid.push_back(d);
  }

  Report r;
  r.json["command"] = "correlations";
  r.json["seed"] = config.seed;
  r.json["n_trials"] = config.trials;
  ordered_json rows_json = ordered_json::array();
  r.csv = std::string(quantum_bell::csv_header()) + "\n";
  std::vector<std::vector<std::string>> rows = {
      {"theta_b - theta_a", "exact", "closed form", "empirical"}};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Angle a = Angle::from_degrees(0.0);
    const Angle b = Angle::from_degrees(grid[i]);
    const auto rep =
        config.trials > 0
            ? quantum_bell::correlation_with_trials(a, b, config.trials,
                                                    {config.seed, static_cast<std::uint32_t>(i)},
                                                    config.workers)
            : quantum_bell::correlation(a, b);
    rows_json.push_back(quantum_bell::to_json(rep));
    r.csv += quantum_bell::to_csv_row(rep) + "\n";
    rows.push_back({fmt7(grid[i]), fmt7(rep.exact_value), fmt7(rep.closed_form),
                    rep.empirical ? fmt_pm(*rep.empirical, *rep.std_error) : "-"});
  }
  r.json["rows"] = std::move(rows_json);
  r.table = "Singlet spin correlation C = <ab>, analyzer A at 0 deg\n" + text_table(rows);
  return r;
}

Report cmd_monty(const RunConfig& config, const MontyOptions& options) {
  const std::size_t n = options.doors;
  if (options.open && options.open_all_but_one) {
    throw UsageError("monty: --open and --open-all-but-one are exclusive");
  }
  if (n < 3) throw UsageError("monty: --doors must be >= 3");
  const std::size_t k = options.open_all_but_one ? n - 2 : options.open.value_or(1);
  if (k < 1 || k > n - 2) throw UsageError("monty: need 1 <= --open <= doors-2");
  if (options.pick < 1 || options.pick > n) throw UsageError("monty: --pick out of range");

  std::vector<monty::Strategy> strategies;
  if (options.strategy == "both") {
    strategies = {monty::Strategy::kStay, monty::Strategy::kSwitch};
  } else {
    try {
      strategies = {monty::strategy_from_string(options.strategy)};
    } catch (const DomainError& e) {
      throw UsageError(std::string("monty: ") + e.what());
    }
  }

  const std::size_t pick = options.pick - 1;
  std::vector<std::size_t> opened;
  if (options.opened.empty()) {
    for (std::size_t d = 0; d < n && opened.size() < k; ++d) {
      if (d != pick) opened.push_back(d);
    }
  } else {
    if (options.opened.size() != k) {
      throw UsageError("monty: --opened lists " + std::to_string(options.opened.size()) +
                       " doors but " + std::to_string(k) + " are opened");
    }
    for (std::size_t d : options.opened) {
      if (d < 1 || d > n) throw UsageError("monty: --opened door out of range");
      opened.push_back(d - 1);
    }
  }
  const monty::MontyInstance instance(n, pick, opened);
  const std::vector<double> post = monty::posterior(instance);

  Report r;
  r.json["command"] = "monty";
  r.json["seed"] = config.seed;
  r.json["doors"] = n;
  r.json["opened_count"] = k;
  ordered_json results = ordered_json::array();
  std::vector<std::vector<std::string>> rows = {
      {"strategy", "exact", "fraction", "empirical"}};
  for (monty::Strategy st : strategies) {
    const monty::Fraction f = monty::win_fraction(n, k, st);
    std::optional<mc::TrialSummary> sim;
    if (config.trials > 0) {
      const std::uint32_t stream = st == monty::Strategy::kStay ? 0 : 1;
      sim = monty::simulate_win_rate(n, k, st, config.trials, {config.seed, stream},
                                     config.workers);
    }
    ordered_json e;
    e["strategy"] = std::string(monty::to_string(st));
    e["n"] = n;
    e["k"] = k;
    e["exact"] = f.value();
    e["exact_fraction"] = std::to_string(f.num) + "/" + std::to_string(f.den);
    e["empirical"] = optional_number(sim ? std::optional(sim->mean) : std::nullopt);
    e["stderr"] = optional_number(sim ? std::optional(sim->std_error) : std::nullopt);
    e["n_trials"] = config.trials;
    e["seed"] = config.seed;
    results.push_back(std::move(e));
    rows.push_back({std::string(monty::to_string(st)), fmt7(f.value()),
                    std::to_string(f.num) + "/" + std::to_string(f.den),
                    sim ? fmt_pm(sim->mean, sim->std_error) : "-"});
  }
  r.json["results"] = std::move(results);

  std::vector<bool> is_open(n, false);
  for (std::size_t d : opened) is_open[d] = true;
  double other_each = 0.0;
  std::size_t other_count = 0;
  for (std::size_t d = 0; d < n; ++d) {
    if (d != pick && !is_open[d]) {
      other_each = post[d];
      ++other_count;
    }
  }
  ordered_json pj;
  pj["pick"] = options.pick;
  pj["p_pick"] = post[pick];
  pj["p_other_closed_each"] = other_each;
  pj["other_closed_count"] = other_count;
  if (n <= kFullPosteriorDoors) {
    pj["opened"] = ordered_json::array();
    for (std::size_t d : opened) pj["opened"].push_back(d + 1);
    pj["p"] = post;
  } else {
    pj["opened"] = nullptr;
    pj["p"] = nullptr;
  }
  r.json["posterior"] = std::move(pj);

  r.table = "Monty Hall, " + std::to_string(n) + " doors, host opens " + std::to_string(k) +
            "\n" + text_table(rows) + "\nposterior given the opened doors: pick (door " +
            std::to_string(options.pick) + ") " + fmt7(post[pick]) + ", each of " +
            std::to_string(other_count) + " other closed door(s) " + fmt7(other_each) + "\n";
  return r;
}

Report cmd_cat(const RunConfig& config, const CatOptions& options) {
  if (!std::isfinite(options.half_lives) || options.half_lives < 0.0) {
    throw UsageError("cat: --time must be a finite number >= 0");
  }
  const cat::Story story = cat::run_story(options.half_lives);
  const std::pair<const char*, const cat::CatUniverse*> stages[] = {
      {"initial", &story.initial}, {"waited", &story.waited}, {"seen", &story.seen}};

  Report r;
  r.json["command"] = "cat";
  r.json["seed"] = config.seed;
  r.json["half_lives"] = options.half_lives;
  ordered_json list = ordered_json::array();
  std::vector<std::vector<std::string>> rows = {{"stage", "purity", "P(alive)", "P(dead)",
                                                 "P(ignorant)", "P(happy)", "P(shocked)",
                                                 "agreement"}};
  for (const auto& [name, universe] : stages) {
    const cat::StageReport rep = cat::stage_report(*universe);
    ordered_json j;
    j["stage"] = name;
    const ordered_json body = cat::to_json(rep);
    for (const auto& [key, value] : body.items()) j[key] = value;
    list.push_back(std::move(j));
    rows.push_back({name, fmt7(rep.purity_universe), fmt7(rep.p_alive()), fmt7(rep.p_dead()),
                    fmt7(rep.p_observer(cat::kIgnorant)), fmt7(rep.p_observer(cat::kHappy)),
                    fmt7(rep.p_observer(cat::kShocked)), fmt7(rep.agreement)});
  }
  r.json["stages"] = std::move(list);
  r.table = "Nucleus, cat and observer after " + fmt7(options.half_lives) + " half-lives\n" +
            text_table(rows);
  return r;
}

Report cmd_measure(const RunConfig& config, const MeasureOptions& options) {
  const int given = options.spin.has_value() + options.sites.has_value() +
                    options.uniform.has_value() + options.site.has_value();
  if (given != 1) {
    throw UsageError("measure: give exactly one of --spin, --sites, --uniform, --site");
  }
  require_finite(options.angle_deg, "--angle");

  std::vector<qlin::Complex> amps;
  std::string system = "sites";
  if (options.spin) {
    amps = parse_amplitudes(*options.spin, "--spin");
    if (amps.size() != 2) throw UsageError("measure: --spin takes exactly two amplitudes");
    system = "spin";
  } else if (options.sites) {
    amps = parse_amplitudes(*options.sites, "--sites");
  } else if (options.uniform) {
    if (*options.uniform < 1) throw UsageError("measure: --uniform needs at least one site");
    amps.assign(*options.uniform, qlin::Complex(1.0, 0.0));
  } else {
    if (*options.site < 1 || *options.site > options.n_sites) {
      throw UsageError("measure: --site must lie in 1..--n-sites");
    }
    amps.assign(options.n_sites, qlin::Complex(0.0, 0.0));
    amps[*options.site - 1] = 1.0;
  }
  const std::size_t dim = amps.size();
  const std::string basis = options.basis.value_or(system == "spin" ? "spin" : "position");

  measurement::ProjectorSet m = [&] {
    if (basis == "spin") {
      if (dim != 2) throw UsageError("measure: spin basis needs a two-level state");
      return measurement::spin_projectors(Angle::from_degrees(options.angle_deg));
    }
    if (basis == "position") return measurement::position_projectors(dim);
    if (basis == "momentum") return measurement::ring_momentum_projectors(dim);
    throw UsageError("measure: unknown basis '" + basis + "' (spin, position or momentum)");
  }();

  double norm2 = 0.0;
  for (const auto& a : amps) norm2 += std::norm(a);
  const qlin::TensorSpace space = qlin::TensorSpace::single(dim);
  // Already-normalized input is kept verbatim so exact inputs stay exact.
  const bool rescaled = std::abs(norm2 - 1.0) > 1e-10;
  const qlin::PureState psi =
      rescaled ? qlin::PureState::normalized(space, amps) : qlin::PureState(space, amps);
  const qlin::DensityMatrix rho(psi);
  const auto outcomes = measurement::born_distribution(rho, m);
  const qlin::DensityMatrix after = measurement::dephasing_channel(rho, m);

  double max_offdiag = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (i != j) max_offdiag = std::max(max_offdiag, std::abs(after.matrix()(i, j)));
    }
  }

  Report r;
  r.json["command"] = "measure";
  r.json["seed"] = config.seed;
  r.json["system"] = system;
  r.json["dimension"] = dim;
  r.json["basis"] = basis;
  r.json["angle_deg"] = basis == "spin" ? ordered_json(options.angle_deg) : ordered_json(nullptr);
  r.json["rescaled"] = rescaled;
  ordered_json amp_json = ordered_json::array();
  for (const auto& a : psi.amplitudes()) amp_json.push_back({a.real(), a.imag()});
  r.json["amplitudes"] = std::move(amp_json);
  r.json["outcomes"] = measurement::to_json(outcomes);
  r.json["rho_before"] = qlin::to_json(rho.matrix());
  r.json["rho_after"] = qlin::to_json(after.matrix());
  r.json["purity_before"] = qlin::purity(rho);
  r.json["purity_after"] = qlin::purity(after);
  r.json["max_offdiag_after"] = max_offdiag;

  std::vector<std::vector<std::string>> rows = {{"outcome", "probability"}};
  for (const auto& o : outcomes) rows.push_back({fmt7(o.label.value()), fmt7(o.probability)});
  r.table = "Measurement of a " + std::to_string(dim) + "-level " + system + " state in the " +
            basis + " basis\n" + text_table(rows) + "\ndensity matrix before:\n" +
            matrix_text(rho.matrix()) + "after dephasing:\n" + matrix_text(after.matrix()) +
            "purity " + fmt7(qlin::purity(rho)) + " -> " + fmt7(qlin::purity(after)) + "\n";
  return r;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"bellsim: Bell inequalities, measurement and Monty Hall experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string format = "table";
  app.add_option("--seed", config.seed, "Master seed")->capture_default_str();
  app.add_option("--trials", config.trials, "Monte Carlo trials (0 disables sampling)")
      ->capture_default_str();
  app.add_option("--workers", config.workers, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->capture_default_str();
  app.add_option("--out", config.out, "Write the report here instead of stdout");

  std::function<Report()> action;
  auto add_defaults_flag = [](CLI::App* sub) {
    sub->add_flag("--defaults", "Run with the built-in reference settings");
  };

  double ta = 0.0, ta2 = 90.0, tb = 45.0, tb2 = -45.0;
  auto* q = app.add_subcommand("chsh-quantum", "CHSH value of the spin singlet");
  q->add_option("--theta-a", ta, "Analyzer A, degrees")->capture_default_str();
  q->add_option("--theta-a2", ta2, "Analyzer A', degrees")->capture_default_str();
  q->add_option("--theta-b", tb, "Analyzer B, degrees")->capture_default_str();
  q->add_option("--theta-b2", tb2, "Analyzer B', degrees")->capture_default_str();
  add_defaults_flag(q);
  q->callback([&] {
    action = [&] {
      ChshQuantumOptions o;
      o.settings = {Angle::from_degrees(ta), Angle::from_degrees(ta2), Angle::from_degrees(tb),
                    Angle::from_degrees(tb2)};
      return cmd_chsh_quantum(config, o);
    };
  });

  ChshLhvOptions lhv_opts;
  std::string model_path;
  std::vector<std::size_t> pairing;
  auto* l = app.add_subcommand("chsh-lhv", "CHSH value of local hidden variable models");
  auto* model_opt = l->add_option("--model", model_path, "Model JSON file");
  l->add_option("--random", lhv_opts.random_models, "Number of random models")
      ->excludes(model_opt);
  l->add_option("--max-lambdas", lhv_opts.max_lambdas, "Hidden states per random model, at most")
      ->capture_default_str();
  l->add_option("--pairing", pairing, "Setting indices a,a',b,b'")
      ->delimiter(',')
      ->expected(4);
  add_defaults_flag(l);
  l->callback([&] {
    action = [&] {
      if (!model_path.empty()) lhv_opts.model_path = model_path;
      if (!pairing.empty()) {
        lhv_opts.pairing = {pairing[0], pairing[1], pairing[2], pairing[3]};
      }
      return cmd_chsh_lhv(config, lhv_opts);
    };
  });

  CorrelationOptions corr_opts;
  auto* c = app.add_subcommand("correlations", "Singlet correlation table");
  c->add_option("--angles", corr_opts.extra_degrees, "Extra relative angles, degrees")
      ->delimiter(',');
  add_defaults_flag(c);
  c->callback([&] { action = [&] { return cmd_correlation_table(config, corr_opts); }; });

  MontyOptions monty_opts;
  std::size_t open_k = 0;
  auto* m = app.add_subcommand("monty", "Monty Hall with n doors");
  m->add_option("--doors", monty_opts.doors, "Number of doors")->capture_default_str();
  auto* open_opt = m->add_option("--open", open_k, "Doors the host opens");
  m->add_flag("--open-all-but-one", monty_opts.open_all_but_one,
              "Host leaves one other door closed")
      ->excludes(open_opt);
  m->add_option("--strategy", monty_opts.strategy, "stay, switch or both")
      ->check(CLI::IsMember({"stay", "switch", "both"}))
      ->capture_default_str();
  m->add_option("--pick", monty_opts.pick, "Player's door, 1-based")->capture_default_str();
  m->add_option("--opened", monty_opts.opened, "Opened doors for the posterior, 1-based")
      ->delimiter(',');
  add_defaults_flag(m);
  m->callback([&] {
    action = [&] {
      if (open_opt->count() > 0) monty_opts.open = open_k;
      return cmd_monty(config, monty_opts);
    };
  });

  CatOptions cat_opts;
  auto* k = app.add_subcommand("cat", "Nucleus, cat and observer story");
  k->add_option("--time", cat_opts.half_lives, "Waiting time in half-lives")
      ->capture_default_str();
  add_defaults_flag(k);
  k->callback([&] { action = [&] { return cmd_cat(config, cat_opts); }; });

  MeasureOptions meas_opts;
  std::string spin, sites, basis;
  std::size_t uniform = 0, site = 0;
  auto* me = app.add_subcommand("measure", "Born rule and dephasing for a pure state");
  auto* spin_opt = me->add_option("--spin", spin, "Two amplitudes 'a,b', each re or re:im");
  auto* sites_opt = me->add_option("--sites", sites, "Site amplitudes, each re or re:im");
  auto* uniform_opt = me->add_option("--uniform", uniform, "Uniform state over n sites");
  auto* site_opt = me->add_option("--site", site, "State localized at this site, 1-based");
  me->add_option("--n-sites", meas_opts.n_sites, "Ring size for --site")->capture_default_str();
  me->add_option("--basis", basis, "spin, position or momentum");
  me->add_option("--angle", meas_opts.angle_deg, "Spin analyzer angle, degrees")
      ->capture_default_str();
  add_defaults_flag(me);
  me->callback([&] {
    action = [&] {
      if (spin_opt->count() > 0) meas_opts.spin = spin;
      if (sites_opt->count() > 0) meas_opts.sites = sites;
      if (uniform_opt->count() > 0) meas_opts.uniform = uniform;
      if (site_opt->count() > 0) meas_opts.site = site;
      if (!basis.empty()) meas_opts.basis = basis;
      return cmd_measure(config, meas_opts);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    config.format = format_from_string(format);
    const std::string text = render(action(), config.format);
    if (config.out.empty()) {
      out << text;
    } else {
      std::ofstream file(config.out, std::ios::binary);
      if (!file) throw UsageError("cannot write '" + config.out + "'");
      file << text;
    }
    return 0;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace bellsim::cli
