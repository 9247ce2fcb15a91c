// Copyright 2026 The Hodge Allocation Authors
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

#include "hodge/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <optional>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hodge/calculus.hpp"
#include "hodge/coalition.hpp"
#include "hodge/io.hpp"
#include "hodge/markov.hpp"
#include "hodge/poisson.hpp"
#include "hodge/strategic.hpp"

namespace hodge {

namespace {

using nlohmann::json;

struct CommonOptions {
  std::string input;
  std::string output;
  int precision = 4;
};

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& out) const {
    std::vector<std::size_t> width(header_.size(), 0);
    auto measure = [&](const std::vector<std::string>& row) {
      for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) {
        width[c] = std::max(width[c], row[c].size());
      }
    };
    measure(header_);
    for (const auto& row : rows_) measure(row);
    auto emit = [&](const std::vector<std::string>& row) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c > 0) out << "  ";
        if (c == 0) {
          out << std::left << std::setw(static_cast<int>(width[c])) << row[c];
        } else {
          out << std::right << std::setw(static_cast<int>(width[c])) << row[c];
        }
      }
      out << '\n';
    };
    emit(header_);
    std::size_t total = 0;
    for (auto w : width) total += w + 2;
    out << std::string(total > 2 ? total - 2 : 0, '-') << '\n';
    for (const auto& row : rows_) emit(row);
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string fixed(double x, int precision) {
  // Avoid printing "-0.0000" for roundoff below the displayed precision.
  if (std::abs(x) < 0.5 * std::pow(10.0, -precision)) x = 0.0;
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << x;
  return s.str();
}

std::string player_name(Eigen::Index i) { return "player " + std::to_string(i + 1); }

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

json tolerances(const SolverConfig& config) {
  return {{"solver_tol", config.solver_tol}, {"check_tol", config.check_tol}};
}

void write_report(const CommonOptions& opts, const std::string& command,
                  const std::string& input_bytes, json results,
                  std::optional<std::uint64_t> seed, const SolverConfig& config) {
  if (opts.output.empty()) return;
  json report = {{"command", command},
                 {"inputs_digest", "sha256:" + sha256_hex(input_bytes)},
                 {"results", std::move(results)},
                 {"tolerances", tolerances(config)},
                 {"seed", seed ? json(*seed) : json(nullptr)}};
  std::ofstream file(opts.output);
  if (!file) {
    throw Error(ErrorCode::kInvalidArgument, "cannot write report to '" + opts.output + "'");
  }
  file << report.dump(2) << '\n';
}

const ContributionProfile& require_profile(const GraphSpec& spec, const char* command) {
  if (!spec.profile) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(command) + " needs contribution flows (a scheme or explicit flows)");
  }
  return *spec.profile;
}

const GameValues& require_game(const GraphSpec& spec, const char* command) {
  if (!spec.game) {
    throw Error(ErrorCode::kInvalidArgument, std::string(command) + " needs game values");
  }
  return *spec.game;
}

// Player columns selected by a 1-based --player option (0 means all).
std::vector<Eigen::Index> selected_players(int player, Eigen::Index n_players) {
  if (player == 0) {
    std::vector<Eigen::Index> all(static_cast<std::size_t>(n_players));
    std::iota(all.begin(), all.end(), Eigen::Index{0});
    return all;
  }
  if (player < 1 || player > n_players) {
    throw Error(ErrorCode::kPlayerOutOfRange, "player " + std::to_string(player) + " out of range");
  }
  return {player - 1};
}

int run_solve(const CommonOptions& opts, std::ostream& out) {
  const std::string bytes = read_file(opts.input);
  const GraphSpec spec = parse_graph_spec_text(bytes);
  const CooperationGraph& g = spec.graph;
  const ContributionProfile& profile = require_profile(spec, "solve");
  const SolverConfig config;
  const ComponentGameSolution sol = component_allocation(g, profile, config);
  const Eigen::VectorXd totals = sol.values.rowwise().sum();

  std::vector<std::string> header{"state"};
  for (Eigen::Index i = 0; i < profile.cols(); ++i) header.push_back("v_" + std::to_string(i + 1));
  header.push_back("sum");
  if (spec.game) header.push_back("v");
  Table table(header);
  for (StateIndex s = 0; s < g.num_states(); ++s) {
    std::vector<std::string> row{g.label(s)};
    for (Eigen::Index i = 0; i < profile.cols(); ++i) row.push_back(fixed(sol.values(s, i), opts.precision));
    row.push_back(fixed(totals[s], opts.precision));
    if (spec.game) row.push_back(fixed((*spec.game)[s], opts.precision));
    table.add(std::move(row));
  }
  table.print(out);

  std::optional<bool> efficient;
  if (spec.game) {
    const double gap =
        g.num_edges() == 0
            ? 0.0
            : (profile.rowwise().sum() - gradient(g, *spec.game)).cwiseAbs().maxCoeff();
    efficient = gap <= config.check_tol;
    out << "efficiency (sum of flows equals dv): " << (*efficient ? "yes" : "no") << '\n';
  }
  out << "max scaled residual: " << std::scientific << std::setprecision(2)
      << (sol.residuals.size() ? sol.residuals.maxCoeff() : 0.0) << std::defaultfloat << '\n';

  json values = json::object();
  for (StateIndex s = 0; s < g.num_states(); ++s) {
    values[g.label(s)] = to_std(sol.values.row(s).transpose());
  }
  json totals_json = json::object();
  for (StateIndex s = 0; s < g.num_states(); ++s) totals_json[g.label(s)] = totals[s];
  json results = {{"players", profile.cols()},
                  {"values", std::move(values)},
                  {"totals", std::move(totals_json)},
                  {"residuals", to_std(sol.residuals)},
                  {"efficient", efficient ? json(*efficient) : json(nullptr)}};
  write_report(opts, "solve", bytes, std::move(results), std::nullopt, config);
  return kExitOk;
}

struct SimulateOptions {
  std::int64_t paths = 10'000;
  std::uint64_t seed = 0;
  std::string from;
  std::string to;
  std::int64_t max_steps = 1'000'000;
  int player = 0;
  bool antithetic = false;
  int threads = 0;
};

int run_simulate(const CommonOptions& opts, const SimulateOptions& sim, std::ostream& out) {
  const std::string bytes = read_file(opts.input);
  const GraphSpec spec = parse_graph_spec_text(bytes);
  const CooperationGraph& g = spec.graph;
  const ContributionProfile& profile = require_profile(spec, "simulate");
  const StateIndex from = sim.from.empty() ? CooperationGraph::null_state() : g.state(sim.from);
  const StateIndex to = g.state(sim.to);
  const auto players = selected_players(sim.player, profile.cols());

  Eigen::MatrixXd flows(g.num_edges(), static_cast<Eigen::Index>(players.size()));
  for (std::size_t k = 0; k < players.size(); ++k) {
    flows.col(static_cast<Eigen::Index>(k)) = profile.col(players[k]);
  }
  EstimatorOptions options;
  options.n_paths = sim.paths;
  options.seed = sim.seed;
  options.max_steps = sim.max_steps;
  options.antithetic_loops = sim.antithetic;
  options.threads = sim.threads;
  const TransitionKernel kernel = build_kernel(g);
  const auto estimates = estimate_values(kernel, flows, from, to, options);

  out << "paths from '" << g.label(from) << "' to '" << g.label(to) << "', seed " << sim.seed
      << '\n';
  Table table({"player", "mean", "std error", "paths", "truncated"});
  json rows = json::array();
  for (std::size_t k = 0; k < players.size(); ++k) {
    const ValueEstimate& e = estimates[k];
    table.add({player_name(players[k]), fixed(e.mean, opts.precision),
               fixed(e.standard_error, opts.precision), std::to_string(e.path_count),
               std::to_string(e.truncated_count)});
    rows.push_back({{"player", players[k] + 1},
                    {"mean", e.mean},
                    {"standard_error", e.standard_error},
                    {"path_count", e.path_count},
                    {"truncated_count", e.truncated_count}});
  }
  table.print(out);

  json results = {{"from", g.label(from)},
                  {"to", g.label(to)},
                  {"paths", sim.paths},
                  {"max_steps", sim.max_steps},
                  {"antithetic", sim.antithetic},
                  {"estimates", std::move(rows)}};
  write_report(opts, "simulate", bytes, std::move(results), sim.seed, SolverConfig{});
  return kExitOk;
}

int run_shapley(const CommonOptions& opts, std::ostream& out) {
  const std::string bytes = read_file(opts.input);
  const GraphSpec spec = parse_graph_spec_text(bytes);
  if (!spec.players) {
    throw Error(ErrorCode::kInvalidArgument, "shapley needs the number of players");
  }
  const int n = *spec.players;
  const CoalitionGame<double> v =
      coalition_game_from_graph(spec.graph, require_game(spec, "shapley"), n);
  const bool permutations = n <= kMaxPermutationPlayers;

  std::vector<std::string> header{"player", "closed form"};
  if (permutations) header.push_back("permutation");
  Table table(header);
  std::vector<double> closed, perm;
  for (int i = 0; i < n; ++i) {
    closed.push_back(shapley_closed_form(v, i));
    std::vector<std::string> row{player_name(i), fixed(closed.back(), opts.precision)};
    if (permutations) {
      perm.push_back(shapley_permutation(v, i));
      row.push_back(fixed(perm.back(), opts.precision));
    }
    table.add(std::move(row));
  }
  table.print(out);
  out << "grand coalition value: " << fixed(v(v.grand()), opts.precision) << '\n';

  json results = {{"players", n},
                  {"closed_form", closed},
                  {"permutation", permutations ? json(perm) : json(nullptr)},
                  {"grand_coalition_value", v(v.grand())}};
  write_report(opts, "shapley", bytes, std::move(results), std::nullopt, SolverConfig{});
  return kExitOk;
}

int run_decompose(const CommonOptions& opts, int player, std::ostream& out) {
  const std::string bytes = read_file(opts.input);
  const GraphSpec spec = parse_graph_spec_text(bytes);
  const CooperationGraph& g = spec.graph;
  const ContributionProfile& profile = require_profile(spec, "decompose");
  const SolverConfig config;
  const auto players = selected_players(player, profile.cols());

  std::vector<HodgeDecomposition> parts;
  for (Eigen::Index i : players) parts.push_back(hodge_decompose(g, profile.col(i), config));

  std::vector<std::string> header{"state"};
  for (Eigen::Index i : players) header.push_back("potential " + std::to_string(i + 1));
  Table potentials(header);
  for (StateIndex s = 0; s < g.num_states(); ++s) {
    std::vector<std::string> row{g.label(s)};
    for (const auto& part : parts) row.push_back(fixed(part.potential[s], opts.precision));
    potentials.add(std::move(row));
  }
  potentials.print(out);
  out << '\n';

  Table checks({"player", "|du|^2", "|h|^2", "max |d*h|", "<du,h>"});
  json rows = json::array();
  for (std::size_t k = 0; k < players.size(); ++k) {
    const HodgeDecomposition& part = parts[k];
    const double grad_norm = inner_product_flows(g, part.gradient_part, part.gradient_part);
    const double free_norm = inner_product_flows(g, part.divergence_free, part.divergence_free);
    const double div = g.num_states() ? divergence(g, part.divergence_free).cwiseAbs().maxCoeff() : 0.0;
    const double cross = inner_product_flows(g, part.gradient_part, part.divergence_free);
    std::ostringstream d, c;
    d << std::scientific << std::setprecision(2) << div;
    c << std::scientific << std::setprecision(2) << cross;
    checks.add({player_name(players[k]), fixed(grad_norm, opts.precision),
                fixed(free_norm, opts.precision), d.str(), c.str()});
    rows.push_back({{"player", players[k] + 1},
                    {"potential", to_std(part.potential)},
                    {"gradient_part", to_std(part.gradient_part)},
                    {"divergence_free", to_std(part.divergence_free)},
                    {"gradient_norm_sq", grad_norm},
                    {"divergence_free_norm_sq", free_norm},
                    {"max_abs_divergence", div},
                    {"cross_inner_product", cross}});
  }
  checks.print(out);

  json results = {{"states", g.labels()}, {"players", std::move(rows)}};
  write_report(opts, "decompose", bytes, std::move(results), std::nullopt, config);
  return kExitOk;
}

int run_threat(const CommonOptions& opts, std::ostream& out) {
  const std::string bytes = read_file(opts.input);
  const StrategicGame game = parse_strategic_spec_text(bytes);
  const SolverConfig config;
  const ThreatProfile threats = compute_threats(game);
  const CoalitionGame<double> v = coalition_game_from_threats(threats);
  const Eigen::VectorXd gamma = kn_value(threats);
  const Eigen::MatrixXd extension = kn_dynamic_extension(game, config);
  const int n = game.n_players();

  Table threat_table({"coalition", "threat", "v"});
  json threat_json = json::object();
  json game_json = json::object();
  for (Coalition s = 0; s <= grand_coalition(n); ++s) {
    threat_table.add({coalition_label(s), fixed(threats(s), opts.precision), fixed(v(s), opts.precision)});
    threat_json[coalition_label(s)] = threats(s);
    game_json[coalition_label(s)] = v(s);
  }
  threat_table.print(out);
  out << '\n';

  Table gamma_table({"player", "value"});
  for (int i = 0; i < n; ++i) gamma_table.add({player_name(i), fixed(gamma[i], opts.precision)});
  gamma_table.print(out);
  out << '\n';

  std::vector<std::string> header{"coalition"};
  for (int i = 0; i < n; ++i) header.push_back("V_" + std::to_string(i + 1));
  Table ext_table(header);
  json ext_json = json::object();
  for (Coalition s = 0; s <= grand_coalition(n); ++s) {
    std::vector<std::string> row{coalition_label(s)};
    for (int i = 0; i < n; ++i) row.push_back(fixed(extension(s, i), opts.precision));
    ext_table.add(std::move(row));
    ext_json[coalition_label(s)] = to_std(extension.row(s).transpose());
  }
  ext_table.print(out);

  json results = {{"players", n},
                  {"threats", std::move(threat_json)},
                  {"coalition_game", std::move(game_json)},
                  {"kn_value", to_std(gamma)},
                  {"dynamic_extension", std::move(ext_json)}};
  write_report(opts, "threat", bytes, std::move(results), std::nullopt, config);
  return kExitOk;
}

int run_revenue(const CommonOptions& opts, const std::string& at, const std::string& target,
                std::ostream& out) {
  const std::string bytes = read_file(opts.input);
  const GraphSpec spec = parse_graph_spec_text(bytes);
  const CooperationGraph& g = spec.graph;
  const ContributionProfile& profile = require_profile(spec, "revenue");
  const GameValues& v = require_game(spec, "revenue");
  const SolverConfig config;
  const StateIndex f = g.state(target);

  const double expected = expected_revenue(g, v, profile, f, config);
  out << "expected revenue from '" << g.label(CooperationGraph::null_state()) << "' to '"
      << g.label(f) << "': " << fixed(expected, opts.precision) << '\n';
  json results = {{"target", g.label(f)}, {"expected_revenue", expected}};
  if (!at.empty()) {
    const StateIndex t = g.state(at);
    const double mid = mid_project_revenue(g, v, profile, t, f, config);
    out << "mid-project revenue from '" << g.label(t) << "' to '" << g.label(f)
        << "': " << fixed(mid, opts.precision) << '\n';
    results["at"] = g.label(t);
    results["mid_project_revenue"] = mid;
  }
  write_report(opts, "revenue", bytes, std::move(results), std::nullopt, config);
  return kExitOk;
}

void add_common(CLI::App* sub, CommonOptions& opts) {
  sub->add_option("-i,--input", opts.input, "Input spec file (JSON)")->required();
  sub->add_option("-o,--output", opts.output, "Write a JSON report to this path");
  sub->add_option("--precision", opts.precision, "Decimals in the printed tables")
      ->check(CLI::Range(0, 17));
}

}  // namespace

int run_command(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fair reward allocation for cooperative games on weighted graphs", "hodge-alloc"};
  app.require_subcommand(1);

  CommonOptions opts;
  SimulateOptions sim;
  int player = 0;
  std::string at, target;

  auto* solve = app.add_subcommand("solve", "Component games of every player (Poisson solve)");
  add_common(solve, opts);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo path-integral estimate");
  add_common(simulate, opts);
  simulate->add_option("--paths", sim.paths, "Number of sampled paths")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "Master seed");
  simulate->add_option("--from", sim.from, "Start state (default: the null state)");
  simulate->add_option("--to", sim.to, "Target state")->required();
  simulate->add_option("--max-steps", sim.max_steps, "Per-path step cap")->check(CLI::PositiveNumber);
  simulate->add_option("--player", sim.player, "Only this player (1-based)");
  simulate->add_flag("--antithetic", sim.antithetic, "Loop-reversal antithetic scoring");
  simulate->add_option("--threads", sim.threads, "Worker threads (0: all cores)");

  auto* shapley = app.add_subcommand("shapley", "Classical Shapley value of a coalition game");
  add_common(shapley, opts);

  auto* decompose = app.add_subcommand("decompose", "Hodge decomposition of contribution flows");
  add_common(decompose, opts);
  decompose->add_option("--player", player, "Only this player (1-based)");

  auto* threat = app.add_subcommand("threat", "Threat powers and the Kohlberg-Neyman value");
  add_common(threat, opts);

  auto* revenue = app.add_subcommand("revenue", "Entrepreneur's expected revenue");
  add_common(revenue, opts);
  revenue->add_option("--target", target, "Project completion state")->required();
  revenue->add_option("--at", at, "Current project state");

  std::vector<std::string> reversed_args(args.rbegin(), args.rend());
  try {
    app.parse(reversed_args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsageError;
  }

  try {
    if (solve->parsed()) return run_solve(opts, out);
    if (simulate->parsed()) return run_simulate(opts, sim, out);
    if (shapley->parsed()) return run_shapley(opts, out);
    if (decompose->parsed()) return run_decompose(opts, player, out);
    if (threat->parsed()) return run_threat(opts, out);
    if (revenue->parsed()) return run_revenue(opts, at, target, out);
  } catch (const Error& e) {
    err << "error: " << error_name(e.code()) << ": " << e.what() << '\n';
    return kExitComputationError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitComputationError;
  }
  err << app.help();
  return kExitUsageError;
}

}  // namespace hodge
