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

#include "hodge/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

#include "hodge/calculus.hpp"
#include "hodge/coalition.hpp"

namespace hodge {

using nlohmann::json;

std::string_view scheme_name(ContributionScheme scheme) {
  switch (scheme) {
    case ContributionScheme::kNone: return "none";
    case ContributionScheme::kClassic: return "classic";
    case ContributionScheme::kExtended: return "extended";
    case ContributionScheme::kEqualSplit: return "equal_split";
    case ContributionScheme::kExplicit: return "explicit";
  }
  return "none";
}

std::optional<ContributionScheme> parse_scheme(std::string_view name) {
  for (auto s : {ContributionScheme::kNone, ContributionScheme::kClassic,
                 ContributionScheme::kExtended, ContributionScheme::kEqualSplit,
                 ContributionScheme::kExplicit}) {
    if (scheme_name(s) == name) return s;
  }
  return std::nullopt;
}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::kParseError, "field '" + field + "': " + what);
}

const json* optional_member(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

const json& member(const json& obj, const char* key, const std::string& path) {
  if (const json* j = optional_member(obj, key)) return *j;
  fail(path.empty() ? key : path + "." + key, "is required");
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

const json& as_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  return j;
}

std::string indexed(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

// Re-labels graph and game failures as ValidationError.
template <typename Fn>
auto validating(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParseError || e.code() == ErrorCode::kValidationError) throw;
    throw Error(ErrorCode::kValidationError,
                std::string(error_name(e.code())) + ": " + e.what());
  }
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw Error(ErrorCode::kParseError, "line " + std::to_string(line) + ": " + e.what());
  }
}

CooperationGraph parse_generated_graph(const json& gen, std::optional<int> players) {
  as_object(gen, "generator");
  const std::string type = as_string(member(gen, "type", "generator"), "generator.type");
  int n = 0;
  if (const json* p = optional_member(gen, "players")) {
    n = as_int(*p, "generator.players");
  } else if (players) {
    n = *players;
  } else {
    fail("generator.players", "is required when the top-level players is absent");
  }
  return validating([&] {
    if (type == "hypercube") return build_hypercube(n);
    if (type == "inclusion") return build_inclusion_graph(n);
    fail("generator.type", "expected 'hypercube' or 'inclusion'");
  });
}

CooperationGraph parse_explicit_graph(const json& doc, const std::map<std::string, double>& mu) {
  std::optional<std::string> null_label;
  if (const json* n = optional_member(doc, "null")) null_label = as_string(*n, "null");

  std::vector<RawState> states;
  const json& raw_states = as_array(member(doc, "states", ""), "states");
  for (std::size_t i = 0; i < raw_states.size(); ++i) {
    const json& item = raw_states[i];
    const std::string path = indexed("states", i);
    RawState s;
    if (item.is_string()) {
      s.label = item.get<std::string>();
    } else if (item.is_object()) {
      s.label = as_string(member(item, "label", path), path + ".label");
      if (const json* flag = optional_member(item, "null")) {
        if (!flag->is_boolean()) fail(path + ".null", "expected a boolean");
        s.is_null = flag->get<bool>();
      }
    } else {
      fail(path, "expected a label or an object");
    }
    if (null_label && s.label == *null_label) s.is_null = true;
    states.push_back(std::move(s));
  }

  std::vector<RawEdge> edges;
  if (const json* raw_edges = optional_member(doc, "edges")) {
    as_array(*raw_edges, "edges");
    for (std::size_t i = 0; i < raw_edges->size(); ++i) {
      const json& item = as_object((*raw_edges)[i], indexed("edges", i));
      const std::string path = indexed("edges", i);
      RawEdge e;
      e.from = as_string(member(item, "from", path), path + ".from");
      e.to = as_string(member(item, "to", path), path + ".to");
      if (const json* w = optional_member(item, "lambda")) e.lambda = as_number(*w, path + ".lambda");
      edges.push_back(std::move(e));
    }
  }
  return validating([&] { return validate_graph(states, edges, mu); });
}

std::map<std::string, double> parse_label_numbers(const json& obj, const std::string& path) {
  as_object(obj, path);
  std::map<std::string, double> out;
  for (const auto& [key, value] : obj.items()) {
    out[key] = as_number(value, path + "." + key);
  }
  return out;
}

ContributionProfile parse_flows(const json& raw, const CooperationGraph& g) {
  as_array(raw, "flows");
  if (raw.empty()) fail("flows", "needs at least one player");
  ContributionProfile profile = ContributionProfile::Zero(g.num_edges(), static_cast<Eigen::Index>(raw.size()));
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const std::string ppath = indexed("flows", i);
    const json& entries = as_array(raw[i], ppath);
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const std::string path = indexed(ppath, k);
      const json& item = as_object(entries[k], path);
      const std::string from = as_string(member(item, "from", path), path + ".from");
      const std::string to = as_string(member(item, "to", path), path + ".to");
      const double value = as_number(member(item, "value", path), path + ".value");
      validating([&] {
        const auto inc = g.find_edge(g.state(from), g.state(to));
        if (!inc) throw Error(ErrorCode::kNotAnEdge, "flow on non-edge ('" + from + "', '" + to + "')");
        profile(inc->edge, static_cast<Eigen::Index>(i)) = inc->sign * value;
      });
    }
  }
  return profile;
}

}  // namespace

GraphSpec parse_graph_spec(const json& doc) {
  as_object(doc, "<root>");
  std::optional<int> players;
  if (const json* p = optional_member(doc, "players")) {
    players = as_int(*p, "players");
    if (*players < 1) fail("players", "must be at least 1");
  }
  std::map<std::string, double> mu;
  if (const json* m = optional_member(doc, "mu")) mu = parse_label_numbers(*m, "mu");

  const json* gen = optional_member(doc, "generator");
  if (gen && (optional_member(doc, "states") || optional_member(doc, "edges"))) {
    fail("generator", "cannot be combined with explicit states or edges");
  }
  CooperationGraph graph = gen ? parse_generated_graph(*gen, players) : parse_explicit_graph(doc, mu);
  if (gen && !mu.empty()) {
    graph = validating([&] {
      Eigen::VectorXd weights = graph.mu();
      for (const auto& [label, value] : mu) weights[graph.state(label)] = value;
      return graph.with_mu(std::move(weights));
    });
  }

  std::optional<GameValues> game;
  if (const json* raw = optional_member(doc, "game")) {
    const auto values = parse_label_numbers(*raw, "game");
    game = validating([&] {
      GameValues v = GameValues::Zero(graph.num_states());
      for (const auto& [label, value] : values) v[graph.state(label)] = value;
      check_game_values(graph, v);
      return v;
    });
  }

  ContributionScheme scheme = ContributionScheme::kNone;
  if (const json* raw = optional_member(doc, "scheme")) {
    const auto parsed = parse_scheme(as_string(*raw, "scheme"));
    if (!parsed) fail("scheme", "expected classic, extended, equal_split, explicit or none");
    scheme = *parsed;
  }
  const json* flows = optional_member(doc, "flows");
  if (flows && scheme == ContributionScheme::kNone) scheme = ContributionScheme::kExplicit;
  if (flows && scheme != ContributionScheme::kExplicit) {
    fail("flows", "only allowed with the explicit scheme");
  }

  std::optional<ContributionProfile> profile;
  auto need_players = [&] {
    if (!players) fail("players", "is required by the '" + std::string(scheme_name(scheme)) + "' scheme");
    return *players;
  };
  auto need_game = [&]() -> const GameValues& {
    if (!game) fail("game", "is required by the '" + std::string(scheme_name(scheme)) + "' scheme");
    return *game;
  };
  switch (scheme) {
    case ContributionScheme::kNone: break;
    case ContributionScheme::kClassic: {
      const int n = need_players();
      const GameValues& v = need_game();
      profile = validating([&] { return classic_profile(graph, coalition_game_from_graph(graph, v, n)); });
      break;
    }
    case ContributionScheme::kExtended: {
      const int n = need_players();
      const GameValues& v = need_game();
      profile = validating([&] { return extended_profile(graph, coalition_game_from_graph(graph, v, n)); });
      break;
    }
    case ContributionScheme::kEqualSplit: {
      const int n = need_players();
      const GameValues& v = need_game();
      profile = validating([&] { return equal_split_flow(graph, v, n); });
      break;
    }
    case ContributionScheme::kExplicit: {
      if (!flows) fail("flows", "is required by the 'explicit' scheme");
      profile = parse_flows(*flows, graph);
      if (players && *players != profile->cols()) {
        throw Error(ErrorCode::kValidationError,
                    "DimensionMismatch: flows list " + std::to_string(profile->cols()) +
                        " players but players = " + std::to_string(*players));
      }
      break;
    }
  }

  return GraphSpec{std::move(graph), players, std::move(game), scheme, std::move(profile)};
}

GraphSpec parse_graph_spec_text(std::string_view text) { return parse_graph_spec(parse_text(text)); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kParseError, "cannot open '" + path.string() + "'");
  }
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

GraphSpec load_graph_spec(const std::filesystem::path& path) {
  return parse_graph_spec_text(read_file(path));
}

json serialize_graph_spec(const GraphSpec& spec) {
  const CooperationGraph& g = spec.graph;
  json doc = json::object();
  if (spec.players) doc["players"] = *spec.players;

  json states = json::array();
  for (StateIndex s = 0; s < g.num_states(); ++s) {
    json item = {{"label", g.label(s)}};
    if (s == CooperationGraph::null_state()) item["null"] = true;
    states.push_back(std::move(item));
  }
  doc["states"] = std::move(states);

  json edges = json::array();
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    edges.push_back({{"from", g.label(g.edge(e).from)},
                     {"to", g.label(g.edge(e).to)},
                     {"lambda", g.lambda()[e]}});
  }
  doc["edges"] = std::move(edges);

  if ((g.mu().array() != 1.0).any()) {
    json mu = json::object();
    for (StateIndex s = 0; s < g.num_states(); ++s) mu[g.label(s)] = g.mu()[s];
    doc["mu"] = std::move(mu);
  }
  if (spec.game) {
    json game = json::object();
    for (StateIndex s = 0; s < g.num_states(); ++s) game[g.label(s)] = (*spec.game)[s];
    doc["game"] = std::move(game);
  }
  if (spec.scheme != ContributionScheme::kNone) doc["scheme"] = std::string(scheme_name(spec.scheme));
  if (spec.scheme == ContributionScheme::kExplicit && spec.profile) {
    json flows = json::array();
    for (Eigen::Index i = 0; i < spec.profile->cols(); ++i) {
      json player = json::array();
      for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
        player.push_back({{"from", g.label(g.edge(e).from)},
                          {"to", g.label(g.edge(e).to)},
                          {"value", (*spec.profile)(e, i)}});
      }
      flows.push_back(std::move(player));
    }
    doc["flows"] = std::move(flows);
  }
  return doc;
}

namespace {

void flatten_payoffs(const json& node, const std::vector<int>& counts, std::size_t depth,
                     const std::string& path, std::vector<double>& out) {
  if (depth == counts.size()) {
    out.push_back(as_number(node, path));
    return;
  }
  as_array(node, path);
  if (node.size() != static_cast<std::size_t>(counts[depth])) {
    fail(path, "expected " + std::to_string(counts[depth]) + " entries");
  }
  for (std::size_t k = 0; k < node.size(); ++k) {
    flatten_payoffs(node[k], counts, depth + 1, indexed(path, k), out);
  }
}

json nest_payoffs(const StrategicGame& game, int player, std::size_t depth, Eigen::Index& next) {
  if (depth == game.strategy_counts().size()) return game.payoff(player, next++);
  json arr = json::array();
  for (int k = 0; k < game.strategy_counts()[depth]; ++k) {
    arr.push_back(nest_payoffs(game, player, depth + 1, next));
  }
  return arr;
}

}  // namespace

StrategicGame parse_strategic_spec(const json& doc) {
  as_object(doc, "<root>");
  const int n = as_int(member(doc, "players", ""), "players");
  if (n < 1) fail("players", "must be at least 1");
  const json& raw_counts = as_array(member(doc, "strategies", ""), "strategies");
  if (raw_counts.size() != static_cast<std::size_t>(n)) {
    fail("strategies", "expected one strategy count per player");
  }
  std::vector<int> counts;
  for (std::size_t i = 0; i < raw_counts.size(); ++i) {
    counts.push_back(as_int(raw_counts[i], indexed("strategies", i)));
    if (counts.back() < 1) fail(indexed("strategies", i), "must be at least 1");
  }
  const json& raw_payoffs = as_array(member(doc, "payoffs", ""), "payoffs");
  if (raw_payoffs.size() != static_cast<std::size_t>(n)) {
    fail("payoffs", "expected one payoff tensor per player");
  }
  Eigen::Index profiles = 1;
  for (int c : counts) profiles *= c;
  Eigen::MatrixXd payoffs(profiles, n);
  for (int i = 0; i < n; ++i) {
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(profiles));
    flatten_payoffs(raw_payoffs[static_cast<std::size_t>(i)], counts, 0,
                    indexed("payoffs", static_cast<std::size_t>(i)), flat);
    payoffs.col(i) = Eigen::Map<const Eigen::VectorXd>(flat.data(), profiles);
  }
  return validating([&] { return StrategicGame(counts, payoffs); });
}

StrategicGame parse_strategic_spec_text(std::string_view text) {
  return parse_strategic_spec(parse_text(text));
}

StrategicGame load_strategic_spec(const std::filesystem::path& path) {
  return parse_strategic_spec_text(read_file(path));
}

json serialize_strategic_spec(const StrategicGame& game) {
  json payoffs = json::array();
  for (int i = 0; i < game.n_players(); ++i) {
    Eigen::Index next = 0;
    payoffs.push_back(nest_payoffs(game, i, 0, next));
  }
  return {{"players", game.n_players()},
          {"strategies", game.strategy_counts()},
          {"payoffs", std::move(payoffs)}};
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kInvalidArgument, "SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

}  // namespace hodge
