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

#include <gtest/gtest.h>

#include <string>

#include "hodge/calculus.hpp"
#include "hodge/coalition.hpp"
#include "hodge/io.hpp"
#include "hodge/poisson.hpp"
#include "test_support.hpp"

namespace hodge {
namespace {

using nlohmann::json;

std::string data(const std::string& name) { return std::string(HODGE_TEST_DATA_DIR) + "/" + name; }

ErrorCode parse_error_code(const std::string& text) {
  try {
    parse_graph_spec_text(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "parsed: " << text;
  return ErrorCode::kInvalidArgument;
}

void expect_same(const GraphSpec& a, const GraphSpec& b) {
  EXPECT_TRUE(a.graph == b.graph);
  EXPECT_EQ(a.players, b.players);
  EXPECT_EQ(a.scheme, b.scheme);
  ASSERT_EQ(a.game.has_value(), b.game.has_value());
  if (a.game) EXPECT_EQ(*a.game, *b.game);
  ASSERT_EQ(a.profile.has_value(), b.profile.has_value());
  if (a.profile) EXPECT_EQ(*a.profile, *b.profile);
}

TEST(GraphSpecTest, MinimalFile) {
  const GraphSpec spec = parse_graph_spec_text(R"({"states": [{"label": "e", "null": true}, "A"],
                                                  "edges": [{"from": "e", "to": "A"}]})");
  EXPECT_EQ(spec.graph.num_states(), 2);
  EXPECT_EQ(spec.graph.num_edges(), 1);
  EXPECT_EQ(spec.graph.lambda()[0], 1.0);
  EXPECT_FALSE(spec.game.has_value());
  EXPECT_FALSE(spec.profile.has_value());
  EXPECT_EQ(spec.scheme, ContributionScheme::kNone);

  const GraphSpec named = parse_graph_spec_text(R"({"null": "e", "states": ["A", "e"],
                                                   "edges": [{"from": "A", "to": "e", "lambda": 2}]})");
  EXPECT_EQ(named.graph.label(0), "e");
}

TEST(GraphSpecTest, ValidationErrors) {
  EXPECT_EQ(parse_error_code(R"({"states": [{"label": "e", "null": true}, "A"],
                                 "edges": [{"from": "e", "to": "A", "lambda": -1}]})"),
            ErrorCode::kValidationError);
  EXPECT_EQ(parse_error_code(R"({"states": ["e", "A"], "edges": []})"), ErrorCode::kValidationError);
  EXPECT_EQ(parse_error_code(R"({"null": "e", "states": ["e", "A"],
                                 "edges": [{"from": "e", "to": "A"}, {"from": "A", "to": "e"}]})"),
            ErrorCode::kValidationError);
  EXPECT_EQ(parse_error_code(R"({"null": "e", "states": ["e", "A"], "game": {"e": 1}})"),
            ErrorCode::kValidationError);
  EXPECT_EQ(parse_error_code(R"({"null": "e", "states": ["e", "A"], "game": {"B": 1}})"),
            ErrorCode::kValidationError);
  try {
    parse_graph_spec_text(R"({"null": "e", "states": ["e", "A"], "edges": [{"from": "e", "to": "A", "lambda": 0}]})");
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("NonpositiveWeight"), std::string::npos);
  }
}

TEST(GraphSpecTest, ParseErrors) {
  EXPECT_EQ(parse_error_code("{\n\"states\": [\n}"), ErrorCode::kParseError);
  try {
    parse_graph_spec_text("{\n\"states\": [\n}");
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  EXPECT_EQ(parse_error_code(R"({"states": "e"})"), ErrorCode::kParseError);
  EXPECT_EQ(parse_error_code(R"({"null": "e", "states": ["e", 3]})"), ErrorCode::kParseError);
  EXPECT_EQ(parse_error_code(R"({"null": "e", "states": ["e", "A"], "edges": [{"from": "e"}]})"),
            ErrorCode::kParseError);
  try {
    parse_graph_spec_text(R"({"null": "e", "states": ["e", "A"], "edges": [{"from": "e", "to": "A", "lambda": "x"}]})");
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("edges[0].lambda"), std::string::npos) << e.what();
  }
  EXPECT_EQ(parse_error_code(R"({"generator": {"type": "hypercube", "players": 2}, "states": []})"),
            ErrorCode::kParseError);
  EXPECT_EQ(parse_error_code(R"({"generator": {"type": "cube", "players": 2}})"), ErrorCode::kParseError);
  EXPECT_EQ(parse_error_code(R"({"generator": {"type": "hypercube", "players": 2}, "scheme": "classic"})"),
            ErrorCode::kParseError);
  EXPECT_EQ(parse_error_code(R"({"players": 2, "generator": {"type": "hypercube"}, "game": {}, "scheme": "fair"})"),
            ErrorCode::kParseError);
  EXPECT_THROW(load_graph_spec(data("missing.json")), Error);
}

TEST(GraphSpecTest, SchemesExpand) {
  const GraphSpec glove = load_graph_spec(data("glove.json"));
  ASSERT_TRUE(glove.profile.has_value());
  EXPECT_EQ(glove.scheme, ContributionScheme::kClassic);
  const auto v = coalition_game_from_graph(glove.graph, *glove.game, 3);
  EXPECT_EQ(*glove.profile, classic_profile(glove.graph, v));

  const GraphSpec ext = load_graph_spec(data("glove_extended.json"));
  EXPECT_EQ(ext.graph.num_edges(), 19);
  EXPECT_EQ(*ext.profile, extended_profile(ext.graph, coalition_game_from_graph(ext.graph, *ext.game, 3)));

  const GraphSpec research = load_graph_spec(data("research.json"));
  EXPECT_EQ(*research.profile, equal_split_flow(research.graph, *research.game, 3));
}

TEST(GraphSpecTest, ExplicitFlows) {
  const GraphSpec spec = load_graph_spec(data("triangle.json"));
  EXPECT_EQ(spec.scheme, ContributionScheme::kExplicit);
  ASSERT_TRUE(spec.profile.has_value());
  const CooperationGraph& g = spec.graph;
  // "A -> C" is given against the stored orientation C -> A.
  EXPECT_EQ(flow_value(g, spec.profile->col(0), g.state("A"), g.state("C")), 1.5);
  EXPECT_EQ(flow_value(g, spec.profile->col(1), g.state("C"), g.state("A")), 0.25);
  EXPECT_EQ(g.mu()[g.state("B")], 2.0);
  EXPECT_EQ(parse_error_code(R"({"null": "e", "states": ["e", "A", "B"], "edges": [{"from": "e", "to": "A"}],
                                 "flows": [[{"from": "A", "to": "B", "value": 1}]]})"),
            ErrorCode::kValidationError);
  EXPECT_EQ(parse_error_code(R"({"players": 2, "null": "e", "states": ["e", "A"], "edges": [{"from": "e", "to": "A"}],
                                 "flows": [[{"from": "e", "to": "A", "value": 1}]]})"),
            ErrorCode::kValidationError);
}

TEST(GraphSpecTest, RoundTripFixtures) {
  for (const char* name : {"glove.json", "glove_extended.json", "research.json", "triangle.json"}) {
    SCOPED_TRACE(name);
    const GraphSpec spec = load_graph_spec(data(name));
    const json doc = serialize_graph_spec(spec);
    expect_same(spec, parse_graph_spec(doc));
    expect_same(spec, parse_graph_spec_text(doc.dump()));
  }
}

TEST(GraphSpecTest, RoundTripRandom) {
  testing::Rng rng(1);
  testing::GraphShape shape;
  shape.random_mu = true;
  for (int trial = 0; trial < 50; ++trial) {
    const CooperationGraph g = testing::random_connected_graph(rng, shape);
    GraphSpec spec{g, std::nullopt, std::nullopt, ContributionScheme::kNone, std::nullopt};
    if (trial % 2 == 0) spec.game = testing::random_game_values(rng, g);
    if (trial % 3 != 0) {
      const int n = testing::uniform_int(rng, 1, 4);
      spec.scheme = ContributionScheme::kExplicit;
      spec.profile = testing::random_matrix(rng, g.num_edges(), n, 1e3);
      if (trial % 2 == 1) spec.players = n;
    }
    expect_same(spec, parse_graph_spec_text(serialize_graph_spec(spec).dump()));
  }
}

TEST(StrategicSpecTest, LoadAndRoundTrip) {
  const StrategicGame g = load_strategic_spec(data("common_interest.json"));
  EXPECT_EQ(g.n_players(), 2);
  const std::vector<int> both_first{0, 0};
  const std::vector<int> mixed{0, 1};
  EXPECT_EQ(g.payoff(0, g.profile_index(both_first)), 5.0);
  EXPECT_EQ(g.payoff(1, g.profile_index(mixed)), 1.0);
  EXPECT_TRUE(parse_strategic_spec(serialize_strategic_spec(g)) == g);

  testing::Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const StrategicGame r = testing::random_strategic_game(rng, testing::uniform_int(rng, 1, 4), 3);
    EXPECT_TRUE(parse_strategic_spec_text(serialize_strategic_spec(r).dump()) == r);
  }
}

TEST(StrategicSpecTest, Errors) {
  auto code = [](const std::string& text) {
    try {
      parse_strategic_spec_text(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInvalidArgument;
  };
  EXPECT_EQ(code(R"({"players": 2, "strategies": [2], "payoffs": []})"), ErrorCode::kParseError);
  EXPECT_EQ(code(R"({"players": 1, "strategies": [2], "payoffs": [[1, 2, 3]]})"), ErrorCode::kParseError);
  EXPECT_EQ(code(R"({"players": 1, "strategies": [0], "payoffs": [[]]})"), ErrorCode::kParseError);
  EXPECT_EQ(code(R"({"players": 1, "strategies": [2], "payoffs": [[1, "x"]]})"), ErrorCode::kParseError);
  EXPECT_EQ(code(R"({"players": 1, "strategies": [2], "payoffs": [[1, 2]]})"), ErrorCode::kInvalidArgument);
}

TEST(DigestTest, KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

}  // namespace
}  // namespace hodge
