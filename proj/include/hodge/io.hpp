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

#ifndef HODGE_IO_HPP
#define HODGE_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "hodge/graph.hpp"
#include "hodge/strategic.hpp"

namespace hodge {

enum class ContributionScheme { kNone, kClassic, kExtended, kEqualSplit, kExplicit };

std::string_view scheme_name(ContributionScheme scheme);
std::optional<ContributionScheme> parse_scheme(std::string_view name);

// Contents of a graph spec file. `profile` holds the expanded contribution
// flows whatever scheme produced them.
struct GraphSpec {
  CooperationGraph graph;
  std::optional<int> players;
  std::optional<GameValues> game;
  ContributionScheme scheme = ContributionScheme::kNone;
  std::optional<ContributionProfile> profile;
};

// Throw ParseError for malformed JSON or fields of the wrong shape, and
// ValidationError when the content violates a graph or game invariant.
GraphSpec parse_graph_spec(const nlohmann::json& doc);
GraphSpec parse_graph_spec_text(std::string_view text);
GraphSpec load_graph_spec(const std::filesystem::path& path);
nlohmann::json serialize_graph_spec(const GraphSpec& spec);

StrategicGame parse_strategic_spec(const nlohmann::json& doc);
StrategicGame parse_strategic_spec_text(std::string_view text);
StrategicGame load_strategic_spec(const std::filesystem::path& path);
nlohmann::json serialize_strategic_spec(const StrategicGame& game);

std::string read_file(const std::filesystem::path& path);
// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);

}  // namespace hodge

#endif  // HODGE_IO_HPP
