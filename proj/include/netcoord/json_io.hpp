#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "netcoord/congestion.hpp"
#include "netcoord/dynamics.hpp"
#include "netcoord/game.hpp"
#include "netcoord/maxcut.hpp"
#include "netcoord/reduction.hpp"
#include "netcoord/sequence.hpp"
#include "netcoord/smoothing.hpp"

namespace netcoord {

using nlohmann::json;

// Game JSON: matrix entries are integer numerators over a shared
// "payoff_denominator"; optional "payoff_range" and "provenance" metadata.
json game_to_json(const GameInstance& game,
                  const std::optional<json>& provenance = std::nullopt);
GameInstance game_from_json(const json& j);

json spec_to_json(const PerturbationSpec& spec);
PerturbationSpec spec_from_json(const json& j);

// Trace JSON embeds the game so a trace file is self-contained.
json trace_to_json(const BRTrace& trace);
BRTrace trace_from_json(const json& j);

json cut_instance_to_json(const CutInstance& inst);
CutInstance cut_instance_from_json(const json& j);

// DIMACS-like interchange: "p mc <vertices> <edges>", then "t s t" when
// terminals exist, then "e u v num/den" lines.
std::string cut_instance_to_dimacs(const CutInstance& inst);
CutInstance cut_instance_from_dimacs(std::istream& in);

json cut_to_json(const VertexSet& s);
VertexSet cut_from_json(const json& j, int vertex_count);

json flip_trace_to_json(const FlipTrace& trace);

json profile_to_json(const StrategyProfile& profile);
StrategyProfile profile_from_json(const json& j);

json artifacts_to_json(const ReductionArtifacts& artifacts);
ReductionArtifacts artifacts_from_json(const json& j);

json congestion_game_to_json(const CongestionGame& game);
CongestionGame congestion_game_from_json(const json& j);

json congestion_trace_to_json(const CongestionTrace& trace);

// Stats report for the analyze subcommand: SequenceStats, block structure,
// critical subrange, ranks, and lemma-check booleans for a trace range.
json analysis_report(const BRTrace& trace, std::size_t begin, std::size_t end);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace netcoord
