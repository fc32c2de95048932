#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "geolab/qbf.hpp"
#include "geolab/reduction.hpp"

namespace geolab {

using json = nlohmann::json;

// Graph JSON: {"orientation": "directed"|"undirected", "heights": [...],
// "edges": [[a,b],...], "labels": {"0": "name", ...}}.
json graph_to_json(const GameGraph& g);
GameGraph graph_from_json(const json& j);

json variant_to_json(const Variant& v);
Variant variant_from_json(const json& j);

// Position JSON: graph fields plus {"variant": {...}, "tokens": {...},
// "to_move": "L"|"R"}; tokens is {"token": id} or {"left": id, "right": id}.
json position_to_json(const Position& p);
Position position_from_json(const json& j);

// QBF JSON: {"n": int, "clauses": [[lit,lit,lit],...]}, negative = negated.
json qbf_to_json(const QbfInstance& q);
QbfInstance qbf_from_json(const json& j);

json role_to_json(const VertexRole& r);
VertexRole role_from_json(const json& j);

// Artifact JSON: the position plus roles, claimed bipartition, kind, source.
json artifact_to_json(const ReductionArtifact& a);
ReductionArtifact artifact_from_json(const json& j);

// DOT export; vertex label "name:height", token markers T / L / R, vertices
// colored by role when roles are given.
std::string to_dot(const Position& p, const std::vector<VertexRole>* roles = nullptr);
std::string to_dot(const ReductionArtifact& a);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace geolab
