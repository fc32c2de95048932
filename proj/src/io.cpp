#include "geolab/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace geolab {

json graph_to_json(const GameGraph& g) {
  json j;
  j["orientation"] = g.directed() ? "directed" : "undirected";
  std::vector<int> heights;
  for (VertexId v = 0; v < g.vertex_count(); ++v) heights.push_back(g.height(v));
  j["heights"] = heights;
  json edges = json::array();
  for (auto [a, b] : g.links()) edges.push_back({a, b});
  j["edges"] = edges;
  json labels = json::object();
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (auto l = g.label(v)) labels[std::to_string(v)] = *l;
  if (!labels.empty()) j["labels"] = labels;
  return j;
}

GameGraph graph_from_json(const json& j) {
  std::string o = j.at("orientation").get<std::string>();
  if (o != "directed" && o != "undirected") throw GraphError("bad orientation: " + o);
  std::vector<int> heights = j.at("heights").get<std::vector<int>>();
  std::vector<std::pair<VertexId, VertexId>> links;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw GraphError("bad edge entry");
    links.push_back({e[0].get<VertexId>(), e[1].get<VertexId>()});
  }
  GameGraph g(o == "directed" ? Orientation::Directed : Orientation::Undirected, heights, links);
  if (j.contains("labels"))
    for (auto& [k, v] : j.at("labels").items()) g.set_label(std::stoi(k), v.get<std::string>());
  return g;
}

json variant_to_json(const Variant& v) {
  return json{{"orientation", v.orientation == Orientation::Directed ? "directed" : "undirected"},
              {"partisanship", v.partisanship == Partisanship::Impartial ? "impartial" : "partizan"},
              {"deletion", v.deletion == DeletionRule::Restricted ? "restricted" : "free"},
              {"max_height", v.max_height}};
}

Variant variant_from_json(const json& j) {
  if (j.is_string()) return Variant::parse(j.get<std::string>());
  Variant v;
  std::string o = j.at("orientation").get<std::string>();
  std::string p = j.at("partisanship").get<std::string>();
  std::string d = j.at("deletion").get<std::string>();
  if (o == "directed") v.orientation = Orientation::Directed;
  else if (o == "undirected") v.orientation = Orientation::Undirected;
  else throw GraphError("bad orientation: " + o);
  if (p == "impartial") v.partisanship = Partisanship::Impartial;
  else if (p == "partizan") v.partisanship = Partisanship::Partizan;
  else throw GraphError("bad partisanship: " + p);
  if (d == "restricted") v.deletion = DeletionRule::Restricted;
  else if (d == "free") v.deletion = DeletionRule::Free;
  else throw GraphError("bad deletion rule: " + d);
  v.max_height = j.value("max_height", 1);
  return v;
}

json position_to_json(const Position& p) {
  json j = graph_to_json(p.graph);
  j["variant"] = variant_to_json(p.variant);
  if (p.impartial()) j["tokens"] = json{{"token", p.left_token}};
  else j["tokens"] = json{{"left", p.left_token}, {"right", p.right_token}};
  j["to_move"] = p.to_move == PlayerSide::Left ? "L" : "R";
  return j;
}

Position position_from_json(const json& j) {
  Position p;
  p.graph = graph_from_json(j);
  p.variant = variant_from_json(j.at("variant"));
  const json& tokens = j.at("tokens");
  if (tokens.contains("token")) {
    p.left_token = tokens.at("token").get<VertexId>();
    p.right_token = -1;
  } else {
    p.left_token = tokens.at("left").get<VertexId>();
    p.right_token = tokens.at("right").get<VertexId>();
  }
  std::string tm = j.value("to_move", "L");
  p.to_move = tm == "R" ? PlayerSide::Right : PlayerSide::Left;
  p.validate();
  return p;
}

json qbf_to_json(const QbfInstance& q) {
  json clauses = json::array();
  for (const Clause& c : q.clauses) clauses.push_back({c[0], c[1], c[2]});
  return json{{"n", q.num_vars}, {"clauses", clauses}};
}

QbfInstance qbf_from_json(const json& j) {
  QbfInstance q;
  q.num_vars = j.at("n").get<int>();
  for (const auto& c : j.at("clauses")) {
    if (!c.is_array() || c.size() != 3)
      throw QbfError(QbfErrorCode::Non3Cnf, 0, "clause must have exactly 3 literals");
    q.clauses.push_back({c[0].get<Lit>(), c[1].get<Lit>(), c[2].get<Lit>()});
  }
  q.validate();
  return q;
}

json role_to_json(const VertexRole& r) {
  json j{{"kind", role_kind_name(r.kind)}};
  if (r.index) j["index"] = r.index;
  if (r.slot) j["slot"] = r.slot;
  if (r.literal) j["literal"] = r.literal;
  if (r.copy) j["copy"] = r.copy;
  if (!r.tag.empty()) j["tag"] = r.tag;
  return j;
}

VertexRole role_from_json(const json& j) {
  VertexRole r;
  std::string kind = j.at("kind").get<std::string>();
  bool found = false;
  for (int k = 0; k <= static_cast<int>(VertexRole::Kind::Other); ++k) {
    if (kind == role_kind_name(static_cast<VertexRole::Kind>(k))) {
      r.kind = static_cast<VertexRole::Kind>(k);
      found = true;
      break;
    }
  }
  if (!found) throw GraphError("bad role kind: " + kind);
  r.index = j.value("index", 0);
  r.slot = j.value("slot", 0);
  r.literal = j.value("literal", 0);
  r.copy = j.value("copy", 0);
  r.tag = j.value("tag", "");
  return r;
}

json artifact_to_json(const ReductionArtifact& a) {
  json j = position_to_json(a.position);
  j["kind"] = reduction_kind_name(a.kind);
  json roles = json::object();
  for (VertexId v = 0; v < static_cast<VertexId>(a.roles.size()); ++v)
    roles[std::to_string(v)] = role_to_json(a.roles[v]);
  j["roles"] = roles;
  if (a.claimed_bipartition)
    j["bipartition"] = json{{"a", a.claimed_bipartition->part_a}, {"b", a.claimed_bipartition->part_b}};
  if (a.source_qbf) j["source"] = qbf_to_json(*a.source_qbf);
  if (a.source_position) j["source"] = position_to_json(*a.source_position);
  return j;
}

ReductionArtifact artifact_from_json(const json& j) {
  ReductionArtifact a;
  a.kind = parse_reduction_kind(j.at("kind").get<std::string>());
  a.position = position_from_json(j);
  a.roles.resize(a.position.graph.vertex_count());
  for (auto& [k, v] : j.at("roles").items()) a.roles.at(std::stoi(k)) = role_from_json(v);
  if (j.contains("bipartition")) {
    Bipartition parts;
    parts.part_a = j["bipartition"].at("a").get<std::vector<VertexId>>();
    parts.part_b = j["bipartition"].at("b").get<std::vector<VertexId>>();
    a.claimed_bipartition = std::move(parts);
  }
  if (j.contains("source")) {
    const json& s = j["source"];
    if (s.contains("clauses")) a.source_qbf = qbf_from_json(s);
    else a.source_position = position_from_json(s);
  }
  return a;
}

namespace {

const char* role_color(VertexRole::Kind k) {
  switch (k) {
    case VertexRole::Kind::Variable: return "lightblue";
    case VertexRole::Kind::Clause: return "gold";
    case VertexRole::Kind::Delay: return "palegreen";
    case VertexRole::Kind::ClauseDeletion: return "salmon";
    case VertexRole::Kind::Escape: return "plum";
    case VertexRole::Kind::Linker: return "khaki";
    case VertexRole::Kind::ClauseConnector: return "lightcyan";
    case VertexRole::Kind::Exit: return "orange";
    case VertexRole::Kind::Prize: return "red";
    case VertexRole::Kind::WinPath: return "palegoldenrod";
    case VertexRole::Kind::Meta: return "lightblue";
    case VertexRole::Kind::Other: return "lightgray";
  }
  return "white";
}

}  // namespace

std::string to_dot(const Position& p, const std::vector<VertexRole>* roles) {
  std::ostringstream out;
  bool dir = p.graph.directed();
  out << (dir ? "digraph" : "graph") << " position {\n";
  out << "  node [shape=circle];\n";
  for (VertexId v = 0; v < p.graph.vertex_count(); ++v) {
    if (!p.graph.live(v)) continue;
    std::string marker;
    if (p.impartial()) {
      if (v == p.left_token) marker = " T";
    } else {
      if (v == p.left_token) marker = " L";
      if (v == p.right_token) marker = " R";
    }
    out << "  v" << v << " [label=\"" << p.graph.display_name(v) << ":" << p.graph.height(v)
        << marker << "\"";
    if (roles && v < static_cast<VertexId>(roles->size()))
      out << ", style=filled, fillcolor=" << role_color((*roles)[v].kind);
    if (!marker.empty()) out << ", penwidth=3";
    out << "];\n";
  }
  for (auto [a, b] : p.graph.links()) {
    if (!p.graph.live(a) || !p.graph.live(b)) continue;
    out << "  v" << a << (dir ? " -> " : " -- ") << "v" << b << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_dot(const ReductionArtifact& a) { return to_dot(a.position, &a.roles); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GraphError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GraphError("cannot write file: " + path);
  out << content;
}

}  // namespace geolab
