#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "geolab/io.hpp"
#include "geolab/verify.hpp"

using namespace geolab;
using nlohmann::json;

namespace {

uint64_t env_seed(uint64_t fallback) {
  if (const char* s = std::getenv("GEOLAB_SEED")) return std::strtoull(s, nullptr, 10);
  return fallback;
}

VertexId resolve_vertex(const GameGraph& g, const std::string& name) {
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (auto l = g.label(v); l && *l == name) return v;
  try {
    size_t pos = 0;
    int id = std::stoi(name, &pos);
    if (pos == name.size() && id >= 0 && id < g.vertex_count()) return id;
  } catch (...) {
  }
  throw GraphError("unknown vertex: " + name);
}

void render_position(const Position& p, std::ostream& out) {
  out << "variant " << p.variant.name() << ", " << side_name(p.to_move) << " to move\n";
  for (VertexId v = 0; v < p.graph.vertex_count(); ++v) {
    if (!p.graph.live(v)) continue;
    out << "  [" << v << "] " << p.graph.display_name(v) << ":" << p.graph.height(v);
    if (p.impartial()) {
      if (v == p.left_token) out << "  <T>";
    } else {
      if (v == p.left_token) out << "  <L>";
      if (v == p.right_token) out << "  <R>";
    }
    auto nb = p.graph.neighbors(v, Direction::Successors);
    out << "  ->";
    for (VertexId w : nb) out << " " << p.graph.display_name(w);
    out << "\n";
  }
}

int do_solve(const std::string& file, uint64_t budget, size_t table_cap, bool want_pv,
             const std::string& draw_on, const std::string& method,
             const std::string& variant_override) {
  Position p;
  try {
    p = position_from_json(json::parse(read_file(file)));
    if (!variant_override.empty()) {
      p.variant = Variant::parse(variant_override);
      p.validate();
    }
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (method == "matching" || (method == "auto" && matching_solver_applies(p))) {
      if (draw_on.empty() && matching_solver_applies(p)) {
        SolveReport r = solve_by_matching(p);
        std::cout << "winner: " << result_name(r.outcome.result) << "\n";
        if (r.optimal_move) std::cout << "move: " << r.optimal_move->str() << "\n";
        std::cout << "nodes: 0 (matching solver)\n";
        return 0;
      }
      if (method == "matching") {
        std::cerr << "input error: matching solver does not apply to this position\n";
        return 1;
      }
    }
    SolveOptions opts;
    opts.node_budget = budget;
    opts.table_cap = table_cap;
    opts.want_pv = want_pv;
    if (!draw_on.empty()) {
      auto colon = draw_on.rfind(':');
      if (colon == std::string::npos) throw GraphError("--draw-on expects VERTEX:L|R");
      DrawRule rule;
      rule.vertex = resolve_vertex(p.graph, draw_on.substr(0, colon));
      rule.mover = draw_on.substr(colon + 1) == "R" ? PlayerSide::Right : PlayerSide::Left;
      opts.draw_rule = rule;
    }
    SolveResult r = solve_brute(p, opts);
    if (!r.ok()) {
      std::cerr << "budget exhausted after " << r.nodes_expanded << " nodes\n";
      return 2;
    }
    std::cout << "winner: " << result_name(r.report.outcome.result) << "\n";
    if (r.report.optimal_move) std::cout << "move: " << r.report.optimal_move->str() << "\n";
    std::cout << "nodes: " << r.report.nodes_expanded << "  table hits: " << r.report.table_hits
              << "\n";
    if (want_pv) {
      std::cout << "pv:";
      for (const Move& m : r.report.outcome.principal_variation) std::cout << " " << m.str();
      std::cout << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  }
}

int do_reduce(const std::string& kind_name, const std::string& input, const std::string& out_file,
              const std::string& dot_file) {
  try {
    ReductionKind kind = parse_reduction_kind(kind_name);
    ReductionArtifact art;
    std::string text = read_file(input);
    if (kind == ReductionKind::DIF || kind == ReductionKind::DPF || kind == ReductionKind::UPR ||
        kind == ReductionKind::UPF) {
      QbfInstance q = text.find("p cnf") != std::string::npos ? parse_qdimacs(text)
                                                              : qbf_from_json(json::parse(text));
      ReductionTarget target = kind == ReductionKind::DIF   ? ReductionTarget::DIF
                               : kind == ReductionKind::DPF ? ReductionTarget::DPF
                               : kind == ReductionKind::UPR ? ReductionTarget::UPR
                                                            : ReductionTarget::UPF;
      if (!satisfies_preconditions(q, target)) {
        QbfInstance norm = normalize_for(q, target);
        std::cout << "note: input normalized from n=" << q.num_vars << ",m=" << q.num_clauses()
                  << " to n=" << norm.num_vars << ",m=" << norm.num_clauses() << "\n";
        q = norm;
      }
      switch (kind) {
        case ReductionKind::DIF: art = tqbf_to_dif(q); break;
        case ReductionKind::DPF: art = tqbf_to_dpf(q); break;
        case ReductionKind::UPR: art = tqbf_to_upr(q); break;
        default: art = tqbf_to_upf(q); break;
      }
    } else {
      Position p = position_from_json(json::parse(text));
      switch (kind) {
        case ReductionKind::U2D: art = undirect_to_direct(p); break;
        case ReductionKind::S2TO1: art = stack2_to_stack1(p); break;
        default: art = geography_to_uir4(p); break;
      }
    }
    VerifyReport st = verify_structure(art);
    std::cout << "artifact: " << reduction_kind_name(art.kind) << " with "
              << art.position.graph.vertex_count() << " vertices, "
              << art.position.graph.links().size() << " links\n";
    std::cout << "structural checks: " << (st.passed() ? "pass" : "FAIL") << "\n";
    for (const auto& f : st.structural_failures)
      std::cout << "  " << f.input << ": " << f.got << "\n";
    if (!out_file.empty()) write_file(out_file, artifact_to_json(art).dump(2) + "\n");
    if (!dot_file.empty()) write_file(dot_file, to_dot(art));
    return st.passed() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int do_verify(const std::string& spec_file, const std::string& out_file, int workers,
              uint64_t seed) {
  try {
    std::string text = read_file(spec_file);
    bool all_pass = true;
    json report_json = json::array();
    auto result = run_campaign_file(text, workers, seed, [&](const VerifyReport& rep) {
      std::cout << (rep.passed() ? "PASS" : "FAIL") << "  " << rep.kind << "  instances="
                << rep.instances_run << " mismatches=" << rep.mismatches.size()
                << " structural=" << rep.structural_failures.size()
                << " budget_exhaustions=" << rep.budget_exhaustions << "\n";
      for (const auto& mm : rep.mismatches)
        std::cout << "    mismatch: " << mm.input << " expected " << mm.expected << " got "
                  << mm.got << "\n";
      for (const auto& f : rep.structural_failures)
        std::cout << "    structural: " << f.input << " " << f.got << "\n";
    });
    for (const auto& rep : result.reports) {
      json r{{"kind", rep.kind},
             {"instances", rep.instances_run},
             {"budget_exhaustions", rep.budget_exhaustions},
             {"passed", rep.passed()}};
      json mm = json::array();
      for (const auto& x : rep.mismatches)
        mm.push_back({{"input", x.input}, {"expected", x.expected}, {"got", x.got}});
      r["mismatches"] = mm;
      json sf = json::array();
      for (const auto& x : rep.structural_failures)
        sf.push_back({{"input", x.input}, {"what", x.got}});
      r["structural_failures"] = sf;
      report_json.push_back(r);
      all_pass = all_pass && rep.passed();
    }
    if (result.reports.size() == 1 && result.reports[0].kind == "empty")
      std::cout << "warning: no campaigns in spec\n";
    if (!out_file.empty())
      write_file(out_file, json{{"passed", all_pass}, {"reports", report_json}}.dump(2) + "\n");
    return all_pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int do_play(const std::string& file, const std::string& human_side, const std::string& ai_kind,
            uint64_t budget, uint64_t seed) {
  Position p;
  try {
    p = position_from_json(json::parse(read_file(file)));
    if (ai_kind == "matching" && !matching_solver_applies(p)) {
      std::cerr << "matching AI requires UIR or bipartite UIF (k=1)\n";
      return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  }
  PlayerSide human = human_side == "R" ? PlayerSide::Right : PlayerSide::Left;
  RandomStrategy random_ai(seed);
  SolveOptions opts;
  opts.node_budget = budget;

  for (;;) {
    render_position(p, std::cout);
    auto moves = legal_moves(p);
    if (moves.empty()) {
      bool human_lost = p.to_move == human;
      std::cout << side_name(p.to_move) << " has no moves. "
                << (human_lost ? "You lose.\n" : "You win!\n");
      return 0;
    }
    Move chosen;
    if (p.to_move == human) {
      for (;;) {
        std::cout << "your move (from to delete): " << std::flush;
        std::string line;
        if (!std::getline(std::cin, line)) return 0;
        std::istringstream ls(line);
        std::string a, b, c;
        if (!(ls >> a >> b >> c)) {
          std::cout << "enter three vertices\n";
          continue;
        }
        try {
          Move m{resolve_vertex(p.graph, a), resolve_vertex(p.graph, b), resolve_vertex(p.graph, c)};
          if (auto err = classify_move(p, m)) {
            std::cout << "illegal move: " << move_error_name(*err) << "\n";
            continue;
          }
          chosen = m;
          break;
        } catch (const std::exception& e) {
          std::cout << e.what() << "\n";
        }
      }
    } else {
      std::optional<Move> m;
      if (ai_kind == "random") m = random_ai.next(p);
      else if (ai_kind == "matching") {
        SolveReport r = solve_by_matching(p);
        m = r.optimal_move ? r.optimal_move : std::optional<Move>(moves.front());
      } else {
        m = best_move(p, opts);
      }
      if (!m) m = moves.front();
      std::cout << "ai plays " << m->str() << "\n";
      chosen = *m;
    }
    p = apply_move(p, chosen);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geolab: solvers, reductions and verification for Geography variants"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "solve a position file");
  std::string solve_file, draw_on, method = "auto", variant_override;
  uint64_t budget = 100'000'000;
  size_t table_cap = size_t{1} << 22;
  bool want_pv = false;
  solve->add_option("position", solve_file, "position JSON file")->required();
  solve->add_option("--budget", budget, "node budget");
  solve->add_option("--table-cap", table_cap, "transposition table entry cap");
  solve->add_flag("--pv", want_pv, "print the principal variation");
  solve->add_option("--draw-on", draw_on, "draw terminal VERTEX:L|R");
  solve->add_option("--method", method, "auto|brute|matching");
  solve->add_option("--variant", variant_override, "variant override, e.g. UIR4");

  auto* reduce = app.add_subcommand("reduce", "construct a reduction artifact");
  std::string reduce_kind, reduce_input, reduce_out, reduce_dot;
  reduce->add_option("kind", reduce_kind, "dif|dpf|upr|upf|uir4|u2d|s2to1")->required();
  reduce->add_option("input", reduce_input, "QDIMACS / QBF JSON / position JSON")->required();
  reduce->add_option("--out", reduce_out, "artifact JSON output path");
  reduce->add_option("--dot", reduce_dot, "DOT output path");

  auto* verify = app.add_subcommand("verify", "run verification campaigns");
  std::string verify_spec, verify_out;
  int workers = 1;
  uint64_t seed = 0;
  verify->add_option("spec", verify_spec, "campaign spec JSON")->required();
  verify->add_option("--out", verify_out, "report JSON output path");
  verify->add_option("--workers", workers, "parallel workers");
  verify->add_option("--seed", seed, "seed override (0 = per-campaign seeds)");

  auto* play = app.add_subcommand("play", "interactive terminal play");
  std::string play_file, human = "L", ai = "search";
  uint64_t play_budget = 20'000'000, play_seed = 1;
  play->add_option("position", play_file, "position JSON file")->required();
  play->add_option("--human", human, "L or R");
  play->add_option("--ai", ai, "search|matching|random");
  play->add_option("--budget", play_budget, "AI node budget");
  play->add_option("--seed", play_seed, "random AI seed");

  CLI11_PARSE(app, argc, argv);

  if (solve->parsed()) return do_solve(solve_file, budget, table_cap, want_pv, draw_on, method,
                                       variant_override);
  if (reduce->parsed()) return do_reduce(reduce_kind, reduce_input, reduce_out, reduce_dot);
  if (verify->parsed()) return do_verify(verify_spec, verify_out, workers, env_seed(seed));
  if (play->parsed()) return do_play(play_file, human, ai, play_budget, env_seed(play_seed));
  return 1;
}
