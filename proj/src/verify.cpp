#include "geolab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "geolab/matching.hpp"

namespace geolab {

void VerifyReport::merge(const VerifyReport& other) {
  instances_run += other.instances_run;
  mismatches.insert(mismatches.end(), other.mismatches.begin(), other.mismatches.end());
  structural_failures.insert(structural_failures.end(), other.structural_failures.begin(),
                             other.structural_failures.end());
  budget_exhaustions += other.budget_exhaustions;
}

// ---------------------------------------------------------------- corpora

GameGraph random_digraph(int max_vertices, Rng& rng) {
  int n = 1 + static_cast<int>(rng.below(max_vertices));
  std::vector<std::pair<VertexId, VertexId>> arcs;
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = 0; b < n; ++b)
      if (a != b && rng.coin()) arcs.push_back({a, b});
  return GameGraph(Orientation::Directed, std::vector<int>(n, 1), arcs);
}

GameGraph random_undirected_graph(int max_vertices, Rng& rng) {
  int n = 1 + static_cast<int>(rng.below(max_vertices));
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b)
      if (rng.coin()) edges.push_back({a, b});
  return GameGraph(Orientation::Undirected, std::vector<int>(n, 1), edges);
}

GameGraph random_undirected_bipartite(int max_vertices, Rng& rng) {
  int n = 2 + static_cast<int>(rng.below(std::max(1, max_vertices - 1)));
  int left = 1 + static_cast<int>(rng.below(n - 1));
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId a = 0; a < left; ++a)
    for (VertexId b = left; b < n; ++b)
      if (rng.coin()) edges.push_back({a, b});
  return GameGraph(Orientation::Undirected, std::vector<int>(n, 1), edges);
}

std::vector<GameGraph> all_digraphs(int vertices) {
  std::vector<std::pair<VertexId, VertexId>> slots;
  for (VertexId a = 0; a < vertices; ++a)
    for (VertexId b = 0; b < vertices; ++b)
      if (a != b) slots.push_back({a, b});
  std::vector<GameGraph> out;
  for (uint64_t mask = 0; mask < (uint64_t{1} << slots.size()); ++mask) {
    std::vector<std::pair<VertexId, VertexId>> arcs;
    for (size_t k = 0; k < slots.size(); ++k)
      if (mask >> k & 1) arcs.push_back(slots[k]);
    out.push_back(GameGraph(Orientation::Directed, std::vector<int>(vertices, 1), arcs));
  }
  return out;
}

std::vector<QbfInstance> exhaustive_qbf_n2m1() {
  const Lit lits[4] = {1, -1, 2, -2};
  std::vector<QbfInstance> out;
  for (int a = 0; a < 4; ++a)
    for (int b = a; b < 4; ++b)
      for (int c = b; c < 4; ++c) {
        QbfInstance q;
        q.num_vars = 2;
        q.clauses.push_back({lits[a], lits[b], lits[c]});
        out.push_back(q);
      }
  return out;
}

Position lemma_path_position() {
  GameGraph g(Orientation::Undirected, {2, 4, 3, 1, 1}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
  for (VertexId v = 0; v < 5; ++v) g.set_label(v, "v" + std::to_string(v + 1));
  return Position::impartial_start(
      std::move(g),
      Variant{Orientation::Undirected, Partisanship::Impartial, DeletionRule::Restricted, 4}, 0);
}

Position fig8_position(DeletionRule deletion) {
  // v-x, v-w, x-w triangle with a w-u-t tail; token on v.
  GameGraph g(Orientation::Undirected, {1, 1, 1, 1, 1},
              {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}});
  const char* names[5] = {"v", "x", "w", "u", "t"};
  for (VertexId i = 0; i < 5; ++i) g.set_label(i, names[i]);
  return Position::impartial_start(
      std::move(g), Variant{Orientation::Undirected, Partisanship::Impartial, deletion, 1}, 0);
}

namespace {

Position random_position(Variant variant, int max_vertices, Rng& rng) {
  for (;;) {
    GameGraph g = variant.orientation == Orientation::Directed ? random_digraph(max_vertices, rng)
                                                               : random_undirected_graph(max_vertices, rng);
    if (variant.max_height > 1) {
      for (VertexId v = 0; v < g.vertex_count(); ++v)
        g.set_height(v, 1 + static_cast<int>(rng.below(variant.max_height)));
    }
    std::vector<VertexId> live;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      if (g.live(v)) live.push_back(v);
    if (variant.partisanship == Partisanship::Impartial) {
      if (live.empty()) continue;
      return Position::impartial_start(std::move(g), variant, rng.pick(live));
    }
    if (live.size() < 2) continue;
    VertexId l = rng.pick(live);
    VertexId r = rng.pick(live);
    if (l == r) continue;
    return Position::partizan_start(std::move(g), variant, l, r);
  }
}

GameResult winner_or_throw(const Position& p, const SolveOptions& opts) {
  SolveResult r = solve_brute(p, opts);
  if (!r.ok()) throw SolveStatus::BudgetExhausted;
  return r.report.outcome.result;
}

std::string describe_position(const Position& p) {
  std::ostringstream os;
  os << p.variant.name() << " n=" << p.graph.vertex_count() << " links=";
  for (auto [a, b] : p.graph.links()) os << a << (p.graph.directed() ? ">" : "-") << b << ",";
  os << " heights=";
  for (VertexId v = 0; v < p.graph.vertex_count(); ++v) os << p.graph.height(v);
  os << " tok=" << p.left_token;
  if (!p.impartial()) os << "/" << p.right_token;
  return os.str();
}

// One oracle-equivalence item: (position or qbf) -> (expected, got).
struct OracleItem {
  std::optional<Position> source_pos;
  std::optional<QbfInstance> source_qbf;
  std::string describe() const {
    return source_pos ? describe_position(*source_pos) : source_qbf->str();
  }
};

std::vector<OracleItem> build_corpus(ReductionKind kind, const CorpusSpec& corpus) {
  std::vector<OracleItem> items;
  Rng rng(corpus.seed);
  switch (kind) {
    case ReductionKind::U2D: {
      const DeletionRule dels[2] = {DeletionRule::Restricted, DeletionRule::Free};
      const Partisanship parts[2] = {Partisanship::Impartial, Partisanship::Partizan};
      // sample_count per variant combination.
      for (int pi = 0; pi < (corpus.impartial_only ? 1 : 2); ++pi)
        for (int di = 0; di < 2; ++di)
          for (int i = 0; i < corpus.sample_count; ++i) {
            Variant v{Orientation::Undirected, parts[pi], dels[di],
                      1 + static_cast<int>(rng.below(2))};
            items.push_back({random_position(v, corpus.sample_max_vertices, rng), std::nullopt});
          }
      break;
    }
    case ReductionKind::S2TO1: {
      const DeletionRule dels[2] = {DeletionRule::Restricted, DeletionRule::Free};
      const Partisanship parts[2] = {Partisanship::Impartial, Partisanship::Partizan};
      const Orientation orients[2] = {Orientation::Directed, Orientation::Undirected};
      // sample_count per variant combination.
      for (int oi = 0; oi < 2; ++oi)
        for (int pi = 0; pi < (corpus.impartial_only ? 1 : 2); ++pi)
          for (int di = 0; di < 2; ++di)
            for (int i = 0; i < corpus.sample_count; ++i) {
              Variant v{orients[oi], parts[pi], dels[di], 2};
              items.push_back({random_position(v, corpus.sample_max_vertices, rng), std::nullopt});
            }
      break;
    }
    case ReductionKind::UIR4: {
      for (int n = 1; n <= corpus.exhaustive_max; ++n)
        for (GameGraph& g : all_digraphs(n))
          for (VertexId t = 0; t < g.vertex_count(); ++t)
            items.push_back({Position::impartial_start(g, kGeography, t), std::nullopt});
      for (int i = 0; i < corpus.sample_count; ++i)
        items.push_back({random_position(kGeography, corpus.sample_max_vertices, rng), std::nullopt});
      break;
    }
    case ReductionKind::DIF: {
      if (corpus.exhaustive_max >= 2)
        for (QbfInstance& q : exhaustive_qbf_n2m1()) items.push_back({std::nullopt, q});
      for (int i = 0; i < corpus.sample_count; ++i) {
        int m = 1 + static_cast<int>(rng.below(std::max(1, corpus.sample_clauses)));
        items.push_back({std::nullopt, random_instance(corpus.sample_max_vertices, m, rng.next())});
      }
      break;
    }
    case ReductionKind::DPF: {
      for (int i = 0; i < corpus.sample_count; ++i) {
        int m = 1 + static_cast<int>(rng.below(std::max(1, corpus.sample_clauses)));
        QbfInstance q = random_instance(corpus.sample_max_vertices, m, rng.next());
        items.push_back({std::nullopt, normalize_for(q, ReductionTarget::DPF)});
      }
      break;
    }
    default:
      throw GraphError("verify_oracle: unsupported kind");
  }
  return items;
}

}  // namespace

VerifyReport verify_oracle(ReductionKind kind, const CorpusSpec& corpus,
                           const SolveOptions& budget, int workers) {
  VerifyReport report;
  report.kind = std::string("oracle:") + reduction_kind_name(kind);
  std::vector<OracleItem> items = build_corpus(kind, corpus);
  report.instances_run = static_cast<int>(items.size());

  std::vector<VerifyReport> partial(items.size());
  std::atomic<size_t> cursor{0};
  auto run_item = [&](size_t idx) {
    const OracleItem& item = items[idx];
    VerifyReport& rep = partial[idx];
    try {
      ReductionArtifact artifact;
      std::string expected, got;
      bool src_exhausted = false, art_exhausted = false;
      if (item.source_qbf) {
        bool truth = evaluate(*item.source_qbf);
        expected = truth ? "LeftWins" : "RightWins";
        artifact = kind == ReductionKind::DIF ? tqbf_to_dif(*item.source_qbf)
                                              : tqbf_to_dpf(*item.source_qbf);
      } else {
        const Position& src = *item.source_pos;
        artifact = kind == ReductionKind::U2D    ? undirect_to_direct(src)
                   : kind == ReductionKind::S2TO1 ? stack2_to_stack1(src)
                                                  : geography_to_uir4(src);
        try {
          expected = result_name(winner_or_throw(src, budget));
        } catch (SolveStatus) {
          src_exhausted = true;
        }
      }
      VerifyReport structural = verify_structure(artifact);
      rep.structural_failures = structural.structural_failures;
      try {
        got = result_name(winner_or_throw(artifact.position, budget));
      } catch (SolveStatus) {
        art_exhausted = true;
      }
      if (src_exhausted || art_exhausted) {
        ++rep.budget_exhaustions;
      } else if (expected != got) {
        rep.mismatches.push_back({item.describe(), expected, got});
      }
    } catch (const std::exception& e) {
      rep.fail_structural(item.describe(), std::string("exception: ") + e.what());
    }
  };

  workers = std::max(1, workers);
  if (workers == 1) {
    for (size_t i = 0; i < items.size(); ++i) run_item(i);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (size_t i = cursor.fetch_add(1); i < items.size(); i = cursor.fetch_add(1)) run_item(i);
      });
    for (auto& t : pool) t.join();
  }
  for (const auto& p : partial) {
    report.mismatches.insert(report.mismatches.end(), p.mismatches.begin(), p.mismatches.end());
    report.structural_failures.insert(report.structural_failures.end(),
                                      p.structural_failures.begin(), p.structural_failures.end());
    report.budget_exhaustions += p.budget_exhaustions;
  }
  return report;
}

// ------------------------------------------------------------- structure

namespace {

int count_roles(const ReductionArtifact& a, VertexRole::Kind kind) {
  int c = 0;
  for (const auto& r : a.roles)
    if (r.kind == kind) ++c;
  return c;
}

void check_dif_structure(const ReductionArtifact& a, VerifyReport& rep) {
  const QbfInstance& q = *a.source_qbf;
  const std::string tag = "DIF(" + q.str() + ")";
  int expected = 0;
  for (int i = 1; i <= q.num_vars; ++i) expected += i % 2 ? 6 : 5;
  for (const Clause& c : q.clauses) {
    expected += 1;
    for (Lit l : c) expected += lit_var(l) % 2 ? 2 : 3;
  }
  if (a.position.graph.vertex_count() != expected)
    rep.fail_structural(tag, "vertex count " + std::to_string(a.position.graph.vertex_count()) +
                                 " != expected " + std::to_string(expected));
  if (!a.claimed_bipartition) rep.fail_structural(tag, "missing claimed bipartition");
}

void check_dpf_structure(const ReductionArtifact& a, VerifyReport& rep) {
  const QbfInstance& q = *a.source_qbf;
  const std::string tag = "DPF(" + q.str() + ")";
  DpfSizes sz = expected_dpf_sizes(q.num_vars, q.num_clauses());
  if (count_roles(a, VertexRole::Kind::Delay) != sz.delay)
    rep.fail_structural(tag, "delay path size");
  if (count_roles(a, VertexRole::Kind::ClauseDeletion) != sz.deletion)
    rep.fail_structural(tag, "clause deletion path size");
  if (count_roles(a, VertexRole::Kind::Escape) != sz.escape)
    rep.fail_structural(tag, "escape path size");
  int linkers = count_roles(a, VertexRole::Kind::Linker);
  if (linkers != 3 * q.num_clauses() * (sz.linker_path + 2))
    rep.fail_structural(tag, "linker vertex count");
  if (!a.claimed_bipartition) {
    rep.fail_structural(tag, "missing claimed bipartition");
    return;
  }
  // Parity facts from the proof: the last delay vertex and the two-vertex
  // linker fan-ins sit opposite the clause vertices.
  const Bipartition& parts = *a.claimed_bipartition;
  for (VertexId v = 0; v < static_cast<VertexId>(a.roles.size()); ++v) {
    const VertexRole& r = a.roles[v];
    if (r.kind == VertexRole::Kind::Delay && r.slot == sz.delay && !parts.contains_b(v))
      rep.fail_structural(tag, "last delay vertex not in B");
    if (r.kind == VertexRole::Kind::Clause && !parts.contains_a(v))
      rep.fail_structural(tag, "clause vertex not in A");
    if (r.kind == VertexRole::Kind::Linker && r.tag == "par" && !parts.contains_a(v))
      rep.fail_structural(tag, "linker parallel vertex not in A");
    if (r.kind == VertexRole::Kind::Linker && r.tag.empty() && r.slot == sz.linker_path &&
        !parts.contains_b(v))
      rep.fail_structural(tag, "last linker path vertex not in B");
  }
}

void check_upr_structure(const ReductionArtifact& a, VerifyReport& rep) {
  const QbfInstance& q = *a.source_qbf;
  const std::string tag = "UPR(" + q.str() + ")";
  const int n = q.num_vars, m = q.num_clauses();
  UprSizes sz = expected_upr_sizes(n, m);
  if (count_roles(a, VertexRole::Kind::Delay) != 2 * sz.delay_part)
    rep.fail_structural(tag, "delay graph size");
  if (count_roles(a, VertexRole::Kind::Escape) != sz.escape)
    rep.fail_structural(tag, "escape path size");
  if (count_roles(a, VertexRole::Kind::ClauseConnector) != m * sz.connector)
    rep.fail_structural(tag, "clause connector size");
  int expected_linkers = 0;
  for (const Clause& c : q.clauses)
    for (Lit l : c) expected_linkers += 2 * (lit_var(l) % 2 ? sz.left_linker : sz.right_linker);
  if (count_roles(a, VertexRole::Kind::Linker) != expected_linkers)
    rep.fail_structural(tag, "linker vertex count");
  if (!a.claimed_bipartition) {
    rep.fail_structural(tag, "missing claimed bipartition");
    return;
  }
  const Bipartition& parts = *a.claimed_bipartition;
  // The proof's three parity checks.
  for (VertexId v = 0; v < static_cast<VertexId>(a.roles.size()); ++v) {
    const VertexRole& r = a.roles[v];
    if (r.kind == VertexRole::Kind::ClauseConnector && r.slot == sz.connector &&
        !parts.contains_b(v))
      rep.fail_structural(tag, "connector vertex adjacent to clause not in B");
    if (r.kind == VertexRole::Kind::Linker) {
      bool odd_var = lit_var(r.literal) % 2 == 1;
      int last = odd_var ? sz.left_linker : sz.right_linker;
      if (r.slot == last) {
        if (odd_var && !parts.contains_a(v))
          rep.fail_structural(tag, "left-linker end not in A");
        if (!odd_var && !parts.contains_b(v))
          rep.fail_structural(tag, "right-linker end not in B");
      }
    }
    if (r.kind == VertexRole::Kind::Variable && (r.tag == "left" || r.tag == "right")) {
      bool odd_var = r.index % 2 == 1;
      if (odd_var && !parts.contains_b(v)) rep.fail_structural(tag, "odd side vertex not in B");
      if (!odd_var && !parts.contains_a(v)) rep.fail_structural(tag, "even side vertex not in A");
    }
  }
}

void check_upf_structure(const ReductionArtifact& a, VerifyReport& rep) {
  const QbfInstance& q = *a.source_qbf;
  const std::string tag = "UPF(" + q.str() + ")";
  const int n = q.num_vars, m = q.num_clauses();
  UpfSizes sz = expected_upf_sizes(n, m);
  if (count_roles(a, VertexRole::Kind::ClauseDeletion) != m * sz.deletion_path)
    rep.fail_structural(tag, "clause deletion paths size");
  if (count_roles(a, VertexRole::Kind::Delay) != sz.delay) rep.fail_structural(tag, "delay size");
  if (count_roles(a, VertexRole::Kind::ClauseConnector) != m * sz.connector)
    rep.fail_structural(tag, "connector size");
  if (count_roles(a, VertexRole::Kind::Linker) != 3 * m * sz.linker)
    rep.fail_structural(tag, "linker size");
  if (count_roles(a, VertexRole::Kind::Escape) != sz.escape)
    rep.fail_structural(tag, "escape size");
  int win = count_roles(a, VertexRole::Kind::WinPath);
  int outside = a.position.graph.vertex_count() - win;
  if (win != outside + 2)
    rep.fail_structural(tag, "win path length " + std::to_string(win) + " != outside+2 " +
                                 std::to_string(outside + 2));
  if (win != sz.win_path) rep.fail_structural(tag, "win path length formula mismatch");
  auto bip = a.position.graph.check_bipartite();
  if (bip.bipartite()) rep.fail_structural(tag, "UPF artifact unexpectedly bipartite");
  else if (!validate_odd_cycle(a.position.graph, bip.odd_cycle))
    rep.fail_structural(tag, "odd cycle certificate invalid");
  auto witness = upf_odd_cycle_witness(a);
  if (witness.size() != 13 || !validate_odd_cycle(a.position.graph, witness))
    rep.fail_structural(tag, "13-cycle witness invalid");
}

void check_uir4_structure(const ReductionArtifact& a, VerifyReport& rep) {
  const Position& src = *a.source_position;
  const std::string tag = "UIR4(" + describe_position(src) + ")";
  int live = src.graph.live_count();
  if (a.position.graph.vertex_count() != 5 * live)
    rep.fail_structural(tag, "meta vertex count");
  static const int kHeights[5] = {2, 4, 3, 1, 1};
  for (VertexId v = 0; v < static_cast<VertexId>(a.roles.size()); ++v) {
    const VertexRole& r = a.roles[v];
    if (r.kind != VertexRole::Kind::Meta) {
      rep.fail_structural(tag, "non-meta role");
      continue;
    }
    if (a.position.graph.height(v) != kHeights[r.slot - 1])
      rep.fail_structural(tag, "meta height pattern");
  }
  int live_arcs = 0;
  for (auto [x, y] : src.graph.links())
    if (src.graph.live(x) && src.graph.live(y)) ++live_arcs;
  int expected_edges = 4 * live + live_arcs;
  if (static_cast<int>(a.position.graph.links().size()) != expected_edges)
    rep.fail_structural(tag, "edge count");
  bool src_bip = src.graph.check_bipartite().bipartite();
  bool out_bip = a.position.graph.check_bipartite().bipartite();
  if (src_bip != out_bip)
    rep.fail_structural(tag, "output bipartite iff source bipartite violated");
  if (src_bip && !a.claimed_bipartition)
    rep.fail_structural(tag, "missing claimed bipartition for bipartite source");
  DegreeSummary sd = src.graph.max_degree();
  if (src_bip && sd.max_in <= 2 && sd.max_out <= 2 && sd.max_total <= 3) {
    DegreeSummary od = a.position.graph.max_degree();
    if (od.max_total > 3) rep.fail_structural(tag, "degree bound exceeded");
  }
}

void check_u2d_structure(const ReductionArtifact& a, VerifyReport& rep) {
  const Position& src = *a.source_position;
  const std::string tag = "U2D(" + describe_position(src) + ")";
  if (static_cast<int>(a.position.graph.links().size()) !=
      2 * static_cast<int>(src.graph.links().size()))
    rep.fail_structural(tag, "arc doubling count");
  for (auto [x, y] : src.graph.links())
    if (!a.position.graph.has_link(x, y) || !a.position.graph.has_link(y, x))
      rep.fail_structural(tag, "missing antiparallel arc pair");
}

void check_s2to1_structure(const ReductionArtifact& a, VerifyReport& rep) {
  const Position& src = *a.source_position;
  const std::string tag = "S2TO1(" + describe_position(src) + ")";
  long long total = 0;
  for (VertexId v = 0; v < src.graph.vertex_count(); ++v) total += src.graph.height(v);
  if (a.position.graph.vertex_count() != total) rep.fail_structural(tag, "copy count");
  for (VertexId v = 0; v < a.position.graph.vertex_count(); ++v)
    if (a.position.graph.height(v) != 1) rep.fail_structural(tag, "non-unit output height");
  bool src_bip = src.graph.check_bipartite().bipartite();
  bool out_bip = a.position.graph.check_bipartite().bipartite();
  if (src_bip != out_bip) rep.fail_structural(tag, "bipartiteness not preserved");
}

}  // namespace

VerifyReport verify_structure(const ReductionArtifact& artifact) {
  VerifyReport rep;
  rep.kind = std::string("structure:") + reduction_kind_name(artifact.kind);
  rep.instances_run = 1;
  const std::string tag = reduction_kind_name(artifact.kind);
  if (static_cast<int>(artifact.roles.size()) != artifact.position.graph.vertex_count())
    rep.fail_structural(tag, "role table size mismatch");
  if (artifact.claimed_bipartition &&
      !validate_bipartition(artifact.position.graph, *artifact.claimed_bipartition))
    rep.fail_structural(tag, "claimed bipartition invalid");
  try {
    artifact.position.validate();
  } catch (const std::exception& e) {
    rep.fail_structural(tag, std::string("position invalid: ") + e.what());
  }
  switch (artifact.kind) {
    case ReductionKind::DIF: check_dif_structure(artifact, rep); break;
    case ReductionKind::DPF: check_dpf_structure(artifact, rep); break;
    case ReductionKind::UPR: check_upr_structure(artifact, rep); break;
    case ReductionKind::UPF: check_upf_structure(artifact, rep); break;
    case ReductionKind::UIR4: check_uir4_structure(artifact, rep); break;
    case ReductionKind::U2D: check_u2d_structure(artifact, rep); break;
    case ReductionKind::S2TO1: check_s2to1_structure(artifact, rep); break;
  }
  return rep;
}

PlayoutOutcome scripted_playout(const ReductionArtifact& artifact, Strategy& left,
                                Strategy& right, Ledger* ledger) {
  const Bipartition* parts =
      artifact.claimed_bipartition ? &*artifact.claimed_bipartition : nullptr;
  return play_out(artifact.position, left, right, parts, 1 << 20, ledger);
}

// ------------------------------------------------------------- fixtures

std::set<std::vector<int>> optimal_terminal_profiles(const Position& start,
                                                     std::optional<DrawRule> draw_rule) {
  std::set<std::vector<int>> profiles;
  std::set<std::string> seen;
  SolveOptions opts;
  opts.draw_rule = draw_rule;

  std::function<void(const Position&)> walk = [&](const Position& p) {
    if (!seen.insert(encode_position(p)).second) return;
    bool draw_terminal = draw_rule && p.impartial() && p.token() == draw_rule->vertex &&
                         p.to_move == draw_rule->mover;
    auto moves = legal_moves(p);
    if (draw_terminal || moves.empty()) {
      std::vector<int> heights;
      for (VertexId v = 0; v < p.graph.vertex_count(); ++v) heights.push_back(p.graph.height(v));
      profiles.insert(heights);
      return;
    }
    GameResult value = solve_brute(p, opts).report.outcome.result;
    for (const Move& m : moves) {
      Position child = apply_move(p, m);
      GameResult child_value = solve_brute(child, opts).report.outcome.result;
      // The mover only plays moves preserving their optimal value.
      if (child_value == value) walk(child);
    }
  };
  walk(start);
  return profiles;
}

namespace {

// All maximum matchings by exhaustive edge recursion (fixture-scale only).
void enumerate_matchings(const std::vector<std::pair<VertexId, VertexId>>& edges, size_t idx,
                         std::vector<std::pair<VertexId, VertexId>>& current,
                         std::vector<bool>& used,
                         std::vector<std::vector<std::pair<VertexId, VertexId>>>& out) {
  if (idx == edges.size()) {
    out.push_back(current);
    return;
  }
  auto [a, b] = edges[idx];
  enumerate_matchings(edges, idx + 1, current, used, out);
  if (!used[a] && !used[b]) {
    used[a] = used[b] = true;
    current.push_back(edges[idx]);
    enumerate_matchings(edges, idx + 1, current, used, out);
    current.pop_back();
    used[a] = used[b] = false;
  }
}

std::vector<Matching> all_maximum_matchings(const GameGraph& g) {
  std::vector<std::pair<VertexId, VertexId>> live_edges;
  for (auto [a, b] : g.links())
    if (g.live(a) && g.live(b)) live_edges.push_back({a, b});
  std::vector<std::vector<std::pair<VertexId, VertexId>>> all;
  std::vector<std::pair<VertexId, VertexId>> current;
  std::vector<bool> used(g.vertex_count(), false);
  enumerate_matchings(live_edges, 0, current, used, all);
  size_t best = 0;
  for (const auto& m : all) best = std::max(best, m.size());
  std::vector<Matching> out;
  for (auto& m : all)
    if (m.size() == best) {
      Matching mm;
      mm.edges = m;
      std::sort(mm.edges.begin(), mm.edges.end());
      out.push_back(std::move(mm));
    }
  return out;
}

}  // namespace

VerifyReport lemma_fixtures() {
  VerifyReport rep;
  rep.kind = "lemma_fixtures";

  // (a) The [2,4,3,1,1] path is a draw with exactly three terminal profiles.
  {
    ++rep.instances_run;
    Position p = lemma_path_position();
    DrawRule rule{4, PlayerSide::Left};  // v5 with Left to move
    SolveOptions opts;
    opts.draw_rule = rule;
    SolveResult r = solve_brute(p, opts);
    if (!r.ok() || r.report.outcome.result != GameResult::Draw)
      rep.mismatches.push_back({"lemma path", "Draw", r.ok() ? result_name(r.report.outcome.result) : "budget"});
    std::set<std::vector<int>> expected = {{1, 2, 1, 0, 1}, {1, 1, 0, 0, 1}, {0, 0, 0, 0, 1}};
    auto got = optimal_terminal_profiles(p, rule);
    if (got != expected) {
      std::ostringstream os;
      for (const auto& prof : got) {
        os << "[";
        for (int h : prof) os << h;
        os << "]";
      }
      rep.mismatches.push_back({"lemma path terminal profiles", "3 known profiles", os.str()});
    }
  }

  // (b) Union of two maximum matchings: symmetric-difference components are
  // even paths or cycles.
  {
    Rng rng(20133);
    for (int i = 0; i < 100; ++i) {
      ++rep.instances_run;
      GameGraph g = random_undirected_graph(12, rng);
      Matching m1 = maximum_matching(g, 2 * i);
      Matching m2 = maximum_matching(g, 2 * i + 1);
      if (m1.size() != m2.size()) {
        rep.mismatches.push_back({"matching sizes seed " + std::to_string(i), "equal", "differ"});
        continue;
      }
      for (const auto& comp : union_components(m1, m2))
        if (comp.has_difference && comp.edge_count % 2 != 0)
          rep.mismatches.push_back(
              {"union component seed " + std::to_string(i), "even edge count",
               std::to_string(comp.edge_count)});
    }
  }

  // (c) The five-vertex counterexample: P under UIR, N under UIF via <v,w,u>.
  {
    ++rep.instances_run;
    Position uir = fig8_position(DeletionRule::Restricted);
    if (uir.graph.vertex_count() != 5 || uir.graph.links().size() != 5)
      rep.fail_structural("fig8", "graph is not the 5-vertex 5-edge shape");
    if (uir.graph.check_bipartite().bipartite())
      rep.fail_structural("fig8", "graph unexpectedly bipartite");
    auto matchings = all_maximum_matchings(uir.graph);
    if (matchings.size() != 4 || matchings[0].size() != 2)
      rep.fail_structural("fig8", "expected four maximum matchings of two edges");
    if (!is_essential(uir.graph, 3)) rep.fail_structural("fig8", "u should be essential");
    if (is_essential(uir.graph, 0)) rep.fail_structural("fig8", "v should not be essential");

    SolveResult brute = solve_brute(uir);
    SolveReport match = solve_by_matching(uir);
    if (!brute.ok() || brute.report.outcome.result != GameResult::RightWins)
      rep.mismatches.push_back({"fig8 UIR brute", "RightWins", "other"});
    if (match.outcome.result != GameResult::RightWins)
      rep.mismatches.push_back({"fig8 UIR matching", "RightWins", result_name(match.outcome.result)});

    Position uif = fig8_position(DeletionRule::Free);
    SolveResult uif_result = solve_brute(uif);
    if (!uif_result.ok() || uif_result.report.outcome.result != GameResult::LeftWins)
      rep.mismatches.push_back({"fig8 UIF", "LeftWins", "other"});
    else if (!uif_result.report.optimal_move ||
             !(uif_result.report.optimal_move->from == 0 && uif_result.report.optimal_move->to == 2 &&
               uif_result.report.optimal_move->del == 3))
      rep.mismatches.push_back({"fig8 UIF optimal move", "<v,w,u>",
                                uif_result.report.optimal_move ? uif_result.report.optimal_move->str()
                                                               : "none"});
  }

  return rep;
}

VerifyReport fault_injection_dif(uint64_t seed, const SolveOptions& budget) {
  VerifyReport rep;
  rep.kind = "fault_injection:DIF";
  Rng rng(seed);
  int flips = 0;
  for (const QbfInstance& q : exhaustive_qbf_n2m1()) {
    ++rep.instances_run;
    bool truth = evaluate(q);
    ReductionArtifact art = tqbf_to_dif(q);
    const auto& links = art.position.graph.links();
    size_t drop = rng.below(links.size());
    std::vector<std::pair<VertexId, VertexId>> kept;
    for (size_t i = 0; i < links.size(); ++i)
      if (i != drop) kept.push_back(links[i]);
    std::vector<int> heights;
    for (VertexId v = 0; v < art.position.graph.vertex_count(); ++v)
      heights.push_back(art.position.graph.height(v));
    Position faulted = art.position;
    faulted.graph = GameGraph(Orientation::Directed, heights, kept);
    SolveResult r = solve_brute(faulted, budget);
    if (!r.ok()) {
      ++rep.budget_exhaustions;
      continue;
    }
    bool left_wins = r.report.outcome.result == GameResult::LeftWins;
    if (left_wins != truth) ++flips;
  }
  if (flips == 0)
    rep.fail_structural("fault injection", "no verdict flipped across the n=2 corpus");
  return rep;
}

// ------------------------------------------------------------- campaigns

namespace {

using nlohmann::json;

VerifyReport run_scripted_campaign(ReductionKind kind, int instances, int n, int m,
                                   int random_playouts, uint64_t seed) {
  VerifyReport rep;
  rep.kind = std::string("scripted:") + reduction_kind_name(kind);
  Rng rng(seed);
  int built = 0;
  uint64_t attempt = 0;
  while (built < instances && attempt < uint64_t(instances) * 50 + 100) {
    QbfInstance q = random_instance(n, m, seed * 1000003 + attempt++);
    q = normalize_for(q, kind == ReductionKind::UPR ? ReductionTarget::UPR : ReductionTarget::UPF);
    ++built;
    ++rep.instances_run;
    bool truth = evaluate(q);
    PlayerSide winner_side = truth ? PlayerSide::Left : PlayerSide::Right;
    Policy policy = optimal_policy(q, winner_side);
    ReductionArtifact art = kind == ReductionKind::UPR ? tqbf_to_upr(q) : tqbf_to_upf(q);
    VerifyReport st = verify_structure(art);
    rep.structural_failures.insert(rep.structural_failures.end(), st.structural_failures.begin(),
                                   st.structural_failures.end());
    std::string tag = reduction_kind_name(kind) + ("(" + q.str() + ")");

    // Proper script vs proper script.
    {
      Ledger ledger;
      auto left = make_scripted_strategy(art, PlayerSide::Left,
                                         truth ? std::optional<Policy>(policy) : std::nullopt,
                                         &ledger);
      auto right = make_scripted_strategy(art, PlayerSide::Right,
                                          truth ? std::nullopt : std::optional<Policy>(policy),
                                          &ledger);
      PlayoutOutcome out = scripted_playout(art, *left, *right, &ledger);
      if (out.diverged)
        rep.mismatches.push_back({tag + " script-vs-script", "clean playout",
                                  "diverged: " + out.divergence_reason});
      else if (out.winner != winner_side)
        rep.mismatches.push_back({tag + " script-vs-script", side_name(winner_side),
                                  out.winner ? side_name(*out.winner) : "none"});
      if (out.move_invariant_violations > 0)
        rep.fail_structural(tag, "bipartite move invariant violated in playout");
      if (kind == ReductionKind::UPR && truth) {
        long long made = out.ledger.get("right_moves") - out.ledger.get("upr.right_moves_at_phase1_end");
        long long want = 2 * q.num_clauses() + 3 * q.num_vars + 23;
        if (!out.ledger.has("upr.right_moves_at_phase1_end") || made != want)
          rep.mismatches.push_back({tag + " phase ledger", std::to_string(want) + " Right moves",
                                    std::to_string(made)});
      }
      if (kind == ReductionKind::UPF) {
        long long got = out.ledger.get("upf.left_p3_moves_at_last_linker");
        long long want = 7 * q.num_clauses() + 1;
        if (!out.ledger.has("upf.left_p3_moves_at_last_linker") || got != want)
          rep.mismatches.push_back({tag + " phase ledger", std::to_string(want) + " Left moves",
                                    std::to_string(got)});
      }
    }

    // Winning script vs seeded random opponents.
    for (int k = 0; k < random_playouts; ++k) {
      auto script = make_scripted_strategy(art, winner_side, policy, nullptr);
      RandomStrategy random_opp(rng.next());
      PlayoutOutcome out = winner_side == PlayerSide::Left
                               ? scripted_playout(art, *script, random_opp)
                               : scripted_playout(art, random_opp, *script);
      if (out.diverged)
        rep.mismatches.push_back({tag + " vs random #" + std::to_string(k), "win",
                                  "diverged: " + out.divergence_reason});
      else if (out.winner != winner_side)
        rep.mismatches.push_back({tag + " vs random #" + std::to_string(k),
                                  side_name(winner_side), out.winner ? side_name(*out.winner) : "none"});
      if (out.move_invariant_violations > 0)
        rep.fail_structural(tag, "bipartite move invariant violated vs random");
    }
  }
  return rep;
}

}  // namespace

CampaignResult run_campaign_file(const std::string& json_text, int workers, uint64_t seed_override,
                                 std::function<void(const VerifyReport&)> on_report) {
  CampaignResult result;
  json spec = json::parse(json_text);
  if (!spec.contains("campaigns") || spec["campaigns"].empty()) {
    VerifyReport rep;
    rep.kind = "empty";
    result.reports.push_back(rep);
    if (on_report) on_report(rep);
    return result;
  }
  for (const json& c : spec["campaigns"]) {
    std::string type = c.at("type").get<std::string>();
    uint64_t seed = seed_override ? seed_override : c.value("seed", 1);
    VerifyReport rep;
    if (type == "oracle") {
      CorpusSpec corpus;
      corpus.exhaustive_max = c.value("exhaustive_max", 0);
      corpus.sample_count = c.value("samples", 0);
      corpus.sample_max_vertices = c.value("sample_max_vertices", 4);
      corpus.sample_clauses = c.value("sample_clauses", 3);
      corpus.seed = seed;
      SolveOptions budget;
      budget.node_budget = c.value("budget", uint64_t{10'000'000});
      rep = verify_oracle(parse_reduction_kind(c.at("kind").get<std::string>()), corpus, budget,
                          workers);
    } else if (type == "structure") {
      ReductionKind kind = parse_reduction_kind(c.at("kind").get<std::string>());
      int instances = c.value("instances", 10);
      int n = c.value("n", 4), m = c.value("m", 2);
      rep.kind = std::string("structure:") + reduction_kind_name(kind);
      Rng rng(seed);
      for (int i = 0; i < instances; ++i) {
        QbfInstance q = random_instance(n, m, rng.next());
        ReductionArtifact art;
        if (kind == ReductionKind::UPR) art = tqbf_to_upr(normalize_for(q, ReductionTarget::UPR));
        else if (kind == ReductionKind::UPF) art = tqbf_to_upf(normalize_for(q, ReductionTarget::UPF));
        else if (kind == ReductionKind::DIF) art = tqbf_to_dif(q);
        else art = tqbf_to_dpf(normalize_for(q, ReductionTarget::DPF));
        rep.merge(verify_structure(art));
      }
      rep.kind = std::string("structure:") + reduction_kind_name(kind);
    } else if (type == "scripted") {
      rep = run_scripted_campaign(parse_reduction_kind(c.at("kind").get<std::string>()),
                                  c.value("instances", 3), c.value("n", 4), c.value("m", 2),
                                  c.value("random_playouts", 10), seed);
    } else if (type == "lemma_fixtures") {
      rep = lemma_fixtures();
    } else if (type == "fault_injection") {
      SolveOptions budget;
      budget.node_budget = c.value("budget", uint64_t{10'000'000});
      rep = fault_injection_dif(seed, budget);
    } else {
      rep.kind = type;
      rep.fail_structural(type, "unknown campaign type");
    }
    if (on_report) on_report(rep);
    result.reports.push_back(std::move(rep));
  }
  return result;
}

}  // namespace geolab
