#include <algorithm>
#include <map>

#include "geolab/strategy.hpp"

namespace geolab {

namespace {

// Proper play for the UPR construction, hardened against opponents who leave
// the proper lines. Restricted deletion makes linkers and connectors one-way
// corridors: when the opponent commits to a corridor that ends at a live
// clause (or at EXIT), the warden races there first, which strands them at
// the corridor's end. Otherwise play follows the proof's stages: Left
// descends her odd chain, exhausts the delay graph, goes through EXIT and a
// clause connector into the surviving clause and out along a true-literal
// linker; Right descends the even chain, sweeps the clause selection gadget
// keeping one false clause alive, and retires down the escape path.
class UprScript : public Strategy {
 public:
  UprScript(const ReductionArtifact& art, PlayerSide side, std::optional<Policy> policy,
            Ledger* ledger)
      : side_(side), policy_(std::move(policy)), ledger_(ledger) {
    if (art.kind != ReductionKind::UPR) throw GraphError("UprScript needs a UPR artifact");
    const auto& q = *art.source_qbf;
    n_ = q.num_vars;
    m_ = q.num_clauses();
    sizes_ = expected_upr_sizes(n_, m_);
    assign_.assign(n_ + 1, -1);
    roles_ = &art.roles;

    top_.assign(n_ + 1, -1);
    bottom_ = left_ = right_ = top_;
    clause_.assign(m_ + 1, -1);
    selector_.assign(m_, -1);
    part1_.assign(sizes_.delay_part + 1, -1);
    part2_ = part1_;
    conn_.assign(m_ + 1, std::vector<VertexId>(sizes_.connector + 1, -1));
    esc_.assign(sizes_.escape + 1, -1);

    for (VertexId v = 0; v < static_cast<VertexId>(art.roles.size()); ++v) {
      const VertexRole& r = art.roles[v];
      switch (r.kind) {
        case VertexRole::Kind::Variable:
          (r.tag == "top"      ? top_
           : r.tag == "bottom" ? bottom_
           : r.tag == "left"   ? left_
                               : right_)[r.index] = v;
          break;
        case VertexRole::Kind::Clause: clause_[r.index] = v; break;
        case VertexRole::Kind::Other:
          if (r.tag == "selector") selector_[r.slot] = v;
          break;
        case VertexRole::Kind::Delay: (r.index == 1 ? part1_ : part2_)[r.slot] = v; break;
        case VertexRole::Kind::Exit: exit_ = v; break;
        case VertexRole::Kind::ClauseConnector: conn_[r.index][r.slot] = v; break;
        case VertexRole::Kind::Escape: esc_[r.slot] = v; break;
        case VertexRole::Kind::Linker: {
          LinkerKey key{r.index, std::stoi(r.tag), r.copy};
          auto& path = linker_[key];
          if (static_cast<int>(path.size()) < r.slot) path.resize(r.slot, -1);
          path[r.slot - 1] = v;
          linker_lit_[key] = r.literal;
          break;
        }
        default: break;
      }
    }
    for (int i = 3; i <= n_; ++i) top_[i] = bottom_[i - 2];
    for (auto& [key, path] : linker_) {
      Lit l = linker_lit_[key];
      linker_target_[key] = lit_positive(l) ? right_[lit_var(l)] : left_[lit_var(l)];
    }
  }

  std::optional<Move> next(const Position& p) override {
    const GameGraph& g = p.graph;
    const VertexId me = p.token_of(side_);
    const VertexId opp = p.token_of(opponent(side_));
    const VertexRole& mr = (*roles_)[me];

    // Committed to the escape path: just march.
    if (mr.kind == VertexRole::Kind::Escape) {
      if (mr.slot < sizes_.escape && g.live(esc_[mr.slot + 1]) && esc_[mr.slot + 1] != opp)
        return Move{me, esc_[mr.slot + 1], me};
      return fallback(g, me, opp);
    }

    // Punishment races take precedence over stage play.
    if (auto mv = race_move(g, me, opp)) return mv;

    switch (mr.kind) {
      case VertexRole::Kind::Variable: return variable_move(g, me, opp, mr);
      case VertexRole::Kind::Clause: return clause_move(g, me, opp, mr);
      case VertexRole::Kind::Other:
        if (mr.tag == "selector") return selector_move(g, me, opp);
        return fallback(g, me, opp);
      case VertexRole::Kind::Delay: return delay_move(g, me, opp, mr);
      case VertexRole::Kind::Exit: return exit_move(g, me, opp);
      case VertexRole::Kind::ClauseConnector: return connector_move(g, me, opp, mr);
      case VertexRole::Kind::Linker: return linker_move(g, me, opp, mr);
      default: return fallback(g, me, opp);
    }
  }

  void observe(const Position& before, const Move& m) override {
    const VertexRole& to_role = (*roles_)[m.to];
    const VertexRole& from_role = (*roles_)[m.from];
    if (to_role.kind == VertexRole::Kind::Variable &&
        (to_role.tag == "left" || to_role.tag == "right") &&
        from_role.kind == VertexRole::Kind::Variable &&
        (from_role.tag == "top" || from_role.tag == "bottom")) {
      // Descending through a side vertex sets the variable: left = true.
      assign_[to_role.index] = to_role.tag == "left" ? 1 : 0;
    }
    (void)before;
  }

 private:
  struct LinkerKey {
    int clause, occ, copy;
    bool operator<(const LinkerKey& o) const {
      return std::tie(clause, occ, copy) < std::tie(o.clause, o.occ, o.copy);
    }
  };

  bool my_variable(int i) const { return (i % 2 == 1) == (side_ == PlayerSide::Left); }

  uint32_t prefix_mask(int i) const {
    uint32_t mask = 0;
    for (int k = 1; k < i; ++k)
      if (assign_[k] == 1) mask |= 1u << (k - 1);
    return mask;
  }

  bool clause_true(int j, const QbfInstance* /*unused*/ = nullptr) const {
    for (const auto& [key, lit] : linker_lit_) {
      if (key.clause != j || key.copy != 1) continue;
      if ((assign_[lit_var(lit)] == 1) == lit_positive(lit)) return true;
    }
    return false;
  }

  int avoided_clause() {
    if (avoid_ == 0) {
      for (int j = 1; j <= m_ && avoid_ == 0; ++j)
        if (!clause_true(j)) avoid_ = j;
      if (avoid_ == 0) avoid_ = m_;
    }
    return avoid_;
  }

  bool open(const GameGraph& g, VertexId v, VertexId opp) const {
    return v >= 0 && g.live(v) && v != opp;
  }

  std::optional<Move> fallback(const GameGraph& g, VertexId me, VertexId opp) {
    VertexId best = -1;
    int best_deg = -1;
    for (VertexId w : g.neighbors(me)) {
      if (w == opp) continue;
      int deg = static_cast<int>(g.neighbors(w).size());
      if (deg > best_deg) {
        best_deg = deg;
        best = w;
      }
    }
    if (best == -1) return diverged("no fallback move");
    return Move{me, best, me};
  }

  // --- racing ---------------------------------------------------------

  // Corridor commitment of the opponent: (target vertex, their distance).
  struct Threat {
    VertexId target = -1;
    int dist = 0;
  };

  std::optional<Threat> detect_threat(const GameGraph& g, VertexId opp) const {
    if (opp < 0 || !g.live(opp)) return std::nullopt;
    const VertexRole& r = (*roles_)[opp];
    if (r.kind == VertexRole::Kind::Linker) {
      LinkerKey key{r.index, std::stoi(r.tag), r.copy};
      const auto& path = linker_.at(key);
      int L = static_cast<int>(path.size());
      int s = r.slot;
      VertexId target = linker_target_.at(key);
      bool behind_dead = (s == L) ? !g.live(target) : !g.live(path[s]);
      if (!behind_dead) return std::nullopt;  // not committed toward the clause
      for (int t = 1; t < s; ++t)
        if (!g.live(path[t - 1])) return std::nullopt;
      if (!g.live(clause_[r.index])) return std::nullopt;
      return Threat{clause_[r.index], s};
    }
    if (r.kind == VertexRole::Kind::ClauseConnector) {
      int j = r.index, s = r.slot;
      const auto& path = conn_[j];
      bool below_dead = (s == 1) ? !g.live(exit_) : !g.live(path[s - 1]);
      bool above_dead = (s == sizes_.connector) ? !g.live(clause_[j]) : !g.live(path[s + 1]);
      if (below_dead && !above_dead && g.live(clause_[j])) {
        for (int t = s + 1; t <= sizes_.connector; ++t)
          if (!g.live(path[t])) return std::nullopt;
        return Threat{clause_[j], sizes_.connector - s + 1};
      }
      if (above_dead && !below_dead && g.live(exit_) && side_ == PlayerSide::Left) {
        for (int t = 1; t < s; ++t)
          if (!g.live(path[t])) return std::nullopt;
        return Threat{exit_, s};
      }
    }
    return std::nullopt;
  }

  std::optional<Move> race_move(const GameGraph& g, VertexId me, VertexId opp) {
    auto threat = detect_threat(g, opp);
    if (!threat) return std::nullopt;
    if (me == threat->target) {
      // Standing on the raced vertex: leave it (restricted deletion removes
      // it behind us). From EXIT that means taking another connector; from a
      // clause, a selector keeps the sweep alive.
      if (me == exit_) return exit_move(g, me, opp);
      for (int t = 1; t <= m_ - 1; ++t)
        if (open(g, selector_[t], opp)) return Move{me, selector_[t], me};
      return fallback(g, me, opp);
    }
    auto path = detail::live_path(g, me, threat->target, opp);
    if (path.size() < 2) return std::nullopt;
    int dist_me = static_cast<int>(path.size()) - 1;
    if (dist_me > threat->dist) return std::nullopt;  // cannot win the race
    return Move{me, path[1], me};
  }

  // --- stages ----------------------------------------------------------

  std::optional<Move> variable_move(const GameGraph& g, VertexId me, VertexId opp,
                                    const VertexRole& mr) {
    int chain_top = 0;
    if (mr.tag == "top") chain_top = mr.index;
    else if (mr.tag == "bottom" && mr.index + 2 <= n_ &&
             (g.live(left_[mr.index + 2]) || g.live(right_[mr.index + 2])))
      chain_top = mr.index + 2;

    if (chain_top != 0) {
      int i = chain_top;
      bool want_true = (my_variable(i) && policy_) ? policy_->decide_or(i, prefix_mask(i), false) : false;
      VertexId first = want_true ? left_[i] : right_[i];
      VertexId second = want_true ? right_[i] : left_[i];
      if (open(g, first, opp)) return Move{me, first, me};
      if (open(g, second, opp)) return Move{me, second, me};
      return fallback(g, me, opp);
    }
    if (mr.tag == "left" || mr.tag == "right") {
      int i = mr.index;
      if (open(g, bottom_[i], opp)) return Move{me, bottom_[i], me};
      // Late game: the chain below is gone, continue into the longest
      // adjacent linker corridor.
      return best_corridor_entry(g, me, opp);
    }
    // A true chain end: enter the delay graph (Left) or the clause
    // selection gadget (Right).
    if (mr.tag == "bottom") {
      int i = mr.index;
      if (i == n_ - 1 && side_ == PlayerSide::Left) {
        for (int t = 1; t <= sizes_.delay_part; ++t)
          if (open(g, part1_[t], opp)) return Move{me, part1_[t], me};
        if (open(g, exit_, opp)) return Move{me, exit_, me};
        return fallback(g, me, opp);
      }
      if (i == n_ && side_ == PlayerSide::Right) {
        if (ledger_ && !ledger_->has("upr.right_moves_at_phase1_end"))
          ledger_->set("upr.right_moves_at_phase1_end", ledger_->get("right_moves"));
        int avoid = avoided_clause();
        for (int j = 1; j <= m_; ++j)
          if (j != avoid && open(g, clause_[j], opp)) return Move{me, clause_[j], me};
        if (open(g, clause_[avoid], opp)) return Move{me, clause_[avoid], me};
        return fallback(g, me, opp);
      }
    }
    return fallback(g, me, opp);
  }

  std::optional<Move> clause_move(const GameGraph& g, VertexId me, VertexId opp,
                                  const VertexRole& mr) {
    if (side_ == PlayerSide::Right) {
      for (int t = 1; t <= m_ - 1; ++t)
        if (open(g, selector_[t], opp)) return Move{me, selector_[t], me};
      return fallback(g, me, opp);
    }
    // Left at a clause: leave along a linker, preferring a true literal and
    // within that the longer (even-variable) corridors.
    int j = mr.index;
    std::optional<Move> pick;
    int best_score = -1;
    for (const auto& [key, path] : linker_) {
      if (key.clause != j) continue;
      if (!open(g, path[0], opp)) continue;
      Lit l = linker_lit_.at(key);
      bool truthy = (assign_[lit_var(l)] == 1) == lit_positive(l);
      int run = corridor_run(g, key, opp);
      int score = (truthy ? 1000000 : 0) + run;
      if (score > best_score) {
        best_score = score;
        pick = Move{me, path[0], me};
      }
    }
    if (pick) return pick;
    return fallback(g, me, opp);
  }

  std::optional<Move> selector_move(const GameGraph& g, VertexId me, VertexId opp) {
    if (side_ == PlayerSide::Right) {
      int avoid = avoided_clause();
      for (int j = 1; j <= m_; ++j)
        if (j != avoid && open(g, clause_[j], opp)) return Move{me, clause_[j], me};
      if (open(g, esc_[1], opp)) return Move{me, esc_[1], me};
      return fallback(g, me, opp);
    }
    // Left stranded in the selection gadget (post-race): the escape path is
    // the best refuge.
    if (open(g, esc_[1], opp)) return Move{me, esc_[1], me};
    return fallback(g, me, opp);
  }

  std::optional<Move> delay_move(const GameGraph& g, VertexId me, VertexId opp,
                                 const VertexRole& mr) {
    const auto& other = mr.index == 1 ? part2_ : part1_;
    for (int t = 1; t <= sizes_.delay_part; ++t)
      if (open(g, other[t], opp)) return Move{me, other[t], me};
    if (mr.index == 2 && open(g, exit_, opp)) return Move{me, exit_, me};
    return fallback(g, me, opp);
  }

  std::optional<Move> exit_move(const GameGraph& g, VertexId me, VertexId opp) {
    // Prefer a connector whose clause is still alive and whose path is
    // intact; any open connector otherwise.
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 1; j <= m_; ++j) {
        if (!open(g, conn_[j][1], opp)) continue;
        if (pass == 0) {
          if (!g.live(clause_[j])) continue;
          bool intact = true;
          for (int s = 1; s <= sizes_.connector && intact; ++s)
            if (!open(g, conn_[j][s], opp)) intact = false;
          if (!intact) continue;
        }
        return Move{me, conn_[j][1], me};
      }
    return fallback(g, me, opp);
  }

  std::optional<Move> connector_move(const GameGraph& g, VertexId me, VertexId opp,
                                     const VertexRole& mr) {
    int j = mr.index, s = mr.slot;
    bool below_dead = (s == 1) ? !g.live(exit_) : !g.live(conn_[j][s - 1]);
    VertexId forward = (s == sizes_.connector) ? clause_[j] : conn_[j][s + 1];
    VertexId backward = (s == 1) ? exit_ : conn_[j][s - 1];
    if (below_dead) {
      if (open(g, forward, opp)) return Move{me, forward, me};
      return fallback(g, me, opp);
    }
    if (open(g, forward, opp)) return Move{me, forward, me};
    if (open(g, backward, opp)) return Move{me, backward, me};
    return fallback(g, me, opp);
  }

  std::optional<Move> linker_move(const GameGraph& g, VertexId me, VertexId opp,
                                  const VertexRole& mr) {
    LinkerKey key{mr.index, std::stoi(mr.tag), mr.copy};
    const auto& path = linker_.at(key);
    int L = static_cast<int>(path.size());
    int s = mr.slot;
    VertexId toward_clause = (s == 1) ? clause_[key.clause] : path[s - 2];
    VertexId toward_target = (s == L) ? linker_target_.at(key) : path[s];
    bool clauseward_dead = !(toward_clause >= 0 && g.live(toward_clause));
    if (clauseward_dead) {
      if (open(g, toward_target, opp)) return Move{me, toward_target, me};
      return fallback(g, me, opp);
    }
    if (open(g, toward_clause, opp)) return Move{me, toward_clause, me};
    if (open(g, toward_target, opp)) return Move{me, toward_target, me};
    return fallback(g, me, opp);
  }

  // Longest one-way corridor among linkers adjacent to a variable side
  // vertex; used after the chain below a side vertex is gone.
  std::optional<Move> best_corridor_entry(const GameGraph& g, VertexId me, VertexId opp) {
    std::optional<Move> pick;
    int best = -1;
    for (const auto& [key, path] : linker_) {
      if (linker_target_.at(key) != me) continue;
      VertexId entry = path.back();
      if (!open(g, entry, opp)) continue;
      int run = 0;
      for (int t = static_cast<int>(path.size()); t >= 1 && g.live(path[t - 1]); --t) ++run;
      if (run > best) {
        best = run;
        pick = Move{me, entry, me};
      }
    }
    if (pick) return pick;
    return fallback(g, me, opp);
  }

  // Live run of a linker from its clause end, counting the variable vertex.
  int corridor_run(const GameGraph& g, const LinkerKey& key, VertexId opp) const {
    const auto& path = linker_.at(key);
    int run = 0;
    for (VertexId v : path) {
      if (!g.live(v) || v == opp) return run;
      ++run;
    }
    VertexId target = linker_target_.at(key);
    if (target >= 0 && g.live(target) && target != opp) ++run;
    return run;
  }

  PlayerSide side_;
  std::optional<Policy> policy_;
  Ledger* ledger_;
  const std::vector<VertexRole>* roles_ = nullptr;
  int n_ = 0, m_ = 0;
  int avoid_ = 0;
  UprSizes sizes_{};
  std::vector<VertexId> top_, bottom_, left_, right_, clause_, selector_, part1_, part2_, esc_;
  VertexId exit_ = -1;
  std::vector<std::vector<VertexId>> conn_;
  std::map<LinkerKey, std::vector<VertexId>> linker_;
  std::map<LinkerKey, Lit> linker_lit_;
  std::map<LinkerKey, VertexId> linker_target_;
  std::vector<int> assign_;
};

}  // namespace

std::unique_ptr<Strategy> make_upr_script(const ReductionArtifact& art, PlayerSide side,
                                          std::optional<Policy> policy, Ledger* ledger) {
  return std::make_unique<UprScript>(art, side, std::move(policy), ledger);
}

}  // namespace geolab
