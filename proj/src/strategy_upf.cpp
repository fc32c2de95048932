#include <algorithm>
#include <deque>
#include <map>

#include "geolab/strategy.hpp"

namespace geolab {

namespace {

// Proper play for the UPF construction, hardened for improper opponents.
// The win path dominates everything: whoever enters its first vertex wins,
// so both scripts keep the scheduled guards (path players delete the fifth
// path vertex on their third move, diamond players re-check it, Right
// deletes PRIZE on entering the third escape vertex) and, on every turn,
// take a win-path race whenever the opponent can neither reach the route
// nor delete a route vertex in time.
class UpfScript : public Strategy {
 public:
  UpfScript(const ReductionArtifact& art, PlayerSide side, std::optional<Policy> policy,
            Ledger* ledger)
      : side_(side), policy_(std::move(policy)), ledger_(ledger) {
    if (art.kind != ReductionKind::UPF) throw GraphError("UpfScript needs a UPF artifact");
    const auto& q = *art.source_qbf;
    n_ = q.num_vars;
    m_ = q.num_clauses();
    sizes_ = expected_upf_sizes(n_, m_);
    assign_.assign(n_ + 1, -1);
    roles_ = &art.roles;

    dia_.assign(n_ + 1, {});
    path_.assign(n_ + 1, {});
    clause_.assign(m_ + 1, -1);
    del_.assign(m_ + 1, std::vector<VertexId>(sizes_.deletion_path + 1, -1));
    att_.assign(m_ + 1, std::vector<int>(sizes_.deletion_path + 1, 0));
    delay_.assign(sizes_.delay + 1, -1);
    conn_.assign(m_ + 1, std::vector<VertexId>(sizes_.connector + 1, -1));
    esc_.assign(sizes_.escape + 1, -1);
    win_.assign(sizes_.win_path + 1, -1);

    static const std::map<std::string, int> kDiamondSlot = {
        {"top", 0}, {"tl", 1}, {"left", 2}, {"bl", 3}, {"bottom", 4}, {"br", 5}, {"right", 6}, {"tr", 7}};
    for (VertexId v = 0; v < static_cast<VertexId>(art.roles.size()); ++v) {
      const VertexRole& r = art.roles[v];
      switch (r.kind) {
        case VertexRole::Kind::Variable: {
          auto it = kDiamondSlot.find(r.tag);
          if (it != kDiamondSlot.end()) dia_[r.index][it->second] = v;
          else path_[r.index][r.tag[1] - '1'] = v;  // p1..p5
          break;
        }
        case VertexRole::Kind::Clause: clause_[r.index] = v; break;
        case VertexRole::Kind::ClauseDeletion: del_[r.index][r.slot] = v; break;
        case VertexRole::Kind::Delay: delay_[r.slot] = v; break;
        case VertexRole::Kind::ClauseConnector: conn_[r.index][r.slot] = v; break;
        case VertexRole::Kind::Linker: {
          auto& p = linker_[{r.index, r.copy}];
          if (static_cast<int>(p.size()) < r.slot) p.resize(r.slot, -1);
          p[r.slot - 1] = v;
          linker_lit_[{r.index, r.copy}] = r.literal;
          break;
        }
        case VertexRole::Kind::Escape: esc_[r.slot] = v; break;
        case VertexRole::Kind::Prize: prize_ = v; break;
        case VertexRole::Kind::WinPath: win_[r.slot] = v; break;
        case VertexRole::Kind::Other:
          if (r.tag == "csg_bottom") csg_bottom_ = v;
          break;
        default: break;
      }
    }
    for (auto& [key, lit] : linker_lit_)
      linker_target_[key] = lit_positive(lit) ? dia_[lit_var(lit)][6] : dia_[lit_var(lit)][2];
    // Attachment slots: clause j sits on path p at slot j+2 (j < p) or j+1 (j > p).
    for (int p = 1; p <= m_; ++p)
      for (int j = 1; j <= m_; ++j)
        if (j != p) att_[p][j < p ? j + 2 : j + 1] = j;
  }

  std::optional<Move> next(const Position& p) override {
    const GameGraph& g = p.graph;
    const VertexId me = p.token_of(side_);
    const VertexId opp = p.token_of(opponent(side_));
    const VertexRole& mr = (*roles_)[me];

    // Already on the win path: march to the end.
    if (mr.kind == VertexRole::Kind::WinPath) {
      if (mr.slot < sizes_.win_path && open(g, win_[mr.slot + 1], opp))
        return Move{me, win_[mr.slot + 1], me};
      return fallback(g, me, opp);
    }
    if (me == prize_) {
      if (open(g, win_[1], opp)) return Move{me, win_[1], me};
      return fallback(g, me, opp);
    }

    // A safe race to the win path beats any stage move.
    if (auto mv = win_race(g, me, opp)) return mv;

    // Queued stall plans (clause connector / deletion path / linker stalls).
    while (!plan_.empty()) {
      Move head = plan_.front();
      if (head.from == me && !classify_move(p, head)) {
        plan_.pop_front();
        return head;
      }
      plan_.clear();
    }

    switch (mr.kind) {
      case VertexRole::Kind::Variable: return variable_move(g, me, opp, mr);
      case VertexRole::Kind::ClauseDeletion: return deletion_path_move(g, me, opp, mr);
      case VertexRole::Kind::Delay: return delay_move(g, me, opp, mr);
      case VertexRole::Kind::Clause: return clause_move(g, p, me, opp, mr);
      case VertexRole::Kind::ClauseConnector: return connector_move(g, me, opp, mr);
      case VertexRole::Kind::Linker: return linker_move(g, me, opp, mr);
      case VertexRole::Kind::Escape: return escape_move(g, me, opp, mr);
      case VertexRole::Kind::Other:
        if (me == csg_bottom_ && open(g, esc_[1], opp)) return Move{me, esc_[1], me};
        return fallback(g, me, opp);
      default: return fallback(g, me, opp);
    }
  }

  void observe(const Position& before, const Move& m) override {
    const VertexRole& to_role = (*roles_)[m.to];
    const VertexRole& from_role = (*roles_)[m.from];
    if (to_role.kind == VertexRole::Kind::Variable && from_role.kind == VertexRole::Kind::Variable &&
        from_role.tag == "top" && (to_role.tag == "tl" || to_role.tag == "tr")) {
      assign_[to_role.index] = to_role.tag == "tl" ? 1 : 0;  // travel left = true
    }
    (void)before;
  }

 private:
  bool my_variable(int i) const { return (i % 2 == 1) == (side_ == PlayerSide::Left); }

  uint32_t prefix_mask(int i) const {
    uint32_t mask = 0;
    for (int k = 1; k < i; ++k)
      if (assign_[k] == 1) mask |= 1u << (k - 1);
    return mask;
  }

  bool clause_true(int j) const {
    for (const auto& [key, lit] : linker_lit_) {
      if (key.first != j) continue;
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

  // Race to the win path when the opponent can neither occupy nor delete any
  // route vertex strictly before we pass it.
  std::optional<Move> win_race(const GameGraph& g, VertexId me, VertexId opp) {
    if (!g.live(win_[1])) return std::nullopt;
    auto route = detail::live_path(g, me, win_[1], opp);
    if (route.size() < 2) return std::nullopt;
    auto opp_dist = detail::live_distances(g, opp);
    for (size_t t = 1; t < route.size(); ++t) {
      VertexId r = route[t];
      int margin = static_cast<int>(t);  // blocked iff opponent acts by move t-1... see below
      int reach = opp_dist[r] >= 0 ? opp_dist[r] : 1 << 20;
      for (VertexId u : g.neighbors(r))
        if (opp_dist[u] >= 0) reach = std::min(reach, opp_dist[u]);
      // Our t-th move happens before the opponent's t-th; they must arrive
      // (or be adjacent, for a deletion) strictly earlier to stop us.
      if (reach <= margin - 1) return std::nullopt;
    }
    return Move{me, route[1], me};
  }

  std::optional<Move> variable_move(const GameGraph& g, VertexId me, VertexId opp,
                                    const VertexRole& mr) {
    int i = mr.index;
    const auto& d = dia_[i];
    const auto& pp = path_[i];
    if (mr.tag == "top") {
      bool want_true = (my_variable(i) && policy_) ? policy_->decide_or(i, prefix_mask(i), false) : false;
      VertexId first = want_true ? d[1] : d[7];
      VertexId second = want_true ? d[7] : d[1];
      if (open(g, first, opp)) return Move{me, first, me};
      if (open(g, second, opp)) return Move{me, second, me};
      return fallback(g, me, opp);
    }
    if (mr.tag == "tl" || mr.tag == "tr") {
      VertexId to = mr.tag == "tl" ? d[2] : d[6];
      if (open(g, to, opp)) return Move{me, to, me};
      return fallback(g, me, opp);
    }
    if (mr.tag == "left" || mr.tag == "right") {
      VertexId to = mr.tag == "left" ? d[3] : d[5];
      if (open(g, to, opp)) return Move{me, to, me};
      // Arrived here from a linker with the diamond burned below: walk on.
      return fallback(g, me, opp);
    }
    if (mr.tag == "bl" || mr.tag == "br") {
      if (!open(g, d[4], opp)) return fallback(g, me, opp);
      VertexId del = me;
      if (g.live(pp[4])) del = pp[4];  // the fifth path vertex guards the win path
      else {
        VertexId other = mr.tag == "bl" ? d[5] : d[3];
        if (g.live(other)) del = other;
      }
      return Move{me, d[4], del};
    }
    if (mr.tag == "bottom") {
      if (i < n_) {
        if (open(g, path_[i + 1][0], opp)) return Move{me, path_[i + 1][0], me};
        return fallback(g, me, opp);
      }
      // Bottom of x_n = clause selection top: Right heads down the deletion
      // path of his false clause.
      int p = avoided_clause();
      if (open(g, del_[p][1], opp)) return Move{me, del_[p][1], me};
      for (int alt = 1; alt <= m_; ++alt)
        if (open(g, del_[alt][1], opp)) return Move{me, del_[alt][1], me};
      return fallback(g, me, opp);
    }
    // Path vertices p1..p5.
    int s = mr.tag[1] - '1';  // 0-based
    if (s <= 2) {
      VertexId to = pp[s + 1];
      if (!open(g, to, opp)) return fallback(g, me, opp);
      // Third path move: delete the fifth vertex while passing.
      if (s == 2 && g.live(pp[4]) && pp[4] != opp) return Move{me, to, pp[4]};
      return Move{me, to, me};
    }
    if (s == 3) {
      if (i < n_) {
        if (open(g, dia_[i + 1][0], opp)) return Move{me, dia_[i + 1][0], me};
        return fallback(g, me, opp);
      }
      // p4 of x_n: Left enters the delay path.
      if (open(g, delay_[1], opp)) return Move{me, delay_[1], me};
      return fallback(g, me, opp);
    }
    return fallback(g, me, opp);  // p5: off-proper
  }

  std::optional<Move> deletion_path_move(const GameGraph& g, VertexId me, VertexId opp,
                                         const VertexRole& mr) {
    int p = mr.index, s = mr.slot;
    VertexId to = s < sizes_.deletion_path ? del_[p][s + 1] : csg_bottom_;
    if (!open(g, to, opp)) return fallback(g, me, opp);
    if (s < sizes_.deletion_path) {
      int j = att_[p][s + 1];
      if (j != 0 && g.live(clause_[j]) && clause_[j] != opp) return Move{me, to, clause_[j]};
    }
    return Move{me, to, me};
  }

  std::optional<Move> delay_move(const GameGraph& g, VertexId me, VertexId opp,
                                 const VertexRole& mr) {
    int t = mr.slot;
    if (t < sizes_.delay) {
      if (!open(g, delay_[t + 1], opp)) return fallback(g, me, opp);
      if (t == m_ + 7 && ledger_ && !ledger_->has("upf.left_p3_start"))
        ledger_->set("upf.left_p3_start",
                     ledger_->get(side_ == PlayerSide::Left ? "left_moves" : "right_moves"));
      return Move{me, delay_[t + 1], me};
    }
    // Last delay vertex: stall the dead connectors, then take the live one.
    for (int j = 1; j <= m_; ++j) {
      if (g.live(clause_[j])) continue;
      if (open(g, conn_[j][1], opp) && g.live(conn_[j][2]) && conn_[j][2] != opp) {
        plan_.push_back({conn_[j][1], me, conn_[j][1]});  // return move
        return Move{me, conn_[j][1], conn_[j][2]};
      }
    }
    for (int j = 1; j <= m_; ++j)
      if (g.live(clause_[j]) && open(g, conn_[j][1], opp)) return Move{me, conn_[j][1], me};
    return fallback(g, me, opp);
  }

  std::optional<Move> clause_move(const GameGraph& g, const Position& pos, VertexId me,
                                  VertexId opp, const VertexRole& mr) {
    int j = mr.index;
    // Clause deletion path stalls: four-move loops through each attachment.
    for (int p = 1; p <= m_; ++p) {
      if (p == j) continue;
      int s = j < p ? j + 2 : j + 1;
      VertexId qs = del_[p][s];
      if (!open(g, qs, opp)) continue;
      VertexId below = del_[p][s - 1], above = del_[p][s + 1], above2 = del_[p][s + 2];
      if (!g.live(below) || below == opp) continue;
      if (!open(g, above, opp) || !g.live(above2) || above2 == opp) continue;
      plan_.push_back({qs, above, above2});
      plan_.push_back({above, qs, above});
      plan_.push_back({qs, me, qs});
      return Move{me, qs, below};
    }
    // Linker stalls, keeping the chosen literal's linker for last.
    int final_occ = pick_final_linker(g, j, opp);
    for (int o = 1; o <= 3; ++o) {
      if (o == final_occ) continue;
      auto it = linker_.find({j, o});
      if (it == linker_.end()) continue;
      const auto& lp = it->second;
      if (!open(g, lp[0], opp) || !g.live(lp[1]) || lp[1] == opp) continue;
      plan_.push_back({lp[0], me, lp[0]});
      return Move{me, lp[0], lp[1]};
    }
    if (final_occ != 0) {
      const auto& lp = linker_.at({j, final_occ});
      if (open(g, lp[0], opp)) {
        if (ledger_ && !ledger_->has("upf.left_p3_moves_at_last_linker")) {
          const char* key = side_ == PlayerSide::Left ? "left_moves" : "right_moves";
          ledger_->set("upf.left_p3_moves_at_last_linker",
                       ledger_->get(key) - ledger_->get("upf.left_p3_start"));
        }
        return Move{me, lp[0], me};
      }
    }
    (void)pos;
    return fallback(g, me, opp);
  }

  // Occurrence whose linker we keep for the final run: a true literal with a
  // live target when possible, else the longest live corridor.
  int pick_final_linker(const GameGraph& g, int j, VertexId opp) {
    int best = 0, best_score = -1;
    for (int o = 1; o <= 3; ++o) {
      auto it = linker_.find({j, o});
      if (it == linker_.end()) continue;
      const auto& lp = it->second;
      if (!open(g, lp[0], opp)) continue;
      Lit l = linker_lit_.at({j, o});
      bool truthy = (assign_[lit_var(l)] == 1) == lit_positive(l);
      VertexId target = linker_target_.at({j, o});
      int run = 0;
      for (VertexId v : lp) {
        if (!g.live(v) || v == opp) break;
        ++run;
      }
      if (run == static_cast<int>(lp.size()) && g.live(target) && target != opp) ++run;
      int score = (truthy && g.live(target) ? 1000000 : 0) + run;
      if (score > best_score) {
        best_score = score;
        best = o;
      }
    }
    return best;
  }

  std::optional<Move> connector_move(const GameGraph& g, VertexId me, VertexId opp,
                                     const VertexRole& mr) {
    int j = mr.index, s = mr.slot;
    if (!g.live(clause_[j]) && s == 1 && open(g, delay_[sizes_.delay], opp))
      return Move{me, delay_[sizes_.delay], me};  // stall return
    VertexId forward = s < sizes_.connector ? conn_[j][s + 1] : clause_[j];
    if (open(g, forward, opp)) return Move{me, forward, me};
    VertexId backward = s > 1 ? conn_[j][s - 1] : delay_[sizes_.delay];
    if (open(g, backward, opp)) return Move{me, backward, me};
    return fallback(g, me, opp);
  }

  std::optional<Move> linker_move(const GameGraph& g, VertexId me, VertexId opp,
                                  const VertexRole& mr) {
    std::pair<int, int> key{mr.index, mr.copy};
    const auto& lp = linker_.at(key);
    int L = static_cast<int>(lp.size());
    int s = mr.slot;
    VertexId toward_clause = s == 1 ? clause_[key.first] : lp[s - 2];
    VertexId toward_target = s == L ? linker_target_.at(key) : lp[s];
    if (toward_clause >= 0 && g.live(toward_clause) && toward_clause != opp)
      return Move{me, toward_clause, me};
    if (open(g, toward_target, opp)) return Move{me, toward_target, me};
    return fallback(g, me, opp);
  }

  std::optional<Move> escape_move(const GameGraph& g, VertexId me, VertexId opp,
                                  const VertexRole& mr) {
    int t = mr.slot;
    if (t >= sizes_.escape) return fallback(g, me, opp);
    if (!open(g, esc_[t + 1], opp)) return fallback(g, me, opp);
    if (t + 1 == 3 && g.live(prize_) && prize_ != opp) return Move{me, esc_[t + 1], prize_};
    return Move{me, esc_[t + 1], me};
  }

  PlayerSide side_;
  std::optional<Policy> policy_;
  Ledger* ledger_;
  const std::vector<VertexRole>* roles_ = nullptr;
  int n_ = 0, m_ = 0;
  int avoid_ = 0;
  UpfSizes sizes_{};
  std::vector<std::array<VertexId, 8>> dia_;
  std::vector<std::array<VertexId, 5>> path_;
  std::vector<VertexId> clause_, delay_, esc_, win_;
  std::vector<std::vector<VertexId>> del_, conn_;
  std::vector<std::vector<int>> att_;
  std::map<std::pair<int, int>, std::vector<VertexId>> linker_;
  std::map<std::pair<int, int>, Lit> linker_lit_;
  std::map<std::pair<int, int>, VertexId> linker_target_;
  VertexId prize_ = -1, csg_bottom_ = -1;
  std::vector<int> assign_;
  std::deque<Move> plan_;
};

}  // namespace

std::unique_ptr<Strategy> make_upf_script(const ReductionArtifact& art, PlayerSide side,
                                          std::optional<Policy> policy, Ledger* ledger) {
  return std::make_unique<UpfScript>(art, side, std::move(policy), ledger);
}

}  // namespace geolab
