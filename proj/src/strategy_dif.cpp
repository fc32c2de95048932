#include <algorithm>
#include <map>

#include "geolab/strategy.hpp"

namespace geolab {

namespace {

// Proper play for the DIF construction. The token runs down the variable
// gadgets (the key deletion when moving onto a joining vertex sets the
// variable: delete the left predecessor for true, the right one for false),
// then Right picks a clause, Left picks a literal, and the game ends within
// three more moves.
class DifScript : public Strategy {
 public:
  DifScript(const ReductionArtifact& art, PlayerSide side, std::optional<Policy> policy,
            Ledger* ledger)
      : side_(side), policy_(std::move(policy)), ledger_(ledger) {
    if (art.kind != ReductionKind::DIF) throw GraphError("DifScript needs a DIF artifact");
    const auto& q = *art.source_qbf;
    n_ = q.num_vars;
    m_ = q.num_clauses();
    assign_.assign(n_ + 1, -1);

    top_.assign(n_ + 1, -1);
    bottom_.assign(n_ + 1, -1);
    l1_ = l2_ = r1_ = r2_ = lft_ = rgt_ = join_ = top_;
    clause_.assign(m_ + 1, -1);
    occ_lit_.assign(m_ + 1, {});
    occ_entry_.assign(m_ + 1, {});

    for (VertexId v = 0; v < static_cast<VertexId>(art.roles.size()); ++v) {
      const VertexRole& r = art.roles[v];
      switch (r.kind) {
        case VertexRole::Kind::Variable: {
          auto& slot = r.tag == "top" ? top_
                       : r.tag == "bottom" ? bottom_
                       : r.tag == "left1" ? l1_
                       : r.tag == "left2" ? l2_
                       : r.tag == "right1" ? r1_
                       : r.tag == "right2" ? r2_
                       : r.tag == "left" ? lft_
                       : r.tag == "right" ? rgt_
                                          : join_;
          slot[r.index] = v;
          break;
        }
        case VertexRole::Kind::Clause:
          clause_[r.index] = v;
          break;
        case VertexRole::Kind::Linker:
          occ_lit_[r.index][r.slot - 1] = r.literal;
          occ_entry_[r.index][r.slot - 1].push_back(v);  // odd vars: direct entries
          break;
        case VertexRole::Kind::Other:
          if (r.tag == "extra") {
            occ_lit_[r.index][r.slot - 1] = r.literal;
            occ_extra_[{r.index, r.slot}] = v;
          }
          break;
        default:
          break;
      }
    }
    roles_ = &art.roles;
  }

  std::optional<Move> next(const Position& p) override {
    const GameGraph& g = p.graph;
    VertexId v = p.token();
    const VertexRole& role = (*roles_)[v];

    auto to_first_live = [&](std::initializer_list<VertexId> options) -> std::optional<VertexId> {
      for (VertexId w : options)
        if (w >= 0 && g.live(w)) return w;
      return std::nullopt;
    };

    if (role.kind == VertexRole::Kind::Variable) {
      int i = role.index;
      if (role.tag == "top") {
        auto w = i % 2 ? to_first_live({l1_[i], r1_[i]}) : to_first_live({lft_[i], rgt_[i]});
        if (!w) return diverged("no live path from top of gadget " + std::to_string(i));
        return Move{v, *w, v};
      }
      if (role.tag == "left1" || role.tag == "right1") {
        VertexId w = role.tag == "left1" ? l2_[i] : r2_[i];
        if (!g.live(w)) return diverged("second path vertex dead in gadget " + std::to_string(i));
        return Move{v, w, v};
      }
      if (role.tag == "left2" || role.tag == "right2") {
        // Key decision: moving onto the joining (bottom) vertex of an odd
        // gadget, deleting the left predecessor sets x_i true.
        if (!g.live(bottom_[i])) return diverged("joining vertex dead in gadget " + std::to_string(i));
        VertexId del = pick_key_deletion(g, i, l2_[i], r2_[i], v);
        return Move{v, bottom_[i], del};
      }
      if (role.tag == "left" || role.tag == "right") {
        // Same decision for even gadgets, made on the move to the joining vertex.
        if (!g.live(join_[i])) return diverged("joining vertex dead in gadget " + std::to_string(i));
        VertexId del = pick_key_deletion(g, i, lft_[i], rgt_[i], v);
        return Move{v, join_[i], del};
      }
      if (role.tag == "joining") {
        if (!g.live(bottom_[i])) return diverged("pendant dead in gadget " + std::to_string(i));
        return Move{v, bottom_[i], v};
      }
      if (role.tag == "bottom") {
        if (i < n_) {
          if (!g.live(top_[i + 1])) return diverged("next gadget top dead");
          return Move{v, top_[i + 1], v};
        }
        // Clause choice (Right's ply under proper play): prefer a clause
        // false under the tracked assignment.
        std::optional<VertexId> pick;
        for (int j = 1; j <= m_ && !pick; ++j)
          if (g.live(clause_[j]) && !clause_true(j)) pick = clause_[j];
        for (int j = 1; j <= m_ && !pick; ++j)
          if (g.live(clause_[j])) pick = clause_[j];
        if (!pick) return diverged("no live clause vertex");
        return Move{v, *pick, v};
      }
    }

    if (role.kind == VertexRole::Kind::Clause) {
      // Literal choice (Left's ply under proper play): Left prefers a true
      // literal, Right a false one.
      int j = role.index;
      auto entry = literal_entry(g, j, side_ == PlayerSide::Left);
      if (!entry) entry = literal_entry(g, j, side_ != PlayerSide::Left);
      if (!entry) return diverged("no enterable literal in clause " + std::to_string(j));
      return Move{v, *entry, v};
    }

    if (role.kind == VertexRole::Kind::Other && role.tag == "extra") {
      for (VertexId w : g.neighbors(v, Direction::Successors)) return Move{v, w, v};
      return std::nullopt;  // stuck is handled by the driver
    }

    if (role.kind == VertexRole::Kind::Linker) {
      auto succs = g.neighbors(v, Direction::Successors);
      if (succs.empty()) return std::nullopt;
      return Move{v, succs.front(), v};
    }

    return diverged("token in unanticipated location");
  }

  void observe(const Position& before, const Move& m) override {
    const VertexRole& to_role = (*roles_)[m.to];
    if (to_role.kind != VertexRole::Kind::Variable) return;
    int i = to_role.index;
    bool odd = i % 2 == 1;
    bool is_joining = odd ? to_role.tag == "bottom" : to_role.tag == "joining";
    if (!is_joining) return;
    VertexId left_pred = odd ? l2_[i] : lft_[i];
    VertexId right_pred = odd ? r2_[i] : rgt_[i];
    if (m.del == left_pred) assign_[i] = 1;
    else if (m.del == right_pred) assign_[i] = 0;
    (void)before;
  }

 private:
  bool my_variable(int i) const {
    return (i % 2 == 1) == (side_ == PlayerSide::Left);
  }

  uint32_t prefix_mask(int i) const {
    uint32_t mask = 0;
    for (int k = 1; k < i; ++k)
      if (assign_[k] == 1) mask |= 1u << (k - 1);
    return mask;
  }

  bool clause_true(int j) const {
    for (int k = 0; k < 3; ++k) {
      Lit l = occ_lit_[j][k];
      bool val = lit_var(l) <= n_ && assign_[lit_var(l)] == 1;
      if (val == lit_positive(l)) return true;
    }
    return false;
  }

  VertexId pick_key_deletion(const GameGraph& g, int i, VertexId left_pred, VertexId right_pred,
                             VertexId from) {
    bool want_true;
    if (my_variable(i) && policy_) {
      want_true = policy_->decide_or(i, prefix_mask(i), false);
    } else if (my_variable(i)) {
      want_true = false;
    } else {
      // Not this script's decision under proper play; keep it regular.
      return from;
    }
    VertexId del = want_true ? left_pred : right_pred;
    if (!g.live(del)) del = from;  // degraded: the value is already forced
    return del;
  }

  // Entry vertex for a literal occurrence of clause j (the literal vertex
  // for odd variables, the extra vertex for even ones).
  std::optional<VertexId> literal_entry(const GameGraph& g, int j, bool want_true) {
    for (int k = 1; k <= 3; ++k) {
      Lit l = occ_lit_[j][k - 1];
      int i = lit_var(l);
      bool val = assign_[i] == 1;
      if (want_true && val != lit_positive(l)) continue;
      if (i % 2 == 1) {
        for (VertexId entry : occ_entry_[j][k - 1])
          if (g.live(entry)) return entry;
      } else {
        auto it = occ_extra_.find({j, k});
        if (it != occ_extra_.end() && g.live(it->second)) return it->second;
      }
    }
    return std::nullopt;
  }

  PlayerSide side_;
  std::optional<Policy> policy_;
  Ledger* ledger_;
  const std::vector<VertexRole>* roles_ = nullptr;
  int n_ = 0, m_ = 0;
  std::vector<VertexId> top_, bottom_, l1_, l2_, r1_, r2_, lft_, rgt_, join_;
  std::vector<VertexId> clause_;
  std::vector<std::array<Lit, 3>> occ_lit_;
  std::vector<std::array<std::vector<VertexId>, 3>> occ_entry_;
  std::map<std::pair<int, int>, VertexId> occ_extra_;
  std::vector<int> assign_;
};

}  // namespace

std::unique_ptr<Strategy> make_dif_script(const ReductionArtifact& art, PlayerSide side,
                                          std::optional<Policy> policy, Ledger* ledger) {
  return std::make_unique<DifScript>(art, side, std::move(policy), ledger);
}

}  // namespace geolab
