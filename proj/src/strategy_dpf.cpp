#include <algorithm>
#include <map>

#include "geolab/strategy.hpp"

namespace geolab {

namespace {

// Proper play for the DPF construction. Left runs the odd diamond chain and
// then the delay path; Right runs the even chain and the clause deletion
// path, deleting every clause except one chosen false clause on his
// odd-indexed stops; Left is forced into the surviving clause and wins iff
// one of its linkers still connects to a variable gadget.
class DpfScript : public Strategy {
 public:
  DpfScript(const ReductionArtifact& art, PlayerSide side, std::optional<Policy> policy,
            Ledger* ledger)
      : side_(side), policy_(std::move(policy)), ledger_(ledger) {
    if (art.kind != ReductionKind::DPF) throw GraphError("DpfScript needs a DPF artifact");
    const auto& q = *art.source_qbf;
    n_ = q.num_vars;
    m_ = q.num_clauses();
    assign_.assign(n_ + 1, -1);
    roles_ = &art.roles;

    top_.assign(n_ + 1, -1);
    bottom_ = left_ = right_ = top_;
    clause_.assign(m_ + 1, -1);
    delay_.assign(2 * m_ - 2, -1);
    del_.assign(2 * m_ - 2, -1);
    esc_.assign(m_, -1);
    occ_lit_.assign(m_ + 1, {});
    occ_path_.assign(m_ + 1, {});
    occ_par_.assign(m_ + 1, {});
    occ_target_.assign(m_ + 1, {});

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
        case VertexRole::Kind::Delay: delay_[r.slot] = v; break;
        case VertexRole::Kind::ClauseDeletion: del_[r.slot] = v; break;
        case VertexRole::Kind::Escape: esc_[r.slot] = v; break;
        case VertexRole::Kind::Linker: {
          int k = r.copy;  // occurrence 1..3
          occ_lit_[r.index][k - 1] = r.literal;
          if (r.tag == "par") occ_par_[r.index][k - 1].push_back(v);
          else {
            auto& path = occ_path_[r.index][k - 1];
            if (static_cast<int>(path.size()) < r.slot) path.resize(r.slot, -1);
            path[r.slot - 1] = v;
          }
          break;
        }
        default: break;
      }
    }
    // Shared chain vertices: the top of gadget i (i >= 3) is the bottom of i-2.
    for (int i = 3; i <= n_; ++i) top_[i] = bottom_[i - 2];
    for (int j = 1; j <= m_; ++j)
      for (int k = 0; k < 3; ++k)
        occ_target_[j][k] = lit_positive(occ_lit_[j][k]) ? right_[lit_var(occ_lit_[j][k])]
                                                         : left_[lit_var(occ_lit_[j][k])];
  }

  std::optional<Move> next(const Position& p) override {
    const GameGraph& g = p.graph;
    VertexId v = p.token_of(side_);
    const VertexRole& role = (*roles_)[v];

    if (role.kind == VertexRole::Kind::Variable) {
      // Shared vertices carry the "bottom" role of the earlier gadget; a
      // bottom that still has a live diamond below it acts as the next top.
      int i = chain_gadget_at(v);
      if (i != 0) {
        VertexId side_vertex = g.live(left_[i]) ? left_[i] : right_[i];
        if (!g.live(side_vertex)) return diverged("both sides dead in gadget " + std::to_string(i));
        return Move{v, side_vertex, v};
      }
      if (role.tag == "left" || role.tag == "right") {
        int gi = role.index;
        if (!g.live(bottom_[gi])) return diverged("gadget bottom dead");
        VertexId del = key_deletion(g, gi, v);
        return Move{v, bottom_[gi], del};
      }
      if (role.tag == "bottom") {
        int gi = role.index;  // true bottom of the chain: enter delay/deletion path
        if (gi == n_ - 1) {
          if (!g.live(delay_[1])) return diverged("delay entry dead");
          return Move{v, delay_[1], v};
        }
        if (gi == n_) {
          if (!g.live(del_[1])) return diverged("deletion entry dead");
          // The first deletion vertex is odd-indexed: a clause goes already.
          VertexId c = clause_to_delete(g);
          return Move{v, del_[1], c != -1 ? c : v};
        }
        return diverged("token on unexpected bottom");
      }
      return diverged("token on unexpected variable slot");
    }

    if (role.kind == VertexRole::Kind::Delay) {
      int t = role.slot;
      if (t < 2 * m_ - 3) {
        if (!g.live(delay_[t + 1])) return diverged("delay path broken");
        return Move{v, delay_[t + 1], v};
      }
      // Move to the surviving clause vertex.
      for (int j = 1; j <= m_; ++j)
        if (g.live(clause_[j])) return Move{v, clause_[j], v};
      return std::nullopt;
    }

    if (role.kind == VertexRole::Kind::ClauseDeletion) {
      int t = role.slot;
      VertexId to = t < 2 * m_ - 3 ? del_[t + 1] : esc_[1];
      if (!g.live(to)) return diverged("deletion path broken");
      // Arrivals at odd-indexed deletion vertices delete a clause.
      if ((t + 1) % 2 == 1 && t < 2 * m_ - 3) {
        if (VertexId c = clause_to_delete(g); c != -1) return Move{v, to, c};
      }
      return Move{v, to, v};
    }

    if (role.kind == VertexRole::Kind::Escape) {
      int t = role.slot;
      if (t >= m_ - 1) return std::nullopt;
      if (!g.live(esc_[t + 1])) return diverged("escape path broken");
      return Move{v, esc_[t + 1], v};
    }

    if (role.kind == VertexRole::Kind::Clause) {
      int j = role.index;
      int k = pick_linker(g, j);
      if (k < 0) return std::nullopt;
      if (!occ_path_[j][k].empty()) {
        VertexId first = occ_path_[j][k].front();
        if (g.live(first)) return Move{v, first, v};
        return diverged("chosen linker entry dead");
      }
      // m == 4 edge: no path vertices would mean m-3 < 1, rejected upstream.
      return diverged("linker without path vertices");
    }

    if (role.kind == VertexRole::Kind::Linker) {
      int j = role.index, k = role.copy - 1;
      if (role.tag == "par") {
        VertexId target = occ_target_[j][k];
        if (!g.live(target)) return std::nullopt;
        return Move{v, target, v};
      }
      const auto& path = occ_path_[j][k];
      if (role.slot < static_cast<int>(path.size())) {
        VertexId to = path[role.slot];
        if (!g.live(to)) return diverged("linker path broken");
        return Move{v, to, v};
      }
      for (VertexId par : occ_par_[j][k])
        if (g.live(par)) return Move{v, par, v};
      return std::nullopt;
    }

    return diverged("token in unanticipated location");
  }

  void observe(const Position& before, const Move& m) override {
    const VertexRole& to_role = (*roles_)[m.to];
    if (to_role.kind == VertexRole::Kind::Variable && to_role.tag == "bottom") {
      int i = to_role.index;
      // The mover may be finishing gadget i or i+2 (shared vertex); the
      // deleted side identifies which.
      for (int gi : {i, i + 2}) {
        if (gi < 1 || gi > n_) continue;
        if (m.del == left_[gi]) assign_[gi] = 1;
        if (m.del == right_[gi]) assign_[gi] = 0;
      }
    }
    (void)before;
  }

 private:
  // When the token sits on a shared bottom/top vertex with the next diamond
  // still live, returns the gadget the mover is about to descend, else 0.
  int chain_gadget_at(VertexId v) const {
    const VertexRole& role = (*roles_)[v];
    if (role.kind != VertexRole::Kind::Variable) return 0;
    if (role.tag == "top") return role.index;
    if (role.tag == "bottom" && role.index + 2 <= n_) {
      // Shared vertex: acts as top of gadget index+2 until that diamond is
      // consumed; the bottoms of x_{n-1} and x_n are true chain ends.
      return role.index + 2;
    }
    return 0;
  }

  bool my_variable(int i) const { return (i % 2 == 1) == (side_ == PlayerSide::Left); }

  uint32_t prefix_mask(int i) const {
    uint32_t mask = 0;
    for (int k = 1; k < i; ++k)
      if (assign_[k] == 1) mask |= 1u << (k - 1);
    return mask;
  }

  bool clause_true(int j) const {
    for (int k = 0; k < 3; ++k) {
      Lit l = occ_lit_[j][k];
      if ((assign_[lit_var(l)] == 1) == lit_positive(l)) return true;
    }
    return false;
  }

  VertexId key_deletion(const GameGraph& g, int i, VertexId from) {
    if (!my_variable(i)) return from;
    bool want_true = policy_ ? policy_->decide_or(i, prefix_mask(i), false) : false;
    VertexId del = want_true ? left_[i] : right_[i];
    return g.live(del) ? del : from;
  }

  // Clause to delete on an odd-indexed deletion stop: any live clause other
  // than the avoided (false) one.
  VertexId clause_to_delete(const GameGraph& g) {
    if (avoid_ == 0) {
      for (int j = 1; j <= m_ && avoid_ == 0; ++j)
        if (!clause_true(j)) avoid_ = j;
      if (avoid_ == 0) avoid_ = m_;  // losing side: keep any clause
    }
    for (int j = 1; j <= m_; ++j)
      if (j != avoid_ && g.live(clause_[j])) return clause_[j];
    return -1;
  }

  // Linker occurrence to enter from clause j: a true literal when we have
  // one, else the first with a live entry.
  int pick_linker(const GameGraph& g, int j) {
    for (int pass = 0; pass < 2; ++pass)
      for (int k = 0; k < 3; ++k) {
        if (pass == 0) {
          Lit l = occ_lit_[j][k];
          if ((assign_[lit_var(l)] == 1) != lit_positive(l)) continue;
        }
        if (!occ_path_[j][k].empty() && g.live(occ_path_[j][k].front())) return k;
      }
    return -1;
  }

  PlayerSide side_;
  std::optional<Policy> policy_;
  Ledger* ledger_;
  const std::vector<VertexRole>* roles_ = nullptr;
  int n_ = 0, m_ = 0;
  int avoid_ = 0;
  std::vector<VertexId> top_, bottom_, left_, right_, clause_, delay_, del_, esc_;
  std::vector<std::array<Lit, 3>> occ_lit_;
  std::vector<std::array<std::vector<VertexId>, 3>> occ_path_;
  std::vector<std::array<std::vector<VertexId>, 3>> occ_par_;
  std::vector<std::array<VertexId, 3>> occ_target_;
  std::vector<int> assign_;
};

}  // namespace

std::unique_ptr<Strategy> make_dpf_script(const ReductionArtifact& art, PlayerSide side,
                                          std::optional<Policy> policy, Ledger* ledger) {
  return std::make_unique<DpfScript>(art, side, std::move(policy), ledger);
}

}  // namespace geolab
