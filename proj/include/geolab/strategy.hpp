#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "geolab/reduction.hpp"
#include "geolab/rng.hpp"
#include "geolab/solver.hpp"

namespace geolab {

// Per-phase move counts and markers recorded during a playout.
struct Ledger {
  std::map<std::string, long long> counters;

  void set(const std::string& key, long long v) { counters[key] = v; }
  void bump(const std::string& key, long long d = 1) { counters[key] += d; }
  long long get(const std::string& key) const {
    auto it = counters.find(key);
    return it == counters.end() ? 0 : it->second;
  }
  bool has(const std::string& key) const { return counters.count(key) > 0; }
};

class Strategy {
 public:
  virtual ~Strategy() = default;
  // Move for the active player; nullopt means the strategy diverged (the
  // opponent left its anticipated state space).
  virtual std::optional<Move> next(const Position& p) = 0;
  // Called for every applied move, both sides'.
  virtual void observe(const Position& /*before*/, const Move& /*m*/) {}
  const std::string& divergence_reason() const { return reason_; }

 protected:
  std::optional<Move> diverged(std::string why) {
    reason_ = std::move(why);
    return std::nullopt;
  }
  std::string reason_;
};

class RandomStrategy : public Strategy {
 public:
  explicit RandomStrategy(uint64_t seed) : rng_(seed) {}
  std::optional<Move> next(const Position& p) override;

 private:
  Rng rng_;
};

class SearchStrategy : public Strategy {
 public:
  explicit SearchStrategy(SolveOptions opts = {}) : opts_(opts) {}
  std::optional<Move> next(const Position& p) override;

 private:
  SolveOptions opts_;
};

struct PlayoutOutcome {
  std::optional<PlayerSide> winner;
  bool diverged = false;
  PlayerSide diverged_side = PlayerSide::Left;
  int diverged_ply = 0;
  std::string divergence_reason;
  int illegal_emissions = 0;          // scripted strategies must never do this
  int move_invariant_violations = 0;  // bipartite move invariant (UPR)
  std::vector<Move> transcript;
  Ledger ledger;
};

// Alternates the two strategies from `start` until someone is stuck (the
// other wins), a strategy diverges, or the ply cap trips. When `parts` is
// given the bipartite move invariant (tokens in opposite parts iff Left to
// move) is checked at every ply.
PlayoutOutcome play_out(const Position& start, Strategy& left, Strategy& right,
                        const Bipartition* parts = nullptr, int max_plies = 1 << 20,
                        Ledger* ledger = nullptr);

// Scripted proper play for a reduction artifact; the policy drives the
// variable choices of `side` when present.
std::unique_ptr<Strategy> make_scripted_strategy(const ReductionArtifact& art, PlayerSide side,
                                                 std::optional<Policy> policy, Ledger* ledger);

// Shared helpers for the scripted strategies.
namespace detail {

// BFS over live vertices (direction ignored for undirected graphs, forward
// for directed), skipping `avoid`. Returns -1 for unreachable.
std::vector<int> live_distances(const GameGraph& g, VertexId src, VertexId avoid = -1);

// Shortest live path src -> dst avoiding `avoid`; empty when unreachable.
std::vector<VertexId> live_path(const GameGraph& g, VertexId src, VertexId dst, VertexId avoid = -1);

}  // namespace detail

}  // namespace geolab
