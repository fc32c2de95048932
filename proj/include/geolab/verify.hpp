#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "geolab/strategy.hpp"

namespace geolab {

struct VerifyIssue {
  std::string input;
  std::string expected;
  std::string got;
};

struct VerifyReport {
  std::string kind;
  int instances_run = 0;
  std::vector<VerifyIssue> mismatches;
  std::vector<VerifyIssue> structural_failures;
  int budget_exhaustions = 0;

  bool passed() const { return mismatches.empty() && structural_failures.empty(); }
  void fail_structural(const std::string& input, const std::string& what) {
    structural_failures.push_back({input, "", what});
  }
  void merge(const VerifyReport& other);
};

struct CorpusSpec {
  int exhaustive_max = 0;       // enumerate all inputs up to this size
  int sample_count = 0;         // seeded random inputs on top
  int sample_max_vertices = 0;  // size of sampled graphs / variables for QBF
  int sample_clauses = 0;       // QBF kinds
  bool impartial_only = false;  // U2D/S2TO1: restrict to impartial variants
  uint64_t seed = 1;
};

// Oracle-equivalence campaign: build each corpus input, compute the source
// side's winner/truth by brute oracle, construct the artifact, solve it, and
// record any winner disagreement. Budget exhaustion is recorded separately.
VerifyReport verify_oracle(ReductionKind kind, const CorpusSpec& corpus,
                           const SolveOptions& budget, int workers = 1);

// Structural validation of one artifact: claimed bipartition, component size
// formulas, degree and parity claims, UPF win-path and odd-cycle witnesses.
VerifyReport verify_structure(const ReductionArtifact& artifact);

// Scripted playout wrapper (see strategy.hpp) returning winner + transcript
// + per-phase ledger.
PlayoutOutcome scripted_playout(const ReductionArtifact& artifact, Strategy& left,
                                Strategy& right, Ledger* ledger = nullptr);

// Golden fixtures: the [2,4,3,1,1] path draw with its exact
// terminal height profiles, the union-of-matchings parity property, and the
// five-vertex UIR/UIF counterexample.
VerifyReport lemma_fixtures();

// Deletes one seeded arc from each DIF artifact of the exhaustive n=2,m=1
// corpus and checks that at least one verdict flips (harness power check).
VerifyReport fault_injection_dif(uint64_t seed, const SolveOptions& budget);

// All height profiles of terminal positions reachable when both players play
// optimally (every move preserves the solved value).
std::set<std::vector<int>> optimal_terminal_profiles(const Position& start,
                                                     std::optional<DrawRule> draw_rule);

// Corpus builders shared by campaigns and tests.
GameGraph random_digraph(int max_vertices, Rng& rng);
GameGraph random_undirected_graph(int max_vertices, Rng& rng);
GameGraph random_undirected_bipartite(int max_vertices, Rng& rng);
std::vector<GameGraph> all_digraphs(int vertices);
// All n=2, m=1 instances: every multiset of three literals over x1, x2.
std::vector<QbfInstance> exhaustive_qbf_n2m1();

// The Lemma fixture path [2,4,3,1,1] as a UIR4 position with the token on v1.
Position lemma_path_position();
// The five-vertex counterexample graph; token on v (vertex 0).
Position fig8_position(DeletionRule deletion);

// Campaign files: {"campaigns": [...]} — see run_campaign_file.
struct CampaignResult {
  std::vector<VerifyReport> reports;
  bool passed() const {
    for (const auto& r : reports)
      if (!r.passed()) return false;
    return true;
  }
};
CampaignResult run_campaign_file(const std::string& json_text, int workers, uint64_t seed_override,
                                 std::function<void(const VerifyReport&)> on_report = nullptr);

}  // namespace geolab
