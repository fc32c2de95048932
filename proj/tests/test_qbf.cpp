#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "geolab/qbf.hpp"
#include "geolab/rng.hpp"
#include "geolab/verify.hpp"

using namespace geolab;

namespace {

QbfInstance fig4_instance() {
  // Ex1 Ax2 Ex3 Ax4 (~x1 v x2 v x3) & (x1 v x3 v ~x4)
  QbfInstance q;
  q.num_vars = 4;
  q.clauses = {{-1, 2, 3}, {1, 3, -4}};
  return q;
}

}  // namespace

TEST_CASE("parse_qdimacs accepts the alternating normal form") {
  QbfInstance q = parse_qdimacs("p cnf 2 1\ne 1 0\na 2 0\n1 1 -2 0\n");
  CHECK(q.num_vars == 2);
  REQUIRE(q.num_clauses() == 1);
  CHECK(q.clauses[0] == Clause{1, 1, -2});

  QbfInstance q4 = parse_qdimacs(
      "c a comment\np cnf 4 2\ne 1 0\na 2 0\ne 3 0\na 4 0\n-1 2 3 0\n1 3 -4 0\n");
  CHECK(q4 == fig4_instance());
}

TEST_CASE("parse_qdimacs error codes") {
  auto code_of = [](const std::string& text) {
    try {
      parse_qdimacs(text);
      return std::string("none");
    } catch (const QbfError& e) {
      return std::string(qbf_error_name(e.code));
    }
  };
  CHECK(code_of("p cnf 2 1\ne 1 0\na 2 0\n1 -2 0\n") == "Non3Cnf");
  CHECK(code_of("p cnf 2 1\na 1 0\ne 2 0\n1 1 -2 0\n") == "BadAlternation");
  CHECK(code_of("p cnf 3 1\ne 1 0\na 2 0\ne 3 0\n1 2 3 0\n") == "OddVarCount");
  CHECK(code_of("p cnf 2 1\ne 1 0\na 2 0\n1 1 -5 0\n") == "VarOutOfRange");
  CHECK(code_of("nonsense\n") == "Syntax");
  CHECK(code_of("p cnf 2 2\ne 1 0\na 2 0\n1 1 2 0\n") == "Syntax");  // clause count mismatch
}

TEST_CASE("evaluate on trivial and fixture instances") {
  QbfInstance taut;
  taut.num_vars = 2;
  taut.clauses = {{1, 1, 1}};
  CHECK(evaluate(taut));

  QbfInstance universal;
  universal.num_vars = 2;
  universal.clauses = {{2, 2, 2}};
  CHECK_FALSE(evaluate(universal));  // the A-player sets x2 false

  CHECK(evaluate(fig4_instance()));

  QbfInstance big;
  big.num_vars = 26;
  big.clauses = {{1, 1, 1}};
  CHECK_THROWS_AS(evaluate(big), QbfError);
}

TEST_CASE("optimal_policy wins and losers are refused") {
  QbfInstance tautology;
  tautology.num_vars = 2;
  tautology.clauses = {{1, 1, 1}};
  Policy left = optimal_policy(tautology, PlayerSide::Left);
  CHECK(left.decide(1, 0) == true);
  CHECK_THROWS_AS(optimal_policy(tautology, PlayerSide::Right), QbfError);

  QbfInstance universal;
  universal.num_vars = 2;
  universal.clauses = {{2, 2, 2}};
  Policy right = optimal_policy(universal, PlayerSide::Right);
  CHECK(right.decide(2, 0) == false);
  CHECK(right.decide(2, 1) == false);
  CHECK_THROWS_AS(optimal_policy(universal, PlayerSide::Left), QbfError);

  // Fig. 4's winner has a policy that survives the exhaustive sweep built
  // into construction.
  QbfInstance f = fig4_instance();
  CHECK_NOTHROW(optimal_policy(f, evaluate(f) ? PlayerSide::Left : PlayerSide::Right));
}

TEST_CASE("optimal_policy beats every opposing line on sampled instances") {
  Rng rng(41);
  for (int it = 0; it < 40; ++it) {
    QbfInstance q = random_instance(it % 2 ? 4 : 6, 1 + int(rng.below(4)), rng.next());
    bool truth = evaluate(q);
    PlayerSide winner = truth ? PlayerSide::Left : PlayerSide::Right;
    // Construction runs the verification sweep; just confirm it accepts.
    CHECK_NOTHROW(optimal_policy(q, winner));
  }
}

TEST_CASE("normalize_for meets targets and preserves truth") {
  for (const QbfInstance& q : exhaustive_qbf_n2m1()) {
    bool truth = evaluate(q);
    for (ReductionTarget t : {ReductionTarget::DIF, ReductionTarget::DPF, ReductionTarget::UPR,
                              ReductionTarget::UPF}) {
      QbfInstance norm = normalize_for(q, t);
      CHECK(satisfies_preconditions(norm, t));
      CHECK(evaluate(norm) == truth);
    }
  }
  QbfInstance q21 = exhaustive_qbf_n2m1().front();
  QbfInstance dpf = normalize_for(q21, ReductionTarget::DPF);
  CHECK(dpf.num_clauses() == 4);
  QbfInstance upr = normalize_for(q21, ReductionTarget::UPR);
  CHECK(upr.num_vars == 4);
  CHECK(upr.num_clauses() >= 2);
  CHECK(normalize_for(q21, ReductionTarget::DIF) == q21);

  Rng rng(43);
  for (int it = 0; it < 25; ++it) {
    QbfInstance q = random_instance(it % 2 ? 4 : 6, 1 + int(rng.below(3)), rng.next());
    bool truth = evaluate(q);
    for (ReductionTarget t : {ReductionTarget::DPF, ReductionTarget::UPR, ReductionTarget::UPF})
      CHECK(evaluate(normalize_for(q, t)) == truth);
  }
}

TEST_CASE("evaluate is antitone in clause addition") {
  Rng rng(47);
  for (int it = 0; it < 60; ++it) {
    QbfInstance q = random_instance(4, 1 + int(rng.below(4)), rng.next());
    if (evaluate(q)) continue;
    QbfInstance more = q;
    more.clauses.push_back(random_instance(4, 1, rng.next()).clauses[0]);
    CHECK_FALSE(evaluate(more));
  }
}

TEST_CASE("random_instance is deterministic and well-shaped") {
  QbfInstance a = random_instance(2, 1, 99);
  QbfInstance b = random_instance(2, 1, 99);
  CHECK(a == b);
  CHECK(a.num_vars == 2);
  CHECK(a.num_clauses() == 1);
  for (Lit l : a.clauses[0]) CHECK(lit_var(l) <= 2);

  // Sampled truth rates stay away from the constants: mixed instances must
  // show up on both sides.
  for (int m : {4, 10}) {
    int true_count = 0;
    for (uint64_t seed = 0; seed < 200; ++seed)
      if (evaluate(random_instance(4, m, seed))) ++true_count;
    CHECK(true_count > 0);
    CHECK(true_count < 200);
  }
}
