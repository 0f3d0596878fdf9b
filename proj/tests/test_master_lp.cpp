// Copyright 2026 The tmecor Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"
#include "tmecor/kuhn.hpp"
#include "tmecor/master_lp.hpp"

using namespace tmecor;

namespace {

HybridColumn random_column(const GameTree& g, uint64_t seed, bool mixed_leader) {
  RealizationPlan leader = mixed_leader
                               ? random_behavioral_plan(g, 0, seed)
                               : RealizationPlan(random_pure_plan(g, 0, seed));
  std::vector<PurePlan> rest;
  for (int p = 1; p < g.players - 1; ++p)
    rest.push_back(random_pure_plan(g, p, seed * 77 + p));
  return make_column(g, std::move(leader), std::move(rest));
}

double utility_vs_plan(const HybridColumn& c, const RealizationPlan& adv) {
  double u = 0.0;
  for (size_t s = 0; s < c.payoff_by_adv_seq.size(); ++s)
    u += c.payoff_by_adv_seq[s] * adv.probs[s];
  return u;
}

}  // namespace

TEST_CASE("column payoffs match a direct tree walk") {
  GameTree g = build_kuhn(3, 3);
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    HybridColumn c = random_column(g, seed, seed % 2 == 0);
    RealizationPlan adv = uniform_behavioral_plan(g, 2);
    std::vector<const RealizationPlan*> team{&c.mixed_plan, &c.pure_rest[0]};
    double direct = testutil::profile_utility(g, team, adv);
    CHECK(utility_vs_plan(c, adv) == Catch::Approx(direct).margin(1e-9));
  }
}

TEST_CASE("blocked adversary sequences have zero payoff entries") {
  GameTree g = testutil::two_stage_toy();
  // Team plays a then c: only adversary infoset D (sequences g,h) is live.
  PurePlan p0 = first_action_plan(g, 0);
  PurePlan p1 = first_action_plan(g, 1);
  HybridColumn c = make_column(g, p0, {p1});
  int live = 0;
  for (int s = 0; s < g.seq_count(2); ++s)
    if (c.payoff_by_adv_seq[s] != 0.0) ++live;
  CHECK(live == 2);
  CHECK(c.payoff_by_adv_seq[g.infosets[g.find_infoset("D")].action_seqs[0]] ==
        Catch::Approx(3.0));
  CHECK(c.payoff_by_adv_seq[g.infosets[g.find_infoset("D")].action_seqs[1]] ==
        Catch::Approx(-2.0));
}

TEST_CASE("core lp has one row per adversary sequence plus normalization") {
  GameTree g = build_kuhn(3, 4);
  std::vector<HybridColumn> cols{random_column(g, 3, false)};
  CoreLpModel core = build_core_lp(g, cols);
  CHECK(static_cast<int>(core.model.rows.size()) == g.seq_count(2) + 1);
  CHECK(core.norm_row == g.seq_count(2));
}

TEST_CASE("single column value is the adversary's pure best response") {
  GameTree g = testutil::two_stage_toy();
  for (uint64_t seed = 0; seed < 8; ++seed) {
    HybridColumn c = random_column(g, seed + 1, seed % 2 == 0);
    MasterSolution sol = solve_core_lp(g, {c});
    double best = std::numeric_limits<double>::infinity();
    for (const PurePlan& adv : testutil::all_pure_plans(g, 2))
      best = std::min(best, utility_vs_plan(c, adv));
    CHECK(sol.value == Catch::Approx(best).margin(1e-7));
  }
}

TEST_CASE("master value is monotone in the column set") {
  GameTree g = build_kuhn(3, 3);
  std::vector<HybridColumn> cols;
  double prev = -std::numeric_limits<double>::infinity();
  for (uint64_t seed = 1; seed <= 6; ++seed) {
    cols.push_back(random_column(g, seed, seed % 3 == 0));
    MasterSolution sol = solve_core_lp(g, cols);
    CHECK(sol.value >= prev - 1e-9);
    prev = sol.value;
  }
}

TEST_CASE("master solution is consistent and certified by its duals") {
  for (int ranks : {3, 4}) {
    GameTree g = build_kuhn(3, ranks);
    std::mt19937_64 rng(1000 + ranks);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<HybridColumn> cols;
      int k = 1 + static_cast<int>(rng() % 5);
      for (int i = 0; i < k; ++i) cols.push_back(random_column(g, rng(), i % 2 == 0));
      MasterSolution sol = solve_core_lp(g, cols);

      double mix = 0.0;
      for (double w : sol.mixture) {
        CHECK(w >= 0.0);
        mix += w;
      }
      CHECK(mix == Catch::Approx(1.0).margin(1e-9));
      CHECK(validate_plan(sol.adversary_plan, g, 1e-7));
      // No in-set column beats the restricted value against the dual plan.
      for (const HybridColumn& c : cols)
        CHECK(utility_vs_plan(c, sol.adversary_plan) <= sol.value + 1e-7);
      // The mixture attains the value against the dual plan.
      double mixed_val = 0.0;
      for (size_t f = 0; f < cols.size(); ++f)
        mixed_val += sol.mixture[f] * utility_vs_plan(cols[f], sol.adversary_plan);
      CHECK(mixed_val == Catch::Approx(sol.value).margin(1e-7));
    }
  }
}

TEST_CASE("strong duality holds on master solves") {
  GameTree g = build_kuhn(3, 3);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<HybridColumn> cols;
    for (int i = 0; i < 3; ++i) cols.push_back(random_column(g, rng(), i == 0));
    CoreLpModel core = build_core_lp(g, cols);
    SolveResult r = solve_lp(core.model);
    REQUIRE(r.optimal());
    CHECK(r.objective_value ==
          Catch::Approx(testutil::dual_objective(core.model, r)).margin(1e-7));
  }
}

TEST_CASE("identical payoff vectors are detected for deduplication") {
  GameTree g = build_kuhn(3, 3);
  HybridColumn a = random_column(g, 5, false);
  HybridColumn b = a;
  CHECK(payoffs_equal(a, b));
  b.payoff_by_adv_seq[3] += 1e-12;
  CHECK_FALSE(payoffs_equal(a, b));
}
