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
#include "tmecor/sequence_form.hpp"

using namespace tmecor;

TEST_CASE("sequence tables are topological with parent links") {
  GameTree g = build_kuhn(3, 4);
  for (int p = 0; p < 3; ++p) {
    REQUIRE(g.seq_count(p) == 33);
    CHECK(g.seqs[p][0].parent == -1);
    for (int s = 1; s < g.seq_count(p); ++s) {
      const Sequence& sq = g.seqs[p][s];
      CHECK(sq.parent < s);  // parents enumerate before children
      const InfoSet& is = g.infosets[sq.infoset];
      CHECK(is.owner == p);
      CHECK(is.parent_seq == sq.parent);
      CHECK(is.action_seqs[sq.action_index] == s);
    }
  }
  CHECK(build_kuhn(3, 12).seq_count(1) == 97);
}

TEST_CASE("single decision game has three sequences") {
  GameTree g = testutil::single_decision_toy();
  REQUIRE(g.seq_count(0) == 3);
  CHECK(g.seqs[0][1].parent == 0);
  CHECK(g.seqs[0][2].parent == 0);
  CHECK(g.seq_count(1) == 1);  // the empty sequence only
}

TEST_CASE("uniform behavioral plan validates") {
  GameTree g = build_kuhn(3, 4);
  for (int p = 0; p < 3; ++p)
    CHECK(validate_plan(uniform_behavioral_plan(g, p), g));
}

TEST_CASE("root mass below one fails validation") {
  GameTree g = build_kuhn(3, 4);
  RealizationPlan plan = uniform_behavioral_plan(g, 0);
  plan.probs[0] = 0.9;
  CHECK_FALSE(validate_plan(plan, g));
}

TEST_CASE("plan of the wrong length is a dimension error") {
  GameTree g = build_kuhn(3, 4);
  RealizationPlan plan{0, std::vector<double>(5, 0.0)};
  CHECK_THROWS_AS(validate_plan(plan, g), DimensionMismatch);
}

TEST_CASE("random pure plans are deterministic and valid") {
  GameTree g = build_kuhn(3, 4);
  PurePlan a = random_pure_plan(g, 0, 7);
  PurePlan b = random_pure_plan(g, 0, 7);
  CHECK(a.probs == b.probs);
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    PurePlan p = random_pure_plan(g, seed % 3 == 0 ? 0 : seed % 3, seed);
    REQUIRE(validate_plan(p, g));
    REQUIRE(is_pure(p));
  }
}

TEST_CASE("one infoset game picks exactly one action") {
  GameTree g = testutil::single_decision_toy();
  for (uint64_t seed = 0; seed < 16; ++seed) {
    PurePlan p = random_pure_plan(g, 0, seed);
    CHECK(p.probs[1] + p.probs[2] == 1.0);
  }
}

TEST_CASE("leaf reach basics") {
  GameTree g = testutil::two_stage_toy();  // no chance nodes
  std::vector<RealizationPlan> plans;
  for (int p = 0; p < 3; ++p) plans.push_back(first_action_plan(g, p));
  // The first leaf follows first actions everywhere: reach = c(l) = 1.
  CHECK(leaf_reach(g, plans, 0) == Catch::Approx(1.0));
  // Blocking any player's sequence zeroes the reach.
  plans[0].probs[g.leaves[0].seq[0]] = 0.0;
  CHECK(leaf_reach(g, plans, 0) == 0.0);
}

TEST_CASE("uniform profile reach sums to one") {
  GameTree g = build_kuhn(3, 4);
  std::vector<RealizationPlan> plans;
  for (int p = 0; p < 3; ++p) plans.push_back(uniform_behavioral_plan(g, p));
  double sum = 0.0;
  for (int l = 0; l < static_cast<int>(g.leaves.size()); ++l)
    sum += leaf_reach(g, plans, l);
  CHECK(sum == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("reach sums to one for random valid profiles") {
  GameTree g = build_kuhn(3, 5);
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    std::vector<RealizationPlan> plans;
    for (int p = 0; p < 3; ++p)
      plans.push_back(seed % 2 ? random_behavioral_plan(g, p, seed)
                               : RealizationPlan(random_pure_plan(g, p, seed)));
    double sum = 0.0;
    for (int l = 0; l < static_cast<int>(g.leaves.size()); ++l)
      sum += leaf_reach(g, plans, l);
    CHECK(sum == Catch::Approx(1.0).margin(1e-9));
  }
}

TEST_CASE("reach is multiplicative in single plan entries") {
  GameTree g = build_kuhn(3, 4);
  std::vector<RealizationPlan> plans;
  for (int p = 0; p < 3; ++p) plans.push_back(uniform_behavioral_plan(g, p));
  int leaf = 100;
  double base = leaf_reach(g, plans, leaf);
  plans[1].probs[g.leaves[leaf].seq[1]] *= 0.25;
  CHECK(leaf_reach(g, plans, leaf) == Catch::Approx(0.25 * base));
}

TEST_CASE("mixing pure plans preserves the flow constraints") {
  GameTree g = build_kuhn(3, 4);
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    int k = 2 + static_cast<int>(rng() % 4);
    std::vector<PurePlan> parts;
    std::vector<double> w(k);
    double tot = 0.0;
    for (int i = 0; i < k; ++i) {
      parts.push_back(random_pure_plan(g, 0, rng()));
      w[i] = 1.0 + static_cast<double>(rng() % 9);
      tot += w[i];
    }
    RealizationPlan avg{0, std::vector<double>(g.seq_count(0), 0.0)};
    for (int i = 0; i < k; ++i)
      for (int s = 0; s < g.seq_count(0); ++s)
        avg.probs[s] += parts[i].probs[s] * w[i] / tot;
    CHECK(validate_plan(avg, g));
  }
}

TEST_CASE("decomposing a mixed plan recovers it as a pure mixture") {
  GameTree g = build_kuhn(3, 4);
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    RealizationPlan plan = random_behavioral_plan(g, 1, seed);
    auto parts = decompose_plan(g, plan);
    REQUIRE_FALSE(parts.empty());
    double wsum = 0.0;
    std::vector<double> recombined(g.seq_count(1), 0.0);
    for (const auto& [w, pure] : parts) {
      REQUIRE(validate_plan(pure, g));
      REQUIRE(is_pure(pure));
      wsum += w;
      for (int s = 0; s < g.seq_count(1); ++s) recombined[s] += w * pure.probs[s];
    }
    CHECK(wsum == Catch::Approx(1.0).margin(1e-9));
    for (int s = 0; s < g.seq_count(1); ++s)
      CHECK(recombined[s] == Catch::Approx(plan.probs[s]).margin(1e-9));
  }
}
