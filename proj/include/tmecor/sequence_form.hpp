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

#ifndef TMECOR_SEQUENCE_FORM_HPP
#define TMECOR_SEQUENCE_FORM_HPP

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "tmecor/game.hpp"

namespace tmecor {

// A realization plan maps every sequence of one player to a probability and
// satisfies the network-flow constraints: the empty sequence has mass 1 and
// the mass of each infoset's parent sequence splits exactly over its child
// sequences. A pure plan is a realization plan with {0,1} entries and
// corresponds to a reduced normal-form strategy.
struct RealizationPlan {
  int player = -1;
  std::vector<double> probs;
};

using PurePlan = RealizationPlan;

constexpr double kFlowTol = 1e-9;

// True iff the flow constraints hold within `tol`.
inline bool validate_plan(const RealizationPlan& plan, const GameTree& g,
                          double tol = kFlowTol) {
  if (plan.player < 0 || plan.player >= g.players ||
      plan.probs.size() != g.seqs[plan.player].size())
    throw DimensionMismatch("validate_plan: plan does not index this game's sequences");
  const auto& probs = plan.probs;
  if (std::abs(probs[0] - 1.0) > tol) return false;
  for (double v : probs)
    if (v < -tol) return false;
  for (int is_id : g.player_infosets[plan.player]) {
    const InfoSet& is = g.infosets[is_id];
    double sum = 0.0;
    for (int s : is.action_seqs) sum += probs[s];
    if (std::abs(sum - probs[is.parent_seq]) > tol) return false;
  }
  return true;
}

inline bool is_pure(const RealizationPlan& plan, double tol = 1e-6) {
  for (double v : plan.probs)
    if (std::abs(v) > tol && std::abs(v - 1.0) > tol) return false;
  return true;
}

namespace detail {

// Picks one action per reachable infoset; infosets appear in discovery
// order, which places parents before children.
template <typename Pick>
PurePlan pure_plan_by_choice(const GameTree& g, int player, const Pick& pick) {
  PurePlan plan{player, std::vector<double>(g.seqs[player].size(), 0.0)};
  plan.probs[0] = 1.0;
  for (int is_id : g.player_infosets[player]) {
    const InfoSet& is = g.infosets[is_id];
    if (plan.probs[is.parent_seq] != 1.0) continue;
    int j = pick(is);
    plan.probs[is.action_seqs[j]] = 1.0;
  }
  return plan;
}

}  // namespace detail

// Deterministic in `seed`; actions are chosen only at reachable infosets.
inline PurePlan random_pure_plan(const GameTree& g, int player, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (player + 1)));
  return detail::pure_plan_by_choice(g, player, [&](const InfoSet& is) {
    return static_cast<int>(rng() % is.actions.size());
  });
}

// The first action at every reachable infoset.
inline PurePlan first_action_plan(const GameTree& g, int player) {
  return detail::pure_plan_by_choice(g, player, [](const InfoSet&) { return 0; });
}

// Behavioral strategy splitting mass equally at every infoset.
inline RealizationPlan uniform_behavioral_plan(const GameTree& g, int player) {
  RealizationPlan plan{player, std::vector<double>(g.seqs[player].size(), 0.0)};
  plan.probs[0] = 1.0;
  for (int is_id : g.player_infosets[player]) {
    const InfoSet& is = g.infosets[is_id];
    double share = plan.probs[is.parent_seq] / is.actions.size();
    for (int s : is.action_seqs) plan.probs[s] = share;
  }
  return plan;
}

// Random behavioral strategy, deterministic in `seed`.
inline RealizationPlan random_behavioral_plan(const GameTree& g, int player,
                                              std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ (0xbf58476d1ce4e5b9ULL * (player + 1)));
  RealizationPlan plan{player, std::vector<double>(g.seqs[player].size(), 0.0)};
  plan.probs[0] = 1.0;
  for (int is_id : g.player_infosets[player]) {
    const InfoSet& is = g.infosets[is_id];
    std::vector<double> w(is.actions.size());
    double total = 0.0;
    for (double& x : w) {
      x = 1.0 + static_cast<double>(rng() % 1000);
      total += x;
    }
    for (size_t j = 0; j < w.size(); ++j)
      plan.probs[is.action_seqs[j]] = plan.probs[is.parent_seq] * w[j] / total;
  }
  return plan;
}

// c(l) times the product over players of the plan probability of the
// player's sequence at leaf `leaf`.
inline double leaf_reach(const GameTree& g, const std::vector<RealizationPlan>& plans,
                         int leaf) {
  if (static_cast<int>(plans.size()) != g.players)
    throw DimensionMismatch("leaf_reach: one plan per player required");
  const Leaf& l = g.leaves[leaf];
  double r = l.chance_reach;
  for (int p = 0; p < g.players; ++p) r *= plans[p].probs[l.seq[p]];
  return r;
}

// Writes a mixed plan as a convex combination of pure plans (the
// normal-form view of the same strategy). Weights sum to probs[0] up to
// `tol`; at most one pure plan per sequence is produced.
inline std::vector<std::pair<double, PurePlan>> decompose_plan(
    const GameTree& g, const RealizationPlan& plan, double tol = 1e-12) {
  std::vector<double> residual = plan.probs;
  std::vector<std::pair<double, PurePlan>> out;
  while (residual[0] > tol) {
    PurePlan pure{plan.player, std::vector<double>(residual.size(), 0.0)};
    pure.probs[0] = 1.0;
    double weight = residual[0];
    std::vector<int> chosen{0};
    for (int is_id : g.player_infosets[plan.player]) {
      const InfoSet& is = g.infosets[is_id];
      if (pure.probs[is.parent_seq] != 1.0) continue;
      int best = -1;
      for (size_t j = 0; j < is.action_seqs.size(); ++j) {
        int s = is.action_seqs[j];
        if (residual[s] > tol && (best < 0 || residual[s] > residual[is.action_seqs[best]]))
          best = static_cast<int>(j);
      }
      if (best < 0) continue;  // numerically exhausted branch
      int s = is.action_seqs[best];
      pure.probs[s] = 1.0;
      chosen.push_back(s);
      weight = std::min(weight, residual[s]);
    }
    for (int s : chosen) residual[s] -= weight;
    out.emplace_back(weight, std::move(pure));
    if (weight <= tol) break;  // no further numerically meaningful mass
  }
  return out;
}

}  // namespace tmecor

#endif  // TMECOR_SEQUENCE_FORM_HPP
