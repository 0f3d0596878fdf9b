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

#ifndef TMECOR_MASTER_LP_HPP
#define TMECOR_MASTER_LP_HPP

#include <string>
#include <utility>
#include <vector>

#include "tmecor/milp.hpp"
#include "tmecor/sequence_form.hpp"

namespace tmecor {

// One pure hybrid-form team strategy: a (possibly mixed) realization plan
// for player 0 plus one pure plan per remaining team member, together with
// its payoff against every adversary sequence.
struct HybridColumn {
  RealizationPlan mixed_plan;             // player 0
  std::vector<PurePlan> pure_rest;        // players 1..n-2
  std::vector<double> payoff_by_adv_seq;  // indexed by adversary sequence id
};

// Accumulates, per adversary sequence, the chance-weighted team payoff of
// the leaves this team strategy reaches. One pass over the leaf index.
inline std::vector<double> compute_column_payoffs(const GameTree& g,
                                                  const RealizationPlan& mixed,
                                                  const std::vector<PurePlan>& pure_rest) {
  if (static_cast<int>(pure_rest.size()) != g.players - 2)
    throw DimensionMismatch("compute_column_payoffs: need one pure plan per "
                            "team member other than player 0");
  std::vector<double> payoff(g.seq_count(g.adversary()), 0.0);
  for (const Leaf& l : g.leaves) {
    double r = mixed.probs[l.seq[0]];
    for (int i = 1; r != 0.0 && i < g.players - 1; ++i)
      r *= pure_rest[i - 1].probs[l.seq[i]];
    if (r == 0.0) continue;
    payoff[l.seq[g.players - 1]] += r * l.team_payoff * l.chance_reach;
  }
  return payoff;
}

inline HybridColumn make_column(const GameTree& g, RealizationPlan mixed,
                                std::vector<PurePlan> pure_rest) {
  HybridColumn c{std::move(mixed), std::move(pure_rest), {}};
  c.payoff_by_adv_seq = compute_column_payoffs(g, c.mixed_plan, c.pure_rest);
  return c;
}

struct MasterSolution {
  double value = 0.0;                  // restricted-game value for the team
  std::vector<double> mixture;         // one weight per column
  RealizationPlan adversary_plan;      // extracted from the sequence duals
  std::vector<double> infoset_values;  // per adversary infoset, discovery order
};

struct CoreLpModel {
  LinearModel model;
  int v_root = -1;
  std::vector<int> column_vars;
  std::vector<int> infoset_vars;  // aligned with player_infosets[adversary]
  int norm_row = -1;              // mixture normalization
  // Rows 0..|adversary sequences|-1 are the per-sequence value constraints.
};

// Restricted master problem: the team maximizes the root value of the
// adversary's best-response recursion over a fixed set of columns. One
// constraint per adversary sequence (the empty sequence behaves like any
// other, carrying the root value and its successor infosets).
inline CoreLpModel build_core_lp(const GameTree& g,
                                 const std::vector<HybridColumn>& columns) {
  const int adv = g.adversary();
  const int nseq = g.seq_count(adv);
  CoreLpModel out;
  LinearModel& m = out.model;
  m.sense = Sense::Maximize;
  for (size_t f = 0; f < columns.size(); ++f)
    out.column_vars.push_back(m.add_var("x" + std::to_string(f), 0.0, kInf));
  std::vector<int> ivar(g.infosets.size(), -1);
  for (int is : g.player_infosets[adv]) {
    int v = m.add_var("v_" + g.infosets[is].label, -kInf, kInf);
    out.infoset_vars.push_back(v);
    ivar[is] = v;
  }
  out.v_root = m.add_var("v_root", -kInf, kInf);
  for (int s = 0; s < nseq; ++s) {
    std::vector<LinearModel::Term> terms;
    int head = s == 0 ? out.v_root : ivar[g.seqs[adv][s].infoset];
    terms.push_back({head, 1.0});
    for (int is : g.succ_infosets[adv][s]) terms.push_back({ivar[is], -1.0});
    for (size_t f = 0; f < columns.size(); ++f) {
      double u = columns[f].payoff_by_adv_seq[s];
      if (u != 0.0) terms.push_back({out.column_vars[f], -u});
    }
    m.add_row(std::move(terms), Relation::LessEqual, 0.0);
  }
  std::vector<LinearModel::Term> norm;
  for (int xv : out.column_vars) norm.push_back({xv, 1.0});
  out.norm_row = m.add_row(std::move(norm), Relation::Equal, 1.0);
  m.objective_term(out.v_root, 1.0);
  return out;
}

namespace detail {

// Sequence-form best response of the adversary against a fixed mixture,
// used as a fallback when dual extraction fails validation.
inline RealizationPlan adversary_response_lp(const GameTree& g,
                                             const std::vector<double>& payoff_vs_mixture,
                                             SolverBackend& backend) {
  const int adv = g.adversary();
  const int nseq = g.seq_count(adv);
  LinearModel m;
  m.sense = Sense::Minimize;
  for (int s = 0; s < nseq; ++s) m.add_var("r" + std::to_string(s), 0.0, kInf);
  m.add_row({{0, 1.0}}, Relation::Equal, 1.0);
  for (int is : g.player_infosets[adv]) {
    std::vector<LinearModel::Term> terms;
    for (int s : g.infosets[is].action_seqs) terms.push_back({s, 1.0});
    terms.push_back({g.infosets[is].parent_seq, -1.0});
    m.add_row(std::move(terms), Relation::Equal, 0.0);
  }
  for (int s = 0; s < nseq; ++s)
    if (payoff_vs_mixture[s] != 0.0) m.objective_term(s, payoff_vs_mixture[s]);
  SolveResult r = backend.lp(m, 1e-9);
  if (!r.optimal())
    throw SolverFailure("adversary best-response LP did not solve to optimality");
  RealizationPlan plan{adv, std::move(r.primal)};
  for (double& v : plan.probs) v = std::max(0.0, std::min(1.0, v));
  return plan;
}

}  // namespace detail

// Solves the restricted master problem. The duals of the per-sequence
// constraints are the adversary's realization probabilities; they are
// renormalized so the empty sequence carries probability one and
// re-validated, falling back to an explicit best-response LP if the duals
// fail the flow check.
inline MasterSolution solve_core_lp(const GameTree& g,
                                    const std::vector<HybridColumn>& columns,
                                    SolverBackend* backend = nullptr) {
  if (columns.empty()) throw InvalidParams("solve_core_lp: need at least one column");
  SolverBackend& be = backend ? *backend : builtin_backend();
  CoreLpModel core = build_core_lp(g, columns);
  SolveResult r = be.lp(core.model, 1e-9);
  if (!r.optimal()) throw SolverFailure("master LP did not solve to optimality");

  const int adv = g.adversary();
  const int nseq = g.seq_count(adv);
  MasterSolution out;
  out.value = r.objective_value;
  out.mixture.resize(columns.size());
  for (size_t f = 0; f < columns.size(); ++f)
    out.mixture[f] = std::max(0.0, r.primal[core.column_vars[f]]);
  for (int iv : core.infoset_vars) out.infoset_values.push_back(r.primal[iv]);

  RealizationPlan plan{adv, std::vector<double>(nseq, 0.0)};
  double root = r.duals[0];
  if (root > 0.5) {
    for (int s = 0; s < nseq; ++s)
      plan.probs[s] = std::max(0.0, std::min(1.0, r.duals[s] / root));
  }
  bool ok = root > 0.5 && validate_plan(plan, g, 1e-7);
  if (!ok) {
    std::vector<double> payoff(nseq, 0.0);
    for (size_t f = 0; f < columns.size(); ++f)
      for (int s = 0; s < nseq; ++s)
        payoff[s] += out.mixture[f] * columns[f].payoff_by_adv_seq[s];
    plan = detail::adversary_response_lp(g, payoff, be);
    if (!validate_plan(plan, g, 1e-7))
      throw SolverFailure("master LP: adversary plan extraction failed validation");
  }
  out.adversary_plan = std::move(plan);
  return out;
}

// Exact payoff-vector equality, the column deduplication rule.
inline bool payoffs_equal(const HybridColumn& a, const HybridColumn& b) {
  return a.payoff_by_adv_seq == b.payoff_by_adv_seq;
}

}  // namespace tmecor

#endif  // TMECOR_MASTER_LP_HPP
