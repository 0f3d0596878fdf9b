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

#ifndef TMECOR_GAME_HPP
#define TMECOR_GAME_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "tmecor/errors.hpp"

namespace tmecor {

// Zero-sum multiplayer extensive-form game with perfect recall.
//
// Players are indexed 0..n-1. Players 0..n-2 form the team and share one
// utility; player n-1 is the adversary, whose utility is the negation of the
// stored team payoff. Only the team payoff is ever stored.

enum class NodeKind { Decision, Chance, Terminal };

struct Edge {
  int action = -1;    // global action id (Decision nodes only)
  double prob = 0.0;  // outcome probability (Chance nodes only)
  int child = -1;     // node index
};

struct Node {
  NodeKind kind = NodeKind::Terminal;
  int player = -1;            // Decision
  int infoset = -1;           // Decision
  double team_payoff = 0.0;   // Terminal
  double chance_reach = 1.0;  // Terminal: product of chance probs on the path
  int leaf = -1;              // Terminal: index into GameTree::leaves
  std::vector<Edge> edges;
};

struct InfoSet {
  int id = -1;
  int owner = -1;
  std::string label;
  std::vector<int> actions;  // global action ids, unique to this infoset
  std::vector<std::string> action_labels;
  std::vector<int> member_nodes;
  int parent_seq = -1;           // owner's sequence leading into this infoset
  std::vector<int> action_seqs;  // owner's child sequence per action
};

// A sequence is identified by the (infoset, action) pair that created it.
// Index 0 of every player's table is the empty sequence.
struct Sequence {
  int infoset = -1;
  int action_index = -1;
  int parent = -1;
  std::string label;  // "/" for the empty sequence
};

struct Leaf {
  int node = -1;
  double team_payoff = 0.0;
  double chance_reach = 1.0;
  std::vector<int> seq;  // per-player sequence id reaching this leaf
};

struct Violation {
  enum Kind {
    PerfectRecall,
    ActionUniqueness,
    InfosetConsistency,
    ChanceNormalization,
    ChanceReach,
    LeafIndex,
    PayoffFinite,
  };
  Kind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool empty() const { return violations.empty(); }
  bool has(Violation::Kind k) const {
    return std::any_of(violations.begin(), violations.end(),
                       [k](const Violation& v) { return v.kind == k; });
  }
};

struct GameTree {
  int players = 0;
  std::vector<Node> nodes;  // nodes[0] is the root
  std::vector<InfoSet> infosets;
  std::vector<std::vector<int>> player_infosets;      // per player
  std::vector<std::vector<Sequence>> seqs;            // per player, [0] = empty
  std::vector<std::vector<std::vector<int>>> succ_infosets;  // [p][seq] -> infosets extending seq
  std::vector<Leaf> leaves;
  int num_actions = 0;

  int adversary() const { return players - 1; }
  int team_size() const { return players - 1; }
  int seq_count(int player) const { return static_cast<int>(seqs[player].size()); }

  const std::string& seq_label(int player, int s) const { return seqs[player][s].label; }

  int find_infoset(const std::string& label) const {
    for (const InfoSet& is : infosets)
      if (is.label == label) return is.id;
    return -1;
  }

  // Utility range over leaves (max minus min team payoff).
  double delta_u() const {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const Leaf& l : leaves) {
      lo = std::min(lo, l.team_payoff);
      hi = std::max(hi, l.team_payoff);
    }
    return leaves.empty() ? 0.0 : hi - lo;
  }
};

// Incremental construction of a GameTree. The builder assigns globally
// unique action ids per information set; sequences and the leaf index are
// derived in build(). Structural violations (e.g. merging nodes with
// different owner sequences into one infoset) are representable: build()
// keeps the first assignment and validate_game reports the conflict.
class GameBuilder {
 public:
  explicit GameBuilder(int players) {
    if (players < 3) throw InvalidParams("GameBuilder: need at least 3 players");
    g_.players = players;
    g_.player_infosets.resize(players);
  }

  int decision(int parent, int slot, int player, const std::string& infoset_key,
               const std::vector<std::string>& action_labels) {
    int is = infoset_id(player, infoset_key, action_labels);
    int id = new_node(parent, slot);
    Node& n = g_.nodes[id];
    n.kind = NodeKind::Decision;
    n.player = player;
    n.infoset = is;
    n.edges.resize(action_labels.size());
    for (size_t j = 0; j < action_labels.size(); ++j)
      n.edges[j].action = g_.infosets[is].actions[j];
    return id;
  }

  int chance(int parent, int slot, const std::vector<double>& probs) {
    int id = new_node(parent, slot);
    Node& n = g_.nodes[id];
    n.kind = NodeKind::Chance;
    n.edges.resize(probs.size());
    for (size_t j = 0; j < probs.size(); ++j) n.edges[j].prob = probs[j];
    return id;
  }

  int terminal(int parent, int slot, double team_payoff) {
    int id = new_node(parent, slot);
    Node& n = g_.nodes[id];
    n.kind = NodeKind::Terminal;
    n.team_payoff = team_payoff;
    return id;
  }

  GameTree build() {
    for (size_t i = 0; i < g_.nodes.size(); ++i)
      for (const Edge& e : g_.nodes[i].edges)
        if (e.child < 0)
          throw std::logic_error("GameBuilder: node " + std::to_string(i) +
                                 " has an unattached child slot");
    g_.seqs.assign(g_.players, {});
    for (int p = 0; p < g_.players; ++p)
      g_.seqs[p].push_back(Sequence{-1, -1, -1, "/"});
    for (InfoSet& is : g_.infosets) {
      is.member_nodes.clear();
      is.parent_seq = -1;
      is.action_seqs.assign(is.actions.size(), -1);
    }
    std::vector<int> cur(g_.players, 0);
    walk(0, 1.0, cur);
    g_.succ_infosets.assign(g_.players, {});
    for (int p = 0; p < g_.players; ++p)
      g_.succ_infosets[p].resize(g_.seqs[p].size());
    for (int p = 0; p < g_.players; ++p)
      for (int is : g_.player_infosets[p])
        if (g_.infosets[is].parent_seq >= 0)
          g_.succ_infosets[p][g_.infosets[is].parent_seq].push_back(is);
    return std::move(g_);
  }

 private:
  int new_node(int parent, int slot) {
    int id = static_cast<int>(g_.nodes.size());
    if (parent < 0) {
      if (id != 0) throw std::logic_error("GameBuilder: root already exists");
    } else {
      Node& pn = g_.nodes[parent];
      if (slot < 0 || slot >= static_cast<int>(pn.edges.size()))
        throw std::logic_error("GameBuilder: bad child slot");
      if (pn.edges[slot].child >= 0)
        throw std::logic_error("GameBuilder: child slot already attached");
      pn.edges[slot].child = id;
    }
    g_.nodes.emplace_back();
    return id;
  }

  int infoset_id(int player, const std::string& key,
                 const std::vector<std::string>& action_labels) {
    auto it = infoset_by_key_.find(key);
    if (it != infoset_by_key_.end()) return it->second;
    int id = static_cast<int>(g_.infosets.size());
    InfoSet is;
    is.id = id;
    is.owner = player;
    is.label = key;
    is.action_labels = action_labels;
    for (size_t j = 0; j < action_labels.size(); ++j) is.actions.push_back(g_.num_actions++);
    g_.infosets.push_back(std::move(is));
    g_.player_infosets[player].push_back(id);
    infoset_by_key_.emplace(key, id);
    return id;
  }

  void walk(int node, double creach, std::vector<int>& cur) {
    Node& n = g_.nodes[node];
    switch (n.kind) {
      case NodeKind::Terminal: {
        n.chance_reach = creach;
        n.leaf = static_cast<int>(g_.leaves.size());
        g_.leaves.push_back(Leaf{node, n.team_payoff, creach, cur});
        return;
      }
      case NodeKind::Chance: {
        for (const Edge& e : n.edges) walk(e.child, creach * e.prob, cur);
        return;
      }
      case NodeKind::Decision: {
        InfoSet& is = g_.infosets[n.infoset];
        is.member_nodes.push_back(node);
        if (is.parent_seq < 0) {
          is.parent_seq = cur[n.player];
          for (size_t j = 0; j < is.actions.size(); ++j) {
            auto& table = g_.seqs[n.player];
            int sid = static_cast<int>(table.size());
            table.push_back(Sequence{is.id, static_cast<int>(j), is.parent_seq,
                                     is.label + is.action_labels[j]});
            is.action_seqs[j] = sid;
          }
        }
        int saved = cur[n.player];
        for (size_t j = 0; j < n.edges.size(); ++j) {
          cur[n.player] = is.action_seqs[j];
          walk(n.edges[j].child, creach, cur);
        }
        cur[n.player] = saved;
        return;
      }
    }
  }

  GameTree g_;
  std::unordered_map<std::string, int> infoset_by_key_;
};

namespace detail {

inline void validate_walk(const GameTree& g, int node, double creach,
                          std::vector<int>& cur, ValidationReport& report) {
  const Node& n = g.nodes[node];
  switch (n.kind) {
    case NodeKind::Terminal: {
      if (!std::isfinite(n.team_payoff))
        report.violations.push_back({Violation::PayoffFinite,
                                     "non-finite payoff at node " + std::to_string(node)});
      if (n.leaf < 0 || n.leaf >= static_cast<int>(g.leaves.size())) {
        report.violations.push_back({Violation::LeafIndex,
                                     "terminal node " + std::to_string(node) +
                                         " missing from leaf index"});
        return;
      }
      const Leaf& l = g.leaves[n.leaf];
      if (l.node != node)
        report.violations.push_back({Violation::LeafIndex,
                                     "leaf entry does not map back to node " +
                                         std::to_string(node)});
      if (std::abs(l.chance_reach - creach) > 1e-12 * std::max(1.0, std::abs(creach)))
        report.violations.push_back({Violation::ChanceReach,
                                     "stored chance reach differs from path product at node " +
                                         std::to_string(node)});
      for (int p = 0; p < g.players; ++p)
        if (l.seq[p] != cur[p])
          report.violations.push_back({Violation::LeafIndex,
                                       "recorded sequence of player " + std::to_string(p) +
                                           " differs from traversal at node " +
                                           std::to_string(node)});
      return;
    }
    case NodeKind::Chance: {
      double sum = 0.0;
      bool in_range = true;
      for (const Edge& e : n.edges) {
        sum += e.prob;
        in_range = in_range && e.prob >= 0.0 && e.prob <= 1.0;
      }
      if (!in_range || std::abs(sum - 1.0) > 1e-12)
        report.violations.push_back({Violation::ChanceNormalization,
                                     "chance node " + std::to_string(node) +
                                         " probabilities sum to " + std::to_string(sum)});
      for (const Edge& e : n.edges) validate_walk(g, e.child, creach * e.prob, cur, report);
      return;
    }
    case NodeKind::Decision: {
      const InfoSet& is = g.infosets[n.infoset];
      if (is.owner != n.player || is.actions.size() != n.edges.size())
        report.violations.push_back({Violation::InfosetConsistency,
                                     "node " + std::to_string(node) +
                                         " disagrees with infoset " + is.label});
      if (is.parent_seq != cur[n.player])
        report.violations.push_back({Violation::PerfectRecall,
                                     "infoset " + is.label + " merges nodes with different " +
                                         "owner sequences (node " + std::to_string(node) + ")"});
      int saved = cur[n.player];
      for (size_t j = 0; j < n.edges.size(); ++j) {
        if (n.edges[j].action != is.actions[j])
          report.violations.push_back({Violation::ActionUniqueness,
                                       "node " + std::to_string(node) +
                                           " uses an action id foreign to infoset " + is.label});
        cur[n.player] = j < is.action_seqs.size() ? is.action_seqs[j] : saved;
        validate_walk(g, n.edges[j].child, creach, cur, report);
      }
      cur[n.player] = saved;
      return;
    }
  }
}

}  // namespace detail

// Structural validation. Violations are data, not exceptions: the report
// lists every broken invariant (perfect recall, action uniqueness, chance
// normalization, leaf-index consistency) and is empty iff the game is valid.
inline ValidationReport validate_game(const GameTree& g) {
  ValidationReport report;
  // Action ids must be claimed by exactly one infoset.
  std::vector<int> action_owner(g.num_actions, -1);
  for (const InfoSet& is : g.infosets)
    for (int a : is.actions) {
      if (a < 0 || a >= g.num_actions || action_owner[a] != -1)
        report.violations.push_back({Violation::ActionUniqueness,
                                     "action id shared or out of range in infoset " + is.label});
      else
        action_owner[a] = is.id;
    }
  std::vector<int> cur(g.players, 0);
  detail::validate_walk(g, 0, 1.0, cur, report);
  // Every leaf entry must correspond to a terminal node reached once.
  std::vector<int> seen(g.leaves.size(), 0);
  for (const Node& n : g.nodes)
    if (n.kind == NodeKind::Terminal && n.leaf >= 0 &&
        n.leaf < static_cast<int>(g.leaves.size()))
      seen[n.leaf]++;
  for (size_t i = 0; i < seen.size(); ++i)
    if (seen[i] != 1)
      report.violations.push_back({Violation::LeafIndex,
                                   "leaf " + std::to_string(i) + " referenced " +
                                       std::to_string(seen[i]) + " times"});
  return report;
}

}  // namespace tmecor

#endif  // TMECOR_GAME_HPP
