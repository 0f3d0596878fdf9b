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

#ifndef TMECOR_LEDUC_HPP
#define TMECOR_LEDUC_HPP

#include <numeric>
#include <string>
#include <vector>

#include "tmecor/kuhn.hpp"

namespace tmecor {

namespace detail {

// n-player Leduc hold'em. The deck has 3 suits per rank. Suits matter for
// tree nodes (deals enumerate concrete cards) but not for what players can
// observe: information set keys use ranks only, so holding the same rank in
// a different suit lands in the same information set.
struct LeducGen {
  int n;
  int ranks;
  int deck;  // 3 * ranks
  GameBuilder b;
  std::vector<int> cards;  // private card ids, rank = id / 3

  LeducGen(int players, int ranks_)
      : n(players), ranks(ranks_), deck(3 * ranks_), b(players) {}

  int rank(int card) const { return card / 3; }

  std::string key(int player, const std::string& pub) const {
    return card_label(rank(cards[player]), ranks) + ":/" + pub + ":";
  }

  // One betting round among `actors` (seat order) with a single bet of
  // `bet_chips`. `on_done(active, paid, hist)` continues the game.
  template <typename Done>
  void round(int parent, int slot, const std::vector<int>& actors,
             const std::string& pub_prefix, std::string hist, int bettor,
             std::vector<int> paid, int bet_chips, const Done& on_done) {
    int m = static_cast<int>(actors.size());
    int t = static_cast<int>(hist.size());
    if (bettor < 0 ? t == m : t == bettor + m) {
      std::vector<int> active;
      for (int q = 0; q < m; ++q) {
        bool folded = bettor >= 0 && q != bettor && hist[q < bettor ? q + m : q] == 'f';
        if (!folded) active.push_back(actors[q]);
      }
      on_done(parent, slot, active, paid, hist);
      return;
    }
    int actor = actors[t % m];
    bool can_bet = bettor < 0;
    std::vector<std::string> acts =
        can_bet ? std::vector<std::string>{"c", "r"} : std::vector<std::string>{"c", "f"};
    int node = b.decision(parent, slot, actor, key(actor, pub_prefix + hist), acts);
    for (int j = 0; j < 2; ++j) {
      std::vector<int> next_paid = paid;
      int nb = bettor;
      if (can_bet && j == 1) {
        nb = t;
        next_paid[actor] += bet_chips;
      }
      if (!can_bet && j == 0) next_paid[actor] += bet_chips;
      round(node, j, actors, pub_prefix, hist + acts[j], nb, std::move(next_paid),
            bet_chips, on_done);
    }
  }

  double payoff(const std::vector<int>& active, const std::vector<int>& paid,
                int community) const {
    int pot = std::accumulate(paid.begin(), paid.end(), 0);
    std::vector<int> winners;
    if (active.size() == 1) {
      winners = active;
    } else {
      for (int p : active)
        if (rank(cards[p]) == rank(community)) winners.push_back(p);
      if (winners.empty()) {
        int best = -1;
        for (int p : active) best = std::max(best, rank(cards[p]));
        for (int p : active)
          if (rank(cards[p]) == best) winners.push_back(p);
      }
    }
    double share = static_cast<double>(pot) / winners.size();
    double team = 0.0;
    for (int p = 0; p < n - 1; ++p) {
      double win = 0.0;
      for (int w : winners)
        if (w == p) win = share;
      team += win - paid[p];
    }
    return team;
  }

  GameTree run() {
    std::vector<std::vector<int>> deals;
    std::vector<int> deal;
    std::vector<bool> used(deck, false);
    auto enumerate = [&](auto&& self, int depth) -> void {
      if (depth == n) {
        deals.push_back(deal);
        return;
      }
      for (int c = 0; c < deck; ++c) {
        if (used[c]) continue;
        used[c] = true;
        deal.push_back(c);
        self(self, depth + 1);
        deal.pop_back();
        used[c] = false;
      }
    };
    enumerate(enumerate, 0);

    int root = b.chance(-1, -1, std::vector<double>(deals.size(), 1.0 / deals.size()));
    std::vector<int> seats(n);
    std::iota(seats.begin(), seats.end(), 0);
    for (size_t d = 0; d < deals.size(); ++d) {
      cards = deals[d];
      round(root, static_cast<int>(d), seats, "", "", -1, std::vector<int>(n, 1), 2,
            [&](int parent, int slot, const std::vector<int>& active,
                const std::vector<int>& paid, const std::string& hist1) {
              if (active.size() == 1) {
                b.terminal(parent, slot, payoff(active, paid, -1));
                return;
              }
              std::vector<int> rest;
              for (int c = 0; c < deck; ++c) {
                bool taken = false;
                for (int pc : cards) taken = taken || pc == c;
                if (!taken) rest.push_back(c);
              }
              int ch = b.chance(parent, slot,
                                std::vector<double>(rest.size(), 1.0 / rest.size()));
              for (size_t k = 0; k < rest.size(); ++k) {
                int community = rest[k];
                std::string pub =
                    hist1 + "[" + card_label(rank(community), ranks) + "]";
                round(ch, static_cast<int>(k), active, pub, "", -1, paid, 4,
                      [&](int p2, int s2, const std::vector<int>& active2,
                          const std::vector<int>& paid2, const std::string&) {
                        b.terminal(p2, s2, payoff(active2, paid2, community));
                      });
              }
            });
    }
    return b.build();
  }
};

}  // namespace detail

// n-player Leduc hold'em with `ranks` ranks (3 * ranks cards): one chip
// ante, a two-chip preflop betting round, one community card, and a
// four-chip flop betting round. At showdown a player pairing the community
// card wins, otherwise the highest rank; tied winners split the pot.
inline GameTree build_leduc(int players, int ranks) {
  if (players < 3) throw InvalidParams("build_leduc: need at least 3 players");
  if (3 * ranks < players + 1)
    throw InvalidParams("build_leduc: deck of 3*ranks cards cannot serve every player "
                        "plus a community card");
  return detail::LeducGen(players, ranks).run();
}

}  // namespace tmecor

#endif  // TMECOR_LEDUC_HPP
