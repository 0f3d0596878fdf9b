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

#ifndef TMECOR_KUHN_HPP
#define TMECOR_KUHN_HPP

#include <string>
#include <vector>

#include "tmecor/game.hpp"

namespace tmecor {

// Display name for rank index `r` out of `ranks` (ascending strength).
// Small decks use the top of the standard ladder, so a 3-rank deck is
// J, Q, K and a 4-rank deck is T, J, Q, K.
inline std::string card_label(int r, int ranks) {
  static const char* kLadder[12] = {"2", "3", "4", "5", "6",  "7",
                                    "8", "9", "T", "J", "Q", "K"};
  if (ranks <= 12) return kLadder[12 - ranks + r];
  return "c" + std::to_string(r);
}

namespace detail {

struct KuhnGen {
  int n;
  int ranks;
  GameBuilder b;
  std::vector<int> cards;

  KuhnGen(int players, int ranks_) : n(players), ranks(ranks_), b(players) {}

  // One betting round with a single one-chip bet. Before a bet the acting
  // player checks ('c') or bets ('r'); afterwards each remaining player in
  // seat order calls ('c') or folds ('f'). The actor at history length t is
  // always seat t mod n.
  void bet(int parent, int slot, const std::string& hist, int bettor) {
    int t = static_cast<int>(hist.size());
    bool done = bettor < 0 ? t == n : t == bettor + n;
    if (done) {
      b.terminal(parent, slot, payoff(hist, bettor));
      return;
    }
    int actor = t % n;
    std::vector<std::string> acts =
        bettor < 0 ? std::vector<std::string>{"c", "r"} : std::vector<std::string>{"c", "f"};
    std::string key = card_label(cards[actor], ranks) + ":/" + hist + ":";
    int node = b.decision(parent, slot, actor, key, acts);
    for (int j = 0; j < 2; ++j) {
      std::string next = hist + acts[j];
      int nb = bettor;
      if (bettor < 0 && j == 1) nb = t;
      bet(node, j, next, nb);
    }
  }

  double payoff(const std::string& hist, int bettor) const {
    std::vector<int> paid(n, 1);   // antes
    std::vector<bool> active(n, true);
    if (bettor >= 0) {
      paid[bettor] += 1;
      for (int t = bettor + 1; t < bettor + n; ++t) {
        int p = t % n;
        if (hist[t] == 'c')
          paid[p] += 1;
        else
          active[p] = false;
      }
    }
    int pot = 0, winner = -1;
    for (int p = 0; p < n; ++p) {
      pot += paid[p];
      if (active[p] && (winner < 0 || cards[p] > cards[winner])) winner = p;
    }
    double team = 0.0;
    for (int p = 0; p < n - 1; ++p) team += (p == winner ? pot : 0.0) - paid[p];
    return team;
  }
};

}  // namespace detail

// n-player Kuhn poker with `ranks` cards: one chip ante, one private card
// each, one betting round with a single one-chip bet; the highest card among
// players who did not fold takes the pot. The last player is the adversary.
inline GameTree build_kuhn(int players, int ranks) {
  if (players < 3) throw InvalidParams("build_kuhn: need at least 3 players");
  if (ranks < players)
    throw InvalidParams("build_kuhn: ranks must be >= players so every player gets a card");
  detail::KuhnGen gen(players, ranks);

  std::vector<std::vector<int>> deals;
  std::vector<int> deal;
  std::vector<bool> used(ranks, false);
  auto enumerate = [&](auto&& self, int depth) -> void {
    if (depth == players) {
      deals.push_back(deal);
      return;
    }
    for (int c = 0; c < ranks; ++c) {
      if (used[c]) continue;
      used[c] = true;
      deal.push_back(c);
      self(self, depth + 1);
      deal.pop_back();
      used[c] = false;
    }
  };
  enumerate(enumerate, 0);

  int root = gen.b.chance(-1, -1, std::vector<double>(deals.size(), 1.0 / deals.size()));
  for (size_t d = 0; d < deals.size(); ++d) {
    gen.cards = deals[d];
    gen.bet(root, static_cast<int>(d), "", -1);
  }
  return gen.b.build();
}

}  // namespace tmecor

#endif  // TMECOR_KUHN_HPP
