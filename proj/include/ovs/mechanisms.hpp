#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ovs/game.hpp"
#include "ovs/structure.hpp"

namespace ovs {

// Weakly decreasing nonnegative weights w(1), w(2), ... with w(1) > 0,
// stored as a finite table. Requesting an index beyond the table throws
// rather than extending implicitly.
class WeightFunction {
 public:
  static WeightFunction make(std::vector<Rat> weights);  // validates
  static WeightFunction constant(int length, const Rat& c = Rat(1));

  const Rat& at(int k) const;      // 1-based
  Rat prefix_sum(int m) const;     // w(1) + ... + w(m)
  int length() const { return static_cast<int>(weights_.size()); }
  const std::vector<Rat>& table() const { return weights_; }

 private:
  std::vector<Rat> weights_;
};

// Per-player shares of one (game, order) pair; efficient and nonnegative.
// `solvability_warning` is set when the weighted mechanism detected an
// unsolvable game and fell back to giving the marginal player everything.
struct Allocation {
  std::vector<Rat> shares;
  bool solvability_warning = false;
};

// A value-sharing policy: maps a game and an arrival order to shares.
// Policies are applied to local (prefix) games as well when run online.
struct Mechanism {
  std::string name;
  std::function<Allocation(const Game&, const ArrivalOrder&)> allocate;
};

// --- the mechanisms -------------------------------------------------------

// The first critical player (by arrival) receives the full unit value.
Allocation rfc_allocate(const Game& g, const ArrivalOrder& order);

// Weighted value sharing: the marginal player's share is anchored to the
// minimal critical prefix (w(m') / sum_{k<=m'} w(k)); the remaining value is
// split over the other critical players proportionally to w by arrival rank.
// On detecting an unsolvable situation (m' > m = 1) the marginal player
// receives everything and the warning flag is set.
Allocation wvs_allocate(const Game& g, const ArrivalOrder& order, const WeightFunction& w);

// WVS with constant weights: the marginal player gets 1/m', the others split
// the rest equally.
Allocation evs_allocate(const Game& g, const ArrivalOrder& order);

Mechanism make_rfc();
Mechanism make_evs();
Mechanism make_wvs(WeightFunction w);

// --- reference and control policies (diagnostics, negative tests) ---------

// Equal split among critical players, without the minimal-prefix anchor.
Mechanism make_equal_split();
// The first arrival receives v(N); the rest receive 0.
Mechanism make_first_arrival();
// The latest arrival holds v(N); reassigned at every step (breaks OIR).
Mechanism make_last_arrival();
// Every order receives the Shapley vector itself (zero Shapley distance).
Mechanism make_shapley_reference();
// The hand-built share table for the 4-player game with one null player and
// v(S) = 1 iff the other three are all present, parameterized by epsilon.
// Shapley-fair but not monotone on symmetric players.
Mechanism make_null_player_table_policy(const Rat& epsilon);

// --- online execution and the layered extension ---------------------------

struct OnlineStep {
  int arriving;           // player index in the parent game
  Allocation cumulative;  // shares over all parent players (zeros if not arrived)
};

struct OnlineTrace {
  std::vector<OnlineStep> steps;  // one per arrival, k = 1..n
};

// Applies the mechanism to every prefix-local game in arrival sequence.
OnlineTrace online_run(const Game& g, const ArrivalOrder& order, const Mechanism& mech);

// Extends a 0-1 mechanism to general monotone games through the threshold
// layer decomposition: allocate each layer, combine with the layer
// coefficients.
Allocation general_allocate(const Game& g, const ArrivalOrder& order, const Mechanism& base);
Mechanism make_layered(Mechanism base);

}  // namespace ovs
