#pragma once

#include <optional>
#include <vector>

#include "ovs/game.hpp"

namespace ovs {

// Marginal and critical players of one arrival order of a 0-1 monotone game.
// When no value is created (the zero game) `marginal` is absent and
// `critical` is empty. The marginal player is always the last critical one.
struct OrderStructure {
  std::optional<int> marginal;
  std::vector<int> critical;  // in arrival order, ends with the marginal player
  int value_created = 0;      // 0 or 1

  bool is_critical(int player) const;
};

OrderStructure order_structure(const Game& g, const ArrivalOrder& order);

// The shortest order prefix that, together with the marginal player, already
// attains value 1; stored as the ordered player sequence ending with the
// marginal player. `local_critical_count` is m' = |CR| of the induced local
// game.
struct MinimalCriticalPrefix {
  std::vector<int> prefix_players;
  int local_critical_count = 0;

  PlayerSet prefix_set() const;
};

MinimalCriticalPrefix minimal_critical_prefix(const Game& g, const ArrivalOrder& order);

// Cross-validation variant: moves the marginal player one position forward
// until the player before it is critical, then reads the prefix off the
// resulting order. Equivalent to the prefix scan; used by tests.
MinimalCriticalPrefix minimal_critical_prefix_by_moves(const Game& g, const ArrivalOrder& order);

struct SolvabilityWitness {
  int player;          // i with v({i}) = 0
  PlayerSet coalition;  // S whose critical set is exactly {i}
};

struct Solvability {
  bool solvable = true;
  std::optional<SolvabilityWitness> witness;  // present iff unsolvable
};

// Scans all coalitions for a player that can become the unique critical
// player despite having zero stand-alone value. The witness is the first
// (player index, coalition mask) pair in ascending order.
Solvability is_solvable(const Game& g);

// Throws std::invalid_argument unless g is 0-1 and monotone.
void require_zero_one_monotone(const Game& g);

}  // namespace ovs
