#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ovs/rational.hpp"

namespace ovs {

// A coalition over at most 16 players, stored as a bit mask. Player i is a
// member iff bit i is set.
class PlayerSet {
 public:
  constexpr PlayerSet() = default;
  constexpr explicit PlayerSet(std::uint32_t mask) : mask_(mask) {}
  static constexpr PlayerSet single(int i) { return PlayerSet(1u << i); }

  constexpr bool contains(int i) const { return (mask_ >> i) & 1u; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr std::uint32_t mask() const { return mask_; }

  constexpr PlayerSet with(int i) const { return PlayerSet(mask_ | (1u << i)); }
  constexpr PlayerSet without(int i) const { return PlayerSet(mask_ & ~(1u << i)); }

  constexpr bool subset_of(PlayerSet o) const { return (mask_ & ~o.mask_) == 0; }
  constexpr PlayerSet set_union(PlayerSet o) const { return PlayerSet(mask_ | o.mask_); }
  constexpr PlayerSet set_intersection(PlayerSet o) const { return PlayerSet(mask_ & o.mask_); }
  constexpr PlayerSet set_difference(PlayerSet o) const { return PlayerSet(mask_ & ~o.mask_); }

  int size() const { return __builtin_popcount(mask_); }
  std::vector<int> members() const;  // ascending player indices

  friend constexpr bool operator==(PlayerSet a, PlayerSet b) { return a.mask_ == b.mask_; }
  friend constexpr bool operator!=(PlayerSet a, PlayerSet b) { return a.mask_ != b.mask_; }

 private:
  std::uint32_t mask_ = 0;
};

// A transferable-utility game with an explicit value table over all 2^n
// coalitions. Player indices are label-lexicographic and fixed at
// construction; values are exact rationals with v(empty) = 0.
class Game {
 public:
  // `labels` must be sorted, unique and nonempty; `values` has size 2^n
  // indexed by coalition mask. Validates v(empty) = 0 and nonnegativity.
  Game(std::vector<std::string> labels, std::vector<Rat> values);

  int player_count() const { return n_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
  int player_index(const std::string& label) const;  // throws on unknown label

  const Rat& value(PlayerSet s) const { return values_[s.mask()]; }
  const Rat& value_mask(std::uint32_t mask) const { return values_[mask]; }
  const std::vector<Rat>& values() const { return values_; }
  PlayerSet grand_coalition() const { return PlayerSet((1u << n_) - 1u); }

  bool monotone() const { return monotone_; }
  bool zero_one() const { return zero_one_; }

 private:
  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<Rat> values_;
  bool monotone_ = false;
  bool zero_one_ = false;
};

// A permutation of the players of some game; position lookup is the inverse
// permutation.
class ArrivalOrder {
 public:
  static ArrivalOrder of(std::vector<int> sequence);  // validates permutation
  static ArrivalOrder from_labels(const Game& g, const std::vector<std::string>& labels);

  int size() const { return static_cast<int>(seq_.size()); }
  int at(int k) const { return seq_[static_cast<std::size_t>(k)]; }  // 0-based position
  int position(int player) const { return pos_[static_cast<std::size_t>(player)]; }
  const std::vector<int>& sequence() const { return seq_; }
  PlayerSet prefix_set(int k) const;  // first k players

  friend bool operator==(const ArrivalOrder& a, const ArrivalOrder& b) { return a.seq_ == b.seq_; }

 private:
  std::vector<int> seq_;
  std::vector<int> pos_;
};

// The game restricted to an arrived prefix, re-indexed to local players
// 0..k-1 (label order preserved). `to_global[local]` is the parent index.
struct LocalGame {
  Game game;
  ArrivalOrder order;
  PlayerSet prefix;  // in parent indices
  std::vector<int> to_global;
};

// --- operations ---------------------------------------------------------

// Parses a game document: {"players": [...], "form": "minimal"|"table", ...}.
// Non-fatal issues (e.g. a minimal-winning list that is not an antichain)
// are appended to `warnings` when provided.
Game parse_game(const nlohmann::json& doc, std::vector<std::string>* warnings = nullptr);
Game parse_game_file(const std::string& path, std::vector<std::string>* warnings = nullptr);

// Builds the 0-1 game with v(S) = 1 iff S contains one of `minimal_winning`.
Game game_from_minimal(const std::vector<std::string>& labels,
                       const std::vector<std::vector<std::string>>& minimal_winning,
                       std::vector<std::string>* warnings = nullptr);

// Single-element monotonicity check: v(S + i) >= v(S) for every S and i.
bool is_monotone(const Game& g);
bool is_zero_one(const Game& g);

LocalGame local_game(const Game& g, const ArrivalOrder& order, int k);

// All unordered pairs {i, j} with v(S+i) = v(S+j) for every S avoiding both.
std::vector<std::pair<int, int>> symmetric_players(const Game& g);

// Inclusion-minimal coalitions with value 1 (0-1 monotone games only).
std::vector<PlayerSet> minimal_winning_coalitions(const Game& g);

// --- order enumeration ---------------------------------------------------

std::uint64_t factorial(int n);
// Visits all n! orders in lexicographic sequence order.
void for_each_order(int n, const std::function<void(const ArrivalOrder&)>& fn);
std::uint64_t order_rank(const ArrivalOrder& order);          // lexicographic rank
ArrivalOrder order_from_rank(int n, std::uint64_t rank);

// "B-A-C" style rendering.
std::string order_label(const Game& g, const ArrivalOrder& order);

}  // namespace ovs
