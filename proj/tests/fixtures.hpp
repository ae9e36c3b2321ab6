#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "ovs/game.hpp"

namespace fixtures {

// v(S) = 1 iff {A,B} or {A,C} is contained in S; unsolvable.
inline ovs::Game three_player_veto() {
  return ovs::game_from_minimal({"A", "B", "C"}, {{"A", "B"}, {"A", "C"}});
}

// v(S) = 1 iff {A,B,C} or {A,B,D} is contained in S; solvable.
inline ovs::Game four_player_pair_core() {
  return ovs::game_from_minimal({"A", "B", "C", "D"}, {{"A", "B", "C"}, {"A", "B", "D"}});
}

// v(S) = 1 iff {A,B,C} is contained in S; D is a null player.
inline ovs::Game three_of_four_unanimity() {
  return ovs::game_from_minimal({"A", "B", "C", "D"}, {{"A", "B", "C"}});
}

inline ovs::Game unanimity_ab() { return ovs::game_from_minimal({"A", "B"}, {{"A", "B"}}); }

inline ovs::Game zero_game(int n = 3) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('A' + i)));
  return ovs::Game(std::move(labels), std::vector<ovs::Rat>(1u << n, ovs::Rat(0)));
}

inline ovs::ArrivalOrder order_of(const ovs::Game& g, std::initializer_list<const char*> labels) {
  std::vector<std::string> v;
  for (const char* l : labels) v.emplace_back(l);
  return ovs::ArrivalOrder::from_labels(g, v);
}

inline ovs::Rat R(long num, long den = 1) { return ovs::rat(num, den); }

}  // namespace fixtures
