#include "ovs/structure.hpp"

#include <algorithm>
#include <stdexcept>

namespace ovs {

void require_zero_one_monotone(const Game& g) {
  if (!g.zero_one()) throw std::invalid_argument("game is not a 0-1 game");
  if (!g.monotone()) throw std::invalid_argument("game is not monotone");
}

bool OrderStructure::is_critical(int player) const {
  return std::find(critical.begin(), critical.end(), player) != critical.end();
}

OrderStructure order_structure(const Game& g, const ArrivalOrder& order) {
  require_zero_one_monotone(g);
  OrderStructure st;
  const int n = order.size();
  PlayerSet prefix;
  int marginal = -1;
  int marginal_pos = -1;
  for (int k = 0; k < n; ++k) {
    prefix = prefix.with(order.at(k));
    if (g.value(prefix) == 1) {
      marginal = order.at(k);
      marginal_pos = k;
      break;
    }
  }
  if (marginal < 0) return st;  // zero game, no value created

  st.value_created = 1;
  st.marginal = marginal;
  for (int k = 0; k <= marginal_pos; ++k) {
    int j = order.at(k);
    if (g.value(prefix.without(j)) == 0) st.critical.push_back(j);
  }
  return st;
}

PlayerSet MinimalCriticalPrefix::prefix_set() const {
  PlayerSet s;
  for (int p : prefix_players) s = s.with(p);
  return s;
}

namespace {

int local_critical_count_of(const Game& g, const std::vector<int>& prefix_players) {
  PlayerSet shat;
  for (int p : prefix_players) shat = shat.with(p);
  int count = 0;
  for (int p : prefix_players)
    if (g.value(shat.without(p)) == 0) ++count;
  return count;
}

}  // namespace

MinimalCriticalPrefix minimal_critical_prefix(const Game& g, const ArrivalOrder& order) {
  OrderStructure st = order_structure(g, order);
  if (!st.marginal) throw std::invalid_argument("no value created in this order");
  const int i = *st.marginal;

  // Shortest prefix S with v(S + i) = 1; always found before i's own
  // position since v(p(i)) = 1.
  MinimalCriticalPrefix out;
  PlayerSet s;
  for (int k = 0;; ++k) {
    if (g.value(s.with(i)) == 1) break;
    out.prefix_players.push_back(order.at(k));
    s = s.with(order.at(k));
  }
  out.prefix_players.push_back(i);
  out.local_critical_count = local_critical_count_of(g, out.prefix_players);
  return out;
}

MinimalCriticalPrefix minimal_critical_prefix_by_moves(const Game& g, const ArrivalOrder& order) {
  OrderStructure st = order_structure(g, order);
  if (!st.marginal) throw std::invalid_argument("no value created in this order");
  const int i = *st.marginal;

  std::vector<int> seq = order.sequence();
  int p = order.position(i);
  while (p > 0) {
    OrderStructure cur = order_structure(g, ArrivalOrder::of(seq));
    if (cur.is_critical(seq[static_cast<std::size_t>(p - 1)])) break;
    std::swap(seq[static_cast<std::size_t>(p - 1)], seq[static_cast<std::size_t>(p)]);
    --p;
  }
  MinimalCriticalPrefix out;
  out.prefix_players.assign(seq.begin(), seq.begin() + p + 1);
  out.local_critical_count = local_critical_count_of(g, out.prefix_players);
  return out;
}

Solvability is_solvable(const Game& g) {
  require_zero_one_monotone(g);
  const int n = g.player_count();
  const std::uint32_t table = 1u << n;

  // critical_singleton[S] = j when {j} = {k in S | v(S)=1, v(S\{k})=0}.
  std::vector<int> critical_singleton(table, -1);
  for (std::uint32_t mask = 1; mask < table; ++mask) {
    if (g.value_mask(mask) != 1) continue;
    int count = 0, who = -1;
    for (int j = 0; j < n && count < 2; ++j) {
      if (!((mask >> j) & 1u)) continue;
      if (g.value_mask(mask & ~(1u << j)) == 0) {
        ++count;
        who = j;
      }
    }
    if (count == 1) critical_singleton[mask] = who;
  }

  for (int i = 0; i < n; ++i) {
    if (g.value_mask(1u << i) != 0) continue;
    for (std::uint32_t mask = 1; mask < table; ++mask)
      if (critical_singleton[mask] == i)
        return Solvability{false, SolvabilityWitness{i, PlayerSet(mask)}};
  }
  return Solvability{};
}

}  // namespace ovs
