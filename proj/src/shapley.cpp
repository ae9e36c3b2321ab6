#include "ovs/shapley.hpp"

#include <algorithm>
#include <stdexcept>

namespace ovs {

Rat marginal_contribution(const Game& g, const ArrivalOrder& order, int player) {
  PlayerSet prefix = order.prefix_set(order.position(player) + 1);
  return g.value(prefix) - g.value(prefix.without(player));
}

ShapleyVector shapley_permutation(const Game& g) {
  const int n = g.player_count();
  if (n > 8) throw std::invalid_argument("permutation-form Shapley limited to 8 players");
  ShapleyVector totals(static_cast<std::size_t>(n), Rat(0));
  for_each_order(n, [&](const ArrivalOrder& order) {
    PlayerSet prefix;
    Rat previous(0);
    for (int k = 0; k < n; ++k) {
      prefix = prefix.with(order.at(k));
      const Rat& current = g.value(prefix);
      totals[static_cast<std::size_t>(order.at(k))] += current - previous;
      previous = current;
    }
  });
  const Rat scale(static_cast<long>(factorial(n)));
  for (auto& t : totals) t /= scale;
  return totals;
}

ShapleyVector shapley_subset(const Game& g) {
  const int n = g.player_count();
  // weight[s] = s! (n-1-s)! / n!
  std::vector<Rat> weight(static_cast<std::size_t>(std::max(n, 1)), Rat(0));
  for (int s = 0; s < n; ++s) {
    mpz_class num = 1;
    for (int k = 2; k <= s; ++k) num *= k;
    for (int k = 2; k <= n - 1 - s; ++k) num *= k;
    mpz_class den = 1;
    for (int k = 2; k <= n; ++k) den *= k;
    Rat w{num, den};
    w.canonicalize();
    weight[static_cast<std::size_t>(s)] = w;
  }

  ShapleyVector sv(static_cast<std::size_t>(n), Rat(0));
  const std::uint32_t table = 1u << n;
  for (int i = 0; i < n; ++i) {
    Rat acc(0);
    for (std::uint32_t mask = 0; mask < table; ++mask) {
      if ((mask >> i) & 1u) continue;
      const Rat gain = g.value_mask(mask | (1u << i)) - g.value_mask(mask);
      if (gain != 0) acc += weight[static_cast<std::size_t>(__builtin_popcount(mask))] * gain;
    }
    sv[static_cast<std::size_t>(i)] = acc;
  }
  return sv;
}

LayerDecomposition decompose_layers(const Game& g) {
  if (!g.monotone()) throw std::invalid_argument("layer decomposition needs a monotone game");
  std::vector<Rat> distinct = g.values();
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  LayerDecomposition out;
  Rat below(0);
  for (const Rat& threshold : distinct) {
    if (threshold == 0) continue;
    std::vector<Rat> indicator(g.values().size(), Rat(0));
    for (std::size_t mask = 0; mask < indicator.size(); ++mask)
      if (g.values()[mask] >= threshold) indicator[mask] = 1;
    out.layers.emplace_back(threshold - below, Game(g.labels(), std::move(indicator)));
    below = threshold;
  }
  return out;
}

}  // namespace ovs
