#include "ovs/mechanisms.hpp"

#include <stdexcept>

#include "ovs/shapley.hpp"

namespace ovs {

WeightFunction WeightFunction::make(std::vector<Rat> weights) {
  if (weights.empty()) throw std::invalid_argument("weight table must not be empty");
  if (weights[0] <= 0) throw std::invalid_argument("w(1) must be positive");
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] < 0) throw std::invalid_argument("weights must be nonnegative");
    if (k > 0 && weights[k] > weights[k - 1])
      throw std::invalid_argument("weights must be weakly decreasing");
  }
  WeightFunction w;
  w.weights_ = std::move(weights);
  return w;
}

WeightFunction WeightFunction::constant(int length, const Rat& c) {
  if (c <= 0) throw std::invalid_argument("constant weight must be positive");
  return make(std::vector<Rat>(static_cast<std::size_t>(std::max(length, 1)), c));
}

const Rat& WeightFunction::at(int k) const {
  if (k < 1 || k > length())
    throw std::out_of_range("weight index " + std::to_string(k) + " beyond table of length " +
                            std::to_string(length()));
  return weights_[static_cast<std::size_t>(k - 1)];
}

Rat WeightFunction::prefix_sum(int m) const {
  Rat sum(0);
  for (int k = 1; k <= m; ++k) sum += at(k);
  return sum;
}

namespace {

Allocation zero_allocation(const Game& g) {
  return Allocation{std::vector<Rat>(static_cast<std::size_t>(g.player_count()), Rat(0)), false};
}

}  // namespace

Allocation rfc_allocate(const Game& g, const ArrivalOrder& order) {
  Allocation a = zero_allocation(g);
  OrderStructure st = order_structure(g, order);
  if (!st.critical.empty()) a.shares[static_cast<std::size_t>(st.critical.front())] = 1;
  return a;
}

Allocation wvs_allocate(const Game& g, const ArrivalOrder& order, const WeightFunction& w) {
  Allocation a = zero_allocation(g);
  OrderStructure st = order_structure(g, order);
  if (!st.marginal) return a;

  const int marginal = *st.marginal;
  const int m = static_cast<int>(st.critical.size());
  MinimalCriticalPrefix mcp = minimal_critical_prefix(g, order);
  const int m_prime = mcp.local_critical_count;

  if (m == 1 && m_prime > 1) {
    a.solvability_warning = true;
    a.shares[static_cast<std::size_t>(marginal)] = 1;
    return a;
  }

  Rat marginal_share = w.at(m_prime) / w.prefix_sum(m_prime);
  a.shares[static_cast<std::size_t>(marginal)] = marginal_share;
  if (m > 1) {
    const Rat rest = 1 - marginal_share;
    const Rat denom = w.prefix_sum(m - 1);
    int t = 0;
    for (int j : st.critical) {
      if (j == marginal) continue;
      ++t;
      a.shares[static_cast<std::size_t>(j)] = w.at(t) / denom * rest;
    }
  }
  return a;
}

Allocation evs_allocate(const Game& g, const ArrivalOrder& order) {
  return wvs_allocate(g, order, WeightFunction::constant(g.player_count()));
}

Mechanism make_rfc() {
  return Mechanism{"rfc", [](const Game& g, const ArrivalOrder& o) { return rfc_allocate(g, o); }};
}

Mechanism make_evs() {
  return Mechanism{"evs", [](const Game& g, const ArrivalOrder& o) { return evs_allocate(g, o); }};
}

Mechanism make_wvs(WeightFunction w) {
  std::string name = "wvs(";
  for (int k = 1; k <= w.length(); ++k) {
    if (k > 1) name += ",";
    name += rat_str(w.at(k));
  }
  name += ")";
  return Mechanism{std::move(name), [w = std::move(w)](const Game& g, const ArrivalOrder& o) {
                     return wvs_allocate(g, o, w);
                   }};
}

Mechanism make_equal_split() {
  return Mechanism{"equal-split", [](const Game& g, const ArrivalOrder& o) {
                     Allocation a = zero_allocation(g);
                     OrderStructure st = order_structure(g, o);
                     if (st.critical.empty()) return a;
                     Rat share = Rat(1) / Rat(static_cast<long>(st.critical.size()));
                     for (int j : st.critical) a.shares[static_cast<std::size_t>(j)] = share;
                     return a;
                   }};
}

Mechanism make_first_arrival() {
  return Mechanism{"first-arrival", [](const Game& g, const ArrivalOrder& o) {
                     Allocation a = zero_allocation(g);
                     if (g.player_count() > 0)
                       a.shares[static_cast<std::size_t>(o.at(0))] = g.value(g.grand_coalition());
                     return a;
                   }};
}

Mechanism make_last_arrival() {
  return Mechanism{"last-arrival", [](const Game& g, const ArrivalOrder& o) {
                     Allocation a = zero_allocation(g);
                     const int n = g.player_count();
                     if (n > 0)
                       a.shares[static_cast<std::size_t>(o.at(n - 1))] = g.value(g.grand_coalition());
                     return a;
                   }};
}

Mechanism make_shapley_reference() {
  return Mechanism{"shapley-reference", [](const Game& g, const ArrivalOrder&) {
                     return Allocation{shapley_subset(g), false};
                   }};
}

namespace {

// Identifies the fixture shape: n players, exactly one null player d, and
// v(S) = 1 iff S contains all of N \ {d}. Returns d's index or -1.
int null_player_of_fixture(const Game& g) {
  const int n = g.player_count();
  if (!g.zero_one() || !g.monotone()) return -1;
  int null_player = -1;
  for (int i = 0; i < n; ++i) {
    bool is_null = true;
    for (std::uint32_t mask = 0; mask < (1u << n) && is_null; ++mask) {
      if ((mask >> i) & 1u) continue;
      if (g.value_mask(mask | (1u << i)) != g.value_mask(mask)) is_null = false;
    }
    if (is_null) {
      if (null_player != -1) return -1;  // more than one null player
      null_player = i;
    }
  }
  if (null_player < 0) return -1;
  const std::uint32_t others = ((1u << n) - 1u) & ~(1u << null_player);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool expect = (mask & others) == others;
    if ((g.value_mask(mask) == 1) != expect) return -1;
  }
  return null_player;
}

}  // namespace

Mechanism make_null_player_table_policy(const Rat& epsilon) {
  return Mechanism{
      "null-player-table(eps=" + rat_str(epsilon) + ")",
      [epsilon](const Game& g, const ArrivalOrder& o) {
        Allocation a = zero_allocation(g);
        const int n = g.player_count();
        if (g.value(g.grand_coalition()) == 0) return a;  // nothing to share yet
        if (n == 3) {
          // local state right before the null player arrives: unanimity of
          // the three contributors
          for (std::uint32_t mask = 0; mask < 8u; ++mask)
            if ((g.value_mask(mask) == 1) != (mask == 7u))
              throw std::invalid_argument("table policy applied outside its fixture game");
          a.shares[static_cast<std::size_t>(o.at(0))] = 1 - 2 * epsilon;
          a.shares[static_cast<std::size_t>(o.at(1))] = epsilon;
          a.shares[static_cast<std::size_t>(o.at(2))] = epsilon;
          return a;
        }
        if (n == 4) {
          const int d = null_player_of_fixture(g);
          if (d < 0) throw std::invalid_argument("table policy applied outside its fixture game");
          switch (o.position(d)) {
            case 3:  // contributors first, null player last
              a.shares[static_cast<std::size_t>(o.at(0))] = 1 - 2 * epsilon;
              a.shares[static_cast<std::size_t>(o.at(1))] = epsilon;
              a.shares[static_cast<std::size_t>(o.at(2))] = epsilon;
              break;
            case 2:
              a.shares[static_cast<std::size_t>(o.at(0))] = 1 - epsilon;
              a.shares[static_cast<std::size_t>(o.at(3))] = epsilon;
              break;
            case 1:
              a.shares[static_cast<std::size_t>(o.at(0))] = 1;
              break;
            case 0:
              a.shares[static_cast<std::size_t>(o.at(1))] = 1;
              break;
          }
          return a;
        }
        throw std::invalid_argument("table policy applied outside its fixture game");
      }};
}

OnlineTrace online_run(const Game& g, const ArrivalOrder& order, const Mechanism& mech) {
  OnlineTrace trace;
  const int n = g.player_count();
  for (int k = 1; k <= n; ++k) {
    LocalGame lg = local_game(g, order, k);
    Allocation local = mech.allocate(lg.game, lg.order);
    Allocation cumulative{std::vector<Rat>(static_cast<std::size_t>(n), Rat(0)),
                          local.solvability_warning};
    for (int li = 0; li < k; ++li)
      cumulative.shares[static_cast<std::size_t>(lg.to_global[static_cast<std::size_t>(li)])] =
          local.shares[static_cast<std::size_t>(li)];
    trace.steps.push_back(OnlineStep{order.at(k - 1), std::move(cumulative)});
  }
  return trace;
}

Allocation general_allocate(const Game& g, const ArrivalOrder& order, const Mechanism& base) {
  if (!g.monotone()) throw std::invalid_argument("layered allocation needs a monotone game");
  if (g.zero_one()) return base.allocate(g, order);
  Allocation out{std::vector<Rat>(static_cast<std::size_t>(g.player_count()), Rat(0)), false};
  for (const auto& [coefficient, layer] : decompose_layers(g).layers) {
    Allocation part = base.allocate(layer, order);
    out.solvability_warning = out.solvability_warning || part.solvability_warning;
    for (std::size_t i = 0; i < out.shares.size(); ++i)
      out.shares[i] += coefficient * part.shares[i];
  }
  return out;
}

Mechanism make_layered(Mechanism base) {
  std::string name = base.name;
  return Mechanism{std::move(name), [base = std::move(base)](const Game& g, const ArrivalOrder& o) {
                     return general_allocate(g, o, base);
                   }};
}

}  // namespace ovs
