#include "ovs/analysis.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ovs {

namespace {

using nlohmann::json;

std::string order_str(const Game& g, const ArrivalOrder& o) { return order_label(g, o); }

json shares_json(const Game& g, const std::vector<Rat>& shares) {
  json out = json::object();
  for (int i = 0; i < g.player_count(); ++i)
    out[g.label(i)] = rat_str(shares[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace

SdResult shapley_distance(const Allocation& alloc, const ShapleyVector& sv) {
  if (alloc.shares.size() != sv.size())
    throw std::invalid_argument("allocation and Shapley vector cover different players");
  SdResult out;
  out.per_player.reserve(sv.size());
  for (std::size_t i = 0; i < sv.size(); ++i) {
    Rat d = sv[i] - alloc.shares[i];
    Rat sq = d * d;
    out.total += sq;
    out.per_player.push_back(std::move(sq));
  }
  return out;
}

std::optional<Rat> egalitarian_welfare(const Game& g, const ArrivalOrder& order,
                                       const Allocation& alloc) {
  OrderStructure st = order_structure(g, order);
  if (st.critical.empty()) return std::nullopt;
  std::optional<Rat> ew;
  for (int j : st.critical) {
    const Rat& s = alloc.shares[static_cast<std::size_t>(j)];
    if (!ew || s < *ew) ew = s;
  }
  return ew;
}

std::vector<Allocation> allocate_all_orders(const Game& g, const Mechanism& mech) {
  std::vector<Allocation> out;
  out.reserve(factorial(g.player_count()));
  for_each_order(g.player_count(), [&](const ArrivalOrder& order) {
    out.push_back(mech.allocate(g, order));
  });
  return out;
}

MetricReport expected_metrics(const Game& g, const Mechanism& mech) {
  const int n = g.player_count();
  if (n > 8) throw std::invalid_argument("order enumeration limited to 8 players");
  MetricReport rep;
  rep.mechanism = mech.name;
  rep.shapley = shapley_subset(g);
  rep.expected_sd_per_player.assign(static_cast<std::size_t>(n), Rat(0));
  Rat ew_sum(0);

  for_each_order(n, [&](const ArrivalOrder& order) {
    Allocation alloc = mech.allocate(g, order);
    SdResult sd = shapley_distance(alloc, rep.shapley);
    for (std::size_t i = 0; i < sd.per_player.size(); ++i)
      rep.expected_sd_per_player[i] += sd.per_player[i];
    rep.expected_sd_total += sd.total;
    rep.per_order_sd_total.push_back(std::move(sd.total));

    std::optional<Rat> ew = egalitarian_welfare(g, order, alloc);
    if (ew) {
      ew_sum += *ew;
      ++rep.ew_order_count;
    }
    rep.per_order_ew.push_back(std::move(ew));
    ++rep.order_count;
  });

  const Rat scale(static_cast<long>(rep.order_count));
  rep.expected_sd_total /= scale;
  for (auto& v : rep.expected_sd_per_player) v /= scale;
  if (rep.ew_order_count > 0)
    rep.expected_ew = ew_sum / Rat(static_cast<long>(rep.ew_order_count));
  return rep;
}

void for_each_order_row(const Game& g, const Mechanism& mech,
                        const std::function<void(const OrderRow&)>& fn) {
  const int n = g.player_count();
  if (n > 8) throw std::invalid_argument("order enumeration limited to 8 players");
  const ShapleyVector sv = shapley_subset(g);
  std::uint64_t rank = 0;
  for_each_order(n, [&](const ArrivalOrder& order) {
    OrderRow row;
    row.rank = rank++;
    row.order = order;
    row.alloc = mech.allocate(g, order);
    row.structure = order_structure(g, order);
    if (row.structure.marginal) {
      MinimalCriticalPrefix mcp = minimal_critical_prefix(g, order);
      row.mcp_players = std::move(mcp.prefix_players);
      row.mcp_critical_count = mcp.local_critical_count;
    }
    row.sd = shapley_distance(row.alloc, sv);
    row.ew = egalitarian_welfare(g, order, row.alloc);
    fn(row);
  });
}

// --- property checks ---------------------------------------------------------

PropertyReport check_efficiency(const Game& g, const Mechanism& mech) {
  PropertyReport rep{"efficiency", mech.name, Verdict::holds, "", nullptr};
  const Rat& total = g.value(g.grand_coalition());
  for_each_order(g.player_count(), [&](const ArrivalOrder& order) {
    if (rep.failed()) return;
    Allocation alloc = mech.allocate(g, order);
    Rat sum(0);
    for (int i = 0; i < g.player_count(); ++i) {
      const Rat& s = alloc.shares[static_cast<std::size_t>(i)];
      if (s < 0) {
        rep.verdict = Verdict::fails;
        rep.counterexample = {{"order", order_str(g, order)},
                              {"player", g.label(i)},
                              {"share", rat_str(s)}};
        rep.counterexample_text = "negative share " + rat_str(s) + " for " + g.label(i) +
                                  " in order " + order_str(g, order);
        return;
      }
      sum += s;
    }
    if (sum != total) {
      rep.verdict = Verdict::fails;
      rep.counterexample = {{"order", order_str(g, order)},
                            {"share_sum", rat_str(sum)},
                            {"grand_value", rat_str(total)},
                            {"shares", shares_json(g, alloc.shares)}};
      rep.counterexample_text = "shares in order " + order_str(g, order) + " sum to " +
                                rat_str(sum) + ", expected " + rat_str(total);
    }
  });
  return rep;
}

PropertyReport check_oir(const Game& g, const Mechanism& mech) {
  PropertyReport rep{"oir", mech.name, Verdict::holds, "", nullptr};
  const int n = g.player_count();
  for_each_order(n, [&](const ArrivalOrder& order) {
    if (rep.failed()) return;
    OnlineTrace trace = online_run(g, order, mech);
    for (int k1 = 1; k1 <= n && !rep.failed(); ++k1)
      for (int k2 = k1 + 1; k2 <= n && !rep.failed(); ++k2)
        for (int pos = 0; pos < k1; ++pos) {
          const int player = order.at(pos);
          const Rat& before =
              trace.steps[static_cast<std::size_t>(k1 - 1)].cumulative.shares[static_cast<std::size_t>(player)];
          const Rat& after =
              trace.steps[static_cast<std::size_t>(k2 - 1)].cumulative.shares[static_cast<std::size_t>(player)];
          if (before > after) {
            rep.verdict = Verdict::fails;
            rep.counterexample = {{"order", order_str(g, order)},
                                  {"player", g.label(player)},
                                  {"prefix_before", k1},
                                  {"prefix_after", k2},
                                  {"share_before", rat_str(before)},
                                  {"share_after", rat_str(after)}};
            rep.counterexample_text = "share of " + g.label(player) + " drops from " +
                                      rat_str(before) + " (prefix " + std::to_string(k1) +
                                      ") to " + rat_str(after) + " (prefix " +
                                      std::to_string(k2) + ") in order " + order_str(g, order);
            break;
          }
        }
  });
  return rep;
}

PropertyReport check_i4ea(const Game& g, const Mechanism& mech, bool strict_full_pairs) {
  PropertyReport rep{"i4ea", mech.name, Verdict::holds, "", nullptr};
  const int n = g.player_count();
  std::vector<Allocation> cache = allocate_all_orders(g, mech);

  auto violation = [&](const ArrivalOrder& order, const ArrivalOrder& delayed, int i) {
    const Rat& early = cache[order_rank(order)].shares[static_cast<std::size_t>(i)];
    const Rat& late = cache[order_rank(delayed)].shares[static_cast<std::size_t>(i)];
    if (early >= late) return false;
    rep.verdict = Verdict::fails;
    rep.counterexample = {{"player", g.label(i)},
                          {"order", order_str(g, order)},
                          {"delayed_order", order_str(g, delayed)},
                          {"share", rat_str(early)},
                          {"delayed_share", rat_str(late)}};
    rep.counterexample_text = g.label(i) + " gains by delaying: " + rat_str(early) + " in " +
                              order_str(g, order) + " vs " + rat_str(late) + " in " +
                              order_str(g, delayed);
    return true;
  };

  for_each_order(n, [&](const ArrivalOrder& order) {
    if (rep.failed()) return;
    for (int p = 0; p + 1 < n && !rep.failed(); ++p) {
      const int i = order.at(p);
      const int last_target = strict_full_pairs ? n - 1 : p + 1;
      std::vector<int> seq = order.sequence();
      for (int q = p + 1; q <= last_target; ++q) {
        std::swap(seq[static_cast<std::size_t>(q - 1)], seq[static_cast<std::size_t>(q)]);
        if (violation(order, ArrivalOrder::of(seq), i)) break;
      }
    }
  });
  return rep;
}

PropertyReport check_sf(const Game& g, const Mechanism& mech) {
  PropertyReport rep{"sf", mech.name, Verdict::holds, "", nullptr};
  const int n = g.player_count();
  std::vector<Rat> sums(static_cast<std::size_t>(n), Rat(0));
  std::uint64_t count = 0;
  for_each_order(n, [&](const ArrivalOrder& order) {
    Allocation alloc = mech.allocate(g, order);
    for (std::size_t i = 0; i < sums.size(); ++i) sums[i] += alloc.shares[i];
    ++count;
  });
  const ShapleyVector sv = shapley_subset(g);
  for (int i = 0; i < n; ++i) {
    Rat mean = sums[static_cast<std::size_t>(i)] / Rat(static_cast<long>(count));
    if (mean != sv[static_cast<std::size_t>(i)]) {
      rep.verdict = Verdict::fails;
      rep.counterexample = {{"player", g.label(i)},
                            {"mean_share", rat_str(mean)},
                            {"shapley_value", rat_str(sv[static_cast<std::size_t>(i)])}};
      rep.counterexample_text = "mean share of " + g.label(i) + " is " + rat_str(mean) +
                                ", Shapley value is " + rat_str(sv[static_cast<std::size_t>(i)]);
      return rep;
    }
  }
  return rep;
}

namespace {

PropertyReport check_pairwise_order_monotonicity(
    const Game& g, const Mechanism& mech, const std::string& property,
    const std::function<std::vector<std::pair<int, int>>(const ArrivalOrder&)>& pairs_of,
    const std::string& relation) {
  PropertyReport rep{property, mech.name, Verdict::holds, "", nullptr};
  for_each_order(g.player_count(), [&](const ArrivalOrder& order) {
    if (rep.failed()) return;
    Allocation alloc = mech.allocate(g, order);
    for (auto [earlier, later] : pairs_of(order)) {
      const Rat& se = alloc.shares[static_cast<std::size_t>(earlier)];
      const Rat& sl = alloc.shares[static_cast<std::size_t>(later)];
      if (se < sl) {
        rep.verdict = Verdict::fails;
        rep.counterexample = {{"order", order_str(g, order)},
                              {"earlier_player", g.label(earlier)},
                              {"later_player", g.label(later)},
                              {"earlier_share", rat_str(se)},
                              {"later_share", rat_str(sl)}};
        rep.counterexample_text = relation + " " + g.label(earlier) + " gets " + rat_str(se) +
                                  " < " + rat_str(sl) + " of later " + g.label(later) +
                                  " in order " + order_str(g, order);
        return;
      }
    }
  });
  return rep;
}

}  // namespace

PropertyReport check_mos(const Game& g, const Mechanism& mech) {
  const auto symmetric = symmetric_players(g);
  return check_pairwise_order_monotonicity(
      g, mech, "mos",
      [&symmetric](const ArrivalOrder& order) {
        std::vector<std::pair<int, int>> pairs;
        for (auto [i, j] : symmetric) {
          if (order.position(i) < order.position(j))
            pairs.emplace_back(i, j);
          else
            pairs.emplace_back(j, i);
        }
        return pairs;
      },
      "earlier symmetric player");
}

PropertyReport check_critical_monotonicity(const Game& g, const Mechanism& mech) {
  return check_pairwise_order_monotonicity(
      g, mech, "critical_monotonicity",
      [&g](const ArrivalOrder& order) {
        OrderStructure st = order_structure(g, order);
        std::vector<std::pair<int, int>> pairs;
        for (std::size_t t = 0; t + 1 < st.critical.size(); ++t)
          pairs.emplace_back(st.critical[t], st.critical[t + 1]);
        return pairs;
      },
      "earlier critical player");
}

PropertyReport check_critical_support(const Game& g, const Mechanism& mech) {
  if (!is_solvable(g).solvable)
    throw std::invalid_argument("critical-support check requires a solvable game");
  PropertyReport rep{"critical_support", mech.name, Verdict::holds, "", nullptr};
  const int n = g.player_count();

  auto fail = [&](const ArrivalOrder& order, const std::string& what, json detail) {
    rep.verdict = Verdict::fails;
    detail["order"] = order_str(g, order);
    rep.counterexample = std::move(detail);
    rep.counterexample_text = what + " in order " + order_str(g, order);
  };

  for_each_order(n, [&](const ArrivalOrder& order) {
    if (rep.failed()) return;
    OrderStructure st = order_structure(g, order);
    OnlineTrace trace = online_run(g, order, mech);
    const Allocation& final = trace.steps.back().cumulative;

    if (st.value_created == 0) {
      for (const auto& step : trace.steps)
        for (const auto& s : step.cumulative.shares)
          if (s != 0) {
            fail(order, "share assigned although no value was created", json::object());
            return;
          }
      return;
    }

    Rat critical_sum(0);
    for (int j : st.critical) critical_sum += final.shares[static_cast<std::size_t>(j)];
    if (critical_sum != 1) {
      fail(order, "critical players' shares sum to " + rat_str(critical_sum) + ", expected 1",
           {{"critical_sum", rat_str(critical_sum)}, {"shares", shares_json(g, final.shares)}});
      return;
    }
    for (int i = 0; i < n; ++i)
      if (!st.is_critical(i) && final.shares[static_cast<std::size_t>(i)] != 0) {
        fail(order, "non-critical player " + g.label(i) + " holds a positive share",
             {{"player", g.label(i)},
              {"share", rat_str(final.shares[static_cast<std::size_t>(i)])}});
        return;
      }

    const int marginal_step = order.position(*st.marginal) + 1;  // 1-based
    for (int k = 1; k <= n; ++k) {
      const auto& shares = trace.steps[static_cast<std::size_t>(k - 1)].cumulative.shares;
      if (k < marginal_step) {
        for (int i = 0; i < n; ++i)
          if (shares[static_cast<std::size_t>(i)] != 0) {
            fail(order,
                 "share assigned at step " + std::to_string(k) +
                     " before the marginal player arrived (step " +
                     std::to_string(marginal_step) + ")",
                 {{"step", k}, {"player", g.label(i)}});
            return;
          }
      } else if (shares != final.shares) {
        fail(order,
             "shares changed after the marginal player's arrival (step " + std::to_string(k) + ")",
             {{"step", k}});
        return;
      }
    }
  });
  return rep;
}

// --- enumeration ---------------------------------------------------------------

std::vector<std::uint64_t> enumerate_monotone_bitmaps(int n) {
  if (n < 0 || n > 5)
    throw std::invalid_argument("exhaustive monotone enumeration limited to 5 players");
  std::vector<std::uint64_t> current = {0u, 1u};
  for (int k = 1; k <= n; ++k) {
    const int width = 1 << (k - 1);
    std::vector<std::uint64_t> next;
    for (std::uint64_t lo : current)
      for (std::uint64_t hi : current)
        if ((lo & ~hi) == 0) next.push_back(lo | (hi << width));
    current = std::move(next);
  }
  std::sort(current.begin(), current.end());
  return current;
}

namespace {

std::vector<std::string> default_labels(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('A' + i)));
  return labels;
}

}  // namespace

Game game_from_bitmap(int n, std::uint64_t bitmap) {
  std::vector<Rat> values(1u << n, Rat(0));
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
    if ((bitmap >> mask) & 1u) values[mask] = 1;
  return Game(default_labels(n), std::move(values));
}

std::vector<EnumeratedGame> enumerate_zero_one_monotone_games(int n) {
  std::vector<EnumeratedGame> out;
  for (std::uint64_t bitmap : enumerate_monotone_bitmaps(n)) {
    if (bitmap == 0 || (bitmap & 1u)) continue;  // constants / v(empty) != 0
    Game g = game_from_bitmap(n, bitmap);
    const bool solvable = is_solvable(g).solvable;
    out.push_back(EnumeratedGame{std::move(g), solvable, bitmap});
  }
  return out;
}

std::vector<EnumeratedGame> sample_zero_one_monotone_games(int n, int count, std::uint64_t seed,
                                                           bool solvable_only) {
  std::mt19937_64 rng(seed);
  if (n <= 5) {
    std::vector<EnumeratedGame> pool = enumerate_zero_one_monotone_games(n);
    if (solvable_only)
      std::erase_if(pool, [](const EnumeratedGame& e) { return !e.solvable; });
    const std::size_t take = std::min<std::size_t>(pool.size(), static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < take; ++i) {
      // own Fisher-Yates: std::shuffle is implementation-defined
      std::size_t j = i + static_cast<std::size_t>(rng() % (pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(take), pool.end());
    return pool;
  }

  if (n > 16) throw std::invalid_argument("too many players");
  std::vector<EnumeratedGame> out;
  std::set<std::string> seen;
  const std::uint32_t full = (1u << n) - 1u;
  while (static_cast<int>(out.size()) < count) {
    const int coalitions = 1 + static_cast<int>(rng() % 3);
    std::vector<Rat> values(1u << n, Rat(0));
    std::vector<std::uint32_t> minimal;
    for (int c = 0; c < coalitions; ++c)
      minimal.push_back(1u + static_cast<std::uint32_t>(rng() % full));
    for (std::uint32_t mask = 1; mask <= full; ++mask)
      for (std::uint32_t m : minimal)
        if ((m & ~mask) == 0) {
          values[mask] = 1;
          break;
        }
    std::string key;
    key.reserve(values.size());
    for (const auto& v : values) key += (v == 1) ? '1' : '0';
    if (!seen.insert(key).second) continue;
    Game g(default_labels(n), std::move(values));
    const bool solvable = is_solvable(g).solvable;
    if (solvable_only && !solvable) continue;
    out.push_back(EnumeratedGame{std::move(g), solvable, 0});
  }
  return out;
}

Game random_monotone_game(int n, std::mt19937_64& rng) {
  const std::uint32_t full = (1u << n) - 1u;
  std::vector<Rat> values(1u << n, Rat(0));
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    Rat base(0);
    for (int i = 0; i < n; ++i)
      if ((mask >> i) & 1u) base = std::max(base, values[mask & ~(1u << i)]);
    const std::uint64_t roll = rng() % 6;
    if (roll >= 3) {
      const long num = 1 + static_cast<long>(rng() % 3);
      const long den = 1 + static_cast<long>(rng() % 3);
      base += rat(num, den);
    }
    values[mask] = std::move(base);
  }
  if (values[full] == 0) values[full] = 1;
  return Game(default_labels(n), std::move(values));
}

// --- drivers ---------------------------------------------------------------------

SweepReport run_property_sweep(const std::vector<EnumeratedGame>& games, const Mechanism& mech,
                               const std::vector<std::string>& properties, bool strict_i4ea) {
  SweepReport report;
  for (const EnumeratedGame& entry : games) {
    for (const std::string& property : properties) {
      PropertyReport pr;
      if (property == "efficiency") pr = check_efficiency(entry.game, mech);
      else if (property == "oir") pr = check_oir(entry.game, mech);
      else if (property == "sf") pr = check_sf(entry.game, mech);
      else if (property == "i4ea") pr = check_i4ea(entry.game, mech, strict_i4ea);
      else if (property == "mos") pr = check_mos(entry.game, mech);
      else if (property == "critical_support") pr = check_critical_support(entry.game, mech);
      else throw std::invalid_argument("unknown property '" + property + "'");
      ++report.checks_run;
      if (pr.failed())
        report.failures.push_back(
            SweepFailure{entry.bitmap, minimal_winning_id(entry.game), std::move(pr)});
    }
    ++report.games_checked;
  }
  return report;
}

MechanismComparison compare_mechanisms(const Game& g, const std::vector<Mechanism>& mechs) {
  MechanismComparison cmp;
  for (const Mechanism& m : mechs) cmp.reports.push_back(expected_metrics(g, m));
  const std::size_t k = mechs.size();
  cmp.ew_strictly_below.assign(k, std::vector<std::uint64_t>(k, 0));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      if (a == b) continue;
      for (std::size_t r = 0; r < cmp.reports[a].per_order_ew.size(); ++r) {
        const auto& ea = cmp.reports[a].per_order_ew[r];
        const auto& eb = cmp.reports[b].per_order_ew[r];
        if (ea && eb && *ea < *eb) ++cmp.ew_strictly_below[a][b];
      }
    }
  return cmp;
}

std::string minimal_winning_id(const Game& g) {
  std::string out;
  for (const PlayerSet& s : minimal_winning_coalitions(g)) {
    if (!out.empty()) out += ",";
    out += "{";
    bool first = true;
    for (int i : s.members()) {
      if (!first) out += ",";
      out += g.label(i);
      first = false;
    }
    out += "}";
  }
  return out.empty() ? "{}" : out;
}

}  // namespace ovs
