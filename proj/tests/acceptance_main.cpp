// Acceptance suite: reproduces the reference tables and sweeps the fairness
// and incentive properties over enumerated game instances. Prints one
// pass/fail line per criterion; exits nonzero if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "ovs/analysis.hpp"
#include "ovs/mechanisms.hpp"
#include "ovs/shapley.hpp"
#include "ovs/structure.hpp"

using namespace ovs;
using fixtures::R;

namespace {

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define ACHECK(cond, msg)                                     \
  do {                                                        \
    if (!(cond)) {                                            \
      std::ostringstream os;                                  \
      os << msg << " (" << __FILE__ << ":" << __LINE__ << ")"; \
      throw CheckFailure(os.str());                           \
    }                                                         \
  } while (0)

int g_failures = 0;

void criterion(int id, const std::string& title, long budget_ms,
               const std::function<void()>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string failure;
  try {
    body();
  } catch (const std::exception& e) {
    failure = e.what();
  }
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  if (failure.empty() && budget_ms > 0 && elapsed.count() > budget_ms) {
    std::ostringstream os;
    os << "exceeded the " << budget_ms << " ms budget";
    failure = os.str();
  }
  std::ostringstream line;
  line << (failure.empty() ? "[PASS]" : "[FAIL]") << " criterion " << id << ": " << title << " ("
       << elapsed.count() << " ms, budget " << budget_ms << " ms)";
  if (!failure.empty()) {
    line << "\n       " << failure;
    ++g_failures;
  }
  std::cout << line.str() << std::endl;
}

constexpr std::uint64_t kSampleSeed = 20250811;
constexpr int kSampleCount = 200;

// Solvable nonconstant 0-1 monotone games: exhaustive for n <= 4 plus a
// seeded sample at n = 5.
const std::vector<EnumeratedGame>& instance_set() {
  static const std::vector<EnumeratedGame> games = [] {
    std::vector<EnumeratedGame> out;
    for (int n = 1; n <= 4; ++n)
      for (EnumeratedGame& e : enumerate_zero_one_monotone_games(n))
        if (e.solvable) out.push_back(std::move(e));
    for (EnumeratedGame& e :
         sample_zero_one_monotone_games(5, kSampleCount, kSampleSeed, true))
      out.push_back(std::move(e));
    return out;
  }();
  return games;
}

const std::vector<WeightFunction>& weight_grids() {
  static const std::vector<WeightFunction> grids = {
      WeightFunction::constant(5),
      WeightFunction::make({R(1), R(1, 2), R(1, 4), R(1, 8), R(1, 16)}),
      WeightFunction::make({R(2), R(1), R(1), R(0), R(0)}),
      WeightFunction::make({R(1), R(1), R(1, 2), R(1, 2), R(1, 4)}),
      WeightFunction::make({R(1), R(0), R(0), R(0), R(0)}),
  };
  return grids;
}

std::vector<Rat> by_labels(const Game& g, const Allocation& a,
                           std::initializer_list<const char*> labels) {
  std::vector<Rat> out;
  for (const char* l : labels) out.push_back(a.shares[static_cast<std::size_t>(g.player_index(l))]);
  return out;
}

ArrivalOrder order_of(const Game& g, std::initializer_list<const char*> labels) {
  return fixtures::order_of(g, labels);
}

void criterion_1_first_table() {
  Game g = fixtures::three_player_veto();
  struct Row {
    std::vector<const char*> order;
    std::vector<const char*> critical;
    const char* marginal;
    const char* winner;
  };
  const std::vector<Row> rows = {
      {{"A", "B", "C"}, {"A", "B"}, "B", "A"}, {{"A", "C", "B"}, {"A", "C"}, "C", "A"},
      {{"B", "A", "C"}, {"B", "A"}, "A", "B"}, {{"B", "C", "A"}, {"A"}, "A", "A"},
      {{"C", "A", "B"}, {"C", "A"}, "A", "C"}, {{"C", "B", "A"}, {"A"}, "A", "A"},
  };
  for (const Row& row : rows) {
    std::vector<std::string> labels(row.order.begin(), row.order.end());
    ArrivalOrder order = ArrivalOrder::from_labels(g, labels);
    OrderStructure st = order_structure(g, order);
    ACHECK(st.marginal && g.label(*st.marginal) == row.marginal,
           "wrong marginal player in " << order_label(g, order));
    ACHECK(st.critical.size() == row.critical.size(), "wrong critical count");
    for (std::size_t k = 0; k < row.critical.size(); ++k)
      ACHECK(g.label(st.critical[k]) == row.critical[k],
             "wrong critical set in " << order_label(g, order));
    Allocation a = rfc_allocate(g, order);
    for (int i = 0; i < 3; ++i)
      ACHECK(a.shares[static_cast<std::size_t>(i)] == (g.label(i) == row.winner ? R(1) : R(0)),
             "wrong winner share in " << order_label(g, order));
  }
}

void criterion_2_weighted_table() {
  Game g = fixtures::four_player_pair_core();
  // EVS rows
  ACHECK(by_labels(g, evs_allocate(g, order_of(g, {"C", "A", "B", "D"})), {"C", "A", "B", "D"}) ==
             (std::vector<Rat>{R(1, 3), R(1, 3), R(1, 3), R(0)}),
         "EVS shares wrong for C-A-B-D");
  ACHECK(by_labels(g, evs_allocate(g, order_of(g, {"C", "A", "D", "B"})), {"A", "B", "C", "D"}) ==
             (std::vector<Rat>{R(2, 3), R(1, 3), R(0), R(0)}),
         "EVS shares wrong for C-A-D-B");
  ACHECK(by_labels(g, evs_allocate(g, order_of(g, {"C", "D", "A", "B"})), {"A", "B", "C", "D"}) ==
             (std::vector<Rat>{R(1, 2), R(1, 2), R(0), R(0)}),
         "EVS shares wrong for C-D-A-B");
  // RFC rows: the first critical player takes everything
  ACHECK(by_labels(g, rfc_allocate(g, order_of(g, {"C", "A", "B", "D"})), {"C"}) ==
             std::vector<Rat>{R(1)},
         "RFC winner wrong for C-A-B-D");
  ACHECK(by_labels(g, rfc_allocate(g, order_of(g, {"C", "A", "D", "B"})), {"A"}) ==
             std::vector<Rat>{R(1)},
         "RFC winner wrong for C-A-D-B");
  ACHECK(by_labels(g, rfc_allocate(g, order_of(g, {"C", "D", "A", "B"})), {"A"}) ==
             std::vector<Rat>{R(1)},
         "RFC winner wrong for C-D-A-B");
  // minimal critical prefix rows
  auto mcp_labels = [&](std::initializer_list<const char*> order_labels) {
    MinimalCriticalPrefix mcp = minimal_critical_prefix(g, order_of(g, order_labels));
    std::string out;
    for (int j : mcp.prefix_players) out += (out.empty() ? "" : "-") + g.label(j);
    return out;
  };
  ACHECK(mcp_labels({"C", "A", "B", "D"}) == "C-A-B", "MCP wrong for C-A-B-D");
  ACHECK(mcp_labels({"C", "A", "D", "B"}) == "C-A-B", "MCP wrong for C-A-D-B");
  ACHECK(mcp_labels({"C", "D", "A", "B"}) == "C-D-A-B", "MCP wrong for C-D-A-B");
}

void criterion_3_shapley_fixtures() {
  Game g1 = fixtures::three_player_veto();
  const ShapleyVector expected1 = {R(4, 6), R(1, 6), R(1, 6)};
  ACHECK(shapley_permutation(g1) == expected1, "permutation oracle wrong on the veto game");
  ACHECK(shapley_subset(g1) == expected1, "subset oracle wrong on the veto game");

  Game g3 = fixtures::four_player_pair_core();
  const ShapleyVector expected3 = {R(5, 12), R(5, 12), R(1, 12), R(1, 12)};
  ACHECK(shapley_permutation(g3) == expected3, "permutation oracle wrong on the pair game");
  ACHECK(shapley_subset(g3) == expected3, "subset oracle wrong on the pair game");
}

void criterion_4_solvability() {
  Solvability veto = is_solvable(fixtures::three_player_veto());
  ACHECK(!veto.solvable, "veto game must be unsolvable");
  ACHECK(veto.witness && veto.witness->player == 0 && veto.witness->coalition.mask() == 0b111,
         "unexpected unsolvability witness");
  ACHECK(is_solvable(fixtures::four_player_pair_core()).solvable, "pair game must be solvable");
}

void criterion_5_property_sweep() {
  const auto& games = instance_set();
  ACHECK(games.size() >= 100, "instance set unexpectedly small");
  for (const WeightFunction& w : weight_grids()) {
    Mechanism mech = make_wvs(w);
    SweepReport core = run_property_sweep(games, mech, {"sf", "oir", "mos"});
    ACHECK(core.all_hold(), mech.name << ": " << core.failures.size()
                                      << " SF/OIR/MOS failures, first on game "
                                      << core.failures.front().game_id);
    SweepReport adjacent = run_property_sweep(games, mech, {"i4ea"}, false);
    SweepReport strict = run_property_sweep(games, mech, {"i4ea"}, true);
    ACHECK(adjacent.all_hold() && strict.all_hold(),
           mech.name << ": I4EA failed (adjacent " << adjacent.failures.size() << ", strict "
                     << strict.failures.size() << ")");
  }
}

void criterion_6_negative_controls() {
  // (a) equal split among critical players is not I4EA: the marginal player
  // gains by delaying past the fourth player
  Game g3 = fixtures::four_player_pair_core();
  PropertyReport es = check_i4ea(g3, make_equal_split());
  ACHECK(es.failed(), "equal split should fail I4EA on the pair game");
  Allocation before = make_equal_split().allocate(g3, order_of(g3, {"C", "A", "B", "D"}));
  Allocation after = make_equal_split().allocate(g3, order_of(g3, {"C", "A", "D", "B"}));
  ACHECK(before.shares[1] == R(1, 3) && after.shares[1] == R(1, 2),
         "expected the 1/3 -> 1/2 jump for the delaying marginal player");

  // (b) RFC is not I4EA on the unsolvable veto game
  PropertyReport rfc = check_i4ea(fixtures::three_player_veto(), make_rfc());
  ACHECK(rfc.failed(), "RFC should fail I4EA on the veto game");
  ACHECK(rfc.counterexample["player"] == "A" && rfc.counterexample["order"] == "B-A-C" &&
             rfc.counterexample["delayed_order"] == "B-C-A",
         "unexpected RFC witness: " << rfc.counterexample.dump());

  // (c) the hand-built share table is Shapley-fair but not MOS
  Game u = fixtures::three_of_four_unanimity();
  Mechanism table = make_null_player_table_policy(R(1, 10));
  ACHECK(!check_sf(u, table).failed(), "table policy should be Shapley-fair");
  ACHECK(check_mos(u, table).failed(), "table policy should fail MOS");
}

void criterion_7_egalitarian_dominance() {
  const auto& games = instance_set();
  std::vector<Mechanism> rivals = {make_rfc()};
  for (const WeightFunction& w : weight_grids()) rivals.push_back(make_wvs(w));
  for (const EnumeratedGame& entry : games) {
    MetricReport evs = expected_metrics(entry.game, make_evs());
    for (const Mechanism& rival : rivals) {
      MetricReport other = expected_metrics(entry.game, rival);
      for (std::size_t r = 0; r < evs.per_order_ew.size(); ++r) {
        ACHECK(evs.per_order_ew[r].has_value() == other.per_order_ew[r].has_value(),
               "EW presence mismatch");
        if (evs.per_order_ew[r])
          ACHECK(*evs.per_order_ew[r] >= *other.per_order_ew[r],
                 "EW of EVS below " << rival.name << " on game " << minimal_winning_id(entry.game)
                                    << " order rank " << r);
      }
    }
  }
  // the share-table policy on its own fixture game
  Game u = fixtures::three_of_four_unanimity();
  MetricReport evs = expected_metrics(u, make_evs());
  MetricReport table = expected_metrics(u, make_null_player_table_policy(R(1, 10)));
  for (std::size_t r = 0; r < evs.per_order_ew.size(); ++r)
    ACHECK(*evs.per_order_ew[r] >= *table.per_order_ew[r],
           "EW of EVS below the table policy at order rank " << r);
}

void criterion_8_distance_minimality() {
  const auto& games = instance_set();
  std::vector<Mechanism> rivals = {make_rfc()};
  for (const WeightFunction& w : weight_grids()) rivals.push_back(make_wvs(w));
  for (const EnumeratedGame& entry : games) {
    MetricReport evs = expected_metrics(entry.game, make_evs());
    for (const Mechanism& rival : rivals) {
      MetricReport other = expected_metrics(entry.game, rival);
      ACHECK(evs.expected_sd_total <= other.expected_sd_total,
             "expected SD of EVS above " << rival.name << " on game "
                                         << minimal_winning_id(entry.game));
    }
  }
  Game u = fixtures::three_of_four_unanimity();
  ACHECK(expected_metrics(u, make_evs()).expected_sd_total <=
             expected_metrics(u, make_null_player_table_policy(R(1, 10))).expected_sd_total,
         "expected SD of EVS above the table policy");
}

void criterion_9_decomposition_linearity() {
  std::mt19937_64 rng(kSampleSeed);
  for (int round = 0; round < 100; ++round) {
    Game g = random_monotone_game(4, rng);
    LayerDecomposition dec = decompose_layers(g);
    for (std::uint32_t mask = 0; mask < 16; ++mask) {
      Rat sum(0);
      for (const auto& [coeff, layer] : dec.layers) sum += coeff * layer.value_mask(mask);
      ACHECK(sum == g.value_mask(mask), "layer recomposition differs at mask " << mask);
    }
    std::vector<Rat> mean(4, R(0));
    for_each_order(4, [&](const ArrivalOrder& order) {
      Allocation a = general_allocate(g, order, make_evs());
      for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += a.shares[i];
    });
    for (auto& v : mean) v /= R(24);
    ACHECK(mean == shapley_subset(g), "layered EVS mean share differs from the Shapley value");
  }
}

void criterion_10_oracle_equivalence() {
  for (const EnumeratedGame& entry : instance_set())
    ACHECK(shapley_permutation(entry.game) == shapley_subset(entry.game),
           "oracle mismatch on game " << minimal_winning_id(entry.game));
  std::mt19937_64 rng(kSampleSeed);
  for (int round = 0; round < 100; ++round) {
    Game g = random_monotone_game(4, rng);
    ACHECK(shapley_permutation(g) == shapley_subset(g), "oracle mismatch on a random game");
  }
}

}  // namespace

int main() {
  criterion(1, "first-critical-player table reproduction", 1000, criterion_1_first_table);
  criterion(2, "weighted-sharing table reproduction", 1000, criterion_2_weighted_table);
  criterion(3, "Shapley fixtures from both oracles", 1000, criterion_3_shapley_fixtures);
  criterion(4, "solvability classification with witness", 1000, criterion_4_solvability);
  criterion(5, "SF/OIR/I4EA/MOS sweep over solvable games", 60000, criterion_5_property_sweep);
  criterion(6, "negative controls", 5000, criterion_6_negative_controls);
  criterion(7, "per-order egalitarian-welfare dominance of EVS", 60000,
            criterion_7_egalitarian_dominance);
  criterion(8, "expected Shapley-distance minimality of EVS", 60000,
            criterion_8_distance_minimality);
  criterion(9, "decomposition linearity on random monotone games", 30000,
            criterion_9_decomposition_linearity);
  criterion(10, "permutation/subset oracle equivalence everywhere", 60000,
            criterion_10_oracle_equivalence);

  if (g_failures == 0) {
    std::cout << "all 10 acceptance criteria passed" << std::endl;
    return 0;
  }
  std::cout << g_failures << " acceptance criteria failed" << std::endl;
  return 1;
}
