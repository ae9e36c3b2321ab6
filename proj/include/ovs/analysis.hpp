#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "ovs/mechanisms.hpp"
#include "ovs/shapley.hpp"
#include "ovs/structure.hpp"

namespace ovs {

// --- order-level metrics ---------------------------------------------------

// Squared gaps between an order's realized shares and the Shapley value;
// `total` sums the per-player terms.
struct SdResult {
  std::vector<Rat> per_player;
  Rat total{0};
};

SdResult shapley_distance(const Allocation& alloc, const ShapleyVector& sv);

// Minimum share among the order's critical players; absent when no value is
// created (empty critical set).
std::optional<Rat> egalitarian_welfare(const Game& g, const ArrivalOrder& order,
                                       const Allocation& alloc);

// Exact expectations over all n! orders. Orders creating no value are
// excluded from the EW mean; `ew_order_count` records how many contributed.
struct MetricReport {
  std::string mechanism;
  ShapleyVector shapley;
  std::uint64_t order_count = 0;
  Rat expected_sd_total{0};
  std::vector<Rat> expected_sd_per_player;
  std::optional<Rat> expected_ew;
  std::uint64_t ew_order_count = 0;
  std::vector<Rat> per_order_sd_total;            // indexed by order rank
  std::vector<std::optional<Rat>> per_order_ew;   // indexed by order rank
};

MetricReport expected_metrics(const Game& g, const Mechanism& mech);

// Allocations for all n! orders, indexed by lexicographic rank.
std::vector<Allocation> allocate_all_orders(const Game& g, const Mechanism& mech);

// One row of the full order table (cmd `table`, fixtures).
struct OrderRow {
  std::uint64_t rank = 0;
  ArrivalOrder order;
  Allocation alloc;
  OrderStructure structure;
  std::vector<int> mcp_players;  // empty when no value created
  int mcp_critical_count = 0;
  SdResult sd;
  std::optional<Rat> ew;
};

void for_each_order_row(const Game& g, const Mechanism& mech,
                        const std::function<void(const OrderRow&)>& fn);

// --- property verification ---------------------------------------------------

enum class Verdict { holds, fails };

// Verdict plus, on failure, the minimal reproducible counterexample
// (minimal in order rank, then step/pair index).
struct PropertyReport {
  std::string property;
  std::string mechanism;
  Verdict verdict = Verdict::holds;
  std::string counterexample_text;
  nlohmann::json counterexample;

  bool failed() const { return verdict == Verdict::fails; }
};

// Shares sum to v(N) and are nonnegative, on every order.
PropertyReport check_efficiency(const Game& g, const Mechanism& mech);
// Cumulative shares never decrease across nested prefixes, every order.
PropertyReport check_oir(const Game& g, const Mechanism& mech);
// Delaying one's arrival (others fixed) never increases one's share.
// Checks all adjacent backward swaps; with `strict_full_pairs` checks every
// delayed reinsertion position (audit mode, same verdict by transitivity).
PropertyReport check_i4ea(const Game& g, const Mechanism& mech, bool strict_full_pairs = false);
// The mean share over all orders equals the subset-form Shapley value.
PropertyReport check_sf(const Game& g, const Mechanism& mech);
// Among symmetric players, the earlier arrival gets a weakly larger share.
PropertyReport check_mos(const Game& g, const Mechanism& mech);
// Earlier critical players receive weakly larger shares (the critical-player
// reformulation of MOS for efficient online mechanisms).
PropertyReport check_critical_monotonicity(const Game& g, const Mechanism& mech);
// On solvable games: shares live exactly on the critical players and are
// fixed from the marginal player's arrival step onward.
PropertyReport check_critical_support(const Game& g, const Mechanism& mech);

// --- game enumeration --------------------------------------------------------

// Every monotone 0-1 function on n players as a 2^n-bit value bitmap
// (bit S = f(S)); includes the two constants. Exhaustive for n <= 5
// (counts 2, 3, 6, 20, 168, 7581).
std::vector<std::uint64_t> enumerate_monotone_bitmaps(int n);

Game game_from_bitmap(int n, std::uint64_t bitmap);

struct EnumeratedGame {
  Game game;
  bool solvable;
  std::uint64_t bitmap;
};

// All nonconstant 0-1 monotone games on n players, tagged solvable, n <= 5.
std::vector<EnumeratedGame> enumerate_zero_one_monotone_games(int n);

// Seeded sample. Draws from the exhaustive list for n <= 5; for larger n
// generates games from random minimal-winning antichains.
std::vector<EnumeratedGame> sample_zero_one_monotone_games(int n, int count, std::uint64_t seed,
                                                           bool solvable_only);

// Seeded random monotone game with small rational values (not 0-1).
Game random_monotone_game(int n, std::mt19937_64& rng);

// --- sweep and comparison drivers ---------------------------------------------

struct SweepFailure {
  std::uint64_t bitmap = 0;
  std::string game_id;  // minimal winning coalitions rendering
  PropertyReport report;
};

struct SweepReport {
  int games_checked = 0;
  int checks_run = 0;
  std::vector<SweepFailure> failures;

  bool all_hold() const { return failures.empty(); }
};

// Runs the named properties ("efficiency", "oir", "sf", "i4ea", "mos",
// "critical_support") on every game.
SweepReport run_property_sweep(const std::vector<EnumeratedGame>& games, const Mechanism& mech,
                               const std::vector<std::string>& properties, bool strict_i4ea = false);

struct MechanismComparison {
  std::vector<MetricReport> reports;
  // ew_strictly_below[a][b] = number of orders where EW of mechanism a is
  // strictly below EW of mechanism b.
  std::vector<std::vector<std::uint64_t>> ew_strictly_below;
};

MechanismComparison compare_mechanisms(const Game& g, const std::vector<Mechanism>& mechs);

// "{A,B},{A,C}" rendering of a 0-1 monotone game's minimal winning coalitions.
std::string minimal_winning_id(const Game& g);

}  // namespace ovs
