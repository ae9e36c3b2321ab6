#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "ovs/analysis.hpp"
#include "ovs/shapley.hpp"

using namespace ovs;
using fixtures::R;

TEST_SUITE_BEGIN("shapley");

TEST_CASE("marginal contributions") {
  Game g1 = fixtures::three_player_veto();
  ArrivalOrder abc = fixtures::order_of(g1, {"A", "B", "C"});
  CHECK(marginal_contribution(g1, abc, g1.player_index("B")) == 1);
  CHECK(marginal_contribution(g1, abc, g1.player_index("C")) == 0);

  Game g3 = fixtures::four_player_pair_core();
  ArrivalOrder cdab = fixtures::order_of(g3, {"C", "D", "A", "B"});
  CHECK(marginal_contribution(g3, cdab, g3.player_index("B")) == 1);
}

TEST_CASE("permutation-form values on the fixture games") {
  ShapleyVector sv1 = shapley_permutation(fixtures::three_player_veto());
  CHECK(sv1 == ShapleyVector{R(4, 6), R(1, 6), R(1, 6)});

  ShapleyVector sv3 = shapley_permutation(fixtures::four_player_pair_core());
  CHECK(sv3 == ShapleyVector{R(5, 12), R(5, 12), R(1, 12), R(1, 12)});

  Game solo = game_from_minimal({"A"}, {{"A"}});
  CHECK(shapley_permutation(solo) == ShapleyVector{R(1)});
}

TEST_CASE("subset-form agrees and handles the zero game") {
  CHECK(shapley_subset(fixtures::three_player_veto()) == ShapleyVector{R(2, 3), R(1, 6), R(1, 6)});
  CHECK(shapley_subset(fixtures::zero_game(3)) == ShapleyVector{R(0), R(0), R(0)});
}

TEST_CASE("the two oracles agree exactly") {
  SUBCASE("on every nonconstant 0-1 monotone game with 4 players") {
    for (const EnumeratedGame& entry : enumerate_zero_one_monotone_games(4))
      CHECK(shapley_permutation(entry.game) == shapley_subset(entry.game));
  }
  SUBCASE("on random rational-valued monotone games") {
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 25; ++round) {
      Game g = random_monotone_game(4, rng);
      CHECK(shapley_permutation(g) == shapley_subset(g));
    }
  }
}

TEST_CASE("permutation form refuses more than 8 players") {
  std::vector<std::string> labels;
  for (int i = 0; i < 9; ++i) labels.push_back(std::string(1, static_cast<char>('A' + i)));
  Game g(labels, std::vector<Rat>(1u << 9, Rat(0)));
  CHECK_THROWS_AS(shapley_permutation(g), std::invalid_argument);
  CHECK(shapley_subset(g) == ShapleyVector(9, Rat(0)));
}

TEST_CASE("Shapley axioms hold exactly") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 20; ++round) {
    Game g = random_monotone_game(4, rng);
    ShapleyVector sv = shapley_subset(g);
    Rat sum(0);
    for (const Rat& v : sv) sum += v;
    CHECK(sum == g.value(g.grand_coalition()));  // efficiency
    for (auto [i, j] : symmetric_players(g))
      CHECK(sv[static_cast<std::size_t>(i)] == sv[static_cast<std::size_t>(j)]);
  }
  // null player: D contributes nothing in the three-of-four unanimity game
  ShapleyVector sv = shapley_subset(fixtures::three_of_four_unanimity());
  CHECK(sv == ShapleyVector{R(1, 3), R(1, 3), R(1, 3), R(0)});
}

TEST_CASE("layer decomposition") {
  SUBCASE("a 0-1 game is its own single layer") {
    Game g = fixtures::three_player_veto();
    LayerDecomposition dec = decompose_layers(g);
    REQUIRE(dec.layers.size() == 1);
    CHECK(dec.layers[0].first == 1);
    for (std::uint32_t mask = 0; mask < 8; ++mask)
      CHECK(dec.layers[0].second.value_mask(mask) == g.value_mask(mask));
  }
  SUBCASE("value gaps become coefficients") {
    Game g({"A", "B"}, {R(0), R(2), R(0), R(5)});  // values {0,2,5}
    LayerDecomposition dec = decompose_layers(g);
    REQUIRE(dec.layers.size() == 2);
    CHECK(dec.layers[0].first == 2);
    CHECK(dec.layers[1].first == 3);
    CHECK(dec.layers[0].second.zero_one());
    CHECK(dec.layers[1].second.zero_one());
  }
  SUBCASE("recomposition is exact and zero-one layers are monotone") {
    std::mt19937_64 rng(17);
    for (int round = 0; round < 30; ++round) {
      Game g = random_monotone_game(4, rng);
      LayerDecomposition dec = decompose_layers(g);
      for (std::uint32_t mask = 0; mask < 16; ++mask) {
        Rat sum(0);
        for (const auto& [coeff, layer] : dec.layers) sum += coeff * layer.value_mask(mask);
        CHECK(sum == g.value_mask(mask));
      }
      for (const auto& [coeff, layer] : dec.layers) {
        CHECK(coeff > 0);
        CHECK(layer.zero_one());
        CHECK(layer.monotone());
      }
    }
  }
  SUBCASE("Shapley values are linear across layers") {
    std::mt19937_64 rng(23);
    for (int round = 0; round < 10; ++round) {
      Game g = random_monotone_game(4, rng);
      ShapleyVector sv = shapley_subset(g);
      ShapleyVector combined(4, Rat(0));
      for (const auto& [coeff, layer] : decompose_layers(g).layers) {
        ShapleyVector lsv = shapley_subset(layer);
        for (std::size_t i = 0; i < combined.size(); ++i) combined[i] += coeff * lsv[i];
      }
      CHECK(combined == sv);
    }
  }
  SUBCASE("non-monotone games are rejected") {
    Game g({"A", "B"}, {R(0), R(1), R(0), R(0)});
    CHECK_THROWS_AS(decompose_layers(g), std::invalid_argument);
  }
  SUBCASE("the zero game decomposes into no layers") {
    CHECK(decompose_layers(fixtures::zero_game(2)).layers.empty());
  }
}

TEST_SUITE_END();
