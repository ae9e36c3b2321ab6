#pragma once

#include <utility>
#include <vector>

#include "ovs/game.hpp"

namespace ovs {

// Per-player exact Shapley values; entries sum to v(N).
using ShapleyVector = std::vector<Rat>;

// v(p(i)) - v(p(i) \ {i}) for the given order.
Rat marginal_contribution(const Game& g, const ArrivalOrder& order, int player);

// Exact average of marginal contributions over all n! orders. n <= 8.
ShapleyVector shapley_permutation(const Game& g);

// Coalition-form rewrite: sum over S avoiding i of |S|!(n-|S|-1)!/n! times
// the marginal gain. Independent of the permutation path; n <= 16.
ShapleyVector shapley_subset(const Game& g);

// Threshold decomposition of a monotone game into 0-1 monotone layers:
// v = sum_k coefficient_k * layer_k with layer_k(S) = 1[v(S) >= t_k] and
// coefficients the gaps between consecutive distinct values.
struct LayerDecomposition {
  std::vector<std::pair<Rat, Game>> layers;  // (coefficient, 0-1 monotone game)
};

LayerDecomposition decompose_layers(const Game& g);

}  // namespace ovs
