#pragma once

#include <vector>

// Reference beta tables for near-extremal [48,24] codes built from the four
// bundled orbit matrices, and their union. beta = A_12 / 8.

namespace tdc::gamma {

/// Reference beta set for one bundled orbit matrix (id in 1..4).
const std::vector<int>& beta_set(int id);

/// Union of the four reference sets (181 values).
const std::vector<int>& beta_union();

bool contains(const std::vector<int>& sorted_set, int beta);

}  // namespace tdc::gamma
