#pragma once

#include <optional>
#include <vector>

#include "stopping/instance.hpp"
#include "stopping/rng.hpp"

namespace stopping::detail {

// Episode cores shared by run_once / run_secretary and the Monte Carlo
// estimator, so both always consume randomness identically: one
// next_double per distribution in index order, then the shuffle.
double threshold_episode(const Instance& inst, const std::vector<double>& taus, Rng& rng,
                         std::vector<double>& draws, std::vector<int>& perm,
                         std::optional<int>& stop);

double secretary_episode(const Instance& inst, Rng& rng, std::vector<double>& draws,
                         std::vector<int>& perm, std::optional<int>& stop);

}  // namespace stopping::detail
