#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stopping/instance.hpp"
#include "stopping/schedule.hpp"

namespace stopping {

// One simulated episode. permutation[k-1] is the index of the distribution
// revealed at step k; drawn_values[i] is the value drawn from distribution
// i. chosen_value is 0 when no step accepted.
struct RunOutcome {
    std::vector<int> permutation;
    std::optional<int> stop_step;  // 1-based; empty when nothing accepted
    double chosen_value = 0.0;
    std::vector<double> drawn_values;
};

// Draws one value per distribution (inverse CDF, in index order), permutes
// uniformly (Fisher-Yates on the same stream), then accepts the first step
// k with value >= tau_k. Maximize instances only; schedule length must be
// n. Equal seeds give bit-identical outcomes; see rng.hpp.
RunOutcome run_once(const Instance& inst, const ThresholdSchedule& schedule,
                    std::uint64_t seed);

// Classic observe-then-commit rule: watch the first floor(n/e) arrivals,
// then accept the first value strictly above the observed maximum.
// Maximize instances with n >= 2 only.
RunOutcome run_secretary(const Instance& inst, std::uint64_t seed);

}  // namespace stopping
