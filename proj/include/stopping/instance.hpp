#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "stopping/distribution.hpp"

namespace stopping {

enum class Objective { maximize, minimize };

// An ordered list of independent value distributions plus the optimization
// sense. The arrival-order model (uniformly random permutation vs. the
// listed order) is a property of the evaluator, not of the instance.
struct Instance {
    std::vector<DiscreteDistribution> distributions;
    Objective objective = Objective::maximize;
    std::string name;

    std::size_t n() const { return distributions.size(); }
};

void validate(const Instance& inst);

// E[max X_i] for maximize instances, E[min X_i] for minimize instances:
// the value a prophet who sees all draws would take.
double offline_value(const Instance& inst);

}  // namespace stopping
