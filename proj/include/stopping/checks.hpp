#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stopping/exec.hpp"
#include "stopping/instance.hpp"
#include "stopping/rng.hpp"
#include "stopping/schedule.hpp"

namespace stopping {

struct CheckResult {
    int criterion = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

inline constexpr int kNumCriteria = 10;

// The numbered verification criteria behind the acceptance suite and the
// repro subcommand. Tolerances and runtime limits live inside; each result
// reports what was measured.
CheckResult run_criterion(int criterion, Exec exec = Exec::parallel);

// Stable experiment ids exposed by `repro`, each mapped to one criterion.
struct Claim {
    const char* id;
    int criterion;
};
std::span<const Claim> claims();
CheckResult run_claim(std::string_view claim_id, Exec exec = Exec::parallel);

// Deterministic instance battery used by the criteria and the property
// tests. Values are nonnegative on a coarse grid so supports collide across
// distributions; expected_max is always positive.
Instance random_instance(Rng& rng, int n, int max_support, double vmax);

// n thresholds sorted non-increasing; individual entries are either fresh
// uniform draws or copies of support values so that thresholds sitting
// exactly on atoms stay exercised.
ThresholdSchedule random_nonincreasing_schedule(Rng& rng, const Instance& inst, double vmax);

}  // namespace stopping
