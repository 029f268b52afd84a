#pragma once

#include <cstdint>

#include "stopping/exec.hpp"
#include "stopping/instance.hpp"
#include "stopping/schedule.hpp"

namespace stopping {

struct MCReport {
    double mean = 0.0;
    double half_width_95 = 0.0;  // 1.96 * sample_std / sqrt(trials); 0 when trials < 2
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

// Monte Carlo estimate of E[accepted value] under the threshold rule.
// Trial t runs on the substream split_seed(seed, t) and trials are summed
// in fixed blocks of 4096 (block partials combined in block order), so the
// report is bit-identical for any thread count, serial included.
MCReport estimate(const Instance& inst, const ThresholdSchedule& schedule,
                  std::uint64_t trials, std::uint64_t seed, Exec exec = Exec::parallel);

// Same estimator for the observe-then-commit rule of run_secretary.
MCReport estimate_secretary(const Instance& inst, std::uint64_t trials, std::uint64_t seed,
                            Exec exec = Exec::parallel);

}  // namespace stopping
