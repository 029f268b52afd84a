#include "stopping/engine.hpp"

#include <limits>
#include <numeric>
#include <sstream>

#include "engine_detail.hpp"
#include "stopping/errors.hpp"
#include "stopping/rng.hpp"

namespace stopping {

namespace detail {

double threshold_episode(const Instance& inst, const std::vector<double>& taus, Rng& rng,
                         std::vector<double>& draws, std::vector<int>& perm,
                         std::optional<int>& stop) {
    const std::size_t n = inst.n();
    draws.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        draws[i] = inst.distributions[i].sample(rng.next_double());
    perm.resize(n);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    stop.reset();
    for (std::size_t k = 0; k < n; ++k) {
        double x = draws[std::size_t(perm[k])];
        if (x >= taus[k]) {
            stop = int(k) + 1;
            return x;
        }
    }
    return 0.0;
}

double secretary_episode(const Instance& inst, Rng& rng, std::vector<double>& draws,
                         std::vector<int>& perm, std::optional<int>& stop) {
    const std::size_t n = inst.n();
    draws.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        draws[i] = inst.distributions[i].sample(rng.next_double());
    perm.resize(n);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    stop.reset();
    const std::size_t m = std::size_t(secretary_prefix_length(int(n)));
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < m; ++k)
        best = std::max(best, draws[std::size_t(perm[k])]);
    for (std::size_t k = m; k < n; ++k) {
        double x = draws[std::size_t(perm[k])];
        if (x > best) {
            stop = int(k) + 1;
            return x;
        }
    }
    return 0.0;
}

}  // namespace detail

RunOutcome run_once(const Instance& inst, const ThresholdSchedule& schedule,
                    std::uint64_t seed) {
    validate(inst);
    if (inst.objective != Objective::maximize)
        throw ValidationError(
            "run_once: the threshold rule maximizes; evaluate minimize instances through the "
            "adaptive benchmark policies");
    if (schedule.size() != inst.n()) {
        std::ostringstream os;
        os << "run_once: schedule has " << schedule.size() << " thresholds for " << inst.n()
           << " distributions";
        throw ValidationError(os.str());
    }
    RunOutcome out;
    Rng rng(seed);
    out.chosen_value = detail::threshold_episode(inst, schedule.thresholds(), rng,
                                                 out.drawn_values, out.permutation, out.stop_step);
    return out;
}

RunOutcome run_secretary(const Instance& inst, std::uint64_t seed) {
    validate(inst);
    if (inst.objective != Objective::maximize)
        throw ValidationError("run_secretary: maximize instances only");
    if (inst.n() < 2) throw ValidationError("run_secretary: needs n >= 2");
    RunOutcome out;
    Rng rng(seed);
    out.chosen_value = detail::secretary_episode(inst, rng, out.drawn_values, out.permutation,
                                                 out.stop_step);
    return out;
}

}  // namespace stopping
