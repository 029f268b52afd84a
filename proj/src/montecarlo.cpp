#include "stopping/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <vector>

#include "engine_detail.hpp"
#include "stopping/errors.hpp"
#include "stopping/rng.hpp"

namespace stopping {

namespace {

constexpr std::int64_t kBlock = 4096;

template <typename Episode>
MCReport run_blocks(std::uint64_t trials, std::uint64_t seed, Exec exec, Episode episode) {
    if (trials < 1) throw ValidationError("monte carlo: trials must be >= 1");
    const std::int64_t T = std::int64_t(trials);
    const std::int64_t nblocks = (T + kBlock - 1) / kBlock;
    std::vector<double> bsum(std::size_t(nblocks), 0.0), bsq(std::size_t(nblocks), 0.0);

    // One block per iteration, each trial on its own substream, so the
    // per-block partials never depend on the thread count.
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (std::int64_t b = 0; b < nblocks; ++b) {
        std::vector<double> draws;
        std::vector<int> perm;
        std::optional<int> stop;
        double s = 0.0, q = 0.0;
        const std::int64_t hi = std::min(T, (b + 1) * kBlock);
        for (std::int64_t t = b * kBlock; t < hi; ++t) {
            Rng rng(split_seed(seed, std::uint64_t(t)));
            const double v = episode(rng, draws, perm, stop);
            s += v;
            q += v * v;
        }
        bsum[std::size_t(b)] = s;
        bsq[std::size_t(b)] = q;
    }

    double S = 0.0, Q = 0.0;
    for (std::int64_t b = 0; b < nblocks; ++b) {
        S += bsum[std::size_t(b)];
        Q += bsq[std::size_t(b)];
    }

    MCReport r;
    r.trials = trials;
    r.seed = seed;
    r.mean = S / double(T);
    if (T > 1) {
        const double var = std::max(0.0, (Q - double(T) * r.mean * r.mean) / double(T - 1));
        r.half_width_95 = 1.96 * std::sqrt(var / double(T));
    }
    return r;
}

}  // namespace

MCReport estimate(const Instance& inst, const ThresholdSchedule& schedule, std::uint64_t trials,
                  std::uint64_t seed, Exec exec) {
    validate(inst);
    if (inst.objective != Objective::maximize)
        throw ValidationError("estimate: the threshold rule maximizes; evaluate minimize "
                              "instances through the adaptive benchmark policies");
    if (schedule.size() != inst.n()) {
        std::ostringstream os;
        os << "estimate: schedule has " << schedule.size() << " thresholds for " << inst.n()
           << " distributions";
        throw ValidationError(os.str());
    }
    const auto& taus = schedule.thresholds();
    return run_blocks(trials, seed, exec,
                      [&](Rng& rng, std::vector<double>& draws, std::vector<int>& perm,
                          std::optional<int>& stop) {
                          return detail::threshold_episode(inst, taus, rng, draws, perm, stop);
                      });
}

MCReport estimate_secretary(const Instance& inst, std::uint64_t trials, std::uint64_t seed,
                            Exec exec) {
    validate(inst);
    if (inst.objective != Objective::maximize)
        throw ValidationError("estimate_secretary: maximize instances only");
    if (inst.n() < 2)
        throw ValidationError("estimate_secretary: needs at least 2 distributions");
    return run_blocks(trials, seed, exec,
                      [&](Rng& rng, std::vector<double>& draws, std::vector<int>& perm,
                          std::optional<int>& stop) {
                          return detail::secretary_episode(inst, rng, draws, perm, stop);
                      });
}

}  // namespace stopping
