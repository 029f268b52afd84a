#include <chrono>
#include <iomanip>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "stopping/adaptive.hpp"
#include "stopping/checks.hpp"
#include "stopping/exact.hpp"
#include "stopping/montecarlo.hpp"
#include "stopping/rng.hpp"

namespace {

using namespace stopping;

template <typename F>
double timed(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool reports_identical(const ExactReport& a, const ExactReport& b) {
    if (a.alg_value != b.alg_value || a.opt_value != b.opt_value || a.ratio != b.ratio)
        return false;
    if (a.per_step_value != b.per_step_value) return false;
    if (a.pass.theta != b.pass.theta) return false;
    if (a.pass.q_minus != b.pass.q_minus) return false;
    return true;
}

void print_row(const std::string& kernel, double ts, double tp, bool identical) {
    std::cout << "  " << std::left << std::setw(26) << kernel << std::right << std::fixed
              << std::setprecision(3) << std::setw(9) << ts << "s " << std::setw(9) << tp << "s "
              << std::setprecision(2) << std::setw(7) << (tp > 0 ? ts / tp : 0.0) << "x   "
              << (identical ? "bit-identical" : "MISMATCH") << '\n';
    std::cout.unsetf(std::ios::fixed);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::cout << "OpenMP threads: " << omp_get_max_threads() << '\n';
#else
    std::cout << "OpenMP: not enabled in this build\n";
#endif
    std::cout << "  kernel                        serial  parallel speedup   result check\n";

    bool all_identical = true;
    Rng rng(424241);
    const Instance inst = random_instance(rng, 20, 3, 8.0);
    const ThresholdSchedule sched = alpha_schedule(20, expected_max(inst.distributions));

    {
        ExactReport rs, rp;
        const double ts = timed([&] { rs = evaluate_exact(inst, sched, Exec::serial); });
        const double tp = timed([&] { rp = evaluate_exact(inst, sched, Exec::parallel); });
        const bool same = reports_identical(rs, rp);
        all_identical = all_identical && same;
        print_row("exact subset DP (n=20)", ts, tp, same);
    }
    {
        PolicyValue vs, vp;
        const double ts = timed([&] { vs = optimal_online_max(inst, ArrivalOrder::random,
                                                              Exec::serial); });
        const double tp = timed([&] { vp = optimal_online_max(inst, ArrivalOrder::random,
                                                              Exec::parallel); });
        const bool same = vs.value == vp.value && vs.state_count == vp.state_count;
        all_identical = all_identical && same;
        print_row("adaptive benchmark (n=20)", ts, tp, same);
    }
    {
        MCReport ms, mp;
        const std::uint64_t trials = 2000000;
        const double ts = timed([&] { ms = estimate(inst, sched, trials, 7, Exec::serial); });
        const double tp = timed([&] { mp = estimate(inst, sched, trials, 7, Exec::parallel); });
        const bool same = ms.mean == mp.mean && ms.half_width_95 == mp.half_width_95;
        all_identical = all_identical && same;
        print_row("monte carlo (2e6 trials)", ts, tp, same);
    }

    if (!all_identical) {
        std::cerr << "serial and parallel kernels disagree\n";
        return 1;
    }
    return 0;
}
