#include "stopping/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <vector>

#include "stopping/adaptive.hpp"
#include "stopping/errors.hpp"
#include "stopping/exact.hpp"
#include "stopping/instances.hpp"
#include "stopping/montecarlo.hpp"

namespace stopping {

Instance random_instance(Rng& rng, int n, int max_support, double vmax) {
    if (n < 1 || max_support < 1 || !(vmax > 0.0))
        throw ValidationError("random_instance: need n >= 1, max_support >= 1, vmax > 0");
    Instance inst;
    inst.objective = Objective::maximize;
    inst.name = "random";
    for (int i = 0; i < n; ++i) {
        const int s = 1 + int(rng.next_below(std::uint64_t(max_support)));
        std::map<double, double> acc;  // quarter-step grid, collisions merged
        for (int j = 0; j < s; ++j) {
            const double v = std::floor(rng.next_double() * vmax * 4.0) / 4.0;
            acc[v] += 0.05 + rng.next_double();
        }
        double total = 0.0;
        for (const auto& [v, w] : acc) total += w;
        std::vector<Atom> atoms;
        atoms.reserve(acc.size());
        for (const auto& [v, w] : acc) atoms.push_back({v, w / total});
        inst.distributions.emplace_back(std::move(atoms));
    }
    if (expected_max(inst.distributions) <= 0.0)
        inst.distributions[0] = DiscreteDistribution({{1.0, 1.0}});
    return inst;
}

ThresholdSchedule random_nonincreasing_schedule(Rng& rng, const Instance& inst, double vmax) {
    validate(inst);
    std::vector<double> support;
    for (const auto& d : inst.distributions)
        for (const Atom& a : d.atoms()) support.push_back(a.value);
    std::vector<double> taus(inst.n());
    for (double& t : taus) {
        if (!support.empty() && rng.next_double() < 0.3)
            t = support[std::size_t(rng.next_below(support.size()))];
        else
            t = rng.next_double() * vmax * 1.05;
    }
    std::sort(taus.begin(), taus.end(), std::greater<double>());
    return ThresholdSchedule(std::move(taus));
}

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

std::string fmt(double x, int prec = 3) {
    std::ostringstream os;
    os << std::setprecision(prec) << x;
    return os.str();
}

// 1. Factor table: recurrence vs independent sum, plus the 1 - 1/e limit.
bool crit_threshold_factors(Exec, std::ostringstream& d) {
    const auto a2 = alpha_factors(2);
    const double e2 =
        std::max(std::abs(a2[0] - 5.0 / 9.0), std::abs(a2[1] - 1.0 / 3.0));
    double worst = 0.0;
    const auto check_n = [&worst](int n) {
        const auto a = alpha_factors(n);
        for (int k = 1; k <= n; ++k)
            worst = std::max(worst, std::abs(a[std::size_t(k - 1)] - alpha_closed_form(n, k)));
    };
    for (int n = 1; n <= 100; ++n) check_n(n);
    check_n(1000);
    check_n(10000);
    const double gap = std::abs(alpha_factors(10000)[0] - (1.0 - std::exp(-1.0)));
    d << "alpha(2) err " << fmt(e2) << " (tol 1e-12), recurrence vs sum err " << fmt(worst)
      << " (tol 1e-10), alpha1(1e4) gap to 1-1/e " << fmt(gap) << " (tol 1e-4)";
    return e2 <= 1e-12 && worst <= 1e-10 && gap <= 1e-4;
}

double report_gap(const ExactReport& a, const ExactReport& b) {
    double w = std::abs(a.alg_value - b.alg_value);
    w = std::max(w, std::abs(a.opt_value - b.opt_value));
    w = std::max(w, std::abs(a.ratio - b.ratio));
    for (std::size_t k = 0; k < a.pass.theta.size(); ++k)
        w = std::max(w, std::abs(a.pass.theta[k] - b.pass.theta[k]));
    for (std::size_t k = 0; k < a.per_step_value.size(); ++k)
        w = std::max(w, std::abs(a.per_step_value[k] - b.per_step_value[k]));
    for (std::size_t i = 0; i < a.pass.q_minus.size(); ++i)
        for (std::size_t k = 0; k < a.pass.q_minus[i].size(); ++k)
            w = std::max(w, std::abs(a.pass.q_minus[i][k] - b.pass.q_minus[i][k]));
    return w;
}

// 2. Subset DP against full permutation-times-outcome enumeration.
bool crit_oracle_equivalence(Exec exec, std::ostringstream& d) {
    Rng rng(91181);
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + int(rng.next_below(5));
        const Instance inst = random_instance(rng, n, 3, 8.0);
        const ThresholdSchedule sched = random_nonincreasing_schedule(rng, inst, 8.0);
        worst = std::max(worst, report_gap(evaluate_exact(inst, sched, exec),
                                           evaluate_bruteforce(inst, sched)));
    }
    d << "200 instances, max report field gap " << fmt(worst) << " (tol 1e-9)";
    return worst <= 1e-9;
}

// 3. Pass-probability dominance theta(k+1) <= q_minus_i(k) for
// non-increasing schedules.
bool crit_dominance(Exec exec, std::ostringstream& d) {
    Rng rng(7151623);
    double worst = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < 1000; ++t) {
        const int n = 2 + int(rng.next_below(7));
        const Instance inst = random_instance(rng, n, 3, 8.0);
        const ThresholdSchedule sched = random_nonincreasing_schedule(rng, inst, 8.0);
        const ExactReport r = evaluate_exact(inst, sched, exec);
        for (int k = 1; k <= n - 1; ++k)
            for (int i = 0; i < n; ++i)
                worst = std::max(worst, r.pass.theta[std::size_t(k)] -
                                            r.pass.q_minus[std::size_t(i)][std::size_t(k - 1)]);
    }
    d << "1000 instances, max theta(k+1) - q_minus(k) = " << fmt(worst) << " (tol 1e-12)";
    return worst <= 1e-12;
}

// 4. The factor schedule's ratio never drops below alpha_1(n) on the
// battery.
bool crit_schedule_guarantee(Exec exec, std::ostringstream& d) {
    std::vector<Instance> battery;
    for (double e : {0.5, 0.1, 0.01}) battery.push_back(gen_prophet_hard(e));
    for (double e : {0.1, 0.01, 0.001}) battery.push_back(gen_075_hard(e));
    for (int n = 2; n <= 7; ++n) battery.push_back(gen_one_threshold_hard(n));

    double worst = std::numeric_limits<double>::infinity();
    int count = 0;
    const auto run_one = [&](const Instance& inst) {
        const int n = int(inst.n());
        const double opt = expected_max(inst.distributions);
        const ExactReport r = evaluate_exact(inst, alpha_schedule(n, opt), exec);
        worst = std::min(worst, r.ratio - alpha_factors(n)[0]);
        ++count;
    };
    for (const Instance& inst : battery) run_one(inst);
    Rng rng(811001);
    for (int t = 0; t < 500; ++t)
        run_one(random_instance(rng, 1 + int(rng.next_below(8)), 3, 8.0));
    d << count << " instances, min(ratio - alpha1(n)) = " << fmt(worst) << " (tol -1e-9)";
    return worst >= -1e-9;
}

// 5. Best single uniform threshold on the hard family vs the stated
// 0.5 + 1/(2n) ceiling.
bool crit_single_threshold(Exec, std::ostringstream& d) {
    bool ok = true;
    const char* sep = "";
    for (int n : {4, 10, 50}) {
        const Instance inst = gen_one_threshold_hard(n);
        const double opt = expected_max(inst.distributions);
        const SweepResult sweep =
            sweep_single_threshold(inst, default_threshold_candidates(inst));
        const double bound = 0.5 + 1.0 / (2.0 * n);
        ok = ok && std::abs(opt - 2.0) <= 1e-12 && sweep.best_ratio <= bound + 1e-9;
        d << sep << "n=" << n << " best ratio " << fmt(sweep.best_ratio, 6) << " vs bound "
          << fmt(bound, 6);
        sep = "; ";
    }
    return ok;
}

// 6. Fully adaptive benchmark lands in [0.75, 0.75 + eps] and matches the
// closed form (1.5 - eps/2)/(2 - eps).
bool crit_adaptive_bound(Exec exec, std::ostringstream& d) {
    bool ok = true;
    const char* sep = "";
    for (double eps : {0.1, 0.01, 0.001}) {
        const Instance inst = gen_075_hard(eps);
        const double v = optimal_online_max(inst, ArrivalOrder::random, exec).value;
        const double opt = expected_max(inst.distributions);
        const double ratio = v / opt;
        const double closed = (1.5 - eps / 2.0) / (2.0 - eps);
        ok = ok && ratio >= 0.75 - 1e-12 && ratio <= 0.75 + eps + 1e-12 &&
             std::abs(ratio - closed) <= 1e-9;
        d << sep << "eps=" << eps << " ratio " << fmt(ratio, 8);
        sep = "; ";
    }
    d << " (band [0.75, 0.75+eps], closed form tol 1e-9)";
    return ok;
}

// 7. Two thresholds already beat the single-threshold 1/2 barrier: exact
// ratio >= 5/9 on the n = 2 hard instance.
bool crit_two_threshold(Exec exec, std::ostringstream& d) {
    const Instance inst = gen_075_hard(0.01);
    const double opt = expected_max(inst.distributions);
    const ExactReport r = evaluate_exact(inst, alpha_schedule(2, opt), exec);
    d << "ratio " << fmt(r.ratio, 10) << " vs 5/9 = " << fmt(5.0 / 9.0, 10) << " (tol 1e-9)";
    return r.ratio >= 5.0 / 9.0 - 1e-9 && r.ratio > 0.5;
}

// 8. Minimization with i.i.d. draws: the best online policy pays at least
// (1.11)^n / 6 times the expected minimum.
bool crit_min_iid(Exec, std::ostringstream& d) {
    double worst_rel = std::numeric_limits<double>::infinity();
    double ratio30 = 0.0, floor30 = 0.0;
    for (int n = 5; n <= 30; ++n) {
        const Instance inst = gen_min_iid_hard(n);
        const double v = iid_optimal_online_min(inst.distributions[0], n).value;
        const double emin = expected_min(inst.distributions);
        const double ratio = v / emin;
        const double floor_n = std::pow(1.11, n) / 6.0;
        worst_rel = std::min(worst_rel, ratio / floor_n);
        if (n == 30) {
            ratio30 = ratio;
            floor30 = floor_n;
        }
    }
    d << "min ratio/((1.11)^n/6) over n=5..30 = " << fmt(worst_rel, 6) << "; n=30 ratio "
      << fmt(ratio30, 6) << " vs floor " << fmt(floor30, 6);
    return worst_rel >= 1.0 && ratio30 >= floor30;
}

// 9. One allowed exchange still pays >= eps under the listed order and
// >= eps/6 under random order, against an expected minimum of 2 eps^2.
bool crit_min_exchange(Exec, std::ostringstream& d) {
    bool ok = true;
    const char* sep = "";
    for (double eps : {0.1, 0.02}) {
        const Instance inst = gen_min_exchange_hard(eps);
        const double emin = expected_min(inst.distributions);
        const double fx = optimal_online_min_one_exchange(inst, ArrivalOrder::fixed).value;
        const double rv = optimal_online_min_one_exchange(inst, ArrivalOrder::random).value;
        const double ratio_fixed = fx / emin;
        const double ratio_rand = rv / emin;
        ok = ok && fx >= eps - 1e-9 && ratio_fixed >= 1.0 / (2.0 * eps) - 1e-9 &&
             ratio_rand >= 1.0 / (12.0 * eps) - 1e-9;
        d << sep << "eps=" << eps << " fixed value " << fmt(fx, 6) << " (>= eps), random ratio "
          << fmt(ratio_rand, 6) << " (>= " << fmt(1.0 / (12.0 * eps), 6) << ")";
        sep = "; ";
    }
    return ok;
}

// 10. 95% interval coverage of the exact value across seeded repetitions.
bool crit_mc_calibration(Exec exec, std::ostringstream& d) {
    struct Case {
        const char* label;
        Instance inst;
        ThresholdSchedule sched;
    };
    std::vector<Case> cases;
    {
        Instance a = gen_prophet_hard(0.5);
        ThresholdSchedule sa = uniform_schedule(2, 0.75);
        cases.push_back({"uniform", std::move(a), std::move(sa)});
        Instance b = gen_075_hard(0.2);
        ThresholdSchedule sb = alpha_schedule(2, expected_max(b.distributions));
        cases.push_back({"factors-n2", std::move(b), std::move(sb)});
        Instance c = gen_one_threshold_hard(4);
        ThresholdSchedule sc = alpha_schedule(5, 2.0);
        cases.push_back({"factors-n5", std::move(c), std::move(sc)});
    }
    bool ok = true;
    const char* sep = "";
    for (const Case& cs : cases) {
        const double exact = evaluate_exact(cs.inst, cs.sched, exec).alg_value;
        int hits = 0;
        for (int rep = 0; rep < 100; ++rep) {
            const MCReport mc =
                estimate(cs.inst, cs.sched, 100000, 1000 + std::uint64_t(rep), exec);
            if (std::abs(mc.mean - exact) <= mc.half_width_95) ++hits;
        }
        ok = ok && hits >= 90;
        d << sep << cs.label << " " << hits << "/100";
        sep = "; ";
    }
    d << " (need >= 90 each)";
    return ok;
}

struct CriterionMeta {
    const char* name;
    double limit_seconds;
    bool (*run)(Exec, std::ostringstream&);
};

constexpr CriterionMeta kCriteria[kNumCriteria] = {
    {"threshold-factors", 1.0, crit_threshold_factors},
    {"oracle-equivalence", 30.0, crit_oracle_equivalence},
    {"pass-probability-dominance", 60.0, crit_dominance},
    {"schedule-guarantee", 60.0, crit_schedule_guarantee},
    {"single-threshold-bound", 10.0, crit_single_threshold},
    {"adaptive-benchmark-bound", 1.0, crit_adaptive_bound},
    {"two-threshold-barrier", 1.0, crit_two_threshold},
    {"min-iid-hardness", 1.0, crit_min_iid},
    {"min-exchange-hardness", 5.0, crit_min_exchange},
    {"mc-calibration", 120.0, crit_mc_calibration},
};

constexpr Claim kClaims[] = {
    {"thm1-alphas", 1},   {"prop2-check", 3},  {"thm3-single-threshold", 5},
    {"thm2-075", 6},      {"two-threshold-59", 7}, {"thm4-min-iid", 8},
    {"thm5-exchange", 9},
};

}  // namespace

CheckResult run_criterion(int criterion, Exec exec) {
    if (criterion < 1 || criterion > kNumCriteria) {
        std::ostringstream os;
        os << "criterion " << criterion << " out of range 1.." << kNumCriteria;
        throw ValidationError(os.str());
    }
    const CriterionMeta& meta = kCriteria[criterion - 1];
    CheckResult r;
    r.criterion = criterion;
    r.name = meta.name;
    std::ostringstream d;
    Timer tm;
    bool ok = meta.run(exec, d);
    r.seconds = tm.seconds();
    if (!(r.seconds < meta.limit_seconds)) {
        ok = false;
        d << "; over the time limit";
    }
    d << "; t=" << fmt(r.seconds, 3) << "s (limit " << fmt(meta.limit_seconds, 3) << "s)";
    r.pass = ok;
    r.detail = d.str();
    return r;
}

std::span<const Claim> claims() { return kClaims; }

CheckResult run_claim(std::string_view claim_id, Exec exec) {
    for (const Claim& c : kClaims)
        if (claim_id == c.id) return run_criterion(c.criterion, exec);
    std::ostringstream os;
    os << "unknown claim id '" << claim_id << "'; valid ids:";
    for (const Claim& c : kClaims) os << ' ' << c.id;
    throw ValidationError(os.str());
}

}  // namespace stopping
