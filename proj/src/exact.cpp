#include "stopping/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include "stopping/errors.hpp"
#include "subset_levels.hpp"

namespace stopping {

namespace {

constexpr std::int64_t kChunk = 4096;

void check_threshold_inputs(const Instance& inst, const ThresholdSchedule& schedule,
                            const char* who) {
    validate(inst);
    if (inst.objective != Objective::maximize) {
        std::ostringstream os;
        os << who << ": maximize instances only";
        throw ValidationError(os.str());
    }
    if (schedule.size() != inst.n()) {
        std::ostringstream os;
        os << who << ": schedule has " << schedule.size() << " thresholds for " << inst.n()
           << " distributions";
        throw ValidationError(os.str());
    }
}

}  // namespace

ExactReport evaluate_exact(const Instance& inst, const ThresholdSchedule& schedule, Exec exec) {
    check_threshold_inputs(inst, schedule, "evaluate_exact");
    const int n = int(inst.n());
    if (n > kMaxExactN) {
        std::ostringstream os;
        os << "evaluate_exact: n = " << n << " exceeds the subset DP limit " << kMaxExactN;
        throw BudgetError(os.str());
    }

    // Step-major tables: below[(k-1)*n + i] = P[X_i < tau_k],
    // wtail[(k-1)*n + i] = E[X_i 1{X_i >= tau_k}], wtot[k-1] their sum.
    std::vector<double> below(std::size_t(n) * n, 0.0), wtail(std::size_t(n) * n, 0.0), wtot(std::size_t(n), 0.0);
    for (int k = 1; k <= n; ++k) {
        double tau = schedule.at(std::size_t(k));
        double tot = 0.0;
        for (int i = 0; i < n; ++i) {
            below[std::size_t(k - 1) * n + i] = below_prob(inst.distributions[std::size_t(i)], tau);
            double w = expected_above(inst.distributions[std::size_t(i)], tau);
            wtail[std::size_t(k - 1) * n + i] = w;
            tot += w;
        }
        wtot[std::size_t(k - 1)] = tot;
    }

    const auto lv = detail::subsets_by_popcount(n);
    std::vector<double> g(std::size_t(1) << n, 0.0);
    g[0] = 1.0;

    std::vector<double> theta_num(std::size_t(n) + 1, 0.0);
    std::vector<double> z_num(std::size_t(n) + 1, 0.0);
    std::vector<std::vector<double>> q_num(std::size_t(n), std::vector<double>(std::size_t(n), 0.0));
    z_num[1] = wtot[0];  // level-0 contribution: g(empty) * W(1)

    std::vector<double> tpart, zpart, hpart;
    for (int k = 1; k <= n; ++k) {
        const std::int64_t b = lv.offset[std::size_t(k)];
        const std::int64_t e = lv.offset[std::size_t(k) + 1];
        const std::int64_t nchunks = (e - b + kChunk - 1) / kChunk;
        tpart.assign(std::size_t(nchunks), 0.0);
        zpart.assign(std::size_t(nchunks), 0.0);
        hpart.assign(std::size_t(nchunks) * n, 0.0);
        const double* belowk = &below[std::size_t(k - 1) * n];
        const double* wnext = k < n ? &wtail[std::size_t(k) * n] : nullptr;
        const double wnext_tot = k < n ? wtot[std::size_t(k)] : 0.0;

        // Masks of one level only read g from the level below, and
        // schedule(static, kChunk) pins each 4096-mask chunk to a single
        // thread, so the per-chunk partials below are thread-count
        // independent and the serial combine keeps results bit-identical.
#pragma omp parallel for schedule(static, kChunk) if (exec == Exec::parallel)
        for (std::int64_t idx = b; idx < e; ++idx) {
            const std::uint32_t m = lv.masks[std::size_t(idx)];
            double acc = 0.0;
            for (std::uint32_t t = m; t; t &= t - 1) {
                const int i = std::countr_zero(t);
                acc += g[m ^ (std::uint32_t(1) << i)] * belowk[i];
            }
            g[m] = acc;

            const std::int64_t c = (idx - b) / kChunk;
            tpart[std::size_t(c)] += acc;
            double ws = 0.0;
            double* hp = &hpart[std::size_t(c) * n];
            for (std::uint32_t t = m; t; t &= t - 1) {
                const int i = std::countr_zero(t);
                hp[i] += acc;
                if (wnext) ws += wnext[i];
            }
            if (wnext) zpart[std::size_t(c)] += acc * (wnext_tot - ws);
        }

        double tot = 0.0;
        for (std::int64_t c = 0; c < nchunks; ++c) tot += tpart[std::size_t(c)];
        theta_num[std::size_t(k)] = tot;
        if (k < n) {
            double z = 0.0;
            for (std::int64_t c = 0; c < nchunks; ++c) z += zpart[std::size_t(c)];
            z_num[std::size_t(k) + 1] = z;
        }
        if (k <= n - 1) {
            for (int i = 0; i < n; ++i) {
                double h = 0.0;
                for (std::int64_t c = 0; c < nchunks; ++c) h += hpart[std::size_t(c) * n + i];
                q_num[std::size_t(i)][std::size_t(k - 1)] = tot - h;
            }
        }
    }

    // fall[k] = n (n-1) ... (n-k+1) = |ordered k-prefixes|;
    // fall1[k] is the same over n-1 elements.
    std::vector<double> fall(std::size_t(n) + 1, 1.0), fall1(std::size_t(n), 1.0);
    for (int k = 1; k <= n; ++k) fall[std::size_t(k)] = fall[std::size_t(k - 1)] * (n - k + 1);
    for (int k = 1; k <= n - 1; ++k) fall1[std::size_t(k)] = fall1[std::size_t(k - 1)] * (n - k);

    ExactReport r;
    r.pass.theta.resize(std::size_t(n));
    for (int k = 1; k <= n; ++k)
        r.pass.theta[std::size_t(k - 1)] = theta_num[std::size_t(k)] / fall[std::size_t(k)];
    r.pass.q_minus.assign(std::size_t(n), std::vector<double>(std::size_t(n - 1)));
    for (int i = 0; i < n; ++i)
        for (int k = 1; k <= n - 1; ++k)
            r.pass.q_minus[std::size_t(i)][std::size_t(k - 1)] =
                q_num[std::size_t(i)][std::size_t(k - 1)] / fall1[std::size_t(k)];
    r.per_step_value.resize(std::size_t(n));
    double alg = 0.0;
    for (int k = 1; k <= n; ++k) {
        r.per_step_value[std::size_t(k - 1)] = z_num[std::size_t(k)] / fall[std::size_t(k)];
        alg += r.per_step_value[std::size_t(k - 1)];
    }
    r.alg_value = alg;
    r.opt_value = expected_max(inst.distributions);
    r.ratio = r.alg_value / r.opt_value;
    return r;
}

ExactReport evaluate_bruteforce(const Instance& inst, const ThresholdSchedule& schedule) {
    check_threshold_inputs(inst, schedule, "evaluate_bruteforce");
    const int n = int(inst.n());

    double cost = 1.0;
    for (int k = 2; k <= n; ++k) cost *= k;
    for (const auto& d : inst.distributions) cost *= double(d.size());
    if (cost > 1e7) {
        std::ostringstream os;
        os << "evaluate_bruteforce: n! * prod |support| = " << cost << " exceeds 1e7";
        throw BudgetError(os.str());
    }

    const auto& taus = schedule.thresholds();
    std::vector<std::size_t> odo(std::size_t(n), 0);  // outcome tuple, one atom index each
    std::vector<double> x(std::size_t(n), 0.0);
    std::vector<int> perm(std::size_t(n), 0);

    double opt_acc = 0.0, alg_acc = 0.0;
    std::vector<double> per_step(std::size_t(n), 0.0), theta_acc(std::size_t(n) + 1, 0.0);
    std::vector<std::vector<double>> qj(std::size_t(n), std::vector<double>(std::size_t(n), 0.0));
    double wsum = 0.0;

    bool more = true;
    while (more) {
        double w = 1.0;
        double mx = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            const Atom& a = inst.distributions[std::size_t(i)].atoms()[odo[std::size_t(i)]];
            x[std::size_t(i)] = a.value;
            w *= a.prob;
            mx = std::max(mx, a.value);
        }
        wsum += w;
        opt_acc += w * mx;

        for (int i = 0; i < n; ++i) perm[std::size_t(i)] = i;
        do {
            for (int k = 0; k < n; ++k) {
                const int i = perm[std::size_t(k)];
                const double v = x[std::size_t(i)];
                if (v >= taus[std::size_t(k)]) {
                    alg_acc += w * v;
                    per_step[std::size_t(k)] += w * v;
                    break;
                }
                // Passed steps 1..k+1; record theta and the "distribution i
                // absent from the prefix" joint weights.
                theta_acc[std::size_t(k) + 1] += w;
                std::uint32_t seen = 0;
                for (int j = 0; j <= k; ++j) seen |= std::uint32_t(1) << perm[std::size_t(j)];
                for (int j = 0; j < n; ++j)
                    if (!(seen >> j & 1u)) qj[std::size_t(j)][std::size_t(k)] += w;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));

        more = false;
        for (int i = 0; i < n; ++i) {
            if (++odo[std::size_t(i)] < inst.distributions[std::size_t(i)].size()) {
                more = true;
                break;
            }
            odo[std::size_t(i)] = 0;
        }
    }

    double nfact = 1.0;
    for (int k = 2; k <= n; ++k) nfact *= k;

    ExactReport r;
    r.alg_value = alg_acc / nfact;      // outcome weights already sum to 1
    r.opt_value = opt_acc;
    r.ratio = r.alg_value / r.opt_value;
    r.per_step_value.resize(std::size_t(n));
    for (int k = 0; k < n; ++k) r.per_step_value[std::size_t(k)] = per_step[std::size_t(k)] / nfact;
    r.pass.theta.resize(std::size_t(n));
    for (int k = 1; k <= n; ++k)
        r.pass.theta[std::size_t(k - 1)] = theta_acc[std::size_t(k)] / nfact;
    r.pass.q_minus.assign(std::size_t(n), std::vector<double>(std::size_t(n - 1)));
    for (int i = 0; i < n; ++i)
        for (int k = 1; k <= n - 1; ++k) {
            // P[prefix passes and i absent] / P[i absent], the latter (n-k)/n.
            const double joint = qj[std::size_t(i)][std::size_t(k - 1)] / nfact;
            r.pass.q_minus[std::size_t(i)][std::size_t(k - 1)] = joint * n / (n - k);
        }
    return r;
}

double uniform_threshold_value(const Instance& inst, double threshold) {
    validate(inst);
    if (inst.objective != Objective::maximize)
        throw ValidationError("uniform_threshold_value: maximize instances only");
    const int n = int(inst.n());
    std::vector<double> p(std::size_t(n), 0.0), w(std::size_t(n), 0.0);
    for (int i = 0; i < n; ++i) {
        p[std::size_t(i)] = tail_prob(inst.distributions[std::size_t(i)], threshold);
        w[std::size_t(i)] = expected_above(inst.distributions[std::size_t(i)], threshold);
    }

    double total = 0.0;
    std::vector<double> pmf(std::size_t(n), 0.0);
    for (int i = 0; i < n; ++i) {
        if (w[std::size_t(i)] == 0.0 && p[std::size_t(i)] == 0.0) continue;
        std::fill(pmf.begin(), pmf.end(), 0.0);
        pmf[0] = 1.0;
        int len = 1;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double pj = p[std::size_t(j)];
            for (int c = len; c >= 1; --c)
                pmf[std::size_t(c)] = pmf[std::size_t(c)] * (1.0 - pj) + pmf[std::size_t(c - 1)] * pj;
            pmf[0] *= 1.0 - pj;
            ++len;
        }
        double einv = 0.0;
        for (int c = 0; c < len; ++c) einv += pmf[std::size_t(c)] / (1.0 + c);
        total += w[std::size_t(i)] * einv;
    }
    return total;
}

std::vector<double> default_threshold_candidates(const Instance& inst) {
    validate(inst);
    std::vector<double> vals;
    for (const auto& d : inst.distributions)
        for (const Atom& a : d.atoms()) vals.push_back(a.value);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    std::vector<double> out;
    out.reserve(vals.size() * 2);
    for (std::size_t j = 0; j < vals.size(); ++j) {
        out.push_back(vals[j]);
        if (j + 1 < vals.size()) out.push_back(0.5 * (vals[j] + vals[j + 1]));
    }
    return out;
}

SweepResult sweep_single_threshold(const Instance& inst, const std::vector<double>& candidates) {
    validate(inst);
    if (inst.objective != Objective::maximize)
        throw ValidationError("sweep_single_threshold: maximize instances only");
    if (candidates.empty()) throw ValidationError("sweep_single_threshold: no candidates");

    std::vector<double> cs = candidates;
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());

    const int n = int(inst.n());
    const double opt = expected_max(inst.distributions);

    SweepResult res;
    res.best_ratio = -std::numeric_limits<double>::infinity();
    res.points.reserve(cs.size());
    for (double t : cs) {
        const double v = n <= kMaxExactN
                             ? evaluate_exact(inst, uniform_schedule(n, t)).alg_value
                             : uniform_threshold_value(inst, t);
        const double ratio = v / opt;
        res.points.push_back({t, v, ratio});
        if (ratio > res.best_ratio) {  // strict: ties keep the smaller threshold
            res.best_ratio = ratio;
            res.best_threshold = t;
        }
    }
    return res;
}

}  // namespace stopping
