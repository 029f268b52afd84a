#include "stopping/adaptive.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <vector>

#include "stopping/distribution.hpp"
#include "stopping/errors.hpp"
#include "subset_levels.hpp"

namespace stopping {

namespace {

constexpr int kMaxSubsetN = 20;

double e_max_with(const DiscreteDistribution& d, double floor_v) {
    double acc = 0.0;
    for (const Atom& a : d.atoms()) acc += a.prob * std::max(a.value, floor_v);
    return acc;
}

double e_min_with(const DiscreteDistribution& d, double cap) {
    double acc = 0.0;
    for (const Atom& a : d.atoms()) acc += a.prob * std::min(a.value, cap);
    return acc;
}

void require_objective(const Instance& inst, Objective want, const char* who) {
    validate(inst);
    if (inst.objective != want) {
        std::ostringstream os;
        os << who << ": " << (want == Objective::maximize ? "maximize" : "minimize")
           << " instances only";
        throw ValidationError(os.str());
    }
}

void check_subset_budget(int n, const char* who) {
    if (n > kMaxSubsetN) {
        std::ostringstream os;
        os << who << ": n = " << n << " exceeds the subset DP limit " << kMaxSubsetN;
        throw BudgetError(os.str());
    }
}

}  // namespace

PolicyValue optimal_online_max(const Instance& inst, ArrivalOrder order, Exec exec) {
    require_objective(inst, Objective::maximize, "optimal_online_max");
    const int n = int(inst.n());

    if (order == ArrivalOrder::fixed) {
        double v = 0.0;
        for (int k = n - 1; k >= 0; --k) v = e_max_with(inst.distributions[std::size_t(k)], v);
        return {v, std::uint64_t(n) + 1};
    }

    check_subset_budget(n, "optimal_online_max");
    const auto lv = detail::subsets_by_popcount(n);
    std::vector<double> V(std::size_t(1) << n, 0.0);
    for (int k = 1; k <= n; ++k) {
        const std::int64_t b = lv.offset[std::size_t(k)];
        const std::int64_t e = lv.offset[std::size_t(k) + 1];
        // Each V[m] only reads the level below and is written by one
        // iteration, so the parallel loop is deterministic as-is.
#pragma omp parallel for schedule(static, 4096) if (exec == Exec::parallel)
        for (std::int64_t idx = b; idx < e; ++idx) {
            const std::uint32_t m = lv.masks[std::size_t(idx)];
            double acc = 0.0;
            for (std::uint32_t t = m; t; t &= t - 1) {
                const int i = std::countr_zero(t);
                acc += e_max_with(inst.distributions[std::size_t(i)],
                                  V[m ^ (std::uint32_t(1) << i)]);
            }
            V[m] = acc / k;
        }
    }
    return {V[(std::size_t(1) << n) - 1], std::uint64_t(1) << n};
}

PolicyValue optimal_online_min(const Instance& inst, ArrivalOrder order, Exec exec) {
    require_objective(inst, Objective::minimize, "optimal_online_min");
    const int n = int(inst.n());

    if (order == ArrivalOrder::fixed) {
        double v = mean(inst.distributions[std::size_t(n) - 1]);
        for (int k = n - 2; k >= 0; --k) v = e_min_with(inst.distributions[std::size_t(k)], v);
        return {v, std::uint64_t(n)};
    }

    check_subset_budget(n, "optimal_online_min");
    const auto lv = detail::subsets_by_popcount(n);
    std::vector<double> V(std::size_t(1) << n, 0.0);
    for (int i = 0; i < n; ++i)
        V[std::size_t(1) << i] = mean(inst.distributions[std::size_t(i)]);
    for (int k = 2; k <= n; ++k) {
        const std::int64_t b = lv.offset[std::size_t(k)];
        const std::int64_t e = lv.offset[std::size_t(k) + 1];
#pragma omp parallel for schedule(static, 4096) if (exec == Exec::parallel)
        for (std::int64_t idx = b; idx < e; ++idx) {
            const std::uint32_t m = lv.masks[std::size_t(idx)];
            double acc = 0.0;
            for (std::uint32_t t = m; t; t &= t - 1) {
                const int i = std::countr_zero(t);
                acc += e_min_with(inst.distributions[std::size_t(i)],
                                  V[m ^ (std::uint32_t(1) << i)]);
            }
            V[m] = acc / k;
        }
    }
    return {V[(std::size_t(1) << n) - 1], (std::uint64_t(1) << n) - 1};
}

PolicyValue iid_optimal_online_min(const DiscreteDistribution& d, int n) {
    if (n < 1) {
        std::ostringstream os;
        os << "iid_optimal_online_min: n = " << n << " must be >= 1";
        throw ValidationError(os.str());
    }
    double v = mean(d);
    for (int m = 2; m <= n; ++m) v = e_min_with(d, v);
    return {v, std::uint64_t(n)};
}

PolicyValue optimal_online_min_one_exchange(const Instance& inst, ArrivalOrder order) {
    require_objective(inst, Objective::minimize, "optimal_online_min_one_exchange");
    const int n = int(inst.n());

    // The held value is an index into the table of distinct support values;
    // H stands for holding nothing.
    std::vector<double> vals;
    for (const auto& d : inst.distributions)
        for (const Atom& a : d.atoms()) vals.push_back(a.value);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    const int H = int(vals.size());
    const auto vidx = [&](double v) {
        return int(std::lower_bound(vals.begin(), vals.end(), v) - vals.begin());
    };
    constexpr double inf = std::numeric_limits<double>::infinity();
    const std::size_t slab = std::size_t(H + 1) * 2;  // (held, used) pairs

    if (order == ArrivalOrder::fixed) {
        std::vector<double> next(slab, 0.0), cur(slab, 0.0);
        const auto at = [slab](std::vector<double>& s, int h, int u) -> double& {
            return s[std::size_t(h) * 2 + std::size_t(u)];
        };
        // After the last arrival the payout is the held value; holding
        // nothing is not allowed to survive to the end.
        for (int h = 0; h < H; ++h) at(next, h, 0) = at(next, h, 1) = vals[std::size_t(h)];
        at(next, H, 0) = at(next, H, 1) = inf;
        for (int pos = n - 1; pos >= 0; --pos) {
            const bool last = pos == n - 1;
            for (int h = 0; h <= H; ++h) {
                for (int u = 0; u <= 1; ++u) {
                    double acc = 0.0;
                    for (const Atom& a : inst.distributions[std::size_t(pos)].atoms()) {
                        const int xi = vidx(a.value);
                        double best;
                        if (h == H) {
                            best = at(next, xi, u);                             // take
                            if (!last) best = std::min(best, at(next, H, u));   // pass
                        } else {
                            best = at(next, h, u);                              // keep
                            if (u == 0) best = std::min(best, at(next, xi, 1)); // exchange
                        }
                        acc += a.prob * best;
                    }
                    at(cur, h, u) = acc;
                }
            }
            std::swap(next, cur);
        }
        return {at(next, H, 0), std::uint64_t(n + 1) * std::uint64_t(H + 1) * 2};
    }

    const double states = std::ldexp(double(slab), n);
    if (n > 12 || states > 2e7) {
        std::ostringstream os;
        os << "optimal_online_min_one_exchange: 2^n * (distinct values + 1) * 2 = " << states
           << " states (n = " << n << ") exceeds the budget (n <= 12, states <= 2e7)";
        throw BudgetError(os.str());
    }

    std::vector<double> W((std::size_t(1) << n) * slab, 0.0);
    const auto wat = [&W, slab](std::uint32_t m, int h, int u) -> double& {
        return W[std::size_t(m) * slab + std::size_t(h) * 2 + std::size_t(u)];
    };
    for (int h = 0; h < H; ++h) wat(0, h, 0) = wat(0, h, 1) = vals[std::size_t(h)];
    wat(0, H, 0) = wat(0, H, 1) = inf;
    const std::uint32_t full = (std::uint32_t(1) << n) - 1;
    // Every submask is numerically smaller, so ascending mask order visits
    // states after all their successors.
    for (std::uint32_t m = 1; m <= full; ++m) {
        const int k = std::popcount(m);
        for (int h = 0; h <= H; ++h) {
            for (int u = 0; u <= 1; ++u) {
                double acc = 0.0;
                for (std::uint32_t t = m; t; t &= t - 1) {
                    const int i = std::countr_zero(t);
                    const std::uint32_t sub = m ^ (std::uint32_t(1) << i);
                    const bool last = sub == 0;
                    double e = 0.0;
                    for (const Atom& a : inst.distributions[std::size_t(i)].atoms()) {
                        const int xi = vidx(a.value);
                        double best;
                        if (h == H) {
                            best = wat(sub, xi, u);
                            if (!last) best = std::min(best, wat(sub, H, u));
                        } else {
                            best = wat(sub, h, u);
                            if (u == 0) best = std::min(best, wat(sub, xi, 1));
                        }
                        e += a.prob * best;
                    }
                    acc += e;
                }
                wat(m, h, u) = acc / k;
            }
        }
    }
    return {wat(full, H, 0), (std::uint64_t(1) << n) * std::uint64_t(slab)};
}

}  // namespace stopping
