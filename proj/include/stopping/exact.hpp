#pragma once

#include <cstdint>
#include <vector>

#include "stopping/exec.hpp"
#include "stopping/instance.hpp"
#include "stopping/schedule.hpp"

namespace stopping {

// theta[k-1] = P[no step among the first k accepts], k = 1..n.
// q_minus[i][k-1] = P[no step among the first k accepts | none of the first
// k arrivals is distribution i], k = 1..n-1. For a non-increasing schedule,
// theta(k+1) <= q_minus(i)(k) for every i.
struct PassProbabilities {
    std::vector<double> theta;
    std::vector<std::vector<double>> q_minus;
};

struct ExactReport {
    double alg_value = 0.0;  // E[accepted value], 0 counted when none accepted
    double opt_value = 0.0;  // E[max X_i]
    double ratio = 0.0;      // alg_value / opt_value
    PassProbabilities pass;
    std::vector<double> per_step_value;  // E[value accepted exactly at step k]
};

inline constexpr int kMaxExactN = 20;

// Exact evaluation of a threshold rule under a uniformly random arrival
// order, by dynamic programming over subsets:
//   g(S) = sum_{i in S} g(S \ {i}) * P[X_i < tau_{|S|}],  g(empty) = 1,
// where g(S) sums, over all orderings of S, the probability that every
// prefix step passes. Runs in O(n * 2^n); requires n <= kMaxExactN and a
// maximize instance.
ExactReport evaluate_exact(const Instance& inst, const ThresholdSchedule& schedule,
                           Exec exec = Exec::parallel);

// Independent oracle: enumerates every permutation and every outcome tuple
// and weighs them directly. Requires n! * prod_i |support_i| <= 10^7.
ExactReport evaluate_bruteforce(const Instance& inst, const ThresholdSchedule& schedule);

// Exact E[accepted value] for a single threshold applied at every step.
// Order independence makes this closed form: the accepted element is
// uniform among those that clear the threshold, so
//   E[ALG] = sum_i E[X_i 1{X_i >= t}] * E[1 / (1 + N_i)],
// with N_i the Poisson-binomial count of other elements clearing t.
// Works for any n, which is what lets the sweep go past kMaxExactN.
double uniform_threshold_value(const Instance& inst, double threshold);

struct SweepPoint {
    double threshold = 0.0;
    double alg_value = 0.0;
    double ratio = 0.0;
};

struct SweepResult {
    double best_threshold = 0.0;
    double best_ratio = 0.0;
    std::vector<SweepPoint> points;
};

// All support values plus midpoints of adjacent distinct support values:
// one candidate per region on which the acceptance probabilities are
// constant, so the sweep below is exact.
std::vector<double> default_threshold_candidates(const Instance& inst);

// Evaluates the uniform schedule at each candidate (subset DP when n is
// within reach, the closed form above otherwise; they agree) and returns
// the best ratio. Ties prefer the smaller threshold.
SweepResult sweep_single_threshold(const Instance& inst, const std::vector<double>& candidates);

}  // namespace stopping
