#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace stopping {

// Per-step acceptance thresholds tau_1..tau_n for the rule "stop at the
// first step k whose revealed value is >= tau_k". +infinity is a valid
// entry meaning "reject everything at this step"; it is only ever compared
// against values, never used in arithmetic.
class ThresholdSchedule {
public:
    explicit ThresholdSchedule(std::vector<double> thresholds,
                               std::optional<std::vector<double>> alphas = std::nullopt,
                               std::optional<double> opt = std::nullopt);

    std::size_t size() const { return thresholds_.size(); }
    double at(std::size_t step) const { return thresholds_[step - 1]; }  // 1-based
    const std::vector<double>& thresholds() const { return thresholds_; }
    bool non_increasing() const { return non_increasing_; }

    // Present when the schedule was built as tau_k = alpha_k * opt.
    const std::optional<std::vector<double>>& alphas() const { return alphas_; }
    std::optional<double> opt_value() const { return opt_; }

private:
    std::vector<double> thresholds_;
    std::optional<std::vector<double>> alphas_;
    std::optional<double> opt_;
    bool non_increasing_;
};

// Factors alpha_1 > ... > alpha_n defined backward by alpha_n = 1/(n+1),
// alpha_k = (n*alpha_{k+1} + 1)/(n+1). alpha_1 increases to 1 - 1/e.
std::vector<double> alpha_factors(int n);

// The same factor evaluated as the explicit sum
// alpha_k = sum_{i=0}^{n-k} n^i / (1+n)^{i+1}; k is 1-based.
// Kept independent of alpha_factors so the two can cross-check each other.
double alpha_closed_form(int n, int k);

// tau_k = alpha_k * opt. Requires opt > 0. Non-increasing by construction.
ThresholdSchedule alpha_schedule(int n, double opt);

ThresholdSchedule uniform_schedule(int n, double threshold);

// First ceil(n/2) steps at `first`, the rest at `second`.
ThresholdSchedule two_phase_schedule(int n, double first, double second);

int secretary_prefix_length(int n);  // floor(n/e)

// Observe-then-commit as a schedule: +infinity for the first floor(n/e)
// steps, then the maximum of the observed prefix. `observed_prefix` must
// have exactly floor(n/e) entries. Note the schedule rule accepts ties
// (value >= threshold) while run_secretary uses the classic strict rule.
ThresholdSchedule secretary_schedule(const std::vector<double>& observed_prefix, int n);

}  // namespace stopping
