#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace stopping {

struct Atom {
    double value = 0.0;
    double prob = 0.0;
};

// Finite discrete distribution. Atoms end up sorted by value with distinct
// values (inputs equal within 1e-12 are merged, probabilities summed),
// every probability positive, and the probabilities summing to 1 within
// 1e-12. Construction throws ValidationError otherwise.
class DiscreteDistribution {
public:
    explicit DiscreteDistribution(std::vector<Atom> atoms);

    const std::vector<Atom>& atoms() const { return atoms_; }
    std::size_t size() const { return atoms_.size(); }
    double min_value() const { return atoms_.front().value; }
    double max_value() const { return atoms_.back().value; }

    // Inverse CDF: the first atom whose cumulative probability exceeds u.
    double sample(double u) const;

private:
    std::vector<Atom> atoms_;
};

double tail_prob(const DiscreteDistribution& d, double x);       // P[X >= x]
double below_prob(const DiscreteDistribution& d, double x);      // P[X < x]
double mean(const DiscreteDistribution& d);
double expected_above(const DiscreteDistribution& d, double x);  // E[X 1{X >= x}]

// Exact E[max] and E[min] of one independent draw per distribution,
// computed from product CDFs on the merged support grid.
double expected_max(std::span<const DiscreteDistribution> ds);
double expected_min(std::span<const DiscreteDistribution> ds);

}  // namespace stopping
