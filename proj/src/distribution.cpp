#include "stopping/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "stopping/errors.hpp"

namespace stopping {

namespace {

constexpr double kValueMergeTol = 1e-12;
constexpr double kProbSumTol = 1e-12;

double le_prob(const DiscreteDistribution& d, double x) {  // P[X <= x]
    double s = 0.0;
    for (const Atom& a : d.atoms())
        if (a.value <= x) s += a.prob;
    return s;
}

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<Atom> atoms) {
    if (atoms.empty()) throw ValidationError("DiscreteDistribution: support is empty");
    for (const Atom& a : atoms) {
        if (!std::isfinite(a.value))
            throw ValidationError("DiscreteDistribution: atom value is not finite");
        if (!std::isfinite(a.prob) || a.prob <= 0.0) {
            std::ostringstream os;
            os << "DiscreteDistribution: atom probability must be in (0,1], got " << a.prob;
            throw ValidationError(os.str());
        }
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.value < b.value; });
    atoms_.reserve(atoms.size());
    for (const Atom& a : atoms) {
        if (!atoms_.empty() && a.value - atoms_.back().value <= kValueMergeTol)
            atoms_.back().prob += a.prob;
        else
            atoms_.push_back(a);
    }
    double sum = 0.0;
    for (const Atom& a : atoms_) sum += a.prob;
    if (std::fabs(sum - 1.0) > kProbSumTol) {
        std::ostringstream os;
        os << "DiscreteDistribution: probabilities sum to " << sum << ", expected 1";
        throw ValidationError(os.str());
    }
}

double DiscreteDistribution::sample(double u) const {
    double cum = 0.0;
    for (const Atom& a : atoms_) {
        cum += a.prob;
        if (u < cum) return a.value;
    }
    return atoms_.back().value;
}

double tail_prob(const DiscreteDistribution& d, double x) {
    double s = 0.0;
    for (const Atom& a : d.atoms())
        if (a.value >= x) s += a.prob;
    return s;
}

double below_prob(const DiscreteDistribution& d, double x) {
    double s = 0.0;
    for (const Atom& a : d.atoms())
        if (a.value < x) s += a.prob;
    return s;
}

double mean(const DiscreteDistribution& d) {
    double s = 0.0;
    for (const Atom& a : d.atoms()) s += a.value * a.prob;
    return s;
}

double expected_above(const DiscreteDistribution& d, double x) {
    double s = 0.0;
    for (const Atom& a : d.atoms())
        if (a.value >= x) s += a.value * a.prob;
    return s;
}

double expected_max(std::span<const DiscreteDistribution> ds) {
    if (ds.empty()) throw ValidationError("expected_max: no distributions");
    std::vector<double> grid;
    for (const auto& d : ds)
        for (const Atom& a : d.atoms()) grid.push_back(a.value);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    // P[max <= v] is the product of the per-distribution CDFs; the max puts
    // mass C(v_j) - C(v_{j-1}) on grid point v_j.
    double e = 0.0;
    double prev = 0.0;
    for (double v : grid) {
        double c = 1.0;
        for (const auto& d : ds) c *= le_prob(d, v);
        e += v * (c - prev);
        prev = c;
    }
    return e;
}

double expected_min(std::span<const DiscreteDistribution> ds) {
    if (ds.empty()) throw ValidationError("expected_min: no distributions");
    std::vector<double> grid;
    for (const auto& d : ds)
        for (const Atom& a : d.atoms()) grid.push_back(a.value);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    // P[min >= v_j] = prod_i P[X_i >= v_j]; the min puts T(v_j) - T(v_{j+1})
    // on v_j, with T past the last grid point being 0.
    double e = 0.0;
    double prev = 0.0;  // T(v_{j+1}) of the previous iteration, walking down
    for (std::size_t j = grid.size(); j-- > 0;) {
        double t = 1.0;
        for (const auto& d : ds) t *= tail_prob(d, grid[j]);
        e += grid[j] * (t - prev);
        prev = t;
    }
    return e;
}

}  // namespace stopping
