#include "stopping/schedule.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "stopping/errors.hpp"

namespace stopping {

ThresholdSchedule::ThresholdSchedule(std::vector<double> thresholds,
                                     std::optional<std::vector<double>> alphas,
                                     std::optional<double> opt)
    : thresholds_(std::move(thresholds)), alphas_(std::move(alphas)), opt_(opt) {
    if (thresholds_.empty()) throw ValidationError("ThresholdSchedule: no thresholds");
    for (double t : thresholds_)
        if (std::isnan(t)) throw ValidationError("ThresholdSchedule: NaN threshold");
    if (alphas_ && alphas_->size() != thresholds_.size())
        throw ValidationError("ThresholdSchedule: alphas length does not match thresholds");
    non_increasing_ = true;
    for (std::size_t k = 1; k < thresholds_.size(); ++k)
        if (thresholds_[k - 1] < thresholds_[k]) {
            non_increasing_ = false;
            break;
        }
}

std::vector<double> alpha_factors(int n) {
    if (n < 1) throw ValidationError("alpha_factors: n must be >= 1");
    std::vector<double> a(std::size_t(n), 0.0);
    a[std::size_t(n) - 1] = 1.0 / (n + 1);
    for (int k = n - 2; k >= 0; --k)
        a[std::size_t(k)] = (n * a[std::size_t(k) + 1] + 1.0) / (n + 1);
    return a;
}

double alpha_closed_form(int n, int k) {
    if (n < 1) throw ValidationError("alpha_closed_form: n must be >= 1");
    if (k < 1 || k > n) {
        std::ostringstream os;
        os << "alpha_closed_form: k = " << k << " out of range [1, " << n << "]";
        throw ValidationError(os.str());
    }
    const double r = double(n) / (n + 1.0);
    double term = 1.0 / (n + 1.0);
    double s = 0.0;
    for (int i = 0; i <= n - k; ++i) {
        s += term;
        term *= r;
    }
    return s;
}

ThresholdSchedule alpha_schedule(int n, double opt) {
    if (!(opt > 0.0)) throw ValidationError("alpha_schedule: opt must be > 0");
    std::vector<double> a = alpha_factors(n);
    std::vector<double> taus(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) taus[k] = a[k] * opt;
    return ThresholdSchedule(std::move(taus), std::move(a), opt);
}

ThresholdSchedule uniform_schedule(int n, double threshold) {
    if (n < 1) throw ValidationError("uniform_schedule: n must be >= 1");
    return ThresholdSchedule(std::vector<double>(std::size_t(n), threshold));
}

ThresholdSchedule two_phase_schedule(int n, double first, double second) {
    if (n < 1) throw ValidationError("two_phase_schedule: n must be >= 1");
    std::vector<double> taus(std::size_t(n), second);
    for (int k = 0; k < (n + 1) / 2; ++k) taus[std::size_t(k)] = first;
    return ThresholdSchedule(std::move(taus));
}

int secretary_prefix_length(int n) {
    if (n < 1) throw ValidationError("secretary_prefix_length: n must be >= 1");
    return int(std::floor(double(n) / std::exp(1.0)));
}

ThresholdSchedule secretary_schedule(const std::vector<double>& observed_prefix, int n) {
    if (n < 1) throw ValidationError("secretary_schedule: n must be >= 1");
    const int m = secretary_prefix_length(n);
    if (int(observed_prefix.size()) != m) {
        std::ostringstream os;
        os << "secretary_schedule: prefix has " << observed_prefix.size() << " values, expected "
           << m << " for n = " << n;
        throw ValidationError(os.str());
    }
    double mx = -std::numeric_limits<double>::infinity();
    for (double v : observed_prefix) mx = std::max(mx, v);
    std::vector<double> taus(std::size_t(n), mx);
    for (int k = 0; k < m; ++k) taus[std::size_t(k)] = std::numeric_limits<double>::infinity();
    return ThresholdSchedule(std::move(taus));
}

}  // namespace stopping
