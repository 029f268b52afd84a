#pragma once

#include <string>

#include "stopping/instance.hpp"

namespace stopping {

// A certain value now versus a long shot: {1} and {0 w.p. 1-eps, 1/eps
// w.p. eps}. Offline expects 2 - eps; under the listed (fixed) order the
// best online rule expects exactly 1.
Instance gen_prophet_hard(double eps);

// n point masses at 1/(1 - 1/n) plus one {0 w.p. 1-1/n, n w.p. 1/n}.
// Offline expects exactly 2. The family pins down how little a single
// threshold can guarantee under random arrival order.
Instance gen_one_threshold_hard(int n);

// Two distributions, {1} and {0 w.p. 1-eps, 1/eps w.p. eps}, random order.
// Offline expects 2 - eps; the best adaptive online rule expects
// 1.5 - eps/2, ratio 0.75 + O(eps).
Instance gen_075_hard(double eps);

// n i.i.d. copies of {0, 1, 2^n} each w.p. 1/3, minimize. The expected
// minimum is (1/3)^n 2^n + (2/3)^n - (1/3)^n; online rules pay
// exponentially more. Requires 1 <= n <= 50 so 2^n stays exact in double.
Instance gen_min_iid_hard(int n);

// Three distributions, minimize: {1}, {eps/(1-eps) w.p. 1-eps, 1/eps w.p.
// eps}, {0 w.p. 1-eps, 1/eps w.p. eps}. The expected minimum is 2 eps^2,
// yet even a rule allowed one exchange pays at least eps under the listed
// order. Requires 0 < eps <= 0.5.
Instance gen_min_exchange_hard(double eps);

// JSON instance files:
// {
//   "name": "...",
//   "objective": "max" | "min",
//   "distributions": [ { "support": [ { "value": v, "prob": p }, ... ] }, ... ]
// }
// value and prob may be JSON numbers or decimal strings; strings are parsed
// at full double precision. load_instance throws ValidationError with the
// offending field or parse position in the message.
Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

std::string instance_to_json(const Instance& inst);       // pretty, stable key order
Instance instance_from_json(const std::string& text);

}  // namespace stopping
