#pragma once

#include <cstdint>

#include "stopping/exec.hpp"
#include "stopping/instance.hpp"

namespace stopping {

// Whether elements arrive in a uniformly random order or in the order the
// instance lists them.
enum class ArrivalOrder { random, fixed };

struct PolicyValue {
    double value = 0.0;
    std::uint64_t state_count = 0;  // DP states evaluated
};

// Value of the best adaptive stopping rule that sees (index, value) pairs
// one at a time and may accept at most one. Maximize: declining everything
// is allowed and pays 0. Backward induction over the set of distributions
// still to arrive:
//   V(S) = (1/|S|) sum_{i in S} E[max(X_i, V(S \ {i}))],  V(empty) = 0.
// Random order requires n <= 20.
PolicyValue optimal_online_max(const Instance& inst, ArrivalOrder order = ArrivalOrder::random,
                               Exec exec = Exec::parallel);

// Minimization twin. Acceptance is forced by the horizon: a lone remaining
// element must be taken, so V({i}) = mean(D_i).
PolicyValue optimal_online_min(const Instance& inst, ArrivalOrder order = ArrivalOrder::random,
                               Exec exec = Exec::parallel);

// n i.i.d. copies of d, minimize. Arrival order is irrelevant, so the DP
// collapses to V(1) = mean(d), V(m) = E[min(X, V(m-1))].
PolicyValue iid_optimal_online_min(const DiscreteDistribution& d, int n);

// Minimization where the policy may hold a value and later replace it
// exactly once; a withdrawn value is gone for good, and something must be
// held once the last element has arrived. State is (remaining set or
// position, held value, exchange used). Random order requires n <= 12 and
// small supports.
PolicyValue optimal_online_min_one_exchange(const Instance& inst, ArrivalOrder order);

}  // namespace stopping
