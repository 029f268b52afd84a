#pragma once

namespace stopping {

// Execution policy for the heavy kernels. `parallel` uses OpenMP when the
// library is compiled with it. Every kernel reduces in a fixed order that
// does not depend on the thread count, so serial and parallel runs return
// identical bits; the serial path is kept as the reference for tests and
// for the kernel benchmark.
enum class Exec { serial, parallel };

}  // namespace stopping
