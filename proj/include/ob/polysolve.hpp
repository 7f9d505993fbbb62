#pragma once

#include "ob/obs.hpp"

namespace ob {

// Dedicated solvers. Each returns the same answer as solve_exact; the
// witness action is a legal move realizing the answer.
Decision solve_plurality(const Obs& obs);
Decision solve_approval(const Obs& obs);
Decision solve_scoring(const Obs& obs);
Decision solve_veto3(const Obs& obs);

// Dispatcher: the dedicated algorithm when one applies, else the exact
// oracle (tagged "oracle-fallback"). fixed_count instances always go to
// the oracle.
Decision solve_fast(const Obs& obs);

}  // namespace ob
