#pragma once

#include <string>
#include <vector>

#include "ob/obs.hpp"

namespace ob {

struct TransformReport {
  std::string name;
  std::string source_digest;
  Obs target;
  enum class Relation { Equal, Implies } relation = Relation::Equal;
};

// Unit-price embedding: every voter gets price 1, the count limit becomes
// the budget. Answer-preserving. Errors if the instance is already priced.
Obs to_priced(const Obs& obs);

// Unit-weight embedding: weights become explicit 1s. Answer-preserving.
Obs to_weighted(const Obs& obs);

// Positions (0 = u) of the last count_left suffix voters; bribing only
// there preserves the game value for unpriced, unweighted instances.
std::vector<int> last_k_positions(const Obs& obs);

std::vector<std::string> transform_names();
TransformReport apply_transform(const std::string& name, const Obs& obs);

}  // namespace ob
