#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ob/errors.hpp"

namespace ob {

// Reachable subset sums as a bitset DP: word i bit b <=> sum 64*i+b.
class SumBits {
 public:
  explicit SumBits(int64_t max_sum);
  void add_item(int64_t w);  // bits |= bits << w
  bool test(int64_t sum) const;
  int64_t max_sum() const { return max_sum_; }
  std::vector<int64_t> values() const;

 private:
  int64_t max_sum_;
  std::vector<uint64_t> words_;
};

// Exact set of subset sums of `weights`. Table capped at `cap` bits.
SumBits subset_sums(const std::vector<int64_t>& weights,
                    int64_t cap = 1'000'000);

struct KnapsackResult {
  int64_t max_weight = 0;
  std::vector<int> chosen;  // lexicographically smallest maximizing subset
};

// Max total weight over subsets with total price <= budget and, when given,
// |subset| <= count_cap. Pseudo-polynomial; table capped at `cell_cap`.
KnapsackResult knapsack_max_weight(
    const std::vector<std::pair<int64_t, int64_t>>& items,  // (price, weight)
    int64_t budget, std::optional<int64_t> count_cap = std::nullopt,
    int64_t cell_cap = 1'000'000);

}  // namespace ob
