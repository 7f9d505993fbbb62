#include "ob/kernels.hpp"

#include <algorithm>

namespace ob {

SumBits::SumBits(int64_t max_sum) : max_sum_(max_sum) {
  if (max_sum < 0) throw ValidationError("", "negative sum bound");
  words_.assign(static_cast<size_t>(max_sum / 64 + 1), 0);
  words_[0] = 1;  // the empty subset
}

void SumBits::add_item(int64_t w) {
  if (w < 0) throw ValidationError("", "negative weight");
  if (w == 0) return;  // shifts by zero change nothing
  const size_t word_shift = static_cast<size_t>(w / 64);
  const int bit_shift = static_cast<int>(w % 64);
  const size_t n = words_.size();
  for (size_t i = n; i-- > word_shift;) {
    uint64_t v = words_[i - word_shift] << bit_shift;
    if (bit_shift != 0 && i - word_shift > 0)
      v |= words_[i - word_shift - 1] >> (64 - bit_shift);
    words_[i] |= v;
  }
}

bool SumBits::test(int64_t sum) const {
  if (sum < 0 || sum > max_sum_) return false;
  return (words_[static_cast<size_t>(sum / 64)] >> (sum % 64)) & 1;
}

std::vector<int64_t> SumBits::values() const {
  std::vector<int64_t> out;
  for (int64_t s = 0; s <= max_sum_; ++s)
    if (test(s)) out.push_back(s);
  return out;
}

SumBits subset_sums(const std::vector<int64_t>& weights, int64_t cap) {
  int64_t total = 0;
  for (int64_t w : weights) {
    if (w < 0) throw ValidationError("", "negative weight");
    total += w;
  }
  if (total + 1 > cap)
    throw CapError("subset-sum table of " + std::to_string(total + 1) +
                   " bits exceeds the cap");
  SumBits bits(total);
  for (int64_t w : weights) bits.add_item(w);
  return bits;
}

KnapsackResult knapsack_max_weight(
    const std::vector<std::pair<int64_t, int64_t>>& items, int64_t budget,
    std::optional<int64_t> count_cap, int64_t cell_cap) {
  const int n = static_cast<int>(items.size());
  if (budget < 0) throw ValidationError("", "negative budget");
  int64_t price_total = 0;
  for (const auto& [p, w] : items) {
    if (p < 0 || w < 0) throw ValidationError("", "negative price or weight");
    price_total += p;
  }
  const int64_t bdim = std::min(budget, price_total) + 1;
  const int64_t cdim =
      count_cap ? std::min<int64_t>(*count_cap, n) + 1 : int64_t{n} + 1;
  if ((n + 1) * bdim * cdim > cell_cap)
    throw CapError("knapsack table of " +
                   std::to_string((n + 1) * bdim * cdim) +
                   " cells exceeds the cap");

  // best[i][b][c]: max weight using items i.. with price budget b and at
  // most c picks. Suffix form so the greedy walk below yields the
  // lexicographically smallest maximizing subset.
  std::vector<int64_t> best(static_cast<size_t>((n + 1) * bdim * cdim), 0);
  auto at = [&](int i, int64_t b, int64_t c) -> int64_t& {
    return best[(static_cast<size_t>(i) * bdim + b) * cdim + c];
  };
  for (int i = n - 1; i >= 0; --i) {
    const auto [p, w] = items[i];
    for (int64_t b = 0; b < bdim; ++b) {
      for (int64_t c = 0; c < cdim; ++c) {
        int64_t v = at(i + 1, b, c);
        if (p <= b && c >= 1) v = std::max(v, w + at(i + 1, b - p, c - 1));
        at(i, b, c) = v;
      }
    }
  }
  KnapsackResult out;
  int64_t b = bdim - 1, c = cdim - 1;
  out.max_weight = at(0, b, c);
  for (int i = 0; i < n; ++i) {
    if (at(i, b, c) == 0) break;  // empty completion is lexicographically least
    const auto [p, w] = items[i];
    if (p <= b && c >= 1 && w + at(i + 1, b - p, c - 1) == at(i, b, c)) {
      out.chosen.push_back(i);
      b -= p;
      --c;
    }
  }
  return out;
}

}  // namespace ob
