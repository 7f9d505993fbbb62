#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ob/errors.hpp"

namespace ob {

enum class SystemKind { Plurality, Veto, Approval, Scoring };

// A single cast preference: a total order (best first) or an approval
// bit-vector, depending on the voting system.
struct Ballot {
  enum class Kind { Order, Approval };
  Kind kind = Kind::Order;
  std::vector<int> order;           // permutation of [0, m), best first
  std::vector<uint8_t> approval;    // one 0/1 entry per candidate

  static Ballot make_order(std::vector<int> o);
  static Ballot make_approval(std::vector<uint8_t> a);
  bool operator==(const Ballot&) const = default;
};

struct VotingSystem {
  SystemKind kind = SystemKind::Plurality;
  std::vector<int64_t> alpha;  // Scoring only: nonincreasing, nonnegative

  static VotingSystem plurality() { return {SystemKind::Plurality, {}}; }
  static VotingSystem veto() { return {SystemKind::Veto, {}}; }
  static VotingSystem approval() { return {SystemKind::Approval, {}}; }
  static VotingSystem scoring(std::vector<int64_t> a) {
    return {SystemKind::Scoring, std::move(a)};
  }
  bool order_based() const { return kind != SystemKind::Approval; }
  bool operator==(const VotingSystem&) const = default;
};

struct WeightedVote {
  Ballot ballot;
  int64_t weight = 1;
  bool operator==(const WeightedVote&) const = default;
};

using ScoreVector = std::vector<int64_t>;

void validate_system(const VotingSystem& system, int m);

// Throws ValidationError naming `where` if the ballot does not fit the
// system/candidate count.
void validate_ballot(const VotingSystem& system, int m, const Ballot& ballot,
                     const std::string& where);

// Adds one weighted ballot's points into `scores` (size m, preallocated).
void add_scores(const VotingSystem& system, int m, const Ballot& ballot,
                int64_t weight, ScoreVector& scores);

ScoreVector score_vector(const VotingSystem& system, int m,
                         const std::vector<WeightedVote>& votes);

// Candidates attaining the maximum score, ascending. Nonempty for m >= 1.
std::vector<int> winners_from_scores(const ScoreVector& scores);

std::vector<int> winner_set(const VotingSystem& system, int m,
                            const std::vector<WeightedVote>& votes);

// All ballots for the system's ballot kind: the m! total orders in
// lexicographic order, or the 2^m approval vectors in numeric order
// (candidate 0 is the most significant bit).
std::vector<Ballot> enumerate_ballots(const VotingSystem& system, int m,
                                      int cap = 4);

struct DichotomyClass {
  bool trivial = false;         // alpha_1 == alpha_m: everyone always ties
  bool plurality_like = false;  // alpha_2 == alpha_m (m >= 2)
  bool general = false;
  int64_t top_bonus = 0;        // alpha_1 - alpha_m when plurality_like
  bool operator==(const DichotomyClass&) const = default;
};

DichotomyClass classify_scoring_vector(const std::vector<int64_t>& alpha);

// a * b with an overflow check.
int64_t checked_mul(int64_t a, int64_t b);

}  // namespace ob
