#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ob/elections.hpp"

namespace ob {

enum class Goal { Constructive, Destructive };

struct PastVoter {
  std::string name;
  std::optional<int64_t> price;  // present iff the instance is priced
  int64_t weight = 1;
  Ballot ballot;                 // the vote that was cast
  bool bribed = false;
  bool operator==(const PastVoter&) const = default;
};

struct CurrentVoter {
  std::string name;
  std::optional<int64_t> price;
  int64_t weight = 1;
  Ballot ballot;                 // the vote u casts unless bribed
  bool operator==(const CurrentVoter&) const = default;
};

struct FutureVoter {
  std::string name;
  std::optional<int64_t> price;
  int64_t weight = 1;
  bool operator==(const FutureVoter&) const = default;
};

// One online-bribery instance: the snapshot at the decision moment for
// voter u, plus the briber's preference, goal, and remaining-resource data.
struct Obs {
  VotingSystem system;
  std::vector<std::string> candidates;  // display names; index is identity
  Goal goal = Goal::Constructive;
  bool priced = false;
  bool weighted = false;
  int64_t k = 0;                        // bribe-count limit, or price budget
  std::optional<int64_t> fixed_count;   // extra cap on the number of bribes
  std::vector<int> sigma;               // briber's order, best first
  int d = 0;                            // distinguished candidate
  std::vector<PastVoter> past;
  CurrentVoter current;
  std::vector<FutureVoter> future;

  int m() const { return static_cast<int>(candidates.size()); }
  bool operator==(const Obs&) const = default;
};

struct Action {
  bool bribe = false;
  std::optional<Ballot> ballot;  // present iff bribe
  bool operator==(const Action&) const = default;
};

struct Decision {
  bool answer = false;
  Action action_at_u;
  std::string algorithm;
  std::map<std::string, int64_t> stats;
};

// D (constructive) or H (destructive), as a membership mask plus its
// complement (N, the "desired" candidates, in the destructive case).
struct TargetSets {
  std::vector<uint8_t> goal_set;
  std::vector<uint8_t> complement;
};

TargetSets target_set(const std::vector<int>& sigma, int d, Goal goal);

// Candidates the briber wants among the winners: D when constructive,
// N = C \ H when destructive.
std::vector<uint8_t> desired_candidates(const std::vector<int>& sigma, int d,
                                        Goal goal);

bool goal_met(const std::vector<int>& winners, const std::vector<int>& sigma,
              int d, Goal goal);

struct Resources {
  std::optional<int64_t> budget_left;  // priced instances
  std::optional<int64_t> count_left;   // unpriced k, and/or fixed_count
};

Resources remaining_resources(const Obs& obs);

// Full structural validation; throws ValidationError with a field path.
void validate(const Obs& obs);

Obs parse_instance(const std::string& text);
std::string serialize_instance(const Obs& obs);

std::string serialize_decision(const Decision& decision, const Obs& context);

}  // namespace ob
