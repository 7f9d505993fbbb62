#pragma once

#include <map>
#include <optional>
#include <vector>

#include "ob/obs.hpp"

namespace ob {

// Desk-scale ground truth: the oracle enumerates the full game tree, so it
// is kept behind hard caps instead of timeouts.
struct OracleCaps {
  int max_candidates = 4;
  int max_suffix = 6;               // voters from u onward
  int64_t max_budget = 1'000'000;
};

struct OracleConfig {
  bool memo = true;
  // Evaluate winner sets from the full cast profile instead of the running
  // score tally (independent second route; memo keys become full-profile).
  bool generic_profile = false;
  OracleCaps caps;
  // Bribes permitted only at these suffix positions (0 = u). Unset: all.
  std::optional<std::vector<int>> allowed_positions;
  // Restricted move sets; unset means the full enumerated ballot space.
  std::optional<std::vector<Ballot>> briber_ballots;
  std::optional<std::vector<Ballot>> adversary_ballots;
};

// Evaluates the alternating existential/universal game at voter u: briber
// moves (no-bribe first, then bribe targets in enumeration order) are
// existential, future ballot revelations universal. Returns the answer and
// the first witnessing move at u under that deterministic move order.
Decision solve_exact(const Obs& obs, const OracleConfig& config = {});

// Game value when bribes are restricted to the listed suffix positions.
bool value_with_restriction(const Obs& obs,
                            const std::vector<int>& allowed_positions,
                            const OracleConfig& config = {});

struct PolicyNode {
  Ballot revealed;                   // this voter's revealed ballot
  Action move;                       // the briber's chosen response
  bool leaf = false;
  std::vector<int> winners;          // final winner set (leaf only)
  std::map<int, PolicyNode> children;  // by next voter's revealed ballot index
};

// Certificate for a winning instance: the briber's move at every reachable
// (position, revealed ballot). Throws if the instance's answer is no.
PolicyNode extract_policy(const Obs& obs, int depth_cap = 64,
                          const OracleConfig& config = {});

}  // namespace ob
