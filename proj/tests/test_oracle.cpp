#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ob/harness.hpp"
#include "ob/oracle.hpp"

using namespace ob;

namespace {

Ballot ord(std::vector<int> o) { return Ballot::make_order(std::move(o)); }

// Straight-line reference evaluator: plain recursion over explicit vote
// lists, no memo, no tally. Used as an independent check on the engine.
struct Ref {
  const Obs& obs;
  std::vector<Ballot> ballots;

  explicit Ref(const Obs& o)
      : obs(o), ballots(enumerate_ballots(o.system, o.m())) {}

  bool value() const {
    std::vector<WeightedVote> profile;
    for (const auto& p : obs.past) profile.push_back({p.ballot, p.weight});
    const Resources res = remaining_resources(obs);
    return exists(profile, 0, obs.current.ballot,
                  res.budget_left.value_or(-1), res.count_left.value_or(-1));
  }

  int64_t weight_at(int pos) const {
    return pos == 0 ? obs.current.weight : obs.future[pos - 1].weight;
  }
  int64_t price_at(int pos) const {
    const auto& p = pos == 0 ? obs.current.price : obs.future[pos - 1].price;
    return p.value_or(0);
  }

  bool exists(std::vector<WeightedVote> profile, int pos,
              const Ballot& revealed, int64_t budget, int64_t count) const {
    std::vector<std::pair<Ballot, std::pair<int64_t, int64_t>>> moves;
    moves.push_back({revealed, {budget, count}});
    const bool can_afford = (budget < 0 || price_at(pos) <= budget) &&
                            (count != 0);
    if (can_afford)
      for (const auto& b : ballots)
        moves.push_back(
            {b,
             {budget < 0 ? budget : budget - price_at(pos),
              count < 0 ? count : count - 1}});
    for (const auto& [ballot, rem] : moves) {
      auto next = profile;
      next.push_back({ballot, weight_at(pos)});
      if (forall(next, pos + 1, rem.first, rem.second)) return true;
    }
    return false;
  }

  bool forall(const std::vector<WeightedVote>& profile, int pos,
              int64_t budget, int64_t count) const {
    if (pos > static_cast<int>(obs.future.size())) {
      const auto winners = winner_set(obs.system, obs.m(), profile);
      return goal_met(winners, obs.sigma, obs.d, obs.goal);
    }
    for (const auto& b : ballots)
      if (!exists(profile, pos, b, budget, count)) return false;
    return true;
  }
};

Obs two_voter_example() {
  Obs obs;
  obs.system = VotingSystem::plurality();
  obs.candidates = {"a", "b"};
  obs.goal = Goal::Constructive;
  obs.k = 1;
  obs.sigma = {0, 1};
  obs.d = 0;
  obs.current = {"u", std::nullopt, 1, ord({1, 0})};
  obs.future.push_back({"f1", std::nullopt, 1});
  return obs;
}

FamilySpec small_family() {
  FamilySpec fam;
  fam.name = "oracle_ref";
  SliceSpec s;
  s.system = VotingSystem::plurality();
  s.m = 2;
  s.k_values = {0, 1, 2};
  s.past_max = 1;
  s.future_max = 2;
  fam.slices.push_back(s);
  s.system = VotingSystem::veto();
  s.m = 3;
  s.past_max = 0;
  fam.slices.push_back(s);
  s.system = VotingSystem::approval();
  s.m = 2;
  s.priced = true;
  s.weighted = true;
  s.weights = {1, 2};
  s.prices = {1, 2};
  s.k_values = {0, 2, 3};
  fam.slices.push_back(s);
  return fam;
}

}  // namespace

TEST_CASE("two voters, k=1: bribery can always rescue the favorite") {
  const Obs obs = two_voter_example();
  const Decision d = solve_exact(obs);
  CHECK(d.answer);
  // no-bribe also wins here (the later voter can be bribed), and no-bribe
  // is first in the move order
  CHECK_FALSE(d.action_at_u.bribe);
}

TEST_CASE("three unit voters, destructive d=b, k=1: adversary wins") {
  Obs obs = two_voter_example();
  obs.goal = Goal::Destructive;
  obs.d = 1;
  obs.future.push_back({"f2", std::nullopt, 1});
  CHECK_FALSE(solve_exact(obs).answer);
}

TEST_CASE("constructive with d at the bottom of sigma is always yes") {
  Obs obs = two_voter_example();
  obs.d = 1;  // sigma-minimum, so D = C
  const Decision d = solve_exact(obs);
  CHECK(d.answer);
  CHECK_FALSE(d.action_at_u.bribe);
}

TEST_CASE("engine matches the reference evaluator on small families") {
  int64_t n = 0;
  for_each_instance(small_family(), [&](const Obs& obs) {
    ++n;
    CHECK(solve_exact(obs).answer == Ref(obs).value());
  });
  CHECK(n > 1000);
}

TEST_CASE("memoized and unmemoized runs agree") {
  OracleConfig plain, nomemo;
  nomemo.memo = false;
  for_each_instance(small_family(), [&](const Obs& obs) {
    CHECK(solve_exact(obs, plain).answer == solve_exact(obs, nomemo).answer);
  });
}

TEST_CASE("tally-keyed and full-profile evaluation agree") {
  OracleConfig generic;
  generic.generic_profile = true;
  for_each_instance(small_family(), [&](const Obs& obs) {
    CHECK(solve_exact(obs).answer == solve_exact(obs, generic).answer);
  });
}

TEST_CASE("witness actions are legal and the decision is deterministic") {
  for_each_instance(small_family(), [&](const Obs& obs) {
    const Decision d1 = solve_exact(obs);
    const Decision d2 = solve_exact(obs);
    CHECK(d1.answer == d2.answer);
    CHECK(d1.action_at_u == d2.action_at_u);
    if (d1.answer && d1.action_at_u.bribe) {
      const Resources res = remaining_resources(obs);
      if (res.count_left) CHECK(*res.count_left >= 1);
      if (res.budget_left)
        CHECK(obs.current.price.value_or(0) <= *res.budget_left);
      REQUIRE(d1.action_at_u.ballot.has_value());
    }
  });
}

TEST_CASE("restricting bribes to every position changes nothing") {
  for_each_instance(small_family(), [&](const Obs& obs) {
    std::vector<int> all;
    for (int p = 0; p <= static_cast<int>(obs.future.size()); ++p)
      all.push_back(p);
    CHECK(value_with_restriction(obs, all) == solve_exact(obs).answer);
  });
}

TEST_CASE("no bribes allowed: pure adversarial play") {
  Obs obs = two_voter_example();
  CHECK_FALSE(value_with_restriction(obs, {}));  // adversary votes b
  obs.d = 1;  // D = C, goal holds on every leaf
  CHECK(value_with_restriction(obs, {}));
}

TEST_CASE("raising k never flips yes to no") {
  for_each_instance(small_family(), [&](const Obs& obs) {
    if (!solve_exact(obs).answer) return;
    Obs more = obs;
    more.k += 1;
    CHECK(solve_exact(more).answer);
  });
}

TEST_CASE("policy for the winning two-voter example") {
  const Obs obs = two_voter_example();
  const PolicyNode root = extract_policy(obs);
  CHECK_FALSE(root.leaf);
  // every adversary reveal at the future voter leads to a winning leaf
  CHECK(root.children.size() == 2);
  for (const auto& [idx, child] : root.children) {
    CHECK(child.leaf);
    CHECK(goal_met(child.winners, obs.sigma, obs.d, obs.goal));
  }
}

TEST_CASE("no policy exists for a losing instance") {
  Obs obs = two_voter_example();
  obs.goal = Goal::Destructive;
  obs.d = 1;
  obs.future.push_back({"f2", std::nullopt, 1});
  CHECK_THROWS_AS(extract_policy(obs), ValidationError);
}

TEST_CASE("policy with no future voters is a single node") {
  Obs obs = two_voter_example();
  obs.future.clear();
  obs.current.ballot = ord({0, 1});
  const PolicyNode root = extract_policy(obs);
  CHECK(root.leaf);
  CHECK_FALSE(root.move.bribe);
}

TEST_CASE("perturbing a ballot the policy always bribes away is harmless") {
  Obs obs = two_voter_example();
  obs.goal = Goal::Destructive;
  obs.d = 1;       // H = {b}
  obs.sigma = {0, 1};
  obs.current.ballot = ord({1, 0});
  obs.future.clear();  // u alone decides; bribing u to a>b is forced
  const Decision d = solve_exact(obs);
  REQUIRE(d.answer);
  REQUIRE(d.action_at_u.bribe);
  Obs perturbed = obs;
  perturbed.current.ballot = ord({0, 1});
  CHECK(solve_exact(perturbed).answer == d.answer);
}

TEST_CASE("caps are enforced") {
  Obs obs = two_voter_example();
  obs.candidates = {"a", "b", "c", "d", "e"};
  obs.sigma = {0, 1, 2, 3, 4};
  obs.current.ballot = ord({4, 3, 2, 1, 0});
  CHECK_THROWS_AS(solve_exact(obs), CapError);

  obs = two_voter_example();
  for (int i = 2; i <= 7; ++i)
    obs.future.push_back({"f" + std::to_string(i), std::nullopt, 1});
  CHECK_THROWS_AS(solve_exact(obs), CapError);
}
