#include "ob/polysolve.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <set>

#include "ob/kernels.hpp"
#include "ob/oracle.hpp"

namespace ob {

namespace {

constexpr int64_t kNegInf = std::numeric_limits<int64_t>::min() / 4;
constexpr int64_t kStateCap = 1'000'000;

Decision oracle_fallback(const Obs& obs) {
  Decision d = solve_exact(obs);
  d.algorithm = "oracle-fallback";
  return d;
}

// Max total bribable weight from `items` ((price, weight), voting order)
// under the variant's regime. `count`/`budget` are the remaining limits.
int64_t max_bribable_weight(const Obs& obs,
                            const std::vector<std::pair<int64_t, int64_t>>& items,
                            std::optional<int64_t> budget,
                            std::optional<int64_t> count,
                            std::map<std::string, int64_t>& stats) {
  if (!obs.priced) {
    // heaviest count_left voters (exchange argument)
    std::vector<int64_t> weights;
    for (const auto& [p, w] : items) weights.push_back(w);
    std::sort(weights.begin(), weights.end(), std::greater<>());
    const int64_t take = std::min<int64_t>(count.value_or(0),
                                           static_cast<int64_t>(weights.size()));
    return std::accumulate(weights.begin(), weights.begin() + take, int64_t{0});
  }
  if (!obs.weighted) {
    // cheapest voters first, maximal cardinality within the budget
    std::vector<int64_t> prices;
    for (const auto& [p, w] : items) prices.push_back(p);
    std::sort(prices.begin(), prices.end());
    int64_t left = budget.value_or(0), taken = 0;
    int64_t cap = count.value_or(static_cast<int64_t>(prices.size()));
    for (int64_t p : prices) {
      if (taken >= cap || p > left) break;
      left -= p;
      ++taken;
    }
    return taken;  // unit weights
  }
  KnapsackResult kr = knapsack_max_weight(items, budget.value_or(0), count);
  stats["knapsack_runs"] += 1;
  return kr.max_weight;
}

Ballot collapse_ballot(const Obs& obs, const std::vector<uint8_t>& desired,
                       int top) {
  if (obs.system.kind == SystemKind::Approval) {
    std::vector<uint8_t> bits(desired.begin(), desired.end());
    return Ballot::make_approval(std::move(bits));
  }
  std::vector<int> order{top};
  for (int c = 0; c < obs.m(); ++c)
    if (c != top) order.push_back(c);
  return Ballot::make_order(std::move(order));
}

// Shared Plurality/Approval solver via the score-collapse reduction: all
// bribed suffix weight lands on the best-fixed desired candidate, all
// adversarial suffix weight on the best-fixed undesired one.
Decision collapse_solve(const Obs& obs, const char* algo) {
  validate(obs);
  const int m = obs.m();
  const bool constructive = obs.goal == Goal::Constructive;
  const Resources res = remaining_resources(obs);
  const std::vector<uint8_t> desired =
      desired_candidates(obs.sigma, obs.d, obs.goal);

  ScoreVector past_scores(m, 0);
  for (const auto& p : obs.past)
    add_scores(obs.system, m, p.ballot, p.weight, past_scores);

  std::vector<std::pair<int64_t, int64_t>> pool;
  int64_t pool_weight = 0;
  for (const auto& f : obs.future) {
    pool.push_back({f.price.value_or(0), f.weight});
    pool_weight += f.weight;
  }

  Decision out;
  out.algorithm = algo;
  for (int bribe_u = 0; bribe_u <= 1 && !out.answer; ++bribe_u) {
    std::optional<int64_t> budget = res.budget_left;
    std::optional<int64_t> count = res.count_left;
    if (bribe_u) {
      if (count && *count < 1) continue;
      if (budget) {
        if (obs.current.price.value_or(0) > *budget) continue;
        *budget -= obs.current.price.value_or(0);
      }
      if (count) *count -= 1;
    }
    ScoreVector fixed = past_scores;
    if (!bribe_u)
      add_scores(obs.system, m, obs.current.ballot, obs.current.weight, fixed);

    const int64_t w_add = max_bribable_weight(obs, pool, budget, count, out.stats);
    const int64_t w_bribed = (bribe_u ? obs.current.weight : 0) + w_add;
    const int64_t w_adversary = pool_weight - w_add;

    int64_t best_target = kNegInf, best_other = kNegInf;
    int top = -1;
    for (int c = 0; c < m; ++c) {
      if (desired[c]) {
        if (fixed[c] > best_target) {
          best_target = fixed[c];
          top = c;
        }
      } else {
        best_other = std::max(best_other, fixed[c]);
      }
    }
    bool ok;
    if (best_target == kNegInf) ok = false;       // nothing to aim for
    else if (best_other == kNegInf) ok = true;    // every candidate desired
    else if (constructive) ok = best_target + w_bribed >= best_other + w_adversary;
    else ok = best_target + w_bribed > best_other + w_adversary;
    if (ok) {
      out.answer = true;
      out.action_at_u.bribe = bribe_u != 0;
      if (bribe_u) out.action_at_u.ballot = collapse_ballot(obs, desired, top);
    }
  }
  return out;
}

// ---- 3-candidate Veto ----

struct Veto3Ctx {
  const Obs& obs;
  bool constructive;
  std::array<int, 3> rel;          // relabeled candidate: rel[0] = sigma-top "a"
  std::array<int, 3> inv;          // candidate index -> relabeled position
  std::array<int64_t, 3> past_veto{};  // relabeled veto weights from the past
  Resources res;

  explicit Veto3Ctx(const Obs& o) : obs(o) {
    constructive = o.goal == Goal::Constructive;
    for (int i = 0; i < 3; ++i) rel[i] = o.sigma[i];
    for (int i = 0; i < 3; ++i) inv[rel[i]] = i;
    for (const auto& p : o.past) past_veto[inv[p.ballot.order[2]]] += p.weight;
    res = remaining_resources(o);
  }

  int u_veto() const { return inv[obs.current.ballot.order[2]]; }
  int64_t limit() const {
    return obs.priced ? *res.budget_left : *res.count_left;
  }
  int64_t cost(const std::optional<int64_t>& price) const {
    return obs.priced ? price.value_or(0) : 1;
  }

  // Lexicographically smallest order ballot vetoing relabeled candidate v.
  Ballot veto_ballot(int v) const {
    const int last = rel[v];
    std::vector<int> order;
    for (int c = 0; c < 3; ++c)
      if (c != last) order.push_back(c);
    order.push_back(last);
    return Ballot::make_order(std::move(order));
  }
};

// d = a constructive (a must co-win) / d = b destructive (a must win
// uniquely): nonbribed suffix voters veto a; bribed ones split b/c.
bool veto3_case2(const Veto3Ctx& ctx, Decision& out) {
  const bool strict = !ctx.constructive;
  const int64_t limit = ctx.limit();
  int64_t future_weight = 0;
  for (const auto& f : ctx.obs.future) future_weight += f.weight;

  for (int u_move = 0; u_move < 3; ++u_move) {  // 0 no-bribe, 1 veto b, 2 veto c
    const int64_t u_cost = ctx.cost(ctx.obs.current.price);
    if (u_move > 0 && u_cost > limit) continue;
    std::array<int64_t, 3> fixed = ctx.past_veto;
    int64_t spent = 0;
    if (u_move == 0) {
      fixed[ctx.u_veto()] += ctx.obs.current.weight;
    } else {
      fixed[u_move] += ctx.obs.current.weight;
      spent = u_cost;
    }
    // states: (resource spent, bribed veto-b weight, bribed veto-c weight);
    // unbribed future weight vetoes a implicitly
    std::set<std::array<int64_t, 3>> states{{spent, 0, 0}};
    for (const auto& f : ctx.obs.future) {
      const int64_t c = ctx.cost(f.price);
      std::set<std::array<int64_t, 3>> next;
      for (const auto& [r, vb, vc] : states) {
        next.insert({r, vb, vc});
        if (r + c <= limit) {
          next.insert({r + c, vb + f.weight, vc});
          next.insert({r + c, vb, vc + f.weight});
        }
      }
      states = std::move(next);
      if (static_cast<int64_t>(states.size()) > kStateCap)
        throw CapError("veto3 state table exceeds the cap");
      out.stats["dp_states"] =
          std::max(out.stats["dp_states"],
                   static_cast<int64_t>(states.size()));
    }
    for (const auto& [r, vb, vc] : states) {
      const int64_t va = fixed[0] + (future_weight - vb - vc);
      const int64_t b = fixed[1] + vb;
      const int64_t c = fixed[2] + vc;
      const bool ok = strict ? (va < b && va < c) : (va <= b && va <= c);
      if (ok) {
        out.answer = true;
        out.action_at_u.bribe = u_move != 0;
        if (u_move != 0) out.action_at_u.ballot = ctx.veto_ballot(u_move);
        return true;
      }
    }
  }
  return false;
}

// d = b constructive (c must not win uniquely) / d = c destructive (c must
// not win): bribed voters veto c; the adversary splits a/b.
bool veto3_case3(const Veto3Ctx& ctx, Decision& out) {
  const Obs& obs = ctx.obs;
  const int64_t limit = ctx.limit();

  for (int u_move = 0; u_move < 2; ++u_move) {  // 0 no-bribe, 1 bribe -> veto c
    const int64_t u_cost = ctx.cost(obs.current.price);
    if (u_move == 1 && u_cost > limit) continue;
    std::array<int64_t, 3> fixed = ctx.past_veto;
    int64_t vc = 0;
    int64_t left = limit;  // remaining count (unpriced) or budget (priced)
    if (u_move == 0) {
      fixed[ctx.u_veto()] += obs.current.weight;
    } else {
      vc += obs.current.weight;
      left -= u_cost;
    }

    // pick the bribed future set per the variant's regime
    std::vector<uint8_t> bribed(obs.future.size(), 0);
    if (!obs.priced) {
      std::vector<int> idx(obs.future.size());
      std::iota(idx.begin(), idx.end(), 0);
      std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) {
        return obs.future[i].weight > obs.future[j].weight;
      });
      const int64_t take =
          std::min<int64_t>(left, static_cast<int64_t>(idx.size()));
      for (int64_t i = 0; i < take; ++i) bribed[idx[i]] = 1;
    } else if (!obs.weighted) {
      std::vector<int> idx(obs.future.size());
      std::iota(idx.begin(), idx.end(), 0);
      std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) {
        return obs.future[i].price.value_or(0) < obs.future[j].price.value_or(0);
      });
      int64_t budget = left;
      for (int i : idx) {
        const int64_t p = obs.future[i].price.value_or(0);
        if (p > budget) break;
        budget -= p;
        bribed[i] = 1;
      }
    } else {
      std::vector<std::pair<int64_t, int64_t>> items;
      for (const auto& f : obs.future)
        items.push_back({f.price.value_or(0), f.weight});
      KnapsackResult kr = knapsack_max_weight(items, left);
      out.stats["knapsack_runs"] += 1;
      for (int i : kr.chosen) bribed[i] = 1;
    }

    std::vector<int64_t> remaining;
    int64_t remaining_weight = 0;
    for (size_t i = 0; i < obs.future.size(); ++i) {
      if (bribed[i]) {
        vc += obs.future[i].weight;
      } else {
        remaining.push_back(obs.future[i].weight);
        remaining_weight += obs.future[i].weight;
      }
    }
    const int64_t veto_c = fixed[2] + vc;
    SumBits sums = subset_sums(remaining, kStateCap);
    bool adversary_wins = false;
    for (int64_t x = 0; x <= sums.max_sum() && !adversary_wins; ++x) {
      if (!sums.test(x)) continue;
      const int64_t va = fixed[0] + x;
      const int64_t vb = fixed[1] + (remaining_weight - x);
      adversary_wins = ctx.constructive ? (va > veto_c && vb > veto_c)
                                        : (va >= veto_c && vb >= veto_c);
    }
    if (!adversary_wins) {
      out.answer = true;
      out.action_at_u.bribe = u_move != 0;
      if (u_move != 0) out.action_at_u.ballot = ctx.veto_ballot(2);
      return true;
    }
  }
  return false;
}

}  // namespace

Decision solve_plurality(const Obs& obs) {
  if (obs.system.kind != SystemKind::Plurality)
    throw ValidationError("system", "solve_plurality requires Plurality");
  return collapse_solve(obs, "plurality-collapse");
}

Decision solve_approval(const Obs& obs) {
  if (obs.system.kind != SystemKind::Approval)
    throw ValidationError("system", "solve_approval requires Approval");
  return collapse_solve(obs, "approval-collapse");
}

Decision solve_scoring(const Obs& obs) {
  if (obs.system.kind != SystemKind::Scoring)
    throw ValidationError("system", "solve_scoring requires a scoring rule");
  validate(obs);
  const DichotomyClass cls = classify_scoring_vector(obs.system.alpha);
  if (cls.trivial) {
    // every candidate always ties: d itself wins
    Decision out;
    out.answer = obs.goal == Goal::Constructive;
    out.algorithm = "scoring-trivial";
    return out;
  }
  if (cls.plurality_like) {
    Obs induced = obs;
    induced.system = VotingSystem::plurality();
    Decision out = collapse_solve(induced, "scoring-plurality-like");
    out.stats["top_bonus"] = cls.top_bonus;
    return out;
  }
  return oracle_fallback(obs);
}

Decision solve_veto3(const Obs& obs) {
  if (obs.system.kind != SystemKind::Veto || obs.m() != 3)
    throw ValidationError("system", "solve_veto3 requires Veto with 3 candidates");
  validate(obs);
  if (obs.priced && obs.fixed_count)
    throw ValidationError("fixed_count",
                          "priced fixed-count instances are not covered by the "
                          "dedicated veto solver");
  Veto3Ctx ctx(obs);
  const int pd = ctx.inv[obs.d];
  Decision out;
  if (ctx.constructive && pd == 2) {
    out.answer = true;
    out.algorithm = "veto3-trivial";
    return out;
  }
  if (!ctx.constructive && pd == 0) {
    out.answer = false;
    out.algorithm = "veto3-trivial";
    return out;
  }
  if ((ctx.constructive && pd == 0) || (!ctx.constructive && pd == 1)) {
    out.algorithm = "veto3-case2";
    veto3_case2(ctx, out);
  } else {
    out.algorithm = "veto3-case3";
    veto3_case3(ctx, out);
  }
  return out;
}

Decision solve_fast(const Obs& obs) {
  validate(obs);
  if (obs.fixed_count) return oracle_fallback(obs);
  switch (obs.system.kind) {
    case SystemKind::Plurality:
      return solve_plurality(obs);
    case SystemKind::Approval:
      return solve_approval(obs);
    case SystemKind::Veto:
      return obs.m() == 3 ? solve_veto3(obs) : oracle_fallback(obs);
    case SystemKind::Scoring:
      return solve_scoring(obs);
  }
  throw ValidationError("system", "unknown system");
}

}  // namespace ob
