#include "ob/oracle.hpp"

#include <algorithm>
#include <cstring>
#include <string>
#include <unordered_map>

namespace ob {

namespace {

class Engine {
 public:
  Engine(const Obs& obs, const OracleConfig& cfg) : obs_(obs), cfg_(cfg) {
    validate(obs);
    const int m = obs.m();
    if (m > cfg.caps.max_candidates)
      throw CapError("oracle capped at " +
                     std::to_string(cfg.caps.max_candidates) + " candidates");
    nsuffix_ = 1 + static_cast<int>(obs.future.size());
    if (nsuffix_ > cfg.caps.max_suffix)
      throw CapError("oracle capped at " + std::to_string(cfg.caps.max_suffix) +
                     " suffix voters");
    ballots_ = enumerate_ballots(obs.system, m, cfg.caps.max_candidates);

    Resources res = remaining_resources(obs);
    priced_ = res.budget_left.has_value();
    budget0_ = res.budget_left.value_or(-1);
    counted_ = res.count_left.has_value();
    count0_ = res.count_left.value_or(-1);
    if (priced_ && budget0_ > cfg.caps.max_budget)
      throw CapError("oracle budget cap exceeded");

    weights_.push_back(obs.current.weight);
    prices_.push_back(obs.current.price.value_or(0));
    for (const auto& f : obs.future) {
      weights_.push_back(f.weight);
      prices_.push_back(f.price.value_or(0));
    }
    allowed_.assign(nsuffix_, 1);
    if (cfg.allowed_positions) {
      allowed_.assign(nsuffix_, 0);
      for (int p : *cfg.allowed_positions)
        if (p >= 0 && p < nsuffix_) allowed_[p] = 1;
    }
    briber_idx_ = index_set(cfg.briber_ballots);
    adversary_idx_ = index_set(cfg.adversary_ballots);

    if (cfg.generic_profile) {
      state0_.assign(ballots_.size(), 0);
      for (const auto& p : obs.past) state0_[index_of(p.ballot)] += p.weight;
    } else {
      state0_.assign(m, 0);
      for (const auto& p : obs.past)
        add_scores(obs.system, m, p.ballot, p.weight, state0_);
    }
    revealed0_ = index_of(obs.current.ballot);
  }

  bool run() {
    std::vector<int64_t> st = state0_;
    return eval(0, revealed0_, budget0_, count0_, st);
  }

  Decision decision() {
    Decision d;
    d.answer = run();
    d.algorithm = "oracle";
    if (d.answer) d.action_at_u = move_action(witness_move_);
    d.stats["nodes"] = nodes_;
    d.stats["memo_hits"] = memo_hits_;
    d.stats["memo_entries"] = static_cast<int64_t>(memo_.size());
    return d;
  }

  PolicyNode policy(int depth_cap) {
    if (nsuffix_ > depth_cap) throw CapError("policy depth cap exceeded");
    if (!run()) throw ValidationError("", "no policy for losing position");
    std::vector<int64_t> st = state0_;
    return build(0, revealed0_, budget0_, count0_, st);
  }

 private:
  int index_of(const Ballot& b) const {
    for (size_t i = 0; i < ballots_.size(); ++i)
      if (ballots_[i] == b) return static_cast<int>(i);
    throw ValidationError("", "ballot outside the enumerated ballot space");
  }

  std::vector<int> index_set(const std::optional<std::vector<Ballot>>& set) {
    std::vector<int> out;
    if (!set) {
      out.resize(ballots_.size());
      for (size_t i = 0; i < out.size(); ++i) out[i] = static_cast<int>(i);
    } else {
      for (const auto& b : *set) out.push_back(index_of(b));
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    return out;
  }

  // Moves at a position: 0 = no-bribe, then bribes in enumeration order.
  int move_count() const { return 1 + static_cast<int>(briber_idx_.size()); }

  bool bribe_legal(int pos, int64_t budget, int64_t count) const {
    if (!allowed_[pos]) return false;
    if (priced_ && prices_[pos] > budget) return false;
    if (counted_ && count < 1) return false;
    return true;
  }

  Action move_action(int move) const {
    Action a;
    if (move > 0) {
      a.bribe = true;
      a.ballot = ballots_[briber_idx_[move - 1]];
    }
    return a;
  }

  std::string pack_key(int pos, int rev, int64_t budget, int64_t count,
                       const std::vector<int64_t>& st) const {
    std::string key;
    key.reserve(4 + 16 + st.size() * 8);
    key.push_back(static_cast<char>(pos));
    key.push_back(static_cast<char>(rev & 0xff));
    key.push_back(static_cast<char>(rev >> 8));
    auto put = [&key](int64_t v) {
      char buf[8];
      std::memcpy(buf, &v, 8);
      key.append(buf, 8);
    };
    put(budget);
    put(count);
    for (int64_t v : st) put(v);
    return key;
  }

  bool leaf_goal(const std::vector<int64_t>& st) const {
    std::vector<int> winners;
    if (cfg_.generic_profile) {
      std::vector<WeightedVote> votes;
      for (size_t i = 0; i < st.size(); ++i)
        if (st[i] > 0) votes.push_back({ballots_[i], st[i]});
      winners = winner_set(obs_.system, obs_.m(), votes);
    } else {
      winners = winners_from_scores(st);
    }
    return goal_met(winners, obs_.sigma, obs_.d, obs_.goal);
  }

  void apply(int pos, int cast, std::vector<int64_t>& st) const {
    if (cfg_.generic_profile)
      st[cast] += weights_[pos];
    else
      add_scores(obs_.system, obs_.m(), ballots_[cast], weights_[pos], st);
  }

  // Value of the game from `pos` with the position's ballot revealed as
  // `rev`; `st` is the tally/profile of everything cast before `pos`.
  bool eval(int pos, int rev, int64_t budget, int64_t count,
            const std::vector<int64_t>& st) {
    ++nodes_;
    std::string key;
    if (cfg_.memo) {
      key = pack_key(pos, rev, budget, count, st);
      auto it = memo_.find(key);
      if (it != memo_.end()) {
        ++memo_hits_;
        if (pos == 0) witness_move_ = it->second.second;
        return it->second.first;
      }
    }
    bool result = false;
    int winning_move = -1;
    const bool can_bribe = bribe_legal(pos, budget, count);
    for (int move = 0; move < move_count() && !result; ++move) {
      if (move > 0 && !can_bribe) break;
      const int cast = move == 0 ? rev : briber_idx_[move - 1];
      std::vector<int64_t> st2 = st;
      apply(pos, cast, st2);
      const int64_t budget2 = budget - (move > 0 && priced_ ? prices_[pos] : 0);
      const int64_t count2 = count - (move > 0 && counted_ ? 1 : 0);
      bool ok;
      if (pos + 1 == nsuffix_) {
        ok = leaf_goal(st2);
      } else {
        ok = true;
        for (int r : adversary_idx_) {
          if (!eval(pos + 1, r, budget2, count2, st2)) {
            ok = false;
            break;
          }
        }
      }
      if (ok) {
        result = true;
        winning_move = move;
      }
    }
    if (pos == 0) witness_move_ = winning_move;
    if (cfg_.memo) memo_.emplace(std::move(key), std::make_pair(result, winning_move));
    return result;
  }

  PolicyNode build(int pos, int rev, int64_t budget, int64_t count,
                   const std::vector<int64_t>& st) {
    const bool can_bribe = bribe_legal(pos, budget, count);
    for (int move = 0; move < move_count(); ++move) {
      if (move > 0 && !can_bribe) break;
      const int cast = move == 0 ? rev : briber_idx_[move - 1];
      std::vector<int64_t> st2 = st;
      apply(pos, cast, st2);
      const int64_t budget2 = budget - (move > 0 && priced_ ? prices_[pos] : 0);
      const int64_t count2 = count - (move > 0 && counted_ ? 1 : 0);
      bool ok;
      if (pos + 1 == nsuffix_) {
        ok = leaf_goal(st2);
      } else {
        ok = true;
        for (int r : adversary_idx_)
          if (!eval(pos + 1, r, budget2, count2, st2)) {
            ok = false;
            break;
          }
      }
      if (!ok) continue;
      PolicyNode node;
      node.revealed = ballots_[rev];
      node.move = move_action(move);
      if (pos + 1 == nsuffix_) {
        node.leaf = true;
        if (cfg_.generic_profile) {
          std::vector<WeightedVote> votes;
          for (size_t i = 0; i < st2.size(); ++i)
            if (st2[i] > 0) votes.push_back({ballots_[i], st2[i]});
          node.winners = winner_set(obs_.system, obs_.m(), votes);
        } else {
          node.winners = winners_from_scores(st2);
        }
      } else {
        for (int r : adversary_idx_)
          node.children.emplace(r, build(pos + 1, r, budget2, count2, st2));
      }
      return node;
    }
    throw ValidationError("", "no policy for losing position");
  }

  const Obs& obs_;
  OracleConfig cfg_;
  int nsuffix_ = 0;
  std::vector<Ballot> ballots_;
  std::vector<int> briber_idx_, adversary_idx_;
  std::vector<int64_t> weights_, prices_;
  std::vector<uint8_t> allowed_;
  bool priced_ = false, counted_ = false;
  int64_t budget0_ = -1, count0_ = -1;
  std::vector<int64_t> state0_;
  int revealed0_ = 0;
  int witness_move_ = -1;
  int64_t nodes_ = 0, memo_hits_ = 0;
  std::unordered_map<std::string, std::pair<bool, int>> memo_;
};

}  // namespace

Decision solve_exact(const Obs& obs, const OracleConfig& config) {
  Engine engine(obs, config);
  return engine.decision();
}

bool value_with_restriction(const Obs& obs,
                            const std::vector<int>& allowed_positions,
                            const OracleConfig& config) {
  OracleConfig cfg = config;
  cfg.allowed_positions = allowed_positions;
  Engine engine(obs, cfg);
  return engine.run();
}

PolicyNode extract_policy(const Obs& obs, int depth_cap,
                          const OracleConfig& config) {
  Engine engine(obs, config);
  return engine.policy(depth_cap);
}

}  // namespace ob
