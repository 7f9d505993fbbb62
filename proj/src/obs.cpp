#include "ob/obs.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "json.hpp"

namespace ob {

using nlohmann::json;

namespace {

constexpr int64_t kMagnitudeLimit = int64_t{1} << 48;

std::vector<uint8_t> closure(const std::vector<int>& sigma, int d, bool upward) {
  const int m = static_cast<int>(sigma.size());
  std::vector<uint8_t> out(m, 0);
  bool seen_d = false;
  for (int i = 0; i < m; ++i) {
    const int c = sigma[i];
    if (upward) {
      out[c] = 1;
      if (c == d) {
        seen_d = true;
        break;
      }
    } else {
      if (c == d) seen_d = true;
      out[c] = seen_d ? 1 : 0;
    }
  }
  if (!seen_d) throw ValidationError("d", "not listed in sigma");
  return out;
}

}  // namespace

TargetSets target_set(const std::vector<int>& sigma, int d, Goal goal) {
  TargetSets out;
  out.goal_set = goal == Goal::Constructive ? closure(sigma, d, true)
                                            : closure(sigma, d, false);
  out.complement.resize(out.goal_set.size());
  for (size_t c = 0; c < out.goal_set.size(); ++c)
    out.complement[c] = out.goal_set[c] ? 0 : 1;
  return out;
}

std::vector<uint8_t> desired_candidates(const std::vector<int>& sigma, int d,
                                        Goal goal) {
  TargetSets t = target_set(sigma, d, goal);
  return goal == Goal::Constructive ? t.goal_set : t.complement;
}

bool goal_met(const std::vector<int>& winners, const std::vector<int>& sigma,
              int d, Goal goal) {
  TargetSets t = target_set(sigma, d, goal);
  bool hit = false;
  for (int w : winners)
    if (t.goal_set[w]) hit = true;
  return goal == Goal::Constructive ? hit : !hit;
}

Resources remaining_resources(const Obs& obs) {
  int64_t bribed_count = 0;
  int64_t bribed_price = 0;
  for (const auto& p : obs.past) {
    if (!p.bribed) continue;
    ++bribed_count;
    if (obs.priced) bribed_price += p.price.value_or(0);
  }
  Resources out;
  if (obs.priced) {
    out.budget_left = obs.k - bribed_price;
    if (*out.budget_left < 0)
      throw ValidationError("past", "past bribes already exceed the budget");
    if (obs.fixed_count) {
      out.count_left = *obs.fixed_count - bribed_count;
      if (*out.count_left < 0)
        throw ValidationError("past", "past bribes already exceed the bribe count");
    }
  } else {
    int64_t left = obs.k - bribed_count;
    if (obs.fixed_count) left = std::min(left, *obs.fixed_count - bribed_count);
    if (left < 0)
      throw ValidationError("past", "past bribes already exceed the bribe limit");
    out.count_left = left;
  }
  return out;
}

void validate(const Obs& obs) {
  const int m = obs.m();
  validate_system(obs.system, m);
  {
    std::set<std::string> seen;
    for (int c = 0; c < m; ++c) {
      if (obs.candidates[c].empty())
        throw ValidationError("candidates[" + std::to_string(c) + "]",
                              "empty candidate name");
      if (!seen.insert(obs.candidates[c]).second)
        throw ValidationError("candidates[" + std::to_string(c) + "]",
                              "duplicate candidate name");
    }
  }
  {
    if (static_cast<int>(obs.sigma.size()) != m)
      throw ValidationError("sigma", "must rank every candidate");
    std::vector<uint8_t> seen(m, 0);
    for (int c : obs.sigma) {
      if (c < 0 || c >= m || seen[c])
        throw ValidationError("sigma", "not a permutation of the candidates");
      seen[c] = 1;
    }
  }
  if (obs.d < 0 || obs.d >= m)
    throw ValidationError("d", "unknown candidate");
  if (obs.k < 0) throw ValidationError("k", "must be nonnegative");
  if (obs.k > kMagnitudeLimit)
    throw ValidationError("k", "exceeds the 2^48 magnitude limit");
  if (obs.fixed_count && *obs.fixed_count < 0)
    throw ValidationError("fixed_count", "must be nonnegative");

  int64_t total_weight = 0;
  int64_t total_price = 0;
  std::set<std::string> names;
  auto check_voter = [&](const std::string& where, const std::string& name,
                         const std::optional<int64_t>& price, int64_t weight) {
    if (name.empty()) throw ValidationError(where + ".name", "empty voter name");
    if (!names.insert(name).second)
      throw ValidationError(where + ".name", "duplicate voter name");
    if (obs.priced != price.has_value())
      throw ValidationError(where + ".price",
                            obs.priced ? "priced instance requires a price"
                                       : "unpriced instance must omit prices");
    if (price) {
      if (*price < 0) throw ValidationError(where + ".price", "must be nonnegative");
      total_price += *price;
    }
    if (weight < 0) throw ValidationError(where + ".weight", "must be nonnegative");
    if (!obs.weighted && weight != 1)
      throw ValidationError(where + ".weight",
                            "unweighted instance requires unit weights");
    total_weight += weight;
  };

  for (size_t i = 0; i < obs.past.size(); ++i) {
    const auto& p = obs.past[i];
    const std::string where = "past[" + std::to_string(i) + "]";
    check_voter(where, p.name, p.price, p.weight);
    validate_ballot(obs.system, m, p.ballot, where + ".ballot");
  }
  check_voter("current", obs.current.name, obs.current.price, obs.current.weight);
  validate_ballot(obs.system, m, obs.current.ballot, "current.ballot");
  for (size_t i = 0; i < obs.future.size(); ++i) {
    const auto& f = obs.future[i];
    check_voter("future[" + std::to_string(i) + "]", f.name, f.price, f.weight);
  }
  if (total_weight > kMagnitudeLimit)
    throw ValidationError("", "total weight exceeds the 2^48 magnitude limit");
  if (total_price > kMagnitudeLimit)
    throw ValidationError("", "total price exceeds the 2^48 magnitude limit");
  if (obs.system.kind == SystemKind::Scoring && !obs.system.alpha.empty())
    checked_mul(obs.system.alpha.front(), std::max<int64_t>(total_weight, 1));
  remaining_resources(obs);  // enforces the budget invariant
}

namespace {

const json& field(const json& j, const std::string& path, const char* key) {
  if (!j.is_object())
    throw ValidationError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end())
    throw ValidationError(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

std::string sub(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

int64_t as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer())
    throw ValidationError(path, "expected an integer");
  return j.get<int64_t>();
}

std::string as_str(const json& j, const std::string& path) {
  if (!j.is_string()) throw ValidationError(path, "expected a string");
  return j.get<std::string>();
}

bool as_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw ValidationError(path, "expected a boolean");
  return j.get<bool>();
}

int candidate_index(const std::unordered_map<std::string, int>& by_name,
                    const json& j, const std::string& path) {
  const std::string name = as_str(j, path);
  auto it = by_name.find(name);
  if (it == by_name.end())
    throw ValidationError(path, "unknown candidate '" + name + "'");
  return it->second;
}

Ballot parse_ballot(const json& j, const VotingSystem& system, int m,
                    const std::unordered_map<std::string, int>& by_name,
                    const std::string& path) {
  if (!j.is_array()) throw ValidationError(path, "expected an array");
  Ballot b;
  if (system.kind == SystemKind::Approval) {
    std::vector<uint8_t> bits;
    for (size_t i = 0; i < j.size(); ++i) {
      int64_t v = as_int(j[i], path + "[" + std::to_string(i) + "]");
      if (v != 0 && v != 1)
        throw ValidationError(path + "[" + std::to_string(i) + "]",
                              "approval entries must be 0 or 1");
      bits.push_back(static_cast<uint8_t>(v));
    }
    b = Ballot::make_approval(std::move(bits));
  } else {
    std::vector<int> order;
    for (size_t i = 0; i < j.size(); ++i)
      order.push_back(
          candidate_index(by_name, j[i], path + "[" + std::to_string(i) + "]"));
    b = Ballot::make_order(std::move(order));
  }
  validate_ballot(system, m, b, path);
  return b;
}

json ballot_to_json(const Ballot& b, const Obs& obs) {
  json out = json::array();
  if (b.kind == Ballot::Kind::Approval) {
    for (uint8_t v : b.approval) out.push_back(static_cast<int>(v));
  } else {
    for (int c : b.order) out.push_back(obs.candidates[c]);
  }
  return out;
}

std::optional<int64_t> opt_price(const json& j, bool priced,
                                 const std::string& path) {
  if (!j.contains("price")) return std::nullopt;
  if (!priced)
    throw ValidationError(sub(path, "price"),
                          "unpriced instance must omit prices");
  return as_int(j["price"], sub(path, "price"));
}

int64_t opt_weight(const json& j, const std::string& path) {
  if (!j.contains("weight")) return 1;
  return as_int(j["weight"], sub(path, "weight"));
}

}  // namespace

Obs parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError("", std::string("invalid JSON: ") + e.what());
  }
  if (j.contains("format_version") &&
      as_int(j["format_version"], "format_version") != 1)
    throw ValidationError("format_version", "unsupported version");

  Obs obs;
  {
    const json& sys = field(j, "", "system");
    const std::string kind = as_str(field(sys, "system", "kind"), "system.kind");
    if (kind == "plurality") obs.system = VotingSystem::plurality();
    else if (kind == "veto") obs.system = VotingSystem::veto();
    else if (kind == "approval") obs.system = VotingSystem::approval();
    else if (kind == "scoring") {
      const json& alpha = field(sys, "system", "alpha");
      if (!alpha.is_array())
        throw ValidationError("system.alpha", "expected an array");
      std::vector<int64_t> a;
      for (size_t i = 0; i < alpha.size(); ++i)
        a.push_back(as_int(alpha[i], "system.alpha[" + std::to_string(i) + "]"));
      obs.system = VotingSystem::scoring(std::move(a));
    } else {
      throw ValidationError("system.kind", "unknown system '" + kind + "'");
    }
  }

  const json& cands = field(j, "", "candidates");
  if (!cands.is_array() || cands.empty())
    throw ValidationError("candidates", "expected a nonempty array");
  std::unordered_map<std::string, int> by_name;
  for (size_t i = 0; i < cands.size(); ++i) {
    std::string name = as_str(cands[i], "candidates[" + std::to_string(i) + "]");
    if (!by_name.emplace(name, static_cast<int>(i)).second)
      throw ValidationError("candidates[" + std::to_string(i) + "]",
                            "duplicate candidate name");
    obs.candidates.push_back(std::move(name));
  }
  const int m = obs.m();

  {
    const std::string goal = as_str(field(j, "", "goal"), "goal");
    if (goal == "constructive") obs.goal = Goal::Constructive;
    else if (goal == "destructive") obs.goal = Goal::Destructive;
    else throw ValidationError("goal", "must be constructive or destructive");
  }
  obs.priced = as_bool(field(j, "", "priced"), "priced");
  obs.weighted = as_bool(field(j, "", "weighted"), "weighted");
  obs.k = as_int(field(j, "", "k"), "k");
  if (j.contains("fixed_count"))
    obs.fixed_count = as_int(j["fixed_count"], "fixed_count");

  {
    const json& sigma = field(j, "", "sigma");
    if (!sigma.is_array()) throw ValidationError("sigma", "expected an array");
    for (size_t i = 0; i < sigma.size(); ++i)
      obs.sigma.push_back(candidate_index(
          by_name, sigma[i], "sigma[" + std::to_string(i) + "]"));
  }
  obs.d = candidate_index(by_name, field(j, "", "d"), "d");

  {
    const json& past = field(j, "", "past");
    if (!past.is_array()) throw ValidationError("past", "expected an array");
    for (size_t i = 0; i < past.size(); ++i) {
      const std::string where = "past[" + std::to_string(i) + "]";
      const json& pj = past[i];
      PastVoter p;
      p.name = as_str(field(pj, where, "name"), sub(where, "name"));
      p.price = opt_price(pj, obs.priced, where);
      p.weight = opt_weight(pj, where);
      p.ballot = parse_ballot(field(pj, where, "ballot"), obs.system, m, by_name,
                              sub(where, "ballot"));
      p.bribed = as_bool(field(pj, where, "bribed"), sub(where, "bribed"));
      obs.past.push_back(std::move(p));
    }
  }
  {
    const json& cur = field(j, "", "current");
    obs.current.name = as_str(field(cur, "current", "name"), "current.name");
    obs.current.price = opt_price(cur, obs.priced, "current");
    obs.current.weight = opt_weight(cur, "current");
    obs.current.ballot = parse_ballot(field(cur, "current", "ballot"), obs.system,
                                      m, by_name, "current.ballot");
  }
  {
    const json& fut = field(j, "", "future");
    if (!fut.is_array()) throw ValidationError("future", "expected an array");
    for (size_t i = 0; i < fut.size(); ++i) {
      const std::string where = "future[" + std::to_string(i) + "]";
      const json& fj = fut[i];
      FutureVoter f;
      f.name = as_str(field(fj, where, "name"), sub(where, "name"));
      f.price = opt_price(fj, obs.priced, where);
      f.weight = opt_weight(fj, where);
      obs.future.push_back(std::move(f));
    }
  }

  validate(obs);
  return obs;
}

std::string serialize_instance(const Obs& obs) {
  json j;
  j["format_version"] = 1;
  json sys;
  switch (obs.system.kind) {
    case SystemKind::Plurality: sys["kind"] = "plurality"; break;
    case SystemKind::Veto: sys["kind"] = "veto"; break;
    case SystemKind::Approval: sys["kind"] = "approval"; break;
    case SystemKind::Scoring:
      sys["kind"] = "scoring";
      sys["alpha"] = obs.system.alpha;
      break;
  }
  j["system"] = sys;
  j["candidates"] = obs.candidates;
  j["goal"] = obs.goal == Goal::Constructive ? "constructive" : "destructive";
  j["priced"] = obs.priced;
  j["weighted"] = obs.weighted;
  j["k"] = obs.k;
  if (obs.fixed_count) j["fixed_count"] = *obs.fixed_count;
  json sigma = json::array();
  for (int c : obs.sigma) sigma.push_back(obs.candidates[c]);
  j["sigma"] = sigma;
  j["d"] = obs.candidates[obs.d];

  auto voter_common = [&](json& v, const std::string& name,
                          const std::optional<int64_t>& price, int64_t weight) {
    v["name"] = name;
    if (obs.priced) v["price"] = price.value_or(0);
    if (obs.weighted) v["weight"] = weight;
  };
  json past = json::array();
  for (const auto& p : obs.past) {
    json v;
    voter_common(v, p.name, p.price, p.weight);
    v["ballot"] = ballot_to_json(p.ballot, obs);
    v["bribed"] = p.bribed;
    past.push_back(std::move(v));
  }
  j["past"] = past;
  {
    json v;
    voter_common(v, obs.current.name, obs.current.price, obs.current.weight);
    v["ballot"] = ballot_to_json(obs.current.ballot, obs);
    j["current"] = v;
  }
  json fut = json::array();
  for (const auto& f : obs.future) {
    json v;
    voter_common(v, f.name, f.price, f.weight);
    fut.push_back(std::move(v));
  }
  j["future"] = fut;
  return j.dump(2) + "\n";
}

std::string serialize_decision(const Decision& decision, const Obs& context) {
  json j;
  j["format_version"] = 1;
  j["answer"] = decision.answer;
  json action;
  action["bribe"] = decision.action_at_u.bribe;
  action["ballot"] = decision.action_at_u.ballot
                         ? ballot_to_json(*decision.action_at_u.ballot, context)
                         : json(nullptr);
  j["action"] = action;
  j["algorithm"] = decision.algorithm;
  j["stats"] = decision.stats;
  return j.dump(2) + "\n";
}

}  // namespace ob
