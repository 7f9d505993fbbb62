#include "ob/elections.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace ob {

Ballot Ballot::make_order(std::vector<int> o) {
  Ballot b;
  b.kind = Kind::Order;
  b.order = std::move(o);
  return b;
}

Ballot Ballot::make_approval(std::vector<uint8_t> a) {
  Ballot b;
  b.kind = Kind::Approval;
  b.approval = std::move(a);
  return b;
}

int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw ValidationError("", "64-bit overflow in score arithmetic");
  return r;
}

void validate_system(const VotingSystem& system, int m) {
  if (m < 1) throw ValidationError("candidates", "need at least one candidate");
  if (system.kind == SystemKind::Scoring) {
    const auto& a = system.alpha;
    if (static_cast<int>(a.size()) != m)
      throw ValidationError("system.alpha", "length must equal candidate count");
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] < 0)
        throw ValidationError("system.alpha", "entries must be nonnegative");
      if (i > 0 && a[i] > a[i - 1])
        throw ValidationError("system.alpha", "entries must be nonincreasing");
    }
  } else if (!system.alpha.empty()) {
    throw ValidationError("system.alpha", "only scoring systems carry alpha");
  }
}

void validate_ballot(const VotingSystem& system, int m, const Ballot& ballot,
                     const std::string& where) {
  const bool want_approval = system.kind == SystemKind::Approval;
  if (want_approval != (ballot.kind == Ballot::Kind::Approval))
    throw ValidationError(where, "ballot kind does not match the voting system");
  if (ballot.kind == Ballot::Kind::Order) {
    if (static_cast<int>(ballot.order.size()) != m)
      throw ValidationError(where, "order ballot must rank every candidate");
    std::vector<uint8_t> seen(m, 0);
    for (int c : ballot.order) {
      if (c < 0 || c >= m || seen[c])
        throw ValidationError(where, "order ballot is not a permutation");
      seen[c] = 1;
    }
  } else {
    if (static_cast<int>(ballot.approval.size()) != m)
      throw ValidationError(where, "approval ballot has wrong length");
    for (uint8_t v : ballot.approval)
      if (v > 1) throw ValidationError(where, "approval entries must be 0 or 1");
  }
}

void add_scores(const VotingSystem& system, int m, const Ballot& ballot,
                int64_t weight, ScoreVector& scores) {
  switch (system.kind) {
    case SystemKind::Plurality:
      scores[ballot.order[0]] += weight;
      break;
    case SystemKind::Veto:
      for (int i = 0; i + 1 < m; ++i) scores[ballot.order[i]] += weight;
      break;
    case SystemKind::Approval:
      for (int c = 0; c < m; ++c)
        if (ballot.approval[c]) scores[c] += weight;
      break;
    case SystemKind::Scoring:
      for (int i = 0; i < m; ++i)
        scores[ballot.order[i]] += checked_mul(system.alpha[i], weight);
      break;
  }
}

ScoreVector score_vector(const VotingSystem& system, int m,
                         const std::vector<WeightedVote>& votes) {
  validate_system(system, m);
  ScoreVector scores(m, 0);
  for (size_t i = 0; i < votes.size(); ++i) {
    if (votes[i].weight < 0)
      throw ValidationError("votes[" + std::to_string(i) + "].weight",
                            "weight must be nonnegative");
    validate_ballot(system, m, votes[i].ballot,
                    "votes[" + std::to_string(i) + "].ballot");
    add_scores(system, m, votes[i].ballot, votes[i].weight, scores);
  }
  return scores;
}

std::vector<int> winners_from_scores(const ScoreVector& scores) {
  std::vector<int> winners;
  if (scores.empty()) return winners;
  const int64_t best = *std::max_element(scores.begin(), scores.end());
  for (size_t c = 0; c < scores.size(); ++c)
    if (scores[c] == best) winners.push_back(static_cast<int>(c));
  return winners;
}

std::vector<int> winner_set(const VotingSystem& system, int m,
                            const std::vector<WeightedVote>& votes) {
  return winners_from_scores(score_vector(system, m, votes));
}

std::vector<Ballot> enumerate_ballots(const VotingSystem& system, int m,
                                      int cap) {
  if (m < 1) throw ValidationError("", "need at least one candidate");
  if (m > cap)
    throw CapError("ballot enumeration capped at " + std::to_string(cap) +
                   " candidates, got " + std::to_string(m));
  std::vector<Ballot> out;
  if (system.kind == SystemKind::Approval) {
    out.reserve(size_t{1} << m);
    for (uint32_t v = 0; v < (uint32_t{1} << m); ++v) {
      std::vector<uint8_t> bits(m);
      for (int i = 0; i < m; ++i) bits[i] = (v >> (m - 1 - i)) & 1;
      out.push_back(Ballot::make_approval(std::move(bits)));
    }
  } else {
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      out.push_back(Ballot::make_order(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

DichotomyClass classify_scoring_vector(const std::vector<int64_t>& alpha) {
  if (alpha.empty()) throw ValidationError("alpha", "must be nonempty");
  VotingSystem s = VotingSystem::scoring(alpha);
  validate_system(s, static_cast<int>(alpha.size()));
  DichotomyClass out;
  if (alpha.front() == alpha.back()) {
    out.trivial = true;
  } else if (alpha.size() >= 2 && alpha[1] == alpha.back()) {
    out.plurality_like = true;
    out.top_bonus = alpha.front() - alpha.back();
  } else {
    out.general = true;
  }
  return out;
}

}  // namespace ob
