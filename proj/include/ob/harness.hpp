#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ob/obs.hpp"

namespace ob {

// One Cartesian block of instances: every listed dimension is swept
// (exhaustive mode) or sampled (random mode). d ranges over all candidates
// and sigma is the identity order; past bribed flags sweep all subsets,
// filtered by the budget invariant.
struct SliceSpec {
  VotingSystem system;
  int m = 2;
  std::vector<Goal> goals{Goal::Constructive, Goal::Destructive};
  bool priced = false;
  bool weighted = false;
  std::vector<int64_t> k_values{0};
  std::optional<int64_t> fixed_count;
  int past_max = 0;
  int future_max = 0;
  std::vector<int64_t> weights{1};  // per-voter options when weighted
  std::vector<int64_t> prices{1};   // per-voter options when priced
  bool random = false;
  uint64_t seed = 0;
  int64_t count = 0;  // random mode sample size
};

struct FamilySpec {
  std::string name;
  int64_t cap = 10'000'000;
  std::vector<SliceSpec> slices;
};

FamilySpec parse_family(const std::string& text);
std::string serialize_family(const FamilySpec& family);

// Upper bound on the instance count (before validity filtering); checked
// against the family cap before any generation starts.
int64_t family_cardinality(const FamilySpec& family);

struct GenStats {
  int64_t emitted = 0;
  int64_t filtered = 0;  // skipped over-budget bribed-flag combinations
};

// Deterministic order; every emitted instance passes validation.
GenStats for_each_instance(const FamilySpec& family,
                           const std::function<void(const Obs&)>& fn);

using Solver = std::function<Decision(const Obs&)>;

// "oracle", "oracle-nomemo", "oracle-generic", "fast"
Solver solver_by_name(const std::string& name);
std::vector<std::string> solver_names();

struct Mismatch {
  std::string digest;
  std::string instance_text;
  bool answer_a = false;
  bool answer_b = false;
};

struct CheckReport {
  std::string family_name;
  std::string family_digest;
  std::string algorithm_a, algorithm_b;
  int64_t instances = 0;
  int64_t filtered = 0;
  std::vector<Mismatch> mismatches;                  // sorted by digest
  std::vector<std::pair<std::string, std::string>> errors;  // digest, message
  std::map<std::string, int64_t> stats;
  std::optional<int64_t> wall_ms;  // only when timing was requested
  bool pass() const { return mismatches.empty(); }
};

struct CheckOptions {
  int threads = 0;      // 0: hardware concurrency
  bool timing = false;  // include wall_ms (breaks byte-determinism)
};

CheckReport cross_check(const FamilySpec& family, const Solver& a,
                        const Solver& b, const std::string& name_a,
                        const std::string& name_b,
                        const CheckOptions& options = {});

std::string report_to_json(const CheckReport& report);

uint64_t fnv1a64(const std::string& data);
std::string instance_digest(const Obs& obs);

}  // namespace ob
