#include "ob/harness.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <mutex>
#include <random>
#include <thread>

#include "json.hpp"
#include "ob/elections.hpp"
#include "ob/oracle.hpp"
#include "ob/polysolve.hpp"

namespace ob {

using nlohmann::json;

uint64_t fnv1a64(const std::string& data) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string instance_digest(const Obs& obs) {
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx",
           static_cast<unsigned long long>(fnv1a64(serialize_instance(obs))));
  return buf;
}

namespace {

const std::vector<std::string> kCandidateNames{"a", "b", "c", "d", "e", "f"};

VotingSystem system_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "plurality") return VotingSystem::plurality();
  if (kind == "veto") return VotingSystem::veto();
  if (kind == "approval") return VotingSystem::approval();
  if (kind == "scoring")
    return VotingSystem::scoring(j.at("alpha").get<std::vector<int64_t>>());
  throw ValidationError("system.kind", "unknown system '" + kind + "'");
}

json system_to_json(const VotingSystem& s) {
  json j;
  switch (s.kind) {
    case SystemKind::Plurality: j["kind"] = "plurality"; break;
    case SystemKind::Veto: j["kind"] = "veto"; break;
    case SystemKind::Approval: j["kind"] = "approval"; break;
    case SystemKind::Scoring:
      j["kind"] = "scoring";
      j["alpha"] = s.alpha;
      break;
  }
  return j;
}

void validate_slice(const SliceSpec& s) {
  if (s.m < 1 || s.m > static_cast<int>(kCandidateNames.size()))
    throw ValidationError("slice.m", "unsupported candidate count");
  validate_system(s.system, s.m);
  if (s.goals.empty()) throw ValidationError("slice.goals", "must be nonempty");
  if (s.k_values.empty()) throw ValidationError("slice.k", "must be nonempty");
  if (!s.weighted && !(s.weights == std::vector<int64_t>{1}))
    throw ValidationError("slice.weights",
                          "unweighted slices must use weights [1]");
  if (s.weights.empty() || s.prices.empty())
    throw ValidationError("slice", "weights/prices must be nonempty");
  if (s.random && s.count <= 0)
    throw ValidationError("slice.count", "random mode needs a sample count");
}

}  // namespace

FamilySpec parse_family(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError("", std::string("invalid JSON: ") + e.what());
  }
  if (j.value("format_version", 1) != 1)
    throw ValidationError("format_version", "unsupported version");
  FamilySpec fam;
  fam.name = j.value("name", "family");
  fam.cap = j.value("cap", int64_t{10'000'000});
  for (const auto& sj : j.at("slices")) {
    SliceSpec s;
    s.system = system_from_json(sj.at("system"));
    s.m = sj.at("m").get<int>();
    if (sj.contains("goals")) {
      s.goals.clear();
      for (const auto& g : sj["goals"]) {
        const std::string name = g.get<std::string>();
        if (name == "constructive") s.goals.push_back(Goal::Constructive);
        else if (name == "destructive") s.goals.push_back(Goal::Destructive);
        else throw ValidationError("slice.goals", "unknown goal '" + name + "'");
      }
    }
    s.priced = sj.value("priced", false);
    s.weighted = sj.value("weighted", false);
    if (sj.contains("k")) s.k_values = sj["k"].get<std::vector<int64_t>>();
    if (sj.contains("fixed_count") && !sj["fixed_count"].is_null())
      s.fixed_count = sj["fixed_count"].get<int64_t>();
    s.past_max = sj.value("past_max", 0);
    s.future_max = sj.value("future_max", 0);
    if (sj.contains("weights"))
      s.weights = sj["weights"].get<std::vector<int64_t>>();
    if (sj.contains("prices"))
      s.prices = sj["prices"].get<std::vector<int64_t>>();
    const std::string mode = sj.value("mode", "exhaustive");
    if (mode == "random") {
      s.random = true;
      s.seed = sj.at("seed").get<uint64_t>();
      s.count = sj.at("count").get<int64_t>();
    } else if (mode != "exhaustive") {
      throw ValidationError("slice.mode", "unknown mode '" + mode + "'");
    }
    validate_slice(s);
    fam.slices.push_back(std::move(s));
  }
  return fam;
}

std::string serialize_family(const FamilySpec& family) {
  json j;
  j["format_version"] = 1;
  j["name"] = family.name;
  j["cap"] = family.cap;
  json slices = json::array();
  for (const auto& s : family.slices) {
    json sj;
    sj["system"] = system_to_json(s.system);
    sj["m"] = s.m;
    json goals = json::array();
    for (Goal g : s.goals)
      goals.push_back(g == Goal::Constructive ? "constructive" : "destructive");
    sj["goals"] = goals;
    sj["priced"] = s.priced;
    sj["weighted"] = s.weighted;
    sj["k"] = s.k_values;
    if (s.fixed_count) sj["fixed_count"] = *s.fixed_count;
    sj["past_max"] = s.past_max;
    sj["future_max"] = s.future_max;
    sj["weights"] = s.weights;
    sj["prices"] = s.prices;
    if (s.random) {
      sj["mode"] = "random";
      sj["seed"] = s.seed;
      sj["count"] = s.count;
    } else {
      sj["mode"] = "exhaustive";
    }
    slices.push_back(std::move(sj));
  }
  j["slices"] = slices;
  return j.dump(2) + "\n";
}

namespace {

struct SliceDims {
  int64_t ballots = 0;        // ballot options per cast vote
  int64_t wdim = 1, pdim = 1; // weight/price options per voter
  std::vector<Ballot> ballot_list;
};

SliceDims slice_dims(const SliceSpec& s) {
  SliceDims d;
  d.ballot_list = enumerate_ballots(s.system, s.m, 6);
  d.ballots = static_cast<int64_t>(d.ballot_list.size());
  if (s.weighted) d.wdim = static_cast<int64_t>(s.weights.size());
  if (s.priced) d.pdim = static_cast<int64_t>(s.prices.size());
  return d;
}

int64_t slice_cardinality(const SliceSpec& s) {
  if (s.random) return s.count;
  SliceDims d = slice_dims(s);
  const int64_t past_voter = d.ballots * d.wdim * d.pdim * 2;  // x bribed flag
  const int64_t u_options = d.ballots * d.wdim * d.pdim;
  const int64_t future_voter = d.wdim * d.pdim;
  auto geom = [](int64_t base, int max_count) {
    int64_t total = 0, term = 1;
    for (int i = 0; i <= max_count; ++i) {
      total += term;
      term *= base;
    }
    return total;
  };
  return static_cast<int64_t>(s.goals.size()) *
         static_cast<int64_t>(s.k_values.size()) * s.m * u_options *
         geom(past_voter, s.past_max) * geom(future_voter, s.future_max);
}

struct SliceGen {
  const SliceSpec& s;
  const SliceDims dims;
  const std::function<void(const Obs&)>& fn;
  GenStats& stats;

  Obs base_instance(Goal goal, int64_t k, int d) const {
    Obs obs;
    obs.system = s.system;
    obs.candidates.assign(kCandidateNames.begin(), kCandidateNames.begin() + s.m);
    obs.goal = goal;
    obs.priced = s.priced;
    obs.weighted = s.weighted;
    obs.k = k;
    obs.fixed_count = s.fixed_count;
    obs.sigma.resize(s.m);
    for (int i = 0; i < s.m; ++i) obs.sigma[i] = i;
    obs.d = d;
    return obs;
  }

  void emit(Obs& obs) const {
    try {
      validate(obs);
    } catch (const ValidationError&) {
      ++stats.filtered;  // over-budget bribed-flag combination
      return;
    }
    ++stats.emitted;
    fn(obs);
  }

  // Odometer over per-voter (ballot, weight, price) choices.
  bool advance(std::vector<std::array<int, 3>>& cfg) const {
    for (auto& v : cfg) {
      if (++v[0] < dims.ballots) return true;
      v[0] = 0;
      if (s.weighted && ++v[1] < static_cast<int>(s.weights.size())) return true;
      v[1] = 0;
      if (s.priced && ++v[2] < static_cast<int>(s.prices.size())) return true;
      v[2] = 0;
    }
    return false;
  }

  void fill_voter(const std::array<int, 3>& cfg, std::optional<int64_t>& price,
                  int64_t& weight) const {
    weight = s.weighted ? s.weights[cfg[1]] : 1;
    if (s.priced) price = s.prices[cfg[2]];
  }

  void run_exhaustive() const {
    for (Goal goal : s.goals)
      for (int64_t k : s.k_values)
        for (int d = 0; d < s.m; ++d)
          for (int pc = 0; pc <= s.past_max; ++pc) {
            std::vector<std::array<int, 3>> past_cfg(pc, {0, 0, 0});
            do {
              for (uint32_t mask = 0; mask < (uint32_t{1} << pc); ++mask) {
                std::vector<std::array<int, 3>> u_cfg(1, {0, 0, 0});
                do {
                  for (int fc = 0; fc <= s.future_max; ++fc) {
                    std::vector<std::array<int, 3>> fut_cfg(fc, {0, 0, 0});
                    do {
                      build(goal, k, d, past_cfg, mask, u_cfg[0], fut_cfg);
                    } while (advance_future(fut_cfg));
                  }
                } while (advance(u_cfg));
              }
            } while (advance(past_cfg));
          }
  }

  // Future voters carry no ballot, so only weight/price turn over.
  bool advance_future(std::vector<std::array<int, 3>>& cfg) const {
    for (auto& v : cfg) {
      if (s.weighted && ++v[1] < static_cast<int>(s.weights.size())) return true;
      v[1] = 0;
      if (s.priced && ++v[2] < static_cast<int>(s.prices.size())) return true;
      v[2] = 0;
    }
    return false;
  }

  void build(Goal goal, int64_t k, int d,
             const std::vector<std::array<int, 3>>& past_cfg, uint32_t mask,
             const std::array<int, 3>& u_cfg,
             const std::vector<std::array<int, 3>>& fut_cfg) const {
    Obs obs = base_instance(goal, k, d);
    for (size_t i = 0; i < past_cfg.size(); ++i) {
      PastVoter p;
      p.name = "p" + std::to_string(i + 1);
      p.ballot = dims.ballot_list[past_cfg[i][0]];
      fill_voter(past_cfg[i], p.price, p.weight);
      p.bribed = (mask >> i) & 1;
      obs.past.push_back(std::move(p));
    }
    obs.current.name = "u";
    obs.current.ballot = dims.ballot_list[u_cfg[0]];
    fill_voter(u_cfg, obs.current.price, obs.current.weight);
    for (size_t i = 0; i < fut_cfg.size(); ++i) {
      FutureVoter f;
      f.name = "f" + std::to_string(i + 1);
      fill_voter(fut_cfg[i], f.price, f.weight);
      obs.future.push_back(std::move(f));
    }
    emit(obs);
  }

  void run_random() const {
    std::mt19937_64 rng(s.seed);
    auto pick = [&rng](int64_t n) {
      return static_cast<int64_t>(rng() % static_cast<uint64_t>(n));
    };
    for (int64_t i = 0; i < s.count; ++i) {
      for (int attempt = 0;; ++attempt) {
        const Goal goal = s.goals[pick(s.goals.size())];
        const int64_t k = s.k_values[pick(s.k_values.size())];
        const int d = static_cast<int>(pick(s.m));
        const int pc = static_cast<int>(pick(s.past_max + 1));
        const int fc = static_cast<int>(pick(s.future_max + 1));
        std::vector<std::array<int, 3>> past_cfg, fut_cfg;
        uint32_t mask = 0;
        for (int v = 0; v < pc; ++v) {
          past_cfg.push_back({static_cast<int>(pick(dims.ballots)),
                              static_cast<int>(pick(s.weights.size())),
                              static_cast<int>(pick(s.prices.size()))});
          // bias toward few past bribes so the budget filter rarely trips
          if (attempt < 100 ? pick(4) == 0 : false) mask |= uint32_t{1} << v;
        }
        std::array<int, 3> u_cfg{static_cast<int>(pick(dims.ballots)),
                                 static_cast<int>(pick(s.weights.size())),
                                 static_cast<int>(pick(s.prices.size()))};
        for (int v = 0; v < fc; ++v)
          fut_cfg.push_back({0, static_cast<int>(pick(s.weights.size())),
                             static_cast<int>(pick(s.prices.size()))});
        Obs obs = base_instance(goal, k, d);
        GenStats before = stats;
        (void)before;
        try {
          for (size_t v = 0; v < past_cfg.size(); ++v) {
            PastVoter p;
            p.name = "p" + std::to_string(v + 1);
            p.ballot = dims.ballot_list[past_cfg[v][0]];
            fill_voter(past_cfg[v], p.price, p.weight);
            p.bribed = (mask >> v) & 1;
            obs.past.push_back(std::move(p));
          }
          obs.current.name = "u";
          obs.current.ballot = dims.ballot_list[u_cfg[0]];
          fill_voter(u_cfg, obs.current.price, obs.current.weight);
          for (size_t v = 0; v < fut_cfg.size(); ++v) {
            FutureVoter f;
            f.name = "f" + std::to_string(v + 1);
            fill_voter(fut_cfg[v], f.price, f.weight);
            obs.future.push_back(std::move(f));
          }
          validate(obs);
        } catch (const ValidationError&) {
          ++stats.filtered;
          continue;  // resample
        }
        ++stats.emitted;
        fn(obs);
        break;
      }
    }
  }
};

}  // namespace

int64_t family_cardinality(const FamilySpec& family) {
  int64_t total = 0;
  for (const auto& s : family.slices) {
    total += slice_cardinality(s);
    if (total > family.cap)
      throw CapError("family cardinality exceeds the cap of " +
                     std::to_string(family.cap));
  }
  return total;
}

GenStats for_each_instance(const FamilySpec& family,
                           const std::function<void(const Obs&)>& fn) {
  family_cardinality(family);  // cap check up front
  GenStats stats;
  for (const auto& s : family.slices) {
    SliceGen gen{s, slice_dims(s), fn, stats};
    if (s.random)
      gen.run_random();
    else
      gen.run_exhaustive();
  }
  return stats;
}

Solver solver_by_name(const std::string& name) {
  if (name == "oracle")
    return [](const Obs& o) { return solve_exact(o); };
  if (name == "oracle-nomemo")
    return [](const Obs& o) {
      OracleConfig cfg;
      cfg.memo = false;
      Decision d = solve_exact(o, cfg);
      d.algorithm = "oracle-nomemo";
      return d;
    };
  if (name == "oracle-generic")
    return [](const Obs& o) {
      OracleConfig cfg;
      cfg.generic_profile = true;
      Decision d = solve_exact(o, cfg);
      d.algorithm = "oracle-generic";
      return d;
    };
  if (name == "fast")
    return [](const Obs& o) { return solve_fast(o); };
  throw ValidationError("algorithm", "unknown solver '" + name + "'");
}

std::vector<std::string> solver_names() {
  return {"oracle", "oracle-nomemo", "oracle-generic", "fast"};
}

namespace {

struct WorkerResult {
  int64_t instances = 0;
  std::vector<Mismatch> mismatches;
  std::vector<std::pair<std::string, std::string>> errors;
  std::map<std::string, int64_t> stats;
};

}  // namespace

CheckReport cross_check(const FamilySpec& family, const Solver& a,
                        const Solver& b, const std::string& name_a,
                        const std::string& name_b, const CheckOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  CheckReport report;
  report.family_name = family.name;
  {
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx",
             static_cast<unsigned long long>(fnv1a64(serialize_family(family))));
    report.family_digest = buf;
  }
  report.algorithm_a = name_a;
  report.algorithm_b = name_b;

  const int nthreads = options.threads > 0
                           ? options.threads
                           : std::max(1u, std::thread::hardware_concurrency());

  std::mutex mu;
  std::condition_variable cv_push, cv_pop;
  std::vector<std::vector<Obs>> queue;
  bool done = false;
  constexpr size_t kBatch = 64, kQueueMax = 128;

  auto worker_fn = [&](WorkerResult& result) {
    for (;;) {
      std::vector<Obs> batch;
      {
        std::unique_lock<std::mutex> lock(mu);
        cv_pop.wait(lock, [&] { return !queue.empty() || done; });
        if (queue.empty()) return;
        batch = std::move(queue.back());
        queue.pop_back();
        cv_push.notify_one();
      }
      for (const Obs& obs : batch) {
        ++result.instances;
        try {
          Decision da = a(obs);
          Decision db = b(obs);
          for (const auto& [key, v] : da.stats) result.stats["a." + key] += v;
          for (const auto& [key, v] : db.stats) result.stats["b." + key] += v;
          if (da.answer != db.answer)
            result.mismatches.push_back({instance_digest(obs),
                                         serialize_instance(obs), da.answer,
                                         db.answer});
        } catch (const CapError& e) {
          result.errors.push_back({instance_digest(obs), e.what()});
        } catch (const ValidationError& e) {
          result.errors.push_back({instance_digest(obs), e.what()});
        }
      }
    }
  };

  std::vector<WorkerResult> results(nthreads);
  std::vector<std::thread> workers;
  for (int t = 0; t < nthreads; ++t)
    workers.emplace_back([&, t] { worker_fn(results[t]); });

  std::vector<Obs> batch;
  batch.reserve(kBatch);
  GenStats gen_stats = for_each_instance(family, [&](const Obs& obs) {
    batch.push_back(obs);
    if (batch.size() >= kBatch) {
      std::unique_lock<std::mutex> lock(mu);
      cv_push.wait(lock, [&] { return queue.size() < kQueueMax; });
      queue.push_back(std::move(batch));
      cv_pop.notify_one();
      batch.clear();
      batch.reserve(kBatch);
    }
  });
  {
    std::unique_lock<std::mutex> lock(mu);
    if (!batch.empty()) queue.push_back(std::move(batch));
    done = true;
    cv_pop.notify_all();
  }
  for (auto& w : workers) w.join();

  report.filtered = gen_stats.filtered;
  for (const auto& r : results) {
    report.instances += r.instances;
    report.mismatches.insert(report.mismatches.end(), r.mismatches.begin(),
                             r.mismatches.end());
    report.errors.insert(report.errors.end(), r.errors.begin(), r.errors.end());
    for (const auto& [key, v] : r.stats) report.stats[key] += v;
  }
  std::sort(report.mismatches.begin(), report.mismatches.end(),
            [](const Mismatch& x, const Mismatch& y) { return x.digest < y.digest; });
  std::sort(report.errors.begin(), report.errors.end());
  if (options.timing)
    report.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return report;
}

std::string report_to_json(const CheckReport& report) {
  json j;
  j["format_version"] = 1;
  j["family"] = report.family_name;
  j["family_digest"] = report.family_digest;
  j["algorithm_a"] = report.algorithm_a;
  j["algorithm_b"] = report.algorithm_b;
  j["instances"] = report.instances;
  j["filtered"] = report.filtered;
  json mism = json::array();
  for (const auto& m : report.mismatches) {
    json e;
    e["digest"] = m.digest;
    e["answer_a"] = m.answer_a;
    e["answer_b"] = m.answer_b;
    e["instance"] = json::parse(m.instance_text);
    mism.push_back(std::move(e));
  }
  j["mismatches"] = mism;
  json errs = json::array();
  for (const auto& [digest, message] : report.errors) {
    json e;
    e["digest"] = digest;
    e["error"] = message;
    errs.push_back(std::move(e));
  }
  j["errors"] = errs;
  j["stats"] = report.stats;
  if (report.wall_ms) j["wall_ms"] = *report.wall_ms;
  return j.dump(2) + "\n";
}

}  // namespace ob
