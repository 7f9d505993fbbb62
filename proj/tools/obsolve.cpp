#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ob/harness.hpp"
#include "ob/oracle.hpp"
#include "ob/polysolve.hpp"
#include "ob/transforms.hpp"

namespace {

using ob::CapError;
using ob::ValidationError;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitValidation = 2;
constexpr int kExitCap = 3;
constexpr int kExitMismatch = 4;

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_out(const std::string& path, const std::string& text) {
  if (path == "-" || path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError(path, "cannot open file for writing");
  out << text;
}

ob::Decision dispatch(const ob::Obs& obs, const std::string& mode) {
  if (mode == "oracle") return ob::solve_exact(obs);
  if (mode == "fast") return ob::solve_fast(obs);
  return ob::solve_fast(obs);  // auto: dedicated solver when one applies
}

int run_solve(const std::string& in, const std::string& out,
              const std::string& mode) {
  ob::Obs obs = ob::parse_instance(read_file(in));
  ob::Decision d = dispatch(obs, mode);
  write_out(out, ob::serialize_decision(d, obs));
  return d.answer ? kExitYes : kExitNo;
}

int run_oracle(const std::string& in, const std::string& out, bool no_memo,
               bool generic) {
  ob::Obs obs = ob::parse_instance(read_file(in));
  ob::OracleConfig cfg;
  cfg.memo = !no_memo;
  cfg.generic_profile = generic;
  ob::Decision d = ob::solve_exact(obs, cfg);
  write_out(out, ob::serialize_decision(d, obs));
  return d.answer ? kExitYes : kExitNo;
}

int run_check(const std::string& family_path, const std::string& out,
              const std::string& algo_a, const std::string& algo_b,
              int threads, bool timing) {
  ob::FamilySpec fam = ob::parse_family(read_file(family_path));
  ob::CheckOptions opts;
  opts.threads = threads;
  opts.timing = timing;
  ob::CheckReport report =
      ob::cross_check(fam, ob::solver_by_name(algo_a),
                      ob::solver_by_name(algo_b), algo_a, algo_b, opts);
  write_out(out, ob::report_to_json(report));
  return report.pass() ? kExitYes : kExitMismatch;
}

int run_gen(const std::string& family_path, const std::string& out) {
  ob::FamilySpec fam = ob::parse_family(read_file(family_path));
  std::ostringstream ss;
  ob::for_each_instance(fam, [&](const ob::Obs& obs) {
    // one compact JSON object per line
    ss << nlohmann::json::parse(ob::serialize_instance(obs)).dump() << "\n";
  });
  write_out(out, ss.str());
  return kExitYes;
}

int run_transform(const std::string& name, const std::string& in,
                  const std::string& out) {
  const std::string text = read_file(in);
  ob::Obs obs = ob::parse_instance(text);
  ob::TransformReport report = ob::apply_transform(name, obs);
  report.source_digest = ob::instance_digest(obs);
  nlohmann::json j;
  j["format_version"] = 1;
  j["transform"] = report.name;
  j["source_digest"] = report.source_digest;
  j["relation"] =
      report.relation == ob::TransformReport::Relation::Equal ? "equal"
                                                              : "implies";
  j["target"] = nlohmann::json::parse(ob::serialize_instance(report.target));
  write_out(out, j.dump(2) + "\n");
  return kExitYes;
}

int run_bench(const std::string& in, const std::string& mode, int repeat) {
  ob::Obs obs = ob::parse_instance(read_file(in));
  ob::Decision last;
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < repeat; ++i) last = dispatch(obs, mode);
  const auto us = std::chrono::duration_cast<std::chrono::microseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  nlohmann::json j;
  j["format_version"] = 1;
  j["mode"] = mode;
  j["repeat"] = repeat;
  j["answer"] = last.answer;
  j["algorithm"] = last.algorithm;
  j["total_us"] = us;
  j["per_run_us"] = repeat > 0 ? us / repeat : 0;
  std::cout << j.dump(2) << "\n";
  return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online election bribery solver suite"};
  app.require_subcommand(1);

  std::string in = "-", out = "-", mode = "auto";
  std::string family_path, transform_name;
  std::string algo_a = "oracle", algo_b = "fast";
  int threads = 0, repeat = 1;
  bool timing = false, no_memo = false, generic = false;

  auto* solve = app.add_subcommand("solve", "Solve one instance");
  solve->add_option("--in", in, "instance file, - for stdin");
  solve->add_option("--out", out, "output file, - for stdout");
  solve->add_option("--mode", mode, "oracle|fast|auto")
      ->check(CLI::IsMember({"oracle", "fast", "auto"}));

  auto* oracle = app.add_subcommand("oracle", "Solve with the exact oracle");
  oracle->add_option("--in", in, "instance file, - for stdin");
  oracle->add_option("--out", out, "output file, - for stdout");
  oracle->add_flag("--no-memo", no_memo, "disable memoization");
  oracle->add_flag("--generic", generic, "full-profile evaluation");

  auto* check = app.add_subcommand("check", "Cross-validate two solvers");
  check->add_option("--family", family_path, "family spec file")->required();
  check->add_option("--out", out, "report file, - for stdout");
  check->add_option("--a", algo_a, "first solver");
  check->add_option("--b", algo_b, "second solver");
  check->add_option("--threads", threads, "worker count, 0 = all cores");
  check->add_flag("--timing", timing, "include wall time in the report");

  auto* gen = app.add_subcommand("gen", "Generate a family's instances");
  gen->add_option("--family", family_path, "family spec file")->required();
  gen->add_option("--out", out, "output file, - for stdout");

  auto* transform = app.add_subcommand("transform", "Apply a transform");
  transform->add_option("--name", transform_name, "transform name")
      ->required();
  transform->add_option("--in", in, "instance file, - for stdin");
  transform->add_option("--out", out, "output file, - for stdout");

  auto* bench = app.add_subcommand("bench", "Time repeated solves");
  bench->add_option("--in", in, "instance file, - for stdin");
  bench->add_option("--mode", mode, "oracle|fast|auto")
      ->check(CLI::IsMember({"oracle", "fast", "auto"}));
  bench->add_option("--repeat", repeat, "number of runs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitValidation;
  }

  try {
    if (solve->parsed()) return run_solve(in, out, mode);
    if (oracle->parsed()) return run_oracle(in, out, no_memo, generic);
    if (check->parsed())
      return run_check(family_path, out, algo_a, algo_b, threads, timing);
    if (gen->parsed()) return run_gen(family_path, out);
    if (transform->parsed()) return run_transform(transform_name, in, out);
    if (bench->parsed()) return run_bench(in, mode, repeat);
  } catch (const CapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kExitCap;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
