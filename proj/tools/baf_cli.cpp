// Command-line front end for the BAF solvers.
//
// Exit status: 0 success, 1 solver error or failed verification, 2 input error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "baf/baf.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kSolverError = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Anything that goes wrong while reading arguments or files is an input error.
template <class F>
auto load(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const baf::Error& e) {
    throw InputError(e.what());
  }
}

baf::Rational parse_epsilon(const std::string& text) {
  return load([&] { return baf::parse_rational(text); });
}

int cmd_solve(const std::string& algo_name, const std::string& eps_text,
              unsigned long long state_budget, unsigned long long enum_budget,
              const std::string& path) {
  auto algo = load([&] { return baf::bench::parse_algorithm(algo_name); });
  auto eps = parse_epsilon(eps_text);
  auto inst = load([&] { return baf::io::parse_instance(read_input(path)); });
  try {
    auto sched = baf::bench::solve(algo, inst, eps, {state_budget, enum_budget});
    auto doc = baf::io::schedule_to_json(sched);
    doc["total"] = baf::to_string(baf::total_working_time(inst, sched));
    std::cout << doc.dump(2) << "\n";
  } catch (const baf::Error& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kSolverError;
  }
  return kOk;
}

int cmd_verify(const std::string& inst_path, const std::string& sched_path) {
  auto inst = load([&] { return baf::io::parse_instance(read_input(inst_path)); });
  auto sched = load([&] { return baf::io::parse_schedule(read_input(sched_path)); });
  auto violations = baf::validate_schedule(inst, sched);
  baf::io::json doc;
  doc["valid"] = violations.empty();
  doc["violations"] = baf::io::json::array();
  for (const auto& v : violations) doc["violations"].push_back(v.describe());
  if (violations.empty()) {
    auto ev = baf::evaluate(inst, sched);
    doc["per_machine"] = baf::io::json::array();
    for (const auto& t : ev.per_machine) doc["per_machine"].push_back(baf::to_string(t));
    doc["total"] = baf::to_string(ev.total);
  }
  std::cout << doc.dump(2) << "\n";
  return violations.empty() ? kOk : kSolverError;
}

int cmd_gen(const std::string& family, std::uint64_t seed, baf::gen::Params params,
            const std::string& eps_text) {
  params.epsilon = parse_epsilon(eps_text);
  if (family == "mc-uniform") {
    auto mc = load([&] { return baf::gen::gen_mc_instance(seed, params); });
    std::cout << baf::io::serialize_mc_instance(mc);
  } else {
    auto inst = load([&] { return baf::gen::gen_instance(family, seed, params); });
    std::cout << baf::io::serialize_instance(inst);
  }
  return kOk;
}

int cmd_bench(const std::string& suite_path, const std::string& out_path, bool no_timing) {
  auto suite = load([&] {
    return baf::bench::parse_suite(read_input(suite_path),
                                   std::filesystem::path(suite_path).parent_path());
  });
  auto records = baf::bench::bench_run(suite.instances, suite.algorithms, suite.epsilons,
                                       suite.oracle_limit, suite.state_budget);
  for (const auto& rec : records) {
    if (rec.error) std::cerr << rec.instance_id << " " << rec.algorithm << ": " << *rec.error << "\n";
  }
  if (out_path.empty() || out_path == "-") {
    baf::bench::write_csv(std::cout, records, !no_timing);
  } else {
    std::ofstream out(out_path);
    if (!out) throw InputError("cannot write " + out_path);
    baf::bench::write_csv(out, records, !no_timing);
  }
  return kOk;
}

int cmd_mc_solve(const std::string& eps_text, unsigned long long state_budget,
                 const std::string& path) {
  auto eps = parse_epsilon(eps_text);
  auto mc = load([&] { return baf::io::parse_mc_instance(read_input(path)); });
  try {
    auto sched = baf::mc::mc_solve(mc, eps, state_budget);
    auto doc = baf::io::mc_schedule_to_json(sched);
    doc["makespan"] = baf::to_string(baf::mc::mc_makespan(mc, sched));
    std::cout << doc.dump(2) << "\n";
  } catch (const baf::Error& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kSolverError;
  }
  return kOk;
}

int cmd_mc_verify(const std::string& inst_path, const std::string& sched_path) {
  auto mc = load([&] { return baf::io::parse_mc_instance(read_input(inst_path)); });
  auto sched = load([&] { return baf::io::parse_mc_schedule(read_input(sched_path)); });
  auto violations = load([&] { return baf::mc::mc_feasible(mc, sched); });
  baf::io::json doc;
  doc["feasible"] = violations.empty();
  doc["violations"] = baf::io::json::array();
  for (const auto& v : violations) {
    doc["violations"].push_back({{"level", v.level}, {"jobs", {v.first, v.second}}});
  }
  doc["makespan"] = baf::to_string(baf::mc::mc_makespan(mc, sched));
  doc["lower_bound"] = baf::to_string(baf::mc::mc_lower_bound(mc));
  std::cout << doc.dump(2) << "\n";
  return violations.empty() ? kOk : kSolverError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Base-and-additional-fee scheduling solvers"};
  app.require_subcommand(1);

  std::string algo = "ptas";
  std::string epsilon = "1/4";
  unsigned long long state_budget = baf::kDefaultStateBudget;
  unsigned long long enum_budget = baf::kDefaultEnumBudget;
  std::string instance_path;
  std::string schedule_path;

  auto* solve = app.add_subcommand("solve", "Solve a BAF instance and print the schedule");
  solve->add_option("--algo", algo, "ffd | dp | aqptas | ptas | oracle")->capture_default_str();
  solve->add_option("--epsilon", epsilon, "Error parameter as a fraction")->capture_default_str();
  solve->add_option("--state-budget", state_budget, "Maximum DP states")->capture_default_str();
  solve->add_option("--enum-budget", enum_budget, "Maximum brute-force assignments")->capture_default_str();
  solve->add_option("INSTANCE", instance_path, "Instance JSON ('-' for stdin)")->required();

  auto* verify = app.add_subcommand("verify", "Validate and evaluate a schedule");
  verify->add_option("INSTANCE", instance_path)->required();
  verify->add_option("SCHEDULE", schedule_path)->required();

  std::string family;
  std::uint64_t seed = 0;
  baf::gen::Params params;
  std::string gen_epsilon = "1/10";
  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("--family", family, "uniform | ffd-tight | subset-sum-like | layered | mc-uniform")->required();
  gen->add_option("--seed", seed)->capture_default_str();
  gen->add_option("--n", params.n, "Number of jobs")->capture_default_str();
  gen->add_option("--m", params.m, "Number of machines")->capture_default_str();
  gen->add_option("--epsilon", gen_epsilon, "ffd-tight / layered parameter")->capture_default_str();
  gen->add_option("--denominator", params.denominator)->capture_default_str();
  gen->add_option("--max-value", params.max_value)->capture_default_str();
  gen->add_option("--distinct", params.distinct, "uniform: number of distinct p values")->capture_default_str();
  gen->add_option("--layers", params.layers, "layered: layers to populate")->capture_default_str();
  gen->add_option("--levels", params.levels, "mc-uniform: criticality levels")->capture_default_str();

  std::string suite_path;
  std::string out_path;
  bool no_timing = false;
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite and write CSV");
  bench->add_option("--suite", suite_path, "Suite JSON")->required();
  bench->add_option("--out", out_path, "CSV output path ('-' for stdout)");
  bench->add_flag("--no-timing", no_timing, "Leave wall_ms empty for reproducible output");

  std::string mc_epsilon = "1/4";
  auto* mc_solve = app.add_subcommand("mc-solve", "Solve a mixed-criticality instance");
  mc_solve->add_option("--epsilon", mc_epsilon)->capture_default_str();
  mc_solve->add_option("--state-budget", state_budget)->capture_default_str();
  mc_solve->add_option("MCINSTANCE", instance_path)->required();

  auto* mc_verify = app.add_subcommand("mc-verify", "Check a mixed-criticality schedule");
  mc_verify->add_option("MCINSTANCE", instance_path)->required();
  mc_verify->add_option("MCSCHEDULE", schedule_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*solve) return cmd_solve(algo, epsilon, state_budget, enum_budget, instance_path);
    if (*verify) return cmd_verify(instance_path, schedule_path);
    if (*gen) return cmd_gen(family, seed, params, gen_epsilon);
    if (*bench) return cmd_bench(suite_path, out_path, no_timing);
    if (*mc_solve) return cmd_mc_solve(mc_epsilon, state_budget, instance_path);
    if (*mc_verify) return cmd_mc_verify(instance_path, schedule_path);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const baf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolverError;
  }
  return kOk;
}
