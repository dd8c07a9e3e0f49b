#pragma once

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "baf/exact.hpp"
#include "baf/generators.hpp"
#include "baf/greedy.hpp"
#include "baf/io.hpp"
#include "baf/schemes.hpp"

namespace baf::bench {

enum class Algorithm { Ffd, Dp, Aqptas, Ptas, Oracle };

inline std::string name(Algorithm algo) {
  switch (algo) {
    case Algorithm::Ffd: return "ffd";
    case Algorithm::Dp: return "dp";
    case Algorithm::Aqptas: return "aqptas";
    case Algorithm::Ptas: return "ptas";
    case Algorithm::Oracle: return "oracle";
  }
  return "unknown";
}

inline Algorithm parse_algorithm(const std::string& text) {
  for (auto algo : {Algorithm::Ffd, Algorithm::Dp, Algorithm::Aqptas, Algorithm::Ptas,
                    Algorithm::Oracle}) {
    if (name(algo) == text) return algo;
  }
  throw DomainError("unknown algorithm '" + text + "'");
}

inline bool uses_epsilon(Algorithm algo) {
  return algo == Algorithm::Aqptas || algo == Algorithm::Ptas;
}

struct Budgets {
  unsigned long long state_budget = kDefaultStateBudget;
  unsigned long long enum_budget = kDefaultEnumBudget;
};

/// Runs one solver. epsilon is ignored by the algorithms that take none.
inline Schedule solve(Algorithm algo, const Instance& inst, const Rational& epsilon,
                      const Budgets& budgets = {}) {
  switch (algo) {
    case Algorithm::Ffd: return ffd_solve(inst);
    case Algorithm::Dp: return dp_solve(inst, budgets.state_budget);
    case Algorithm::Aqptas: return almost_qptas(inst, epsilon, budgets.state_budget);
    case Algorithm::Ptas: return ptas_solve(inst, epsilon, budgets.state_budget);
    case Algorithm::Oracle: return brute_force_solve(inst, budgets.enum_budget);
  }
  throw DomainError("unknown algorithm");
}

struct NamedInstance {
  std::string id;
  Instance instance;
};

struct BenchRecord {
  std::string instance_id;
  std::string algorithm;
  std::optional<Rational> epsilon;
  std::optional<Duration> total;
  std::optional<Duration> oracle_total;
  std::optional<Rational> ratio;
  double wall_ms = 0;
  std::optional<std::string> error;
};

/// Every algorithm on every instance (once per epsilon for the schemes).
/// Oracle totals are attached when m^n <= oracle_limit. A failing solver
/// yields a row with `error` set and the run goes on. Rows are sorted by
/// (instance_id, algorithm, epsilon).
inline std::vector<BenchRecord> bench_run(const std::vector<NamedInstance>& instances,
                                          const std::vector<Algorithm>& algorithms,
                                          const std::vector<Rational>& epsilons,
                                          unsigned long long oracle_limit,
                                          unsigned long long state_budget = kDefaultStateBudget) {
  std::vector<BenchRecord> records;
  Budgets budgets{state_budget, oracle_limit};
  for (const auto& named : instances) {
    std::optional<Duration> oracle;
    try {
      oracle = total_working_time(named.instance, brute_force_solve(named.instance, oracle_limit));
    } catch (const Error&) {
      oracle.reset();
    }

    for (Algorithm algo : algorithms) {
      std::vector<std::optional<Rational>> eps_list;
      if (uses_epsilon(algo)) {
        for (const auto& e : epsilons) eps_list.emplace_back(e);
      } else {
        eps_list.emplace_back(std::nullopt);
      }
      for (const auto& eps : eps_list) {
        BenchRecord rec{named.id, name(algo), eps, {}, oracle, {}, 0, {}};
        auto begin = std::chrono::steady_clock::now();
        try {
          Schedule sched = solve(algo, named.instance, eps.value_or(Rational(1, 2)), budgets);
          rec.total = total_working_time(named.instance, sched);
          if (oracle && *oracle > 0) rec.ratio = Rational(*rec.total / *oracle);
        } catch (const Error& e) {
          rec.error = e.what();
        }
        auto end = std::chrono::steady_clock::now();
        rec.wall_ms = std::chrono::duration<double, std::milli>(end - begin).count();
        records.push_back(std::move(rec));
      }
    }
  }
  std::stable_sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
    return std::tie(a.instance_id, a.algorithm, a.epsilon) <
           std::tie(b.instance_id, b.algorithm, b.epsilon);
  });
  return records;
}

inline constexpr const char* kCsvHeader = "instance_id,algorithm,epsilon,total,oracle_total,ratio,wall_ms";

/// CSV with rationals as "num/den". With timing off the wall_ms column is
/// left empty so the file depends only on the inputs. Failed rows carry
/// "error" in the total column.
inline void write_csv(std::ostream& out, const std::vector<BenchRecord>& records,
                      bool with_timing = true) {
  auto field = [](const std::optional<Rational>& r) {
    return r ? to_fraction_string(*r) : std::string();
  };
  out << kCsvHeader << "\n";
  for (const auto& rec : records) {
    out << rec.instance_id << ',' << rec.algorithm << ',' << field(rec.epsilon) << ','
        << (rec.error ? std::string("error") : field(rec.total)) << ',' << field(rec.oracle_total)
        << ',' << field(rec.ratio) << ',';
    if (with_timing) {
      std::ostringstream ms;
      ms.setf(std::ios::fixed);
      ms.precision(3);
      ms << rec.wall_ms;
      out << ms.str();
    }
    out << "\n";
  }
}

/// A benchmark suite document:
///
///   {"algorithms": ["ffd", "ptas"], "epsilons": ["1/2", "1/4"],
///    "oracle_limit": 20000000, "state_budget": 5000000,
///    "instances": [
///      {"id": "a", "path": "a.json"},
///      {"id": "b", "instance": {...}},
///      {"id": "c", "generate": {"family": "uniform", "seed": 1, "n": 6, "m": 2},
///       "count": 10}]}
///
/// Relative paths resolve against the suite file's directory. A generated
/// entry with "count" expands to ids c-0 .. c-(count-1) with seeds seed+k.
struct Suite {
  std::vector<NamedInstance> instances;
  std::vector<Algorithm> algorithms;
  std::vector<Rational> epsilons;
  unsigned long long oracle_limit = kDefaultEnumBudget;
  unsigned long long state_budget = kDefaultStateBudget;
};

inline gen::Params params_from_json(const io::json& g) {
  gen::Params params;
  if (g.contains("n")) params.n = g.at("n").get<std::size_t>();
  if (g.contains("m")) params.m = g.at("m").get<std::size_t>();
  if (g.contains("epsilon")) params.epsilon = parse_rational(g.at("epsilon").get<std::string>());
  if (g.contains("denominator")) params.denominator = g.at("denominator").get<std::uint64_t>();
  if (g.contains("max_value")) params.max_value = g.at("max_value").get<std::uint64_t>();
  if (g.contains("distinct")) params.distinct = g.at("distinct").get<std::size_t>();
  if (g.contains("layers")) params.layers = g.at("layers").get<std::size_t>();
  return params;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io::ParseError(io::ParseError::Kind::Syntax, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Suite parse_suite(std::string_view text, const std::filesystem::path& base_dir = ".") {
  using io::ParseError;
  io::json doc = io::detail::parse_json(text);
  Suite suite;
  try {
    for (const auto& a : doc.at("algorithms")) suite.algorithms.push_back(parse_algorithm(a.get<std::string>()));
    if (doc.contains("epsilons")) {
      for (const auto& e : doc.at("epsilons")) suite.epsilons.push_back(parse_rational(e.get<std::string>()));
    }
    if (doc.contains("oracle_limit")) suite.oracle_limit = doc.at("oracle_limit").get<unsigned long long>();
    if (doc.contains("state_budget")) suite.state_budget = doc.at("state_budget").get<unsigned long long>();
    for (const auto& entry : doc.at("instances")) {
      std::string id = entry.at("id").get<std::string>();
      if (entry.contains("path")) {
        std::filesystem::path path = entry.at("path").get<std::string>();
        if (path.is_relative()) path = base_dir / path;
        suite.instances.push_back({id, io::parse_instance(read_file(path))});
      } else if (entry.contains("instance")) {
        suite.instances.push_back({id, io::instance_from_json(entry.at("instance"))});
      } else if (entry.contains("generate")) {
        const auto& g = entry.at("generate");
        std::string family = g.at("family").get<std::string>();
        std::uint64_t seed = g.contains("seed") ? g.at("seed").get<std::uint64_t>() : 0;
        gen::Params params = params_from_json(g);
        if (entry.contains("count")) {
          auto count = entry.at("count").get<std::size_t>();
          for (std::size_t k = 0; k < count; ++k) {
            suite.instances.push_back({id + "-" + std::to_string(k), gen::gen_instance(family, seed + k, params)});
          }
        } else {
          suite.instances.push_back({id, gen::gen_instance(family, seed, params)});
        }
      } else {
        throw ParseError(ParseError::Kind::Schema, "suite entry '" + id + "' has no path, instance or generate");
      }
    }
  } catch (const io::json::exception& e) {
    throw ParseError(ParseError::Kind::Schema, std::string("suite: ") + e.what());
  } catch (const RationalParseError& e) {
    throw ParseError(ParseError::Kind::MalformedDuration, std::string("suite: ") + e.what());
  }
  return suite;
}

}  // namespace baf::bench
