#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "baf/bench.hpp"
#include "baf/generators.hpp"
#include "baf/io.hpp"
#include "baf/schemes.hpp"
#include "support/random.hpp"

namespace baf {
namespace {

using testing::q;
using io::ParseError;

ParseError::Kind parse_failure(const std::string& text) {
  try {
    io::parse_instance(text);
  } catch (const ParseError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "parse succeeded: " << text;
  return ParseError::Kind::Syntax;
}

TEST(ParseInstance, CanonicalDocument) {
  auto inst = io::parse_instance(R"({"jobs":[{"id":0,"p":"9/10"},{"id":1,"p":"0.9"}],
                                     "machines":[{"id":1,"c":"1"},{"id":0,"c":1}]})");
  EXPECT_EQ(inst, Instance({q(9, 10), q(9, 10)}, {q(1), q(1)}));
}

TEST(ParseInstance, Diagnostics) {
  EXPECT_EQ(parse_failure(R"({"jobs":[{"id":0,"p":"0"}],"machines":[{"id":0,"c":"1"}]})"),
            ParseError::Kind::NonPositiveDuration);
  EXPECT_EQ(parse_failure(R"({"jobs":[{"id":0,"p":"1"},{"id":0,"p":"2"}],"machines":[]})"),
            ParseError::Kind::DuplicateId);
  EXPECT_EQ(parse_failure(R"({"jobs":[{"id":0,"p":0.9}],"machines":[]})"),
            ParseError::Kind::FloatDuration);
  EXPECT_EQ(parse_failure(R"({"jobs":[{"id":3,"p":"1"}],"machines":[]})"),
            ParseError::Kind::NonContiguousId);
  EXPECT_EQ(parse_failure(R"({"jobs":[{"id":0,"p":"1e3"}],"machines":[]})"),
            ParseError::Kind::MalformedDuration);
  EXPECT_EQ(parse_failure(R"({"jobs":[})"), ParseError::Kind::Syntax);
  EXPECT_EQ(parse_failure(R"({"machines":[]})"), ParseError::Kind::Schema);
  EXPECT_EQ(parse_failure(R"({"jobs":[],"machines":[{"id":0,"c":"0"}]})"),
            ParseError::Kind::NonPositiveDuration);
}

TEST(ParseInstance, PairReducedFlagAdmitsZeroCapacity) {
  auto inst = io::parse_instance(
      R"({"pair_reduced":true,"jobs":[],"machines":[{"id":0,"c":"0"}]})");
  EXPECT_EQ(inst.c(0), q(0));
  EXPECT_EQ(io::parse_instance(io::serialize_instance(inst)).capacity_policy(),
            CapacityPolicy::AllowZero);
}

TEST(ParseInstance, RoundTrip) {
  testing::Random rng(71);
  for (int trial = 0; trial < 50; ++trial) {
    Instance inst = rng.instance(0, 10, 5, 37);
    std::string text = io::serialize_instance(inst);
    Instance back = io::parse_instance(text);
    EXPECT_EQ(back, inst);
    EXPECT_EQ(io::serialize_instance(back), text);
  }
}

TEST(Schedules, RoundTrip) {
  Schedule s({2, 0, 1, 1});
  EXPECT_EQ(io::parse_schedule(io::serialize_schedule(s)), s);
  EXPECT_THROW(io::parse_schedule(R"({"assignment":{"x":1}})"), ParseError);
  EXPECT_THROW(io::parse_schedule(R"({"nope":{}})"), ParseError);
}

TEST(McDocuments, ParseAndRoundTrip) {
  auto mc = io::parse_mc_instance(R"({"jobs":[{"id":0,"widths":["2","5"]},{"id":1,"widths":["3"]}]})");
  EXPECT_EQ(mc.levels(), 2u);
  EXPECT_EQ(mc.job(0).top(), q(5));
  EXPECT_EQ(io::serialize_mc_instance(io::parse_mc_instance(io::serialize_mc_instance(mc))),
            io::serialize_mc_instance(mc));

  auto sched = mc::mc_solve(mc, q(1, 4));
  auto back = io::parse_mc_schedule(io::serialize_mc_schedule(sched));
  EXPECT_EQ(back.start, sched.start);
  EXPECT_EQ(back.nesting, sched.nesting);

  auto parsed = io::parse_mc_schedule(R"({"start":{"0":"0","1":"2"},"nesting":{"0":"standalone","1":0}})");
  EXPECT_EQ(parsed.nesting.at(0), std::nullopt);
  EXPECT_EQ(parsed.nesting.at(1), std::optional<mc::FJobId>(0));
}

TEST(McDocuments, Diagnostics) {
  auto kind = [](const std::string& text) {
    try {
      io::parse_mc_instance(text);
    } catch (const ParseError& e) {
      return e.kind();
    }
    return ParseError::Kind::Syntax;
  };
  EXPECT_EQ(kind(R"({"jobs":[{"id":0,"widths":["5","2"]}]})"), ParseError::Kind::NonMonotoneWidths);
  EXPECT_EQ(kind(R"({"jobs":[{"id":0,"widths":["1"]},{"id":0,"widths":["1"]}]})"),
            ParseError::Kind::DuplicateId);
  EXPECT_EQ(kind(R"({"jobs":[{"id":0,"widths":["0"]}]})"), ParseError::Kind::NonPositiveDuration);
  EXPECT_EQ(kind(R"({"jobs":[{"id":0,"widths":[]}]})"), ParseError::Kind::Schema);
}

TEST(Generators, FfdTight) {
  gen::Params params;
  params.epsilon = q(1, 10);
  EXPECT_EQ(gen::gen_instance("ffd-tight", 0, params), Instance({q(9, 10), q(9, 10)}, {q(1), q(1)}));
}

TEST(Generators, UniformWithoutJobs) {
  gen::Params params;
  params.n = 0;
  params.m = 3;
  auto inst = gen::gen_instance("uniform", 1, params);
  EXPECT_EQ(inst.num_jobs(), 0u);
  EXPECT_EQ(inst.num_machines(), 3u);
}

TEST(Generators, LayeredSpansThreeLayers) {
  gen::Params params;
  params.epsilon = q(1, 2);
  params.n = 4;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto inst = gen::gen_instance("layered", seed, params);
    std::set<unsigned long> layers;
    for (const auto& p : inst.processing_times()) layers.insert(layer_index(p, params.epsilon));
    EXPECT_GE(layers.size(), 3u);
  }
}

TEST(Generators, DeterministicAndDistinctCount) {
  gen::Params params;
  params.distinct = 3;
  params.n = 20;
  for (const auto& family : gen::families()) {
    EXPECT_EQ(gen::gen_instance(family, 5, params), gen::gen_instance(family, 5, params));
  }
  auto inst = gen::gen_instance("uniform", 9, params);
  std::set<Duration> values(inst.processing_times().begin(), inst.processing_times().end());
  EXPECT_LE(values.size(), 3u);
  EXPECT_THROW(gen::gen_instance("nope", 0, params), DomainError);
}

TEST(Generators, SubsetSumCapacitiesAreJobSums) {
  gen::Params params;
  params.n = 9;
  params.m = 3;
  auto inst = gen::gen_instance("subset-sum-like", 4, params);
  for (const auto& p : inst.processing_times()) EXPECT_EQ(p.get_den(), 1);
  EXPECT_GE(inst.total_capacity(), inst.total_processing_time());
}

TEST(Generators, McInstances) {
  gen::Params params;
  params.n = 7;
  params.levels = 4;
  auto mc = gen::gen_mc_instance(3, params);
  EXPECT_EQ(mc.levels(), 4u);
  EXPECT_EQ(mc.size(), 7u);
}

TEST(Bench, TightSweepRatios) {
  std::vector<bench::NamedInstance> instances;
  for (long den : {10L, 100L}) {
    instances.push_back({"tight-" + std::to_string(den), gen::ffd_tight(q(1, den))});
  }
  auto records = bench::bench_run(instances, {bench::Algorithm::Ffd}, {}, 1000);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].instance_id, "tight-10");
  EXPECT_EQ(*records[0].ratio, q(14, 10));
  EXPECT_EQ(*records[1].ratio, Rational((3 - 2 * q(1, 100)) / 2));
  EXPECT_EQ(*records[1].oracle_total, q(2));
}

TEST(Bench, EmptyInput) {
  EXPECT_TRUE(bench::bench_run({}, {bench::Algorithm::Ffd}, {q(1, 2)}, 1000).empty());
}

TEST(Bench, RandomSuiteRespectsFfdBound) {
  testing::Random rng(72);
  std::vector<bench::NamedInstance> instances;
  for (int k = 0; k < 40; ++k) instances.push_back({"r" + std::to_string(k), rng.instance(1, 8, 3)});
  auto records = bench::bench_run(instances, {bench::Algorithm::Ffd}, {}, 100000);
  for (const auto& rec : records) {
    ASSERT_TRUE(rec.ratio);
    EXPECT_GE(*rec.ratio, 1);
    EXPECT_LE(*rec.ratio, q(3, 2));
  }
}

TEST(Bench, ErrorsAreRecordedPerRow) {
  std::vector<bench::NamedInstance> instances{{"x", Instance({q(1), q(2), q(3)}, {q(1)})}};
  auto records = bench::bench_run(instances, {bench::Algorithm::Ptas, bench::Algorithm::Ffd},
                                  {q(3, 4), q(1, 2)}, 1000);
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[0].algorithm, "ffd");
  EXPECT_FALSE(records[0].error);
  EXPECT_EQ(records[1].algorithm, "ptas");
  EXPECT_EQ(*records[1].epsilon, q(1, 2));
  EXPECT_FALSE(records[1].error);
  EXPECT_TRUE(records[2].error);  // epsilon 3/4 is outside (0, 1/2]
}

TEST(Bench, OutputIsReproducible) {
  const char* suite_text = R"({
    "algorithms": ["ptas", "ffd", "dp", "aqptas", "oracle"],
    "epsilons": ["1/2", "1/4"],
    "oracle_limit": 100000,
    "instances": [
      {"id": "u", "generate": {"family": "uniform", "seed": 3, "n": 5, "m": 2}, "count": 3},
      {"id": "t", "generate": {"family": "ffd-tight", "epsilon": "1/10"}},
      {"id": "inline", "instance": {"jobs": [{"id": 0, "p": "3"}], "machines": [{"id": 0, "c": "1"}]}}
    ]})";
  auto render = [&] {
    auto suite = bench::parse_suite(suite_text);
    auto records = bench::bench_run(suite.instances, suite.algorithms, suite.epsilons,
                                    suite.oracle_limit, suite.state_budget);
    std::ostringstream out;
    bench::write_csv(out, records, false);
    return out.str();
  };
  std::string first = render();
  EXPECT_EQ(first, render());
  EXPECT_EQ(first.substr(0, first.find('\n')), bench::kCsvHeader);
  // 5 instances x (3 plain + 2 schemes x 2 epsilons) rows plus the header
  EXPECT_EQ(std::count(first.begin(), first.end(), '\n'), 1 + 5 * 7);
  EXPECT_NE(first.find("t,ffd,,14/5,2/1,7/5,\n"), std::string::npos);
}

TEST(Bench, SuiteErrors) {
  EXPECT_THROW(bench::parse_suite(R"({"algorithms":["warp"],"instances":[]})"), Error);
  EXPECT_THROW(bench::parse_suite(R"({"algorithms":["ffd"],"instances":[{"id":"a"}]})"), ParseError);
}

}  // namespace
}  // namespace baf
