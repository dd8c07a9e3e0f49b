// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "baf/baf.hpp"
#include "support/oracle.hpp"
#include "support/random.hpp"

namespace {

using namespace baf;
using baf::testing::q;

struct Outcome {
  bool ok = true;
  std::string detail;
  std::size_t checked = 0;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

Duration oracle_total(const Instance& inst) {
  return total_working_time(inst, brute_force_solve(inst));
}

// 1
Outcome ffd_ratio() {
  Outcome out;
  baf::testing::Random rng(1001);
  for (int trial = 0; trial < 600; ++trial) {
    Instance inst = rng.instance(1, 8, 4);
    Duration ffd = total_working_time(inst, ffd_solve(inst));
    Duration opt = oracle_total(inst);
    if (ffd > Rational(q(3, 2) * opt)) out.fail("trial " + std::to_string(trial) + ": ffd " + to_string(ffd) + " opt " + to_string(opt));
    // the library oracle is cross-checked against plain enumeration on a slice
    if (trial % 20 == 0 &&
        opt != baf::testing::enumerate_optimum(inst.processing_times(), inst.capacities()))
      out.fail("oracle disagrees with enumeration at trial " + std::to_string(trial));
    ++out.checked;
  }
  return out;
}

// 2
Outcome ffd_tightness() {
  Outcome out;
  for (long den : {10L, 100L, 1000L}) {
    Rational eps = q(1, den);
    Instance inst = gen::ffd_tight(eps);
    Duration ffd = total_working_time(inst, ffd_solve(inst));
    Duration opt = oracle_total(inst);
    if (ffd != Rational(3 - 2 * eps)) out.fail("eps 1/" + std::to_string(den) + ": ffd " + to_string(ffd));
    if (opt != 2) out.fail("eps 1/" + std::to_string(den) + ": oracle " + to_string(opt));
    if (opt != baf::testing::enumerate_optimum(inst.processing_times(), inst.capacities()))
      out.fail("oracle disagrees with enumeration");
    ++out.checked;
  }
  return out;
}

// 3
Outcome dp_optimality() {
  Outcome out;
  baf::testing::Random rng(1003);
  for (int trial = 0; trial < 600; ++trial) {
    Instance inst = rng.few_values(8, 3, 4);
    Duration dp = total_working_time(inst, dp_solve(inst));
    Duration opt = oracle_total(inst);
    if (dp != opt) out.fail("trial " + std::to_string(trial) + ": dp " + to_string(dp) + " opt " + to_string(opt));
    ++out.checked;
  }

  std::vector<Duration> pool = rng.durations(3);
  while (std::set<Duration>(pool.begin(), pool.end()).size() < 3) pool = rng.durations(3);
  std::vector<Duration> p;
  for (int j = 0; j < 20; ++j) p.push_back(pool[j % 3]);
  Instance big(p, rng.durations(5));
  auto begin = std::chrono::steady_clock::now();
  Schedule s = dp_solve(big);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
  if (!validate_schedule(big, s).empty()) out.fail("n=20 run returned an invalid schedule");
  if (secs >= 1.0) out.fail("n=20 run took " + std::to_string(secs) + " s");
  // FFD is an upper bound and the capacity sum a lower bound on the optimum
  Duration total = total_working_time(big, s);
  if (total > total_working_time(big, ffd_solve(big)) || total < trivial_lower_bound(big))
    out.fail("n=20 run total outside [lower bound, ffd]");
  std::ostringstream note;
  note << "n=20 run " << secs * 1000 << " ms";
  out.detail = out.ok ? note.str() : out.detail;
  return out;
}

// 4
Outcome round_down_properties() {
  Outcome out;
  baf::testing::Random rng(1004);
  const std::vector<Rational> epsilons{q(1), q(1, 2), q(1, 4), q(1, 10)};
  for (int trial = 0; trial < 1200; ++trial) {
    const Rational& eps = epsilons[trial % epsilons.size()];
    std::vector<Job> jobs;
    for (const auto& p : rng.durations(rng.index(1, 15), 100)) jobs.push_back({jobs.size(), p});
    auto r = round_down(jobs, eps);
    Duration p_min = jobs[0].p, hat_min = r.p_hat(0);
    for (const auto& job : jobs) {
      const Duration& hat = r.p_hat(job.id);
      if (!(hat <= job.p && job.p <= Rational((1 + eps) * hat)))
        out.fail("trial " + std::to_string(trial) + ": bracket fails for job " + std::to_string(job.id));
      p_min = std::min(p_min, job.p);
      hat_min = std::min(hat_min, hat);
    }
    if (hat_min != p_min) out.fail("trial " + std::to_string(trial) + ": rounded minimum moved");
    // k_J counted independently: grid points p_min (1+eps)^k with k <= log_{1+eps}(p_max / p_min)
    Duration p_max = jobs[0].p;
    for (const auto& job : jobs) p_max = std::max(p_max, job.p);
    std::size_t k_j = 1;
    for (Rational g = p_min * (1 + eps); g <= p_max; g *= 1 + eps) ++k_j;
    std::set<Duration> values;
    for (const auto& job : jobs) values.insert(r.p_hat(job.id));
    if (values.size() > k_j) out.fail("trial " + std::to_string(trial) + ": too many distinct values");
    ++out.checked;
  }
  return out;
}

// 5
Outcome aqptas_ratio() {
  Outcome out;
  baf::testing::Random rng(1005);
  for (int trial = 0; trial < 400; ++trial) {
    Rational eps = trial % 2 ? q(1, 4) : q(1, 2);
    Instance inst = rng.instance(1, 7, 3);
    Duration total = total_working_time(inst, almost_qptas(inst, eps));
    Duration opt = oracle_total(inst);
    if (total > Rational((1 + eps) * opt)) out.fail("trial " + std::to_string(trial) + ": " + to_string(total) + " vs opt " + to_string(opt));
    ++out.checked;
  }
  return out;
}

// 6
Outcome ptas_ratio() {
  Outcome out;
  baf::testing::Random rng(1006);
  for (int trial = 0; trial < 400; ++trial) {
    Rational eps = trial % 2 ? q(1, 4) : q(1, 2);
    Instance inst = rng.layered(3, 7, 3, eps);
    auto result = ptas_solve_detailed(inst, eps);
    const auto& part = result.partition;
    if (part.layers.size() < 3) out.fail("trial " + std::to_string(trial) + ": fewer than 3 layers");

    Duration total = total_working_time(inst, result.schedule);
    Duration opt = oracle_total(inst);
    if (total > Rational((1 + 5 * eps) * opt)) out.fail("trial " + std::to_string(trial) + ": " + to_string(total) + " vs opt " + to_string(opt));

    // partition is over normalized times
    Instance norm = inst.scaled(1 / result.scale);
    Duration gap = 0;
    for (JobId j : part.discarded) gap += norm.p(j);
    if (gap > Rational(eps * norm.total_processing_time())) out.fail("trial " + std::to_string(trial) + ": gap bound");
    Rational spread = pow(1 / eps, static_cast<unsigned>(part.K - 1));
    for (const auto& block : part.blocks) {
      Duration lo = norm.p(block.jobs.front()), hi = lo;
      for (JobId j : block.jobs) {
        lo = std::min(lo, norm.p(j));
        hi = std::max(hi, norm.p(j));
      }
      if (Rational(hi / lo) > spread) out.fail("trial " + std::to_string(trial) + ": block spread");
    }
    ++out.checked;
  }
  return out;
}

// 7
Outcome mixed_criticality() {
  Outcome out;
  baf::testing::Random rng(1007);
  const Rational eps = q(1, 4);
  for (int trial = 0; trial < 250; ++trial) {
    auto mc = rng.mc_instance(8, rng.index(1, 5));
    auto sched = mc::mc_solve(mc, eps);
    if (!mc::mc_feasible(mc, sched).empty()) out.fail("trial " + std::to_string(trial) + ": infeasible");
    if (mc::mc_makespan(mc, sched) < mc::mc_lower_bound(mc)) out.fail("trial " + std::to_string(trial) + ": below lower bound");
    ++out.checked;
  }
  for (int trial = 0; trial < 200; ++trial) {
    auto mc = rng.mc_instance(6, 2);
    auto sched = mc::mc_solve(mc, eps);
    Duration makespan = mc::mc_makespan(mc, sched);
    Duration best = mc::mc_brute_force_l2(mc);
    if (!mc::mc_feasible(mc, sched).empty()) out.fail("L=2 trial " + std::to_string(trial) + ": infeasible");
    if (makespan > Rational((1 + 5 * eps) * best)) out.fail("L=2 trial " + std::to_string(trial) + ": " + to_string(makespan) + " vs " + to_string(best));
    ++out.checked;
  }
  return out;
}

// 8
Outcome golden_micro() {
  Outcome out;
  Instance inst({q(3), q(3), q(2)}, {q(4), q(3)});
  Duration ffd = total_working_time(inst, ffd_solve(inst));
  Duration dp = total_working_time(inst, dp_solve(inst));
  Duration opt = oracle_total(inst);
  Duration enumerated = baf::testing::enumerate_optimum({q(3), q(3), q(2)}, {q(4), q(3)});
  if (ffd != 9) out.fail("ffd " + to_string(ffd));
  if (dp != 8 || opt != 8 || enumerated != 8) out.fail("dp " + to_string(dp) + " oracle " + to_string(opt));
  if (Rational(ffd / opt) != q(9, 8)) out.fail("ratio " + to_string(Rational(ffd / opt)));
  out.checked = 1;
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double limit_s;  // 0 = no stated limit
  };
  const std::vector<Criterion> criteria{
      {"1 ffd-ratio", ffd_ratio, 30},
      {"2 ffd-tightness", ffd_tightness, 0},
      {"3 dp-optimality", dp_optimality, 30},
      {"4 round-down", round_down_properties, 0},
      {"5 aqptas-ratio", aqptas_ratio, 0},
      {"6 ptas-ratio", ptas_ratio, 0},
      {"7 mixed-criticality", mixed_criticality, 0},
      {"8 golden-micro", golden_micro, 0},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    auto begin = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
    if (c.limit_s > 0 && secs >= c.limit_s) out.fail("took " + std::to_string(secs) + " s");
    if (!out.ok) ++failures;
    std::printf("%s %-20s cases=%zu time=%.2fs%s%s\n", out.ok ? "PASS" : "FAIL", c.name, out.checked, secs,
                out.detail.empty() ? "" : "  ", out.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
