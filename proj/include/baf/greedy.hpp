#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "baf/core.hpp"

namespace baf {

struct FfdStep {
  enum class Phase { Fill, Leftover };
  MachineId machine;
  JobId job;
  Duration load_after;
  Phase phase = Phase::Fill;
};

struct FfdResult {
  Schedule schedule;
  std::vector<FfdStep> steps;
};

/// First-fit-decreasing for BAF, with its decision log.
///
/// Machines are visited in non-increasing capacity order (ties: smaller id
/// first). While a machine's load is below its capacity it receives the
/// largest unassigned job (ties: smaller id first); a machine whose load has
/// reached its capacity is saturated. Jobs left after the last machine are
/// placed one by one, largest first, on the machine whose working time grows
/// least (ties: smaller machine id).
inline FfdResult ffd_trace(const Instance& inst) {
  detail::require_machines(inst);
  FfdResult result;

  std::vector<JobId> jobs(inst.num_jobs());
  std::iota(jobs.begin(), jobs.end(), JobId{0});
  std::stable_sort(jobs.begin(), jobs.end(),
                   [&](JobId a, JobId b) { return inst.p(a) > inst.p(b); });

  std::vector<MachineId> machines(inst.num_machines());
  std::iota(machines.begin(), machines.end(), MachineId{0});
  std::stable_sort(machines.begin(), machines.end(),
                   [&](MachineId a, MachineId b) { return inst.c(a) > inst.c(b); });

  std::vector<Duration> loads(inst.num_machines(), Duration(0));
  std::size_t next = 0;
  for (MachineId i : machines) {
    while (loads[i] < inst.c(i) && next < jobs.size()) {
      JobId j = jobs[next++];
      loads[i] += inst.p(j);
      result.schedule.assign(j, i);
      result.steps.push_back({i, j, loads[i], FfdStep::Phase::Fill});
    }
  }

  for (; next < jobs.size(); ++next) {
    JobId j = jobs[next];
    MachineId i = detail::best_fit_machine(loads, inst.capacities(), inst.p(j));
    loads[i] += inst.p(j);
    result.schedule.assign(j, i);
    result.steps.push_back({i, j, loads[i], FfdStep::Phase::Leftover});
  }
  return result;
}

/// 3/2-approximation; see ffd_trace for the exact procedure.
inline Schedule ffd_solve(const Instance& inst) { return ffd_trace(inst).schedule; }

}  // namespace baf
