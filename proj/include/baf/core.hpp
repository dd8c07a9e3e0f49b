#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "baf/error.hpp"
#include "baf/rational.hpp"

namespace baf {

using JobId = std::size_t;
using MachineId = std::size_t;

struct Job {
  JobId id;
  Duration p;
};

struct Machine {
  MachineId id;
  Duration c;
};

/// Whether a capacity of exactly zero is accepted. Ordinary instances need
/// c > 0; instances produced by the mixed-criticality pair reduction or by
/// residual capacities may legitimately contain c = 0.
enum class CapacityPolicy { Positive, AllowZero };

/// A BAF instance (J, M, p, c). Job and machine ids are their positions, so
/// they are unique and contiguous from 0 by construction.
class Instance {
 public:
  Instance() = default;

  Instance(std::vector<Duration> processing_times, std::vector<Duration> capacities,
           CapacityPolicy policy = CapacityPolicy::Positive)
      : p_(std::move(processing_times)), c_(std::move(capacities)), policy_(policy) {
    for (std::size_t j = 0; j < p_.size(); ++j) {
      if (p_[j] <= 0) {
        throw ValidationError("job " + std::to_string(j) +
                              " has non-positive processing time " + to_string(p_[j]));
      }
    }
    for (std::size_t i = 0; i < c_.size(); ++i) {
      bool bad = policy_ == CapacityPolicy::Positive ? c_[i] <= 0 : c_[i] < 0;
      if (bad) {
        throw ValidationError("machine " + std::to_string(i) + " has invalid capacity " +
                              to_string(c_[i]));
      }
    }
  }

  std::size_t num_jobs() const noexcept { return p_.size(); }
  std::size_t num_machines() const noexcept { return c_.size(); }
  bool empty() const noexcept { return p_.empty() && c_.empty(); }
  CapacityPolicy capacity_policy() const noexcept { return policy_; }

  const Duration& p(JobId j) const {
    if (j >= p_.size()) throw IdentifierError("unknown job id " + std::to_string(j));
    return p_[j];
  }
  const Duration& c(MachineId i) const {
    if (i >= c_.size()) throw IdentifierError("unknown machine id " + std::to_string(i));
    return c_[i];
  }

  const std::vector<Duration>& processing_times() const noexcept { return p_; }
  const std::vector<Duration>& capacities() const noexcept { return c_; }

  std::vector<Job> jobs() const {
    std::vector<Job> out;
    out.reserve(p_.size());
    for (std::size_t j = 0; j < p_.size(); ++j) out.push_back({j, p_[j]});
    return out;
  }
  std::vector<Machine> machines() const {
    std::vector<Machine> out;
    out.reserve(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out.push_back({i, c_[i]});
    return out;
  }

  Duration total_processing_time() const {
    Duration sum = 0;
    for (const auto& v : p_) sum += v;
    return sum;
  }
  Duration total_capacity() const {
    Duration sum = 0;
    for (const auto& v : c_) sum += v;
    return sum;
  }

  /// Same instance with every p and c multiplied by factor > 0.
  Instance scaled(const Rational& factor) const {
    if (factor <= 0) throw DomainError("scale factor must be positive");
    auto p = p_;
    auto c = c_;
    for (auto& v : p) v *= factor;
    for (auto& v : c) v *= factor;
    return Instance(std::move(p), std::move(c), policy_);
  }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.p_ == b.p_ && a.c_ == b.c_;
  }

 private:
  std::vector<Duration> p_;
  std::vector<Duration> c_;
  CapacityPolicy policy_ = CapacityPolicy::Positive;
};

/// Mapping job -> machine. May be partial or refer to unknown machines while
/// being built or after parsing; validate_schedule reports such defects.
class Schedule {
 public:
  Schedule() = default;

  /// Dense form: job j goes to machines[j].
  explicit Schedule(const std::vector<MachineId>& machines) {
    for (std::size_t j = 0; j < machines.size(); ++j) assignment_.emplace(j, machines[j]);
  }

  void assign(JobId job, MachineId machine) { assignment_[job] = machine; }

  std::optional<MachineId> machine_of(JobId job) const {
    auto it = assignment_.find(job);
    if (it == assignment_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const noexcept { return assignment_.size(); }
  const std::map<JobId, MachineId>& assignment() const noexcept { return assignment_; }
  auto begin() const { return assignment_.begin(); }
  auto end() const { return assignment_.end(); }

  friend bool operator==(const Schedule&, const Schedule&) = default;

 private:
  std::map<JobId, MachineId> assignment_;
};

struct ScheduleViolation {
  enum class Kind { MissingJob, UnknownMachine, UnknownJob };
  Kind kind;
  JobId job;
  MachineId machine = 0;  // meaningful for UnknownMachine only

  std::string describe() const {
    switch (kind) {
      case Kind::MissingJob:
        return "missing-job(" + std::to_string(job) + ")";
      case Kind::UnknownMachine:
        return "unknown-machine(" + std::to_string(job) + "->" + std::to_string(machine) + ")";
      case Kind::UnknownJob:
        return "unknown-job(" + std::to_string(job) + ")";
    }
    return "unknown";
  }

  friend bool operator==(const ScheduleViolation&, const ScheduleViolation&) = default;
};

/// Empty iff every job of inst is mapped exactly once to an existing machine.
inline std::vector<ScheduleViolation> validate_schedule(const Instance& inst,
                                                        const Schedule& sched) {
  std::vector<ScheduleViolation> out;
  for (JobId j = 0; j < inst.num_jobs(); ++j) {
    auto m = sched.machine_of(j);
    if (!m) {
      out.push_back({ScheduleViolation::Kind::MissingJob, j});
    } else if (*m >= inst.num_machines()) {
      out.push_back({ScheduleViolation::Kind::UnknownMachine, j, *m});
    }
  }
  for (const auto& [job, machine] : sched) {
    if (job >= inst.num_jobs()) out.push_back({ScheduleViolation::Kind::UnknownJob, job});
  }
  return out;
}

inline void require_valid(const Instance& inst, const Schedule& sched) {
  auto violations = validate_schedule(inst, sched);
  if (!violations.empty()) {
    std::string msg = "invalid schedule:";
    for (const auto& v : violations) msg += " " + v.describe();
    throw ValidationError(msg);
  }
}

/// Sum of processing times per machine. Assumes sched is valid.
inline std::vector<Duration> machine_loads(const Instance& inst, const Schedule& sched) {
  std::vector<Duration> loads(inst.num_machines(), Duration(0));
  for (const auto& [job, machine] : sched) loads[machine] += inst.p(job);
  return loads;
}

/// T(sigma, i) = max{ load(i), c_i }.
inline Duration working_time(const Instance& inst, const Schedule& sched, MachineId machine) {
  if (machine >= inst.num_machines()) {
    throw IdentifierError("unknown machine id " + std::to_string(machine));
  }
  require_valid(inst, sched);
  Duration load = 0;
  for (const auto& [job, m] : sched) {
    if (m == machine) load += inst.p(job);
  }
  return std::max(load, inst.c(machine));
}

struct Evaluation {
  std::vector<Duration> per_machine;
  Duration total = 0;
};

/// Per-machine working times and the BAF objective sum_i max{load(i), c_i}.
inline Evaluation evaluate(const Instance& inst, const Schedule& sched) {
  require_valid(inst, sched);
  Evaluation ev;
  ev.per_machine = machine_loads(inst, sched);
  for (MachineId i = 0; i < inst.num_machines(); ++i) {
    if (ev.per_machine[i] < inst.c(i)) ev.per_machine[i] = inst.c(i);
    ev.total += ev.per_machine[i];
  }
  return ev;
}

inline Duration total_working_time(const Instance& inst, const Schedule& sched) {
  return evaluate(inst, sched).total;
}

/// max{ sum p, sum c }: a lower bound on every schedule's objective.
inline Duration trivial_lower_bound(const Instance& inst) {
  return std::max(inst.total_processing_time(), inst.total_capacity());
}

namespace detail {

inline void require_machines(const Instance& inst) {
  if (inst.num_jobs() > 0 && inst.num_machines() == 0) {
    throw InfeasibleInstanceError("instance has " + std::to_string(inst.num_jobs()) +
                                  " jobs but no machines");
  }
}

/// Increase of max{load, c} when p is added to a machine with the given load.
inline Duration marginal_increase(const Duration& load, const Duration& capacity,
                                  const Duration& p) {
  Duration before = std::max(load, capacity);
  Duration after = std::max(Duration(load + p), capacity);
  return after - before;
}

/// Machine with minimal marginal increase; ties to the smallest id.
inline MachineId best_fit_machine(const std::vector<Duration>& loads,
                                  const std::vector<Duration>& capacities, const Duration& p) {
  MachineId best = 0;
  Duration best_delta = marginal_increase(loads[0], capacities[0], p);
  for (MachineId i = 1; i < loads.size(); ++i) {
    Duration delta = marginal_increase(loads[i], capacities[i], p);
    if (delta < best_delta) {
      best_delta = delta;
      best = i;
    }
  }
  return best;
}

}  // namespace detail

}  // namespace baf
