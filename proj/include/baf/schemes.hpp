#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "baf/core.hpp"
#include "baf/exact.hpp"
#include "baf/rounding.hpp"

namespace baf {

struct AqptasResult {
  Schedule schedule;
  RoundedTimes rounded;  // empty per_job when the instance has no jobs
};

/// Rounds processing times down to the (1+eps) grid, then solves the rounded
/// instance optimally. Evaluated with the original p the result is within a
/// factor (1 + eps) of the optimum.
inline AqptasResult almost_qptas_detailed(const Instance& inst, const Rational& epsilon,
                                          unsigned long long state_budget = kDefaultStateBudget) {
  if (epsilon <= 0) throw DomainError("epsilon must be positive, got " + to_string(epsilon));
  detail::require_machines(inst);
  AqptasResult out;
  out.rounded.epsilon = epsilon;
  if (inst.num_jobs() == 0) {
    out.schedule = dp_solve(inst, state_budget);
    return out;
  }
  out.rounded = round_down(inst, epsilon);
  std::vector<Duration> p_hat;
  p_hat.reserve(inst.num_jobs());
  for (JobId j = 0; j < inst.num_jobs(); ++j) p_hat.push_back(out.rounded.p_hat(j));
  Instance rounded_inst(std::move(p_hat), inst.capacities(), inst.capacity_policy());
  out.schedule = dp_solve(rounded_inst, state_budget);
  return out;
}

inline Schedule almost_qptas(const Instance& inst, const Rational& epsilon,
                             unsigned long long state_budget = kDefaultStateBudget) {
  return almost_qptas_detailed(inst, epsilon, state_budget).schedule;
}

namespace detail {

inline void require_ptas_epsilon(const Rational& epsilon) {
  if (epsilon <= 0 || epsilon > Rational(1, 2)) {
    throw DomainError("epsilon must lie in (0, 1/2], got " + to_string(epsilon));
  }
}

}  // namespace detail

/// The unique i >= 0 with eps^(i+1) < p <= eps^i, for 0 < p <= 1.
inline unsigned long layer_index(const Duration& p, const Rational& epsilon) {
  detail::require_ptas_epsilon(epsilon);
  if (p <= 0 || p > 1) throw DomainError("layer_index needs 0 < p <= 1, got " + to_string(p));
  unsigned long i = 0;
  Rational lower = epsilon;  // eps^(i+1)
  while (p <= lower) {
    ++i;
    lower *= epsilon;
  }
  return i;
}

/// Layers I(i), their K residue classes, the lightest class G_t (discarded)
/// and the blocks B_i^(t) of the surviving layers.
struct BlockPartition {
  struct Block {
    unsigned long index;
    std::vector<JobId> jobs;
  };

  Rational epsilon;
  unsigned long K = 0;
  std::map<unsigned long, std::vector<JobId>> layers;
  std::vector<Duration> class_sums;
  unsigned long t = 0;
  std::vector<Block> blocks;  // non-empty only, ascending index
  std::vector<JobId> discarded;
  std::map<JobId, unsigned long> layer_of;
};

/// Block holding layer l when the gap class is t (l not congruent to t mod K):
/// layers below t form block 0; layers (i-1)K+t+1 .. iK+t-1 form block i.
inline unsigned long block_of_layer(unsigned long layer, unsigned long t, unsigned long K) {
  if (layer < t) return 0;
  return (layer - t) / K + 1;
}

/// Jobs must already be normalized so that every p lies in (0, 1].
inline BlockPartition partition_layers(std::span<const Job> jobs, const Rational& epsilon) {
  detail::require_ptas_epsilon(epsilon);
  BlockPartition part;
  part.epsilon = epsilon;
  part.K = baf::ceil(Rational(1 / epsilon)).get_ui();
  part.class_sums.assign(part.K, Duration(0));
  if (jobs.empty()) return part;

  for (const auto& job : jobs) {
    unsigned long layer = layer_index(job.p, epsilon);
    part.layers[layer].push_back(job.id);
    part.layer_of[job.id] = layer;
    part.class_sums[layer % part.K] += job.p;
  }
  part.t = static_cast<unsigned long>(
      std::min_element(part.class_sums.begin(), part.class_sums.end()) -
      part.class_sums.begin());

  std::map<unsigned long, std::vector<JobId>> blocks;
  for (const auto& [layer, ids] : part.layers) {
    if (layer % part.K == part.t) {
      part.discarded.insert(part.discarded.end(), ids.begin(), ids.end());
    } else {
      auto& block = blocks[block_of_layer(layer, part.t, part.K)];
      block.insert(block.end(), ids.begin(), ids.end());
    }
  }
  for (auto& [index, ids] : blocks) {
    std::sort(ids.begin(), ids.end());
    part.blocks.push_back({index, std::move(ids)});
  }
  std::sort(part.discarded.begin(), part.discarded.end());
  return part;
}

inline BlockPartition partition_layers(const Instance& inst, const Rational& epsilon) {
  auto jobs = inst.jobs();
  return partition_layers(std::span<const Job>(jobs), epsilon);
}

using ResidualCapacities = std::vector<Duration>;

/// c_q minus the rounded load already placed on q, clamped at zero.
/// `rounded` maps each placed job to the p_hat it was scheduled with.
inline ResidualCapacities residual_capacities(const Instance& inst,
                                              const std::map<JobId, MachineId>& placed,
                                              const std::map<JobId, Duration>& rounded) {
  ResidualCapacities residual = inst.capacities();
  for (const auto& [job, machine] : placed) {
    auto it = rounded.find(job);
    if (it == rounded.end()) {
      throw IdentifierError("placed job " + std::to_string(job) + " has no rounded value");
    }
    if (machine >= residual.size()) {
      throw IdentifierError("unknown machine id " + std::to_string(machine));
    }
    residual[machine] -= it->second;
  }
  for (auto& r : residual) {
    if (r < 0) r = 0;
  }
  return residual;
}

inline ResidualCapacities residual_capacities(const Instance& inst,
                                              const std::map<JobId, MachineId>& placed,
                                              const RoundedTimes& rounded) {
  std::map<JobId, Duration> p_hat;
  for (const auto& [id, r] : rounded.per_job) p_hat.emplace(id, r.p_hat);
  return residual_capacities(inst, placed, p_hat);
}

/// Intermediate state of a PTAS run, exposed for inspection and tests.
struct PtasResult {
  Schedule schedule;
  Rational scale;  // max p used for normalization
  BlockPartition partition;
  std::map<JobId, Duration> rounded;  // normalized p_hat of every block job
};

/// Polynomial-time approximation scheme, ratio (1 + 5 eps) for 0 < eps <= 1/2.
///
/// The instance is normalized to max p = 1, split into layer blocks with the
/// lightest residue class of layers removed, and each non-empty block is
/// solved in ascending order by almost_qptas against the capacities left over
/// by the rounded loads of earlier blocks. Removed jobs are then added,
/// largest first, where they raise the true working time least.
inline PtasResult ptas_solve_detailed(const Instance& inst, const Rational& epsilon,
                                      unsigned long long state_budget = kDefaultStateBudget) {
  detail::require_ptas_epsilon(epsilon);
  detail::require_machines(inst);
  PtasResult out;
  out.partition.epsilon = epsilon;
  if (inst.num_jobs() == 0) {
    out.scale = 1;
    return out;
  }

  out.scale = *std::max_element(inst.processing_times().begin(), inst.processing_times().end());
  Instance normalized = inst.scaled(1 / out.scale);
  out.partition = partition_layers(normalized, epsilon);

  std::map<JobId, MachineId> placed;
  for (const auto& block : out.partition.blocks) {
    ResidualCapacities residual = residual_capacities(normalized, placed, out.rounded);
    std::vector<Duration> block_p;
    block_p.reserve(block.jobs.size());
    for (JobId j : block.jobs) block_p.push_back(normalized.p(j));
    Instance sub(std::move(block_p), residual, CapacityPolicy::AllowZero);

    AqptasResult solved = almost_qptas_detailed(sub, epsilon, state_budget);
    for (std::size_t local = 0; local < block.jobs.size(); ++local) {
      JobId j = block.jobs[local];
      placed[j] = *solved.schedule.machine_of(local);
      out.rounded[j] = solved.rounded.p_hat(local);
    }
  }

  std::vector<Duration> loads(normalized.num_machines(), Duration(0));
  for (const auto& [job, machine] : placed) loads[machine] += normalized.p(job);

  std::vector<JobId> gap = out.partition.discarded;
  std::stable_sort(gap.begin(), gap.end(),
                   [&](JobId a, JobId b) { return normalized.p(a) > normalized.p(b); });
  for (JobId j : gap) {
    MachineId i = detail::best_fit_machine(loads, normalized.capacities(), normalized.p(j));
    loads[i] += normalized.p(j);
    placed[j] = i;
  }

  for (const auto& [job, machine] : placed) out.schedule.assign(job, machine);
  return out;
}

inline Schedule ptas_solve(const Instance& inst, const Rational& epsilon,
                           unsigned long long state_budget = kDefaultStateBudget) {
  return ptas_solve_detailed(inst, epsilon, state_budget).schedule;
}

}  // namespace baf
