#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "baf/core.hpp"
#include "baf/exact.hpp"
#include "baf/schemes.hpp"

namespace baf::mc {

using FJobId = long long;

/// F-shaped job: widths[l-1] = p(B, l) for criticality levels l = 1..h(B),
/// non-decreasing and positive.
struct FJob {
  FJobId id;
  std::vector<Duration> widths;

  std::size_t height() const noexcept { return widths.size(); }
  const Duration& width(std::size_t level) const { return widths.at(level - 1); }
  const Duration& top() const { return widths.back(); }
};

class MCInstance {
 public:
  MCInstance() = default;

  explicit MCInstance(std::vector<FJob> jobs) : jobs_(std::move(jobs)) {
    std::sort(jobs_.begin(), jobs_.end(),
              [](const FJob& a, const FJob& b) { return a.id < b.id; });
    for (std::size_t k = 0; k < jobs_.size(); ++k) {
      const FJob& job = jobs_[k];
      const std::string name = "F-shaped job " + std::to_string(job.id);
      if (k > 0 && jobs_[k - 1].id == job.id) throw ValidationError(name + " is duplicated");
      if (job.widths.empty()) throw ValidationError(name + " has height 0");
      for (std::size_t l = 0; l < job.widths.size(); ++l) {
        if (job.widths[l] <= 0) throw ValidationError(name + " has a non-positive width");
        if (l > 0 && job.widths[l] < job.widths[l - 1]) {
          throw ValidationError(name + " has decreasing widths");
        }
      }
      levels_ = std::max(levels_, job.height());
      index_.emplace(job.id, k);
    }
  }

  /// L, the maximum criticality level (0 for an empty instance).
  std::size_t levels() const noexcept { return levels_; }
  const std::vector<FJob>& jobs() const noexcept { return jobs_; }
  std::size_t size() const noexcept { return jobs_.size(); }

  const FJob& job(FJobId id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw IdentifierError("unknown F-shaped job " + std::to_string(id));
    return jobs_[it->second];
  }

  /// S_l: jobs of height exactly l, ascending id.
  std::vector<FJobId> with_height(std::size_t level) const {
    std::vector<FJobId> out;
    for (const auto& job : jobs_) {
      if (job.height() == level) out.push_back(job.id);
    }
    return out;
  }

 private:
  std::vector<FJob> jobs_;
  std::map<FJobId, std::size_t> index_;
  std::size_t levels_ = 0;
};

/// Start times plus the nesting structure they were assembled from.
/// A nullopt parent marks a root (standalone) job.
struct MCSchedule {
  std::map<FJobId, Duration> start;
  std::map<FJobId, std::optional<FJobId>> nesting;
};

/// BAF instance for pair P_i = (S_{2i-1}, S_{2i}) with the id maps needed to
/// read a BAF schedule back.
struct PairInstance {
  std::size_t pair_index;
  Instance baf;
  std::vector<FJobId> job_ids;      // BAF job index -> F-shaped job
  std::vector<FJobId> machine_ids;  // BAF machine index -> F-shaped job

  /// Jobs but no machines: the pair cannot be solved as BAF.
  bool infeasible() const noexcept { return baf.num_jobs() > 0 && baf.num_machines() == 0; }
};

/// Jobs of height 2i-1 become BAF jobs with p = p(B, 2i-1); jobs of height 2i
/// become machines with c = p(B, 2i) - p(B, 2i-1), which may be zero.
inline PairInstance pair_reduce(const MCInstance& mc, std::size_t pair_index) {
  if (pair_index < 1 || pair_index > mc.levels() / 2) {
    throw DomainError("pair index " + std::to_string(pair_index) + " outside 1.." +
                      std::to_string(mc.levels() / 2));
  }
  PairInstance out{pair_index, {}, mc.with_height(2 * pair_index - 1),
                   mc.with_height(2 * pair_index)};
  std::vector<Duration> p;
  for (FJobId id : out.job_ids) p.push_back(mc.job(id).width(2 * pair_index - 1));
  std::vector<Duration> c;
  for (FJobId id : out.machine_ids) {
    const FJob& root = mc.job(id);
    c.push_back(root.width(2 * pair_index) - root.width(2 * pair_index - 1));
  }
  out.baf = Instance(std::move(p), std::move(c), CapacityPolicy::AllowZero);
  return out;
}

/// Window length T(sigma, B) of a root:
/// max{ p(B, h), p(B, h-1) + sum of children's top widths }, or p(B, 1) when h = 1.
inline Duration root_window(const MCInstance& mc, const FJob& root,
                            const std::vector<FJobId>& children) {
  if (root.height() == 1) {
    if (!children.empty()) throw ValidationError("a height-1 job cannot host children");
    return root.top();
  }
  Duration inner = root.width(root.height() - 1);
  for (FJobId child : children) inner += mc.job(child).top();
  return std::max(root.top(), inner);
}

/// Lays roots out back to back from time 0. Children of a root start one after
/// another from t_B + p(B, h-1), in the given order.
inline MCSchedule assemble(const MCInstance& mc, const std::vector<FJobId>& roots,
                           const std::map<FJobId, std::vector<FJobId>>& children) {
  MCSchedule sched;
  Duration clock = 0;
  for (FJobId id : roots) {
    const FJob& root = mc.job(id);
    auto it = children.find(id);
    static const std::vector<FJobId> kNone;
    const auto& kids = it == children.end() ? kNone : it->second;

    sched.start[id] = clock;
    sched.nesting[id] = std::nullopt;
    if (!kids.empty()) {
      Duration t = clock + root.width(root.height() - 1);
      for (FJobId child : kids) {
        sched.start[child] = t;
        sched.nesting[child] = id;
        t += mc.job(child).top();
      }
    }
    clock += root_window(mc, root, kids);
  }
  return sched;
}

/// Pair every two consecutive height classes, solve each pair as BAF with the
/// PTAS and assemble the nested layout. Makespan is within ceil(L/2)(1+5eps)
/// of optimal.
inline MCSchedule mc_solve(const MCInstance& mc, const Rational& epsilon,
                           unsigned long long state_budget = kDefaultStateBudget) {
  detail::require_ptas_epsilon(epsilon);
  std::vector<FJobId> roots;
  std::vector<FJobId> fallback;
  std::map<FJobId, std::vector<FJobId>> children;

  for (std::size_t i = 1; i <= mc.levels() / 2; ++i) {
    PairInstance pair = pair_reduce(mc, i);
    roots.insert(roots.end(), pair.machine_ids.begin(), pair.machine_ids.end());
    if (pair.infeasible()) {
      fallback.insert(fallback.end(), pair.job_ids.begin(), pair.job_ids.end());
      continue;
    }
    if (pair.baf.num_jobs() == 0) continue;
    Schedule sched = ptas_solve(pair.baf, epsilon, state_budget);
    for (const auto& [job, machine] : sched) {
      children[pair.machine_ids[machine]].push_back(pair.job_ids[job]);
    }
  }
  if (mc.levels() % 2 == 1) {
    auto top = mc.with_height(mc.levels());
    roots.insert(roots.end(), top.begin(), top.end());
  }
  roots.insert(roots.end(), fallback.begin(), fallback.end());
  for (auto& [root, kids] : children) std::sort(kids.begin(), kids.end());
  return assemble(mc, roots, children);
}

struct MCViolation {
  std::size_t level;
  FJobId first;
  FJobId second;

  friend bool operator==(const MCViolation&, const MCViolation&) = default;
};

/// Every (level, B, B') whose level-l intervals overlap. Empty means feasible.
inline std::vector<MCViolation> mc_feasible(const MCInstance& mc, const MCSchedule& sched) {
  std::vector<const Duration*> starts;
  starts.reserve(mc.size());
  for (const auto& job : mc.jobs()) {
    auto it = sched.start.find(job.id);
    if (it == sched.start.end()) {
      throw IdentifierError("F-shaped job " + std::to_string(job.id) + " has no start time");
    }
    starts.push_back(&it->second);
  }
  std::vector<MCViolation> out;
  const auto& jobs = mc.jobs();
  for (std::size_t level = 1; level <= mc.levels(); ++level) {
    for (std::size_t a = 0; a < jobs.size(); ++a) {
      if (jobs[a].height() < level) continue;
      for (std::size_t b = a + 1; b < jobs.size(); ++b) {
        if (jobs[b].height() < level) continue;
        bool b_first = *starts[b] + jobs[b].width(level) <= *starts[a];
        bool a_first = *starts[a] + jobs[a].width(level) <= *starts[b];
        if (!a_first && !b_first) out.push_back({level, jobs[a].id, jobs[b].id});
      }
    }
  }
  return out;
}

/// max over jobs of start + top width.
inline Duration mc_makespan(const MCInstance& mc, const MCSchedule& sched) {
  Duration makespan = 0;
  for (const auto& job : mc.jobs()) {
    auto it = sched.start.find(job.id);
    if (it == sched.start.end()) {
      throw IdentifierError("F-shaped job " + std::to_string(job.id) + " has no start time");
    }
    Duration end = it->second + job.top();
    if (end > makespan) makespan = end;
  }
  return makespan;
}

/// max( max_l sum_{h(B) >= l} p(B, l), max_B p(B, h(B)) ).
inline Duration mc_lower_bound(const MCInstance& mc) {
  Duration bound = 0;
  for (std::size_t level = 1; level <= mc.levels(); ++level) {
    Duration load = 0;
    for (const auto& job : mc.jobs()) {
      if (job.height() >= level) load += job.width(level);
    }
    bound = std::max(bound, load);
  }
  for (const auto& job : mc.jobs()) bound = std::max(bound, job.top());
  return bound;
}

/// Optimal makespan for L <= 2 over every nesting of height-1 jobs under a
/// height-2 root or standalone.
inline Duration mc_brute_force_l2(const MCInstance& mc,
                                  unsigned long long enum_budget = kDefaultEnumBudget) {
  if (mc.levels() > 2) {
    throw DomainError("mc_brute_force_l2 needs L <= 2, got L = " + std::to_string(mc.levels()));
  }
  auto leaves = mc.with_height(1);
  auto roots = mc.with_height(2);
  auto count = detail::saturating_pow(roots.size() + 1, leaves.size());
  if (count > enum_budget) {
    throw CapacityError("nesting enumeration too large", count, enum_budget);
  }

  // choice[k] == roots.size() means standalone
  std::vector<std::size_t> choice(leaves.size(), 0);
  std::vector<Duration> inner(roots.size());
  std::optional<Duration> best;
  while (true) {
    Duration total = 0;
    for (std::size_t r = 0; r < roots.size(); ++r) inner[r] = mc.job(roots[r]).width(1);
    for (std::size_t k = 0; k < leaves.size(); ++k) {
      const Duration& p = mc.job(leaves[k]).top();
      if (choice[k] == roots.size()) {
        total += p;
      } else {
        inner[choice[k]] += p;
      }
    }
    for (std::size_t r = 0; r < roots.size(); ++r) {
      total += std::max(mc.job(roots[r]).top(), inner[r]);
    }
    if (!best || total < *best) best = total;

    std::size_t k = 0;
    for (; k < leaves.size(); ++k) {
      if (++choice[k] <= roots.size()) break;
      choice[k] = 0;
    }
    if (k == leaves.size()) break;
  }
  return *best;
}

}  // namespace baf::mc
