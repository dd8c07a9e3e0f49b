#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <vector>

#include "baf/core.hpp"

namespace baf {

struct RoundedJob {
  unsigned long k = 0;  // exponent of (1 + epsilon)
  Duration p_hat;
};

/// Output of the round-down procedure: p_hat_j = p_min * (1+eps)^k_j where
/// k_j is the largest integer with p_min * (1+eps)^k_j <= p_j.
struct RoundedTimes {
  Rational epsilon;
  Duration p_min;
  std::map<JobId, RoundedJob> per_job;

  const Duration& p_hat(JobId j) const {
    auto it = per_job.find(j);
    if (it == per_job.end()) throw IdentifierError("no rounded value for job " + std::to_string(j));
    return it->second.p_hat;
  }

  std::size_t distinct_values() const {
    std::set<unsigned long> ks;
    for (const auto& [id, r] : per_job) ks.insert(r.k);
    return ks.size();
  }
};

namespace detail {

inline void require_round_down_domain(std::span<const Job> jobs, const Rational& epsilon) {
  if (jobs.empty()) throw DomainError("round-down needs at least one job");
  if (epsilon <= 0) throw DomainError("epsilon must be positive, got " + to_string(epsilon));
  for (const auto& job : jobs) {
    if (job.p <= 0) throw DomainError("processing time must be positive");
  }
}

inline Duration min_p(std::span<const Job> jobs) {
  Duration m = jobs.front().p;
  for (const auto& job : jobs) if (job.p < m) m = job.p;
  return m;
}

inline Duration max_p(std::span<const Job> jobs) {
  Duration m = jobs.front().p;
  for (const auto& job : jobs) if (job.p > m) m = job.p;
  return m;
}

/// Largest k with base * ratio^k <= value (base <= value, ratio > 1),
/// by repeated exact multiplication.
inline unsigned long grid_exponent(const Duration& base, const Rational& ratio,
                                   const Duration& value) {
  unsigned long k = 0;
  Duration acc = base * ratio;
  while (acc <= value) {
    ++k;
    acc *= ratio;
  }
  return k;
}

}  // namespace detail

inline RoundedTimes round_down(std::span<const Job> jobs, const Rational& epsilon) {
  detail::require_round_down_domain(jobs, epsilon);
  RoundedTimes out;
  out.epsilon = epsilon;
  out.p_min = detail::min_p(jobs);
  const Rational ratio = 1 + epsilon;

  // Walk the grid once in ascending p so the accumulator never restarts.
  std::vector<std::size_t> order(jobs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return jobs[a].p < jobs[b].p; });

  unsigned long k = 0;
  Duration grid = out.p_min;
  Duration next = grid * ratio;
  for (std::size_t idx : order) {
    const Job& job = jobs[idx];
    while (next <= job.p) {
      ++k;
      grid = next;
      next *= ratio;
    }
    out.per_job[job.id] = RoundedJob{k, grid};
  }
  return out;
}

inline RoundedTimes round_down(const Instance& inst, const Rational& epsilon) {
  auto jobs = inst.jobs();
  return round_down(std::span<const Job>(jobs), epsilon);
}

/// k_J = floor(log_{1+eps}(p_max / p_min)) + 1, computed exactly.
inline unsigned long distinct_count_bound(std::span<const Job> jobs, const Rational& epsilon) {
  detail::require_round_down_domain(jobs, epsilon);
  return detail::grid_exponent(detail::min_p(jobs), 1 + epsilon, detail::max_p(jobs)) + 1;
}

}  // namespace baf
