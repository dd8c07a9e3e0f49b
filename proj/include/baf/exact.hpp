#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "baf/core.hpp"

namespace baf {

inline constexpr unsigned long long kDefaultStateBudget = 5'000'000ULL;
inline constexpr unsigned long long kDefaultEnumBudget = 20'000'000ULL;

/// Distinct processing times a_1 < ... < a_k with multiplicities n_l and the
/// jobs (ascending id) carrying each value.
struct ConfigSpace {
  std::vector<Duration> values;
  std::vector<std::size_t> counts;
  std::vector<std::vector<JobId>> groups;

  std::size_t kinds() const noexcept { return values.size(); }

  /// prod (n_l + 1), saturating at the maximum unsigned long long.
  unsigned long long num_tuples() const noexcept {
    constexpr auto kMax = std::numeric_limits<unsigned long long>::max();
    unsigned long long total = 1;
    for (auto n : counts) {
      unsigned long long radix = n + 1;
      if (total > kMax / radix) return kMax;
      total *= radix;
    }
    return total;
  }
};

inline ConfigSpace distinct_times(const Instance& inst) {
  std::map<Duration, std::vector<JobId>> by_value;
  for (JobId j = 0; j < inst.num_jobs(); ++j) by_value[inst.p(j)].push_back(j);
  ConfigSpace space;
  for (auto& [value, ids] : by_value) {
    space.values.push_back(value);
    space.counts.push_back(ids.size());
    space.groups.push_back(std::move(ids));
  }
  return space;
}

/// Table of W(i, q): the minimum total working time of machines 1..i when
/// exactly the job multiset q (a count per distinct value) runs on them.
///
/// Tuples are stored by mixed-radix index with digit l in [0, n_l] and the
/// first digit varying fastest. Row 0 holds the boundary: W(0, 0) = 0 and
/// W(0, q) = infinity otherwise.
class DpTable {
 public:
  DpTable(const ConfigSpace& space, const std::vector<Duration>& capacities,
          unsigned long long state_budget = kDefaultStateBudget)
      : values_(space.values), capacities_(capacities) {
    unsigned long long tuples = space.num_tuples();
    if (tuples > state_budget) {
      throw CapacityError("configuration DP state space too large", tuples, state_budget);
    }
    num_tuples_ = static_cast<std::size_t>(tuples);
    radices_.reserve(space.kinds());
    strides_.reserve(space.kinds());
    std::size_t stride = 1;
    for (auto n : space.counts) {
      radices_.push_back(n + 1);
      strides_.push_back(stride);
      stride *= n + 1;
    }
    build();
  }

  std::size_t num_machines() const noexcept { return capacities_.size(); }
  std::size_t num_tuples() const noexcept { return num_tuples_; }
  std::size_t full_index() const noexcept { return num_tuples_ - 1; }

  bool finite(std::size_t machine_row, std::size_t tuple) const {
    return machine_row > 0 || tuple == 0;
  }
  /// W(i, q). Only meaningful where finite(i, q).
  const Duration& cost(std::size_t machine_row, std::size_t tuple) const {
    return cost_.at(machine_row).at(tuple);
  }
  /// Index of the sub-tuple q' placed on machine i in an optimal split of q.
  std::size_t choice(std::size_t machine_row, std::size_t tuple) const {
    return choice_.at(machine_row).at(tuple);
  }
  const Duration& optimum() const { return cost(num_machines(), full_index()); }

  std::vector<std::size_t> decode(std::size_t tuple) const {
    std::vector<std::size_t> digits(radices_.size());
    for (std::size_t l = 0; l < radices_.size(); ++l) {
      digits[l] = tuple % radices_[l];
      tuple /= radices_[l];
    }
    return digits;
  }
  std::size_t encode(const std::vector<std::size_t>& digits) const {
    std::size_t tuple = 0;
    for (std::size_t l = 0; l < digits.size(); ++l) tuple += digits[l] * strides_[l];
    return tuple;
  }
  std::size_t stride(std::size_t kind) const { return strides_.at(kind); }
  std::size_t radix(std::size_t kind) const { return radices_.at(kind); }
  const Duration& value(std::size_t kind) const { return values_.at(kind); }

 private:
  void build() {
    const std::size_t m = capacities_.size();
    const std::size_t k = radices_.size();

    std::vector<Duration> load(num_tuples_);
    for (std::size_t tuple = 0; tuple < num_tuples_; ++tuple) {
      auto digits = decode(tuple);
      Duration sum = 0;
      for (std::size_t l = 0; l < k; ++l) sum += values_[l] * static_cast<unsigned long>(digits[l]);
      load[tuple] = sum;
    }

    cost_.assign(m + 1, std::vector<Duration>(num_tuples_));
    choice_.assign(m + 1, std::vector<std::size_t>(num_tuples_, 0));
    cost_[0][0] = 0;

    std::vector<Duration> machine_cost(num_tuples_);
    Duration candidate;
    std::vector<std::size_t> q(k, 0);
    std::vector<std::size_t> sub(k, 0);
    for (std::size_t i = 1; i <= m; ++i) {
      const Duration& c = capacities_[i - 1];
      for (std::size_t t = 0; t < num_tuples_; ++t) {
        machine_cost[t] = load[t] < c ? c : load[t];
      }
      std::fill(q.begin(), q.end(), 0);
      for (std::size_t tuple = 0; tuple < num_tuples_; ++tuple) {
        bool have = false;
        Duration& best = cost_[i][tuple];
        std::size_t best_sub = 0;
        // enumerate every sub-tuple q' <= q; q - q' has index tuple - sub_index
        std::fill(sub.begin(), sub.end(), 0);
        std::size_t sub_index = 0;
        while (true) {
          std::size_t rest = tuple - sub_index;
          if (finite(i - 1, rest)) {
            candidate = cost_[i - 1][rest] + machine_cost[sub_index];
            if (!have || candidate < best) {
              best = candidate;
              best_sub = sub_index;
              have = true;
            }
          }
          std::size_t l = 0;
          for (; l < k; ++l) {
            if (sub[l] < q[l]) {
              ++sub[l];
              sub_index += strides_[l];
              break;
            }
            sub_index -= sub[l] * strides_[l];
            sub[l] = 0;
          }
          if (l == k) break;
        }
        choice_[i][tuple] = best_sub;
        // advance q to the next tuple
        for (std::size_t l = 0; l < k; ++l) {
          if (++q[l] < radices_[l]) break;
          q[l] = 0;
        }
      }
    }
  }

  std::vector<Duration> values_;
  std::vector<Duration> capacities_;
  std::vector<std::size_t> radices_;
  std::vector<std::size_t> strides_;
  std::size_t num_tuples_ = 1;
  std::vector<std::vector<Duration>> cost_;
  std::vector<std::vector<std::size_t>> choice_;
};

/// Optimal schedule by the configuration DP over distinct processing times.
/// Jobs sharing a value are handed out in ascending id order to machines in
/// ascending id order.
inline Schedule dp_solve(const Instance& inst,
                         unsigned long long state_budget = kDefaultStateBudget) {
  detail::require_machines(inst);
  ConfigSpace space = distinct_times(inst);
  if (inst.num_machines() == 0) return {};
  DpTable table(space, inst.capacities(), state_budget);

  const std::size_t m = inst.num_machines();
  std::vector<std::vector<std::size_t>> per_machine(m);
  std::size_t tuple = table.full_index();
  for (std::size_t i = m; i >= 1; --i) {
    std::size_t sub = table.choice(i, tuple);
    per_machine[i - 1] = table.decode(sub);
    tuple -= sub;
  }

  Schedule sched;
  std::vector<std::size_t> taken(space.kinds(), 0);
  for (MachineId i = 0; i < m; ++i) {
    for (std::size_t l = 0; l < space.kinds(); ++l) {
      for (std::size_t c = 0; c < per_machine[i][l]; ++c) {
        sched.assign(space.groups[l][taken[l]++], i);
      }
    }
  }
  return sched;
}

namespace detail {

inline unsigned long long saturating_pow(unsigned long long base, std::size_t exp) {
  constexpr auto kMax = std::numeric_limits<unsigned long long>::max();
  unsigned long long r = 1;
  for (std::size_t e = 0; e < exp; ++e) {
    if (base != 0 && r > kMax / base) return kMax;
    r *= base;
  }
  return r;
}

struct BruteForce {
  const Instance& inst;
  std::vector<Duration> loads;
  std::vector<MachineId> current;
  std::vector<MachineId> best;
  Duration best_total;
  bool have = false;
  Duration scratch;

  void run(JobId j) {
    if (j == inst.num_jobs()) {
      scratch = 0;
      for (MachineId i = 0; i < loads.size(); ++i) {
        scratch += loads[i] < inst.c(i) ? inst.c(i) : loads[i];
      }
      if (!have || scratch < best_total) {
        best_total = scratch;
        best = current;
        have = true;
      }
      return;
    }
    for (MachineId i = 0; i < loads.size(); ++i) {
      current[j] = i;
      loads[i] += inst.p(j);
      run(j + 1);
      loads[i] -= inst.p(j);
    }
  }
};

}  // namespace detail

/// Exhaustive search over all m^n assignments, in lexicographic order of the
/// assignment vector; the first minimizer found is returned.
inline Schedule brute_force_solve(const Instance& inst,
                                  unsigned long long enum_budget = kDefaultEnumBudget) {
  detail::require_machines(inst);
  auto count = detail::saturating_pow(inst.num_machines(), inst.num_jobs());
  if (count > enum_budget) {
    throw CapacityError("brute-force enumeration too large", count, enum_budget);
  }
  if (inst.num_jobs() == 0) return {};
  detail::BruteForce search{inst,
                            std::vector<Duration>(inst.num_machines(), Duration(0)),
                            std::vector<MachineId>(inst.num_jobs(), 0),
                            {},
                            Duration(0)};
  search.run(0);
  return Schedule(search.best);
}

}  // namespace baf
