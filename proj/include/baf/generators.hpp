#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "baf/core.hpp"
#include "baf/mixedcrit.hpp"

namespace baf::gen {

/// mt19937_64 with plain modulo reduction; unlike the std distributions its
/// output sequence is the same on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    return lo + engine_() % (hi - lo + 1);
  }

  /// k / den with k uniform in [1, max_num].
  Rational fraction(std::uint64_t max_num, std::uint64_t den) {
    return make_rational(mpz_class(std::to_string(uniform(1, max_num))), mpz_class(std::to_string(den)));
  }

 private:
  std::mt19937_64 engine_;
};

struct Params {
  std::size_t n = 8;
  std::size_t m = 3;
  Rational epsilon{1, 10};
  std::uint64_t denominator = 10;  // grid of generated values
  std::uint64_t max_value = 10;    // uniform values lie in (0, max_value]
  std::size_t distinct = 0;        // uniform: draw p from this many values (0 = no limit)
  std::size_t layers = 4;          // layered: number of layers cycled through
  std::size_t levels = 3;          // mc-uniform: maximum criticality level
};

inline const std::vector<std::string>& families() {
  static const std::vector<std::string> names{"uniform", "ffd-tight", "subset-sum-like", "layered"};
  return names;
}

/// Two jobs of 1 - eps on two unit machines.
inline Instance ffd_tight(const Rational& epsilon) {
  if (epsilon <= 0 || epsilon >= 1) throw DomainError("ffd-tight needs 0 < epsilon < 1");
  Rational p = 1 - epsilon;
  return Instance({p, p}, {Rational(1), Rational(1)});
}

inline Instance uniform(std::uint64_t seed, const Params& params) {
  Rng rng(seed);
  const std::uint64_t top = params.max_value * params.denominator;
  std::vector<Rational> pool;
  for (std::size_t k = 0; k < params.distinct; ++k) pool.push_back(rng.fraction(top, params.denominator));
  std::vector<Duration> p;
  for (std::size_t j = 0; j < params.n; ++j) {
    p.push_back(pool.empty() ? rng.fraction(top, params.denominator)
                             : pool[rng.uniform(0, pool.size() - 1)]);
  }
  std::vector<Duration> c;
  for (std::size_t i = 0; i < params.m; ++i) c.push_back(rng.fraction(top, params.denominator));
  return Instance(std::move(p), std::move(c));
}

/// Integer jobs in [1, 20]; each capacity is the exact sum of a random group of
/// jobs, so perfect fits exist.
inline Instance subset_sum_like(std::uint64_t seed, const Params& params) {
  Rng rng(seed);
  std::vector<Duration> p;
  for (std::size_t j = 0; j < params.n; ++j) p.push_back(Rational(static_cast<long>(rng.uniform(1, 20))));
  std::vector<Duration> c(params.m, Duration(0));
  if (params.m > 0) {
    for (std::size_t j = 0; j < params.n; ++j) c[rng.uniform(0, params.m - 1)] += p[j];
  }
  for (auto& cap : c) {
    if (cap == 0) cap = Rational(static_cast<long>(rng.uniform(1, 20)));
  }
  return Instance(std::move(p), std::move(c));
}

/// Job j sits in layer l_j, i.e. p in (eps^(l+1), eps^l]. The first
/// max(3, layers) jobs take layers 0, 1, 2, ... in turn so that any n >= 3
/// spans at least three layers; later jobs pick a layer at random.
inline Instance layered(std::uint64_t seed, const Params& params) {
  const Rational& eps = params.epsilon;
  if (eps <= 0 || eps > Rational(1, 2)) throw DomainError("layered needs 0 < epsilon <= 1/2");
  Rng rng(seed);
  const std::size_t depth = std::max<std::size_t>(3, params.layers);
  std::vector<Duration> p;
  for (std::size_t j = 0; j < params.n; ++j) {
    std::size_t layer = j < depth ? j : rng.uniform(0, depth - 1);
    Rational scale = pow(eps, static_cast<unsigned>(layer));
    Rational u = make_rational(static_cast<long>(rng.uniform(1, 100)), 100);
    p.push_back(scale * (eps + (1 - eps) * u));
  }
  std::vector<Duration> c;
  for (std::size_t i = 0; i < params.m; ++i) c.push_back(make_rational(static_cast<long>(rng.uniform(1, 100)), 100));
  return Instance(std::move(p), std::move(c));
}

/// Deterministic for a fixed (family, seed, params).
inline Instance gen_instance(const std::string& family, std::uint64_t seed, const Params& params) {
  if (family == "uniform") return uniform(seed, params);
  if (family == "ffd-tight") return ffd_tight(params.epsilon);
  if (family == "subset-sum-like") return subset_sum_like(seed, params);
  if (family == "layered") return layered(seed, params);
  throw DomainError("unknown instance family '" + family + "'");
}

/// F-shaped jobs with heights in 1..levels (job 0 has the full height) and
/// non-decreasing widths on the 1/denominator grid.
inline mc::MCInstance gen_mc_instance(std::uint64_t seed, const Params& params) {
  if (params.levels == 0) throw DomainError("mc instances need at least one level");
  Rng rng(seed);
  std::vector<mc::FJob> jobs;
  for (std::size_t k = 0; k < params.n; ++k) {
    std::size_t h = k == 0 ? params.levels : rng.uniform(1, params.levels);
    mc::FJob job{static_cast<mc::FJobId>(k), {}};
    Rational w = rng.fraction(5 * params.denominator, params.denominator);
    for (std::size_t l = 0; l < h; ++l) {
      if (l > 0) {
        w += make_rational(static_cast<long>(rng.uniform(0, 3 * params.denominator)),
                            static_cast<long>(params.denominator));
      }
      job.widths.push_back(w);
    }
    jobs.push_back(std::move(job));
  }
  return mc::MCInstance(std::move(jobs));
}

}  // namespace baf::gen
