#include "lcmv/random.hpp"

#include <algorithm>

#include "lcmv/error.hpp"

namespace lcmv {

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

void check(const RandomArrangementOptions& o) {
  if (o.min_vars < 1 || o.min_vars > o.max_vars || o.max_vars > RingDescriptor::kMaxVars) {
    throw Error(ErrorCode::kInvalidArgument, "bad variable range for random arrangement");
  }
  if (o.min_components < 1 || o.min_components > o.max_components) {
    throw Error(ErrorCode::kInvalidArgument, "bad component range for random arrangement");
  }
}

}  // namespace

Arrangement random_arrangement(std::mt19937_64& rng, const RandomArrangementOptions& options) {
  check(options);
  for (;;) {
    const std::size_t n = uniform(rng, options.min_vars, options.max_vars);
    const std::size_t k = uniform(rng, options.min_components, options.max_components);
    const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    std::vector<VarSet> comps;
    // Rejection sampling; with n >= 2 an incomparable family of size k <= C(n, n/2) exists.
    for (int attempt = 0; attempt < 200 && comps.size() < k; ++attempt) {
      VarSet f(std::uniform_int_distribution<std::uint64_t>(1, full)(rng));
      bool ok = true;
      if (options.incomparable) {
        for (VarSet g : comps) ok = ok && !f.subset_of(g) && !g.subset_of(f);
      }
      if (ok) comps.push_back(f);
    }
    if (comps.size() < k) continue;
    if (k >= 2 && std::bernoulli_distribution(options.duplicate_probability)(rng)) {
      const std::size_t from = uniform(rng, 0, k - 1);
      std::size_t to = uniform(rng, 0, k - 2);
      if (to >= from) ++to;
      comps[to] = comps[from];
    }
    return Arrangement::coordinate(RingDescriptor(n, options.field), comps);
  }
}

Arrangement random_linear_arrangement(std::mt19937_64& rng, const RandomArrangementOptions& options) {
  check(options);
  const std::size_t n = uniform(rng, options.min_vars, options.max_vars);
  const std::size_t k = uniform(rng, options.min_components, options.max_components);
  const RingDescriptor ring(n, options.field);
  std::vector<Ideal> comps;
  std::uniform_int_distribution<int> coeff(-2, 2);
  while (comps.size() < k) {
    const std::size_t rows = uniform(rng, 1, n);
    std::vector<std::vector<mpq_class>> m(rows, std::vector<mpq_class>(n));
    for (auto& row : m) {
      for (auto& x : row) x = coeff(rng);
    }
    LinearIdeal ideal(ring, Matrix::from_rows(m, n));
    if (ideal.height() == 0) continue;
    comps.emplace_back(std::move(ideal));
  }
  return Arrangement(ring, std::move(comps));
}

}  // namespace lcmv
