#include "nilmod/random.hpp"

#include <numeric>
#include <vector>

namespace nilmod {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(next() % span);
}

std::int64_t Rng::nonzero(std::int64_t bound) {
  const std::int64_t v = uniform(1, bound);
  return coin() ? v : -v;
}

Poly random_poly(std::size_t n, std::uint32_t degree_bound, Rng& rng) {
  Poly p(n);
  if (degree_bound == 0) return Poly::constant(n, rng.nonzero(3));
  const auto terms = rng.uniform(1, 4);
  // One term of full degree so the bound is usually attained.
  for (std::int64_t t = 0; t < terms; ++t) {
    MultiIndex a(n);
    auto remaining = static_cast<std::int64_t>(t == 0 ? degree_bound : rng.uniform(0, degree_bound));
    for (std::size_t i = 0; i + 1 < n && remaining > 0; ++i) {
      const auto e = rng.uniform(0, remaining);
      a[i] = static_cast<std::uint32_t>(e);
      remaining -= e;
    }
    a[n - 1] += static_cast<std::uint32_t>(remaining);
    // Spread the exponents over variables in random order.
    for (std::size_t i = n; i > 1; --i) {
      const auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i) - 1));
      std::swap(a[i - 1], a[j]);
    }
    p.add_term(a, rng.nonzero(3));
  }
  if (p.is_zero()) p = Poly::constant(n, 1);
  return p;
}

Matrix random_invertible(std::size_t d, Rng& rng) {
  Matrix lower = Matrix::identity(d), upper = Matrix::identity(d), perm(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      lower(i, j) = rng.uniform(-2, 2);
      upper(j, i) = rng.uniform(-2, 2);
    }
  for (std::size_t i = 0; i < d; ++i) upper(i, i) = rng.nonzero(2);
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = d; i > 1; --i)
    std::swap(order[i - 1], order[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i) - 1))]);
  for (std::size_t i = 0; i < d; ++i) perm(i, order[i]) = 1;
  return perm * lower * upper;
}

Vec random_vec(std::size_t d, Rng& rng, std::int64_t bound) {
  Vec v(d);
  for (auto& x : v) x = rng.uniform(-bound, bound);
  return v;
}

}  // namespace nilmod
