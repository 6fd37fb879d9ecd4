#include "nilmod/embed.hpp"

#include <string>
#include <vector>

#include "nilmod/error.hpp"

namespace nilmod {

Poly potential(std::span<const Poly> fs, std::size_t n) {
  const std::size_t k = fs.size();
  if (k > n) throw Error(ErrorKind::InvalidInput, "more components than variables");
  for (const auto& f : fs)
    if (f.n() != n) throw Error(ErrorKind::VariableCountMismatch, "component has the wrong variable count");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (partial(fs[i], j) != partial(fs[j], i))
        throw Error(ErrorKind::Incompatible,
                    "d f_" + std::to_string(i + 1) + "/dx_" + std::to_string(j + 1) + " != d f_" +
                        std::to_string(j + 1) + "/dx_" + std::to_string(i + 1),
                    {i, j});
  Poly h(n);
  for (std::size_t i = 0; i < k; ++i) h += integrate(fs[i] - partial(h, i), i);
  for (std::size_t i = 0; i < k; ++i)
    if (partial(h, i) != fs[i]) throw Error(ErrorKind::InternalInvariant, "potential check failed");
  return h;
}

namespace {

ModuleMap embed_recursive(const FDModule& v, Rng* rng) {
  const std::size_t n = v.n(), d = v.dim();
  if (d == 1) return ModuleMap{n, {Poly::constant(n, 1)}};

  const Codim1Split split = rng ? codim1_submodule(v, *rng) : codim1_submodule(v);
  const ModuleMap inner = embed_recursive(split.restriction, rng);
  const PolySubmodule image_of_w = PolySubmodule::from_spanning_set(n, inner.images);

  std::vector<Poly> fs;
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = split.hyperplane.coordinates(v.action(i) * split.complement);
    if (!c) throw Error(ErrorKind::InternalInvariant, "S_i v0 left the hyperplane");
    fs.push_back(inner.apply(*c));
  }
  Poly h = potential(fs, n);
  if (image_of_w.contains(h)) throw Error(ErrorKind::InternalInvariant, "adjoined potential already lies in the image");

  // Basis of V: hyperplane basis then v0; images follow the same order.
  std::vector<Vec> cols = split.hyperplane.basis();
  cols.push_back(split.complement);
  const auto to_adapted = inverse(Matrix::from_columns(d, cols));
  if (!to_adapted) throw Error(ErrorKind::InternalInvariant, "hyperplane plus complement is not a basis");
  ModuleMap adapted{n, inner.images};
  adapted.images.push_back(std::move(h));

  ModuleMap out{n, {}};
  for (std::size_t j = 0; j < d; ++j) out.images.push_back(adapted.apply(to_adapted->column(j)));
  return out;
}

}  // namespace

EmbeddingResult embed_nilpotent(const FDModule& v, const EmbedOptions& options) {
  if (v.dim() == 0) throw Error(ErrorKind::SocleNotOneDimensional, "the zero module has a zero socle");
  const std::size_t soc = socle(v).dim();
  if (soc != 1)
    throw Error(ErrorKind::SocleNotOneDimensional, "socle has dimension " + std::to_string(soc));

  std::optional<Rng> rng;
  if (options.randomize_seed) rng.emplace(*options.randomize_seed);
  ModuleMap map = embed_recursive(v, rng ? &*rng : nullptr);
  if (map.rank() != v.dim()) throw Error(ErrorKind::InternalInvariant, "embedding is not injective");
  PolySubmodule image = PolySubmodule::from_spanning_set(v.n(), map.images);
  return {std::move(image), std::move(map)};
}

PolySubmodule canonical_form(const FDModule& v, const EmbedOptions& options) {
  return embed_nilpotent(v, options).image;
}

bool is_isomorphic(const FDModule& a, const FDModule& b) {
  if (a.n() != b.n()) throw Error(ErrorKind::VariableCountMismatch, "modules over different polynomial rings");
  if (a.dim() != b.dim()) {
    // Still enforce the hypotheses on both inputs.
    canonical_form(a);
    canonical_form(b);
    return false;
  }
  return canonical_form(a) == canonical_form(b);
}

namespace {

// det(sum_j t_j P_j) as a polynomial in t, by row-by-row expansion over
// column subsets.
Poly symbolic_determinant(const std::vector<Matrix>& basis, std::size_t d) {
  const std::size_t k = basis.size();
  std::vector<Poly> entry(d * d, Poly(k));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t j = 0; j < k; ++j)
        entry[r * d + c].add_term(MultiIndex::unit(k, j), basis[j](r, c));

  std::vector<Poly> partial_det(std::size_t{1} << d, Poly(k));
  partial_det[0] = Poly::constant(k, 1);
  for (std::size_t mask = 0; mask < partial_det.size(); ++mask) {
    if (partial_det[mask].is_zero()) continue;
    const auto row = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (row == d) continue;
    for (std::size_t c = 0; c < d; ++c) {
      if (mask & (std::size_t{1} << c)) continue;
      const auto above = static_cast<unsigned>(__builtin_popcountll(mask >> (c + 1)));
      Poly term = partial_det[mask] * entry[row * d + c];
      if (above % 2 == 1) term = -term;
      partial_det[mask | (std::size_t{1} << c)] += term;
    }
  }
  return partial_det.back();
}

}  // namespace

bool brute_force_isomorphic(const FDModule& a, const FDModule& b, std::size_t max_dim) {
  if (a.dim() > max_dim || b.dim() > max_dim)
    throw Error(ErrorKind::DimensionTooLarge,
                "brute-force search is limited to dimension " + std::to_string(max_dim));
  if (a.n() != b.n() || a.dim() != b.dim()) return false;
  const std::size_t d = a.dim();
  if (d == 0) return true;

  const std::vector<Matrix> basis = intertwiners(a, b);
  if (basis.empty()) return false;

  auto combination = [&](const std::vector<std::int64_t>& t) {
    Matrix p(d, d);
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (t[j] != 0) p = p + Rational(t[j]) * basis[j];
    return p;
  };
  std::vector<std::vector<std::int64_t>> probes;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    std::vector<std::int64_t> t(basis.size(), 0);
    t[j] = 1;
    probes.push_back(std::move(t));
  }
  probes.emplace_back(basis.size(), 1);
  Rng rng(0x5eed);
  for (int k = 0; k < 16; ++k) {
    std::vector<std::int64_t> t(basis.size());
    for (auto& x : t) x = rng.uniform(-3, 3);
    probes.push_back(std::move(t));
  }
  for (const auto& t : probes)
    if (sgn(determinant(combination(t))) != 0) return true;

  return !symbolic_determinant(basis, d).is_zero();
}

GeneralEmbedding embed_general(const FDModule& v) {
  std::vector<Rational> alpha = socle_eigenvalues(v);
  EmbeddingResult e = embed_nilpotent(twist(v, alpha));
  return {ExpSubmodule{std::move(alpha), std::move(e.image)}, std::move(e.map)};
}

}  // namespace nilmod
