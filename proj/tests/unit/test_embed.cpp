#include <gtest/gtest.h>

#include "nilmod/embed.hpp"
#include "nilmod/error.hpp"
#include "support/oracles.hpp"

namespace nilmod {
namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

Matrix e_ij(std::size_t d, std::size_t i, std::size_t j) {
  Matrix m(d, d);
  m(i, j) = 1;
  return m;
}

Matrix jordan(std::size_t d, const Rational& lambda = 0) {
  Matrix m = lambda * Matrix::identity(d);
  for (std::size_t i = 0; i + 1 < d; ++i) m(i, i + 1) = 1;
  return m;
}

Poly mono(std::initializer_list<std::uint32_t> e, const Rational& c = 1) {
  return Poly::monomial(e.size(), MultiIndex(e), c);
}

PolySubmodule from_monomials(std::size_t n, std::vector<MultiIndex> ms) {
  return PolySubmodule::from_monomials(n, ms);
}

// Radial integration in x_1..x_k with the remaining variables as
// parameters: c x^a in f_i contributes c x_i x^a / (a_1 + ... + a_k + 1).
Poly radial_potential(const std::vector<Poly>& fs, std::size_t n) {
  Poly h(n);
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (const auto& [a, c] : fs[i].terms()) {
      std::uint32_t partial_degree = 0;
      for (std::size_t v = 0; v < fs.size(); ++v) partial_degree += a[v];
      h.add_term(a + MultiIndex::unit(n, i), c / Rational(partial_degree + 1));
    }
  return h;
}

bool free_of_first(const Poly& p, std::size_t k) {
  for (const auto& [a, c] : p.terms())
    for (std::size_t v = 0; v < k; ++v)
      if (a[v] != 0) return false;
  return true;
}

std::vector<Poly> gradient(const Poly& h, std::size_t k) {
  std::vector<Poly> fs;
  for (std::size_t i = 0; i < k; ++i) fs.push_back(partial(h, i));
  return fs;
}

TEST(Potential, Examples) {
  const std::vector<Poly> zeros(2, Poly(3));
  EXPECT_TRUE(potential(zeros, 3).is_zero());
  const std::vector<Poly> fs{mono({0, 1}), mono({1, 0})};
  EXPECT_EQ(potential(fs, 2), mono({1, 1}));
  const std::vector<Poly> bad{mono({0, 1}), Poly(2)};
  try {
    potential(bad, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Incompatible);
    EXPECT_EQ(e.witness(), (std::vector<std::size_t>{0, 1}));
  }
}

TEST(Potential, NormalizationDropsSummandsFreeOfIntegratedVariables) {
  // f_1 = 2x_1x_2: every potential is x_1^2x_2 + g(x_2); ours takes g = 0.
  const std::vector<Poly> fs{mono({1, 1}, 2)};
  EXPECT_EQ(potential(fs, 2), mono({2, 1}));
  const std::vector<Poly> three(3, Poly(2));
  try {
    potential(three, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
  }
}

TEST(Potential, MatchesRadialConstruction) {
  Rng rng(41);
  for (int t = 0; t < 100; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto k = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(n)));
    const Poly h = random_poly(n, static_cast<std::uint32_t>(rng.uniform(0, 6)), rng);
    const std::vector<Poly> fs = gradient(h, k);
    const Poly p = potential(fs, n);
    for (std::size_t i = 0; i < k; ++i) EXPECT_EQ(partial(p, i), fs[i]);
    EXPECT_EQ(p.coeff(MultiIndex(std::vector<std::uint32_t>(n, 0))), 0);
    EXPECT_TRUE(free_of_first(p - radial_potential(fs, n), k));
    EXPECT_TRUE(free_of_first(p - h, k));
  }
}

TEST(Potential, WitnessIsFirstIncompatiblePair) {
  Rng rng(42);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 3;
    std::vector<Poly> fs = gradient(random_poly(n, 5, rng), n);
    const auto j = static_cast<std::size_t>(rng.uniform(0, 2));
    const auto other = (j + 1 + static_cast<std::size_t>(rng.uniform(0, 1))) % n;
    fs[j] += Poly::monomial(n, MultiIndex::unit(n, other), q(rng.nonzero(3)));
    std::optional<std::pair<std::size_t, std::size_t>> expected;
    for (std::size_t a = 0; a < n && !expected; ++a)
      for (std::size_t b = a + 1; b < n && !expected; ++b)
        if (oracle::slow_derivative(fs[a], MultiIndex::unit(n, b)) != oracle::slow_derivative(fs[b], MultiIndex::unit(n, a)))
          expected = {a, b};
    ASSERT_TRUE(expected);
    try {
      potential(fs, n);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Incompatible);
      EXPECT_EQ(e.witness(), (std::vector<std::size_t>{expected->first, expected->second}));
    }
  }
}

TEST(Embed, DimensionOne) {
  const EmbeddingResult r = embed_nilpotent(FDModule::validate(1, {Matrix(1, 1), Matrix(1, 1)}));
  EXPECT_EQ(r.image, from_monomials(2, {{0, 0}}));
  EXPECT_EQ(r.map.images, (std::vector<Poly>{Poly::constant(2, 1)}));
}

TEST(Embed, SquareZeroPair) {
  const FDModule v = FDModule::validate(2, {e_ij(2, 0, 1), Matrix(2, 2)});
  const EmbeddingResult r = embed_nilpotent(v);
  EXPECT_EQ(r.image, from_monomials(2, {{0, 0}, {1, 0}}));
  EXPECT_TRUE(oracle::intertwines_by_matrices(v, r.map.images));
  EXPECT_EQ(oracle::poly_rank(r.map.images), 2u);
}

TEST(Embed, JordanThree) {
  const FDModule v = FDModule::validate(3, {jordan(3)});
  const EmbeddingResult r = embed_nilpotent(v);
  EXPECT_EQ(r.image, from_monomials(1, {{0}, {1}, {2}}));
  EXPECT_EQ(r.map.images[2], mono({2}, q(1, 2)));
  EXPECT_EQ(r.map.images[1], mono({1}));
  EXPECT_EQ(r.map.images[0], Poly::constant(1, 1));
  // Brute force: every intertwiner into the derivative action on {1,x,x^2}
  // maps the socle vector to a constant.
  const auto [t, tmap] = as_matrices(r.image);
  EXPECT_TRUE(brute_force_isomorphic(v, t));
}

TEST(Embed, RejectsWrongSocle) {
  try {
    embed_nilpotent(FDModule::validate(2, {Matrix(2, 2), Matrix(2, 2)}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SocleNotOneDimensional);
  }
  try {
    embed_nilpotent(FDModule::validate(1, {Matrix::identity(1)}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotNilpotent);
  }
}

TEST(Embed, MonomorphismOnRandomModules) {
  Rng rng(43);
  for (int t = 0; t < 40; ++t) {
    FDModule v = random_nilpotent_module(static_cast<std::size_t>(rng.uniform(1, 3)), 4, rng.next());
    v = conjugate(v, random_invertible(v.dim(), rng));
    const EmbeddingResult r = embed_nilpotent(v);
    EXPECT_TRUE(oracle::intertwines_by_matrices(v, r.map.images));
    EXPECT_EQ(oracle::poly_rank(r.map.images), v.dim());
    EXPECT_TRUE(r.image.is_derivative_closed());
    EXPECT_TRUE(r.image.contains(Poly::constant(v.n(), 1)));
    for (const auto& p : r.map.images) EXPECT_TRUE(r.image.contains(p));
  }
}

TEST(Canonical, InvariantUnderConjugationAndRandomChoices) {
  Rng rng(44);
  for (int t = 0; t < 30; ++t) {
    const FDModule v = random_nilpotent_module(static_cast<std::size_t>(rng.uniform(1, 3)), 4, rng.next());
    const PolySubmodule c = canonical_form(v);
    EXPECT_EQ(canonical_form(conjugate(v, random_invertible(v.dim(), rng))), c);
    EXPECT_EQ(canonical_form(v, EmbedOptions{rng.next()}), c);
  }
  EXPECT_EQ(canonical_form(FDModule::validate(1, {Matrix(1, 1)})), from_monomials(1, {{0}}));
}

TEST(Canonical, RoundTripThroughMatrices) {
  Rng rng(45);
  for (int t = 0; t < 30; ++t) {
    const PolySubmodule m = oracle::random_submodule(static_cast<std::size_t>(rng.uniform(1, 3)), 4, rng,
                                                     static_cast<std::size_t>(rng.uniform(1, 2)));
    EXPECT_EQ(canonical_form(as_matrices(m).first), m);
  }
}

TEST(Isomorphic, Examples) {
  const FDModule a = FDModule::validate(2, {e_ij(2, 0, 1), Matrix(2, 2)});
  const FDModule b = FDModule::validate(2, {Matrix(2, 2), e_ij(2, 0, 1)});
  EXPECT_TRUE(is_isomorphic(a, a));
  EXPECT_FALSE(is_isomorphic(a, b));
  EXPECT_FALSE(brute_force_isomorphic(a, b));
  EXPECT_EQ(canonical_form(b), from_monomials(2, {{0, 0}, {0, 1}}));
  Rng rng(46);
  EXPECT_TRUE(is_isomorphic(a, conjugate(a, random_invertible(2, rng))));
  EXPECT_FALSE(is_isomorphic(a, FDModule::validate(3, {jordan(3), Matrix(3, 3)})));
}

TEST(BruteForce, Examples) {
  const FDModule j3 = FDModule::validate(3, {jordan(3)});
  EXPECT_TRUE(brute_force_isomorphic(j3, j3));
  EXPECT_FALSE(brute_force_isomorphic(j3, FDModule::validate(2, {jordan(2)})));
  // Same rank and nilpotency pattern but different module structure.
  EXPECT_FALSE(brute_force_isomorphic(FDModule::validate(3, {Matrix(3, 3)}), j3));
  try {
    brute_force_isomorphic(FDModule::validate(7, {Matrix(7, 7)}), FDModule::validate(7, {Matrix(7, 7)}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionTooLarge);
  }
}

TEST(Isomorphic, AgreesWithBruteForce) {
  Rng rng(47);
  int planted = 0, positive = 0;
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 2));
    const FDModule a = random_nilpotent_module(n, 3, rng.next());
    FDModule b = random_nilpotent_module(n, 3, rng.next());
    if (a.dim() > 4 || b.dim() > 4) continue;
    if (rng.coin()) {
      b = conjugate(a, random_invertible(a.dim(), rng));
      ++planted;
    }
    const bool expected = brute_force_isomorphic(a, b);
    positive += expected;
    EXPECT_EQ(is_isomorphic(a, b), expected);
  }
  EXPECT_GT(planted, 0);
  EXPECT_GT(positive, 0);
}

TEST(EmbedGeneral, Examples) {
  const FDModule v = random_nilpotent_module(2, 3, 8);
  const GeneralEmbedding g = embed_general(v);
  EXPECT_EQ(g.image.eigenvalues, std::vector<Rational>(2));
  EXPECT_EQ(g.image.part, canonical_form(v));

  const Rational alpha = q(7, 3);
  const FDModule w = FDModule::validate(2, {jordan(2, alpha)});
  const GeneralEmbedding h = embed_general(w);
  EXPECT_EQ(h.image.eigenvalues, (std::vector<Rational>{alpha}));
  EXPECT_EQ(h.image.part, from_monomials(1, {{0}, {1}}));
  EXPECT_TRUE(oracle::intertwines_by_matrices(w, h.map.images, h.image.eigenvalues));

  try {
    embed_general(FDModule::validate(2, {Matrix::from_rows({{q(0), q(1)}, {q(-1), q(0)}})}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonRationalEigenvalue);
  }
}

TEST(EmbedGeneral, RecoversPlantedEigenvalues) {
  Rng rng(48);
  for (int t = 0; t < 20; ++t) {
    const FDModule base = random_nilpotent_module(2, 3, rng.next());
    const std::vector<Rational> alpha{q(rng.uniform(-4, 4), rng.uniform(1, 3)), q(rng.uniform(-4, 4), rng.uniform(1, 3))};
    const std::vector<Rational> minus{-alpha[0], -alpha[1]};
    const FDModule v = conjugate(twist(base, minus), random_invertible(base.dim(), rng));
    const GeneralEmbedding g = embed_general(v);
    EXPECT_EQ(g.image.eigenvalues, alpha);
    EXPECT_EQ(g.image.part, canonical_form(base));
    EXPECT_TRUE(intertwines(v, g.map, alpha));
    EXPECT_TRUE(oracle::intertwines_by_matrices(v, g.map.images, alpha));
  }
}

TEST(Embed, RoundTripMapsNeverRaiseDegrees) {
  Rng rng(49);
  for (int t = 0; t < 30; ++t) {
    const PolySubmodule m = oracle::random_submodule(2, 4, rng, 2);
    const auto [v0, phi0] = as_matrices(m);
    // The embedding composed with phi0^-1 is an automorphism of m; compare
    // per-variable degrees of f and its image in both directions.
    const EmbeddingResult r = embed_nilpotent(v0, EmbedOptions{rng.next()});
    ASSERT_EQ(r.image, m);
    for (int s = 0; s < 5; ++s) {
      const Vec c = random_vec(m.dim(), rng);
      const Poly f = phi0.apply(c);
      const Poly g = r.map.apply(c);
      for (std::size_t i = 0; i < 2; ++i) EXPECT_LE(degree_in(g, i), degree_in(f, i));
      for (std::size_t i = 0; i < 2; ++i) EXPECT_LE(degree_in(f, i), degree_in(g, i));
    }
  }
}

}  // namespace
}  // namespace nilmod
