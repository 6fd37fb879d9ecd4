#include <gtest/gtest.h>

#include "nilmod/embed.hpp"
#include "nilmod/error.hpp"
#include "nilmod/modcore.hpp"
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

Poly mono(std::initializer_list<std::uint32_t> e, long c = 1) { return Poly::monomial(e.size(), MultiIndex(e), c); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InternalInvariant;
}

TEST(Validate, AnythingCommutesWithZero) {
  const FDModule v = FDModule::validate(2, {e_ij(2, 0, 1), Matrix(2, 2)});
  EXPECT_EQ(v.n(), 2u);
  EXPECT_EQ(v.dim(), 2u);
}

TEST(Validate, ReportsNonCommutingPair) {
  try {
    FDModule::validate(2, {e_ij(2, 0, 1), e_ij(2, 1, 0)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonCommuting);
    EXPECT_EQ(e.witness(), (std::vector<std::size_t>{0, 1}));
  }
  EXPECT_EQ(kind_of([] { FDModule::validate(2, {Matrix(3, 3)}); }), ErrorKind::DimensionMismatch);
}

TEST(Validate, PolynomialsInOneMatrixCommute) {
  Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    const Matrix a = random_invertible(4, rng) * jordan(4) * *inverse(random_invertible(4, rng));
    const Matrix b = a * a + q(rng.uniform(-3, 3)) * a + q(rng.uniform(-3, 3)) * Matrix::identity(4);
    const Matrix c = a * a * a - q(2) * a;
    const FDModule v = FDModule::validate(4, {a, b, c});
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) EXPECT_TRUE((v.action(i) * v.action(j) - v.action(j) * v.action(i)).is_zero());
  }
}

TEST(Nilpotent, Basics) {
  EXPECT_TRUE(is_nilpotent(FDModule::validate(3, {Matrix(3, 3), Matrix(3, 3)})));
  EXPECT_FALSE(is_nilpotent(FDModule::validate(2, {Matrix::identity(2)})));
  for (std::uint64_t seed = 0; seed < 10; ++seed) EXPECT_TRUE(is_nilpotent(random_nilpotent_module(2, 3, seed)));
}

TEST(Socle, Examples) {
  EXPECT_EQ(socle(FDModule::validate(3, {Matrix(3, 3)})).dim(), 3u);
  EXPECT_EQ(socle(FDModule::validate(3, {jordan(3)})).dim(), 1u);
  const Poly x1x2 = mono({1, 1});
  const auto [v, map] = as_matrices(submodule_from_polys(2, std::span(&x1x2, 1)));
  const Subspace s = socle(v);
  ASSERT_EQ(s.dim(), 1u);
  // The socle vector maps to a constant.
  const Poly img = map.apply(s.basis()[0]);
  EXPECT_EQ(total_degree(img), 0);
  EXPECT_EQ(kind_of([] { socle(FDModule::validate(1, {Matrix::identity(1)})); }), ErrorKind::NotNilpotent);
}

TEST(Socle, NonzeroForNonzeroNilpotentModules) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const FDModule v = random_nilpotent_module(3, 3, seed);
    const Subspace s = socle(v);
    EXPECT_GE(s.dim(), 1u);
    for (const auto& b : s.basis())
      for (const auto& m : v.matrices()) EXPECT_TRUE(is_zero(m * b));
  }
}

TEST(Codim1, DimensionOne) {
  const Codim1Split s = codim1_submodule(FDModule::validate(1, {Matrix(1, 1)}));
  EXPECT_EQ(s.hyperplane.dim(), 0u);
  EXPECT_EQ(s.complement, unit_vec(1, 0));
  EXPECT_EQ(s.restriction.dim(), 0u);
}

TEST(Codim1, JordanBlockOfSizeTwo) {
  const Codim1Split s = codim1_submodule(FDModule::validate(2, {jordan(2)}));
  const Vec e1 = unit_vec(2, 0);
  EXPECT_EQ(s.hyperplane, Subspace::span(2, std::span(&e1, 1)));
  EXPECT_EQ(s.complement, unit_vec(2, 1));
}

TEST(Codim1, InvariantHyperplaneProperties) {
  Rng rng(33);
  for (int t = 0; t < 30; ++t) {
    FDModule v = random_nilpotent_module(static_cast<std::size_t>(rng.uniform(1, 3)), 3, rng.next());
    v = conjugate(v, random_invertible(v.dim(), rng));
    for (int randomized = 0; randomized < 2; ++randomized) {
      const Codim1Split s = randomized ? codim1_submodule(v, rng) : codim1_submodule(v);
      EXPECT_EQ(s.hyperplane.dim() + 1, v.dim());
      EXPECT_FALSE(s.hyperplane.contains(s.complement));
      for (const auto& m : v.matrices()) {
        EXPECT_TRUE(s.hyperplane.contains(m * s.complement));
        for (std::size_t j = 0; j < v.dim(); ++j) EXPECT_TRUE(s.hyperplane.contains(m.column(j)));
      }
      // Restriction agrees with V on the hyperplane basis.
      const auto wb = s.hyperplane.basis();
      for (std::size_t i = 0; i < v.n(); ++i)
        for (std::size_t k = 0; k < wb.size(); ++k) {
          Vec lhs(v.dim());
          const Vec col = s.restriction.action(i).column(k);
          for (std::size_t r = 0; r < wb.size(); ++r)
            for (std::size_t c = 0; c < v.dim(); ++c) lhs[c] += col[r] * wb[r][c];
          EXPECT_EQ(lhs, v.action(i) * wb[k]);
        }
    }
  }
  EXPECT_EQ(kind_of([] { codim1_submodule(FDModule::validate(1, {Matrix::identity(1)})); }), ErrorKind::NotNilpotent);
}

TEST(Twist, Examples) {
  const FDModule v = random_nilpotent_module(2, 3, 5);
  const std::vector<Rational> zero(2);
  EXPECT_EQ(twist(v, zero), v);
  const FDModule scalar = FDModule::validate(2, {q(3, 2) * Matrix::identity(2)});
  const std::vector<Rational> a{q(3, 2)};
  EXPECT_TRUE(twist(scalar, a).action(0).is_zero());
  const std::vector<Rational> shift{q(-2, 3), q(5)}, back{q(2, 3), q(-5)};
  EXPECT_EQ(twist(twist(v, shift), back), v);
}

TEST(Twist, SameCommutantBeforeAndAfter) {
  Rng rng(34);
  for (int t = 0; t < 30; ++t) {
    const FDModule v = random_nilpotent_module(2, 3, rng.next());
    const std::vector<Rational> shift{q(rng.uniform(-3, 3), 2), q(rng.uniform(-3, 3))};
    const FDModule w = twist(v, shift);
    // A random endomorphism (from the commutant) and a random matrix.
    const auto ends = intertwiners(v, v);
    Matrix g(v.dim(), v.dim());
    for (const auto& e : ends) g = g + q(rng.uniform(-2, 2)) * e;
    const Matrix h = oracle::random_matrix(v.dim(), v.dim(), rng);
    for (const Matrix& m : {g, h}) {
      bool commutes_v = true, commutes_w = true;
      for (std::size_t i = 0; i < 2; ++i) {
        commutes_v = commutes_v && m * v.action(i) == v.action(i) * m;
        commutes_w = commutes_w && m * w.action(i) == w.action(i) * m;
      }
      EXPECT_EQ(commutes_v, commutes_w);
    }
    EXPECT_EQ(intertwiners(v, v), intertwiners(w, w));
  }
}

TEST(PolySubmodule, ClosureExamples) {
  const Poly zero(1);
  EXPECT_EQ(submodule_from_polys(1, std::span(&zero, 1)).basis(), (std::vector<Poly>{Poly::constant(1, 1)}));
  const Poly sq = mono({2});
  EXPECT_EQ(submodule_from_polys(1, std::span(&sq, 1)).basis(),
            (std::vector<Poly>{Poly::constant(1, 1), mono({1}), mono({2})}));
  const Poly xy = mono({1, 1});
  const PolySubmodule m = submodule_from_polys(2, std::span(&xy, 1));
  EXPECT_EQ(m.dim(), 4u);
  EXPECT_EQ(m.basis(), (std::vector<Poly>{Poly::constant(2, 1), mono({0, 1}), mono({1, 0}), mono({1, 1})}));
}

TEST(PolySubmodule, CanonicalBasisIgnoresGenerators) {
  const std::vector<Poly> a{Poly::constant(2, 1), mono({1, 0}) + mono({0, 1})};
  const std::vector<Poly> b{mono({1, 0}, 3) + mono({0, 1}, 3) + Poly::constant(2, 2), Poly::constant(2, -1)};
  EXPECT_EQ(PolySubmodule::from_spanning_set(2, a), PolySubmodule::from_spanning_set(2, b));
  const std::vector<Poly> not_closed{Poly::constant(1, 1), mono({2})};
  EXPECT_EQ(kind_of([&] { PolySubmodule::from_spanning_set(1, not_closed); }), ErrorKind::NotASubmodule);
  const std::vector<Poly> no_constant{mono({1}) + Poly::constant(1, 1)};
  EXPECT_EQ(kind_of([&] { PolySubmodule::from_spanning_set(1, no_constant); }), ErrorKind::NotASubmodule);
}

TEST(PolySubmodule, CoordinatesRoundTrip) {
  Rng rng(35);
  for (int t = 0; t < 30; ++t) {
    const PolySubmodule m = oracle::random_submodule(2, 4, rng);
    EXPECT_TRUE(m.is_derivative_closed());
    EXPECT_TRUE(m.contains(Poly::constant(2, 1)));
    const Vec c = random_vec(m.dim(), rng);
    const Poly p = m.combine(c);
    EXPECT_EQ(*m.coordinates(p), c);
    // Canonical basis: distinct leading monomials, ascending.
    for (std::size_t j = 1; j < m.dim(); ++j) EXPECT_LT(m.basis()[j - 1].leading_monomial(), m.basis()[j].leading_monomial());
  }
}

TEST(AsMatrices, Examples) {
  const PolySubmodule one = PolySubmodule::from_monomials(2, std::vector<MultiIndex>{{0, 0}});
  const FDModule v1 = as_matrices(one).first;
  EXPECT_EQ(v1.dim(), 1u);
  EXPECT_TRUE(v1.action(0).is_zero() && v1.action(1).is_zero());

  const PolySubmodule line = PolySubmodule::from_monomials(1, std::vector<MultiIndex>{{0}, {1}});
  const auto [v2, map] = as_matrices(line);
  EXPECT_EQ(v2.action(0), e_ij(2, 0, 1));
  EXPECT_TRUE(intertwines(v2, map));
}

TEST(AsMatrices, AlwaysNilpotentWithOneDimensionalSocle) {
  Rng rng(36);
  for (int t = 0; t < 40; ++t) {
    const PolySubmodule m = oracle::random_submodule(static_cast<std::size_t>(rng.uniform(1, 3)), 4, rng, 2);
    const auto [v, map] = as_matrices(m);
    EXPECT_TRUE(is_nilpotent(v));
    EXPECT_EQ(socle(v).dim(), 1u);
    EXPECT_TRUE(intertwines(v, map));
    EXPECT_TRUE(oracle::intertwines_by_matrices(v, map.images));
  }
}

TEST(RandomModule, Contract) {
  const FDModule v0 = random_nilpotent_module(2, 0, 9);
  EXPECT_EQ(v0.dim(), 1u);
  EXPECT_TRUE(v0.action(0).is_zero());
  std::set<std::size_t> dims;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const FDModule v = random_nilpotent_module(2, 4, seed);
    EXPECT_TRUE(is_nilpotent(v));
    EXPECT_EQ(socle(v).dim(), 1u);
    EXPECT_EQ(v, random_nilpotent_module(2, 4, seed));
    dims.insert(v.dim());
  }
  EXPECT_GT(dims.size(), 1u);
  int distinct = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    distinct += canonical_form(random_nilpotent_module(2, 3, seed)) != canonical_form(random_nilpotent_module(2, 3, seed + 100));
  EXPECT_GT(distinct, 0);
}

TEST(SocleEigenvalues, Examples) {
  EXPECT_EQ(socle_eigenvalues(random_nilpotent_module(3, 3, 4)), std::vector<Rational>(3));
  const FDModule jordan_shifted = FDModule::validate(2, {jordan(2, q(-5, 3))});
  EXPECT_EQ(socle_eigenvalues(jordan_shifted), (std::vector<Rational>{q(-5, 3)}));
  const FDModule rotation = FDModule::validate(2, {Matrix::from_rows({{q(0), q(1)}, {q(-1), q(0)}})});
  EXPECT_EQ(kind_of([&] { socle_eigenvalues(rotation); }), ErrorKind::NonRationalEigenvalue);
  const FDModule split = FDModule::validate(2, {Matrix::from_rows({{q(0), q(0)}, {q(0), q(1)}})});
  EXPECT_EQ(kind_of([&] { socle_eigenvalues(split); }), ErrorKind::SocleNotOneDimensional);
  // x^2 - 2 has no rational root even though the trace is rational.
  const FDModule sqrt2 = FDModule::validate(2, {Matrix::from_rows({{q(0), q(2)}, {q(1), q(0)}})});
  EXPECT_EQ(kind_of([&] { socle_eigenvalues(sqrt2); }), ErrorKind::NonRationalEigenvalue);
}

TEST(SocleEigenvalues, RecoversPlantedShift) {
  Rng rng(37);
  for (int t = 0; t < 20; ++t) {
    const FDModule base = random_nilpotent_module(2, 3, rng.next());
    const std::vector<Rational> alpha{q(rng.uniform(-5, 5), rng.uniform(1, 4)), q(rng.uniform(-5, 5))};
    const std::vector<Rational> minus{-alpha[0], -alpha[1]};
    const FDModule shifted = conjugate(twist(base, minus), random_invertible(base.dim(), rng));
    EXPECT_EQ(socle_eigenvalues(shifted), alpha);
  }
}

}  // namespace
}  // namespace nilmod
