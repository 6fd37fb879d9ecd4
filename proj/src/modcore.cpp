#include "nilmod/modcore.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <string>

#include "nilmod/error.hpp"

namespace nilmod {

// ---------------------------------------------------------------- FDModule

FDModule FDModule::validate(std::size_t dim, std::vector<Matrix> matrices) {
  if (matrices.empty()) throw Error(ErrorKind::InvalidInput, "a module needs at least one variable");
  for (std::size_t i = 0; i < matrices.size(); ++i)
    if (matrices[i].rows() != dim || matrices[i].cols() != dim)
      throw Error(ErrorKind::DimensionMismatch, "matrix " + std::to_string(i + 1) + " is " +
                                                    std::to_string(matrices[i].rows()) + "x" +
                                                    std::to_string(matrices[i].cols()) + ", expected " +
                                                    std::to_string(dim) + "x" + std::to_string(dim));
  for (std::size_t i = 0; i < matrices.size(); ++i)
    for (std::size_t j = i + 1; j < matrices.size(); ++j)
      if (matrices[i] * matrices[j] != matrices[j] * matrices[i])
        throw Error(ErrorKind::NonCommuting,
                    "S_" + std::to_string(i + 1) + " and S_" + std::to_string(j + 1) + " do not commute", {i, j});
  return FDModule(dim, std::move(matrices));
}

// ----------------------------------------------------------- PolySubmodule

namespace {

struct CoefficientLayout {
  std::vector<MultiIndex> support;  // decreasing
  std::vector<Vec> rows;
};

CoefficientLayout coefficient_layout(std::size_t n, std::span<const Poly> polys) {
  std::set<MultiIndex, std::greater<>> mons;
  for (const auto& p : polys) {
    if (p.n() != n) throw Error(ErrorKind::VariableCountMismatch, "polynomial has the wrong variable count");
    for (const auto& [a, c] : p.terms()) mons.insert(a);
  }
  CoefficientLayout out;
  out.support.assign(mons.begin(), mons.end());
  for (const auto& p : polys) {
    Vec v(out.support.size());
    for (std::size_t k = 0; k < out.support.size(); ++k) v[k] = p.coeff(out.support[k]);
    out.rows.push_back(std::move(v));
  }
  return out;
}

std::size_t poly_rank(std::size_t n, std::span<const Poly> polys) {
  const auto layout = coefficient_layout(n, polys);
  return Subspace::span(layout.support.size(), layout.rows).dim();
}

}  // namespace

PolySubmodule PolySubmodule::linear_span(std::size_t n, std::span<const Poly> gens) {
  auto layout = coefficient_layout(n, gens);
  PolySubmodule m;
  m.n_ = n;
  m.coords_ = Subspace::span(layout.support.size(), layout.rows);
  m.support_ = std::move(layout.support);
  const auto& b = m.coords_.basis_matrix();
  for (std::size_t r = b.rows(); r-- > 0;) {
    Poly p(n);
    for (std::size_t k = 0; k < m.support_.size(); ++k) p.add_term(m.support_[k], b(r, k));
    m.basis_.push_back(std::move(p));
  }
  return m;
}

PolySubmodule PolySubmodule::from_spanning_set(std::size_t n, std::span<const Poly> gens) {
  PolySubmodule m = linear_span(n, gens);
  if (!m.contains(Poly::constant(n, 1)))
    throw Error(ErrorKind::NotASubmodule, "span does not contain the constants");
  if (!m.is_derivative_closed())
    throw Error(ErrorKind::NotASubmodule, "span is not closed under partial derivatives");
  return m;
}

PolySubmodule PolySubmodule::from_monomials(std::size_t n, std::span<const MultiIndex> indices) {
  std::set<MultiIndex> s(indices.begin(), indices.end());
  for (const auto& a : s)
    if (a.size() != n) throw Error(ErrorKind::VariableCountMismatch, "multi-index of the wrong length");
  if (!s.contains(MultiIndex(n)) || !is_lower_set(s))
    throw Error(ErrorKind::NotLowerSet, "monomial exponents do not form a lower set containing 0");
  std::vector<Poly> gens;
  for (const auto& a : s) gens.push_back(Poly::monomial(n, a));
  return linear_span(n, gens);
}

std::optional<Vec> PolySubmodule::coordinates(const Poly& p) const {
  if (p.n() != n_) throw Error(ErrorKind::VariableCountMismatch, "polynomial has the wrong variable count");
  Vec v(support_.size());
  for (const auto& [a, c] : p.terms()) {
    auto it = std::lower_bound(support_.begin(), support_.end(), a, std::greater<>());
    if (it == support_.end() || *it != a) return std::nullopt;
    v[static_cast<std::size_t>(it - support_.begin())] = c;
  }
  auto rows = coords_.coordinates(v);
  if (!rows) return std::nullopt;
  std::reverse(rows->begin(), rows->end());
  return rows;
}

Poly PolySubmodule::combine(std::span<const Rational> coords) const {
  if (coords.size() != basis_.size()) throw Error(ErrorKind::DimensionMismatch, "coordinate vector length mismatch");
  Poly p(n_);
  for (std::size_t j = 0; j < coords.size(); ++j)
    if (sgn(coords[j]) != 0) p += coords[j] * basis_[j];
  return p;
}

bool PolySubmodule::is_derivative_closed() const {
  for (const auto& b : basis_)
    for (std::size_t i = 0; i < n_; ++i)
      if (!contains(partial(b, i))) return false;
  return true;
}

// ---------------------------------------------------------------- ModuleMap

Poly ModuleMap::apply(std::span<const Rational> coords) const {
  if (coords.size() != images.size()) throw Error(ErrorKind::DimensionMismatch, "coordinate vector length mismatch");
  Poly p(n);
  for (std::size_t j = 0; j < coords.size(); ++j)
    if (sgn(coords[j]) != 0) p += coords[j] * images[j];
  return p;
}

std::size_t ModuleMap::rank() const { return poly_rank(n, images); }

bool intertwines(const FDModule& source, const ModuleMap& map, std::span<const Rational> shift) {
  if (map.images.size() != source.dim() || map.n != source.n()) return false;
  if (!shift.empty() && shift.size() != source.n()) throw Error(ErrorKind::DimensionMismatch, "shift length mismatch");
  for (std::size_t i = 0; i < source.n(); ++i)
    for (std::size_t j = 0; j < source.dim(); ++j) {
      const Poly lhs = map.apply(source.action(i).column(j));
      Poly rhs = partial(map.images[j], i);
      if (!shift.empty()) rhs += shift[i] * map.images[j];
      if (lhs != rhs) return false;
    }
  return true;
}

bool intertwines(const PolySubmodule& source, const ModuleMap& map) {
  if (map.images.size() != source.dim() || map.n != source.n()) return false;
  for (std::size_t i = 0; i < source.n(); ++i)
    for (std::size_t j = 0; j < source.dim(); ++j) {
      const auto c = source.coordinates(partial(source.basis()[j], i));
      if (!c) return false;
      if (map.apply(*c) != partial(map.images[j], i)) return false;
    }
  return true;
}

std::optional<Vec> express_in(std::span<const Poly> family, const Poly& p) {
  std::vector<Poly> all(family.begin(), family.end());
  all.push_back(p);
  const auto layout = coefficient_layout(p.n(), all);
  std::vector<Vec> cols(layout.rows.begin(), layout.rows.end() - 1);
  return solve(Matrix::from_columns(layout.support.size(), cols), layout.rows.back());
}

std::vector<Matrix> intertwiners(const FDModule& from, const FDModule& to) {
  if (from.n() != to.n()) throw Error(ErrorKind::VariableCountMismatch, "modules over different polynomial rings");
  const std::size_t d = from.dim(), e = to.dim();
  // Unknown P is e x d, entry (r, c) at r * d + c.
  Matrix system(from.n() * e * d, e * d);
  for (std::size_t i = 0; i < from.n(); ++i) {
    const Matrix& s = from.action(i);
    const Matrix& t = to.action(i);
    for (std::size_t r = 0; r < e; ++r)
      for (std::size_t c = 0; c < d; ++c) {
        const std::size_t eq = (i * e + r) * d + c;
        for (std::size_t k = 0; k < d; ++k) system(eq, r * d + k) += s(k, c);
        for (std::size_t k = 0; k < e; ++k) system(eq, k * d + c) -= t(r, k);
      }
  }
  std::vector<Matrix> out;
  for (const auto& v : kernel(system).basis()) {
    Matrix p(e, d);
    for (std::size_t r = 0; r < e; ++r)
      for (std::size_t c = 0; c < d; ++c) p(r, c) = v[r * d + c];
    out.push_back(std::move(p));
  }
  return out;
}

// -------------------------------------------------------------- operations

namespace {

bool matrix_is_nilpotent(const Matrix& s) {
  const std::size_t d = s.rows();
  if (d == 0) return true;
  Matrix p = s;
  std::size_t power = 1;
  while (power < d) {
    p = p * p;
    power *= 2;
  }
  return p.is_zero();
}

Matrix stacked(const std::vector<Matrix>& ms, std::size_t dim) {
  Matrix out(ms.size() * dim, dim);
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) out(i * dim + r, c) = ms[i](r, c);
  return out;
}

Codim1Split finish_split(const FDModule& v, Subspace w, Vec v0) {
  const auto wb = w.basis();
  std::vector<Matrix> restricted;
  for (std::size_t i = 0; i < v.n(); ++i) {
    Matrix r(wb.size(), wb.size());
    for (std::size_t k = 0; k < wb.size(); ++k) {
      const auto c = w.coordinates(v.action(i) * wb[k]);
      if (!c) throw Error(ErrorKind::InternalInvariant, "hyperplane is not invariant");
      for (std::size_t row = 0; row < wb.size(); ++row) r(row, k) = (*c)[row];
    }
    restricted.push_back(std::move(r));
  }
  return {std::move(w), FDModule::validate(wb.size(), std::move(restricted)), std::move(v0)};
}

Subspace image_sum(const FDModule& v) {
  std::vector<Vec> cols;
  for (const auto& s : v.matrices())
    for (std::size_t j = 0; j < v.dim(); ++j) cols.push_back(s.column(j));
  return Subspace::span(v.dim(), cols);
}

void require_nilpotent(const FDModule& v) {
  if (!is_nilpotent(v)) throw Error(ErrorKind::NotNilpotent, "some S_i is not nilpotent");
}

}  // namespace

bool is_nilpotent(const FDModule& v) {
  return std::all_of(v.matrices().begin(), v.matrices().end(), matrix_is_nilpotent);
}

Subspace socle(const FDModule& v) {
  require_nilpotent(v);
  return kernel(stacked(v.matrices(), v.dim()));
}

Codim1Split codim1_submodule(const FDModule& v) {
  require_nilpotent(v);
  const std::size_t d = v.dim();
  if (d == 0) throw Error(ErrorKind::InvalidInput, "the zero module has no codimension-one submodule");
  Subspace w = image_sum(v);
  for (std::size_t j = 0; j < d && w.dim() + 1 < d; ++j) {
    const Vec e = unit_vec(d, j);
    if (!w.contains(e)) w = subspace_sum(w, Subspace::span(d, std::span(&e, 1)));
  }
  for (std::size_t j = 0; j < d; ++j) {
    Vec e = unit_vec(d, j);
    if (!w.contains(e)) return finish_split(v, std::move(w), std::move(e));
  }
  throw Error(ErrorKind::InternalInvariant, "no complement vector found");
}

Codim1Split codim1_submodule(const FDModule& v, Rng& rng) {
  require_nilpotent(v);
  const std::size_t d = v.dim();
  if (d == 0) throw Error(ErrorKind::InvalidInput, "the zero module has no codimension-one submodule");
  Subspace w = image_sum(v);
  while (w.dim() + 1 < d) {
    const Vec r = random_vec(d, rng);
    if (!w.contains(r)) w = subspace_sum(w, Subspace::span(d, std::span(&r, 1)));
  }
  for (;;) {
    Vec r = random_vec(d, rng);
    if (!w.contains(r)) return finish_split(v, std::move(w), std::move(r));
  }
}

FDModule twist(const FDModule& v, std::span<const Rational> shift) {
  if (shift.size() != v.n()) throw Error(ErrorKind::DimensionMismatch, "shift length differs from n");
  std::vector<Matrix> ms;
  for (std::size_t i = 0; i < v.n(); ++i) ms.push_back(v.action(i) - shift[i] * Matrix::identity(v.dim()));
  return FDModule::validate(v.dim(), std::move(ms));
}

FDModule conjugate(const FDModule& v, const Matrix& p) {
  const auto pinv = inverse(p);
  if (!pinv) throw Error(ErrorKind::InvalidInput, "conjugating matrix is singular");
  std::vector<Matrix> ms;
  for (const auto& s : v.matrices()) ms.push_back(p * s * *pinv);
  return FDModule::validate(v.dim(), std::move(ms));
}

PolySubmodule submodule_from_polys(std::size_t n, std::span<const Poly> gens) {
  std::vector<Poly> all{Poly::constant(n, 1)};
  for (const auto& g : gens) {
    if (g.n() != n) throw Error(ErrorKind::VariableCountMismatch, "generator has the wrong variable count");
    std::set<MultiIndex> support;
    for (const auto& [a, c] : g.terms()) support.insert(a);
    for (const auto& a : lower_set_closure(support)) {
      Poly d = derivative(g, a);
      if (!d.is_zero()) all.push_back(std::move(d));
    }
  }
  return PolySubmodule::from_spanning_set(n, all);
}

std::pair<FDModule, ModuleMap> as_matrices(const PolySubmodule& m) {
  const std::size_t d = m.dim();
  std::vector<Matrix> ms;
  for (std::size_t i = 0; i < m.n(); ++i) {
    Matrix s(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      const auto c = m.coordinates(partial(m.basis()[j], i));
      if (!c) throw Error(ErrorKind::NotASubmodule, "basis derivative left the subspace");
      for (std::size_t r = 0; r < d; ++r) s(r, j) = (*c)[r];
    }
    ms.push_back(std::move(s));
  }
  return {FDModule::validate(d, std::move(ms)), ModuleMap{m.n(), m.basis()}};
}

FDModule random_nilpotent_module(std::size_t n, std::uint32_t degree_bound, std::uint64_t seed) {
  Rng rng(seed);
  const Poly p = random_poly(n, degree_bound, rng);
  return as_matrices(submodule_from_polys(n, std::span(&p, 1))).first;
}

// ------------------------------------------------------ socle eigenvalues

namespace {

// Dense univariate polynomial, coefficients from the constant term up.
using UPoly = std::vector<Rational>;

void trim(UPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

UPoly characteristic_polynomial(const Matrix& a) {
  // Faddeev-LeVerrier: c_d = 1, M_k = A M_{k-1} + c_{d-k+1} I, c_{d-k} = -tr(A M_k)/k.
  const std::size_t d = a.rows();
  UPoly c(d + 1);
  c[d] = 1;
  Matrix m(d, d);
  for (std::size_t k = 1; k <= d; ++k) {
    m = a * m + c[d - k + 1] * Matrix::identity(d);
    c[d - k] = -(a * m).trace() / Rational(k);
  }
  return c;
}

UPoly derivative(const UPoly& p) {
  UPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Rational(k));
  trim(d);
  return d;
}

UPoly remainder(UPoly a, const UPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= f * b[k];
    trim(a);
  }
  return a;
}

UPoly quotient(UPoly a, const UPoly& b) {
  trim(a);
  if (a.size() < b.size()) return {};
  UPoly q(a.size() - b.size() + 1);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = f;
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= f * b[k];
    trim(a);
  }
  trim(q);
  return q;
}

UPoly gcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Rational evaluate(const UPoly& p, const Rational& x) {
  Rational r = 0;
  for (std::size_t k = p.size(); k-- > 0;) r = r * x + p[k];
  return r;
}

std::vector<Integer> divisors(Integer v) {
  v = abs(v);
  std::vector<std::pair<Integer, unsigned>> factors;
  // Cofactors surviving trial division up to this bound are treated as prime.
  const Integer bound = 1000000;
  for (Integer p = 2; p * p <= v && p <= bound; ++p) {
    unsigned e = 0;
    while (v % p == 0) {
      v /= p;
      ++e;
    }
    if (e > 0) factors.emplace_back(p, e);
  }
  if (v > 1) factors.emplace_back(v, 1);
  std::vector<Integer> out{1};
  for (const auto& [p, e] : factors) {
    const std::size_t base = out.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  return out;
}

// Number of distinct rational roots of a squarefree polynomial.
std::size_t distinct_rational_roots(UPoly p) {
  trim(p);
  std::size_t count = 0;
  if (!p.empty() && sgn(p.front()) == 0) {
    ++count;
    p.erase(p.begin());
  }
  if (p.size() <= 1) return count;
  Integer lcm_den = 1;
  for (const auto& c : p) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> ints;
  for (const auto& c : p) ints.push_back(Integer(c * lcm_den));
  const auto nums = divisors(ints.front());
  const auto dens = divisors(ints.back());
  std::set<Rational> found;
  for (const auto& a : nums)
    for (const auto& b : dens)
      for (int s : {1, -1}) {
        Rational r(a * s, b);
        r.canonicalize();
        if (!found.contains(r) && sgn(evaluate(p, r)) == 0) found.insert(r);
      }
  return count + found.size();
}

}  // namespace

std::vector<Rational> socle_eigenvalues(const FDModule& v) {
  const std::size_t d = v.dim();
  if (d == 0) throw Error(ErrorKind::InvalidInput, "the zero module has no socle");
  std::vector<Rational> alpha;
  std::vector<Matrix> shifted;
  for (std::size_t i = 0; i < v.n(); ++i) {
    // A single eigenvalue of multiplicity d must equal trace / d.
    const Rational a = v.action(i).trace() / Rational(d);
    Matrix s = v.action(i) - a * Matrix::identity(d);
    if (!matrix_is_nilpotent(s)) {
      const UPoly chi = characteristic_polynomial(v.action(i));
      const UPoly squarefree = quotient(chi, gcd(chi, derivative(chi)));
      const std::size_t distinct = squarefree.size() - 1;
      if (distinct_rational_roots(squarefree) < distinct)
        throw Error(ErrorKind::NonRationalEigenvalue,
                    "S_" + std::to_string(i + 1) + " has an eigenvalue outside the rationals", {i});
      throw Error(ErrorKind::SocleNotOneDimensional,
                  "S_" + std::to_string(i + 1) + " has " + std::to_string(distinct) + " distinct eigenvalues", {i});
    }
    alpha.push_back(a);
    shifted.push_back(std::move(s));
  }
  if (kernel(stacked(shifted, d)).dim() == 0)
    throw Error(ErrorKind::NoCommonEigenline, "the operators share no eigenvector");
  return alpha;
}

}  // namespace nilmod
