#include "nilmod/diffop.hpp"

#include <algorithm>
#include <string>

#include "nilmod/embed.hpp"
#include "nilmod/error.hpp"

namespace nilmod {

DiffOpSeries::DiffOpSeries(std::size_t n, std::uint32_t trunc, const Coeffs& coeffs) : n_(n), trunc_(trunc) {
  for (const auto& [a, c] : coeffs) {
    if (a.size() != n) throw Error(ErrorKind::VariableCountMismatch, "coefficient index of the wrong length");
    if (a.total() > trunc)
      throw Error(ErrorKind::InvalidInput, "coefficient of degree " + std::to_string(a.total()) +
                                               " exceeds truncation " + std::to_string(trunc));
    set(a, c);
  }
}

DiffOpSeries DiffOpSeries::identity(std::size_t n, std::uint32_t trunc) {
  DiffOpSeries s(n, trunc);
  s.set(MultiIndex(n), 1);
  return s;
}

DiffOpSeries DiffOpSeries::derivative(std::size_t n, std::uint32_t trunc, const MultiIndex& a) {
  return DiffOpSeries(n, trunc, Coeffs{{a, Rational(1)}});
}

Rational DiffOpSeries::coeff(const MultiIndex& a) const {
  auto it = coeffs_.find(a);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void DiffOpSeries::set(const MultiIndex& a, const Rational& c) {
  if (a.size() != n_) throw Error(ErrorKind::VariableCountMismatch, "coefficient index of the wrong length");
  if (a.total() > trunc_) return;
  if (sgn(c) == 0)
    coeffs_.erase(a);
  else
    coeffs_[a] = c;
}

DiffOpSeries DiffOpSeries::truncated(std::uint32_t trunc) const {
  DiffOpSeries s(n_, std::min(trunc, trunc_));
  for (const auto& [a, c] : coeffs_) s.set(a, c);
  return s;
}

namespace {

void require_same_n(const DiffOpSeries& a, const DiffOpSeries& b) {
  if (a.n() != b.n()) throw Error(ErrorKind::VariableCountMismatch, "series in different variable counts");
}

}  // namespace

DiffOpSeries operator+(const DiffOpSeries& a, const DiffOpSeries& b) {
  require_same_n(a, b);
  DiffOpSeries s = a.truncated(b.trunc());
  for (const auto& [k, c] : b.coeffs()) s.set(k, s.coeff(k) + c);
  return s;
}

DiffOpSeries operator-(const DiffOpSeries& a, const DiffOpSeries& b) { return a + Rational(-1) * b; }

DiffOpSeries operator*(const Rational& f, const DiffOpSeries& a) {
  DiffOpSeries s(a.n(), a.trunc());
  for (const auto& [k, c] : a.coeffs()) s.set(k, f * c);
  return s;
}

Poly apply(const DiffOpSeries& s, const Poly& p) {
  if (p.n() != s.n()) throw Error(ErrorKind::VariableCountMismatch, "polynomial and series differ in n");
  if (total_degree(p) > static_cast<int>(s.trunc()))
    throw Error(ErrorKind::TruncationTooLow, "polynomial degree " + std::to_string(total_degree(p)) +
                                                 " exceeds truncation " + std::to_string(s.trunc()));
  Poly out(p.n());
  for (const auto& [b, cb] : p.terms()) {
    const Rational bf(b.factorial());
    for (const auto& [a, ca] : s.coeffs()) {
      if (!a.divides(b)) continue;
      MultiIndex rest = b - a;
      out.add_term(rest, ca * cb * bf / Rational(rest.factorial()));
    }
  }
  return out;
}

MonomialTable operator_table(const DiffOpSeries& s) {
  MonomialTable t;
  for (const auto& a : monomials_up_to(s.n(), s.trunc())) t.emplace(a, apply(s, Poly::monomial(s.n(), a)));
  return t;
}

DiffOpSeries extract_coeffs(const MonomialTable& phi, std::size_t n, std::uint32_t trunc) {
  const auto mons = monomials_up_to(n, trunc);
  for (const auto& a : mons) {
    auto it = phi.find(a);
    if (it == phi.end()) throw Error(ErrorKind::InvalidInput, "monomial table is missing an entry of degree " + std::to_string(a.total()));
    if (it->second.n() != n) throw Error(ErrorKind::VariableCountMismatch, "image has the wrong variable count");
  }
  for (const auto& a : mons)
    for (std::size_t i = 0; i < n; ++i) {
      Poly expected(n);
      if (a[i] > 0) {
        MultiIndex lower = a;
        --lower[i];
        expected = Rational(a[i]) * phi.at(lower);
      }
      if (partial(phi.at(a), i) != expected) {
        std::vector<std::size_t> witness{i};
        for (auto e : a.exponents()) witness.push_back(e);
        throw Error(ErrorKind::NotAnEndomorphism,
                    "image does not commute with d/dx_" + std::to_string(i + 1), std::move(witness));
      }
    }
  DiffOpSeries s(n, trunc);
  for (const auto& a : mons) s.set(a, eval_zero(phi.at(a)) / Rational(a.factorial()));
  return s;
}

DiffOpSeries compose(const DiffOpSeries& a, const DiffOpSeries& b) {
  require_same_n(a, b);
  DiffOpSeries out(a.n(), std::min(a.trunc(), b.trunc()));
  DiffOpSeries::Coeffs acc;
  for (const auto& [ka, ca] : a.coeffs())
    for (const auto& [kb, cb] : b.coeffs()) {
      if (ka.total() + kb.total() > out.trunc()) continue;
      acc[ka + kb] += ca * cb;
    }
  for (const auto& [k, c] : acc) out.set(k, c);
  return out;
}

DiffOpSeries series_exp(const DiffOpSeries& s) {
  if (sgn(s.unit()) != 0) throw Error(ErrorKind::WrongConstantTerm, "exp needs a zero constant coefficient");
  DiffOpSeries result = DiffOpSeries::identity(s.n(), s.trunc());
  DiffOpSeries term = result;
  // s^k has order >= k, so terms beyond trunc vanish.
  for (std::uint32_t k = 1; k <= s.trunc(); ++k) {
    term = Rational(1, k) * compose(term, s);
    result = result + term;
  }
  return result;
}

DiffOpSeries series_log(const DiffOpSeries& s) {
  if (s.unit() != 1) throw Error(ErrorKind::WrongConstantTerm, "log needs constant coefficient 1");
  const DiffOpSeries u = s - DiffOpSeries::identity(s.n(), s.trunc());
  DiffOpSeries result(s.n(), s.trunc());
  DiffOpSeries power = DiffOpSeries::identity(s.n(), s.trunc());
  for (std::uint32_t k = 1; k <= s.trunc(); ++k) {
    power = compose(power, u);
    Rational f(k % 2 == 1 ? 1 : -1, k);
    f.canonicalize();
    result = result + f * power;
  }
  return result;
}

// -------------------------------------------------------- monomial modules

MonomialSubmodule::MonomialSubmodule(std::size_t n, const std::set<MultiIndex>& indices) : n_(n) {
  for (const auto& a : indices)
    if (a.size() != n) throw Error(ErrorKind::VariableCountMismatch, "multi-index of the wrong length");
  if (!indices.contains(MultiIndex(n)) || !is_lower_set(indices))
    throw Error(ErrorKind::NotLowerSet, "exponent set is not a lower set containing 0");
  indices_.assign(indices.begin(), indices.end());
}

bool MonomialSubmodule::contains(const MultiIndex& a) const {
  return std::binary_search(indices_.begin(), indices_.end(), a);
}

std::size_t MonomialSubmodule::position(const MultiIndex& a) const {
  auto it = std::lower_bound(indices_.begin(), indices_.end(), a);
  if (it == indices_.end() || *it != a) throw Error(ErrorKind::InvalidInput, "monomial outside the lower set");
  return static_cast<std::size_t>(it - indices_.begin());
}

std::uint32_t MonomialSubmodule::max_degree() const { return static_cast<std::uint32_t>(indices_.back().total()); }

PolySubmodule MonomialSubmodule::as_poly_submodule() const { return PolySubmodule::from_monomials(n_, indices_); }

Matrix restrict(const DiffOpSeries& s, const MonomialSubmodule& m) {
  if (s.n() != m.n()) throw Error(ErrorKind::VariableCountMismatch, "series and module differ in n");
  if (s.trunc() < m.max_degree())
    throw Error(ErrorKind::TruncationTooLow, "series truncation " + std::to_string(s.trunc()) +
                                                 " below module degree " + std::to_string(m.max_degree()));
  const std::size_t size = m.m();
  Matrix r(size, size);
  for (std::size_t j = 0; j < size; ++j) {
    const MultiIndex& b = m.indices()[j];
    const Rational bf(b.factorial());
    for (const auto& [a, c] : s.coeffs()) {
      if (!a.divides(b)) continue;
      const MultiIndex rest = b - a;
      r(m.position(rest), j) += c * bf / Rational(rest.factorial());
    }
  }
  return r;
}

// ----------------------------------------------------------- Aut(M)

void AutStructure::check(const AutDescriptor& a) const {
  if (sgn(a.unit) == 0) throw Error(ErrorKind::WrongConstantTerm, "descriptor unit must be nonzero");
  for (const auto& [l, t] : a.additive)
    if (l.is_zero() || !m_.contains(l))
      throw Error(ErrorKind::InvalidInput, "descriptor coordinate outside the nonzero part of the lower set");
}

AutDescriptor AutStructure::identity() const { return {1, {}}; }

AutDescriptor AutStructure::compose(const AutDescriptor& a, const AutDescriptor& b) const {
  check(a);
  check(b);
  AutDescriptor r{a.unit * b.unit, a.additive};
  for (const auto& [l, t] : b.additive) {
    r.additive[l] += t;
    if (sgn(r.additive[l]) == 0) r.additive.erase(l);
  }
  return r;
}

AutDescriptor AutStructure::inverse(const AutDescriptor& a) const {
  check(a);
  AutDescriptor r{1 / a.unit, {}};
  for (const auto& [l, t] : a.additive) r.additive.emplace(l, -t);
  return r;
}

DiffOpSeries AutStructure::series(const AutDescriptor& a) const {
  check(a);
  DiffOpSeries log_part(m_.n(), m_.max_degree());
  for (const auto& [l, t] : a.additive) log_part.set(l, t);
  return a.unit * series_exp(log_part);
}

Matrix AutStructure::parametrize(const AutDescriptor& a) const { return restrict(series(a), m_); }

AutDescriptor AutStructure::descriptor(const DiffOpSeries& s) const {
  if (s.n() != m_.n()) throw Error(ErrorKind::VariableCountMismatch, "series and module differ in n");
  const Rational u = s.unit();
  if (sgn(u) == 0) throw Error(ErrorKind::WrongConstantTerm, "not an automorphism: zero constant coefficient");
  if (s.trunc() < m_.max_degree()) throw Error(ErrorKind::TruncationTooLow, "series truncation below module degree");
  // Only coefficients on the lower set matter; sums of exponents that land in
  // the lower set only involve exponents from it.
  DiffOpSeries normalized(m_.n(), m_.max_degree());
  for (const auto& l : m_.indices()) normalized.set(l, s.coeff(l) / u);
  const DiffOpSeries log = series_log(normalized);
  AutDescriptor d{u, {}};
  for (const auto& l : m_.indices()) {
    if (l.is_zero()) continue;
    const Rational t = log.coeff(l);
    if (sgn(t) != 0) d.additive.emplace(l, t);
  }
  return d;
}

AutDescriptor AutStructure::descriptor(const Matrix& r) const {
  if (r.rows() != m_.m() || r.cols() != m_.m())
    throw Error(ErrorKind::DimensionMismatch, "matrix size differs from the module dimension");
  // Column of x^l evaluated at 0 is row 0: c_l l!.
  DiffOpSeries s(m_.n(), m_.max_degree());
  for (std::size_t j = 0; j < m_.m(); ++j) {
    const auto& l = m_.indices()[j];
    s.set(l, r(0, j) / Rational(l.factorial()));
  }
  if (restrict(s, m_) != r)
    throw Error(ErrorKind::NotAnEndomorphism, "matrix is not the restriction of a differential operator");
  return descriptor(s);
}

AutStructure aut_structure(const MonomialSubmodule& m) { return AutStructure(m); }

EndomorphismReport analyze_endomorphisms(const PolySubmodule& m) {
  std::set<MultiIndex> support(m.support().begin(), m.support().end());
  const auto closure = lower_set_closure(support);
  const std::size_t d = m.dim();
  std::vector<Vec> flattened;
  for (const auto& l : closure) {
    Vec v(d * d);
    for (std::size_t j = 0; j < d; ++j) {
      const auto c = m.coordinates(derivative(m.basis()[j], l));
      if (!c) throw Error(ErrorKind::NotASubmodule, "derivative left the subspace");
      for (std::size_t r = 0; r < d; ++r) v[r * d + j] = (*c)[r];
    }
    flattened.push_back(std::move(v));
  }
  EndomorphismReport rep;
  rep.closure_size = closure.size();
  rep.restriction_rank = Subspace::span(d * d, flattened).dim();
  rep.kernel_dim = rep.closure_size - rep.restriction_rank;
  const FDModule v = as_matrices(m).first;
  rep.endomorphism_dim = intertwiners(v, v).size();
  rep.restrictions_exhaust = rep.restriction_rank == rep.endomorphism_dim;
  return rep;
}

// ----------------------------------------------------- isomorphism extension

void check_isomorphism(const PolySubmodule& source, const PolySubmodule& target, const ModuleMap& phi) {
  if (source.n() != target.n() || phi.n != source.n())
    throw Error(ErrorKind::VariableCountMismatch, "source, target and map differ in n");
  if (phi.images.size() != source.dim())
    throw Error(ErrorKind::IncompatibleMap, "map has " + std::to_string(phi.images.size()) + " images for a " +
                                                std::to_string(source.dim()) + "-dimensional source");
  if (!intertwines(source, phi)) throw Error(ErrorKind::IncompatibleMap, "map does not commute with the derivatives");
  if (phi.rank() != source.dim()) throw Error(ErrorKind::IncompatibleMap, "map is not injective");
  for (const auto& img : phi.images)
    if (!target.contains(img)) throw Error(ErrorKind::IncompatibleMap, "map leaves the target");
  if (target.dim() != source.dim()) throw Error(ErrorKind::IncompatibleMap, "map is not onto the target");
}

namespace {

MultiIndex least_missing_monomial(const PolySubmodule& source, const MonomialSubmodule* box) {
  const std::size_t n = source.n();
  if (box) {
    for (const auto& a : box->indices())
      if (!source.contains(Poly::monomial(n, a))) return a;
    throw Error(ErrorKind::NothingToExtend, "every monomial of the box already lies in the source");
  }
  for (std::uint64_t deg = 0;; ++deg)
    for (const auto& a : monomials_of_degree(n, deg))
      if (!source.contains(Poly::monomial(n, a))) return a;
}

}  // namespace

ExtensionStep extend_iso_step(const PolySubmodule& source, const PolySubmodule& target, const ModuleMap& phi,
                              const MonomialSubmodule* box) {
  check_isomorphism(source, target, phi);
  const std::size_t n = source.n();
  if (box && box->n() != n) throw Error(ErrorKind::VariableCountMismatch, "box and source differ in n");

  const MultiIndex kappa = least_missing_monomial(source, box);
  const Poly x_kappa = Poly::monomial(n, kappa);
  std::vector<Poly> g_parts;
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = source.coordinates(partial(x_kappa, i));
    if (!c) throw Error(ErrorKind::InternalInvariant, "derivative of the adjoined monomial is outside the source");
    g_parts.push_back(phi.apply(*c));
  }
  Poly g = potential(g_parts, n);
  if (target.contains(g)) throw Error(ErrorKind::InternalInvariant, "extension image already lies in the target");

  std::vector<Poly> src_gens = source.basis();
  src_gens.push_back(x_kappa);
  std::vector<Poly> dst_gens = target.basis();
  dst_gens.push_back(g);

  ExtensionStep step;
  step.source = PolySubmodule::from_spanning_set(n, src_gens);
  step.target = PolySubmodule::from_spanning_set(n, dst_gens);
  ModuleMap adapted{n, phi.images};
  adapted.images.push_back(g);
  step.map.n = n;
  for (const auto& b : step.source.basis()) {
    const auto c = express_in(src_gens, b);
    if (!c) throw Error(ErrorKind::InternalInvariant, "extended basis element not in the adapted span");
    step.map.images.push_back(adapted.apply(*c));
  }
  step.adjoined = kappa;
  step.adjoined_image = std::move(g);
  return step;
}

IsoExtension extend_iso(const PolySubmodule& source, const PolySubmodule& target, const ModuleMap& phi,
                        const MonomialSubmodule& box) {
  for (const auto& a : source.support())
    if (!box.contains(a)) throw Error(ErrorKind::NothingToExtend, "source is not contained in the span of the box");
  check_isomorphism(source, target, phi);
  IsoExtension cur{source, target, phi};
  while (cur.source.dim() < box.m()) {
    ExtensionStep step = extend_iso_step(cur.source, cur.target, cur.map, &box);
    cur = std::move(static_cast<IsoExtension&>(step));
  }
  return cur;
}

}  // namespace nilmod
