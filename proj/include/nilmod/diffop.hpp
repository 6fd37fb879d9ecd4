#ifndef NILMOD_DIFFOP_HPP
#define NILMOD_DIFFOP_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "nilmod/modcore.hpp"

namespace nilmod {

/// Truncated series sum c_a d^a/dx^a over |a| <= trunc: an element of
/// End(T_n) = Q[[X]] seen through polynomials of degree <= trunc.
///
/// Composition of operators is the power series product under d/dx_i <-> x_i.
class DiffOpSeries {
 public:
  using Coeffs = std::map<MultiIndex, Rational>;

  DiffOpSeries(std::size_t n, std::uint32_t trunc) : n_(n), trunc_(trunc) {}
  /// Throws InvalidInput when a stored index exceeds trunc.
  DiffOpSeries(std::size_t n, std::uint32_t trunc, const Coeffs& coeffs);

  static DiffOpSeries identity(std::size_t n, std::uint32_t trunc);
  /// The single operator d^a/dx^a.
  static DiffOpSeries derivative(std::size_t n, std::uint32_t trunc, const MultiIndex& a);

  std::size_t n() const noexcept { return n_; }
  std::uint32_t trunc() const noexcept { return trunc_; }
  const Coeffs& coeffs() const noexcept { return coeffs_; }
  Rational coeff(const MultiIndex& a) const;
  Rational unit() const { return coeff(MultiIndex(n_)); }

  void set(const MultiIndex& a, const Rational& c);
  /// Same series cut down to a smaller truncation degree.
  DiffOpSeries truncated(std::uint32_t trunc) const;

  friend bool operator==(const DiffOpSeries&, const DiffOpSeries&) = default;

 private:
  std::size_t n_;
  std::uint32_t trunc_;
  Coeffs coeffs_;
};

/// Sums truncate at the smaller of the two degrees.
DiffOpSeries operator+(const DiffOpSeries& a, const DiffOpSeries& b);
DiffOpSeries operator-(const DiffOpSeries& a, const DiffOpSeries& b);
DiffOpSeries operator*(const Rational& s, const DiffOpSeries& a);

/// sum c_a d^a p. Throws TruncationTooLow when deg p > trunc.
Poly apply(const DiffOpSeries& s, const Poly& p);

/// Images x^a -> phi(x^a) of a linear map on monomials.
using MonomialTable = std::map<MultiIndex, Poly>;

/// apply(s, .) on every monomial of degree <= trunc(s).
MonomialTable operator_table(const DiffOpSeries& s);

/// c_a = phi(x^a)(0) / a!. The table must cover all monomials of degree
/// <= trunc and commute with every d/dx_i; otherwise NotAnEndomorphism with
/// witness (i, a_1, ..., a_n).
DiffOpSeries extract_coeffs(const MonomialTable& phi, std::size_t n, std::uint32_t trunc);

/// Power series product, truncated at min(trunc a, trunc b).
DiffOpSeries compose(const DiffOpSeries& a, const DiffOpSeries& b);

/// Requires unit() == 0, else WrongConstantTerm.
DiffOpSeries series_exp(const DiffOpSeries& s);
/// Requires unit() == 1, else WrongConstantTerm.
DiffOpSeries series_log(const DiffOpSeries& s);

inline bool is_automorphism(const DiffOpSeries& s) { return sgn(s.unit()) != 0; }

/// Submodule of T_n spanned by monomials x^l, l in a lower set.
class MonomialSubmodule {
 public:
  /// Throws NotLowerSet unless `indices` is downward closed and contains 0.
  MonomialSubmodule(std::size_t n, const std::set<MultiIndex>& indices);

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return indices_.size(); }
  /// Ascending monomial order; indices().front() is 0.
  const std::vector<MultiIndex>& indices() const noexcept { return indices_; }
  bool contains(const MultiIndex& a) const;
  /// Position of a in indices(); requires contains(a).
  std::size_t position(const MultiIndex& a) const;
  std::uint32_t max_degree() const;
  PolySubmodule as_poly_submodule() const;

  friend bool operator==(const MonomialSubmodule&, const MonomialSubmodule&) = default;

 private:
  std::size_t n_;
  std::vector<MultiIndex> indices_;
};

/// Matrix of apply(s, .) on the monomial basis of m (column j is the image
/// of x^{indices()[j]}). Throws TruncationTooLow when trunc(s) < max degree.
Matrix restrict(const DiffOpSeries& s, const MonomialSubmodule& m);

/// Point of K* x (K+)^(m-1): the unit and logarithmic coordinates t_l for
/// every nonzero l in the lower set.
struct AutDescriptor {
  Rational unit;
  std::map<MultiIndex, Rational> additive;

  friend bool operator==(const AutDescriptor&, const AutDescriptor&) = default;
};

/// Parametrization of Aut(M) for a monomial submodule M:
/// (u, t) <-> restriction of u * exp(sum t_l d^l). The group law is
/// (u, t)(u', t') = (uu', t + t').
class AutStructure {
 public:
  explicit AutStructure(MonomialSubmodule m) : m_(std::move(m)) {}

  const MonomialSubmodule& module() const noexcept { return m_; }
  std::size_t additive_dim() const noexcept { return m_.m() - 1; }

  AutDescriptor identity() const;
  AutDescriptor compose(const AutDescriptor& a, const AutDescriptor& b) const;
  AutDescriptor inverse(const AutDescriptor& a) const;

  DiffOpSeries series(const AutDescriptor& a) const;
  Matrix parametrize(const AutDescriptor& a) const;
  /// Descriptor of the automorphism restrict(s, M); requires s.unit() != 0.
  AutDescriptor descriptor(const DiffOpSeries& s) const;
  /// Descriptor of an automorphism matrix on M's monomial basis. Throws
  /// NotAnEndomorphism if the matrix is not such a restriction and
  /// WrongConstantTerm if it is not invertible.
  AutDescriptor descriptor(const Matrix& restriction) const;

 private:
  void check(const AutDescriptor& a) const;

  MonomialSubmodule m_;
};

AutStructure aut_structure(const MonomialSubmodule& m);

/// Endomorphisms of an arbitrary submodule M of T_n against the restrictions
/// of series supported on the lower-set closure L of M's support.
struct EndomorphismReport {
  std::size_t closure_size = 0;       // |L|
  std::size_t endomorphism_dim = 0;   // dim End(M), from the commutant
  std::size_t restriction_rank = 0;   // dim of restrictions of d^l, l in L
  std::size_t kernel_dim = 0;         // series on L acting as zero on M
  bool restrictions_exhaust = false;  // restriction_rank == endomorphism_dim
};

EndomorphismReport analyze_endomorphisms(const PolySubmodule& m);

/// Result of extending an isomorphism phi: source -> target.
struct IsoExtension {
  PolySubmodule source;
  PolySubmodule target;
  /// images[j] = phi(source.basis()[j]).
  ModuleMap map;
};

/// Throws IncompatibleMap unless phi is an intertwining bijection
/// source -> target.
void check_isomorphism(const PolySubmodule& source, const PolySubmodule& target, const ModuleMap& phi);

struct ExtensionStep : IsoExtension {
  MultiIndex adjoined;
  Poly adjoined_image;
};

/// One step of isomorphism extension: adjoins the least monomial x^k of
/// minimal total degree outside `source` (restricted to `box` when given)
/// and sends it to a potential of the phi(d x^k / dx_i).
/// Throws IncompatibleMap when phi is not an isomorphism source -> target and
/// NothingToExtend when `box` is already inside source.
ExtensionStep extend_iso_step(const PolySubmodule& source, const PolySubmodule& target, const ModuleMap& phi,
                              const MonomialSubmodule* box = nullptr);

/// Repeats extend_iso_step inside `box` until the domain is span(box).
/// Throws NothingToExtend when source is not contained in span(box).
IsoExtension extend_iso(const PolySubmodule& source, const PolySubmodule& target, const ModuleMap& phi,
                        const MonomialSubmodule& box);

}  // namespace nilmod

#endif  // NILMOD_DIFFOP_HPP
