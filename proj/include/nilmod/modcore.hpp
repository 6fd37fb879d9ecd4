#ifndef NILMOD_MODCORE_HPP
#define NILMOD_MODCORE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nilmod/exactalg.hpp"
#include "nilmod/multipoly.hpp"
#include "nilmod/random.hpp"

namespace nilmod {

/// A finite-dimensional module over Q[x_1..x_n]: n pairwise commuting
/// dim x dim matrices, S_i being the action of x_i on column vectors.
class FDModule {
 public:
  /// Checks shapes and commutativity. Throws NonCommuting with the first
  /// failing pair (i < j, zero-based) as witness.
  static FDModule validate(std::size_t dim, std::vector<Matrix> matrices);

  std::size_t n() const noexcept { return matrices_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  const Matrix& action(std::size_t i) const { return matrices_.at(i); }
  const std::vector<Matrix>& matrices() const noexcept { return matrices_; }

  friend bool operator==(const FDModule&, const FDModule&) = default;

 private:
  FDModule(std::size_t dim, std::vector<Matrix> m) : dim_(dim), matrices_(std::move(m)) {}

  std::size_t dim_ = 0;
  std::vector<Matrix> matrices_;
};

/// Finite-dimensional submodule of T_n: a subspace of Q[X] containing the
/// constants and closed under every d/dx_i.
///
/// The basis is canonical: coefficient vectors over the support monomials
/// (ordered by decreasing monomial order) are put in RREF, so every basis
/// element has a distinct leading monomial that occurs in no other basis
/// element. Basis elements are listed by increasing leading monomial.
/// Equality of two PolySubmodule values is equality of subspaces.
class PolySubmodule {
 public:
  PolySubmodule() = default;

  /// Linear span of `gens`; throws NotASubmodule unless the span contains 1
  /// and is closed under all partial derivatives.
  static PolySubmodule from_spanning_set(std::size_t n, std::span<const Poly> gens);
  /// Span of the monomials x^a, a in `indices` (must be a lower set).
  static PolySubmodule from_monomials(std::size_t n, std::span<const MultiIndex> indices);

  std::size_t n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<Poly>& basis() const noexcept { return basis_; }
  /// Monomials occurring in the subspace, by decreasing monomial order.
  const std::vector<MultiIndex>& support() const noexcept { return support_; }

  bool contains(const Poly& p) const { return coordinates(p).has_value(); }
  /// Coordinates in basis(), or nullopt when p is not in the subspace.
  std::optional<Vec> coordinates(const Poly& p) const;
  Poly combine(std::span<const Rational> coords) const;
  bool is_derivative_closed() const;

  friend bool operator==(const PolySubmodule& a, const PolySubmodule& b) {
    return a.n_ == b.n_ && a.basis_ == b.basis_;
  }

 private:
  static PolySubmodule linear_span(std::size_t n, std::span<const Poly> gens);

  std::size_t n_ = 0;
  std::vector<MultiIndex> support_;
  Subspace coords_;
  std::vector<Poly> basis_;
};

/// exp(a_1 x_1 + ... + a_n x_n) * part, a submodule of D_a on which x_i acts
/// as a_i + d/dx_i on the polynomial part.
struct ExpSubmodule {
  std::vector<Rational> eigenvalues;
  PolySubmodule part;
};

/// Linear map into the polynomial space recorded as the images of a source
/// basis (standard basis of an FDModule, or the canonical basis of a
/// PolySubmodule).
struct ModuleMap {
  std::size_t n = 0;
  std::vector<Poly> images;

  Poly apply(std::span<const Rational> coords) const;
  /// Dimension of the span of the images.
  std::size_t rank() const;
};

/// map(S_i e_j) = shift_i map(e_j) + d/dx_i map(e_j) for all i, j.
/// An empty shift means the nilpotent case (all zeros).
bool intertwines(const FDModule& source, const ModuleMap& map, std::span<const Rational> shift = {});
/// map(d/dx_i b_j) = d/dx_i map(b_j) for the canonical basis b of source.
bool intertwines(const PolySubmodule& source, const ModuleMap& map);

/// Coefficients c with sum c_j family[j] = p, free coefficients zero, or
/// nullopt when p is outside the span.
std::optional<Vec> express_in(std::span<const Poly> family, const Poly& p);

/// Basis of the space of matrices P with P S_i = S'_i P for all i, where S
/// and S' are the actions of `from` and `to`.
std::vector<Matrix> intertwiners(const FDModule& from, const FDModule& to);

/// Every S_i nilpotent (S_i^dim = 0).
bool is_nilpotent(const FDModule& v);
/// Intersection of ker S_i. Throws NotNilpotent.
Subspace socle(const FDModule& v);

/// A codimension-one submodule W, V's action restricted to W (in the basis
/// W.basis()), and a complement vector v0 outside W.
struct Codim1Split {
  Subspace hyperplane;
  FDModule restriction;
  Vec complement;
};

/// W = sum of images of all S_i, extended greedily by standard basis vectors
/// up to dimension dim - 1; v0 = first standard basis vector outside W.
Codim1Split codim1_submodule(const FDModule& v);
/// Same contract with W and v0 drawn at random.
Codim1Split codim1_submodule(const FDModule& v, Rng& rng);

/// Matrices S_i - shift_i I.
FDModule twist(const FDModule& v, std::span<const Rational> shift);
/// Matrices P S_i P^-1; requires P invertible.
FDModule conjugate(const FDModule& v, const Matrix& p);

/// Smallest submodule of T_n containing gens (and the constants).
PolySubmodule submodule_from_polys(std::size_t n, std::span<const Poly> gens);
/// Matrices of d/dx_i on M's canonical basis, with the identifying map
/// e_j -> basis_j.
std::pair<FDModule, ModuleMap> as_matrices(const PolySubmodule& m);

FDModule random_nilpotent_module(std::size_t n, std::uint32_t degree_bound, std::uint64_t seed);

/// Eigenvalues (a_1..a_n) of S_1..S_n on the unique common eigenline.
/// Throws NonRationalEigenvalue when some S_i has an eigenvalue outside Q,
/// SocleNotOneDimensional when some S_i has several distinct eigenvalues.
std::vector<Rational> socle_eigenvalues(const FDModule& v);

}  // namespace nilmod

#endif  // NILMOD_MODCORE_HPP
