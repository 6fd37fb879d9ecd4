#ifndef NILMOD_EXACTALG_HPP
#define NILMOD_EXACTALG_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "nilmod/rational.hpp"

namespace nilmod {

using Vec = std::vector<Rational>;

Vec zero_vec(std::size_t n);
Vec unit_vec(std::size_t n, std::size_t i);
bool is_zero(std::span<const Rational> v);

/// Dense row-major matrix over the rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  /// Row-major nested initializer; all rows must have equal length.
  static Matrix from_rows(const std::vector<Vec>& rows);
  static Matrix from_columns(std::size_t rows, const std::vector<Vec>& cols);
  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vec column(std::size_t c) const;
  Matrix transpose() const;
  bool is_zero() const;
  Rational trace() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(const Rational& s, const Matrix& a);
Vec operator*(const Matrix& a, std::span<const Rational> v);

/// Reduced row-echelon form; same shape as the input, zero rows at the bottom.
Matrix rref(const Matrix& m);
/// Pivot columns of an RREF matrix, one per nonzero row.
std::vector<std::size_t> pivot_columns(const Matrix& r);
std::size_t rank(const Matrix& m);
bool is_rref(const Matrix& m);

/// Some x with m x = b, free variables set to zero, or nullopt.
std::optional<Vec> solve(const Matrix& m, std::span<const Rational> b);
std::optional<Matrix> inverse(const Matrix& m);
Rational determinant(Matrix m);

/// A linear subspace of Q^ambient with a canonical RREF basis.
///
/// Two subspaces are equal as sets iff their stored bases are identical,
/// so operator== is set equality.
class Subspace {
 public:
  Subspace() = default;
  static Subspace zero(std::size_t ambient);
  static Subspace full(std::size_t ambient);
  static Subspace span(std::size_t ambient, std::span<const Vec> vectors);
  static Subspace row_space(const Matrix& m);

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.rows(); }
  /// dim() x ambient_dim() RREF matrix without zero rows.
  const Matrix& basis_matrix() const noexcept { return basis_; }
  std::vector<Vec> basis() const;
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool contains(std::span<const Rational> v) const;
  /// Coordinates of v in basis(); nullopt when v is outside the subspace.
  std::optional<Vec> coordinates(std::span<const Rational> v) const;

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// {v : m v = 0}.
Subspace kernel(const Matrix& m);
Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);
inline bool contains(const Subspace& a, std::span<const Rational> v) { return a.contains(v); }
inline bool subspace_equal(const Subspace& a, const Subspace& b) { return a == b; }
inline std::size_t dim(const Subspace& a) { return a.dim(); }

}  // namespace nilmod

#endif  // NILMOD_EXACTALG_HPP
