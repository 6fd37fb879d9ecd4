#include "nilmod/exactalg.hpp"

#include <string>
#include <utility>

#include "nilmod/error.hpp"

namespace nilmod {

Vec zero_vec(std::size_t n) { return Vec(n); }

Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v(n);
  v.at(i) = 1;
  return v;
}

bool is_zero(std::span<const Rational> v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix Matrix::from_rows(const std::vector<Vec>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_)
      throw Error(ErrorKind::DimensionMismatch, "ragged rows in matrix literal");
    for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<Vec>& cols) {
  Matrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw Error(ErrorKind::DimensionMismatch, "column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Vec Matrix::column(std::size_t c) const {
  Vec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool Matrix::is_zero() const { return nilmod::is_zero(data_); }

Rational Matrix::trace() const {
  if (!is_square()) throw Error(ErrorKind::DimensionMismatch, "trace of a non-square matrix");
  Rational t = 0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

namespace {

void require_same_shape(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::DimensionMismatch,
                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                    std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
}

}  // namespace

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  Matrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  Matrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
  Matrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (sgn(b(k, j)) != 0) r(i, j) += aik * b(k, j);
    }
  return r;
}

Matrix operator*(const Rational& s, const Matrix& a) {
  Matrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = s * a(i, j);
  return r;
}

Vec operator*(const Matrix& a, std::span<const Rational> v) {
  if (a.cols() != v.size()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector shape mismatch");
  Vec r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (sgn(v[k]) != 0 && sgn(a(i, k)) != 0) r[i] += a(i, k) * v[k];
  return r;
}

Matrix rref(const Matrix& input) {
  Matrix m = input;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t p = lead;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != lead)
      for (std::size_t j = 0; j < m.cols(); ++j) swap(m(p, j), m(lead, j));
    const Rational inv = 1 / m(lead, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(lead, j) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead || sgn(m(r, c)) == 0) continue;
      const Rational f = m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (sgn(m(lead, j)) != 0) m(r, j) -= f * m(lead, j);
    }
    ++lead;
  }
  return m;
}

std::vector<std::size_t> pivot_columns(const Matrix& r) {
  std::vector<std::size_t> piv;
  for (std::size_t i = 0; i < r.rows(); ++i) {
    std::size_t c = 0;
    while (c < r.cols() && sgn(r(i, c)) == 0) ++c;
    if (c == r.cols()) break;
    piv.push_back(c);
  }
  return piv;
}

std::size_t rank(const Matrix& m) { return pivot_columns(rref(m)).size(); }

bool is_rref(const Matrix& m) {
  std::size_t prev = 0;
  bool first = true;
  bool seen_zero_row = false;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::size_t c = 0;
    while (c < m.cols() && sgn(m(i, c)) == 0) ++c;
    if (c == m.cols()) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row) return false;
    if (!first && c <= prev) return false;
    if (m(i, c) != 1) return false;
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (r != i && sgn(m(r, c)) != 0) return false;
    prev = c;
    first = false;
  }
  return true;
}

std::optional<Vec> solve(const Matrix& m, std::span<const Rational> b) {
  if (b.size() != m.rows()) throw Error(ErrorKind::DimensionMismatch, "right-hand side length mismatch");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const Matrix r = rref(aug);
  const auto piv = pivot_columns(r);
  Vec x(m.cols());
  for (std::size_t i = 0; i < piv.size(); ++i) {
    if (piv[i] == m.cols()) return std::nullopt;
    x[piv[i]] = r(i, m.cols());
  }
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const Matrix r = rref(aug);
  for (std::size_t i = 0; i < n; ++i)
    if (r(i, i) != 1) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
  return inv;
}

Rational determinant(Matrix m) {
  if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (sgn(m(r, c)) == 0) continue;
      const Rational f = m(r, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

Subspace Subspace::zero(std::size_t ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = Matrix(0, ambient);
  return s;
}

Subspace Subspace::full(std::size_t ambient) { return row_space(Matrix::identity(ambient)); }

Subspace Subspace::span(std::size_t ambient, std::span<const Vec> vectors) {
  Matrix m(vectors.size(), ambient);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != ambient) throw Error(ErrorKind::DimensionMismatch, "vector length differs from ambient dimension");
    for (std::size_t j = 0; j < ambient; ++j) m(i, j) = vectors[i][j];
  }
  return row_space(m);
}

Subspace Subspace::row_space(const Matrix& m) {
  const Matrix r = rref(m);
  Subspace s;
  s.ambient_ = m.cols();
  s.pivots_ = pivot_columns(r);
  s.basis_ = Matrix(s.pivots_.size(), m.cols());
  for (std::size_t i = 0; i < s.pivots_.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s.basis_(i, j) = r(i, j);
  return s;
}

std::vector<Vec> Subspace::basis() const {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < dim(); ++i) out.emplace_back(basis_.row(i).begin(), basis_.row(i).end());
  return out;
}

std::optional<Vec> Subspace::coordinates(std::span<const Rational> v) const {
  if (v.size() != ambient_) throw Error(ErrorKind::DimensionMismatch, "vector length differs from ambient dimension");
  // In RREF the coordinate on basis row i is the entry of v at pivot i.
  Vec coords(dim());
  Vec residual(v.begin(), v.end());
  for (std::size_t i = 0; i < dim(); ++i) {
    coords[i] = v[pivots_[i]];
    if (sgn(coords[i]) == 0) continue;
    for (std::size_t j = 0; j < ambient_; ++j)
      if (sgn(basis_(i, j)) != 0) residual[j] -= coords[i] * basis_(i, j);
  }
  if (!is_zero(residual)) return std::nullopt;
  return coords;
}

bool Subspace::contains(std::span<const Rational> v) const { return coordinates(v).has_value(); }

Subspace kernel(const Matrix& m) {
  const Matrix r = rref(m);
  const auto piv = pivot_columns(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : piv) is_pivot[p] = true;
  std::vector<Vec> vs;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, f);
    vs.push_back(std::move(v));
  }
  return Subspace::span(m.cols(), vs);
}

namespace {

void require_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw Error(ErrorKind::DimensionMismatch, "subspaces live in ambient dimensions " +
                                                  std::to_string(a.ambient_dim()) + " and " +
                                                  std::to_string(b.ambient_dim()));
}

}  // namespace

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  auto vs = a.basis();
  for (auto& v : b.basis()) vs.push_back(std::move(v));
  return Subspace::span(a.ambient_dim(), vs);
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  require_same_ambient(a, b);
  const std::size_t ka = a.dim(), kb = b.dim(), amb = a.ambient_dim();
  // Solve x A - y B = 0 over the stacked bases; each solution gives x A.
  Matrix stacked(amb, ka + kb);
  for (std::size_t j = 0; j < amb; ++j) {
    for (std::size_t i = 0; i < ka; ++i) stacked(j, i) = a.basis_matrix()(i, j);
    for (std::size_t i = 0; i < kb; ++i) stacked(j, ka + i) = -b.basis_matrix()(i, j);
  }
  const Subspace sols = kernel(stacked);
  std::vector<Vec> vs;
  for (const auto& s : sols.basis()) {
    Vec v(amb);
    for (std::size_t i = 0; i < ka; ++i)
      if (sgn(s[i]) != 0)
        for (std::size_t j = 0; j < amb; ++j) v[j] += s[i] * a.basis_matrix()(i, j);
    vs.push_back(std::move(v));
  }
  return Subspace::span(amb, vs);
}

}  // namespace nilmod
