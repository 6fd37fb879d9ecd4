#ifndef NILMOD_MULTIPOLY_HPP
#define NILMOD_MULTIPOLY_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "nilmod/rational.hpp"

namespace nilmod {

/// Exponent vector (a_1, ..., a_n) of a monomial x^a.
///
/// The three-way comparison is the single global monomial order used
/// everywhere: graded lexicographic with x_1 > x_2 > ... > x_n.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t n) : exps_(n, 0) {}
  MultiIndex(std::initializer_list<std::uint32_t> e) : exps_(e) {}
  explicit MultiIndex(std::vector<std::uint32_t> e) : exps_(std::move(e)) {}

  static MultiIndex unit(std::size_t n, std::size_t i);

  std::size_t size() const noexcept { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const noexcept { return exps_; }

  std::uint64_t total() const;
  bool is_zero() const;
  /// Componentwise <=.
  bool divides(const MultiIndex& other) const;
  /// Product of a_i!.
  Integer factorial() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b);

 private:
  std::vector<std::uint32_t> exps_;
};

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
/// Componentwise difference; requires b.divides(a).
MultiIndex operator-(const MultiIndex& a, const MultiIndex& b);

/// All multi-indices of length n and total degree exactly d, ascending.
std::vector<MultiIndex> monomials_of_degree(std::size_t n, std::uint64_t d);
/// All multi-indices of length n and total degree <= d, ascending.
std::vector<MultiIndex> monomials_up_to(std::size_t n, std::uint64_t d);

/// Downward closure under componentwise <=.
std::set<MultiIndex> lower_set_closure(const std::set<MultiIndex>& indices);
bool is_lower_set(const std::set<MultiIndex>& indices);

// Degree of the zero polynomial.
inline constexpr int kDegreeOfZero = std::numeric_limits<int>::min();

/// Sparse polynomial in n variables with rational coefficients.
/// Value semantic; zero coefficients are never stored.
class Poly {
 public:
  using Terms = std::map<MultiIndex, Rational>;

  Poly() = default;
  explicit Poly(std::size_t n) : n_(n) {}
  Poly(std::size_t n, Terms terms);

  static Poly constant(std::size_t n, const Rational& c);
  static Poly monomial(std::size_t n, const MultiIndex& a, const Rational& c = 1);
  static Poly variable(std::size_t n, std::size_t i);

  std::size_t n() const noexcept { return n_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }

  Rational coeff(const MultiIndex& a) const;
  /// Largest monomial present; requires !is_zero().
  const MultiIndex& leading_monomial() const;

  void add_term(const MultiIndex& a, const Rational& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& s);

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  std::size_t n_ = 0;
  Terms terms_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Rational& s, Poly a);
Poly operator*(const Poly& a, const Poly& b);

/// d/dx_i (zero-based i).
Poly partial(const Poly& p, std::size_t i);
/// The antiderivative in x_i from 0: every term gets positive x_i-exponent.
Poly integrate(const Poly& p, std::size_t i);
/// Mixed derivative d^a / dx^a.
Poly derivative(const Poly& p, const MultiIndex& a);

inline Rational coeff(const Poly& p, const MultiIndex& a) { return p.coeff(a); }
Rational eval_zero(const Poly& p);
/// Exponent of x_i, or kDegreeOfZero for p = 0.
int degree_in(const Poly& p, std::size_t i);
int total_degree(const Poly& p);

}  // namespace nilmod

#endif  // NILMOD_MULTIPOLY_HPP
