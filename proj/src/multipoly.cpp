#include "nilmod/multipoly.hpp"

#include <algorithm>
#include <string>

#include "nilmod/error.hpp"

namespace nilmod {

MultiIndex MultiIndex::unit(std::size_t n, std::size_t i) {
  MultiIndex a(n);
  a.exps_.at(i) = 1;
  return a;
}

std::uint64_t MultiIndex::total() const {
  std::uint64_t t = 0;
  for (auto e : exps_) t += e;
  return t;
}

bool MultiIndex::is_zero() const {
  return std::all_of(exps_.begin(), exps_.end(), [](auto e) { return e == 0; });
}

bool MultiIndex::divides(const MultiIndex& other) const {
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Integer MultiIndex::factorial() const {
  Integer f = 1;
  for (auto e : exps_) f *= nilmod::factorial(e);
  return f;
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  if (auto c = a.total() <=> b.total(); c != 0) return c;
  // Equal degree: lexicographic, bigger x_1 exponent is the bigger monomial.
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] <=> b[i];
  return std::strong_ordering::equal;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::VariableCountMismatch, "multi-index length mismatch");
  MultiIndex r = a;
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
  if (!b.divides(a)) throw Error(ErrorKind::InvalidInput, "multi-index difference would be negative");
  MultiIndex r = a;
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
  return r;
}

namespace {

void fill_degree(std::size_t pos, std::uint64_t remaining, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = static_cast<std::uint32_t>(remaining);
    out.push_back(cur);
    return;
  }
  for (std::uint64_t e = 0; e <= remaining; ++e) {
    cur[pos] = static_cast<std::uint32_t>(e);
    fill_degree(pos + 1, remaining - e, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> monomials_of_degree(std::size_t n, std::uint64_t d) {
  std::vector<MultiIndex> out;
  if (n == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  MultiIndex cur(n);
  fill_degree(0, d, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MultiIndex> monomials_up_to(std::size_t n, std::uint64_t d) {
  std::vector<MultiIndex> out;
  for (std::uint64_t k = 0; k <= d; ++k) {
    auto layer = monomials_of_degree(n, k);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

std::set<MultiIndex> lower_set_closure(const std::set<MultiIndex>& indices) {
  std::set<MultiIndex> out;
  std::vector<MultiIndex> stack(indices.begin(), indices.end());
  while (!stack.empty()) {
    MultiIndex a = std::move(stack.back());
    stack.pop_back();
    if (!out.insert(a).second) continue;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      MultiIndex b = a;
      --b[i];
      if (!out.contains(b)) stack.push_back(std::move(b));
    }
  }
  return out;
}

bool is_lower_set(const std::set<MultiIndex>& indices) {
  for (const auto& a : indices)
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      MultiIndex b = a;
      --b[i];
      if (!indices.contains(b)) return false;
    }
  return true;
}

Poly::Poly(std::size_t n, Terms terms) : n_(n) {
  for (auto& [a, c] : terms) {
    if (a.size() != n) throw Error(ErrorKind::VariableCountMismatch, "term has wrong number of exponents");
    if (sgn(c) != 0) terms_.emplace(a, c);
  }
}

Poly Poly::constant(std::size_t n, const Rational& c) { return monomial(n, MultiIndex(n), c); }

Poly Poly::monomial(std::size_t n, const MultiIndex& a, const Rational& c) {
  Poly p(n);
  p.add_term(a, c);
  return p;
}

Poly Poly::variable(std::size_t n, std::size_t i) { return monomial(n, MultiIndex::unit(n, i)); }

Rational Poly::coeff(const MultiIndex& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? Rational(0) : it->second;
}

const MultiIndex& Poly::leading_monomial() const {
  if (terms_.empty()) throw Error(ErrorKind::InvalidInput, "zero polynomial has no leading monomial");
  return terms_.rbegin()->first;
}

void Poly::add_term(const MultiIndex& a, const Rational& c) {
  if (a.size() != n_) throw Error(ErrorKind::VariableCountMismatch, "term has wrong number of exponents");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(a, c);
  if (inserted) return;
  it->second += c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.n_ != n_) throw Error(ErrorKind::VariableCountMismatch, "polynomials in different variable counts");
  for (const auto& [a, c] : o.terms_) add_term(a, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.n_ != n_) throw Error(ErrorKind::VariableCountMismatch, "polynomials in different variable counts");
  for (const auto& [a, c] : o.terms_) add_term(a, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [a, c] : terms_) c *= s;
  return *this;
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }
Poly operator-(const Poly& a) { return Rational(-1) * a; }
Poly operator*(const Rational& s, Poly a) { return a *= s; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.n() != b.n()) throw Error(ErrorKind::VariableCountMismatch, "polynomials in different variable counts");
  Poly r(a.n());
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) r.add_term(ea + eb, ca * cb);
  return r;
}

namespace {

void require_var(const Poly& p, std::size_t i) {
  if (i >= p.n())
    throw Error(ErrorKind::IndexOutOfRange,
                "variable index " + std::to_string(i) + " out of range for n = " + std::to_string(p.n()));
}

}  // namespace

Poly partial(const Poly& p, std::size_t i) {
  require_var(p, i);
  Poly::Terms out;
  for (const auto& [a, c] : p.terms()) {
    if (a[i] == 0) continue;
    MultiIndex b = a;
    --b[i];
    out.emplace(std::move(b), c * a[i]);
  }
  return Poly(p.n(), std::move(out));
}

Poly integrate(const Poly& p, std::size_t i) {
  require_var(p, i);
  Poly::Terms out;
  for (const auto& [a, c] : p.terms()) {
    MultiIndex b = a;
    ++b[i];
    out.emplace(std::move(b), c / Rational(b[i]));
  }
  return Poly(p.n(), std::move(out));
}

Poly derivative(const Poly& p, const MultiIndex& a) {
  if (a.size() != p.n()) throw Error(ErrorKind::VariableCountMismatch, "derivative multi-index length mismatch");
  Poly::Terms out;
  for (const auto& [b, c] : p.terms()) {
    if (!a.divides(b)) continue;
    MultiIndex rest = b - a;
    Rational f = c * Rational(b.factorial()) / Rational(rest.factorial());
    out.emplace(std::move(rest), std::move(f));
  }
  return Poly(p.n(), std::move(out));
}

Rational eval_zero(const Poly& p) { return p.coeff(MultiIndex(p.n())); }

int degree_in(const Poly& p, std::size_t i) {
  require_var(p, i);
  if (p.is_zero()) return kDegreeOfZero;
  std::uint32_t d = 0;
  for (const auto& [a, c] : p.terms()) d = std::max(d, a[i]);
  return static_cast<int>(d);
}

int total_degree(const Poly& p) {
  if (p.is_zero()) return kDegreeOfZero;
  return static_cast<int>(p.leading_monomial().total());
}

}  // namespace nilmod
