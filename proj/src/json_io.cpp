#include "nilmod/json_io.hpp"

#include <set>

#include "nilmod/error.hpp"

namespace nilmod {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError("expected an object with key '" + std::string(key) + "'");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError("missing key '" + std::string(key) + "'");
  return *it;
}

const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) throw ParseError("'" + std::string(key) + "' must be an array");
  return a;
}

Json term_list(const std::map<MultiIndex, Rational>& terms) {
  Json out = Json::array();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it)
    out.push_back(Json{{"exps", to_json(it->first)}, {"coef", to_json(it->second)}});
  return out;
}

std::map<MultiIndex, Rational> term_list_from_json(const Json& j, std::size_t n) {
  if (!j.is_array()) throw ParseError("term list must be an array");
  std::map<MultiIndex, Rational> terms;
  for (const auto& t : j) {
    MultiIndex a = multi_index_from_json(field(t, "exps"), n);
    Rational c = rational_from_json(field(t, "coef"));
    if (sgn(c) == 0) throw ParseError("zero coefficient stored in a term list");
    if (!terms.emplace(std::move(a), std::move(c)).second) throw ParseError("duplicate exponent vector in a term list");
  }
  return terms;
}

}  // namespace

std::size_t count_from_json(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned()) throw ParseError("'" + std::string(key) + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const MultiIndex& a) { return Json(a.exponents()); }

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (const auto& x : m.row(r)) row.push_back(to_json(x));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Subspace& s) {
  return Json{{"ambient_dim", s.ambient_dim()}, {"dim", s.dim()}, {"basis", to_json(s.basis_matrix())}};
}

Json to_json(const Poly& p) { return term_list(p.terms()); }

Json to_json(const FDModule& v) {
  Json ms = Json::array();
  for (const auto& m : v.matrices()) ms.push_back(to_json(m));
  return Json{{"n", v.n()}, {"dim", v.dim()}, {"matrices", std::move(ms)}};
}

Json to_json(const PolySubmodule& m) {
  Json basis = Json::array();
  for (const auto& b : m.basis()) basis.push_back(to_json(b));
  return Json{{"n", m.n()}, {"basis", std::move(basis)}};
}

namespace {

Json map_json(const ModuleMap& map) {
  Json out = Json::array();
  for (const auto& p : map.images) out.push_back(to_json(p));
  return out;
}

}  // namespace

Json to_json(const EmbeddingResult& e) { return Json{{"image", to_json(e.image)}, {"map", map_json(e.map)}}; }

Json to_json(const GeneralEmbedding& e) {
  Json eig = Json::array();
  for (const auto& a : e.image.eigenvalues) eig.push_back(to_json(a));
  return Json{{"eigenvalues", std::move(eig)}, {"part", to_json(e.image.part)}, {"map", map_json(e.map)}};
}

Json to_json(const DiffOpSeries& s) {
  return Json{{"n", s.n()}, {"trunc", s.trunc()}, {"coeffs", term_list(s.coeffs())}};
}

Json to_json(const AutDescriptor& d) { return Json{{"unit", to_json(d.unit)}, {"additive", term_list(d.additive)}}; }

Json to_json(const MonomialSubmodule& m) {
  Json idx = Json::array();
  for (const auto& a : m.indices()) idx.push_back(to_json(a));
  return Json{{"n", m.n()}, {"indices", std::move(idx)}};
}

Json to_json(const MonomialTable& t, std::size_t n, std::uint32_t trunc) {
  Json images = Json::array();
  for (const auto& [a, p] : t) images.push_back(Json{{"exps", to_json(a)}, {"image", to_json(p)}});
  return Json{{"n", n}, {"trunc", trunc}, {"images", std::move(images)}};
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(Integer(j.dump(), 10));
  if (!j.is_string()) throw ParseError("rational must be a string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    throw ParseError(e.detail());
  }
}

MultiIndex multi_index_from_json(const Json& j, std::size_t n) {
  if (!j.is_array() || j.size() != n) throw ParseError("exponent vector must be an array of length " + std::to_string(n));
  std::vector<std::uint32_t> e;
  for (const auto& x : j) {
    if (!x.is_number_unsigned() || x.get<std::uint64_t>() > 0xffffffffu) throw ParseError("exponents must be non-negative integers");
    e.push_back(x.get<std::uint32_t>());
  }
  return MultiIndex(std::move(e));
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  std::vector<Vec> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw ParseError("matrix row must be an array");
    Vec v;
    for (const auto& x : r) v.push_back(rational_from_json(x));
    if (!rows.empty() && v.size() != rows.front().size()) throw ParseError("ragged matrix rows");
    rows.push_back(std::move(v));
  }
  return Matrix::from_rows(rows);
}

Poly poly_from_json(const Json& j, std::size_t n) { return Poly(n, term_list_from_json(j, n)); }

FDModule module_from_json(const Json& j) {
  const std::size_t n = count_from_json(j, "n");
  const std::size_t dim = count_from_json(j, "dim");
  const Json& ms = array_field(j, "matrices");
  if (ms.size() != n) throw ParseError("expected " + std::to_string(n) + " matrices");
  std::vector<Matrix> mats;
  for (const auto& m : ms) {
    Matrix a = matrix_from_json(m);
    if (dim == 0 && a.rows() == 0) a = Matrix(0, 0);
    if (a.rows() != dim || a.cols() != dim) throw ParseError("matrix is not " + std::to_string(dim) + "x" + std::to_string(dim));
    mats.push_back(std::move(a));
  }
  return FDModule::validate(dim, std::move(mats));
}

PolySubmodule poly_submodule_from_json(const Json& j) {
  const std::size_t n = count_from_json(j, "n");
  std::vector<Poly> basis;
  for (const auto& p : array_field(j, "basis")) basis.push_back(poly_from_json(p, n));
  return PolySubmodule::from_spanning_set(n, basis);
}

DiffOpSeries series_from_json(const Json& j) {
  const std::size_t n = count_from_json(j, "n");
  const std::size_t trunc = count_from_json(j, "trunc");
  auto terms = term_list_from_json(field(j, "coeffs"), n);
  for (const auto& [a, c] : terms)
    if (a.total() > trunc) throw ParseError("series coefficient beyond the truncation degree");
  return DiffOpSeries(n, static_cast<std::uint32_t>(trunc), terms);
}

AutDescriptor descriptor_from_json(const Json& j, std::size_t n) {
  AutDescriptor d{rational_from_json(field(j, "unit")), term_list_from_json(field(j, "additive"), n)};
  return d;
}

MonomialSubmodule monomial_submodule_from_json(const Json& j) {
  const std::size_t n = count_from_json(j, "n");
  std::set<MultiIndex> idx;
  for (const auto& a : array_field(j, "indices"))
    if (!idx.insert(multi_index_from_json(a, n)).second) throw ParseError("duplicate index in lower set");
  return MonomialSubmodule(n, idx);
}

MonomialTable monomial_table_from_json(const Json& j, std::size_t n) {
  MonomialTable t;
  for (const auto& e : array_field(j, "images")) {
    MultiIndex a = multi_index_from_json(field(e, "exps"), n);
    if (!t.emplace(std::move(a), poly_from_json(field(e, "image"), n)).second)
      throw ParseError("duplicate monomial in table");
  }
  return t;
}

}  // namespace nilmod
