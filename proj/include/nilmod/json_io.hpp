#ifndef NILMOD_JSON_IO_HPP
#define NILMOD_JSON_IO_HPP

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "nilmod/diffop.hpp"
#include "nilmod/embed.hpp"
#include "nilmod/modcore.hpp"

namespace nilmod {

using Json = nlohmann::ordered_json;

/// Input that does not match a schema. Domain violations found while
/// building a value (non-commuting matrices, non-closed subspaces) are
/// reported as nilmod::Error instead.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json to_json(const Rational& q);
Json to_json(const MultiIndex& a);
Json to_json(const Matrix& m);
Json to_json(const Subspace& s);
/// [{"exps": [...], "coef": "p/q"}, ...] by decreasing monomial order.
Json to_json(const Poly& p);
Json to_json(const FDModule& v);
Json to_json(const PolySubmodule& m);
Json to_json(const EmbeddingResult& e);
Json to_json(const GeneralEmbedding& e);
Json to_json(const DiffOpSeries& s);
Json to_json(const AutDescriptor& d);
Json to_json(const MonomialSubmodule& m);
Json to_json(const MonomialTable& t, std::size_t n, std::uint32_t trunc);

Rational rational_from_json(const Json& j);
MultiIndex multi_index_from_json(const Json& j, std::size_t n);
Matrix matrix_from_json(const Json& j);
Poly poly_from_json(const Json& j, std::size_t n);
FDModule module_from_json(const Json& j);
PolySubmodule poly_submodule_from_json(const Json& j);
DiffOpSeries series_from_json(const Json& j);
AutDescriptor descriptor_from_json(const Json& j, std::size_t n);
MonomialSubmodule monomial_submodule_from_json(const Json& j);
/// {"n": .., "trunc": .., "images": [{"exps": [...], "image": poly}, ...]}.
MonomialTable monomial_table_from_json(const Json& j, std::size_t n);

std::size_t count_from_json(const Json& j, const char* key);

}  // namespace nilmod

#endif  // NILMOD_JSON_IO_HPP
