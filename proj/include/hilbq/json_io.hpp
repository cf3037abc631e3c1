#pragma once

#include <json.hpp>

#include "hilbq/hilbop.hpp"
#include "hilbq/modforms.hpp"
#include "hilbq/pqseries.hpp"
#include "hilbq/surface.hpp"

namespace hilbq {

using Json = nlohmann::ordered_json;

// Rationals serialize as {"n": "...", "d": "..."} decimal strings; TScalar as
// a list of [t_exponent, rational]; PQSeries as
//   {"q_order": N, "terms": [[d, [[doubled_p_exp, tscalar], ...]], ...]}
// with exponents ascending. These round-trip bit-exactly.
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json tscalar_to_json(const TScalar& t);
TScalar tscalar_from_json(const Json& j);

Json series_to_json(const PQSeries& s);
PQSeries series_from_json(const Json& j);

// Surface schema: {"basis": [{"name","deg","odd"}], "cup": [[i,j,[[k,ts]]]],
// "integral": [[i, ts]], "classes": {...}, "g": int, "dS": int,
// "equivariant": bool}. Loading verifies all model invariants eagerly.
Json surface_to_json(const SurfaceModel& s);
SurfaceModel surface_from_json(const Json& j);
SurfaceModel load_surface(const std::string& path);

// Operator schema: {"level", "q_order", "basis": [...], "rows": [{"row",
// "col", "series"}]} with row/col as indices into the rendered basis.
Json operator_to_json(const OperatorSeries& o, const SurfaceModel& s);

Json bracket_table_to_json(const std::map<std::pair<int, int>, TScalar>& table);
std::string bracket_table_to_tsv(const std::map<std::pair<int, int>, TScalar>& table);

Json fit_to_json(const QJacFitResult& fit, const QJacMonomialBasis& basis);

}  // namespace hilbq
