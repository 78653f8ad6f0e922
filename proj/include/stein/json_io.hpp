#pragma once
#include <string>

#include "json.hpp"
#include "stein/buildings.hpp"
#include "stein/homology.hpp"
#include "stein/intmat.hpp"

namespace stein {

using Json = nlohmann::json;

// Integers serialize as plain JSON numbers up to 2^53 in magnitude and as
// decimal strings beyond, so spreadsheet and JavaScript consumers never see
// silently rounded values.
Json int_to_json(const Int& v);
// Accepts integral numbers and decimal strings; throws RangeError otherwise.
Int int_from_json(const Json& j);

// Row-major array of arrays.
Json matrix_to_json(const IntMatrix& m);
// Requires a rectangular array of arrays of integers; throws RangeError.
IntMatrix matrix_from_json(const Json& j);

// {"p", "ambient", "basis"}; the oriented variant adds "cls".
Json subspace_to_json(const Subspace& s);
Json oriented_subspace_to_json(const OrientedSubspace& s);

// {"kind","p","n","vertices":[{"id","dim","basis","cls"},...],
//  "simplices":{"0":[[ids]],...}}; cls is null for plain kinds.
Json building_to_json(const Building& b);

// {"betti","method","primes","euler","spherical_degree"}
Json betti_to_json(const BettiVector& bv);

// Parses text as JSON, mapping parse errors to RangeError (input contract).
Json parse_json_text(const std::string& text, const std::string& what);

} // namespace stein
