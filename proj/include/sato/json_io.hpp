#ifndef SATO_JSON_IO_HPP
#define SATO_JSON_IO_HPP

// JSON encodings. Rationals are "p/q" strings; polynomials are
// {"monomials":[{"coeffs":"p/q","exps":{"a":1}}]}; x-series are
// {"coeffs":[<poly>...],"prec":n} with "prec":null for exact elements.
// Rings are described by {"kind":"rationals" | "polynomial" | "diff_polynomial"
// | "x_power_series", ...}.

#include "sato/pdo.hpp"
#include "sato/schur.hpp"
#include "sato/series.hpp"

#include "json.hpp"

#include <string>

namespace sato {

using Json = nlohmann::json;

Json ring_to_json(const Ring& ring);
Ring ring_from_json(const Json& j);

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json element_to_json(const RingElement& e);
RingElement element_from_json(const Json& j, const Ring& ring);

Json series_to_json(const Laurent& s);
/// Reads "ring" from the object when present, else uses `fallback`.
Laurent series_from_json(const Json& j, const Ring& fallback);

Json operator_to_json(const PseudoOp& p);
PseudoOp operator_from_json(const Json& j, const Ring& fallback);

Json pair_to_json(const SchurPair& p);
SchurPair pair_from_json(const Json& j, const Ring& fallback);

}  // namespace sato

#endif  // SATO_JSON_IO_HPP
