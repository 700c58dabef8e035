#pragma once

#include "revlw/bounds.hpp"
#include "revlw/frames.hpp"
#include "revlw/zonotope.hpp"

#include <json.hpp>

#include <string>
#include <variant>

namespace revlw {

using Json = nlohmann::ordered_json;

/** Either presentation of a polytope, as read from disk. */
using AnyPolytope = std::variant<HPolytope, VPolytope>;

/**
 * Reals are serialized as 17-significant-digit strings: enough digits for
 * strtod to reproduce the exact double, and byte-stable regardless of the
 * JSON library's own number formatting.
 */
std::string format_double(double x);

/** Inverse of format_double; throws ParseError naming `where` on bad input. */
double parse_double(const std::string& s, const std::string& where);

/**
 * Polytope schema: { "n": int, "kind": "H"|"V", "A": [["p/q",...]],
 * "b": ["p/q",...], "V": [["p/q",...]] }.  "A"/"b" hold one facet per inner
 * array, "V" one vertex per inner array.  Integers are accepted wherever a
 * rational string is; floating-point numbers are rejected as inexact.
 */
Json polytope_to_json(const HPolytope& p);
Json polytope_to_json(const VPolytope& q);
AnyPolytope parse_polytope(const Json& j);

/** Load and parse a polytope file; ParseError messages carry the path. */
AnyPolytope load_polytope(const std::string& path);

/** Facet presentation of either variant (vertex input is converted). */
HPolytope as_h(const AnyPolytope& p);

/** Zonotope schema: { "n": int, "generators": [["p/q",...]] }. */
Json zonotope_to_json(const Zonotope& z);
Zonotope parse_zonotope(const Json& j);

/**
 * Search result emission: mode, exact psi/lambda_lower/tau, the rational
 * frame (one inner array per frame vector), branch choice, and evaluation
 * count.  Wall-clock time is emitted only on request so that identical
 * (input, flags, seed) runs stay byte-identical.
 */
Json search_result_to_json(const SearchResult& r, bool include_timings = false);

std::string verdict_name(Verdict v);
Verdict parse_verdict(const std::string& s);

/** Bounds reports round-trip bit-exactly through JSON. */
Json bounds_report_to_json(const BoundsReport& report);
BoundsReport parse_bounds_report(const Json& j);

/** One CSV row per entry, fixed header, LF line endings. */
std::string bounds_report_to_csv(const BoundsReport& report);

}  // namespace revlw
