#include "revlw/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace revlw {

namespace {

const Json& field(const Json& j, const char* key, const std::string& where) {
    const auto it = j.find(key);
    if (it == j.end()) {
        throw ParseError(where + ": missing field \"" + key + "\"");
    }
    return *it;
}

std::string index_into(const std::string& where, Eigen::Index i) {
    return where + "[" + std::to_string(i) + "]";
}

Rational rational_value(const Json& j, const std::string& where) {
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError(where + ": " + e.what());
        }
    }
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_number_unsigned()) return Rational(j.get<std::uint64_t>());
    if (j.is_number_float()) {
        throw ParseError(where + ": floating-point values are not exact; write \"p/q\"");
    }
    throw ParseError(where + ": expected a rational \"p/q\" string or an integer");
}

VecQ vector_value(const Json& j, Eigen::Index expected, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array");
    if (expected >= 0 && static_cast<Eigen::Index>(j.size()) != expected) {
        throw ParseError(where + ": expected " + std::to_string(expected) + " entries, got " +
                         std::to_string(j.size()));
    }
    VecQ v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) = rational_value(j[static_cast<std::size_t>(i)], index_into(where, i));
    }
    return v;
}

/** Array of equal-length inner arrays, one per returned row. */
MatQ matrix_value(const Json& j, Eigen::Index expected_cols, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a non-empty array of arrays");
    const auto rows = static_cast<Eigen::Index>(j.size());
    MatQ m;
    for (Eigen::Index r = 0; r < rows; ++r) {
        const VecQ row = vector_value(j[static_cast<std::size_t>(r)], expected_cols, index_into(where, r));
        if (r == 0) {
            m.resize(rows, row.size());
        } else if (row.size() != m.cols()) {
            throw ParseError(index_into(where, r) + ": expected " + std::to_string(m.cols()) +
                             " entries, got " + std::to_string(row.size()));
        }
        m.row(r) = row.transpose();
    }
    return m;
}

Json rational_array(const VecQ& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(format_rational(v(i)));
    return a;
}

Json rational_rows(const MatQ& m) {
    Json a = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(rational_array(m.row(r).transpose()));
    return a;
}

Json rational_columns(const MatQ& m) {
    Json a = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) a.push_back(rational_array(m.col(c)));
    return a;
}

int dimension_field(const Json& j, const std::string& where) {
    const Json& jn = field(j, "n", where);
    if (!jn.is_number_integer() || jn.get<std::int64_t>() < 1) {
        throw ParseError(where + ".n: expected a positive integer");
    }
    return jn.get<int>();
}

Json entry_to_json(const BoundsEntry& e) {
    Json j;
    j["name"] = e.name;
    j["relation"] = e.relation;
    j["lhs"] = format_double(e.lhs);
    j["rhs"] = format_double(e.rhs);
    j["lhs_provenance"] = e.lhs_provenance;
    j["rhs_provenance"] = e.rhs_provenance;
    j["lhs_exact"] = format_rational(e.lhs_exact);
    j["rhs_exact"] = format_rational(e.rhs_exact);
    j["ci95"] = format_double(e.ci95);
    j["slack"] = format_double(e.slack);
    j["verdict"] = verdict_name(e.verdict);
    j["equality"] = e.equality;
    return j;
}

BoundsEntry entry_from_json(const Json& j, const std::string& where) {
    auto text = [&](const char* key) {
        const Json& f = field(j, key, where);
        if (!f.is_string()) throw ParseError(where + "." + key + ": expected a string");
        return f.get<std::string>();
    };
    BoundsEntry e;
    e.name = text("name");
    e.relation = text("relation");
    e.lhs = parse_double(text("lhs"), where + ".lhs");
    e.rhs = parse_double(text("rhs"), where + ".rhs");
    e.lhs_provenance = text("lhs_provenance");
    e.rhs_provenance = text("rhs_provenance");
    e.lhs_exact = rational_value(field(j, "lhs_exact", where), where + ".lhs_exact");
    e.rhs_exact = rational_value(field(j, "rhs_exact", where), where + ".rhs_exact");
    e.ci95 = parse_double(text("ci95"), where + ".ci95");
    e.slack = parse_double(text("slack"), where + ".slack");
    e.verdict = parse_verdict(text("verdict"));
    const Json& eq = field(j, "equality", where);
    if (!eq.is_boolean()) throw ParseError(where + ".equality: expected a boolean");
    e.equality = eq.get<bool>();
    return e;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

double parse_double(const std::string& s, const std::string& where) {
    if (s.empty()) throw ParseError(where + ": expected a real number");
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) {
        throw ParseError(where + ": malformed real \"" + s + "\"");
    }
    return x;
}

Json polytope_to_json(const HPolytope& p) {
    Json j;
    j["n"] = p.n;
    j["kind"] = "H";
    j["A"] = rational_rows(p.A);
    j["b"] = rational_array(p.b);
    return j;
}

Json polytope_to_json(const VPolytope& q) {
    Json j;
    j["n"] = q.n;
    j["kind"] = "V";
    j["V"] = rational_columns(q.V);
    return j;
}

AnyPolytope parse_polytope(const Json& j) {
    if (!j.is_object()) throw ParseError("polytope: expected a JSON object");
    const int n = dimension_field(j, "polytope");
    const Json& jk = field(j, "kind", "polytope");
    if (!jk.is_string()) throw ParseError("polytope.kind: expected \"H\" or \"V\"");
    const std::string kind = jk.get<std::string>();
    if (kind == "H") {
        const MatQ a = matrix_value(field(j, "A", "polytope"), n, "A");
        const VecQ b = vector_value(field(j, "b", "polytope"), a.rows(), "b");
        return make_h_polytope(a, b);
    }
    if (kind == "V") {
        const MatQ vertices = matrix_value(field(j, "V", "polytope"), n, "V");
        return make_v_polytope(vertices.transpose());
    }
    throw ParseError("polytope.kind: expected \"H\" or \"V\", got \"" + kind + "\"");
}

AnyPolytope load_polytope(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    try {
        return parse_polytope(j);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

HPolytope as_h(const AnyPolytope& p) {
    if (const auto* h = std::get_if<HPolytope>(&p)) return *h;
    return v_to_h(std::get<VPolytope>(p));
}

Json zonotope_to_json(const Zonotope& z) {
    Json j;
    j["n"] = z.n;
    j["generators"] = rational_columns(z.G);
    return j;
}

Zonotope parse_zonotope(const Json& j) {
    if (!j.is_object()) throw ParseError("zonotope: expected a JSON object");
    const int n = dimension_field(j, "zonotope");
    const MatQ rows = matrix_value(field(j, "generators", "zonotope"), n, "generators");
    Zonotope z;
    z.n = n;
    z.G = rows.transpose();
    return z;
}

Json search_result_to_json(const SearchResult& r, bool include_timings) {
    Json j;
    j["mode"] = r.mode;
    j["psi"] = format_rational(r.psi);
    j["lambda_lower"] = format_rational(r.lambda_lower);
    j["tau"] = format_rational(r.tau);
    j["frame"] = rational_columns(r.frame);
    Json choice = Json::array();
    for (const int idx : r.r_choice) choice.push_back(idx);
    j["r_choice"] = std::move(choice);
    j["evaluations"] = r.evaluations;
    if (include_timings) j["wall_ms"] = r.wall_ms;
    return j;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Violated: return "violated";
        case Verdict::Inconclusive: return "inconclusive";
    }
    throw PreconditionError("unknown verdict");
}

Verdict parse_verdict(const std::string& s) {
    if (s == "holds") return Verdict::Holds;
    if (s == "violated") return Verdict::Violated;
    if (s == "inconclusive") return Verdict::Inconclusive;
    throw ParseError("verdict: expected holds/violated/inconclusive, got \"" + s + "\"");
}

Json bounds_report_to_json(const BoundsReport& report) {
    Json entries = Json::array();
    for (const BoundsEntry& e : report.entries) entries.push_back(entry_to_json(e));
    Json j;
    j["entries"] = std::move(entries);
    return j;
}

BoundsReport parse_bounds_report(const Json& j) {
    if (!j.is_object()) throw ParseError("report: expected a JSON object");
    const Json& entries = field(j, "entries", "report");
    if (!entries.is_array()) throw ParseError("report.entries: expected an array");
    BoundsReport report;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        report.entries.push_back(
            entry_from_json(entries[i], "entries[" + std::to_string(i) + "]"));
    }
    return report;
}

std::string bounds_report_to_csv(const BoundsReport& report) {
    std::ostringstream out;
    out << "name,relation,lhs,rhs,lhs_provenance,rhs_provenance,lhs_exact,rhs_exact,"
           "ci95,slack,verdict,equality\n";
    for (const BoundsEntry& e : report.entries) {
        out << e.name << ',' << e.relation << ',' << format_double(e.lhs) << ','
            << format_double(e.rhs) << ',' << e.lhs_provenance << ',' << e.rhs_provenance << ','
            << format_rational(e.lhs_exact) << ',' << format_rational(e.rhs_exact) << ','
            << format_double(e.ci95) << ',' << format_double(e.slack) << ','
            << verdict_name(e.verdict) << ',' << (e.equality ? "true" : "false") << '\n';
    }
    return out.str();
}

}  // namespace revlw
