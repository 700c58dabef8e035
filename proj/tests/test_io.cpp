#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "revlw/io.hpp"

#include "fixtures.hpp"

#include <cstdio>
#include <fstream>

using namespace revlw;
using namespace revlw::testing;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& text) {
        char name[] = "/tmp/revlw_io_XXXXXX";
        const int fd = mkstemp(name);
        REQUIRE(fd >= 0);
        path = name;
        std::ofstream(path) << text;
        close(fd);
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("format_double emits 17 significant digits that strtod recovers") {
    for (const double x : {1.0 / 3.0, 0.1, 1e300, -2.5e-17, 64.0, 0.0}) {
        CHECK(parse_double(format_double(x), "x") == x);
    }
    CHECK(format_double(64.0) == "64");
    CHECK_THROWS_WITH_AS(parse_double("1.2.3", "entries[0].lhs"),
                         doctest::Contains("entries[0].lhs"), ParseError);
    CHECK_THROWS_AS(parse_double("", "x"), ParseError);
}

TEST_CASE("polytope JSON round-trips both presentations bit-exactly") {
    const HPolytope square = v_to_h(unit_square());
    const Json h = polytope_to_json(square);
    CHECK(h["kind"] == "H");
    const HPolytope back = std::get<HPolytope>(parse_polytope(h));
    CHECK(back.A == square.A);
    CHECK(back.b == square.b);
    CHECK(polytope_to_json(back).dump() == h.dump());

    const VPolytope t = t3();
    const Json v = polytope_to_json(t);
    CHECK(v["kind"] == "V");
    const VPolytope vback = std::get<VPolytope>(parse_polytope(v));
    CHECK(vback.V == t.V);
    CHECK(polytope_to_json(vback).dump() == v.dump());
    CHECK(volume(as_h(parse_polytope(v))) == volume(v_to_h(t)));
}

TEST_CASE("polytope parsing accepts integers and rejects inexact reals") {
    const Json ints = Json::parse(R"({"n":2,"kind":"H",
        "A":[[1,0],[-1,0],[0,1],[0,-1]], "b":[1,0,1,0]})");
    const HPolytope p = std::get<HPolytope>(parse_polytope(ints));
    CHECK(volume(p) == 1);

    Json bad = ints;
    bad["A"][0][1] = 0.5;
    CHECK_THROWS_WITH_AS(parse_polytope(bad), doctest::Contains("A[0][1]"), ParseError);
    CHECK_THROWS_WITH_AS(parse_polytope(bad), doctest::Contains("not exact"), ParseError);

    Json div0 = ints;
    div0["b"][2] = "1/0";
    CHECK_THROWS_WITH_AS(parse_polytope(div0), doctest::Contains("b[2]"), ParseError);

    Json ragged = ints;
    ragged["A"][1] = Json::array({1, 2, 3});
    CHECK_THROWS_WITH_AS(parse_polytope(ragged), doctest::Contains("A[1]"), ParseError);

    Json unkind = ints;
    unkind["kind"] = "X";
    CHECK_THROWS_AS(parse_polytope(unkind), ParseError);

    Json missing = ints;
    missing.erase("b");
    CHECK_THROWS_WITH_AS(parse_polytope(missing), doctest::Contains("\"b\""), ParseError);

    Json nodim = ints;
    nodim["n"] = 0;
    CHECK_THROWS_AS(parse_polytope(nodim), ParseError);
}

TEST_CASE("load_polytope names the file in every failure") {
    const TempFile good(polytope_to_json(v_to_h(triangle())).dump());
    CHECK(volume(as_h(load_polytope(good.path))) == Rational(1, 2));

    CHECK_THROWS_WITH_AS(load_polytope("/tmp/revlw_io_does_not_exist.json"),
                         doctest::Contains("revlw_io_does_not_exist"), ParseError);

    const TempFile garbage("{ not json");
    CHECK_THROWS_WITH_AS(load_polytope(garbage.path), doctest::Contains(garbage.path.c_str()),
                         ParseError);

    const TempFile div0(R"({"n":2,"kind":"H","A":[[1,0],[-1,0],[0,1],[0,-1]],
                            "b":[1,"1/0",1,1]})");
    CHECK_THROWS_WITH_AS(load_polytope(div0.path), doctest::Contains("b[1]"), ParseError);
}

TEST_CASE("zonotope JSON preserves generators exactly") {
    const Zonotope z = projection_body(v_to_h(t3()));
    const Json j = zonotope_to_json(z);
    CHECK(j["generators"].size() == 4);
    const Zonotope back = parse_zonotope(j);
    CHECK(back.n == z.n);
    CHECK(back.G == z.G);
    CHECK(zonotope_to_json(back).dump() == j.dump());

    CHECK_THROWS_AS(parse_zonotope(Json::parse(R"({"n":2,"generators":[[0.5,1]]})")),
                    ParseError);
}

TEST_CASE("search results serialize exactly, with timings only on request") {
    SearchConfig config;
    config.restarts = 4;
    const SearchResult r = heuristic_search(v_to_h(triangle()), config);
    const Json j = search_result_to_json(r);
    CHECK(j["mode"] == "heuristic");
    CHECK(parse_rational(j["psi"].get<std::string>()) == r.psi);
    CHECK(parse_rational(j["lambda_lower"].get<std::string>()) == r.lambda_lower);
    CHECK(j["frame"].size() == 2);
    CHECK(j["r_choice"].empty());
    CHECK(j.find("wall_ms") == j.end());

    const Json timed = search_result_to_json(r, true);
    CHECK(timed.find("wall_ms") != timed.end());

    const auto [sigma, scaled] =
        scale_to_unit_surface(translate_origin_interior(v_to_h(unit_square())));
    const SearchResult cert = structured_search(scaled, Rational(1, 10));
    const Json cj = search_result_to_json(cert);
    CHECK(cj["mode"] == "certified");
    CHECK(cj["r_choice"].size() == 1);
    CHECK(cj["evaluations"].get<std::int64_t>() == static_cast<std::int64_t>(cert.evaluations));
    for (Eigen::Index c = 0; c < cert.frame.cols(); ++c) {
        for (Eigen::Index i = 0; i < cert.frame.rows(); ++i) {
            const auto& cell = cj["frame"][static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
            CHECK(parse_rational(cell.template get<std::string>()) == cert.frame(i, c));
        }
    }
}

TEST_CASE("bounds reports round-trip bit-exactly through JSON") {
    BoundsReport report;
    report.entries.push_back(check_meyer(v_to_h(cube_pm1())));
    VecQ e1 = VecQ::Zero(3);
    e1(0) = 1;
    report.entries.push_back(chord_identity_check(v_to_h(unit_cube()), {e1}));
    report.entries.push_back(zhang_entry(v_to_h(cube_pm1()), 20000, 5));

    const Json j = bounds_report_to_json(report);
    const BoundsReport back = parse_bounds_report(j);
    REQUIRE(back.entries.size() == report.entries.size());
    for (std::size_t i = 0; i < report.entries.size(); ++i) {
        const BoundsEntry& a = report.entries[i];
        const BoundsEntry& b = back.entries[i];
        CHECK(a.name == b.name);
        CHECK(a.relation == b.relation);
        CHECK(a.lhs == b.lhs);
        CHECK(a.rhs == b.rhs);
        CHECK(a.lhs_provenance == b.lhs_provenance);
        CHECK(a.rhs_provenance == b.rhs_provenance);
        CHECK(a.lhs_exact == b.lhs_exact);
        CHECK(a.rhs_exact == b.rhs_exact);
        CHECK(a.ci95 == b.ci95);
        CHECK(a.slack == b.slack);
        CHECK(a.verdict == b.verdict);
        CHECK(a.equality == b.equality);
    }
    CHECK(bounds_report_to_json(back).dump() == j.dump());

    // Verdict names cover the three-valued logic and nothing else.
    CHECK(parse_verdict(verdict_name(Verdict::Holds)) == Verdict::Holds);
    CHECK(parse_verdict(verdict_name(Verdict::Violated)) == Verdict::Violated);
    CHECK(parse_verdict(verdict_name(Verdict::Inconclusive)) == Verdict::Inconclusive);
    CHECK_THROWS_AS(parse_verdict("maybe"), ParseError);
}

TEST_CASE("CSV emission is one fixed-header table") {
    BoundsReport report;
    report.entries.push_back(check_meyer(v_to_h(cube_pm1())));
    const std::string csv = bounds_report_to_csv(report);
    const std::string header =
        "name,relation,lhs,rhs,lhs_provenance,rhs_provenance,lhs_exact,rhs_exact,"
        "ci95,slack,verdict,equality\n";
    CHECK(csv.substr(0, header.size()) == header);
    CHECK(csv.find("meyer_sections,>=,64,") != std::string::npos);
    CHECK(csv.find(",holds,") != std::string::npos);
    CHECK(csv.back() == '\n');
}
