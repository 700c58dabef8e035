#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "revlw/polytope.hpp"

#include <algorithm>
#include <random>

using namespace revlw;
using namespace revlw::testing;

namespace {

bool has_facet(const HPolytope& p, const VecQ& a, const Rational& beta) {
    for (int j = 0; j < p.A.rows(); ++j)
        if (p.A.row(j).transpose() == a && p.b[j] == beta) return true;
    return false;
}

}  // namespace

TEST_CASE("v_to_h: unit square gives the four axis halfspaces") {
    const HPolytope p = v_to_h(unit_square());
    REQUIRE(p.A.rows() == 4);
    CHECK(has_facet(p, vq({"1", "0"}), 1));
    CHECK(has_facet(p, vq({"-1", "0"}), 0));
    CHECK(has_facet(p, vq({"0", "1"}), 1));
    CHECK(has_facet(p, vq({"0", "-1"}), 0));
}

TEST_CASE("v_to_h: standard simplex facets") {
    const HPolytope p = v_to_h(standard_simplex(3));
    REQUIRE(p.A.rows() == 4);
    CHECK(has_facet(p, vq({"-1", "0", "0"}), 0));
    CHECK(has_facet(p, vq({"0", "-1", "0"}), 0));
    CHECK(has_facet(p, vq({"0", "0", "-1"}), 0));
    CHECK(has_facet(p, vq({"1", "1", "1"}), 1));
}

TEST_CASE("v_to_h: regular tetrahedron has the four diagonal facets") {
    const HPolytope p = v_to_h(t3());
    REQUIRE(p.A.rows() == 4);
    CHECK(has_facet(p, vq({"-1", "-1", "-1"}), 1));
    CHECK(has_facet(p, vq({"-1", "1", "1"}), 1));
    CHECK(has_facet(p, vq({"1", "-1", "1"}), 1));
    CHECK(has_facet(p, vq({"1", "1", "-1"}), 1));
}

TEST_CASE("v_to_h rejects degenerate input") {
    CHECK_THROWS_AS(make_v_polytope(points({{"0", "0"}, {"1", "0"}, {"2", "0"}})),
                    DegeneracyError);
}

TEST_CASE("h_to_v: cube and crosspolytope") {
    const VPolytope cube = h_to_v(v_to_h(cube_pm1()));
    CHECK(cube.V.cols() == 8);
    const VPolytope c3 = h_to_v(v_to_h(crosspolytope(3)));
    CHECK(c3.V.cols() == 6);
    for (int c = 0; c < c3.V.cols(); ++c) CHECK(c3.V.col(c).squaredNorm() == 1);
}

TEST_CASE("h_to_v flags unbounded and lower-dimensional input") {
    HPolytope octant;  // x >= 0, y >= 0: unbounded
    octant.n = 2;
    octant.A = -MatQ::Identity(2, 2);
    octant.b = VecQ::Zero(2);
    CHECK_THROWS_AS(h_to_v(octant), BoundednessError);

    MatQ a(4, 2);
    a << 1, 0, -1, 0, 0, 1, 0, -1;
    VecQ b(4);
    b << 0, 0, 1, 1;  // x = 0 slab: lower-dimensional
    CHECK_THROWS_AS(make_h_polytope(a, b), DegeneracyError);
}

TEST_CASE("round trip h_to_v(v_to_h(Q)) reproduces the vertex set") {
    std::mt19937 rng(20240815);
    for (int trial = 0; trial < 8; ++trial) {
        const VPolytope q = random_polytope(3, 9, rng);
        const VPolytope back = h_to_v(v_to_h(q));
        REQUIRE(back.V.cols() == q.V.cols());
        CHECK(back.V == q.V);  // both canonically sorted
    }
}

TEST_CASE("make_h_polytope removes redundant rows and merges duplicates") {
    MatQ a(8, 3);
    VecQ b(8);
    int r = 0;
    for (int i = 0; i < 3; ++i)
        for (int s : {1, -1}) {
            a.row(r).setZero();
            a(r, i) = s;
            b[r++] = 1;
        }
    a.row(6) << 1, 1, 1;
    b[6] = 10;  // redundant for the cube
    a.row(7) << 2, 0, 0;
    b[7] = 3;  // duplicate direction of x <= 1, looser
    const HPolytope p = make_h_polytope(a, b);
    CHECK(p.A.rows() == 6);
    CHECK(has_facet(p, vq({"1", "0", "0"}), 1));
}

TEST_CASE("make_h_polytope keeps the tighter of two parallel halfspaces") {
    MatQ a(4, 2);
    a << 1, 0, -1, 0, 0, 1, 0, -1;
    VecQ b(4);
    b << 1, 1, 1, 1;
    MatQ a2(5, 2);
    a2.topRows(4) = a;
    a2.row(4) << 3, 0;  // x <= 1/3 after normalization: tighter than x <= 1
    VecQ b2(5);
    b2 << 1, 1, 1, 1, 1;
    const HPolytope p = make_h_polytope(a2, b2);
    CHECK(p.A.rows() == 4);
    CHECK(has_facet(p, vq({"1", "0"}), Rational(1, 3)));
    CHECK_FALSE(has_facet(p, vq({"1", "0"}), 1));
}

TEST_CASE("volume of canonical bodies") {
    CHECK(volume(unit_cube()) == 1);
    CHECK(volume(standard_simplex(3)) == Rational(1, 6));
    CHECK(volume(standard_simplex(4)) == Rational(1, 24));
    CHECK(volume(crosspolytope(3)) == Rational(4, 3));  // 2^n / n!
    CHECK(volume(crosspolytope(4)) == Rational(16, 24));
    CHECK(volume(t3()) == Rational(8, 3));
    CHECK(volume(box_simplex_124()) == Rational(8, 3));
    CHECK(volume(triangle()) == Rational(1, 2));
    CHECK(volume(rhombus(Rational(1, 2))) == 1);
}

TEST_CASE("volume is invariant under vertex order (apex choice)") {
    std::mt19937 rng(99);
    const VPolytope q = random_polytope(3, 8, rng);
    const Rational v0 = volume(q);
    VPolytope shuffled = q;
    // rotate columns so the fan apex differs
    MatQ rot(q.n, q.V.cols());
    for (int c = 0; c < q.V.cols(); ++c) rot.col(c) = q.V.col((c + 3) % q.V.cols());
    shuffled.V = rot;
    CHECK(volume(shuffled) == v0);
    CHECK(volume(v_to_h(q)) == v0);
}

TEST_CASE("facet_data: cube omegas and exact identities") {
    const HPolytope cube = v_to_h(cube_pm1());
    const auto facets = facet_data(cube);
    REQUIRE(facets.size() == 6);
    for (const Facet& f : facets) {
        CHECK(f.omega == 4);
        CHECK(f.beta == 1);
        CHECK(f.norm2 == 1);
    }
}

TEST_CASE("facet_data: T_3 omegas are equal by symmetry") {
    const auto facets = facet_data(v_to_h(t3()));
    REQUIRE(facets.size() == 4);
    for (const Facet& f : facets) {
        CHECK(f.omega == facets[0].omega);
        CHECK(f.norm2 == 3);
    }
    CHECK(facets[0].omega == 2);
}

TEST_CASE("facet identities: n vol = sum beta omega and Minkowski balance") {
    std::mt19937 rng(2024);
    std::vector<HPolytope> bodies = {v_to_h(cube_pm1()), v_to_h(t3()), v_to_h(crosspolytope(3)),
                                     translate_origin_interior(v_to_h(standard_simplex(3)))};
    for (int trial = 0; trial < 5; ++trial)
        bodies.push_back(translate_origin_interior(v_to_h(random_polytope(3, 8, rng))));
    for (const HPolytope& p : bodies) {
        const auto facets = facet_data(p);
        Rational sum = 0;
        VecQ balance = VecQ::Zero(p.n);
        for (const Facet& f : facets) {
            CHECK(f.omega > 0);
            sum += f.beta * f.omega;
            balance += f.omega * f.a;
        }
        CHECK(sum == p.n * volume(p));
        CHECK(balance.isZero(0));
    }
}

TEST_CASE("facet_data requires an interior origin") {
    const HPolytope simplex = v_to_h(standard_simplex(3));  // origin is a vertex
    CHECK_THROWS_AS(facet_data(simplex), PreconditionError);
}

TEST_CASE("translate_origin_interior fixes offsets and is idempotent on good input") {
    const HPolytope simplex = v_to_h(standard_simplex(3));
    const HPolytope moved = translate_origin_interior(simplex);
    for (int j = 0; j < moved.b.size(); ++j) CHECK(moved.b[j] > 0);
    CHECK(volume(moved) == volume(simplex));

    const HPolytope cube = v_to_h(cube_pm1());
    const HPolytope same = translate_origin_interior(cube);
    CHECK(same.A == cube.A);
    CHECK(same.b == cube.b);

    std::mt19937 rng(7);
    for (int trial = 0; trial < 6; ++trial) {
        const HPolytope p = translate_origin_interior(v_to_h(random_polytope(3, 7, rng)));
        for (int j = 0; j < p.b.size(); ++j) CHECK(p.b[j] > 0);
    }
}

TEST_CASE("surface_area: exact for rational-norm facets, tight enclosure otherwise") {
    const Interval cube_s = surface_area(v_to_h(unit_cube()));
    CHECK(cube_s.exact());
    CHECK(cube_s.lo == 6);

    const Interval square_s = surface_area(v_to_h(unit_square()));
    CHECK(square_s.exact());
    CHECK(square_s.lo == 4);

    const Interval t3_s = surface_area(v_to_h(t3()));
    CHECK(t3_s.lo <= t3_s.hi);
    // 8 sqrt(3) = 13.8564064605510...
    CHECK(to_double(t3_s.lo) == doctest::Approx(13.856406460551).epsilon(1e-12));
    CHECK(t3_s.width() <= Rational(1, Integer(1) << 50));
}

TEST_CASE("scale_to_unit_surface certifies 1 <= S <= 1 + 1/n") {
    const auto [sigma, square] = scale_to_unit_surface(v_to_h(unit_square()));
    CHECK(sigma == Rational(1, 4));
    CHECK(surface_area(square).lo == 1);

    const auto [sc, cube] = scale_to_unit_surface(v_to_h(cube_pm1()));
    const Interval s = surface_area(cube);
    CHECK(s.lo >= 1);
    CHECK(s.hi <= Rational(4, 3));
    CHECK(sc * sc * 24 == surface_area(cube).lo);

    std::mt19937 rng(31337);
    for (int trial = 0; trial < 4; ++trial) {
        const HPolytope p = v_to_h(random_polytope(3, 7, rng));
        const auto [sg, scaled] = scale_to_unit_surface(p);
        const Interval ss = surface_area(scaled);
        CHECK(ss.lo >= 1);
        CHECK(ss.hi <= Rational(4, 3));
        CHECK(volume(scaled) == pow_rational(sg, 3) * volume(p));
    }
}

TEST_CASE("scaling laws for volume and omegas") {
    const HPolytope p = v_to_h(t3());
    const Rational sigma(3, 7);
    HPolytope scaled = p;
    scaled.b *= sigma;
    CHECK(volume(scaled) == pow_rational(sigma, 3) * volume(p));
    const auto f0 = facet_data(p);
    const auto f1 = facet_data(scaled);
    for (std::size_t j = 0; j < f0.size(); ++j)
        CHECK(f1[j].omega == sigma * sigma * f0[j].omega);
}

TEST_CASE("iso_lower_bound: exact on boxes, sound in general") {
    CHECK(iso_lower_bound(v_to_h(unit_square())) == Rational(1, 16));
    CHECK(iso_lower_bound(v_to_h(unit_cube())) == Rational(1, 216));
    // T_3: nu <= vol^2/S^3 = (8/3)^2/(8 sqrt 3)^3 and the bound is positive
    const Rational nu = iso_lower_bound(v_to_h(t3()));
    CHECK(nu > 0);
    CHECK(to_double(nu) == doctest::Approx(7.1111111 / 2660.3325).epsilon(1e-6));
}

TEST_CASE("summarize bundles volume, surface and iso bound") {
    const PolytopeSummary s = summarize(v_to_h(unit_cube()));
    CHECK(s.volume == 1);
    CHECK(s.surface.lo == 6);
    CHECK(s.iso_nu == Rational(1, 216));
}

TEST_CASE("section_volume on canonical bodies") {
    const HPolytope cube = v_to_h(cube_pm1());
    CHECK(section_volume(cube, 0) == 4);
    CHECK(section_volume(v_to_h(crosspolytope(3)), 0) == 2);

    // shifted cube [1,2]^3 misses the coordinate hyperplanes
    MatQ m(3, 8);
    int c = 0;
    for (int sx : {1, 2})
        for (int sy : {1, 2})
            for (int sz : {1, 2}) {
                m.col(c) << Rational(sx), Rational(sy), Rational(sz);
                ++c;
            }
    CHECK(section_volume(v_to_h(make_v_polytope(m)), 0) == 0);
}

TEST_CASE("section_volume of the coordinate crosspolytope (Meyer legs)") {
    const HPolytope p = v_to_h(coordinate_crosspolytope({1, 2, 3}));
    CHECK(section_volume(p, 0) == 12);  // conv{+-2 e2, +-3 e3}
    CHECK(section_volume(p, 1) == 6);
    CHECK(section_volume(p, 2) == 4);
    CHECK(volume(h_to_v(p)) == 8);
}

TEST_CASE("longest_chord on boxes and simplices") {
    CHECK(longest_chord(v_to_h(unit_cube()), vq({"1", "0", "0"})) == 1);
    CHECK(longest_chord(v_to_h(standard_simplex(3)), vq({"1", "0", "0"})) == 1);
    CHECK(longest_chord(v_to_h(cube_pm1()), vq({"1", "1", "1"})) == 2);
    CHECK_THROWS_AS(longest_chord(v_to_h(unit_cube()), vq({"0", "0", "0"})),
                    PreconditionError);
}

TEST_CASE("LP optimum equals max over enumerated vertices (cross-check)") {
    std::mt19937 rng(555);
    std::uniform_int_distribution<int> coeff(-4, 4);
    for (int trial = 0; trial < 6; ++trial) {
        const VPolytope q = random_polytope(3, 8, rng);
        const HPolytope p = v_to_h(q);
        VecQ c(3);
        for (int i = 0; i < 3; ++i) c[i] = coeff(rng);
        const LpResult r = lp_maximize(p.A, p.b, c);
        REQUIRE(r.status == LpStatus::Optimal);
        Rational best = c.dot(q.V.col(0));
        for (int v = 1; v < q.V.cols(); ++v)
            best = std::max(best, Rational(c.dot(q.V.col(v))), std::less<Rational>());
        CHECK(r.value == best);
    }
}

TEST_CASE("interior_point is strictly inside") {
    std::mt19937 rng(808);
    for (int trial = 0; trial < 6; ++trial) {
        const HPolytope p = v_to_h(random_polytope(3, 7, rng));
        const VecQ x = interior_point(p);
        for (int j = 0; j < p.A.rows(); ++j) CHECK(p.A.row(j).dot(x) < p.b[j]);
    }
}
