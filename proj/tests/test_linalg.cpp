#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "revlw/linalg.hpp"

#include <random>

using namespace revlw;

namespace {

MatQ random_rational_matrix(int rows, int cols, std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    MatQ m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = Rational(num(rng), den(rng));
    return m;
}

}  // namespace

TEST_CASE("rank of hand-picked matrices") {
    MatQ m(3, 3);
    m << 1, 2, 3, 2, 4, 6, 1, 0, 1;
    CHECK(rank(m) == 2);
    CHECK(rank(MatQ::Identity(4, 4)) == 4);
    CHECK(rank(MatQ::Zero(2, 5)) == 0);
}

TEST_CASE("determinant matches cofactor expansion on small cases") {
    MatQ m(2, 2);
    m << Rational(1, 2), Rational(1, 3), Rational(1, 4), Rational(1, 5);
    CHECK(determinant(m) == Rational(1, 2) * Rational(1, 5) - Rational(1, 3) * Rational(1, 4));

    MatQ s(3, 3);
    s << 2, 0, 1, 1, 3, 2, 0, 1, 4;
    CHECK(determinant(s) == Rational(2 * (12 - 2) - 0 + 1 * (1 - 0)));
    CHECK(determinant(MatQ::Identity(5, 5)) == 1);
}

TEST_CASE("determinant is multiplicative (property, random matrices)") {
    std::mt19937 rng(20240811);
    for (int trial = 0; trial < 20; ++trial) {
        const MatQ a = random_rational_matrix(4, 4, rng);
        const MatQ b = random_rational_matrix(4, 4, rng);
        const MatQ ab = a * b;
        CHECK(determinant(ab) == determinant(a) * determinant(b));
    }
}

TEST_CASE("solve returns the exact solution and detects singularity") {
    MatQ a(3, 3);
    a << 1, 2, 0, 0, 1, 1, 1, 0, 1;
    VecQ x_true(3);
    x_true << Rational(1, 3), Rational(-2, 7), Rational(5);
    const VecQ b = a * x_true;
    const auto x = solve(a, b);
    REQUIRE(x.has_value());
    CHECK(*x == x_true);

    MatQ sing(2, 2);
    sing << 1, 2, 2, 4;
    VecQ rhs(2);
    rhs << 1, 1;
    CHECK_FALSE(solve(sing, rhs).has_value());
}

TEST_CASE("null_space spans the kernel exactly") {
    MatQ a(2, 4);
    a << 1, 2, 3, 4, 0, 1, 1, 1;
    const MatQ ns = null_space(a);
    CHECK(ns.cols() == 2);
    CHECK((a * ns).isZero(0));
    CHECK(rank(ns) == 2);

    std::mt19937 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const MatQ m = random_rational_matrix(3, 5, rng);
        const MatQ kernel = null_space(m);
        CHECK(rank(m) + kernel.cols() == 5);
        if (kernel.cols() > 0) CHECK((m * kernel).isZero(0));
    }
}

TEST_CASE("orthogonalize yields pairwise-orthogonal integer columns") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        MatQ b = random_rational_matrix(4, 3, rng);
        if (rank(b) < 3) continue;
        const MatQ q = orthogonalize(b);
        for (int i = 0; i < q.cols(); ++i)
            for (int j = 0; j < i; ++j) CHECK(q.col(i).dot(q.col(j)) == 0);
        // spans the same space: concatenation has the same rank
        MatQ both(4, 6);
        both << b, q;
        CHECK(rank(both) == 3);
        for (int i = 0; i < q.cols(); ++i)
            for (int r = 0; r < q.rows(); ++r) CHECK(denominator(q(r, i)) == 1);
    }
    MatQ dependent(3, 2);
    dependent << 1, 2, 1, 2, 0, 0;
    CHECK_THROWS_AS(orthogonalize(dependent), PreconditionError);
}

TEST_CASE("scale_norm_into_unit_band lands in [1, 4]") {
    VecQ tiny(2);
    tiny << Rational(1, 1000), Rational(1, 2000);
    const VecQ t = scale_norm_into_unit_band(tiny);
    CHECK(t.squaredNorm() >= 1);
    CHECK(t.squaredNorm() <= 4);

    VecQ big(3);
    big << 100, -200, 50;
    const VecQ s = scale_norm_into_unit_band(big);
    CHECK(s.squaredNorm() >= 1);
    CHECK(s.squaredNorm() <= 4);
    // direction is preserved
    CHECK(s[1] * big[0] == s[0] * big[1]);
}

TEST_CASE("lp_maximize solves a textbook problem exactly") {
    // max x + y  s.t. x + 2y <= 4, 3x + y <= 6, x >= 0 (as -x <= 0), y >= 0
    MatQ a(4, 2);
    a << 1, 2, 3, 1, -1, 0, 0, -1;
    VecQ b(4);
    b << 4, 6, 0, 0;
    VecQ c(2);
    c << 1, 1;
    const LpResult r = lp_maximize(a, b, c);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == Rational(14, 5));
    CHECK(r.x[0] == Rational(8, 5));
    CHECK(r.x[1] == Rational(6, 5));
}

TEST_CASE("lp_maximize handles free variables and negative rhs") {
    // max -x  s.t. -x <= -3  (so x >= 3; optimum -3 at x = 3)
    MatQ a(1, 1);
    a << -1;
    VecQ b(1);
    b << -3;
    VecQ c(1);
    c << -1;
    const LpResult r = lp_maximize(a, b, c);
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.value == -3);
    CHECK(r.x[0] == 3);
}

TEST_CASE("lp_maximize detects unbounded and infeasible problems") {
    MatQ a(1, 2);
    a << 1, 0;
    VecQ b(1);
    b << 1;
    VecQ c(2);
    c << 0, 1;
    CHECK(lp_maximize(a, b, c).status == LpStatus::Unbounded);

    MatQ bad(2, 1);
    bad << 1, -1;
    VecQ bb(2);
    bb << 1, -2;  // x <= 1 and x >= 2
    VecQ cc(1);
    cc << 1;
    CHECK(lp_maximize(bad, bb, cc).status == LpStatus::Infeasible);
}

TEST_CASE("lp_maximize optimum equals max over vertices of a box (property)") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> coeff(-5, 5);
    // Box [-1, 2] x [-2, 1] x [0, 3]; vertices enumerable by hand.
    MatQ a(6, 3);
    a << 1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1;
    VecQ b(6);
    b << 2, 1, 1, 2, 3, 0;
    const Rational lo[3] = {-1, -2, 0};
    const Rational hi[3] = {2, 1, 3};
    for (int trial = 0; trial < 25; ++trial) {
        VecQ c(3);
        for (int i = 0; i < 3; ++i) c[i] = coeff(rng);
        const LpResult r = lp_maximize(a, b, c);
        REQUIRE(r.status == LpStatus::Optimal);
        Rational best;
        bool first = true;
        for (int mask = 0; mask < 8; ++mask) {
            Rational v = 0;
            for (int i = 0; i < 3; ++i) v += c[i] * ((mask >> i) & 1 ? hi[i] : lo[i]);
            if (first || v > best) best = v;
            first = false;
        }
        CHECK(r.value == best);
    }
}
