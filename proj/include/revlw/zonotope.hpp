#pragma once

#include "revlw/polytope.hpp"

#include <cstdint>

namespace revlw {

/**
 * Zonotope sum_j [-g_j, g_j], origin-symmetric by construction.  For a
 * projection body the generators are g_j = (1/2) omega_j a_j, so the support
 * value at x is sum_j |g_j . x| = |x| * vol_{n-1}(P | x^perp).
 */
struct Zonotope {
    int n = 0;
    MatQ G;  // n x m, one column per generator
};

/** Projection body Pi P with generators (1/2) omega_j a_j. */
Zonotope projection_body(const HPolytope& p);

/** Exact support value sum_j |g_j . x|. */
Rational support(const Zonotope& z, const VecQ& x);

/**
 * vol_{n-1}(P | u^perp) for a near-unit direction u via the Cauchy-type
 * formula (1/2) sum_j omega_j |u . a_j|; PreconditionError unless
 * | |u|^2 - 1 | <= 1e-9.
 */
double projection_area(const HPolytope& p, const VecD& u);

/** Exact rational |w| * vol_{n-1}(P | w^perp) = (1/2) sum_j omega_j |w.a_j|. */
Rational projection_area_rational(const HPolytope& p, const VecQ& w);

/**
 * Independent oracle for n in {2,3}: project the vertices onto an
 * orthonormal basis of u^perp and return the hull's length/area in doubles.
 */
double projection_hull_oracle(const VPolytope& q, const VecD& u);

/**
 * Exact volume 2^n sum_{|J|=n} |det g_J|.  The binom(m,n) enumeration is
 * gated: m > 20 generators at n >= 4 throws CostGateError unless forced.
 */
Rational zonotope_volume(const Zonotope& z, bool force = false);

/**
 * Vertex presentation via signed generator sums (2^m candidates, gated at
 * m > 6 unless forced); the dual route for cross-checking zonotope_volume.
 */
VPolytope zonotope_to_v(const Zonotope& z, bool force = false);

/** Exact membership of x in the polar body { x : sum_j |g_j . x| <= 1 }. */
bool polar_membership(const Zonotope& z, const VecQ& x);

struct McEstimate {
    double value = 0;
    double ci95 = 0;
    std::uint64_t hits = 0;
    std::uint64_t samples = 0;
};

/**
 * Hit-or-miss Monte Carlo volume of the polar body of z.  The sampling box
 * is the exact axis-extent box of the polar (per-axis rational LP); samples
 * are dyadic rationals so membership is exact, and work is split into
 * fixed-size chunks with per-chunk seeds, making the result identical for
 * any thread count.
 */
McEstimate polar_volume_mc(const Zonotope& z, std::uint64_t samples, std::uint64_t seed,
                           int threads = 1);

struct ZhangReport {
    Rational lhs;         // vol(P)^{n-1}, exact
    double rhs = 0;       // binom(2n,n) / (n^n vol(polar of Pi P)), MC estimate
    double rhs_ci95 = 0;  // 95% half-width on rhs
    double ratio = 0;     // lhs / rhs; 1 within noise iff P is a simplex
    double ratio_ci95 = 0;
};

/**
 * Monte Carlo check of the volume/polar-projection-body inequality
 * vol(P)^{n-1} >= binom(2n,n) / (n^n vol((Pi P)°)), with equality exactly
 * for simplices.
 */
ZhangReport zhang_check(const HPolytope& p, std::uint64_t samples, std::uint64_t seed,
                        int threads = 1);

}  // namespace revlw
