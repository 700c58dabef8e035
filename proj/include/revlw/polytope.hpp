#pragma once

#include "revlw/linalg.hpp"

#include <utility>
#include <vector>

namespace revlw {

/**
 * Halfspace presentation { x : A x <= b } with one row per facet.  Instances
 * produced by make_h_polytope / v_to_h are bounded, full-dimensional and
 * irredundant, with each row scaled to a primitive integer normal.
 */
struct HPolytope {
    int n = 0;
    MatQ A;  // m x n, row j is the outer normal a_j
    VecQ b;  // m offsets
};

/** Vertex presentation conv(columns of V); columns are extreme points. */
struct VPolytope {
    int n = 0;
    MatQ V;  // n x k, one column per vertex
};

/**
 * Per-facet data: outer normal a, offset beta, squared norm |a|^2, and the
 * normalized facet volume omega = vol_{n-1}(F)/|a|, which is rational for
 * rational polytopes and drives every projection formula downstream.
 */
struct Facet {
    VecQ a;
    Rational beta;
    Rational omega;
    Rational norm2;
};

/** Facet of a point hull together with the incident point indices. */
struct HullFacet {
    VecQ a;         // primitive integer outer normal
    Rational beta;  // a . x <= beta supporting the hull
    std::vector<int> vertices;
};

/** Volume, certified surface-area enclosure, and isoperimetric lower bound. */
struct PolytopeSummary {
    Rational volume;
    Interval surface;
    Rational iso_nu;  // iso_nu <= vol^{n-1} / S^n
};

/**
 * Canonicalize a point cloud into a VPolytope: duplicates and non-extreme
 * points are dropped; throws DegeneracyError unless the hull is
 * full-dimensional.  Columns are sorted lexicographically.
 */
VPolytope make_v_polytope(const MatQ& points);

/**
 * Canonicalize a halfspace system into an HPolytope: rows are scaled to
 * primitive integer normals, duplicates merged, redundant rows removed by
 * exact LP.  Throws BoundednessError for unbounded systems and
 * DegeneracyError for empty or lower-dimensional ones.
 */
HPolytope make_h_polytope(const MatQ& a, const VecQ& b);

/**
 * Facets of conv(points) with exact incidences, via the polar-dual vertex
 * enumeration around the centroid.  Requires a full-dimensional hull; facet
 * order is lexicographic in the normal for reproducibility.
 */
std::vector<HullFacet> hull_facets(const MatQ& points);

/** Presentation conversions; exact, irredundant, and mutually inverse. */
HPolytope v_to_h(const VPolytope& q);
VPolytope h_to_v(const HPolytope& p);

/**
 * Exact volume by fan triangulation from the first vertex; facet volumes are
 * obtained by dropping a coordinate (the graph projection scales (n-1)-volume
 * by |a|/|a_k|, keeping everything rational).
 */
Rational volume(const VPolytope& q);
Rational volume(const HPolytope& p);

/**
 * Exact interior point: maximizes the 1-norm margin min_j (b_j - a_j.x) /
 * |a_j|_1, a rational surrogate for the Chebyshev center.
 */
VecQ interior_point(const HPolytope& p);

/** Translate so all offsets are positive; identity when they already are. */
HPolytope translate_origin_interior(const HPolytope& p);

/**
 * Facet data for an origin-interior polytope (all b_j > 0, else
 * PreconditionError).  Satisfies the exact identities
 * n * vol(P) = sum_j beta_j omega_j and sum_j omega_j a_j = 0.
 */
std::vector<Facet> facet_data(const HPolytope& p);

/**
 * Surface area S(P) = sum_j omega_j |a_j| as a rational enclosure with
 * relative width <= 2^{1-bits}; exact when all |a_j|^2 are perfect squares.
 */
Interval surface_area(const HPolytope& p, unsigned bits = 60);

/**
 * Rational sigma with 1 <= S(sigma P) <= 1 + 1/n certified against the
 * surface enclosure, plus the scaled polytope.  Found by bisection on
 * sigma^{n-1}; when the enclosure is exact the scheme returns the smallest
 * admissible dyadic refinement end (e.g. exactly 1/4 for the unit square).
 */
std::pair<Rational, HPolytope> scale_to_unit_surface(const HPolytope& p);

/** Rational nu <= vol^{n-1}/S^n, using the upper surface enclosure end. */
Rational iso_lower_bound(const HPolytope& p, unsigned bits = 60);

/** Volume, surface enclosure and isoperimetric bound in one record. */
PolytopeSummary summarize(const HPolytope& p);

/**
 * Exact vol_{n-1}(P intersect {x_axis = 0}); zero when the hyperplane misses
 * the interior.
 */
Rational section_volume(const HPolytope& p, int axis);

/**
 * Longest chord in direction v: the largest t with x and x + t v both in P
 * (exact LP).  The Euclidean chord length is t |v|; t itself is returned.
 */
Rational longest_chord(const HPolytope& p, const VecQ& v);

}  // namespace revlw
