#pragma once

// Canonical bodies used across the test suites, built programmatically so
// unit tests do not depend on data files.

#include "revlw/polytope.hpp"

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

namespace revlw::testing {

inline VecQ vq(std::initializer_list<const char*> entries) {
    VecQ v(static_cast<int>(entries.size()));
    int i = 0;
    for (const char* e : entries) v[i++] = parse_rational(e);
    return v;
}

/** Matrix whose columns are the given points. */
inline MatQ points(std::initializer_list<std::initializer_list<const char*>> pts) {
    const int k = static_cast<int>(pts.size());
    const int n = static_cast<int>(pts.begin()->size());
    MatQ m(n, k);
    int c = 0;
    for (const auto& p : pts) m.col(c++) = vq(p);
    return m;
}

inline VPolytope triangle() {  // (0,0),(1,0),(0,1)
    return make_v_polytope(points({{"0", "0"}, {"1", "0"}, {"0", "1"}}));
}

inline VPolytope unit_square() {
    return make_v_polytope(points({{"0", "0"}, {"1", "0"}, {"1", "1"}, {"0", "1"}}));
}

/** Rhombus with vertices (+-1, 0), (0, +-l). */
inline VPolytope rhombus(const Rational& l) {
    MatQ m(2, 4);
    m.col(0) = vq({"1", "0"});
    m.col(1) = vq({"-1", "0"});
    m.col(2) << Rational(0), l;
    m.col(3) << Rational(0), -l;
    return make_v_polytope(m);
}

inline VPolytope cube_pm1() {  // [-1,1]^3
    MatQ m(3, 8);
    int c = 0;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1}) {
                m.col(c) << Rational(sx), Rational(sy), Rational(sz);
                ++c;
            }
    return make_v_polytope(m);
}

inline VPolytope unit_cube() {  // [0,1]^3
    MatQ m(3, 8);
    int c = 0;
    for (int sx : {0, 1})
        for (int sy : {0, 1})
            for (int sz : {0, 1}) {
                m.col(c) << Rational(sx), Rational(sy), Rational(sz);
                ++c;
            }
    return make_v_polytope(m);
}

/** Regular tetrahedron with vertices (1,1,1),(1,-1,-1),(-1,1,-1),(-1,-1,1). */
inline VPolytope t3() {
    return make_v_polytope(points(
        {{"1", "1", "1"}, {"1", "-1", "-1"}, {"-1", "1", "-1"}, {"-1", "-1", "1"}}));
}

inline VPolytope standard_simplex(int n) {  // conv{0, e_1, ..., e_n}
    MatQ m = MatQ::Zero(n, n + 1);
    for (int i = 0; i < n; ++i) m(i, i + 1) = 1;
    return make_v_polytope(m);
}

/** Crosspolytope conv{+-e_i} in R^n. */
inline VPolytope crosspolytope(int n) {
    MatQ m = MatQ::Zero(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        m(i, 2 * i) = 1;
        m(i, 2 * i + 1) = -1;
    }
    return make_v_polytope(m);
}

/** Coordinate crosspolytope conv{+-alpha_i e_i}. */
inline VPolytope coordinate_crosspolytope(const std::vector<Rational>& alpha) {
    const int n = static_cast<int>(alpha.size());
    MatQ m = MatQ::Zero(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        m(i, 2 * i) = alpha[static_cast<std::size_t>(i)];
        m(i, 2 * i + 1) = -alpha[static_cast<std::size_t>(i)];
    }
    return make_v_polytope(m);
}

/** Simplex on four pairwise non-adjacent vertices of the 1 x 2 x 4 box. */
inline VPolytope box_simplex_124() {
    return make_v_polytope(points(
        {{"0", "0", "0"}, {"1", "2", "0"}, {"1", "0", "4"}, {"0", "2", "4"}}));
}

/** Random rational point cloud with entries p/q, p in [-6,6], q in [1,4]. */
inline MatQ random_points(int n, int k, std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    MatQ m(n, k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < n; ++i) m(i, j) = Rational(num(rng), den(rng));
    return m;
}

/** Random full-dimensional VPolytope (resamples until spanning). */
inline VPolytope random_polytope(int n, int k, std::mt19937& rng) {
    for (;;) {
        try {
            VPolytope q = make_v_polytope(random_points(n, k, rng));
            return q;
        } catch (const DegeneracyError&) {
            // resample
        }
    }
}

}  // namespace revlw::testing
