#pragma once

#include "revlw/rational.hpp"

#include <optional>
#include <vector>

namespace revlw {

/** Rank of a rational matrix by exact Gaussian elimination. */
int rank(const MatQ& m);

/** Exact determinant (fraction-free Bareiss elimination). */
Rational determinant(const MatQ& m);

/** Solve A x = b exactly; empty optional if A is singular. A must be square. */
std::optional<VecQ> solve(const MatQ& a, const VecQ& b);

/**
 * Basis of the null space of `a` (columns of the result span {x : a x = 0}).
 * Returns an n x q matrix with q = n - rank(a); q may be zero.
 */
MatQ null_space(const MatQ& a);

/**
 * Exact Gram-Schmidt without normalization: columns of the result are
 * pairwise orthogonal and span the column space of `basis`.  Each vector is
 * reduced to a primitive integer vector to keep entries small.
 */
MatQ orthogonalize(const MatQ& basis);

/** Scale v by a power of two so that 1 <= |v|^2 <= 4; v must be nonzero. */
VecQ scale_norm_into_unit_band(const VecQ& v);

/** Divide by the content (gcd of numerators / lcm of denominators), keep sign. */
VecQ primitive_integer_vector(const VecQ& v);

enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational value;  // objective at the optimum (valid when Optimal)
    VecQ x;          // optimizer (valid when Optimal)
};

/**
 * Exact rational linear programming:  maximize c^T x  subject to  A x <= b,
 * x free.  Two-phase primal simplex with Bland's rule; never cycles and all
 * pivots are exact.  Intended for the small systems that arise here (a few
 * dozen rows); no attempt is made at sparse or revised formulations.
 */
LpResult lp_maximize(const MatQ& a, const VecQ& b, const VecQ& c);

}  // namespace revlw
