#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace revlw {

using Rational = boost::multiprecision::mpq_rational;
using Integer  = boost::multiprecision::mpz_int;

using VecQ = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using MatQ = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using VecD = Eigen::VectorXd;
using MatD = Eigen::MatrixXd;

/** Base class for all errors thrown by this library. */
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};
/** Input is not full-dimensional (or otherwise degenerate). */
struct DegeneracyError : Error {
    explicit DegeneracyError(const std::string& what) : Error(what) {}
};
/** H-polytope is unbounded where a bounded one is required. */
struct BoundednessError : Error {
    explicit BoundednessError(const std::string& what) : Error(what) {}
};
/** A documented precondition of an operation was violated. */
struct PreconditionError : Error {
    explicit PreconditionError(const std::string& what) : Error(what) {}
};
/** Malformed input file or string. */
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};
/** Projected cost of a certified run exceeds the evaluation budget. */
struct BudgetError : Error {
    BudgetError(const std::string& what, const Rational& min_tau)
        : Error(what), minimal_feasible_tau(min_tau) {}
    Rational minimal_feasible_tau;
};
/** Refusal of a computation whose combinatorial cost is gated. */
struct CostGateError : Error {
    explicit CostGateError(const std::string& what) : Error(what) {}
};

/** Closed rational interval [lo, hi], used to enclose irrational values. */
struct Interval {
    Rational lo;
    Rational hi;

    bool exact() const { return lo == hi; }
    Rational width() const { return hi - lo; }
    double midpoint() const { return static_cast<double>((lo + hi) / 2); }
};

/**
 * Enclosure of sqrt(x) for rational x >= 0 with relative width <= 2^-bits.
 * The enclosure is exact (zero width) whenever x is the square of a rational.
 */
Interval sqrt_enclosure(const Rational& x, unsigned bits = 60);

/** Parse "p", "-p" or "p/q" (q > 0 after canonicalization); throws ParseError. */
Rational parse_rational(const std::string& s);

/** Canonical "p" or "p/q" form, inverse of parse_rational. */
std::string format_rational(const Rational& x);

/** Shorthand for static_cast<double>; keeps call sites readable. */
inline double to_double(const Rational& x) { return static_cast<double>(x); }

VecD to_double(const VecQ& v);
MatD to_double(const MatQ& m);

/** Round every entry to the nearest multiple of 2^-bits. */
VecQ round_dyadic(const VecD& v, unsigned bits);

inline Rational binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    Rational r = 1;
    for (unsigned i = 0; i < k; ++i) r = r * Rational(n - i) / Rational(i + 1);
    return r;
}

inline Rational factorial(unsigned n) {
    Rational r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Rational pow_rational(const Rational& x, long e) {
    Rational r = 1, base = x;
    long k = e;
    if (k < 0) { base = 1 / base; k = -k; }
    for (; k > 0; k >>= 1) {
        if (k & 1) r *= base;
        base *= base;
    }
    return r;
}

/** Rational upper bound on Euler's number e, within 2^-50 of the true value. */
Rational euler_upper_bound();

}  // namespace revlw
