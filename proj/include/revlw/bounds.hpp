#pragma once

#include "revlw/frames.hpp"

#include <string>
#include <utility>
#include <vector>

namespace revlw {

enum class Verdict { Holds, Violated, Inconclusive };

/**
 * One inequality record.  `relation` is the claimed comparison of lhs to rhs
 * ("<=", ">=", "=="); `slack` is oriented so that a nonnegative value means
 * the claim is satisfied at the stated tolerance.  Sides carry provenance:
 * "exact" sides also fill the *_exact rationals and are decided without
 * tolerance, "mc" sides carry a 95% half-width and use 3-sigma verdicts.
 */
struct BoundsEntry {
    std::string name;
    std::string relation;
    double lhs = 0;
    double rhs = 0;
    std::string lhs_provenance = "exact";
    std::string rhs_provenance = "exact";
    Rational lhs_exact;
    Rational rhs_exact;
    double ci95 = 0;
    double slack = 0;
    Verdict verdict = Verdict::Inconclusive;
    bool equality = false;
};

struct BoundsReport {
    std::vector<BoundsEntry> entries;
};

/** Upper-bound oracle for Psi: the minimum over seeded random frames. */
std::pair<double, MatD> brute_force_psi(const HPolytope& p, int trials, std::uint64_t seed);

/** Asserts Lambda(P;F) <= 1 + 1e-9 for every supplied frame. */
BoundsEntry check_lw(const HPolytope& p, const std::vector<MatD>& frames);

/**
 * Section inequality: vol^{n-1} >= ((n-1)!/n^{n-1}) prod_i vol(P meet e_i-perp),
 * exact rational comparison; equality holds for coordinate crosspolytopes.
 * Requires the origin strictly inside P.
 */
BoundsEntry check_meyer(const HPolytope& p);

/** Universal bound: (1 + delta) * lambda_found >= binom(2n,n)/(2n)^n. */
BoundsEntry check_universal_lower_bound(const HPolytope& p, const SearchResult& lw_result);

/**
 * Simplex window, two entries: (n-1)!/(2^{n-2} n^{n-1}) < lambda (1 + delta),
 * and lambda <= (n-1)!/n^{n-1} + 1e-9.  Requires a simplex (n + 1 vertices).
 */
std::vector<BoundsEntry> check_simplex_bounds(const HPolytope& simplex,
                                              const SearchResult& lw_result);

/**
 * Frame-wise box-volume identity: the box around the projection body equals
 * 2^n times the facet-form support product, exactly, for any rational
 * direction set (columns of `directions`).
 */
BoundsEntry check_petty_identity(const HPolytope& p, const MatQ& directions);

/**
 * Maximal-chord identity vol = (l(v)/n) vol_{n-1}(P|v-perp), exact per
 * rational direction; holds for simplices and fails for everything else.
 */
BoundsEntry chord_identity_check(const HPolytope& p, const std::vector<VecQ>& directions);

/** Zhang inequality as a three-valued MC entry (3-sigma thresholds). */
BoundsEntry zhang_entry(const ZhangReport& report);
BoundsEntry zhang_entry(const HPolytope& p, std::size_t samples, std::uint64_t seed,
                        int threads = 1);

struct BatteryConfig {
    int frames = 1000;              // random frames for the LW sweep
    std::size_t samples = 200000;   // MC samples for the Zhang entry
    std::uint64_t seed = 1;
    int threads = 1;
    int restarts = 32;              // heuristic restarts for the search-based entries
};

/**
 * The full inequality battery for one body, in a fixed deterministic order:
 * LW sweep, Meyer, universal lower bound, simplex window and chord identity
 * (simplices only), box-volume identity, Zhang.  The body is translated to
 * put the origin strictly inside first.
 */
BoundsReport run_bounds_battery(const HPolytope& p, const BatteryConfig& config = {});

}  // namespace revlw
