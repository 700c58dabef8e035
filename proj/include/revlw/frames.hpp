#pragma once

#include "revlw/zonotope.hpp"

#include <string>
#include <vector>

namespace revlw {

enum class SearchMode { Certified, Heuristic };

struct SearchConfig {
    SearchMode mode = SearchMode::Certified;
    Rational tau = Rational(1, 10);  // certified additive error, in (0, 1]
    Rational delta = Rational(1, 2); // multiplicative error, in (0, 1)
    Rational nu = 0;                 // iso lower bound; 0 means "compute it"
    int restarts = 32;               // heuristic multi-start count
    double sweep_tol = 1e-12;        // relative improvement stop threshold
    std::uint64_t seed = 1;
    int threads = 1;
    std::uint64_t budget = 1000000000ull;  // certified evaluation budget
};

/**
 * Rational grid frame: columns of W are pairwise orthogonal with
 * 1 <= |w_i|^2 <= (1+rho)^2 exactly; r_choice and grid_index record which
 * facet-orthogonality branch and shell points produced it.
 */
struct PseudoFrame {
    MatQ W;
    Rational rho;
    std::vector<int> r_choice;
    std::vector<long long> grid_index;
};

struct SearchResult {
    std::string mode;           // "certified" | "heuristic"
    Rational psi;               // certified upper bound on Psi of the searched body
    Rational lambda_lower;      // vol^{n-1}/psi, a certified lower bound on Lambda
    Rational tau;               // additive guarantee (0 for heuristic results)
    MatQ frame;                 // witness directions, one column per axis
    std::vector<int> r_choice;  // branch of the winning pseudo frame (certified)
    std::uint64_t evaluations = 0;
    std::int64_t wall_ms = 0;
    Rational delta;             // set by lw_approx
    Rational sigma = 1;         // surface scaling applied before the search
    bool certificate_valid = true;
};

/** Orthonormality guard for real frames (defect tolerance 1e-12). */
void validate_frame(const MatD& frame);

/** Projection average: product over frame columns of vol_{n-1}(P | u_i^perp). */
double psi(const HPolytope& p, const MatD& frame);
double psi(const Zonotope& projection, const MatD& frame);

/** vol(P)^{n-1} / psi(P;F); bounded above by 1 for every frame. */
double lambda_ratio(const HPolytope& p, const MatD& frame);

/** Exact rational (1/2^n) prod_i sum_j omega_j |w_i . a_j|. */
Rational pseudo_average(const std::vector<Facet>& facets, const MatQ& w);
Rational pseudo_average(const HPolytope& p, const MatQ& w);

/** Exact invariant check for PseudoFrame; throws PreconditionError. */
void validate_pseudo_frame(const PseudoFrame& w);

struct Planar2dResult {
    Rational lambda;
    int edge_index = 0;  // winning edge in hull_facets order (lowest on ties)
    VecQ direction;      // unnormalized rational edge direction
    Rational min_rect_area;
};

/**
 * Exact planar solver: the best frame of a polygon is attained with an axis
 * parallel to an edge, so Lambda = vol / min over edges of the enclosing
 * rectangle area (width_v * width_vperp / |v|^2), all rational.
 */
Planar2dResult lw_exact_2d(const VPolytope& polygon);
Planar2dResult lw_exact_2d(const HPolytope& polygon);

struct MinPerimResult {
    VecQ direction;         // unnormalized rational rectangle axis
    Rational perimeter_sq;  // exact squared perimeter 4 (w_v + w_vperp)^2 / |v|^2
};

/**
 * Minimal-perimeter enclosing rectangle of a polygon: some side is parallel
 * to an edge of the difference body P + (-P), whose edge directions are the
 * polygon's own, so exact enumeration over edges suffices.
 */
MinPerimResult min_perimeter_rect_2d(const VPolytope& polygon);

/**
 * Exactly orthogonal rational basis of the null space of the constraint rows
 * with 1 <= |x_k|^2 <= 4; empty matrix when the null space is trivial.
 */
MatQ near_normal_basis(const MatQ& constraint_rows);

/**
 * All grid points w = sum_k t_k alpha x_k (alpha = rho/(2n), t integer) with
 * 1 <= |w|^2 <= (1+rho)^2 exactly, antipodes deduplicated by keeping the
 * representative whose first nonzero coordinate is positive.  Emission is
 * lexicographic in the integer tuple; every unit vector of the span is
 * within rho of some emitted w or its antipode.
 */
std::vector<std::pair<VecQ, std::vector<long long>>> grid_shell(const MatQ& basis,
                                                                const Rational& rho);

/**
 * Conservative evaluation-count bound for the certified search (the product
 * of per-level shell-cardinality bounds times the number of facet-multiset
 * branches, after antipodal reduction).
 */
Rational certified_search_bound(int n, int facet_count, const Rational& tau);

/**
 * Certified grid search: enumerates facet-index multisets R and per-branch
 * shell grids, minimizing the exact pseudo average.  Requires P scaled to
 * 1 <= S(P) <= 1 + 1/n; guarantees Psi(P) <= psi <= Psi(P) + tau.  Refuses
 * with BudgetError (carrying the minimal feasible tau) when the a-priori
 * bound exceeds config.budget.
 */
SearchResult structured_search(const HPolytope& p_scaled, const Rational& tau,
                               const SearchConfig& config = {});

/**
 * Multiplicative wrapper: translate, scale to near-unit surface, run the
 * certified search with tau = min{1, nu * delta}; the result satisfies
 * lambda_lower <= Lambda(P) <= (1+delta) lambda_lower when nu is a valid
 * isoperimetric lower bound (pass nu = 0 to have it computed).
 */
SearchResult lw_approx(const HPolytope& p, const Rational& delta, const Rational& nu = 0,
                       const SearchConfig& config = {});

/**
 * Multi-start plane-sweep heuristic over the projection body: per plane the
 * minimal-area rectangle of the projected zonogon is exact (edge
 * enumeration), and the final frame is rounded to dyadic rationals,
 * re-orthogonalized exactly and re-evaluated so psi and lambda_lower are
 * certified rational bounds.
 */
SearchResult heuristic_search(const HPolytope& p, const SearchConfig& config = {});

enum class BoxMode { Body, ProjectionBody };

struct MinBoxResult {
    MatD frame;
    double box_volume = 0;
    double phi = 0;  // vol(P) / box_volume        (Body mode)
    double psi = 0;  // box_volume / 2^n           (ProjectionBody mode)
    bool exact = false;
    Rational box_volume_exact;  // set for n = 2 (edge enumeration)
    VecQ direction_exact;
};

/**
 * Minimal enclosing box of the body (Body mode) or of its projection body
 * (ProjectionBody mode, where vol(B) = 2^n Psi).  Exact in the plane via
 * edge enumeration, plane-sweep heuristic otherwise.
 */
MinBoxResult min_box(const HPolytope& p, BoxMode mode, const SearchConfig& config = {});

struct EdgeFrameResult {
    MatQ directions;  // unnormalized rational frame (columns)
    Rational psi;
    Rational lambda;
};

/**
 * The explicit edge frame of the crosspolytope conv{+-e_i}: paired diagonal
 * directions e_{2i-1} +- e_{2i} (plus e_n for odd n).  The norm product is a
 * power of sqrt(2) with even exponent, so psi and lambda are exact rationals.
 */
EdgeFrameResult crosspolytope_edge_frame(int n);

/** Seeded orthonormal frame from hand-rolled Box-Muller Gaussians. */
MatD random_frame(int n, std::uint64_t seed);

}  // namespace revlw
