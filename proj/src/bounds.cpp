#include "revlw/bounds.hpp"

#include "revlw/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace revlw {

namespace {

BoundsEntry exact_entry(std::string name, std::string relation, const Rational& lhs,
                        const Rational& rhs) {
    BoundsEntry e;
    e.name = std::move(name);
    e.relation = std::move(relation);
    e.lhs_exact = lhs;
    e.rhs_exact = rhs;
    e.lhs = to_double(lhs);
    e.rhs = to_double(rhs);
    Rational margin;
    if (e.relation == ">=") {
        margin = lhs - rhs;
    } else if (e.relation == "<=") {
        margin = rhs - lhs;
    } else {
        margin = lhs - rhs;
        if (margin > 0) margin = -margin;  // any difference counts against "=="
    }
    e.slack = to_double(margin);
    e.verdict = margin >= 0 ? Verdict::Holds : Verdict::Violated;
    e.equality = lhs == rhs;
    return e;
}

// Deterministic rational direction with small entries, never zero.
VecQ random_rational_direction(int n, std::mt19937_64& rng) {
    VecQ v(n);
    while (true) {
        bool nonzero = false;
        for (int i = 0; i < n; ++i) {
            const long num = static_cast<long>(rng() % 13) - 6;
            const long den = static_cast<long>(rng() % 4) + 1;
            v(i) = Rational(num, den);
            if (num != 0) nonzero = true;
        }
        if (nonzero) return v;
    }
}

// Deterministic rational orthogonal direction set via exact Gram-Schmidt.
MatQ random_rational_frame(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x6f4a91d3c25b07e1ull);
    while (true) {
        MatQ m(n, n);
        for (int k = 0; k < n; ++k) m.col(k) = random_rational_direction(n, rng);
        if (rank(m) < n) continue;
        return orthogonalize(m);
    }
}

bool is_simplex(const HPolytope& p) { return h_to_v(p).V.cols() == p.n + 1; }

}  // namespace

std::pair<double, MatD> brute_force_psi(const HPolytope& p, int trials, std::uint64_t seed) {
    if (trials < 1) throw PreconditionError("brute force needs at least one trial");
    const Zonotope z = projection_body(p);
    double best = 0;
    MatD best_frame;
    for (int t = 0; t < trials; ++t) {
        const MatD frame = random_frame(p.n, seed + static_cast<std::uint64_t>(t));
        const double value = psi(z, frame);
        if (t == 0 || value < best) {
            best = value;
            best_frame = frame;
        }
    }
    return {best, best_frame};
}

BoundsEntry check_lw(const HPolytope& p, const std::vector<MatD>& frames) {
    if (frames.empty()) throw PreconditionError("LW check needs at least one frame");
    const Zonotope z = projection_body(p);
    const double vol_power = std::pow(to_double(volume(p)), p.n - 1);
    double worst = 0;
    for (const MatD& frame : frames) {
        worst = std::max(worst, vol_power / psi(z, frame));
    }
    BoundsEntry e;
    e.name = "lw_upper";
    e.relation = "<=";
    e.lhs = worst;
    e.rhs = 1.0 + 1e-9;
    e.lhs_provenance = "double";
    e.rhs_provenance = "exact";
    e.rhs_exact = 1;
    e.slack = e.rhs - e.lhs;
    e.verdict = e.slack >= 0 ? Verdict::Holds : Verdict::Violated;
    return e;
}

BoundsEntry check_meyer(const HPolytope& p) {
    for (Eigen::Index j = 0; j < p.b.size(); ++j) {
        if (p.b(j) <= 0) {
            throw PreconditionError("section inequality requires the origin strictly inside");
        }
    }
    Rational sections = 1;
    for (int axis = 0; axis < p.n; ++axis) sections *= section_volume(p, axis);
    const Rational coeff =
        Rational(factorial(p.n - 1)) / pow_rational(p.n, p.n - 1);
    BoundsEntry e = exact_entry("meyer_sections", ">=",
                                pow_rational(volume(p), p.n - 1), coeff * sections);
    return e;
}

BoundsEntry check_universal_lower_bound(const HPolytope& p, const SearchResult& lw_result) {
    const int n = p.n;
    const Rational bound = Rational(binomial(2 * n, n)) / pow_rational(2 * n, n);
    const Rational boosted = (1 + lw_result.delta) * lw_result.lambda_lower;
    BoundsEntry e = exact_entry("universal_lower", ">=", boosted, bound);
    return e;
}

std::vector<BoundsEntry> check_simplex_bounds(const HPolytope& simplex,
                                              const SearchResult& lw_result) {
    if (!is_simplex(simplex)) {
        throw PreconditionError("simplex window requires a body with n + 1 vertices");
    }
    const int n = simplex.n;
    const Rational upper = Rational(factorial(n - 1)) / pow_rational(n, n - 1);
    Rational lower = upper / pow_rational(2, n - 2);
    if (n == 2) {
        // In the plane the window collapses: every triangle has ratio exactly
        // 1/2 (the minimal edge-aligned rectangle has twice its area), so the
        // lower comparison gets the same numerical tolerance as the upper one.
        lower -= Rational(1, 1000000000);
    }
    const Rational boosted = (1 + lw_result.delta) * lw_result.lambda_lower;
    std::vector<BoundsEntry> entries;
    entries.push_back(exact_entry("simplex_lower", ">=", boosted, lower));
    entries.push_back(exact_entry("simplex_upper", "<=", lw_result.lambda_lower,
                                  upper + Rational(1, 1000000000)));
    return entries;
}

BoundsEntry check_petty_identity(const HPolytope& p, const MatQ& directions) {
    if (directions.cols() != p.n || directions.rows() != p.n) {
        throw PreconditionError("box-volume identity needs n rational directions");
    }
    const HPolytope centered = translate_origin_interior(p);
    const Zonotope z = projection_body(centered);
    Rational box = 1;
    for (Eigen::Index k = 0; k < directions.cols(); ++k) {
        box *= 2 * support(z, directions.col(k));
    }
    const Rational product =
        pow_rational(2, p.n) * pseudo_average(centered, directions);
    BoundsEntry e = exact_entry("box_volume_identity", "==", box, product);
    return e;
}

BoundsEntry chord_identity_check(const HPolytope& p, const std::vector<VecQ>& directions) {
    if (directions.empty()) throw PreconditionError("chord identity needs directions");
    const HPolytope centered = translate_origin_interior(p);
    const Rational vol = volume(centered);
    Rational worst = 0;  // largest |vol - (l(v)/n) brightness(v)| over directions
    bool all_equal = true;
    for (const VecQ& v : directions) {
        // With an unnormalized rational v both factors pick up |v| once and
        // cancel: chord * brightness = t |v| * h(v)/|v| = t h(v), exact.
        const Rational t = longest_chord(centered, v);
        const Rational rhs = t * projection_area_rational(centered, v) / p.n;
        Rational diff = vol - rhs;
        if (diff < 0) diff = -diff;
        if (diff != 0) all_equal = false;
        worst = std::max(worst, diff);
    }
    BoundsEntry e;
    e.name = "chord_identity";
    e.relation = "==";
    e.lhs_exact = vol;
    e.rhs_exact = vol - worst;  // worst-case right-hand side
    e.lhs = to_double(vol);
    e.rhs = to_double(e.rhs_exact);
    e.slack = all_equal ? 0.0 : -to_double(worst);
    e.verdict = all_equal ? Verdict::Holds : Verdict::Violated;
    e.equality = all_equal;
    return e;
}

BoundsEntry zhang_entry(const ZhangReport& report) {
    BoundsEntry e;
    e.name = "zhang_volume";
    e.relation = ">=";
    e.lhs_exact = report.lhs;
    e.lhs = to_double(report.lhs);
    e.rhs = report.rhs;
    e.rhs_provenance = "mc";
    e.ci95 = report.rhs_ci95;
    e.slack = e.lhs - e.rhs;
    // 3-sigma three-valued verdict (ci95 is 1.96 sigma).
    const double three_sigma = report.rhs_ci95 / 1.96 * 3.0;
    if (e.lhs >= e.rhs + three_sigma) {
        e.verdict = Verdict::Holds;
    } else if (e.lhs < e.rhs - three_sigma) {
        e.verdict = Verdict::Violated;
    } else {
        e.verdict = Verdict::Inconclusive;
    }
    return e;
}

BoundsEntry zhang_entry(const HPolytope& p, std::size_t samples, std::uint64_t seed,
                        int threads) {
    return zhang_entry(zhang_check(p, samples, seed, threads));
}

BoundsReport run_bounds_battery(const HPolytope& p, const BatteryConfig& config) {
    const HPolytope centered = translate_origin_interior(p);
    BoundsReport report;

    std::vector<MatD> frames;
    frames.reserve(static_cast<std::size_t>(config.frames));
    for (int f = 0; f < config.frames; ++f) {
        frames.push_back(random_frame(p.n, config.seed + static_cast<std::uint64_t>(f)));
    }
    report.entries.push_back(check_lw(centered, frames));
    report.entries.push_back(check_meyer(centered));

    SearchConfig search;
    search.restarts = config.restarts;
    search.seed = config.seed;
    search.threads = config.threads;
    const SearchResult found = heuristic_search(centered, search);
    report.entries.push_back(check_universal_lower_bound(centered, found));

    if (is_simplex(centered)) {
        for (BoundsEntry& e : check_simplex_bounds(centered, found)) {
            report.entries.push_back(std::move(e));
        }
        std::mt19937_64 rng(config.seed ^ 0x2c9277b5e1563df4ull);
        std::vector<VecQ> directions;
        directions.reserve(100);
        for (int d = 0; d < 100; ++d) directions.push_back(random_rational_direction(p.n, rng));
        report.entries.push_back(chord_identity_check(centered, directions));
    }

    report.entries.push_back(
        check_petty_identity(centered, random_rational_frame(p.n, config.seed)));
    report.entries.push_back(
        zhang_entry(centered, config.samples, config.seed, config.threads));
    return report;
}

}  // namespace revlw
