#include "revlw/frames.hpp"

#include "revlw/linalg.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <thread>

namespace revlw {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::int64_t elapsed_ms(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
}

void run_striped(int threads, std::size_t jobs, const std::function<void(std::size_t)>& work) {
    if (threads <= 1 || jobs <= 1) {
        for (std::size_t j = 0; j < jobs; ++j) work(j);
        return;
    }
    const int workers = std::min<int>(threads, static_cast<int>(jobs));
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&, t]() {
            try {
                for (std::size_t j = static_cast<std::size_t>(t); j < jobs;
                     j += static_cast<std::size_t>(workers)) {
                    work(j);
                }
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

// ---------------------------------------------------------------------------
// Certified grid search
// ---------------------------------------------------------------------------

struct BranchResult {
    bool found = false;
    Rational value;
    MatQ frame;
    std::vector<long long> tuple;
    std::uint64_t evaluations = 0;
};

struct BranchContext {
    const std::vector<Facet>* facets;
    int n;
    Rational rho;
};

Rational support_sum(const std::vector<Facet>& facets, const VecQ& w) {
    Rational sum = 0;
    for (const Facet& f : facets) {
        Rational dot = f.a.dot(w);
        if (dot < 0) dot = -dot;
        sum += f.omega * dot;
    }
    return sum / 2;
}

void branch_recurse(const BranchContext& ctx, const std::vector<int>& choice, int level,
                    MatQ& frame, std::vector<Rational>& prefix,
                    std::vector<std::vector<long long>>& tuples, BranchResult& best) {
    const int n = ctx.n;
    const int extra = level < n - 1 ? 1 : 0;
    MatQ constraints(level + extra, n);
    for (int i = 0; i < level; ++i) constraints.row(i) = frame.col(i).transpose();
    if (extra) constraints.row(level) = (*ctx.facets)[choice[level]].a.transpose();
    const MatQ basis = near_normal_basis(constraints);
    if (basis.cols() == 0) return;  // unreachable: level constraints have rank <= n-1
    for (const auto& [w, tuple] : grid_shell(basis, ctx.rho)) {
        frame.col(level) = w;
        tuples[level] = tuple;
        prefix[level + 1] = prefix[level] * support_sum(*ctx.facets, w);
        if (level + 1 == n) {
            ++best.evaluations;
            if (!best.found || prefix[n] < best.value) {
                best.found = true;
                best.value = prefix[n];
                best.frame = frame;
                best.tuple.clear();
                for (const auto& t : tuples) {
                    best.tuple.insert(best.tuple.end(), t.begin(), t.end());
                }
            }
        } else {
            branch_recurse(ctx, choice, level + 1, frame, prefix, tuples, best);
        }
    }
}

std::vector<std::vector<int>> facet_multisets(int m, int size) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(size);
    const std::function<void(int, int)> rec = [&](int pos, int start) {
        if (pos == size) {
            out.push_back(cur);
            return;
        }
        for (int j = start; j < m; ++j) {
            cur[pos] = j;
            rec(pos + 1, j);
        }
    };
    rec(0, 0);
    return out;
}

Rational minimal_feasible_tau(int n, int m, const Rational& budget) {
    Rational hi = 1;
    while (certified_search_bound(n, m, hi) > budget) hi *= 2;
    Rational lo = hi / 2;
    for (int iter = 0; iter < 100; ++iter) {
        const Rational mid = (lo + hi) / 2;
        if (certified_search_bound(n, m, mid) <= budget) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

// ---------------------------------------------------------------------------
// Plane-sweep heuristic
// ---------------------------------------------------------------------------

struct SweepBody {
    MatD cols;       // zonotope generators or body vertices, one per column
    bool symmetric;  // true: extent(u) = 2 sum |c.u|; false: max - min
};

double extent(const SweepBody& body, const VecD& u) {
    const VecD dots = body.cols.transpose() * u;
    if (body.symmetric) return 2.0 * dots.cwiseAbs().sum();
    return dots.maxCoeff() - dots.minCoeff();
}

double box_volume(const SweepBody& body, const MatD& frame) {
    double product = 1.0;
    for (Eigen::Index k = 0; k < frame.cols(); ++k) product *= extent(body, frame.col(k));
    return product;
}

double plane_extent(const SweepBody& body, const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                    double dx, double dy) {
    if (body.symmetric) {
        return 2.0 * (a * dx + b * dy).cwiseAbs().sum();
    }
    const Eigen::VectorXd dots = a * dx + b * dy;
    return dots.maxCoeff() - dots.minCoeff();
}

void orthonormalize(MatD& frame) {
    for (Eigen::Index k = 0; k < frame.cols(); ++k) {
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index j = 0; j < k; ++j) {
                frame.col(k) -= frame.col(j).dot(frame.col(k)) * frame.col(j);
            }
        }
        frame.col(k) /= frame.col(k).norm();
    }
}

// One multi-pass sweep from a start frame; returns the reached box volume.
double sweep(const SweepBody& body, MatD& frame, double tol, std::uint64_t& evaluations) {
    const int n = static_cast<int>(frame.cols());
    double current = box_volume(body, frame);
    for (int pass = 0; pass < 256; ++pass) {
        const double previous = current;
        for (int i = 0; i < n; ++i) {
            for (int k = i + 1; k < n; ++k) {
                const Eigen::VectorXd a = body.cols.transpose() * frame.col(i);
                const Eigen::VectorXd b = body.cols.transpose() * frame.col(k);
                double best_val = plane_extent(body, a, b, 1, 0) * plane_extent(body, a, b, 0, 1);
                double best_x = 1, best_y = 0;
                ++evaluations;
                const auto consider = [&](double cx, double cy) {
                    // sqrt(x) scales exactly under powers of four, so uniform
                    // power-of-two dilations of the body reproduce the sweep
                    // bit for bit (hypot would not guarantee that).
                    const double r = std::sqrt(cx * cx + cy * cy);
                    if (!(r > 1e-14)) return;
                    const double dx = cx / r, dy = cy / r;
                    const double val = plane_extent(body, a, b, dx, dy) *
                                       plane_extent(body, a, b, -dy, dx);
                    ++evaluations;
                    if (val < best_val) {
                        best_val = val;
                        best_x = dx;
                        best_y = dy;
                    }
                };
                if (body.symmetric) {
                    for (Eigen::Index j = 0; j < a.size(); ++j) consider(a(j), b(j));
                } else {
                    for (Eigen::Index p = 0; p < a.size(); ++p) {
                        for (Eigen::Index q = p + 1; q < a.size(); ++q) {
                            consider(a(p) - a(q), b(p) - b(q));
                        }
                    }
                }
                if (best_y != 0 || best_x != 1) {
                    const VecD ui = frame.col(i), uk = frame.col(k);
                    frame.col(i) = best_x * ui + best_y * uk;
                    frame.col(k) = -best_y * ui + best_x * uk;
                }
            }
        }
        orthonormalize(frame);
        current = box_volume(body, frame);
        if (previous - current <= tol * previous) break;
    }
    return current;
}

struct MultiStartOutcome {
    MatD frame;
    double value = 0;
    std::uint64_t evaluations = 0;
};

MultiStartOutcome multi_start_sweep(const SweepBody& body, int n, const SearchConfig& config) {
    const int restarts = std::max(1, config.restarts);
    std::vector<MultiStartOutcome> outcomes(static_cast<std::size_t>(restarts));
    run_striped(config.threads, outcomes.size(), [&](std::size_t r) {
        MatD frame = random_frame(n, mix64(config.seed) + r);
        MultiStartOutcome& out = outcomes[r];
        out.value = sweep(body, frame, config.sweep_tol, out.evaluations);
        out.frame = frame;
    });
    MultiStartOutcome best = outcomes[0];
    std::uint64_t total = 0;
    for (const MultiStartOutcome& out : outcomes) {
        total += out.evaluations;
        if (out.value < best.value) best = out;  // first minimum wins ties
    }
    best.evaluations = total;
    return best;
}

SweepBody zonotope_body(const Zonotope& z) {
    SweepBody body;
    body.symmetric = true;
    body.cols.resize(z.n, z.G.cols());
    for (Eigen::Index j = 0; j < z.G.cols(); ++j) {
        for (int i = 0; i < z.n; ++i) body.cols(i, j) = to_double(z.G(i, j));
    }
    return body;
}

SweepBody vertex_body(const VPolytope& v) {
    SweepBody body;
    body.symmetric = false;
    body.cols.resize(v.n, v.V.cols());
    for (Eigen::Index j = 0; j < v.V.cols(); ++j) {
        for (int i = 0; i < v.n; ++i) body.cols(i, j) = to_double(v.V(i, j));
    }
    return body;
}

// Round to dyadics, re-orthogonalize exactly, and push norms into
// [1, 1+2^-58] so the exact pseudo average certifies psi >= Psi(P).
MatQ certify_frame(const MatD& frame) {
    MatQ dyadic(frame.rows(), frame.cols());
    for (Eigen::Index k = 0; k < frame.cols(); ++k) {
        dyadic.col(k) = round_dyadic(frame.col(k), 40);
    }
    MatQ exact = orthogonalize(dyadic);
    for (Eigen::Index k = 0; k < exact.cols(); ++k) {
        exact.col(k) = scale_norm_into_unit_band(exact.col(k));
        const Interval root = sqrt_enclosure(exact.col(k).squaredNorm(), 60);
        exact.col(k) /= root.lo;  // |w| in [1, sqrt(hi)/lo]
    }
    return exact;
}

}  // namespace

SearchResult structured_search(const HPolytope& p_scaled, const Rational& tau,
                               const SearchConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    if (tau <= 0 || tau > 1) throw PreconditionError("tau must lie in (0, 1]");
    const int n = p_scaled.n;
    if (n < 2) throw PreconditionError("certified search requires dimension >= 2");

    const HPolytope p = translate_origin_interior(p_scaled);
    const Rational window_hi = 1 + Rational(1, n);
    Interval s = surface_area(p, 80);
    if (s.lo < 1 || s.hi > window_hi) {
        s = surface_area(p, 200);  // retry tighter before rejecting
        if (s.lo < 1 || s.hi > window_hi) {
            throw PreconditionError(
                "certified search requires the surface area in [1, 1 + 1/n]; "
                "rescale the body first");
        }
    }

    const std::vector<Facet> facets = facet_data(p);
    const int m = static_cast<int>(facets.size());
    const Rational bound = certified_search_bound(n, m, tau);
    const Rational budget = Rational(Integer(config.budget));
    if (bound > budget) {
        const Rational feasible = minimal_feasible_tau(n, m, budget);
        throw BudgetError(
            "certified search bound " + format_rational(bound) + " exceeds budget " +
                format_rational(budget) + "; smallest feasible tau at this budget is about " +
                std::to_string(to_double(feasible)) +
                (feasible > 1 ? " (> 1, so no valid tau fits; raise the budget)" : ""),
            feasible);
    }

    const Rational rho =
        tau * pow_rational(2, n) / (euler_upper_bound() * pow_rational(n, n));
    const std::vector<std::vector<int>> choices = facet_multisets(m, n - 1);
    std::vector<BranchResult> branches(choices.size());
    BranchContext ctx{&facets, n, rho};
    run_striped(config.threads, choices.size(), [&](std::size_t r) {
        MatQ frame(n, n);
        std::vector<Rational> prefix(static_cast<std::size_t>(n) + 1);
        prefix[0] = 1;
        std::vector<std::vector<long long>> tuples(static_cast<std::size_t>(n));
        branch_recurse(ctx, choices[r], 0, frame, prefix, tuples, branches[r]);
    });

    SearchResult result;
    result.mode = "certified";
    result.tau = tau;
    std::uint64_t total = 0;
    bool found = false;
    std::size_t winner = 0;
    for (std::size_t r = 0; r < branches.size(); ++r) {
        total += branches[r].evaluations;
        if (!branches[r].found) continue;
        if (!found || branches[r].value < result.psi) {
            found = true;
            winner = r;
            result.psi = branches[r].value;
        }
    }
    if (!found) throw DegeneracyError("certified search produced no grid points");
    result.frame = branches[winner].frame;
    result.r_choice = choices[winner];
    result.evaluations = total;
    result.lambda_lower = pow_rational(volume(p), n - 1) / result.psi;
    result.wall_ms = elapsed_ms(start);
    return result;
}

SearchResult lw_approx(const HPolytope& p, const Rational& delta, const Rational& nu,
                       const SearchConfig& config) {
    if (delta <= 0 || delta >= 1) throw PreconditionError("delta must lie in (0, 1)");
    if (nu < 0) throw PreconditionError("nu must be nonnegative");
    const HPolytope centered = translate_origin_interior(p);
    const Rational iso = iso_lower_bound(centered);
    Rational nu_eff = nu;
    bool valid = true;
    if (nu_eff == 0) {
        nu_eff = iso;
    } else if (nu_eff > iso) {
        valid = false;  // cannot certify the caller's isoperimetric bound
    }
    const Rational tau = std::min(Rational(1), Rational(nu_eff * delta));
    const auto [sigma, scaled] = scale_to_unit_surface(centered);
    SearchResult result = structured_search(scaled, tau, config);
    result.delta = delta;
    result.sigma = sigma;
    result.certificate_valid = valid;
    return result;
}

SearchResult heuristic_search(const HPolytope& p, const SearchConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    if (p.n < 2) throw PreconditionError("heuristic search requires dimension >= 2");
    const HPolytope centered = translate_origin_interior(p);
    const std::vector<Facet> facets = facet_data(centered);
    const SweepBody body = zonotope_body(projection_body(centered));
    const MultiStartOutcome best = multi_start_sweep(body, p.n, config);

    SearchResult result;
    result.mode = "heuristic";
    result.tau = 0;
    result.frame = certify_frame(best.frame);
    result.psi = pseudo_average(facets, result.frame);
    result.lambda_lower = pow_rational(volume(centered), p.n - 1) / result.psi;
    result.evaluations = best.evaluations;
    result.wall_ms = elapsed_ms(start);
    return result;
}

MinBoxResult min_box(const HPolytope& p, BoxMode mode, const SearchConfig& config) {
    MinBoxResult result;
    const HPolytope centered = translate_origin_interior(p);
    const Rational vol = volume(centered);
    const Rational two_n = pow_rational(2, p.n);

    if (p.n == 2) {
        result.exact = true;
        if (mode == BoxMode::Body) {
            const Planar2dResult planar = lw_exact_2d(h_to_v(centered));
            result.box_volume_exact = planar.min_rect_area;
            result.direction_exact = planar.direction;
        } else {
            const Zonotope z = projection_body(centered);
            bool have = false;
            for (Eigen::Index j = 0; j < z.G.cols(); ++j) {
                const VecQ v = z.G.col(j);
                VecQ v_perp(2);
                v_perp << -v(1), v(0);
                const Rational area =
                    4 * support(z, v) * support(z, v_perp) / v.squaredNorm();
                if (!have || area < result.box_volume_exact) {
                    have = true;
                    result.box_volume_exact = area;
                    result.direction_exact = v;
                }
            }
            if (!have) throw DegeneracyError("projection body has no generators");
        }
        const double norm = std::hypot(to_double(result.direction_exact(0)),
                                       to_double(result.direction_exact(1)));
        result.frame.resize(2, 2);
        result.frame(0, 0) = to_double(result.direction_exact(0)) / norm;
        result.frame(1, 0) = to_double(result.direction_exact(1)) / norm;
        result.frame(0, 1) = -result.frame(1, 0);
        result.frame(1, 1) = result.frame(0, 0);
        result.box_volume = to_double(result.box_volume_exact);
        result.phi = mode == BoxMode::Body
                         ? to_double(vol / result.box_volume_exact)
                         : 0;
        result.psi = mode == BoxMode::ProjectionBody
                         ? to_double(result.box_volume_exact / two_n)
                         : 0;
        return result;
    }

    const SweepBody body = mode == BoxMode::Body ? vertex_body(h_to_v(centered))
                                                 : zonotope_body(projection_body(centered));
    const MultiStartOutcome best = multi_start_sweep(body, p.n, config);
    result.frame = best.frame;
    result.box_volume = best.value;
    result.phi = mode == BoxMode::Body ? to_double(vol) / best.value : 0;
    result.psi = mode == BoxMode::ProjectionBody ? best.value / to_double(two_n) : 0;
    return result;
}

}  // namespace revlw
