#include "revlw/frames.hpp"

#include "revlw/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace revlw {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::vector<Facet> centered_facets(const HPolytope& p) {
    return facet_data(translate_origin_interior(p));
}

// Largest t >= 0 with t^2 * c <= bound; -1 when even t = 0 fails.
long long largest_step(const Rational& bound, const Rational& c) {
    if (bound < 0) return -1;
    const Rational ratio = bound / c;
    const Integer floor_ratio = numerator(ratio) / denominator(ratio);
    long long t = sqrt(floor_ratio).convert_to<long long>();
    while (Rational(t + 1) * (t + 1) * c <= bound) ++t;
    while (t > 0 && Rational(t) * t * c > bound) --t;
    return t;
}

// Smallest t >= 0 with t^2 * c >= need.
long long smallest_step(const Rational& need, const Rational& c) {
    if (need <= 0) return 0;
    long long t = largest_step(need, c);
    if (t < 0) t = 0;
    while (Rational(t) * t * c < need) ++t;
    return t;
}

int first_nonzero_sign(const VecQ& w) {
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (w(i) != 0) return w(i) > 0 ? 1 : -1;
    }
    return 0;
}

}  // namespace

void validate_frame(const MatD& frame) {
    if (frame.rows() != frame.cols() || frame.rows() == 0) {
        throw PreconditionError("frame must be a square nonempty matrix");
    }
    const MatD gram = frame.transpose() * frame;
    const double defect = (gram - MatD::Identity(frame.cols(), frame.cols()))
                              .cwiseAbs()
                              .maxCoeff();
    if (!(defect <= 1e-12)) {
        throw PreconditionError("frame is not orthonormal (defect " +
                                std::to_string(defect) + " > 1e-12)");
    }
}

double psi(const Zonotope& projection, const MatD& frame) {
    validate_frame(frame);
    if (frame.rows() != projection.n) {
        throw PreconditionError("frame dimension does not match the projection body");
    }
    MatD gens(projection.n, projection.G.cols());
    for (Eigen::Index j = 0; j < projection.G.cols(); ++j) {
        for (int i = 0; i < projection.n; ++i) gens(i, j) = to_double(projection.G(i, j));
    }
    double product = 1.0;
    for (Eigen::Index k = 0; k < frame.cols(); ++k) {
        product *= (gens.transpose() * frame.col(k)).cwiseAbs().sum();
    }
    return product;
}

double psi(const HPolytope& p, const MatD& frame) {
    return psi(projection_body(p), frame);
}

double lambda_ratio(const HPolytope& p, const MatD& frame) {
    const double vol = to_double(volume(p));
    return std::pow(vol, p.n - 1) / psi(p, frame);
}

Rational pseudo_average(const std::vector<Facet>& facets, const MatQ& w) {
    if (w.cols() == 0) throw PreconditionError("pseudo average needs at least one direction");
    Rational product = 1;
    for (Eigen::Index k = 0; k < w.cols(); ++k) {
        Rational sum = 0;
        for (const Facet& f : facets) {
            Rational dot = f.a.dot(w.col(k));
            if (dot < 0) dot = -dot;
            sum += f.omega * dot;
        }
        product *= sum / 2;
    }
    return product;
}

Rational pseudo_average(const HPolytope& p, const MatQ& w) {
    return pseudo_average(centered_facets(p), w);
}

void validate_pseudo_frame(const PseudoFrame& w) {
    const Eigen::Index n = w.W.cols();
    if (w.W.rows() != n || n == 0) {
        throw PreconditionError("pseudo frame must hold n columns in dimension n");
    }
    if (w.rho <= 0) throw PreconditionError("pseudo frame needs rho > 0");
    const Rational hi = (1 + w.rho) * (1 + w.rho);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Rational norm2 = w.W.col(i).squaredNorm();
        if (norm2 < 1 || norm2 > hi) {
            throw PreconditionError("pseudo frame column " + std::to_string(i) +
                                    " has squared norm outside [1, (1+rho)^2]");
        }
        for (Eigen::Index k = i + 1; k < n; ++k) {
            if (w.W.col(i).dot(w.W.col(k)) != 0) {
                throw PreconditionError("pseudo frame columns are not exactly orthogonal");
            }
        }
    }
}

Planar2dResult lw_exact_2d(const VPolytope& polygon) {
    if (polygon.n != 2) throw PreconditionError("planar solver requires dimension 2");
    const std::vector<HullFacet> edges = hull_facets(polygon.V);
    Planar2dResult best;
    bool have = false;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const VecQ& a = edges[e].a;
        VecQ v(2);
        v << -a(1), a(0);
        Rational lo_v = v.dot(polygon.V.col(0)), hi_v = lo_v;
        Rational lo_a = a.dot(polygon.V.col(0)), hi_a = lo_a;
        for (Eigen::Index j = 1; j < polygon.V.cols(); ++j) {
            const Rational sv = v.dot(polygon.V.col(j));
            const Rational sa = a.dot(polygon.V.col(j));
            lo_v = std::min(lo_v, sv);
            hi_v = std::max(hi_v, sv);
            lo_a = std::min(lo_a, sa);
            hi_a = std::max(hi_a, sa);
        }
        const Rational area = (hi_v - lo_v) * (hi_a - lo_a) / a.squaredNorm();
        if (!have || area < best.min_rect_area) {
            have = true;
            best.min_rect_area = area;
            best.edge_index = static_cast<int>(e);
            best.direction = v;
        }
    }
    best.lambda = volume(polygon) / best.min_rect_area;
    return best;
}

Planar2dResult lw_exact_2d(const HPolytope& polygon) {
    return lw_exact_2d(h_to_v(polygon));
}

MinPerimResult min_perimeter_rect_2d(const VPolytope& polygon) {
    if (polygon.n != 2) throw PreconditionError("rectangle solver requires dimension 2");
    const std::vector<HullFacet> edges = hull_facets(polygon.V);
    MinPerimResult best;
    bool have = false;
    for (const HullFacet& edge : edges) {
        const VecQ& a = edge.a;
        VecQ v(2);
        v << -a(1), a(0);
        Rational lo_v = v.dot(polygon.V.col(0)), hi_v = lo_v;
        Rational lo_a = a.dot(polygon.V.col(0)), hi_a = lo_a;
        for (Eigen::Index j = 1; j < polygon.V.cols(); ++j) {
            const Rational sv = v.dot(polygon.V.col(j));
            const Rational sa = a.dot(polygon.V.col(j));
            lo_v = std::min(lo_v, sv);
            hi_v = std::max(hi_v, sv);
            lo_a = std::min(lo_a, sa);
            hi_a = std::max(hi_a, sa);
        }
        const Rational width_sum = (hi_v - lo_v) + (hi_a - lo_a);
        const Rational per_sq = 4 * width_sum * width_sum / a.squaredNorm();
        if (!have || per_sq < best.perimeter_sq) {
            have = true;
            best.perimeter_sq = per_sq;
            best.direction = v;
        }
    }
    return best;
}

MatQ near_normal_basis(const MatQ& constraint_rows) {
    const MatQ kernel = null_space(constraint_rows);
    if (kernel.cols() == 0) return MatQ(constraint_rows.cols(), 0);
    MatQ basis = orthogonalize(kernel);
    for (Eigen::Index k = 0; k < basis.cols(); ++k) {
        basis.col(k) = scale_norm_into_unit_band(basis.col(k));
    }
    return basis;
}

std::vector<std::pair<VecQ, std::vector<long long>>> grid_shell(const MatQ& basis,
                                                                const Rational& rho) {
    if (rho <= 0) throw PreconditionError("grid shell needs rho > 0");
    const Eigen::Index n = basis.rows();
    const Eigen::Index q = basis.cols();
    if (q == 0) return {};
    const Rational alpha = rho / (2 * Rational(static_cast<int>(n)));
    std::vector<Rational> c(q);  // c_k = alpha^2 |x_k|^2
    for (Eigen::Index k = 0; k < q; ++k) {
        const Rational norm2 = basis.col(k).squaredNorm();
        if (norm2 < 1 || norm2 > 4) {
            throw PreconditionError("grid shell basis norms must satisfy 1 <= |x|^2 <= 4");
        }
        for (Eigen::Index i = k + 1; i < q; ++i) {
            if (basis.col(k).dot(basis.col(i)) != 0) {
                throw PreconditionError("grid shell basis must be exactly orthogonal");
            }
        }
        c[k] = alpha * alpha * norm2;
    }
    const Rational outer = (1 + rho) * (1 + rho);

    std::vector<std::pair<VecQ, std::vector<long long>>> shell;
    std::vector<long long> tuple(q, 0);
    VecQ w = VecQ::Zero(n);

    const auto emit = [&](const VecQ& point) {
        if (first_nonzero_sign(point) < 0) return;  // keep one antipodal representative
        shell.emplace_back(point, tuple);
    };

    const std::function<void(Eigen::Index, Rational)> recurse =
        [&](Eigen::Index k, Rational used) {
            const Rational remaining = outer - used;
            const long long top = largest_step(remaining, c[k]);
            if (top < 0) return;
            if (k + 1 == q) {
                // Last coordinate: skip the gap |t| < t_min where |w| < 1.
                const long long t_min = smallest_step(1 - used, c[k]);
                for (long long t = -top; t <= top; ++t) {
                    if (t > -t_min && t < t_min) t = t_min;  // jump the hollow core
                    if (t > top) break;
                    tuple[k] = t;
                    const VecQ point = w + (t * alpha) * basis.col(k);
                    emit(point);
                }
                tuple[k] = 0;
                return;
            }
            const VecQ saved = w;
            for (long long t = -top; t <= top; ++t) {
                tuple[k] = t;
                w = saved + (t * alpha) * basis.col(k);
                recurse(k + 1, used + Rational(t) * t * c[k]);
            }
            tuple[k] = 0;
            w = saved;
        };
    recurse(0, 0);
    return shell;
}

Rational certified_search_bound(int n, int facet_count, const Rational& tau) {
    if (n < 2 || facet_count < n + 1) {
        throw PreconditionError("certified search bound needs n >= 2 and at least n+1 facets");
    }
    if (tau <= 0) throw PreconditionError("certified search bound needs tau > 0");
    // Per-line grid cardinality bound 8 e n^{n+1} / (tau 2^n), raised to the
    // total shell dimension ((n-1)n + 2)/2, once per facet multiset, with the
    // antipodal halving applied at each of the n levels.
    const Rational per_line =
        euler_upper_bound() * pow_rational(n, n + 1) * 8 / (tau * pow_rational(2, n));
    const int shell_dims = ((n - 1) * n + 2) / 2;
    const Rational branches = Rational(binomial(facet_count + n - 2, n - 1));
    return branches * pow_rational(per_line, shell_dims) / pow_rational(2, n);
}

EdgeFrameResult crosspolytope_edge_frame(int n) {
    if (n < 2) throw PreconditionError("crosspolytope edge frame needs n >= 2");
    const int rows = 1 << n;
    MatQ a(rows, n);
    VecQ b = VecQ::Constant(rows, 1);
    for (int r = 0; r < rows; ++r) {
        for (int i = 0; i < n; ++i) a(r, i) = (r >> i) & 1 ? -1 : 1;
    }
    const HPolytope cross = make_h_polytope(a, b);

    MatQ directions = MatQ::Zero(n, n);
    const int pairs = n / 2;
    for (int i = 0; i < pairs; ++i) {
        directions(2 * i, 2 * i) = 1;
        directions(2 * i + 1, 2 * i) = 1;
        directions(2 * i, 2 * i + 1) = 1;
        directions(2 * i + 1, 2 * i + 1) = -1;
    }
    if (n % 2 == 1) directions(n - 1, n - 1) = 1;

    EdgeFrameResult result;
    result.directions = directions;
    Rational product = 1;
    for (int k = 0; k < n; ++k) {
        product *= projection_area_rational(cross, directions.col(k));
    }
    // Each paired direction has norm sqrt(2), so the norm product is 2^pairs.
    result.psi = product / pow_rational(2, pairs);
    result.lambda = pow_rational(volume(cross), n - 1) / result.psi;
    return result;
}

MatD random_frame(int n, std::uint64_t seed) {
    if (n < 1) throw PreconditionError("random frame needs n >= 1");
    std::mt19937_64 rng(mix64(seed));
    const auto uniform = [&rng]() { return (rng() >> 11) * 0x1p-53; };
    constexpr double two_pi = 6.283185307179586476925286766559;
    const auto gaussian = [&]() {
        const double u1 = ((rng() >> 11) + 1) * 0x1p-53;
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    };
    MatD frame(n, n);
    while (true) {
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < n; ++k) frame(i, k) = gaussian();
        }
        bool ok = true;
        for (int k = 0; k < n && ok; ++k) {
            for (int j = 0; j < k; ++j) {
                frame.col(k) -= frame.col(j).dot(frame.col(k)) * frame.col(j);
            }
            // Second pass keeps the orthogonality defect at machine precision.
            for (int j = 0; j < k; ++j) {
                frame.col(k) -= frame.col(j).dot(frame.col(k)) * frame.col(j);
            }
            const double norm = frame.col(k).norm();
            if (norm < 1e-6) {
                ok = false;
                break;
            }
            frame.col(k) /= norm;
        }
        if (ok) return frame;
    }
}

}  // namespace revlw
