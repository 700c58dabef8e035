#include "revlw/zonotope.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

namespace revlw {

namespace {

std::vector<Facet> origin_facets(const HPolytope& p) {
    return facet_data(translate_origin_interior(p));
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

Zonotope projection_body(const HPolytope& p) {
    const std::vector<Facet> facets = origin_facets(p);
    // Antipodal facet pairs (parallel slabs) contribute parallel segments;
    // their Minkowski sum is one segment with the magnitudes added, so the
    // merged presentation supports the same body with one generator per
    // normal direction.  Sign-canonicalize via the first nonzero coordinate.
    std::vector<VecQ> merged;          // canonical-sign generators, first-seen order
    std::vector<VecQ> primitive_dirs;  // matching canonical facet normals
    for (const Facet& f : facets) {
        VecQ dir = f.a;
        VecQ g = f.omega / 2 * f.a;
        for (Eigen::Index i = 0; i < dir.size(); ++i) {
            if (dir(i) != 0) {
                if (dir(i) < 0) {
                    dir = -dir;
                    g = -g;
                }
                break;
            }
        }
        bool absorbed = false;
        for (std::size_t k = 0; k < merged.size(); ++k) {
            if (primitive_dirs[k] == dir) {
                merged[k] += g;
                absorbed = true;
                break;
            }
        }
        if (!absorbed) {
            merged.push_back(g);
            primitive_dirs.push_back(dir);
        }
    }
    Zonotope z;
    z.n = p.n;
    z.G.resize(p.n, static_cast<int>(merged.size()));
    for (std::size_t j = 0; j < merged.size(); ++j) z.G.col(static_cast<int>(j)) = merged[j];
    return z;
}

Rational support(const Zonotope& z, const VecQ& x) {
    Rational s = 0;
    for (int j = 0; j < z.G.cols(); ++j) s += abs(z.G.col(j).dot(x));
    return s;
}

Rational projection_area_rational(const HPolytope& p, const VecQ& w) {
    if (w.size() != p.n || w.squaredNorm() == 0)
        throw PreconditionError("projection_area_rational: direction must be a nonzero n-vector");
    Rational s = 0;
    for (const Facet& f : origin_facets(p)) s += f.omega * abs(f.a.dot(w));
    return s / 2;
}

double projection_area(const HPolytope& p, const VecD& u) {
    if (u.size() != p.n) throw PreconditionError("projection_area: dimension mismatch");
    if (std::abs(u.squaredNorm() - 1.0) > 1e-9)
        throw PreconditionError("projection_area: direction must be near-unit");
    double s = 0;
    for (const Facet& f : origin_facets(p)) {
        double dot = 0;
        for (int i = 0; i < p.n; ++i) dot += to_double(f.a[i]) * u[i];
        s += to_double(f.omega) * std::abs(dot);
    }
    return s / 2;
}

double projection_hull_oracle(const VPolytope& q, const VecD& u) {
    if (q.n != 2 && q.n != 3)
        throw PreconditionError("projection_hull_oracle: only n = 2 or 3");
    if (std::abs(u.squaredNorm() - 1.0) > 1e-9)
        throw PreconditionError("projection_hull_oracle: direction must be near-unit");

    MatD v(q.n, q.V.cols());
    for (int c = 0; c < q.V.cols(); ++c)
        for (int i = 0; i < q.n; ++i) v(i, c) = to_double(q.V(i, c));

    if (q.n == 2) {
        const Eigen::Vector2d perp(-u[1], u[0]);
        double lo = perp.dot(v.col(0)), hi = lo;
        for (int c = 1; c < v.cols(); ++c) {
            const double t = perp.dot(v.col(c));
            lo = std::min(lo, t);
            hi = std::max(hi, t);
        }
        return hi - lo;
    }

    // n = 3: orthonormal basis of u^perp, then the shoelace area of the hull
    int k = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(u[i]) < std::abs(u[k])) k = i;
    Eigen::Vector3d u3(u[0], u[1], u[2]);
    Eigen::Vector3d b1 = Eigen::Vector3d::Unit(k) - u3[k] * u3;
    b1.normalize();
    const Eigen::Vector3d b2 = u3.cross(b1);

    std::vector<Eigen::Vector2d> pts;
    pts.reserve(static_cast<std::size_t>(v.cols()));
    for (int c = 0; c < v.cols(); ++c)
        pts.emplace_back(b1.dot(v.col(c)), b2.dot(v.col(c)));

    // Andrew's monotone chain
    std::sort(pts.begin(), pts.end(), [](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    const auto cross = [](const Eigen::Vector2d& o, const Eigen::Vector2d& a,
                          const Eigen::Vector2d& b) {
        return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
    };
    std::vector<Eigen::Vector2d> hull(2 * pts.size());
    std::size_t h = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (h >= 2 && cross(hull[h - 2], hull[h - 1], pts[i]) <= 0) --h;
        hull[h++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, lower = h + 1; i-- > 0;) {
        while (h >= lower && cross(hull[h - 2], hull[h - 1], pts[i]) <= 0) --h;
        hull[h++] = pts[i];
    }
    hull.resize(h > 1 ? h - 1 : h);

    double area2 = 0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& a = hull[i];
        const auto& b = hull[(i + 1) % hull.size()];
        area2 += a.x() * b.y() - a.y() * b.x();
    }
    return std::abs(area2) / 2;
}

Rational zonotope_volume(const Zonotope& z, bool force) {
    const int m = static_cast<int>(z.G.cols());
    if (!force && z.n >= 4 && m > 20)
        throw CostGateError("zonotope_volume: binom(m,n) too large; pass force to override");
    Rational total = 0;
    std::vector<int> idx(static_cast<std::size_t>(z.n));
    // iterate n-subsets of [m]
    for (int i = 0; i < z.n; ++i) idx[static_cast<std::size_t>(i)] = i;
    if (z.n > m) return 0;
    for (;;) {
        MatQ sub(z.n, z.n);
        for (int i = 0; i < z.n; ++i) sub.col(i) = z.G.col(idx[static_cast<std::size_t>(i)]);
        total += abs(determinant(sub));
        int i = z.n - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - z.n + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < z.n; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return pow_rational(2, unsigned(z.n)) * total;
}

VPolytope zonotope_to_v(const Zonotope& z, bool force) {
    const int m = static_cast<int>(z.G.cols());
    if (!force && m > 6)
        throw CostGateError("zonotope_to_v: 2^m signed sums too large; pass force to override");
    MatQ pts(z.n, 1 << m);
    for (int mask = 0; mask < (1 << m); ++mask) {
        VecQ x = VecQ::Zero(z.n);
        for (int j = 0; j < m; ++j)
            x += ((mask >> j) & 1) ? VecQ(z.G.col(j)) : VecQ(-z.G.col(j));
        pts.col(mask) = x;
    }
    return make_v_polytope(pts);
}

bool polar_membership(const Zonotope& z, const VecQ& x) { return support(z, x) <= 1; }

McEstimate polar_volume_mc(const Zonotope& z, std::uint64_t samples, std::uint64_t seed,
                           int threads) {
    const int n = z.n;
    const int m = static_cast<int>(z.G.cols());
    if (samples == 0) throw PreconditionError("polar_volume_mc: need samples > 0");
    if (rank(z.G) < n)
        throw DegeneracyError("polar_volume_mc: zonotope is not full-dimensional (polar unbounded)");

    // Exact polar extent along each axis: maximize x_i over sum_j s_j <= 1,
    // -s_j <= g_j.x <= s_j.  Variables (x, s).
    VecQ extent(n);
    {
        MatQ a(2 * m + 1, n + m);
        VecQ b = VecQ::Zero(2 * m + 1);
        a.setZero();
        for (int j = 0; j < m; ++j) {
            a.row(2 * j).head(n) = z.G.col(j).transpose();
            a(2 * j, n + j) = -1;
            a.row(2 * j + 1).head(n) = -z.G.col(j).transpose();
            a(2 * j + 1, n + j) = -1;
        }
        for (int j = 0; j < m; ++j) a(2 * m, n + j) = 1;
        b[2 * m] = 1;
        for (int i = 0; i < n; ++i) {
            VecQ c = VecQ::Zero(n + m);
            c[i] = 1;
            const LpResult r = lp_maximize(a, b, c);
            if (r.status != LpStatus::Optimal || r.value <= 0)
                throw DegeneracyError("polar_volume_mc: degenerate polar extent");
            extent[i] = r.value;
        }
    }

    Rational box_volume = 1;
    for (int i = 0; i < n; ++i) box_volume *= 2 * extent[i];

    // Samples are x_i = extent_i * (2k+1 - 2^53) / 2^53 with k < 2^53; clear
    // denominators once so membership is pure integer arithmetic:
    //   sum_j | sum_i W(j,i) k'_i | <= L  with k'_i = 2k+1 - 2^53.
    MatQ w(m, n);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i) w(j, i) = z.G(i, j) * extent[i];
    Integer l = 1;
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i) l = lcm(l, denominator(w(j, i)));
    std::vector<std::vector<Integer>> wi(static_cast<std::size_t>(m),
                                         std::vector<Integer>(static_cast<std::size_t>(n)));
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < n; ++i)
            wi[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                numerator(w(j, i) * Rational(l));
    const Integer threshold = l << 53;

    constexpr std::uint64_t kChunk = 1 << 16;
    const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
    std::vector<std::uint64_t> chunk_hits(chunks, 0);

    const auto run_chunk = [&](std::uint64_t c) {
        const std::uint64_t begin = c * kChunk;
        const std::uint64_t count = std::min(kChunk, samples - begin);
        std::mt19937_64 rng(splitmix64(seed ^ (c + 0x51ed2701)));
        std::uint64_t hits = 0;
        std::vector<std::int64_t> k(static_cast<std::size_t>(n));
        Integer dot, sum;
        for (std::uint64_t s = 0; s < count; ++s) {
            for (int i = 0; i < n; ++i) {
                const std::uint64_t draw = rng() >> 11;  // 53 bits
                k[static_cast<std::size_t>(i)] =
                    static_cast<std::int64_t>(2 * draw + 1) - (std::int64_t(1) << 53);
            }
            sum = 0;
            bool inside = true;
            for (int j = 0; j < m && inside; ++j) {
                dot = 0;
                for (int i = 0; i < n; ++i)
                    dot += wi[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] *
                           k[static_cast<std::size_t>(i)];
                sum += abs(dot);
                inside = sum <= threshold;
            }
            if (inside) ++hits;
        }
        chunk_hits[c] = hits;
    };

    const int workers = std::max(1, threads);
    if (workers == 1 || chunks == 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&, t] {
                for (std::uint64_t c = static_cast<std::uint64_t>(t); c < chunks;
                     c += static_cast<std::uint64_t>(workers))
                    run_chunk(c);
            });
        for (std::thread& t : pool) t.join();
    }

    std::uint64_t hits = 0;
    for (std::uint64_t h : chunk_hits) hits += h;

    McEstimate out;
    out.hits = hits;
    out.samples = samples;
    out.value = to_double(box_volume * Rational(hits) / Rational(samples));
    const double p_hat = double(hits) / double(samples);
    out.ci95 = 1.96 * to_double(box_volume) *
               std::sqrt(std::max(p_hat * (1 - p_hat), 0.0) / double(samples));
    return out;
}

ZhangReport zhang_check(const HPolytope& p, std::uint64_t samples, std::uint64_t seed,
                        int threads) {
    const HPolytope body = translate_origin_interior(p);
    const Zonotope pi = projection_body(body);
    const McEstimate polar = polar_volume_mc(pi, samples, seed, threads);

    ZhangReport r;
    r.lhs = pow_rational(volume(body), unsigned(p.n - 1));
    const Rational coeff = binomial(2 * p.n, p.n) / pow_rational(Rational(p.n), unsigned(p.n));
    r.rhs = to_double(coeff) / polar.value;
    r.rhs_ci95 = r.rhs * (polar.ci95 / polar.value);
    r.ratio = to_double(r.lhs) / r.rhs;
    r.ratio_ci95 = r.ratio * (polar.ci95 / polar.value);
    return r;
}

}  // namespace revlw
