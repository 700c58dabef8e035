#include "revlw/polytope.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace revlw {

namespace {

struct VecQLess {
    bool operator()(const VecQ& x, const VecQ& y) const {
        for (int i = 0; i < x.size() && i < y.size(); ++i) {
            if (x[i] < y[i]) return true;
            if (x[i] > y[i]) return false;
        }
        return x.size() < y.size();
    }
};

template <typename Visit>
void for_each_subset(int universe, int size, Visit&& visit) {
    if (size < 0 || size > universe) return;
    std::vector<int> idx(static_cast<std::size_t>(size));
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        visit(idx);
        int i = size - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == universe - size + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < size; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

/** Exact volume of conv(columns of pts); pts must be the full vertex set. */
Rational volume_of_points(const MatQ& pts) {
    const int n = static_cast<int>(pts.rows());
    if (n == 1) {
        Rational lo = pts(0, 0), hi = pts(0, 0);
        for (int i = 1; i < pts.cols(); ++i) {
            lo = std::min(lo, pts(0, i), std::less<Rational>());
            hi = std::max(hi, pts(0, i), std::less<Rational>());
        }
        return hi - lo;
    }
    const std::vector<HullFacet> facets = hull_facets(pts);
    const VecQ apex = pts.col(0);
    Rational total = 0;
    for (const HullFacet& f : facets) {
        const Rational slack = f.beta - f.a.dot(apex);
        if (slack == 0) continue;  // facet contains the apex; zero-height cone
        int drop = 0;
        while (f.a[drop] == 0) ++drop;
        MatQ proj(n - 1, static_cast<int>(f.vertices.size()));
        for (std::size_t c = 0; c < f.vertices.size(); ++c) {
            int r = 0;
            for (int i = 0; i < n; ++i) {
                if (i == drop) continue;
                proj(r++, static_cast<int>(c)) = pts(i, f.vertices[c]);
            }
        }
        total += slack * volume_of_points(proj) / abs(f.a[drop]);
    }
    return total / n;
}

/**
 * Vertex enumeration of { x : A x <= b } by exhausting row subsets; the
 * system need not be irredundant but must be bounded.  Columns come out
 * sorted lexicographically.
 */
MatQ enumerate_vertices(const MatQ& a, const VecQ& b) {
    const int n = static_cast<int>(a.cols());
    const int m = static_cast<int>(a.rows());
    std::set<VecQ, VecQLess> found;
    for_each_subset(m, n, [&](const std::vector<int>& idx) {
        MatQ sub(n, n);
        VecQ rhs(n);
        for (int i = 0; i < n; ++i) {
            sub.row(i) = a.row(idx[static_cast<std::size_t>(i)]);
            rhs[i] = b[idx[static_cast<std::size_t>(i)]];
        }
        const auto x = solve(sub, rhs);
        if (!x) return;
        for (int j = 0; j < m; ++j)
            if (a.row(j).dot(*x) > b[j]) return;
        found.insert(*x);
    });
    MatQ v(n, static_cast<int>(found.size()));
    int c = 0;
    for (const VecQ& x : found) v.col(c++) = x;
    return v;
}

/** Margin LP: maximize t s.t. a_j.x + |a_j|_1 t <= b_j; (point, margin). */
std::pair<VecQ, Rational> margin_point(const MatQ& a, const VecQ& b) {
    const int n = static_cast<int>(a.cols());
    const int m = static_cast<int>(a.rows());
    MatQ lp(m, n + 1);
    lp.leftCols(n) = a;
    for (int j = 0; j < m; ++j) {
        Rational norm1 = 0;
        for (int i = 0; i < n; ++i) norm1 += abs(a(j, i));
        lp(j, n) = norm1;
    }
    VecQ c = VecQ::Zero(n + 1);
    c[n] = 1;
    const LpResult r = lp_maximize(lp, b, c);
    if (r.status == LpStatus::Infeasible) throw DegeneracyError("polytope is empty");
    if (r.status == LpStatus::Unbounded)
        throw BoundednessError("margin LP unbounded; polytope is unbounded");
    return {r.x.head(n), r.value};
}

void check_bounded(const MatQ& a, const VecQ& b) {
    const int n = static_cast<int>(a.cols());
    for (int i = 0; i < n; ++i) {
        for (int sign : {1, -1}) {
            VecQ c = VecQ::Zero(n);
            c[i] = sign;
            const LpResult r = lp_maximize(a, b, c);
            if (r.status == LpStatus::Unbounded)
                throw BoundednessError("polytope is unbounded along a coordinate axis");
            if (r.status == LpStatus::Infeasible) throw DegeneracyError("polytope is empty");
        }
    }
}

}  // namespace

std::vector<HullFacet> hull_facets(const MatQ& points) {
    const int n = static_cast<int>(points.rows());
    const int k = static_cast<int>(points.cols());
    if (n < 1) throw PreconditionError("hull_facets: dimension must be positive");
    if (k < n + 1) throw DegeneracyError("hull_facets: too few points for a full-dimensional hull");

    const VecQ centroid = points.rowwise().sum() / k;
    const MatQ w = points.colwise() - centroid;
    if (rank(w) < n) throw DegeneracyError("hull_facets: points do not affinely span");

    // Vertices of the polar { y : w_i . y <= 1 } are in bijection with the
    // facets of the hull; the centroid is interior, so the polar is bounded.
    std::set<VecQ, VecQLess> polar_vertices;
    for_each_subset(k, n, [&](const std::vector<int>& idx) {
        MatQ sub(n, n);
        for (int i = 0; i < n; ++i) sub.row(i) = w.col(idx[static_cast<std::size_t>(i)]).transpose();
        const auto y = solve(sub, VecQ::Ones(n));
        if (!y) return;
        for (int i = 0; i < k; ++i)
            if (w.col(i).dot(*y) > 1) return;
        polar_vertices.insert(*y);
    });

    std::vector<HullFacet> facets;
    facets.reserve(polar_vertices.size());
    for (const VecQ& y : polar_vertices) {
        HullFacet f;
        f.a = primitive_integer_vector(y);
        int i = 0;
        while (y[i] == 0) ++i;
        const Rational scale = f.a[i] / y[i];
        f.beta = scale * (1 + y.dot(centroid));
        for (int c = 0; c < k; ++c)
            if (f.a.dot(points.col(c)) == f.beta) f.vertices.push_back(c);
        facets.push_back(std::move(f));
    }
    std::sort(facets.begin(), facets.end(), [](const HullFacet& x, const HullFacet& y) {
        return VecQLess{}(x.a, y.a);
    });
    return facets;
}

VPolytope make_v_polytope(const MatQ& points) {
    const int n = static_cast<int>(points.rows());
    const std::vector<HullFacet> facets = hull_facets(points);

    // A point is extreme iff its incident facet normals span R^n.
    std::set<VecQ, VecQLess> extreme;
    for (int c = 0; c < points.cols(); ++c) {
        MatQ normals(n, 0);
        for (const HullFacet& f : facets) {
            if (f.a.dot(points.col(c)) == f.beta) {
                normals.conservativeResize(Eigen::NoChange, normals.cols() + 1);
                normals.col(normals.cols() - 1) = f.a;
            }
        }
        if (normals.cols() >= n && rank(normals) == n) extreme.insert(points.col(c));
    }
    VPolytope q;
    q.n = n;
    q.V.resize(n, static_cast<int>(extreme.size()));
    int c = 0;
    for (const VecQ& v : extreme) q.V.col(c++) = v;
    return q;
}

HPolytope make_h_polytope(const MatQ& a, const VecQ& b) {
    const int n = static_cast<int>(a.cols());
    const int m = static_cast<int>(a.rows());
    if (n < 1 || m < 1 || b.size() != m)
        throw PreconditionError("make_h_polytope: dimension mismatch");

    // Scale rows to primitive integer normals, merging duplicate directions.
    std::vector<VecQ> rows;
    std::vector<Rational> offs;
    for (int j = 0; j < m; ++j) {
        VecQ row = a.row(j).transpose();
        if (row.squaredNorm() == 0) throw PreconditionError("make_h_polytope: zero normal row");
        const VecQ prim = primitive_integer_vector(row);
        int i = 0;
        while (row[i] == 0) ++i;
        const Rational beta = b[j] * (prim[i] / row[i]);
        bool merged = false;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r] == prim) {
                offs[r] = std::min(offs[r], beta, std::less<Rational>());
                merged = true;
                break;
            }
        }
        if (!merged) {
            rows.push_back(prim);
            offs.push_back(beta);
        }
    }

    MatQ aa(static_cast<int>(rows.size()), n);
    VecQ bb(static_cast<int>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        aa.row(static_cast<int>(r)) = rows[r].transpose();
        bb[static_cast<int>(r)] = offs[r];
    }

    check_bounded(aa, bb);
    if (margin_point(aa, bb).second <= 0)
        throw DegeneracyError("make_h_polytope: polytope is not full-dimensional");

    // Drop redundant rows one at a time; the feasible set never changes.
    for (int j = 0; j < aa.rows();) {
        const int mm = static_cast<int>(aa.rows());
        MatQ test(mm, n);
        VecQ rhs(mm);
        int out = 0;
        for (int r = 0; r < mm; ++r) {
            if (r == j) continue;
            test.row(out) = aa.row(r);
            rhs[out++] = bb[r];
        }
        test.row(out) = aa.row(j);  // relaxed copy keeps the LP bounded
        rhs[out] = bb[j] + 1;
        const LpResult r = lp_maximize(test, rhs, VecQ(aa.row(j).transpose()));
        if (r.status == LpStatus::Optimal && r.value <= bb[j]) {
            // redundant: remove row j
            MatQ na(mm - 1, n);
            VecQ nb(mm - 1);
            int w = 0;
            for (int rr = 0; rr < mm; ++rr) {
                if (rr == j) continue;
                na.row(w) = aa.row(rr);
                nb[w++] = bb[rr];
            }
            aa = std::move(na);
            bb = std::move(nb);
        } else {
            ++j;
        }
    }

    HPolytope p;
    p.n = n;
    p.A = std::move(aa);
    p.b = std::move(bb);
    return p;
}

HPolytope v_to_h(const VPolytope& q) {
    const std::vector<HullFacet> facets = hull_facets(q.V);
    HPolytope p;
    p.n = q.n;
    p.A.resize(static_cast<int>(facets.size()), q.n);
    p.b.resize(static_cast<int>(facets.size()));
    for (std::size_t j = 0; j < facets.size(); ++j) {
        p.A.row(static_cast<int>(j)) = facets[j].a.transpose();
        p.b[static_cast<int>(j)] = facets[j].beta;
    }
    return p;
}

VPolytope h_to_v(const HPolytope& p) {
    check_bounded(p.A, p.b);
    VPolytope q;
    q.n = p.n;
    q.V = enumerate_vertices(p.A, p.b);
    if (q.V.cols() < p.n + 1) throw DegeneracyError("h_to_v: polytope is not full-dimensional");
    MatQ w = q.V.colwise() - VecQ(q.V.col(0));
    if (rank(w) < p.n) throw DegeneracyError("h_to_v: polytope is not full-dimensional");
    return q;
}

Rational volume(const VPolytope& q) { return volume_of_points(q.V); }

Rational volume(const HPolytope& p) { return volume_of_points(h_to_v(p).V); }

VecQ interior_point(const HPolytope& p) {
    const auto [x, margin] = margin_point(p.A, p.b);
    if (margin <= 0) throw DegeneracyError("interior_point: polytope is not full-dimensional");
    return x;
}

HPolytope translate_origin_interior(const HPolytope& p) {
    bool inside = true;
    for (int j = 0; j < p.b.size(); ++j) inside = inside && p.b[j] > 0;
    if (inside) return p;
    const VecQ shift = interior_point(p);
    HPolytope out = p;
    out.b -= p.A * shift;
    return out;
}

std::vector<Facet> facet_data(const HPolytope& p) {
    for (int j = 0; j < p.b.size(); ++j)
        if (p.b[j] <= 0)
            throw PreconditionError("facet_data: origin must be interior (translate first)");

    const VPolytope q = h_to_v(p);
    std::vector<Facet> out;
    out.reserve(static_cast<std::size_t>(p.A.rows()));
    for (int j = 0; j < p.A.rows(); ++j) {
        Facet f;
        f.a = p.A.row(j).transpose();
        f.beta = p.b[j];
        f.norm2 = f.a.squaredNorm();

        std::vector<int> incident;
        for (int c = 0; c < q.V.cols(); ++c)
            if (f.a.dot(q.V.col(c)) == f.beta) incident.push_back(c);
        if (static_cast<int>(incident.size()) < p.n)
            throw DegeneracyError("facet_data: inequality is not facet-defining");

        int drop = 0;
        while (f.a[drop] == 0) ++drop;
        if (p.n == 1) {
            f.omega = Rational(1) / abs(f.a[drop]);
        } else {
            MatQ proj(p.n - 1, static_cast<int>(incident.size()));
            for (std::size_t c = 0; c < incident.size(); ++c) {
                int r = 0;
                for (int i = 0; i < p.n; ++i) {
                    if (i == drop) continue;
                    proj(r++, static_cast<int>(c)) = q.V(i, incident[c]);
                }
            }
            f.omega = volume_of_points(proj) / abs(f.a[drop]);
        }
        out.push_back(std::move(f));
    }
    return out;
}

Interval surface_area(const HPolytope& p, unsigned bits) {
    const std::vector<Facet> facets = facet_data(translate_origin_interior(p));
    Interval s{0, 0};
    for (const Facet& f : facets) {
        const Interval root = sqrt_enclosure(f.norm2, bits);
        s.lo += f.omega * root.lo;
        s.hi += f.omega * root.hi;
    }
    return s;
}

std::pair<Rational, HPolytope> scale_to_unit_surface(const HPolytope& p) {
    if (p.n < 2) throw PreconditionError("scale_to_unit_surface: need n >= 2");
    unsigned bits = 60;
    Interval s = surface_area(p, bits);
    // sigma^{n-1} must land in [1/S_lo, (1+1/n)/S_hi]; widen bits if the
    // enclosure is somehow too loose for the window to be nonempty.
    Rational t_lo = 1 / s.lo;
    Rational t_hi = (1 + Rational(1, p.n)) / s.hi;
    while (t_hi < t_lo) {
        bits *= 2;
        s = surface_area(p, bits);
        t_lo = 1 / s.lo;
        t_hi = (1 + Rational(1, p.n)) / s.hi;
    }

    const int e = p.n - 1;
    const auto f = [&](const Rational& sigma) { return pow_rational(sigma, unsigned(e)); };
    Rational lo = std::min(t_lo, Rational(1), std::less<Rational>());
    Rational hi = std::max(t_hi, Rational(1), std::less<Rational>()) + 1;
    Rational sigma;
    if (f(lo) >= t_lo)
        sigma = lo;
    else if (f(hi) <= t_hi)
        sigma = hi;
    else {
        for (;;) {
            const Rational mid = (lo + hi) / 2;
            const Rational fm = f(mid);
            if (fm < t_lo)
                lo = mid;
            else if (fm > t_hi)
                hi = mid;
            else {
                sigma = mid;
                break;
            }
        }
    }
    HPolytope scaled = p;
    scaled.b *= sigma;
    return {sigma, std::move(scaled)};
}

Rational iso_lower_bound(const HPolytope& p, unsigned bits) {
    const Rational vol = volume(p);
    const Interval s = surface_area(p, bits);
    return pow_rational(vol, unsigned(p.n - 1)) / pow_rational(s.hi, unsigned(p.n));
}

PolytopeSummary summarize(const HPolytope& p) {
    PolytopeSummary out;
    out.volume = volume(p);
    out.surface = surface_area(p);
    out.iso_nu = pow_rational(out.volume, unsigned(p.n - 1)) / pow_rational(out.surface.hi, unsigned(p.n));
    return out;
}

Rational section_volume(const HPolytope& p, int axis) {
    if (axis < 0 || axis >= p.n) throw PreconditionError("section_volume: axis out of range");
    if (p.n < 2) throw PreconditionError("section_volume: need n >= 2");

    // Substitute x_axis = 0 and drop that column; rows that lose their normal
    // become trivial (b >= 0) or contradictory (b < 0).
    std::vector<int> keep;
    for (int j = 0; j < p.A.rows(); ++j) {
        VecQ reduced = p.A.row(j).transpose();
        reduced[axis] = 0;
        if (reduced.squaredNorm() == 0) {
            if (p.b[j] < 0) return 0;
        } else {
            keep.push_back(j);
        }
    }
    MatQ a(static_cast<int>(keep.size()), p.n - 1);
    VecQ b(static_cast<int>(keep.size()));
    for (std::size_t r = 0; r < keep.size(); ++r) {
        int out = 0;
        for (int i = 0; i < p.n; ++i) {
            if (i == axis) continue;
            a(static_cast<int>(r), out++) = p.A(keep[r], i);
        }
        b[static_cast<int>(r)] = p.b[keep[r]];
    }
    try {
        if (margin_point(a, b).second <= 0) return 0;
    } catch (const DegeneracyError&) {
        return 0;  // empty section
    }
    const MatQ v = enumerate_vertices(a, b);
    return volume_of_points(v);
}

Rational longest_chord(const HPolytope& p, const VecQ& v) {
    if (v.size() != p.n || v.squaredNorm() == 0)
        throw PreconditionError("longest_chord: direction must be a nonzero n-vector");
    const int m = static_cast<int>(p.A.rows());
    // Variables (x, t): both x and x + t v must satisfy the system.
    MatQ a(2 * m, p.n + 1);
    VecQ b(2 * m);
    a.topLeftCorner(m, p.n) = p.A;
    a.topRightCorner(m, 1).setZero();
    a.bottomLeftCorner(m, p.n) = p.A;
    a.bottomRightCorner(m, 1) = p.A * v;
    b.head(m) = p.b;
    b.tail(m) = p.b;
    VecQ c = VecQ::Zero(p.n + 1);
    c[p.n] = 1;
    const LpResult r = lp_maximize(a, b, c);
    if (r.status != LpStatus::Optimal)
        throw BoundednessError("longest_chord: polytope must be bounded and nonempty");
    return r.value;
}

}  // namespace revlw
