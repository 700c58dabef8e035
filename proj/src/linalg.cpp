#include "revlw/linalg.hpp"

#include <algorithm>
#include <cstddef>

namespace revlw {

namespace {

/**
 * Reduce `m` in place to row echelon form by exact elimination, returning the
 * pivot columns.  With `reduced` set, back-substitution yields the RREF with
 * unit pivots.
 */
std::vector<int> echelonize(MatQ& m, bool reduced) {
    std::vector<int> pivot_cols;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int pivot = -1;
        for (int i = row; i < m.rows(); ++i) {
            if (m(i, col) != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) continue;
        m.row(pivot).swap(m.row(row));
        for (int i = row + 1; i < m.rows(); ++i) {
            if (m(i, col) == 0) continue;
            const Rational factor = m(i, col) / m(row, col);
            m.row(i) -= factor * m.row(row);
            m(i, col) = 0;  // cancel exactly, avoid lingering 0/1 artifacts
        }
        pivot_cols.push_back(col);
        ++row;
    }
    if (reduced) {
        for (int r = static_cast<int>(pivot_cols.size()) - 1; r >= 0; --r) {
            const int col = pivot_cols[static_cast<std::size_t>(r)];
            m.row(r) /= m(r, col);
            for (int i = 0; i < r; ++i) {
                if (m(i, col) == 0) continue;
                m.row(i) -= m(i, col) * m.row(r);
                m(i, col) = 0;
            }
        }
    }
    return pivot_cols;
}

}  // namespace

int rank(const MatQ& m) {
    MatQ work = m;
    return static_cast<int>(echelonize(work, false).size());
}

Rational determinant(const MatQ& m) {
    if (m.rows() != m.cols()) throw PreconditionError("determinant: matrix must be square");
    const int n = static_cast<int>(m.rows());
    if (n == 0) return 1;

    // Fraction-free Bareiss elimination over a common-denominator integer
    // matrix; division at each step is exact by construction.
    Rational denom_scale = 1;
    MatQ work = m;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Rational d(denominator(work(i, j)));
            if (d != 1) {
                work.row(i) *= d;
                denom_scale *= d;
            }
        }

    Rational sign = 1;
    Rational prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (work(k, k) == 0) {
            int swap_row = -1;
            for (int i = k + 1; i < n; ++i) {
                if (work(i, k) != 0) {
                    swap_row = i;
                    break;
                }
            }
            if (swap_row < 0) return 0;
            work.row(k).swap(work.row(swap_row));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                work(i, j) = (work(k, k) * work(i, j) - work(i, k) * work(k, j)) / prev;
            work(i, k) = 0;
        }
        prev = work(k, k);
    }
    return sign * work(n - 1, n - 1) / denom_scale;
}

std::optional<VecQ> solve(const MatQ& a, const VecQ& b) {
    if (a.rows() != a.cols() || a.rows() != b.size())
        throw PreconditionError("solve: dimension mismatch");
    const int n = static_cast<int>(a.rows());
    MatQ aug(n, n + 1);
    aug.leftCols(n) = a;
    aug.col(n) = b;
    const std::vector<int> pivots = echelonize(aug, true);
    if (static_cast<int>(pivots.size()) != n || (!pivots.empty() && pivots.back() == n))
        return std::nullopt;
    return VecQ(aug.col(n));
}

MatQ null_space(const MatQ& a) {
    MatQ work = a;
    const std::vector<int> pivots = echelonize(work, true);
    const int n = static_cast<int>(a.cols());
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;

    MatQ basis = MatQ::Zero(n, n - static_cast<int>(pivots.size()));
    int out = 0;
    for (int free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[static_cast<std::size_t>(free_col)]) continue;
        basis(free_col, out) = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            basis(pivots[r], out) = -work(static_cast<int>(r), free_col);
        ++out;
    }
    return basis;
}

VecQ primitive_integer_vector(const VecQ& v) {
    Integer den_lcm = 1;
    for (int i = 0; i < v.size(); ++i) den_lcm = lcm(den_lcm, denominator(v[i]));
    Integer num_gcd = 0;
    for (int i = 0; i < v.size(); ++i) num_gcd = gcd(num_gcd, numerator(v[i] * Rational(den_lcm)));
    if (num_gcd == 0) return v;
    return v * (Rational(den_lcm) / Rational(num_gcd));
}

MatQ orthogonalize(const MatQ& basis) {
    MatQ out = basis;
    for (int k = 0; k < out.cols(); ++k) {
        for (int j = 0; j < k; ++j) {
            const Rational denom = out.col(j).squaredNorm();
            const Rational coeff = out.col(k).dot(out.col(j)) / denom;
            out.col(k) -= coeff * out.col(j);
        }
        if (out.col(k).squaredNorm() == 0)
            throw PreconditionError("orthogonalize: columns are linearly dependent");
        out.col(k) = primitive_integer_vector(out.col(k));
    }
    return out;
}

VecQ scale_norm_into_unit_band(const VecQ& v) {
    Rational s = v.squaredNorm();
    if (s == 0) throw PreconditionError("scale_norm_into_unit_band: zero vector");
    VecQ out = v;
    while (s > 4) {
        out /= 2;
        s /= 4;
    }
    while (s < 1) {
        out *= 2;
        s *= 4;
    }
    return out;
}

namespace {

/**
 * Dense tableau simplex (maximization) with Bland's rule, hence guaranteed
 * termination.  `tab` is rows x (cols+1) with the right-hand side in the last
 * column and nonnegative throughout; `zrow` holds negated reduced costs with
 * the objective value in its last entry.  `allowed` masks columns that may
 * enter the basis.  Returns false when unbounded.
 */
bool run_simplex(MatQ& tab, VecQ& zrow, std::vector<int>& basis, const std::vector<bool>& allowed) {
    const int rows = static_cast<int>(tab.rows());
    const int cols = static_cast<int>(tab.cols()) - 1;
    for (;;) {
        int enter = -1;
        for (int j = 0; j < cols; ++j) {
            if (allowed[static_cast<std::size_t>(j)] && zrow[j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter < 0) return true;

        int leave = -1;
        Rational best_ratio = 0;
        for (int i = 0; i < rows; ++i) {
            if (tab(i, enter) <= 0) continue;
            const Rational ratio = tab(i, cols) / tab(i, enter);
            if (leave < 0 || ratio < best_ratio ||
                (ratio == best_ratio && basis[static_cast<std::size_t>(i)] <
                                            basis[static_cast<std::size_t>(leave)])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave < 0) return false;

        tab.row(leave) /= tab(leave, enter);
        for (int i = 0; i < rows; ++i) {
            if (i == leave || tab(i, enter) == 0) continue;
            tab.row(i) -= tab(i, enter) * tab.row(leave);
            tab(i, enter) = 0;
        }
        if (zrow[enter] != 0) {
            zrow -= zrow[enter] * tab.row(leave).transpose();
            zrow[enter] = 0;
        }
        basis[static_cast<std::size_t>(leave)] = enter;
    }
}

VecQ zrow_for_costs(const MatQ& tab, const std::vector<int>& basis, const VecQ& costs) {
    VecQ zrow = VecQ::Zero(tab.cols());
    zrow.head(costs.size()) = -costs;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const int var = basis[i];
        if (var < costs.size() && costs[var] != 0)
            zrow += costs[var] * tab.row(static_cast<int>(i)).transpose();
    }
    return zrow;
}

}  // namespace

LpResult lp_maximize(const MatQ& a, const VecQ& b, const VecQ& c) {
    if (a.rows() != b.size() || a.cols() != c.size())
        throw PreconditionError("lp_maximize: dimension mismatch");
    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());

    // Free variables are split as x = x+ - x-;  columns are laid out as
    // [x+ (n) | x- (n) | slack (m) | artificial (<= m)] with RHS last.
    int artificials = 0;
    for (int i = 0; i < m; ++i)
        if (b[i] < 0) ++artificials;
    const int real_cols = 2 * n + m;
    const int cols = real_cols + artificials;

    MatQ tab = MatQ::Zero(m, cols + 1);
    std::vector<int> basis(static_cast<std::size_t>(m));
    int next_artificial = real_cols;
    for (int i = 0; i < m; ++i) {
        const Rational row_sign = (b[i] < 0) ? -1 : 1;
        tab.row(i).segment(0, n) = row_sign * a.row(i);
        tab.row(i).segment(n, n) = -row_sign * a.row(i);
        tab(i, 2 * n + i) = row_sign;
        tab(i, cols) = row_sign * b[i];
        if (b[i] < 0) {
            tab(i, next_artificial) = 1;
            basis[static_cast<std::size_t>(i)] = next_artificial++;
        } else {
            basis[static_cast<std::size_t>(i)] = 2 * n + i;
        }
    }

    std::vector<bool> allowed(static_cast<std::size_t>(cols), true);
    if (artificials > 0) {
        VecQ phase1_costs = VecQ::Zero(cols);
        for (int j = real_cols; j < cols; ++j) phase1_costs[j] = -1;
        VecQ zrow = zrow_for_costs(tab, basis, phase1_costs);
        run_simplex(tab, zrow, basis, allowed);  // bounded: objective <= 0
        if (zrow[cols] != 0) return {LpStatus::Infeasible, 0, VecQ()};

        // Pivot any zero-valued artificial out of the basis; a row with no
        // real-column support is a redundant constraint and is dropped.
        for (int i = m - 1; i >= 0; --i) {
            if (basis[static_cast<std::size_t>(i)] < real_cols) continue;
            int enter = -1;
            for (int j = 0; j < real_cols; ++j) {
                if (tab(i, j) != 0) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) {
                const int last = static_cast<int>(tab.rows()) - 1;
                tab.row(i).swap(tab.row(last));
                std::swap(basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(last)]);
                tab.conservativeResize(last, Eigen::NoChange);
                basis.pop_back();
                continue;
            }
            tab.row(i) /= tab(i, enter);
            for (int r = 0; r < static_cast<int>(tab.rows()); ++r) {
                if (r == i || tab(r, enter) == 0) continue;
                tab.row(r) -= tab(r, enter) * tab.row(i);
                tab(r, enter) = 0;
            }
            basis[static_cast<std::size_t>(i)] = enter;
        }
        for (int j = real_cols; j < cols; ++j) allowed[static_cast<std::size_t>(j)] = false;
    }

    VecQ phase2_costs = VecQ::Zero(cols);
    phase2_costs.head(n) = c;
    phase2_costs.segment(n, n) = -c;
    VecQ zrow = zrow_for_costs(tab, basis, phase2_costs);
    if (!run_simplex(tab, zrow, basis, allowed)) return {LpStatus::Unbounded, 0, VecQ()};

    VecQ x = VecQ::Zero(n);
    const int rhs = static_cast<int>(tab.cols()) - 1;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const int var = basis[i];
        if (var < n)
            x[var] += tab(static_cast<int>(i), rhs);
        else if (var < 2 * n)
            x[var - n] -= tab(static_cast<int>(i), rhs);
    }
    return {LpStatus::Optimal, zrow[rhs], x};
}

}  // namespace revlw
