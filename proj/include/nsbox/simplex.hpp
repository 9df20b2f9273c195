#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace nsbox::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status = Status::Infeasible;
    std::vector<double> x;    // primal point; best phase-1 point when infeasible
    double objective = 0;     // c.x at x, meaningful when Optimal
    double max_violation = 0; // max_i |A_i x - b_i| at x
};

namespace detail {

inline constexpr double kPivotTol = 1e-11;
inline constexpr double kCostTol = 1e-11;

struct Tableau {
    int m, n;                           // rows, structural columns
    std::vector<std::vector<double>> t; // m rows of n+m+1 (structurals, artificials, rhs)
    std::vector<int> basis;             // column basic in each row

    double rhs(int i) const { return t[i][n + m]; }

    void pivot(int pr, int pc) {
        const double piv = t[pr][pc];
        for (double& v : t[pr]) v /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == pr) continue;
            const double f = t[i][pc];
            if (f == 0.0) continue;
            for (int j = 0; j <= n + m; ++j) t[i][j] -= f * t[pr][j];
        }
        basis[pr] = pc;
    }
};

// Bland's smallest-index rule throughout: entering column is the first
// with negative reduced cost, ties in the ratio test go to the row whose
// basic variable has the smallest index. No cycling, no scaling drama at
// this problem size.
inline bool run(Tableau& tb, const std::vector<double>& cost, bool allow_artificial) {
    const int width = tb.n + tb.m;
    for (int iter = 0; iter < 20000; ++iter) {
        int enter = -1;
        for (int j = 0; j < width; ++j) {
            if (!allow_artificial && j >= tb.n) break;
            double rc = cost[j];
            for (int i = 0; i < tb.m; ++i) {
                const double cb = cost[tb.basis[i]];
                if (cb != 0.0) rc -= cb * tb.t[i][j];
            }
            if (rc < -kCostTol) {
                enter = j;
                break;
            }
        }
        if (enter < 0) return true;

        int leave = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < tb.m; ++i) {
            const double a = tb.t[i][enter];
            if (a <= kPivotTol) continue;
            const double ratio = tb.rhs(i) / a;
            if (ratio < best - 1e-12 ||
                (ratio < best + 1e-12 && (leave < 0 || tb.basis[i] < tb.basis[leave]))) {
                best = ratio;
                leave = i;
            }
        }
        if (leave < 0) return false;  // unbounded direction
        tb.pivot(leave, enter);
    }
    return true;  // iteration cap; caller judges the point it got
}

}  // namespace detail

/// Minimizes c.x subject to A x = b, x >= 0 with a dense two-phase
/// simplex. Sized for small problems (tens of rows and columns).
/// Feasibility of the phase-1 result is judged at feas_tol.
inline Result solve(const std::vector<std::vector<double>>& A,
                    const std::vector<double>& b,
                    const std::vector<double>& c,
                    double feas_tol = 1e-8) {
    const int m = static_cast<int>(A.size());
    const int n = static_cast<int>(c.size());
    for (const auto& row : A)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("lp row width mismatch");
    if (static_cast<int>(b.size()) != m)
        throw std::invalid_argument("lp rhs size mismatch");

    detail::Tableau tb;
    tb.m = m;
    tb.n = n;
    tb.t.assign(m, std::vector<double>(n + m + 1, 0.0));
    tb.basis.resize(m);
    for (int i = 0; i < m; ++i) {
        const double sign = b[i] < 0 ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j) tb.t[i][j] = sign * A[i][j];
        tb.t[i][n + i] = 1.0;
        tb.t[i][n + m] = sign * b[i];
        tb.basis[i] = n + i;
    }

    std::vector<double> phase1(n + m, 0.0);
    for (int j = n; j < n + m; ++j) phase1[j] = 1.0;
    detail::run(tb, phase1, true);

    auto extract = [&](Result& r) {
        r.x.assign(n, 0.0);
        for (int i = 0; i < m; ++i)
            if (tb.basis[i] < n) r.x[tb.basis[i]] = std::max(0.0, tb.rhs(i));
        r.max_violation = 0;
        for (int i = 0; i < m; ++i) {
            double ax = 0;
            for (int j = 0; j < n; ++j) ax += A[i][j] * r.x[j];
            r.max_violation = std::max(r.max_violation, std::abs(ax - b[i]));
        }
        r.objective = 0;
        for (int j = 0; j < n; ++j) r.objective += c[j] * r.x[j];
    };

    Result r;
    extract(r);
    if (r.max_violation > feas_tol) {
        r.status = Status::Infeasible;
        return r;
    }

    // Drive leftover artificials out of the basis; an all-zero row means
    // the constraint was redundant and can stay parked at level zero.
    for (int i = 0; i < m; ++i) {
        if (tb.basis[i] < n) continue;
        int col = -1;
        for (int j = 0; j < n; ++j)
            if (std::abs(tb.t[i][j]) > 1e-9) {
                col = j;
                break;
            }
        if (col >= 0) tb.pivot(i, col);
    }

    std::vector<double> phase2(n + m, 0.0);
    for (int j = 0; j < n; ++j) phase2[j] = c[j];
    const bool bounded = detail::run(tb, phase2, false);
    if (!bounded) {
        extract(r);
        r.status = Status::Unbounded;
        return r;
    }
    extract(r);
    r.status = r.max_violation > feas_tol ? Status::Infeasible : Status::Optimal;
    return r;
}

}  // namespace nsbox::lp
