#ifndef XNET_LINPROG_HPP
#define XNET_LINPROG_HPP

/**
 * Minimal dense phase-1 simplex: finds x >= 0 with A x = b or reports
 * infeasibility. Sized for the tiny systems this project solves (a handful
 * of rows and columns); Bland's rule keeps it cycle-free.
 */

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace xnet::linprog {

inline constexpr double kFeasTol = 1e-9;

inline std::optional<Eigen::VectorXd> find_nonnegative_solution(Eigen::MatrixXd a,
                                                                Eigen::VectorXd b) {
    const Eigen::Index m = a.rows();
    const Eigen::Index n = a.cols();
    for (Eigen::Index i = 0; i < m; ++i) {
        if (b(i) < 0) {
            a.row(i) = -a.row(i);
            b(i) = -b(i);
        }
    }
    // Tableau over [x | artificials], minimizing the artificial sum.
    Eigen::MatrixXd t(m + 1, n + m + 1);
    t.setZero();
    t.block(0, 0, m, n) = a;
    t.block(0, n, m, m) = Eigen::MatrixXd::Identity(m, m);
    t.block(0, n + m, m, 1) = b;
    for (Eigen::Index j = 0; j < n; ++j) t(m, j) = -a.col(j).sum();
    t(m, n + m) = -b.sum();

    std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

    while (true) {
        Eigen::Index pivot_col = -1;
        for (Eigen::Index j = 0; j < n + m; ++j) {  // Bland: first negative cost
            if (t(m, j) < -kFeasTol) {
                pivot_col = j;
                break;
            }
        }
        if (pivot_col < 0) break;
        Eigen::Index pivot_row = -1;
        double best_ratio = 0.0;
        for (Eigen::Index i = 0; i < m; ++i) {
            if (t(i, pivot_col) > kFeasTol) {
                const double ratio = t(i, n + m) / t(i, pivot_col);
                if (pivot_row < 0 || ratio < best_ratio - kFeasTol ||
                    (ratio < best_ratio + kFeasTol && basis[static_cast<std::size_t>(i)] <
                                                           basis[static_cast<std::size_t>(pivot_row)])) {
                    pivot_row = i;
                    best_ratio = ratio;
                }
            }
        }
        if (pivot_row < 0) return std::nullopt;  // cannot happen with artificials present
        t.row(pivot_row) /= t(pivot_row, pivot_col);
        for (Eigen::Index i = 0; i <= m; ++i) {
            if (i != pivot_row && std::abs(t(i, pivot_col)) > 0.0) {
                t.row(i) -= t(i, pivot_col) * t.row(pivot_row);
            }
        }
        basis[static_cast<std::size_t>(pivot_row)] = pivot_col;
    }

    if (t(m, n + m) < -kFeasTol) return std::nullopt;  // artificials stuck above zero

    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < m; ++i) {
        if (basis[static_cast<std::size_t>(i)] < n) x(basis[static_cast<std::size_t>(i)]) = t(i, n + m);
    }
    // An artificial may linger in the basis at level ~0; the solution is
    // still feasible, but verify the equalities to be safe.
    if (((a * x) - b).cwiseAbs().maxCoeff() > 1e-7) return std::nullopt;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (x(j) < 0 && x(j) > -kFeasTol) x(j) = 0.0;
    }
    return x;
}

}  // namespace xnet::linprog

#endif  // XNET_LINPROG_HPP
