#ifndef XNET_DOF_REGION_HPP
#define XNET_DOF_REGION_HPP

/**
 * The two-user DoF polytope: four triple-sum outer-bound inequalities over
 * nonnegative tuples (d11, d12, d21, d22), vertex enumeration by active
 * sets, the sum-DoF linear program solved over the vertex list, and the
 * convex decomposition onto the six achievable generators (which realizes
 * the matching inner bound: a point is in the region iff it decomposes).
 */

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "xnet/dof_point.hpp"
#include "xnet/errors.hpp"
#include "xnet/linprog.hpp"

namespace xnet {

struct HalfSpace {
    std::array<double, 4> a{};
    double b = 0.0;
};

/// Constraints a.x <= b over x >= 0 (nonnegativity is implicit).
struct DofPolytope {
    std::vector<HalfSpace> constraints;
};

/// The four triple-sum inequalities d_ij + d_kl + d_mn <= 1 (each leaves one
/// coordinate out), over the nonnegative orthant.
inline DofPolytope outer_bound() {
    DofPolytope p;
    p.constraints = {
        {{1, 1, 1, 0}, 1.0},
        {{1, 1, 0, 1}, 1.0},
        {{1, 0, 1, 1}, 1.0},
        {{0, 1, 1, 1}, 1.0},
    };
    return p;
}

inline bool contains(const DofPolytope& poly, const DofPoint& x, double tol = 1e-9) {
    for (double v : x.d) {
        if (v < -tol) return false;
    }
    for (const auto& hs : poly.constraints) {
        double lhs = 0.0;
        for (int i = 0; i < 4; ++i) lhs += hs.a[static_cast<std::size_t>(i)] * x.d[static_cast<std::size_t>(i)];
        if (lhs > hs.b + tol) return false;
    }
    return true;
}

namespace detail {

/// Recession-cone feasibility: a nonzero direction d >= 0 with A d <= 0
/// exists iff the polytope is unbounded. Cast as a phase-1 problem with
/// slack variables and the normalization sum(d) = 1.
inline bool is_unbounded(const DofPolytope& poly) {
    const int m = static_cast<int>(poly.constraints.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m + 1, 4 + m);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(m + 1);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < 4; ++j) a(i, j) = poly.constraints[static_cast<std::size_t>(i)].a[static_cast<std::size_t>(j)];
        a(i, 4 + i) = 1.0;  // slack: A d + s = 0
    }
    for (int j = 0; j < 4; ++j) a(m, j) = 1.0;
    b(m) = 1.0;
    return linprog::find_nonnegative_solution(std::move(a), std::move(b)).has_value();
}

}  // namespace detail

/// All vertices (basic feasible solutions) of the polytope, deduplicated at
/// 1e-9. Every returned point has at least four active constraints.
inline std::vector<DofPoint> enumerate_vertices(const DofPolytope& poly) {
    if (detail::is_unbounded(poly)) {
        throw UnboundedRegion("enumerate_vertices: polytope is unbounded");
    }
    // Row list: the explicit half-spaces followed by the four sign constraints.
    std::vector<HalfSpace> rows = poly.constraints;
    for (int i = 0; i < 4; ++i) {
        HalfSpace hs;
        hs.a[static_cast<std::size_t>(i)] = -1.0;
        hs.b = 0.0;
        rows.push_back(hs);
    }
    const int n = static_cast<int>(rows.size());
    std::vector<DofPoint> verts;
    std::array<int, 4> pick{};
    auto try_active_set = [&](const std::array<int, 4>& sel) {
        Eigen::Matrix4d m;
        Eigen::Vector4d rhs;
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) m(r, c) = rows[static_cast<std::size_t>(sel[static_cast<std::size_t>(r)])].a[static_cast<std::size_t>(c)];
            rhs(r) = rows[static_cast<std::size_t>(sel[static_cast<std::size_t>(r)])].b;
        }
        Eigen::FullPivLU<Eigen::Matrix4d> lu(m);
        if (!lu.isInvertible()) return;
        Eigen::Vector4d x = lu.solve(rhs);
        DofPoint p{{x(0), x(1), x(2), x(3)}};
        if (!contains(poly, p)) return;
        for (const auto& v : verts) {
            double dist = 0.0;
            for (int i = 0; i < 4; ++i) dist = std::max(dist, std::abs(v.d[static_cast<std::size_t>(i)] - p.d[static_cast<std::size_t>(i)]));
            if (dist <= 1e-9) return;  // duplicate
        }
        verts.push_back(p);
    };
    for (pick[0] = 0; pick[0] < n; ++pick[0])
        for (pick[1] = pick[0] + 1; pick[1] < n; ++pick[1])
            for (pick[2] = pick[1] + 1; pick[2] < n; ++pick[2])
                for (pick[3] = pick[2] + 1; pick[3] < n; ++pick[3]) try_active_set(pick);
    return verts;
}

struct MaxSumResult {
    double value = 0.0;
    std::vector<DofPoint> argmax;
};

/// Exact LP optimum of a nonnegative weighted sum, taken over the vertex
/// list; the argmax set carries every optimal vertex (ties at 1e-9).
inline MaxSumResult max_sum(const DofPolytope& poly,
                            const std::array<double, 4>& weights = {1.0, 1.0, 1.0, 1.0}) {
    MaxSumResult out;
    const std::vector<DofPoint> verts = enumerate_vertices(poly);
    for (const auto& v : verts) {
        double s = 0.0;
        for (int i = 0; i < 4; ++i) s += weights[static_cast<std::size_t>(i)] * v.d[static_cast<std::size_t>(i)];
        out.value = std::max(out.value, s);
    }
    for (const auto& v : verts) {
        double s = 0.0;
        for (int i = 0; i < 4; ++i) s += weights[static_cast<std::size_t>(i)] * v.d[static_cast<std::size_t>(i)];
        if (s >= out.value - 1e-9) out.argmax.push_back(v);
    }
    return out;
}

struct Decomposition {
    bool feasible = false;
    std::array<double, 6> alpha{};  // weights over (K, L, M, N, O, P)
};

/// Feasibility LP: nonnegative weights over the six generators that sum to
/// one and reconstruct the point. Infeasible exactly when the point lies
/// outside the region.
inline Decomposition decompose(const DofPoint& point) {
    Eigen::MatrixXd a(5, 6);
    Eigen::VectorXd b(5);
    const auto gens = corners::all();
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 6; ++c) a(r, c) = to_double(gens[static_cast<std::size_t>(c)].d[static_cast<std::size_t>(r)]);
        b(r) = point.d[static_cast<std::size_t>(r)];
    }
    for (int c = 0; c < 6; ++c) a(4, c) = 1.0;
    b(4) = 1.0;
    Decomposition out;
    auto x = linprog::find_nonnegative_solution(std::move(a), std::move(b));
    if (!x) return out;
    out.feasible = true;
    for (int i = 0; i < 6; ++i) out.alpha[static_cast<std::size_t>(i)] = (*x)(i);
    return out;
}

/// Region membership via the achievability route (Infeasible <=> outside).
inline bool region_membership(const DofPoint& point) { return decompose(point).feasible; }

/// Closed-form decomposition for points with coordinate sum <= 1: the point's
/// own coordinates weight the four dedicated-link generators and the slack
/// 1 - sum goes to the silent strategy. Reconstructs such points exactly.
inline std::array<double, 6> table2_row1(const DofPoint& point) {
    const double slack = 1.0 - point.sum();
    return {point.d[0], point.d[1], point.d[2], point.d[3], slack, 0.0};
}

struct Table2Row2Report {
    std::array<double, 6> alpha{};
    double weight_sum = 0.0;
    double reconstruction_error = 0.0;  // max-abs against the input point
};

/// The printed second-row closed form, kept verbatim as a cross-check. It
/// does not decompose its nominal domain correctly (weights fail to sum to
/// one and the reconstruction drifts), so its discrepancy is reported and
/// never asserted; the feasibility LP is the authority.
inline Table2Row2Report table2_row2_crosscheck(const DofPoint& point) {
    Table2Row2Report rep;
    const double total = point.sum();
    for (int i = 0; i < 4; ++i) {
        rep.alpha[static_cast<std::size_t>(i)] = (2.0 * point.d[static_cast<std::size_t>(i)] - total + 1.0) / 3.0;
    }
    rep.alpha[4] = total - 1.0;  // weight on O
    rep.alpha[5] = 0.0;          // weight on P
    const auto gens = corners::all();
    std::array<double, 4> rec{};
    for (int c = 0; c < 6; ++c) {
        rep.weight_sum += rep.alpha[static_cast<std::size_t>(c)];
        for (int r = 0; r < 4; ++r) {
            rec[static_cast<std::size_t>(r)] += rep.alpha[static_cast<std::size_t>(c)] * to_double(gens[static_cast<std::size_t>(c)].d[static_cast<std::size_t>(r)]);
        }
    }
    for (int r = 0; r < 4; ++r) {
        rep.reconstruction_error = std::max(rep.reconstruction_error,
                                            std::abs(rec[static_cast<std::size_t>(r)] - point.d[static_cast<std::size_t>(r)]));
    }
    return rep;
}

/// Structured-text export of inequalities and vertices, for plotting.
inline std::string region_to_text(const DofPolytope& poly) {
    std::ostringstream os;
    os << "inequalities\n";
    for (const auto& hs : poly.constraints) {
        bool first = true;
        for (int i = 0; i < 4; ++i) {
            if (hs.a[static_cast<std::size_t>(i)] == 0.0) continue;
            if (!first) os << " + ";
            if (hs.a[static_cast<std::size_t>(i)] != 1.0) os << hs.a[static_cast<std::size_t>(i)] << "*";
            os << "d" << (i / 2 + 1) << (i % 2 + 1);
            first = false;
        }
        os << " <= " << hs.b << "\n";
    }
    os << "d11, d12, d21, d22 >= 0\n";
    os << "vertices\n";
    std::vector<DofPoint> verts = enumerate_vertices(poly);
    std::sort(verts.begin(), verts.end(), [](const DofPoint& a, const DofPoint& b) {
        return a.d < b.d;
    });
    for (const auto& v : verts) {
        os << "(" << v.d[0] << ", " << v.d[1] << ", " << v.d[2] << ", " << v.d[3] << ")\n";
    }
    return os.str();
}

}  // namespace xnet

#endif  // XNET_DOF_REGION_HPP
