#ifndef XNET_DECODE_HPP
#define XNET_DECODE_HPP

/**
 * Receiver-side processing. Each receiver can reconstruct the exact linear
 * map A from all scheme symbols to its received scalars (the plan structure
 * is public and CSIR is perfect), so decoding reduces to identifiability:
 * the desired symbols are recoverable iff no null-space direction of A
 * touches a desired coordinate.
 *
 * Two independent routes are provided: the generic null-space decoder and
 * the per-scheme subtraction recipe (clean slots plus resurrection-pair
 * differences). Both must agree; the recipe doubles as a correctness oracle
 * for the solver and vice versa.
 */

#include <Eigen/Dense>
#include <limits>
#include <vector>

#include "xnet/channel.hpp"
#include "xnet/errors.hpp"
#include "xnet/schemes.hpp"

namespace xnet {

/// Relative singular-value threshold separating null directions from signal.
inline constexpr double kNullSpaceTol = 1e-9;

/// Indices (into the plan symbol table) of the symbols receiver rx wants.
inline std::vector<int> desired_symbols(const TransmitPlan& plan, int rx) {
    std::vector<int> out;
    for (int s = 0; s < static_cast<int>(plan.symbols.table.size()); ++s) {
        if (plan.symbols.table[static_cast<std::size_t>(s)].rx == rx) out.push_back(s);
    }
    return out;
}

/// The noiseless map A with A[t][s] = effective coefficient of symbol s in
/// Y_rx(t), assembled from CSIR and the public plan.
inline Eigen::MatrixXcd observation_matrix(const TransmitPlan& plan, const ChannelProcess& channel,
                                           int rx) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(plan.n_slots,
                                                static_cast<Eigen::Index>(plan.symbols.table.size()));
    for (int t = 0; t < plan.n_slots; ++t) {
        for (int j = 0; j < plan.n_tx; ++j) {
            const cplx h = channel.coeff(rx, j, t);
            for (const auto& term : plan.terms[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)]) {
                a(t, term.symbol) += h * term.coeff;
            }
        }
    }
    return a;
}

struct DecodeOutcome {
    bool identifiable = false;
    std::vector<int> desired;       // symbol indices, ascending
    std::vector<cplx> values;       // estimates aligned with `desired`
    std::vector<int> unresolvable;  // desired symbols touched by the null space
};

/// Null-space identifiability decoder: min-norm solution of A s = y,
/// restricted to the desired coordinates. Exact in the noiseless case
/// whenever the desired coordinates are clear of the null space.
inline DecodeOutcome decode(const ReceiverLedger& ledger, int rx, const TransmitPlan& plan,
                            const ChannelProcess& channel) {
    if (rx < 0 || rx >= plan.n_rx || ledger.n_slots != plan.n_slots) {
        throw InvalidDimension("decode: ledger/plan mismatch");
    }
    DecodeOutcome out;
    out.desired = desired_symbols(plan, rx);
    if (plan.n_slots == 0) {
        out.identifiable = out.desired.empty();
        return out;
    }
    const Eigen::MatrixXcd a = observation_matrix(plan, channel, rx);
    Eigen::VectorXcd y(plan.n_slots);
    for (int t = 0; t < plan.n_slots; ++t) y(t) = ledger.rows[static_cast<std::size_t>(rx)][static_cast<std::size_t>(t)].value;

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    const double tol = kNullSpaceTol * std::max(smax, 1.0);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > tol) ++rank;

    for (int d : out.desired) {
        for (Eigen::Index nv = rank; nv < svd.matrixV().cols(); ++nv) {
            if (std::abs(svd.matrixV()(d, nv)) > kNullSpaceTol) {
                out.unresolvable.push_back(d);
                break;
            }
        }
    }
    if (!out.unresolvable.empty()) return out;

    // Min-norm solution via the SVD pseudo-inverse.
    Eigen::VectorXcd z = svd.matrixU().adjoint() * y;
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(a.cols());
    for (Eigen::Index i = 0; i < rank; ++i) w(i) = z(i) / sv(i);
    Eigen::VectorXcd s = svd.matrixV() * w;
    out.identifiable = true;
    out.values.reserve(out.desired.size());
    for (int d : out.desired) out.values.push_back(s(d));
    return out;
}

namespace detail {

/// The square subtraction system a receiver solves along the written-out
/// recipes: clean slots give equations directly; each resurrection pair
/// contributes the difference of its two slots, which cancels the shared
/// interference term.
struct RecipeSystem {
    Eigen::MatrixXcd m;  // equations x desired
    Eigen::VectorXcd rhs;
    std::vector<int> desired;
};

inline RecipeSystem recipe_system(const ReceiverLedger& ledger, int rx, const TransmitPlan& plan,
                                  const ChannelProcess& channel) {
    RecipeSystem sys;
    sys.desired = desired_symbols(plan, rx);
    const Eigen::MatrixXcd a = observation_matrix(plan, channel, rx);
    std::vector<Eigen::RowVectorXcd> rows;
    std::vector<cplx> rhs;
    auto desired_row = [&](int slot) {
        Eigen::RowVectorXcd r(sys.desired.size());
        for (std::size_t i = 0; i < sys.desired.size(); ++i) r(static_cast<Eigen::Index>(i)) = a(slot, sys.desired[i]);
        return r;
    };
    auto value = [&](int slot) { return ledger.rows[static_cast<std::size_t>(rx)][static_cast<std::size_t>(slot)].value; };
    for (int t = 0; t < plan.n_slots; ++t) {
        if (annotation(plan, t, rx) == SignalKind::Desired) {
            rows.push_back(desired_row(t));
            rhs.push_back(value(t));
        }
    }
    for (const auto& r : plan.resurrections) {
        if (r.rx != rx) continue;
        rows.push_back(desired_row(r.resurrection_slot) - desired_row(r.creation_slot));
        rhs.push_back(value(r.resurrection_slot) - value(r.creation_slot));
    }
    sys.m.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(sys.desired.size()));
    sys.rhs.resize(static_cast<Eigen::Index>(rhs.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        sys.m.row(static_cast<Eigen::Index>(i)) = rows[i];
        sys.rhs(static_cast<Eigen::Index>(i)) = rhs[i];
    }
    return sys;
}

}  // namespace detail

/// Decodes along the subtraction recipe. Independent of the null-space route.
inline DecodeOutcome recipe_decode(const ReceiverLedger& ledger, int rx, const TransmitPlan& plan,
                                   const ChannelProcess& channel) {
    detail::RecipeSystem sys = detail::recipe_system(ledger, rx, plan, channel);
    DecodeOutcome out;
    out.desired = sys.desired;
    if (sys.desired.empty()) {
        out.identifiable = true;
        return out;
    }
    if (sys.m.rows() != sys.m.cols()) {
        out.unresolvable = sys.desired;
        return out;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys.m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= kNullSpaceTol * std::max(sv(0), 1.0)) {
        out.unresolvable = sys.desired;
        return out;
    }
    Eigen::VectorXcd s = svd.solve(sys.rhs);
    out.identifiable = true;
    out.values.assign(s.data(), s.data() + s.size());
    return out;
}

/// Condition number of the receiver's square recipe system.
inline double recipe_condition(const ReceiverLedger& ledger, int rx, const TransmitPlan& plan,
                               const ChannelProcess& channel) {
    detail::RecipeSystem sys = detail::recipe_system(ledger, rx, plan, channel);
    if (sys.m.rows() == 0) return 1.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sys.m);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    return smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
}

struct ZfCombiner {
    bool ok = false;
    std::vector<int> desired;
    Eigen::MatrixXcd w;  // desired x slots; w * A = [I on desired, 0 elsewhere]
};

/// Zero-forcing combiner: rows of w reproduce each desired symbol exactly and
/// annihilate every interference column. Exists iff the receiver's desired
/// coordinates are identifiable; the min-norm rows give the per-stream noise
/// gains used for SINR accounting.
inline ZfCombiner zero_forcing_combiner(const TransmitPlan& plan, const ChannelProcess& channel,
                                        int rx) {
    ZfCombiner zf;
    zf.desired = desired_symbols(plan, rx);
    const Eigen::MatrixXcd a = observation_matrix(plan, channel, rx);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    const double tol = kNullSpaceTol * std::max(smax, 1.0);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > tol) ++rank;

    // w = E * pinv(A) with E the desired-row selector; then verify w A = E.
    Eigen::MatrixXcd pinv = Eigen::MatrixXcd::Zero(a.cols(), a.rows());
    for (Eigen::Index i = 0; i < rank; ++i) {
        pinv += (1.0 / sv(i)) * svd.matrixV().col(i) * svd.matrixU().col(i).adjoint();
    }
    zf.w.resize(static_cast<Eigen::Index>(zf.desired.size()), a.rows());
    for (std::size_t d = 0; d < zf.desired.size(); ++d) {
        zf.w.row(static_cast<Eigen::Index>(d)) = pinv.row(zf.desired[d]);
    }
    Eigen::MatrixXcd check = zf.w * a;
    double err = 0.0;
    for (std::size_t d = 0; d < zf.desired.size(); ++d) {
        for (Eigen::Index s = 0; s < check.cols(); ++s) {
            const cplx want = s == zf.desired[d] ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
            err = std::max(err, std::abs(check(static_cast<Eigen::Index>(d), s) - want));
        }
    }
    zf.ok = err <= 1e-6;
    return zf;
}

}  // namespace xnet

#endif  // XNET_DECODE_HPP
