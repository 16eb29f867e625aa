#ifndef XNET_DOF_POINT_HPP
#define XNET_DOF_POINT_HPP

#include <array>
#include <vector>

#include "xnet/errors.hpp"
#include "xnet/rational.hpp"

namespace xnet {

/// A two-user DoF tuple (d11, d12, d21, d22), float coordinates.
struct DofPoint {
    std::array<double, 4> d{};

    double operator[](int i) const { return d[static_cast<std::size_t>(i)]; }
    double sum() const { return d[0] + d[1] + d[2] + d[3]; }
};

/// Exact-rational DoF tuple, used by time sharing.
struct DofPointR {
    std::array<Rational, 4> d{};

    friend bool operator==(const DofPointR&, const DofPointR&) = default;

    DofPoint to_double() const {
        return {{xnet::to_double(d[0]), xnet::to_double(d[1]), xnet::to_double(d[2]),
                 xnet::to_double(d[3])}};
    }
};

/// The six generators of the two-user region: one transmitter dedicated to
/// one receiver (K, L, M, N), silence (O), and the symmetric all-thirds
/// point (P) reached by the three-slot schemes.
namespace corners {
inline DofPointR K() { return {{Rational(1), Rational(0), Rational(0), Rational(0)}}; }
inline DofPointR L() { return {{Rational(0), Rational(1), Rational(0), Rational(0)}}; }
inline DofPointR M() { return {{Rational(0), Rational(0), Rational(1), Rational(0)}}; }
inline DofPointR N() { return {{Rational(0), Rational(0), Rational(0), Rational(1)}}; }
inline DofPointR O() { return {{Rational(0), Rational(0), Rational(0), Rational(0)}}; }
inline DofPointR P() {
    return {{Rational(1, 3), Rational(1, 3), Rational(1, 3), Rational(1, 3)}};
}
/// Generator order used for decomposition weights.
inline std::array<DofPointR, 6> all() { return {K(), L(), M(), N(), O(), P()}; }
}  // namespace corners

/// Convex combination of DoF tuples with exact rational weights.
inline DofPointR time_share(const std::vector<std::pair<DofPointR, Rational>>& parts) {
    Rational total(0);
    for (const auto& [point, w] : parts) {
        (void)point;
        if (w < Rational(0)) throw InvalidWeights("time_share: negative weight");
        total += w;
    }
    if (total != Rational(1)) throw InvalidWeights("time_share: weights must sum to 1");
    DofPointR out;
    for (const auto& [point, w] : parts) {
        for (int i = 0; i < 4; ++i) out.d[static_cast<std::size_t>(i)] += w * point.d[static_cast<std::size_t>(i)];
    }
    return out;
}

/// Scalar form for sum-DoF arithmetic between strategies.
inline Rational time_share_sum(const std::vector<std::pair<Rational, Rational>>& parts) {
    Rational total(0);
    for (const auto& [value, w] : parts) {
        (void)value;
        if (w < Rational(0)) throw InvalidWeights("time_share_sum: negative weight");
        total += w;
    }
    if (total != Rational(1)) throw InvalidWeights("time_share_sum: weights must sum to 1");
    Rational out(0);
    for (const auto& [value, w] : parts) out += w * value;
    return out;
}

}  // namespace xnet

#endif  // XNET_DOF_POINT_HPP
