#ifndef XNET_CHANNEL_HPP
#define XNET_CHANNEL_HPP

/**
 * Fast-fading channel model: i.i.d. circularly symmetric complex Gaussian
 * coefficients, sampled per (receiver, transmitter, slot), and the
 * received-signal equation Y_i(t) = sum_j h_ij(t) X_j(t) + N_i(t).
 */

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "xnet/errors.hpp"

namespace xnet {

using cplx = std::complex<double>;

/// Coefficients whose magnitude falls below this floor are resampled.
/// Schemes invert current coefficients, so a floor bounds the blow-up of
/// any single inversion at 1e6 without measurably changing the statistics.
inline constexpr double kMagnitudeFloor = 1e-6;

namespace detail {

/// splitmix64; used to derive decorrelated substreams from (seed, index) pairs.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t substream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index) {
    return mix64(mix64(seed ^ (0x517cc1b727220a95ull * tag)) + index);
}

}  // namespace detail

/// One realization of the fading process for a whole run.
/// Immutable after construction; safe to share across threads read-only.
struct ChannelProcess {
    int n_rx = 0;
    int n_tx = 0;
    int n_slots = 0;
    std::vector<cplx> h;  // indexed (slot * n_rx + rx) * n_tx + tx

    const cplx& coeff(int rx, int tx, int slot) const {
        return h[static_cast<std::size_t>(slot * n_rx + rx) * n_tx + tx];
    }
    cplx& coeff(int rx, int tx, int slot) {
        return h[static_cast<std::size_t>(slot * n_rx + rx) * n_tx + tx];
    }
};

struct NoiseConfig {
    double variance = 0.0;
    bool enabled = false;

    static NoiseConfig noiseless() { return {0.0, false}; }
    static NoiseConfig with_variance(double v) { return {v, v > 0.0}; }
};

struct PowerConfig {
    double per_tx_power = 1.0;       // P
    bool normalize_precoders = false;
};

/// Draws one CN(0,1) variate, resampling below the magnitude floor.
template <typename Engine>
cplx sample_cn01(Engine& eng) {
    std::normal_distribution<double> comp(0.0, 1.0 / std::sqrt(2.0));
    cplx z;
    do {
        z = cplx(comp(eng), comp(eng));
    } while (std::abs(z) < kMagnitudeFloor);
    return z;
}

/// Samples the full coefficient grid. Identical (seed, dimensions) give
/// identical output; entries are independent across all indices.
inline ChannelProcess sample_channel(int n_rx, int n_tx, int n_slots, std::uint64_t seed) {
    if (n_rx < 1 || n_tx < 1 || n_slots < 1) {
        throw InvalidDimension("sample_channel: all dimensions must be >= 1");
    }
    ChannelProcess p;
    p.n_rx = n_rx;
    p.n_tx = n_tx;
    p.n_slots = n_slots;
    p.h.resize(static_cast<std::size_t>(n_rx) * n_tx * n_slots);
    std::mt19937_64 eng(detail::substream(seed, /*tag=*/1, 0));
    for (auto& z : p.h) z = sample_cn01(eng);
    return p;
}

/// Applies Y_i = sum_j h_ij(t) x_j, plus a CN(0, variance) sample per receiver
/// when noise is enabled. The noise stream is seeded independently of the
/// channel draw so noiseless and noisy runs share the same fading realization.
inline std::vector<cplx> apply_channel(const ChannelProcess& process, std::span<const cplx> x,
                                       int t, const NoiseConfig& noise,
                                       std::uint64_t rng_stream = 0) {
    if (t < 0 || t >= process.n_slots) {
        throw SlotOutOfRange("apply_channel: slot " + std::to_string(t) + " out of range");
    }
    if (static_cast<int>(x.size()) != process.n_tx) {
        throw InvalidDimension("apply_channel: transmit vector length mismatch");
    }
    std::vector<cplx> y(static_cast<std::size_t>(process.n_rx), cplx(0.0, 0.0));
    for (int i = 0; i < process.n_rx; ++i) {
        cplx acc(0.0, 0.0);
        for (int j = 0; j < process.n_tx; ++j) acc += process.coeff(i, j, t) * x[j];
        y[i] = acc;
    }
    if (noise.enabled && noise.variance > 0.0) {
        std::mt19937_64 eng(detail::substream(rng_stream, /*tag=*/2, static_cast<std::uint64_t>(t)));
        std::normal_distribution<double> comp(0.0, std::sqrt(noise.variance / 2.0));
        for (auto& v : y) v += cplx(comp(eng), comp(eng));
    }
    return y;
}

}  // namespace xnet

#endif  // XNET_CHANNEL_HPP
