#ifndef XNET_SCHEMES_HPP
#define XNET_SCHEMES_HPP

/**
 * Two-phase transmission plans: interference creation (raw symbols or symbol
 * sums sent while delayed CSIT accrues) followed by interference resurrection
 * (products of inverted current coefficients with stored delayed coefficients
 * that reproduce a past interference term at one receiver while delivering a
 * fresh desired combination to another).
 *
 * Every coefficient is obtained through a CsitView, so a plan cannot embed
 * channel knowledge the pattern does not grant; each coefficient keeps the
 * provenance of the queries that produced it.
 */

#include <algorithm>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "xnet/channel.hpp"
#include "xnet/csit.hpp"
#include "xnet/dof_point.hpp"
#include "xnet/errors.hpp"
#include "xnet/rational.hpp"
#include "xnet/scheme_id.hpp"

namespace xnet {

/// m-th data symbol originating at transmitter tx and intended for rx.
struct SymbolId {
    int rx = 0;
    int tx = 0;
    int m = 0;

    friend bool operator==(const SymbolId&, const SymbolId&) = default;
};

/// Scheme-defined symbol table plus the i.i.d. unit-power values for a run.
struct SymbolGrid {
    std::vector<SymbolId> table;
    std::vector<cplx> value;
};

struct PlanTerm {
    cplx coeff;
    int symbol = 0;  // index into the plan's symbol table
    std::vector<CsitQuery> provenance;
};

/// Bookkeeping: at receiver rx, the signal of resurrection_slot reproduces the
/// interference this receiver picked up in creation_slot.
struct Resurrection {
    int rx = 0;
    int creation_slot = 0;
    int resurrection_slot = 0;
};

struct TransmitPlan {
    SchemeId scheme;
    int n_tx = 0;
    int n_rx = 0;
    int n_slots = 0;
    SymbolGrid symbols;
    std::vector<std::vector<std::vector<PlanTerm>>> terms;  // [slot][tx]
    std::vector<Resurrection> resurrections;
    std::vector<double> slot_scale;  // power normalization applied per slot
};

enum class SignalKind { Desired, Interference, Mixed };

inline char signal_kind_char(SignalKind k) {
    switch (k) {
        case SignalKind::Desired: return 'L';
        case SignalKind::Interference: return 'I';
        case SignalKind::Mixed: return 'M';
    }
    return '?';
}

struct LedgerEntry {
    int slot = 0;
    cplx value{};
    SignalKind kind = SignalKind::Interference;
};

/// One entry per slot per receiver, plus the receiver-side channel knowledge
/// (receivers have full CSIR).
struct ReceiverLedger {
    int n_rx = 0;
    int n_slots = 0;
    std::vector<std::vector<LedgerEntry>> rows;  // [rx][slot]
    const ChannelProcess* csir = nullptr;
};

/// Static shape of a scheme: dimensions, symbol table and the minimal CSIT
/// pattern it requires.
struct SchemeInfo {
    SchemeId id;
    int n_tx = 0;
    int n_rx = 0;
    int n_slots = 0;
    std::vector<SymbolId> symbols;
    CsitPattern minimal_pattern;
};

namespace detail {

// ---------- scheme layout descriptions ----------

inline void expect_even(int k, const char* who) {
    if (k % 2 != 0) throw InvalidDimension(std::string(who) + ": internal even-K layout misuse");
}

/// K x 2 creation batch: the u symbols (for rx 0) and v symbols (for rx 1)
/// sent together in one slot, as (tx, m) pairs.
struct X2Batch {
    std::vector<std::pair<int, int>> u;
    std::vector<std::pair<int, int>> v;
};

struct X2SlotSpec {
    bool creation = true;
    int batch = 0;
    int rx = 0;  // resurrection target when !creation
};

struct X2Layout {
    int n_tx = 0;
    std::vector<X2Batch> batches;
    std::vector<X2SlotSpec> schedule;
};

/// Even-K layout generalizing the 4 x 2 construction: K/2 batches of four
/// symbols, with the v group shifted one transmitter ahead of the u group.
inline X2Layout x2_even_layout(int k, int tx_offset, int m_offset) {
    expect_even(k, "x2_even_layout");
    X2Layout lay;
    lay.n_tx = k;
    for (int b = 0; b < k / 2; ++b) {
        X2Batch batch;
        batch.u = {{tx_offset + 2 * b, m_offset}, {tx_offset + 2 * b + 1, m_offset}};
        batch.v = {{tx_offset + 2 * b + 1, m_offset}, {tx_offset + (2 * b + 2) % k, m_offset}};
        lay.batches.push_back(std::move(batch));
    }
    for (int b = 0; b < k / 2; ++b) lay.schedule.push_back({true, b, 0});
    for (int b = 0; b < k / 2; ++b) lay.schedule.push_back({false, b, 0});
    for (int b = 0; b < k / 2; ++b) lay.schedule.push_back({false, b, 1});
    return lay;
}

/// The explicit 3 x 2 construction: twelve symbols over nine slots, with the
/// per-receiver resurrections interleaved slot by slot.
inline X2Layout x2_three_layout(int tx_offset) {
    X2Layout lay;
    lay.n_tx = 3;
    auto tx = [tx_offset](int j) { return tx_offset + j; };
    lay.batches = {
        {{{tx(0), 0}, {tx(2), 0}}, {{tx(0), 0}, {tx(1), 0}}},
        {{{tx(0), 1}, {tx(1), 0}}, {{tx(1), 1}, {tx(2), 0}}},
        {{{tx(1), 1}, {tx(2), 1}}, {{tx(0), 1}, {tx(2), 1}}},
    };
    for (int b = 0; b < 3; ++b) lay.schedule.push_back({true, b, 0});
    for (int b = 0; b < 3; ++b) {
        lay.schedule.push_back({false, b, 0});
        lay.schedule.push_back({false, b, 1});
    }
    return lay;
}

/// Full K x 2 layout; odd K > 3 runs the 3 x 2 block first and the even
/// remainder after it on the remaining transmitters.
inline X2Layout x2_layout(int k) {
    if (k == 3) return x2_three_layout(0);
    if (k % 2 == 0) return x2_even_layout(k, 0, 0);
    X2Layout a = x2_three_layout(0);
    X2Layout b = x2_even_layout(k - 3, 3, 0);
    X2Layout lay;
    lay.n_tx = k;
    lay.batches = a.batches;
    const int batch_shift = static_cast<int>(a.batches.size());
    lay.batches.insert(lay.batches.end(), b.batches.begin(), b.batches.end());
    lay.schedule = a.schedule;
    for (X2SlotSpec s : b.schedule) {
        s.batch += batch_shift;
        lay.schedule.push_back(s);
    }
    return lay;
}

/// 2 x K creation slot: the pair for receiver rx (symbol index m), sent while
/// receiver d_rx sits in state D so the interference is reconstructable.
struct TwoXKCreation {
    int rx = 0;
    int m = 0;
    int d_rx = 0;
};

struct TwoXKSlotSpec {
    bool creation = true;
    int index = 0;        // creation index when creation
    int c1 = 0, c2 = 0;   // the two cross-serving creation slots otherwise
};

struct TwoXKLayout {
    int n_rx = 0;
    std::vector<TwoXKCreation> creations;
    std::vector<TwoXKSlotSpec> schedule;
};

inline TwoXKLayout two_xk_even_layout(int k, int rx_offset) {
    expect_even(k, "two_xk_even_layout");
    TwoXKLayout lay;
    lay.n_rx = k;
    for (int p = 0; p < k / 2; ++p) {
        const int a = rx_offset + 2 * p, b = rx_offset + 2 * p + 1;
        lay.creations.push_back({a, 0, b});
        lay.creations.push_back({b, 0, a});
    }
    for (int c = 0; c < k; ++c) lay.schedule.push_back({true, c, 0, 0});
    for (int p = 0; p < k / 2; ++p) lay.schedule.push_back({false, 0, 2 * p, 2 * p + 1});
    return lay;
}

/// The explicit 2 x 3 construction: eight symbols (receiver 1 gets a double
/// share) over six slots.
inline TwoXKLayout two_xk_three_layout(int rx_offset) {
    TwoXKLayout lay;
    lay.n_rx = 3;
    auto rx = [rx_offset](int i) { return rx_offset + i; };
    lay.creations = {
        {rx(0), 0, rx(1)},
        {rx(1), 0, rx(0)},
        {rx(1), 1, rx(2)},
        {rx(2), 0, rx(1)},
    };
    for (int c = 0; c < 4; ++c) lay.schedule.push_back({true, c, 0, 0});
    lay.schedule.push_back({false, 0, 0, 1});
    lay.schedule.push_back({false, 0, 3, 2});
    return lay;
}

inline TwoXKLayout two_xk_layout(int k) {
    if (k == 3) return two_xk_three_layout(0);
    if (k % 2 == 0) return two_xk_even_layout(k, 0);
    TwoXKLayout a = two_xk_three_layout(0);
    TwoXKLayout b = two_xk_even_layout(k - 3, 3);
    TwoXKLayout lay;
    lay.n_rx = k;
    lay.creations = a.creations;
    const int shift = static_cast<int>(a.creations.size());
    lay.creations.insert(lay.creations.end(), b.creations.begin(), b.creations.end());
    lay.schedule = a.schedule;
    for (TwoXKSlotSpec s : b.schedule) {
        if (s.creation) {
            s.index += shift;
        } else {
            s.c1 += shift;
            s.c2 += shift;
        }
        lay.schedule.push_back(s);
    }
    return lay;
}

inline int creation_slot_of(const std::vector<TwoXKSlotSpec>& schedule, int creation_index) {
    for (int t = 0; t < static_cast<int>(schedule.size()); ++t) {
        if (schedule[t].creation && schedule[t].index == creation_index) return t;
    }
    throw std::logic_error("two_xk schedule: creation index not scheduled");
}

}  // namespace detail

/// Static description (dimensions, symbol table, minimal pattern) of a scheme.
inline SchemeInfo describe(const SchemeId& id) {
    SchemeInfo info;
    info.id = id;
    switch (id.kind) {
        case SchemeKind::Scheme1:
        case SchemeKind::Scheme1M:
        case SchemeKind::Scheme2:
        case SchemeKind::Scheme2M:
        case SchemeKind::Scheme3:
        case SchemeKind::Scheme3M: {
            info.n_tx = 2;
            info.n_rx = 2;
            info.n_slots = 3;
            info.symbols = {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 0}};  // u1 u2 v1 v2
            for (const auto& [sid, pat] : scheme_table()) {
                if (sid == id) info.minimal_pattern = pat;
            }
            break;
        }
        case SchemeKind::ThreeUser:
        case SchemeKind::KUser: {
            const int k = id.kind == SchemeKind::ThreeUser ? 3 : id.k;
            if (k < 2) throw InvalidDimension("kuser: K must be >= 2");
            info.n_tx = k;
            info.n_rx = k;
            info.n_slots = k + k * (k - 1) / 2;
            for (int r = 0; r < k; ++r) {
                for (int j = 0; j < k; ++j) info.symbols.push_back({r, j, 0});
            }
            CsitPattern pat(info.n_slots, k);
            for (int r = 0; r < k; ++r) {
                for (int i = 0; i < k; ++i) pat.set(r, i, i == r ? CsitState::N : CsitState::D);
            }
            int t = k;
            for (int a = 0; a < k; ++a) {
                for (int b = a + 1; b < k; ++b, ++t) {
                    pat.set(t, a, CsitState::P);
                    pat.set(t, b, CsitState::P);
                }
            }
            info.minimal_pattern = pat;
            break;
        }
        case SchemeKind::Kx2: {
            if (id.k < 2) throw InvalidDimension("kx2: K must be >= 2");
            detail::X2Layout lay = detail::x2_layout(id.k);
            info.n_tx = id.k;
            info.n_rx = 2;
            info.n_slots = static_cast<int>(lay.schedule.size());
            for (const auto& batch : lay.batches) {
                for (auto [tx, m] : batch.u) info.symbols.push_back({0, tx, m});
                for (auto [tx, m] : batch.v) info.symbols.push_back({1, tx, m});
            }
            CsitPattern pat(info.n_slots, 2);
            for (int s = 0; s < info.n_slots; ++s) {
                if (lay.schedule[s].creation) {
                    pat.set(s, 0, CsitState::D);
                    pat.set(s, 1, CsitState::D);
                } else {
                    pat.set(s, lay.schedule[s].rx, CsitState::P);
                }
            }
            info.minimal_pattern = pat;
            break;
        }
        case SchemeKind::TwoXK: {
            if (id.k < 2) throw InvalidDimension("2xk: K must be >= 2");
            detail::TwoXKLayout lay = detail::two_xk_layout(id.k);
            info.n_tx = 2;
            info.n_rx = id.k;
            info.n_slots = static_cast<int>(lay.schedule.size());
            for (const auto& c : lay.creations) {
                info.symbols.push_back({c.rx, 0, c.m});
                info.symbols.push_back({c.rx, 1, c.m});
            }
            CsitPattern pat(info.n_slots, id.k);
            for (int s = 0; s < info.n_slots; ++s) {
                const auto& spec = lay.schedule[s];
                if (spec.creation) {
                    pat.set(s, lay.creations[spec.index].d_rx, CsitState::D);
                } else {
                    pat.set(s, lay.creations[spec.c1].d_rx, CsitState::P);
                    pat.set(s, lay.creations[spec.c2].d_rx, CsitState::P);
                }
            }
            info.minimal_pattern = pat;
            break;
        }
    }
    return info;
}

/// Symbols delivered per slot used, as an exact rational.
inline Rational dof_count(const SchemeId& id) {
    SchemeInfo info = describe(id);
    return Rational(static_cast<long long>(info.symbols.size()), info.n_slots);
}

/// The DoF tuple a two-user scheme achieves (the symmetric all-thirds point).
inline DofPointR dof_point(const SchemeId& id) {
    if (describe(id).n_rx != 2 || describe(id).n_tx != 2) {
        throw InvalidDimension("dof_point: defined for two-user schemes only");
    }
    return corners::P();
}

/// Draws the scheme's data symbols, i.i.d. CN(0,1) (unit average power).
inline SymbolGrid sample_symbols(const SchemeInfo& info, std::uint64_t seed) {
    SymbolGrid grid;
    grid.table = info.symbols;
    grid.value.resize(grid.table.size());
    std::mt19937_64 eng(detail::substream(seed, /*tag=*/3, 0));
    std::normal_distribution<double> comp(0.0, 1.0 / std::sqrt(2.0));
    for (auto& v : grid.value) v = cplx(comp(eng), comp(eng));
    return grid;
}

namespace detail {

class PlanBuilder {
public:
    PlanBuilder(const SchemeInfo& info, const CsitPattern& pattern, const ChannelProcess& channel,
                SymbolGrid symbols)
        : pattern_(&pattern), channel_(&channel) {
        plan_.scheme = info.id;
        plan_.n_tx = info.n_tx;
        plan_.n_rx = info.n_rx;
        plan_.n_slots = info.n_slots;
        plan_.symbols = std::move(symbols);
        plan_.terms.assign(static_cast<std::size_t>(info.n_slots),
                           std::vector<std::vector<PlanTerm>>(static_cast<std::size_t>(info.n_tx)));
        plan_.slot_scale.assign(static_cast<std::size_t>(info.n_slots), 1.0);
    }

    /// Creation-phase term: the raw symbol, no channel knowledge involved.
    void raw(int slot, int symbol) {
        const int tx = plan_.symbols.table[static_cast<std::size_t>(symbol)].tx;
        plan_.terms[static_cast<std::size_t>(slot)][static_cast<std::size_t>(tx)].push_back(
            {cplx(1.0, 0.0), symbol, {}});
    }

    /// Resurrection-phase term: h^{-1}(slot) h(creation_slot) for the channel
    /// to at_rx, both obtained through the transmitter's CSIT view.
    void resurrect(int slot, int at_rx, int creation_slot, int symbol) {
        const int tx = plan_.symbols.table[static_cast<std::size_t>(symbol)].tx;
        CsitView view(*pattern_, *channel_, tx, slot);
        PlanTerm term;
        term.symbol = symbol;
        const cplx now = view.require(at_rx, slot, term.provenance);
        const cplx past = view.require(at_rx, creation_slot, term.provenance);
        term.coeff = past / now;
        plan_.terms[static_cast<std::size_t>(slot)][static_cast<std::size_t>(tx)].push_back(
            std::move(term));
    }

    void record(int rx, int creation_slot, int resurrection_slot) {
        plan_.resurrections.push_back({rx, creation_slot, resurrection_slot});
    }

    int find_symbol(const SymbolId& sid) const {
        for (int i = 0; i < static_cast<int>(plan_.symbols.table.size()); ++i) {
            if (plan_.symbols.table[static_cast<std::size_t>(i)] == sid) return i;
        }
        throw std::logic_error("plan builder: unknown symbol");
    }

    TransmitPlan finish() { return std::move(plan_); }

private:
    const CsitPattern* pattern_;
    const ChannelProcess* channel_;
    TransmitPlan plan_;
};

inline void build_two_user(PlanBuilder& b, SchemeKind kind) {
    const int u1 = 0, u2 = 1, v1 = 2, v2 = 3;
    auto raw_pair = [&](int slot, int rx) {
        b.raw(slot, rx == 0 ? u1 : v1);
        b.raw(slot, rx == 0 ? u2 : v2);
    };
    auto resurrect_pair = [&](int slot, int at_rx, int creation_slot, int rx_of_symbols) {
        b.resurrect(slot, at_rx, creation_slot, rx_of_symbols == 0 ? u1 : v1);
        b.resurrect(slot, at_rx, creation_slot, rx_of_symbols == 0 ? u2 : v2);
        b.record(at_rx, creation_slot, slot);
    };
    switch (kind) {
        case SchemeKind::Scheme1:
        case SchemeKind::Scheme1M: {
            // Greedy creation of everything, then one dedicated resurrection
            // slot per receiver.
            const int first = kind == SchemeKind::Scheme1 ? 0 : 1;
            raw_pair(0, 0);
            raw_pair(0, 1);
            resurrect_pair(1, first, 0, 1 - first);
            resurrect_pair(2, 1 - first, 0, first);
            break;
        }
        case SchemeKind::Scheme2:
        case SchemeKind::Scheme2M: {
            // One creation slot per receiver, combined resurrection at the end.
            const int first = kind == SchemeKind::Scheme2 ? 0 : 1;
            raw_pair(0, first);
            raw_pair(1, 1 - first);
            resurrect_pair(2, 1 - first, 0, first);
            resurrect_pair(2, first, 1, 1 - first);
            break;
        }
        case SchemeKind::Scheme3:
        case SchemeKind::Scheme3M: {
            // Overlapping phases: slot 1 creates for one receiver while
            // resurrecting the other receiver's slot-0 interference.
            const int first = kind == SchemeKind::Scheme3 ? 1 : 0;
            raw_pair(0, first);
            raw_pair(1, 1 - first);
            resurrect_pair(1, 1 - first, 0, first);
            resurrect_pair(2, first, 1, 1 - first);
            break;
        }
        default:
            throw std::logic_error("build_two_user: not a two-user scheme");
    }
}

inline void build_k_user(PlanBuilder& b, const SchemeInfo& info) {
    const int k = info.n_rx;
    auto sym = [&](int rx, int tx) { return b.find_symbol({rx, tx, 0}); };
    for (int r = 0; r < k; ++r) {
        for (int j = 0; j < k; ++j) b.raw(r, sym(r, j));
    }
    int t = k;
    for (int a = 0; a < k; ++a) {
        for (int bb = a + 1; bb < k; ++bb, ++t) {
            for (int j = 0; j < k; ++j) {
                b.resurrect(t, bb, a, sym(a, j));
                b.resurrect(t, a, bb, sym(bb, j));
            }
            b.record(bb, a, t);
            b.record(a, bb, t);
        }
    }
}

inline void build_kx2(PlanBuilder& b, const X2Layout& lay) {
    std::vector<int> batch_slot(lay.batches.size(), -1);
    for (int t = 0; t < static_cast<int>(lay.schedule.size()); ++t) {
        if (lay.schedule[t].creation) batch_slot[static_cast<std::size_t>(lay.schedule[t].batch)] = t;
    }
    for (int t = 0; t < static_cast<int>(lay.schedule.size()); ++t) {
        const auto& spec = lay.schedule[t];
        const X2Batch& batch = lay.batches[static_cast<std::size_t>(spec.batch)];
        if (spec.creation) {
            for (auto [tx, m] : batch.u) b.raw(t, b.find_symbol({0, tx, m}));
            for (auto [tx, m] : batch.v) b.raw(t, b.find_symbol({1, tx, m}));
        } else {
            const int c = batch_slot[static_cast<std::size_t>(spec.batch)];
            const auto& group = spec.rx == 0 ? batch.v : batch.u;  // interference at rx
            for (auto [tx, m] : group) {
                b.resurrect(t, spec.rx, c, b.find_symbol({spec.rx == 0 ? 1 : 0, tx, m}));
            }
            b.record(spec.rx, c, t);
        }
    }
}

inline void build_two_xk(PlanBuilder& b, const TwoXKLayout& lay) {
    for (int t = 0; t < static_cast<int>(lay.schedule.size()); ++t) {
        const auto& spec = lay.schedule[t];
        if (spec.creation) {
            const auto& c = lay.creations[static_cast<std::size_t>(spec.index)];
            b.raw(t, b.find_symbol({c.rx, 0, c.m}));
            b.raw(t, b.find_symbol({c.rx, 1, c.m}));
        } else {
            const auto& c1 = lay.creations[static_cast<std::size_t>(spec.c1)];
            const auto& c2 = lay.creations[static_cast<std::size_t>(spec.c2)];
            const int s1 = creation_slot_of(lay.schedule, spec.c1);
            const int s2 = creation_slot_of(lay.schedule, spec.c2);
            for (int tx = 0; tx < 2; ++tx) {
                b.resurrect(t, c1.d_rx, s1, b.find_symbol({c1.rx, tx, c1.m}));
                b.resurrect(t, c2.d_rx, s2, b.find_symbol({c2.rx, tx, c2.m}));
            }
            b.record(c1.d_rx, s1, t);
            b.record(c2.d_rx, s2, t);
        }
    }
}

}  // namespace detail

/**
 * Builds the slot-by-slot transmit plan of a scheme. The pattern must
 * dominate the scheme's minimal pattern; channel and symbol shapes must
 * match. All coefficients come through CsitView, so the returned plan's
 * provenance lists contain only granted queries.
 */
inline TransmitPlan build_plan(const SchemeId& scheme, const CsitPattern& pattern,
                               const ChannelProcess& channel, const SymbolGrid& symbols) {
    SchemeInfo info = describe(scheme);
    if (pattern.n_rx != info.n_rx || pattern.n_slots() != info.n_slots ||
        !dominates(pattern, info.minimal_pattern)) {
        throw PatternMismatch("build_plan: pattern does not dominate minimal pattern " +
                              info.minimal_pattern.to_string() + " of " + scheme_name(scheme));
    }
    if (channel.n_rx != info.n_rx || channel.n_tx != info.n_tx) {
        throw InvalidDimension("build_plan: channel dimensions do not match scheme");
    }
    if (channel.n_slots < info.n_slots) {
        throw InvalidDimension("build_plan: channel has fewer slots than the plan needs");
    }
    if (symbols.table != info.symbols || symbols.value.size() != symbols.table.size()) {
        throw InvalidDimension("build_plan: symbol grid does not match scheme symbol table");
    }
    detail::PlanBuilder b(info, pattern, channel, symbols);
    switch (scheme.kind) {
        case SchemeKind::Scheme1:
        case SchemeKind::Scheme1M:
        case SchemeKind::Scheme2:
        case SchemeKind::Scheme2M:
        case SchemeKind::Scheme3:
        case SchemeKind::Scheme3M:
            detail::build_two_user(b, scheme.kind);
            break;
        case SchemeKind::ThreeUser:
        case SchemeKind::KUser:
            detail::build_k_user(b, info);
            break;
        case SchemeKind::Kx2:
            detail::build_kx2(b, detail::x2_layout(scheme.k));
            break;
        case SchemeKind::TwoXK:
            detail::build_two_xk(b, detail::two_xk_layout(scheme.k));
            break;
    }
    return b.finish();
}

/// What receiver rx structurally sees in a slot: a combination of its own
/// symbols, pure interference, or both.
inline SignalKind annotation(const TransmitPlan& plan, int slot, int rx) {
    bool desired = false, undesired = false;
    for (const auto& tx_terms : plan.terms[static_cast<std::size_t>(slot)]) {
        for (const auto& term : tx_terms) {
            if (plan.symbols.table[static_cast<std::size_t>(term.symbol)].rx == rx) desired = true;
            else undesired = true;
        }
    }
    if (desired && undesired) return SignalKind::Mixed;
    if (desired) return SignalKind::Desired;
    return SignalKind::Interference;
}

/// Rescales every slot by a common factor so the strongest transmitter in
/// the slot emits unit average power (times any symbol-level power applied
/// separately). A per-transmitter rescale would break the coefficient ratios
/// the resurrection slots rely on; a common slot factor keeps every
/// transmitter at or under the cap. Scales are recorded in slot_scale.
inline void normalize_plan(TransmitPlan& plan) {
    for (int t = 0; t < plan.n_slots; ++t) {
        double worst = 0.0;
        for (const auto& tx_terms : plan.terms[static_cast<std::size_t>(t)]) {
            double p = 0.0;
            for (const auto& term : tx_terms) p += std::norm(term.coeff);
            worst = std::max(worst, p);
        }
        if (worst <= 0.0) continue;
        const double scale = 1.0 / std::sqrt(worst);
        for (auto& tx_terms : plan.terms[static_cast<std::size_t>(t)]) {
            for (auto& term : tx_terms) term.coeff *= scale;
        }
        plan.slot_scale[static_cast<std::size_t>(t)] = scale;
    }
}

/// Plays the plan through the channel. Symbol values may be scaled first
/// (power sweep); the noise stream is independent of the channel draw.
inline ReceiverLedger run(const TransmitPlan& plan, const ChannelProcess& channel,
                          const NoiseConfig& noise, std::uint64_t rng_stream = 0,
                          double symbol_scale = 1.0) {
    if (channel.n_tx != plan.n_tx || channel.n_rx != plan.n_rx || channel.n_slots < plan.n_slots) {
        throw InvalidDimension("run: channel does not fit the plan");
    }
    ReceiverLedger ledger;
    ledger.n_rx = plan.n_rx;
    ledger.n_slots = plan.n_slots;
    ledger.csir = &channel;
    ledger.rows.assign(static_cast<std::size_t>(plan.n_rx), {});
    std::vector<cplx> x(static_cast<std::size_t>(plan.n_tx));
    for (int t = 0; t < plan.n_slots; ++t) {
        std::fill(x.begin(), x.end(), cplx(0.0, 0.0));
        for (int j = 0; j < plan.n_tx; ++j) {
            for (const auto& term : plan.terms[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)]) {
                x[static_cast<std::size_t>(j)] +=
                    term.coeff * (symbol_scale * plan.symbols.value[static_cast<std::size_t>(term.symbol)]);
            }
        }
        std::vector<cplx> y = apply_channel(channel, x, t, noise, rng_stream);
        for (int i = 0; i < plan.n_rx; ++i) {
            ledger.rows[static_cast<std::size_t>(i)].push_back({t, y[static_cast<std::size_t>(i)],
                                                                annotation(plan, t, i)});
        }
    }
    return ledger;
}

/// Structured text dump of a plan: one record per slot per transmitter term,
/// listing coefficient, symbol and coefficient provenance. Indices print
/// 1-based to ease comparison with written-out transmit equations.
inline std::string plan_to_text(const TransmitPlan& plan) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "plan scheme=" << scheme_name(plan.scheme) << " slots=" << plan.n_slots
       << " tx=" << plan.n_tx << " rx=" << plan.n_rx << " symbols=" << plan.symbols.table.size()
       << "\n";
    for (std::size_t s = 0; s < plan.symbols.table.size(); ++s) {
        const SymbolId& sid = plan.symbols.table[s];
        os << "symbol s" << s << " rx=" << sid.rx + 1 << " tx=" << sid.tx + 1 << " m=" << sid.m + 1
           << "\n";
    }
    for (int t = 0; t < plan.n_slots; ++t) {
        for (int j = 0; j < plan.n_tx; ++j) {
            for (const auto& term : plan.terms[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)]) {
                os << "slot=" << t + 1 << " tx=" << j + 1 << " coeff=(" << term.coeff.real() << ","
                   << term.coeff.imag() << ") symbol=s" << term.symbol << " prov=[";
                for (std::size_t q = 0; q < term.provenance.size(); ++q) {
                    const CsitQuery& cq = term.provenance[q];
                    if (q) os << ' ';
                    os << "h(rx=" << cq.rx + 1 << ",tx=" << cq.tx + 1 << ",t=" << cq.slot + 1
                       << ")@t=" << cq.asked_at + 1;
                }
                os << "]\n";
            }
        }
    }
    return os.str();
}

}  // namespace xnet

#endif  // XNET_SCHEMES_HPP
