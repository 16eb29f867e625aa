#ifndef XNET_CSIT_HPP
#define XNET_CSIT_HPP

/**
 * CSIT availability model: per-slot, per-receiver states P (perfect,
 * instantaneous), D (delayed by one slot) and N (none), with the dominance
 * order P > D > N; the lambda time-fraction distribution; the synergy
 * classification of three-slot two-user patterns; scheme dispatch by
 * dominance against the six minimal table patterns; and the CsitView guard
 * through which transmitters obtain channel coefficients.
 */

#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xnet/channel.hpp"
#include "xnet/errors.hpp"
#include "xnet/rational.hpp"
#include "xnet/scheme_id.hpp"

namespace xnet {

/// Ordered so that the integer value rises with channel knowledge.
enum class CsitState : std::uint8_t { N = 0, D = 1, P = 2 };

inline char state_char(CsitState s) {
    switch (s) {
        case CsitState::P: return 'P';
        case CsitState::D: return 'D';
        case CsitState::N: return 'N';
    }
    return '?';
}

/// True iff a carries at least as much knowledge as b (a >= b in P > D > N).
inline bool dominates(CsitState a, CsitState b) {
    return static_cast<int>(a) >= static_cast<int>(b);
}

/// Grid of CSIT states S[t][i], slot-major. Rectangular by construction.
struct CsitPattern {
    int n_rx = 0;
    std::vector<CsitState> grid;  // slot * n_rx + rx

    CsitPattern() = default;
    CsitPattern(int slots, int receivers)
        : n_rx(receivers), grid(static_cast<std::size_t>(slots) * receivers, CsitState::N) {}

    int n_slots() const { return n_rx == 0 ? 0 : static_cast<int>(grid.size()) / n_rx; }
    CsitState at(int slot, int rx) const { return grid[static_cast<std::size_t>(slot) * n_rx + rx]; }
    void set(int slot, int rx, CsitState s) { grid[static_cast<std::size_t>(slot) * n_rx + rx] = s; }

    friend bool operator==(const CsitPattern&, const CsitPattern&) = default;

    /// Parses the slot-per-comma text form, e.g. "DD,PN,NP"; case-insensitive.
    static CsitPattern parse(std::string_view text) {
        CsitPattern p;
        std::vector<CsitState> row;
        auto flush_row = [&](bool final) {
            if (row.empty()) throw InvalidDimension("pattern parse: empty slot group");
            if (p.n_rx == 0) p.n_rx = static_cast<int>(row.size());
            if (static_cast<int>(row.size()) != p.n_rx) {
                throw InvalidDimension("pattern parse: ragged slot groups");
            }
            p.grid.insert(p.grid.end(), row.begin(), row.end());
            row.clear();
            (void)final;
        };
        for (char c : text) {
            if (c == ',') {
                flush_row(false);
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(c))) continue;
            switch (std::toupper(static_cast<unsigned char>(c))) {
                case 'P': row.push_back(CsitState::P); break;
                case 'D': row.push_back(CsitState::D); break;
                case 'N': row.push_back(CsitState::N); break;
                default:
                    throw InvalidDimension(std::string("pattern parse: bad state '") + c + "'");
            }
        }
        flush_row(true);
        return p;
    }

    std::string to_string() const {
        std::string out;
        for (int t = 0; t < n_slots(); ++t) {
            if (t) out.push_back(',');
            for (int i = 0; i < n_rx; ++i) out.push_back(state_char(at(t, i)));
        }
        return out;
    }
};

/// Entrywise dominance, lifted from the state order. Patterns of different
/// shape never dominate each other.
inline bool dominates(const CsitPattern& a, const CsitPattern& b) {
    if (a.n_rx != b.n_rx || a.grid.size() != b.grid.size()) return false;
    for (std::size_t i = 0; i < a.grid.size(); ++i) {
        if (!dominates(a.grid[i], b.grid[i])) return false;
    }
    return true;
}

/// Fractions of (slot, receiver) entries in each state; exact rationals
/// summing to one.
struct LambdaDistribution {
    Rational p, d, n;

    friend bool operator==(const LambdaDistribution&, const LambdaDistribution&) = default;
};

inline LambdaDistribution lambda_of(const CsitPattern& pattern) {
    if (pattern.grid.empty()) throw InvalidDimension("lambda_of: empty pattern");
    long long cp = 0, cd = 0, cn = 0;
    for (CsitState s : pattern.grid) {
        if (s == CsitState::P) ++cp;
        else if (s == CsitState::D) ++cd;
        else ++cn;
    }
    const long long total = static_cast<long long>(pattern.grid.size());
    return {Rational(cp, total), Rational(cd, total), Rational(cn, total)};
}

namespace detail {

/// The three synergy requirements, stated for any number of slots:
/// (R1) every receiver's state sequence has t1 < t2 with S(t1) >= D and
///      S(t2) = P; (R2) no slot is all-N; (R3) the last slot has a P.
inline bool synergy_requirements(const CsitPattern& p) {
    const int n = p.n_slots();
    for (int i = 0; i < p.n_rx; ++i) {
        bool seen_d = false, ok = false;
        for (int t = 0; t < n; ++t) {
            CsitState s = p.at(t, i);
            if (seen_d && s == CsitState::P) {
                ok = true;
                break;
            }
            if (dominates(s, CsitState::D)) seen_d = true;
        }
        if (!ok) return false;
    }
    for (int t = 0; t < n; ++t) {
        bool any = false;
        for (int i = 0; i < p.n_rx; ++i) any = any || p.at(t, i) != CsitState::N;
        if (!any) return false;
    }
    for (int i = 0; i < p.n_rx; ++i) {
        if (p.at(n - 1, i) == CsitState::P) return true;
    }
    return false;
}

}  // namespace detail

/// Classifies a three-slot, two-user pattern as synergistic.
inline bool is_synergistic(const CsitPattern& pattern) {
    if (pattern.n_rx != 2 || pattern.n_slots() != 3) {
        throw InvalidDimension("is_synergistic: pattern must be 3 slots x 2 receivers");
    }
    return detail::synergy_requirements(pattern);
}

/// The six minimal table patterns in dispatch order: base schemes first,
/// mirrored variants after.
inline const std::array<std::pair<SchemeId, CsitPattern>, 6>& scheme_table() {
    static const std::array<std::pair<SchemeId, CsitPattern>, 6> table = {{
        {SchemeId::scheme1(), CsitPattern::parse("DD,PN,NP")},
        {SchemeId::scheme2(), CsitPattern::parse("ND,DN,PP")},
        {SchemeId::scheme3(), CsitPattern::parse("DN,PD,NP")},
        {SchemeId::scheme1m(), CsitPattern::parse("DD,NP,PN")},
        {SchemeId::scheme2m(), CsitPattern::parse("DN,ND,PP")},
        {SchemeId::scheme3m(), CsitPattern::parse("ND,DP,PN")},
    }};
    return table;
}

/// Returns the id of the first table pattern the input dominates, if any.
inline std::optional<SchemeId> match_scheme(const CsitPattern& pattern) {
    if (pattern.n_rx != 2 || pattern.n_slots() != 3) return std::nullopt;
    for (const auto& [id, minimal] : scheme_table()) {
        if (dominates(pattern, minimal)) return id;
    }
    return std::nullopt;
}

/// Visits every two-user pattern over n_slots slots exactly once
/// (9^n_slots of them, in lexicographic state order).
template <typename F>
void for_each_pattern(int n_slots, F&& f) {
    if (n_slots < 1) throw InvalidDimension("for_each_pattern: n_slots must be >= 1");
    CsitPattern p(n_slots, 2);
    const std::size_t cells = p.grid.size();
    for (std::size_t i = 0; i < cells; ++i) p.grid[i] = CsitState::N;
    while (true) {
        f(std::as_const(p));
        std::size_t i = 0;
        for (; i < cells; ++i) {
            if (p.grid[i] != CsitState::P) {
                p.grid[i] = static_cast<CsitState>(static_cast<int>(p.grid[i]) + 1);
                break;
            }
            p.grid[i] = CsitState::N;
        }
        if (i == cells) break;
    }
}

struct PatternCensus {
    long long total = 0;
    long long synergistic = 0;
    long long dispatched = 0;                 // patterns dominating some table entry
    std::array<long long, 6> per_scheme{};    // indexed by dispatch-table position
};

/// Exhaustive census over all two-user patterns of the given length.
/// Dispatch statistics are only defined over three-slot patterns.
inline PatternCensus census(int n_slots) {
    PatternCensus c;
    for_each_pattern(n_slots, [&](const CsitPattern& p) {
        ++c.total;
        if (detail::synergy_requirements(p)) ++c.synergistic;
        if (n_slots == 3) {
            if (auto id = match_scheme(p)) {
                ++c.dispatched;
                for (std::size_t s = 0; s < scheme_table().size(); ++s) {
                    if (scheme_table()[s].first == *id) {
                        ++c.per_scheme[s];
                        break;
                    }
                }
            }
        }
    });
    return c;
}

/// One granted coefficient access: transmitter tx saw h_{rx,tx}(slot) while
/// standing at slot asked_at.
struct CsitQuery {
    int rx = 0;
    int tx = 0;
    int slot = 0;
    int asked_at = 0;

    friend bool operator==(const CsitQuery&, const CsitQuery&) = default;
};

enum class DenyReason { FutureSlot, NoCsitAtSlot, DelayedNotYetAvailable, ForeignColumn };

inline const char* deny_reason_name(DenyReason r) {
    switch (r) {
        case DenyReason::FutureSlot: return "FutureSlot";
        case DenyReason::NoCsitAtSlot: return "NoCsitAtSlot";
        case DenyReason::DelayedNotYetAvailable: return "DelayedNotYetAvailable";
        case DenyReason::ForeignColumn: return "ForeignColumn";
    }
    return "?";
}

struct QueryResult {
    bool granted = false;
    cplx value{};
    DenyReason reason = DenyReason::NoCsitAtSlot;
    CsitQuery record{};
};

/**
 * The only gate through which a transmitter reads channel coefficients.
 * Bound to one transmitter column and one current slot; releases
 * h_{rx,tx}(slot) iff
 *   - slot == now and the pattern grants P for rx at now, or
 *   - slot <  now and the pattern grants P or D for rx at slot
 * (delayed knowledge becomes available one slot after the fact).
 */
class CsitView {
public:
    CsitView(const CsitPattern& pattern, const ChannelProcess& channel, int tx, int now)
        : pattern_(&pattern), channel_(&channel), tx_(tx), now_(now) {
        if (tx < 0 || tx >= channel.n_tx) throw InvalidDimension("CsitView: transmitter out of range");
        if (pattern.n_rx != channel.n_rx) throw InvalidDimension("CsitView: receiver count mismatch");
    }

    int transmitter() const { return tx_; }
    int now() const { return now_; }

    QueryResult query(int rx, int slot) const { return query(rx, tx_, slot); }

    QueryResult query(int rx, int tx, int slot) const {
        QueryResult r;
        r.record = {rx, tx, slot, now_};
        if (tx != tx_) {
            r.reason = DenyReason::ForeignColumn;
            return r;
        }
        if (slot > now_) {
            r.reason = DenyReason::FutureSlot;
            return r;
        }
        const CsitState s = pattern_->at(slot, rx);
        if (slot == now_) {
            if (s == CsitState::P) {
                r.granted = true;
                r.value = channel_->coeff(rx, tx, slot);
            } else if (s == CsitState::D) {
                r.reason = DenyReason::DelayedNotYetAvailable;
            } else {
                r.reason = DenyReason::NoCsitAtSlot;
            }
            return r;
        }
        if (s == CsitState::P || s == CsitState::D) {
            r.granted = true;
            r.value = channel_->coeff(rx, tx, slot);
        } else {
            r.reason = DenyReason::NoCsitAtSlot;
        }
        return r;
    }

    /// Grants the coefficient or throws; appends the granted query to prov.
    cplx require(int rx, int slot, std::vector<CsitQuery>& prov) const {
        QueryResult r = query(rx, slot);
        if (!r.granted) {
            throw AccessDeniedError("CSIT access denied (" +
                                    std::string(deny_reason_name(r.reason)) + ") for h[rx=" +
                                    std::to_string(rx) + ",tx=" + std::to_string(tx_) +
                                    "](t=" + std::to_string(slot) + ") at t=" +
                                    std::to_string(now_));
        }
        prov.push_back(r.record);
        return r.value;
    }

private:
    const CsitPattern* pattern_;
    const ChannelProcess* channel_;
    int tx_;
    int now_;
};

}  // namespace xnet

#endif  // XNET_CSIT_HPP
