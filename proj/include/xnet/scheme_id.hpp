#ifndef XNET_SCHEME_ID_HPP
#define XNET_SCHEME_ID_HPP

#include <optional>
#include <string>
#include <string_view>

#include "xnet/errors.hpp"

namespace xnet {

/// Transmission scheme identifiers. The M suffix marks the mirrored variant
/// of a two-user scheme (the two receivers swap the order in which they are
/// served). KUser, Kx2 and TwoXK carry a population parameter K >= 2.
enum class SchemeKind {
    Scheme1,
    Scheme1M,
    Scheme2,
    Scheme2M,
    Scheme3,
    Scheme3M,
    ThreeUser,
    KUser,
    Kx2,
    TwoXK,
};

struct SchemeId {
    SchemeKind kind = SchemeKind::Scheme1;
    int k = 2;  // population parameter; meaningful for KUser/Kx2/TwoXK only

    friend bool operator==(const SchemeId&, const SchemeId&) = default;

    static SchemeId scheme1() { return {SchemeKind::Scheme1, 2}; }
    static SchemeId scheme1m() { return {SchemeKind::Scheme1M, 2}; }
    static SchemeId scheme2() { return {SchemeKind::Scheme2, 2}; }
    static SchemeId scheme2m() { return {SchemeKind::Scheme2M, 2}; }
    static SchemeId scheme3() { return {SchemeKind::Scheme3, 2}; }
    static SchemeId scheme3m() { return {SchemeKind::Scheme3M, 2}; }
    static SchemeId three_user() { return {SchemeKind::ThreeUser, 3}; }
    static SchemeId k_user(int k) { return checked({SchemeKind::KUser, k}); }
    static SchemeId kx2(int k) { return checked({SchemeKind::Kx2, k}); }
    static SchemeId two_xk(int k) { return checked({SchemeKind::TwoXK, k}); }

private:
    static SchemeId checked(SchemeId id) {
        if (id.k < 2) throw InvalidDimension("scheme parameter K must be >= 2");
        return id;
    }
};

/// Collapses mirrored variants onto their base scheme; other kinds map to
/// themselves. Table 1 labels both variants of a two-user scheme identically.
inline SchemeKind scheme_family(SchemeKind kind) {
    switch (kind) {
        case SchemeKind::Scheme1M: return SchemeKind::Scheme1;
        case SchemeKind::Scheme2M: return SchemeKind::Scheme2;
        case SchemeKind::Scheme3M: return SchemeKind::Scheme3;
        default: return kind;
    }
}

inline std::string scheme_name(const SchemeId& id) {
    switch (id.kind) {
        case SchemeKind::Scheme1: return "scheme1";
        case SchemeKind::Scheme1M: return "scheme1m";
        case SchemeKind::Scheme2: return "scheme2";
        case SchemeKind::Scheme2M: return "scheme2m";
        case SchemeKind::Scheme3: return "scheme3";
        case SchemeKind::Scheme3M: return "scheme3m";
        case SchemeKind::ThreeUser: return "threeuser";
        case SchemeKind::KUser: return "kuser(" + std::to_string(id.k) + ")";
        case SchemeKind::Kx2: return "kx2(" + std::to_string(id.k) + ")";
        case SchemeKind::TwoXK: return "2xk(" + std::to_string(id.k) + ")";
    }
    return "?";
}

/// Parses a scheme name as used on the command line; `k` supplies the
/// population parameter for the parametric families.
inline std::optional<SchemeId> parse_scheme(std::string_view text, int k = 2) {
    std::string s(text);
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (s == "scheme1") return SchemeId::scheme1();
    if (s == "scheme1m") return SchemeId::scheme1m();
    if (s == "scheme2") return SchemeId::scheme2();
    if (s == "scheme2m") return SchemeId::scheme2m();
    if (s == "scheme3") return SchemeId::scheme3();
    if (s == "scheme3m") return SchemeId::scheme3m();
    if (s == "threeuser") return SchemeId::three_user();
    if (s == "kuser") return SchemeId::k_user(k);
    if (s == "kx2") return SchemeId::kx2(k);
    if (s == "2xk" || s == "twoxk") return SchemeId::two_xk(k);
    return std::nullopt;
}

}  // namespace xnet

#endif  // XNET_SCHEME_ID_HPP
