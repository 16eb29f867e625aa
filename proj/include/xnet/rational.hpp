#ifndef XNET_RATIONAL_HPP
#define XNET_RATIONAL_HPP

#include <boost/rational.hpp>
#include <sstream>
#include <string>

namespace xnet {

/// Exact rational arithmetic for time fractions, DoF counts and time sharing.
/// All quantities handled here are tiny (denominators well below 10^4), so a
/// 64-bit backing integer has headroom to spare.
using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1) os << '/' << r.denominator();
    return os.str();
}

}  // namespace xnet

#endif  // XNET_RATIONAL_HPP
