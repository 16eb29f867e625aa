#ifndef XNET_ERRORS_HPP
#define XNET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace xnet {

/// Dimension or shape of an argument does not match what the operation needs.
class InvalidDimension : public std::invalid_argument {
public:
    explicit InvalidDimension(const std::string& what) : std::invalid_argument(what) {}
};

/// A slot index lies outside the sampled channel extension.
class SlotOutOfRange : public std::out_of_range {
public:
    explicit SlotOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

/// A CSIT pattern does not dominate the minimal pattern a scheme requires.
class PatternMismatch : public std::invalid_argument {
public:
    explicit PatternMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// Time-sharing weights are negative or do not sum to one.
class InvalidWeights : public std::invalid_argument {
public:
    explicit InvalidWeights(const std::string& what) : std::invalid_argument(what) {}
};

/// A power sweep has too few points, is non-increasing, or spans too little range.
class InvalidSweep : public std::invalid_argument {
public:
    explicit InvalidSweep(const std::string& what) : std::invalid_argument(what) {}
};

/// Vertex enumeration was asked for on an unbounded polytope.
class UnboundedRegion : public std::invalid_argument {
public:
    explicit UnboundedRegion(const std::string& what) : std::invalid_argument(what) {}
};

/// A plan builder requested channel knowledge its CSIT view does not grant.
/// Reaching this from library code is a defect: builders are constructed so
/// that every query they issue is legal.
class AccessDeniedError : public std::logic_error {
public:
    explicit AccessDeniedError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace xnet

#endif  // XNET_ERRORS_HPP
