#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace hublab {

using Vertex = std::uint32_t;
using Weight = std::uint32_t;
using Dist = std::uint64_t;

// Unreachable sentinel. Never stored in a label and never added to.
inline constexpr Dist kInfDist = std::numeric_limits<Dist>::max();
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

// Malformed input text (bad header, bad token, bad arc line).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structurally valid input with an out-of-domain value (e.g. weight <= 0).
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller broke an API contract (mask length mismatch, hub outside prefix, ...).
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace hublab
