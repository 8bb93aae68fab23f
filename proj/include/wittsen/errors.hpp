#pragma once

#include <stdexcept>
#include <string>

namespace wittsen {

// Raised when an exact division by p^k is requested on an element whose
// known valuation is smaller than k.  Carries the locus so that a failed
// construction can name the step that falsified a divisibility claim.
struct InsufficientValuation : std::runtime_error {
    explicit InsufficientValuation(const std::string& where)
        : std::runtime_error("insufficient valuation: " + where), locus(where) {}
    std::string locus;
};

struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& where)
        : std::runtime_error("precision exhausted: " + where) {}
};

struct NotAUnit : std::runtime_error {
    explicit NotAUnit(const std::string& where)
        : std::runtime_error("not a unit: " + where) {}
};

struct RingMismatch : std::runtime_error {
    explicit RingMismatch(const std::string& where)
        : std::runtime_error("ring mismatch: " + where) {}
};

struct LengthCap : std::runtime_error {
    explicit LengthCap(const std::string& where)
        : std::runtime_error("length cap exceeded: " + where) {}
};

struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& where)
        : std::runtime_error("cap exceeded: " + where) {}
};

// Exact division inside the delta-ring failed; this always indicates a
// modeling bug rather than a precision shortfall, so it gets its own type.
struct InexactDivision : std::runtime_error {
    explicit InexactDivision(const std::string& where)
        : std::runtime_error("inexact division: " + where) {}
};

struct NonFreeModule : std::runtime_error {
    explicit NonFreeModule(const std::string& where)
        : std::runtime_error("non-free module: " + where) {}
};

struct UnboundedLattice : std::runtime_error {
    explicit UnboundedLattice(const std::string& where)
        : std::runtime_error("lattice denominators did not stabilize: " + where) {}
};

struct BadInput : std::runtime_error {
    explicit BadInput(const std::string& where)
        : std::runtime_error("bad input: " + where) {}
};

}  // namespace wittsen
