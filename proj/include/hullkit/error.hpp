#pragma once

#include <stdexcept>
#include <string>

namespace hullkit {

// Raised when an input violates the general-position regime (duplicate
// x-coordinates, collinear triples, concurrent lines, coincident event
// times).  The structures reject such inputs instead of perturbing them.
struct DegenerateInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a caller breaks an interface precondition (deleting an id
// twice, replace target not on the hull, non-convex replacement chain, ...).
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// Raised by min/max/delete-style accessors on empty containers.
struct EmptyStructure : std::logic_error {
    using std::logic_error::logic_error;
};

// Raised when an operation is invoked in the wrong lifecycle state
// (mutating a closed splitter, splitting an open one, ...).
struct StateViolation : std::logic_error {
    using std::logic_error::logic_error;
};

// Internal consistency check failure; always a bug in this library.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

#define HK_ASSERT(cond, msg)                                                   \
    do {                                                                       \
        if (!(cond)) throw ::hullkit::InternalError(std::string("internal: ") + msg); \
    } while (0)

} // namespace hullkit
