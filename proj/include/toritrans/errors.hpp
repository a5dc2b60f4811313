#pragma once

#include <stdexcept>
#include <string>

namespace toritrans {

// Base class of all library errors. Every throw carries a plain-text reason.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A zero vector, empty fan, or rank-0 input where a nontrivial object is required.
struct DegenerateInput : Error {
    using Error::Error;
};

// Operation needs a strongly convex (or full-dimensional) cone and got something else.
struct UnsupportedCone : Error {
    using Error::Error;
};

// Ambient rank exceeds the supported limit (Hilbert bases cap at rank 4 by default).
struct UnsupportedRank : Error {
    using Error::Error;
};

// Fan invariants are violated; the violation list lives on the fan itself.
struct InvalidFan : Error {
    using Error::Error;
};

// Dimension mismatch between lattice objects.
struct RankMismatch : Error {
    using Error::Error;
};

// The fan's rays do not span; callers must split off the torus factor first.
struct DegenerateFan : Error {
    using Error::Error;
};

struct InvalidSurfaceForm : Error {
    using Error::Error;
};

struct InconsistentDeclaration : Error {
    using Error::Error;
};

// Fan file is not syntactically well-formed.
struct ParseError : Error {
    using Error::Error;
};

// Fan file parses but violates the document schema (bad index, duplicate ray, ...).
struct SchemaError : Error {
    using Error::Error;
};

}  // namespace toritrans
