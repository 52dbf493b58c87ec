#pragma once

#include <stdexcept>
#include <string>

namespace loopfloer {

// Base of every error the library raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or schema-violating input (bad names, bad JSON shape, ...).
class InputError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// A product or basis request would exceed a degree cap.
class CapOverflow : public Error {
public:
    using Error::Error;
};

// A mathematical invariant of a constructed object fails (∂² ≠ 0, coassociativity, ...).
class InvariantViolation : public Error {
public:
    using Error::Error;
};

// Coefficient entry of the wrong degree or direction.
class StructuralError : public Error {
public:
    using Error::Error;
};

class MaurerCartanFailure : public Error {
public:
    using Error::Error;
};

}  // namespace loopfloer
