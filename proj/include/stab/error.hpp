#pragma once

#include <stdexcept>
#include <string>

namespace stab {

// Base class for all errors raised by the library.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Operands live in incompatible scalar fields (e.g. QuadExt(2) vs QuadExt(3)).
struct field_mismatch : error {
    explicit field_mismatch(const std::string& what) : error(what) {}
};

// Malformed or inconsistent input (parse errors, shape mismatches, guards).
struct input_error : error {
    explicit input_error(const std::string& what) : error(what) {}
};

// A feasibility problem has no solution, or a requested certificate fails.
struct infeasible_error : error {
    explicit infeasible_error(const std::string& what) : error(what) {}
};

// An exhaustive search would exceed its configured cap.
struct cap_exceeded : error {
    explicit cap_exceeded(const std::string& what) : error(what) {}
};

} // namespace stab
