#pragma once

#include <stdexcept>
#include <string>

namespace splitscan {

// Bad or out-of-contract inputs. The CLI maps this family to exit code 2.
struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// A curve reduction that is unusable at the requested prime (degree drop or
// repeated factor). Semantically still a caller-input problem.
struct bad_reduction_error : precondition_error {
    explicit bad_reduction_error(const std::string& what) : precondition_error(what) {}
};

// An enumeration or table exceeded its configured cap. CLI exit code 3.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// An internal invariant failed; indicates a bug, never user input.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

// A floating-point routine (root finding) failed to converge.
struct numeric_error : std::runtime_error {
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace splitscan
