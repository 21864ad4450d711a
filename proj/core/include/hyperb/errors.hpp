#pragma once

#include <stdexcept>
#include <string>

namespace hyperb {

// Domain precondition violated (bad group, non-foldable input, torsion
// witness, malformed data). CLI maps this to exit code 3.
struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// A cross-check that must hold failed. CLI maps this to exit code 2.
struct verification_error : std::runtime_error {
    explicit verification_error(const std::string& what) : std::runtime_error(what) {}
};

// Requested computation exceeds a configured cap. CLI maps this to exit code 4.
struct cap_exceeded : std::runtime_error {
    explicit cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hyperb
