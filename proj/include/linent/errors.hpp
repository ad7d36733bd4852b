#pragma once

#include <stdexcept>

namespace linent {

// Error taxonomy used across the library and mapped to CLI exit codes:
// structural = malformed shapes or containers, parameter = out-of-domain
// scalar inputs or rejected states, numerical = solver failure past its
// documented tolerances.
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParameterError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace linent
