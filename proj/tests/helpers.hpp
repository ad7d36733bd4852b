#pragma once

#include <cmath>
#include <vector>

#include "linent/density.hpp"

namespace linent::testing {

inline DensityMatrix bell_state() {
    const double a = std::sqrt(0.5);
    return pure_state_density({cxd(a, 0.0), {}, {}, cxd(a, 0.0)}, {2, 2});
}

// p |phi+><phi+| + (1-p) I/4.
inline DensityMatrix werner_state(double p) {
    const DensityMatrix phi = bell_state();
    ComplexMatrix m = cxd(p, 0.0) * phi.matrix() +
                      cxd((1.0 - p) / 4.0, 0.0) * ComplexMatrix::identity(4);
    return DensityMatrix(std::move(m), {2, 2});
}

inline DensityMatrix ghz_state() {
    std::vector<cxd> amps(8);
    amps[0] = cxd(std::sqrt(0.5), 0.0);
    amps[7] = cxd(std::sqrt(0.5), 0.0);
    return pure_state_density(amps, {2, 2, 2});
}

}  // namespace linent::testing
