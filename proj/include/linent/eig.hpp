#pragma once

#include <vector>

#include "linent/matrix.hpp"

namespace linent {

struct SpectralDecomposition {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

// Cyclic Jacobi for a Hermitian matrix. Converges when every off-diagonal
// modulus drops below 1e-13; throws NumericalError after 100 sweeps.
SpectralDecomposition eig_hermitian(const ComplexMatrix& a);

}  // namespace linent
