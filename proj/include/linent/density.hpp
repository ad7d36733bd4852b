#pragma once

#include <string>
#include <vector>

#include "linent/eig.hpp"
#include "linent/matrix.hpp"

namespace linent {

struct Tolerances {
    double herm = 1e-10;
    double trace = 1e-10;
    double psd = 1e-10;
};

struct ValidationReport {
    bool accepted = false;
    double hermiticity_defect = 0.0;
    double trace_defect = 0.0;
    double min_eigenvalue = 0.0;
    std::string message;
};

// Full diagnostic pass: shape, finiteness, hermiticity, unit trace and
// positivity. Rejections are reported, never silently repaired.
ValidationReport validate_density(const ComplexMatrix& m, const std::vector<int>& dims,
                                  const Tolerances& tol = {});

// Validated state on a tensor product of subsystems. Row-major entries; the
// subsystem index order matches dims, last subsystem varying fastest.
class DensityMatrix {
public:
    // Throws StructuralError on malformed shape, ParameterError when
    // validation rejects the matrix.
    DensityMatrix(ComplexMatrix m, std::vector<int> dims, const Tolerances& tol = {});

    // Skips validation; reserved for states valid by construction
    // (partial traces and tensor products of validated states).
    static DensityMatrix unchecked(ComplexMatrix m, std::vector<int> dims);

    const ComplexMatrix& matrix() const { return mat_; }
    const std::vector<int>& dims() const { return dims_; }
    int dim() const { return static_cast<int>(mat_.rows()); }

private:
    DensityMatrix() = default;
    ComplexMatrix mat_;
    std::vector<int> dims_;
};

// 1 - 1/d, the linear entropy of the maximally mixed state.
double max_linear_entropy(int d);

// Entrywise sum of squared moduli; equals Tr(rho^2) for Hermitian input.
double purity(const DensityMatrix& rho);
double linear_entropy(const DensityMatrix& rho);
double renyi2_entropy(const DensityMatrix& rho);

// Schatten q-norm for q >= 1 from the (clamped) eigenvalue list.
double schatten_qnorm(const DensityMatrix& rho, double q, const Tolerances& tol = {});

// Keep is a strictly increasing list of subsystem indices; the result keeps
// them in their original order.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

SpectralDecomposition spectral(const DensityMatrix& rho);

struct Purification {
    std::vector<cxd> amplitudes;  // row-major over dims
    std::vector<int> dims;        // original dims plus the ancilla (dim d, last)
};

// Standard purification with ancilla dimension equal to the state dimension.
Purification purify(const DensityMatrix& rho, const Tolerances& tol = {});

// Builds |psi><psi| from normalized amplitudes.
DensityMatrix pure_state_density(const std::vector<cxd>& amplitudes, const std::vector<int>& dims,
                                 const Tolerances& tol = {});

struct SchmidtDecomposition {
    std::vector<double> coefficients;            // descending, squares sum to 1
    std::vector<std::vector<cxd>> left_basis;    // orthonormal, length min(d_a, d_b)
    std::vector<std::vector<cxd>> right_basis;   // orthonormal, length min(d_a, d_b)
};

SchmidtDecomposition schmidt_decompose(const std::vector<cxd>& amplitudes, int d_a, int d_b,
                                       const Tolerances& tol = {});

}  // namespace linent
