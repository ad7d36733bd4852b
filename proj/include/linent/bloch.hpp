#pragma once

#include <string>
#include <vector>

#include "linent/density.hpp"

namespace linent {

// d^2 - 1 traceless Hermitian elements with Tr(X_i X_j) = d delta_ij.
// Every such element has eigenvalues within [-sqrt(d-1), sqrt(d-1)].
struct OperatorBasis {
    int dim = 0;
    std::vector<ComplexMatrix> elements;
};

// Generalized Gell-Mann construction: symmetric pairs, antisymmetric pairs,
// then diagonal elements, all scaled to Tr(X^2) = d. For d = 2 this is
// exactly (sigma_x, sigma_y, sigma_z).
OperatorBasis gellmann_basis(int d);

// Basis whose first element is proportional to rho - I/d, completed by
// Gram-Schmidt over the standard basis minus its max-overlap element. The
// first Bloch component of rho is then nonnegative and all others vanish.
// Falls back to the standard basis when ||rho - I/d||_F < 1e-12.
OperatorBasis adapted_basis(const DensityMatrix& rho);

// Components Tr(rho X_i); rho = (I + sum_i b_i X_i)/d.
std::vector<double> bloch_vector(const DensityMatrix& rho, const OperatorBasis& basis);

// (1 + ||b||^2) / d.
double purity_from_bloch(const std::vector<double>& b, int d);

DensityMatrix density_from_bloch(const std::vector<double>& b, int d, const OperatorBasis& basis);

struct CorrelationTensor {
    int d_a = 0, d_b = 0;
    std::vector<double> local_a;  // length d_a^2 - 1
    std::vector<double> local_b;  // length d_b^2 - 1
    std::vector<double> joint;    // row-major (d_a^2 - 1) x (d_b^2 - 1)
};

CorrelationTensor correlation_tensor(const DensityMatrix& rho_ab, const OperatorBasis& basis_a,
                                     const OperatorBasis& basis_b);

DensityMatrix correlation_reconstruct(const CorrelationTensor& ct, const OperatorBasis& basis_a,
                                      const OperatorBasis& basis_b);

struct TensorQNorms {
    double local_a = 0.0;
    double local_b = 0.0;
    double joint = 0.0;
};

// Entrywise vector q-norms (q >= 1) of the three coefficient blocks.
TensorQNorms tensor_qnorms(const CorrelationTensor& ct, double q);

struct BasisCheck {
    bool ok = true;
    int first_bad_index = -1;
    std::string reason;
};

// Verifies hermiticity, tracelessness, normalization, pairwise orthogonality
// and the eigenvalue range of every element.
BasisCheck check_operator_bound(const OperatorBasis& basis);

// Worst margin of |t_ij| >= sqrt(d_b-1)|a_i| + sqrt(d_a-1)|b_j|
//                          - sqrt((d_a-1)(d_b-1))
// over all element pairs; nonnegative (up to tolerance) for any bases.
double correlation_elementwise_margin(const CorrelationTensor& ct);

// Margin of the same inequality with vector q-norms in place of entries;
// holds for adapted bases.
double correlation_qnorm_margin(const TensorQNorms& norms, int d_a, int d_b);

}  // namespace linent
