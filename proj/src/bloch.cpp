#include "linent/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "linent/errors.hpp"

namespace linent {

namespace {

// Hilbert-Schmidt inner product Tr(A^dagger B); real for Hermitian inputs.
double hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    cxd acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) acc += std::conj(a(i, j)) * b(i, j);
    return acc.real();
}

double expectation(const DensityMatrix& rho, const ComplexMatrix& op) {
    // Tr(rho op) real for Hermitian op.
    cxd acc = 0.0;
    const auto& m = rho.matrix();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * op(j, i);
    return acc.real();
}

// Expectation of X (x) Y without forming the Kronecker product.
double joint_expectation(const DensityMatrix& rho, const ComplexMatrix& x,
                         const ComplexMatrix& y) {
    const std::size_t na = x.rows();
    const std::size_t nb = y.rows();
    const auto& m = rho.matrix();
    cxd acc = 0.0;
    for (std::size_t i1 = 0; i1 < na; ++i1)
        for (std::size_t i2 = 0; i2 < nb; ++i2)
            for (std::size_t j1 = 0; j1 < na; ++j1) {
                const cxd xv = x(j1, i1);
                if (xv == cxd(0.0, 0.0)) continue;
                for (std::size_t j2 = 0; j2 < nb; ++j2)
                    acc += m(i1 * nb + i2, j1 * nb + j2) * xv * y(j2, i2);
            }
    return acc.real();
}

double vector_qnorm(const std::vector<double>& v, double q) {
    double s = 0.0;
    for (double x : v) s += std::pow(std::abs(x), q);
    return std::pow(s, 1.0 / q);
}

}  // namespace

OperatorBasis gellmann_basis(int d) {
    if (d < 2) throw ParameterError("gellmann_basis: dimension must be at least 2");
    const std::size_t n = static_cast<std::size_t>(d);
    const double scale = std::sqrt(d / 2.0);
    OperatorBasis basis;
    basis.dim = d;
    basis.elements.reserve(n * n - 1);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
            ComplexMatrix m(n, n);
            m(j, k) = scale;
            m(k, j) = scale;
            basis.elements.push_back(std::move(m));
        }
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
            ComplexMatrix m(n, n);
            m(j, k) = cxd(0.0, -scale);
            m(k, j) = cxd(0.0, scale);
            basis.elements.push_back(std::move(m));
        }
    for (std::size_t l = 1; l < n; ++l) {
        const double w = scale * std::sqrt(2.0 / (static_cast<double>(l) * (l + 1)));
        ComplexMatrix m(n, n);
        for (std::size_t j = 0; j < l; ++j) m(j, j) = w;
        m(l, l) = -w * static_cast<double>(l);
        basis.elements.push_back(std::move(m));
    }
    return basis;
}

OperatorBasis adapted_basis(const DensityMatrix& rho) {
    const int d = rho.dim();
    if (d < 2) throw ParameterError("adapted_basis: dimension must be at least 2");
    ComplexMatrix delta = rho.matrix();
    for (int i = 0; i < d; ++i) delta(i, i) -= 1.0 / d;
    const double fro = frobenius_norm(delta);
    if (fro < 1e-12) return gellmann_basis(d);

    OperatorBasis basis;
    basis.dim = d;
    basis.elements.push_back(cxd(std::sqrt(static_cast<double>(d)) / fro, 0.0) * delta);

    // Drop the standard element with the largest overlap against X_1, then
    // Gram-Schmidt the rest in order. Independence is guaranteed because the
    // dropped element carries the largest coefficient of X_1's expansion.
    OperatorBasis standard = gellmann_basis(d);
    std::size_t drop = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < standard.elements.size(); ++i) {
        const double ov = std::abs(hs_inner(standard.elements[i], basis.elements[0]));
        if (ov > best) {
            best = ov;
            drop = i;
        }
    }
    const double dd = static_cast<double>(d);
    for (std::size_t i = 0; i < standard.elements.size(); ++i) {
        if (i == drop) continue;
        ComplexMatrix z = standard.elements[i];
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& p : basis.elements) {
                const double coef = hs_inner(p, z) / dd;
                z = z - cxd(coef, 0.0) * p;
            }
        const double nrm = frobenius_norm(z);
        if (nrm < 1e-12 * std::sqrt(dd))
            throw NumericalError("adapted_basis: Gram-Schmidt pivot collapsed");
        basis.elements.push_back(cxd(std::sqrt(dd) / nrm, 0.0) * z);
    }
    return basis;
}

std::vector<double> bloch_vector(const DensityMatrix& rho, const OperatorBasis& basis) {
    if (rho.dim() != basis.dim) throw StructuralError("bloch_vector: dimension mismatch");
    std::vector<double> b;
    b.reserve(basis.elements.size());
    for (const auto& x : basis.elements) b.push_back(expectation(rho, x));
    return b;
}

double purity_from_bloch(const std::vector<double>& b, int d) {
    if (d < 2) throw ParameterError("purity_from_bloch: dimension must be at least 2");
    double s = 0.0;
    for (double v : b) s += v * v;
    return (1.0 + s) / d;
}

DensityMatrix density_from_bloch(const std::vector<double>& b, int d, const OperatorBasis& basis) {
    if (basis.dim != d || b.size() != basis.elements.size())
        throw StructuralError("density_from_bloch: dimension mismatch");
    ComplexMatrix m = ComplexMatrix::identity(d);
    for (std::size_t i = 0; i < b.size(); ++i) m = m + cxd(b[i], 0.0) * basis.elements[i];
    m = cxd(1.0 / d, 0.0) * m;
    return DensityMatrix(std::move(m), {d});
}

CorrelationTensor correlation_tensor(const DensityMatrix& rho_ab, const OperatorBasis& basis_a,
                                     const OperatorBasis& basis_b) {
    if (rho_ab.dims().size() != 2)
        throw StructuralError("correlation_tensor: state must have exactly two subsystems");
    if (rho_ab.dims()[0] != basis_a.dim || rho_ab.dims()[1] != basis_b.dim)
        throw StructuralError("correlation_tensor: basis dimensions do not match state");
    CorrelationTensor ct;
    ct.d_a = basis_a.dim;
    ct.d_b = basis_b.dim;
    const DensityMatrix rho_a = partial_trace(rho_ab, {0});
    const DensityMatrix rho_b = partial_trace(rho_ab, {1});
    ct.local_a = bloch_vector(rho_a, basis_a);
    ct.local_b = bloch_vector(rho_b, basis_b);
    ct.joint.reserve(ct.local_a.size() * ct.local_b.size());
    for (const auto& x : basis_a.elements)
        for (const auto& y : basis_b.elements)
            ct.joint.push_back(joint_expectation(rho_ab, x, y));
    return ct;
}

DensityMatrix correlation_reconstruct(const CorrelationTensor& ct, const OperatorBasis& basis_a,
                                      const OperatorBasis& basis_b) {
    if (ct.d_a != basis_a.dim || ct.d_b != basis_b.dim)
        throw StructuralError("correlation_reconstruct: basis dimensions do not match tensor");
    const std::size_t na = static_cast<std::size_t>(ct.d_a);
    const std::size_t nb = static_cast<std::size_t>(ct.d_b);
    ComplexMatrix m = ComplexMatrix::identity(na * nb);
    const ComplexMatrix ia = ComplexMatrix::identity(na);
    const ComplexMatrix ib = ComplexMatrix::identity(nb);
    for (std::size_t i = 0; i < ct.local_a.size(); ++i)
        m = m + cxd(ct.local_a[i], 0.0) * kron(basis_a.elements[i], ib);
    for (std::size_t j = 0; j < ct.local_b.size(); ++j)
        m = m + cxd(ct.local_b[j], 0.0) * kron(ia, basis_b.elements[j]);
    for (std::size_t i = 0; i < ct.local_a.size(); ++i)
        for (std::size_t j = 0; j < ct.local_b.size(); ++j) {
            const double t = ct.joint[i * ct.local_b.size() + j];
            if (t == 0.0) continue;
            m = m + cxd(t, 0.0) * kron(basis_a.elements[i], basis_b.elements[j]);
        }
    m = cxd(1.0 / static_cast<double>(na * nb), 0.0) * m;
    return DensityMatrix(std::move(m), {ct.d_a, ct.d_b});
}

TensorQNorms tensor_qnorms(const CorrelationTensor& ct, double q) {
    if (!(q >= 1.0)) throw ParameterError("tensor_qnorms: q must be at least 1");
    TensorQNorms out;
    out.local_a = vector_qnorm(ct.local_a, q);
    out.local_b = vector_qnorm(ct.local_b, q);
    out.joint = vector_qnorm(ct.joint, q);
    return out;
}

BasisCheck check_operator_bound(const OperatorBasis& basis) {
    BasisCheck out;
    const int d = basis.dim;
    auto fail = [&out](int idx, const std::string& why) {
        out.ok = false;
        out.first_bad_index = idx;
        out.reason = why;
        return out;
    };
    if (d < 2) return fail(-1, "dimension must be at least 2");
    if (basis.elements.size() != static_cast<std::size_t>(d) * d - 1)
        return fail(-1, "element count must be d^2 - 1");
    const double lam_max = std::sqrt(static_cast<double>(d) - 1.0) + 1e-10;
    for (std::size_t i = 0; i < basis.elements.size(); ++i) {
        const auto& x = basis.elements[i];
        if (x.rows() != static_cast<std::size_t>(d) || x.cols() != static_cast<std::size_t>(d))
            return fail(static_cast<int>(i), "wrong shape");
        if (hermiticity_defect(x) > 1e-12) return fail(static_cast<int>(i), "not Hermitian");
        if (std::abs(trace(x)) > 1e-12 * d) return fail(static_cast<int>(i), "not traceless");
        if (std::abs(hs_inner(x, x) - d) > 1e-10)
            return fail(static_cast<int>(i), "normalization Tr(X^2) != d");
        SpectralDecomposition sd = eig_hermitian(x);
        if (sd.eigenvalues.front() < -lam_max || sd.eigenvalues.back() > lam_max) {
            std::ostringstream os;
            os << "eigenvalue outside [-sqrt(d-1), sqrt(d-1)]: [" << sd.eigenvalues.front()
               << ", " << sd.eigenvalues.back() << "]";
            return fail(static_cast<int>(i), os.str());
        }
        for (std::size_t j = i + 1; j < basis.elements.size(); ++j)
            if (std::abs(hs_inner(x, basis.elements[j])) > 1e-10)
                return fail(static_cast<int>(i), "not orthogonal to element " + std::to_string(j));
    }
    return out;
}

double correlation_elementwise_margin(const CorrelationTensor& ct) {
    const double pa = std::sqrt(static_cast<double>(ct.d_a) - 1.0);
    const double pb = std::sqrt(static_cast<double>(ct.d_b) - 1.0);
    double margin = 0.0;
    bool first = true;
    for (std::size_t i = 0; i < ct.local_a.size(); ++i)
        for (std::size_t j = 0; j < ct.local_b.size(); ++j) {
            const double lhs = std::abs(ct.joint[i * ct.local_b.size() + j]);
            const double rhs =
                pb * std::abs(ct.local_a[i]) + pa * std::abs(ct.local_b[j]) - pa * pb;
            const double m = lhs - rhs;
            if (first || m < margin) margin = m;
            first = false;
        }
    return margin;
}

double correlation_qnorm_margin(const TensorQNorms& norms, int d_a, int d_b) {
    const double pa = std::sqrt(static_cast<double>(d_a) - 1.0);
    const double pb = std::sqrt(static_cast<double>(d_b) - 1.0);
    return norms.joint - (pb * norms.local_a + pa * norms.local_b - pa * pb);
}

}  // namespace linent
