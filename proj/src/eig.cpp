#include "linent/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "linent/errors.hpp"

namespace linent {

namespace {

constexpr double kOffDiagThreshold = 1e-13;
constexpr int kMaxSweeps = 100;

double max_offdiag(const ComplexMatrix& a) {
    double m = 0.0;
    for (std::size_t p = 0; p + 1 < a.rows(); ++p)
        for (std::size_t q = p + 1; q < a.cols(); ++q) m = std::max(m, std::abs(a(p, q)));
    return m;
}

}  // namespace

SpectralDecomposition eig_hermitian(const ComplexMatrix& input) {
    if (input.rows() == 0 || input.rows() != input.cols())
        throw StructuralError("eig_hermitian: matrix must be square and nonempty");
    if (!all_finite(input)) throw StructuralError("eig_hermitian: non-finite entry");
    if (hermiticity_defect(input) > 1e-8)
        throw StructuralError("eig_hermitian: input is not Hermitian");

    const std::size_t n = input.rows();
    ComplexMatrix a = input;
    // Symmetrize exactly so the rotations act on a true Hermitian matrix.
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = cxd(a(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const cxd mean = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = mean;
            a(j, i) = std::conj(mean);
        }
    }

    ComplexMatrix v = ComplexMatrix::identity(n);
    bool converged = n == 1 || max_offdiag(a) < kOffDiagThreshold;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double r = std::abs(a(p, q));
                if (r < 1e-300) continue;
                const cxd phase = a(p, q) / r;
                const double alpha = a(p, p).real();
                const double beta = a(q, q).real();
                const double tau = (beta - alpha) / (2.0 * r);
                const double sign = tau >= 0.0 ? 1.0 : -1.0;
                const double t = sign / (std::abs(tau) + std::hypot(1.0, tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // Columns: a <- a J, v <- v J with J(p,p)=c, J(p,q)=s,
                // J(q,p)=-s conj(phase), J(q,q)=c conj(phase).
                const cxd cphase = std::conj(phase);
                for (std::size_t k = 0; k < n; ++k) {
                    const cxd ap = a(k, p);
                    const cxd aq = a(k, q);
                    a(k, p) = c * ap - s * cphase * aq;
                    a(k, q) = s * ap + c * cphase * aq;
                    const cxd vp = v(k, p);
                    const cxd vq = v(k, q);
                    v(k, p) = c * vp - s * cphase * vq;
                    v(k, q) = s * vp + c * cphase * vq;
                }
                // Rows: a <- J^dagger a.
                for (std::size_t k = 0; k < n; ++k) {
                    const cxd ap = a(p, k);
                    const cxd aq = a(q, k);
                    a(p, k) = c * ap - s * phase * aq;
                    a(q, k) = s * ap + c * phase * aq;
                }
                a(p, q) = std::conj(a(q, p));
            }
        }
        converged = max_offdiag(a) < kOffDiagThreshold;
    }
    if (!converged) throw NumericalError("eig_hermitian: Jacobi did not converge in 100 sweeps");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&a](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    SpectralDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
    }
    return out;
}

}  // namespace linent
