#include "linent/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "linent/errors.hpp"

namespace linent {

namespace {

// Eigenvalues in [-tol_psd, 0) are clamped to 0; anything more negative is a
// numerical error (validation should have rejected the state earlier).
std::vector<double> clamped_spectrum(const ComplexMatrix& m, double tol_psd) {
    SpectralDecomposition sd = eig_hermitian(m);
    for (double& lam : sd.eigenvalues) {
        if (lam < 0.0) {
            if (lam < -tol_psd) {
                std::ostringstream os;
                os << "spectrum: eigenvalue " << lam << " below -" << tol_psd;
                throw NumericalError(os.str());
            }
            lam = 0.0;
        }
    }
    return sd.eigenvalues;
}

long long dims_product(const std::vector<int>& dims) {
    long long p = 1;
    for (int d : dims) p *= d;
    return p;
}

// Orthonormal completion of `set` up to `count` vectors of length n using
// standard basis candidates, two-pass Gram-Schmidt.
void complete_orthonormal(std::vector<std::vector<cxd>>& set, std::size_t count, std::size_t n) {
    for (std::size_t cand = 0; cand < n && set.size() < count; ++cand) {
        std::vector<cxd> v(n, cxd(0.0, 0.0));
        v[cand] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& u : set) {
                cxd ov = 0.0;
                for (std::size_t i = 0; i < n; ++i) ov += std::conj(u[i]) * v[i];
                for (std::size_t i = 0; i < n; ++i) v[i] -= ov * u[i];
            }
        }
        double nrm = 0.0;
        for (const auto& x : v) nrm += std::norm(x);
        nrm = std::sqrt(nrm);
        if (nrm < 0.5) continue;  // candidate nearly parallel to the span, try next
        for (auto& x : v) x /= nrm;
        set.push_back(std::move(v));
    }
    if (set.size() < count)
        throw NumericalError("orthonormal completion failed");
}

}  // namespace

ValidationReport validate_density(const ComplexMatrix& m, const std::vector<int>& dims,
                                  const Tolerances& tol) {
    ValidationReport rep;
    if (m.rows() == 0 || m.rows() != m.cols()) {
        rep.message = "matrix must be square and nonempty";
        return rep;
    }
    if (dims.empty()) {
        rep.message = "dims must be nonempty";
        return rep;
    }
    for (int d : dims)
        if (d < 1) {
            rep.message = "every subsystem dimension must be at least 1";
            return rep;
        }
    if (dims_product(dims) != static_cast<long long>(m.rows())) {
        rep.message = "dims product does not match matrix dimension";
        return rep;
    }
    if (!all_finite(m)) {
        rep.message = "non-finite entry";
        return rep;
    }
    rep.hermiticity_defect = hermiticity_defect(m);
    rep.trace_defect = std::abs(trace(m) - cxd(1.0, 0.0));
    if (rep.hermiticity_defect > tol.herm) {
        std::ostringstream os;
        os << "hermiticity defect " << rep.hermiticity_defect << " exceeds " << tol.herm;
        rep.message = os.str();
        return rep;
    }
    if (rep.trace_defect > tol.trace) {
        std::ostringstream os;
        os << "trace defect " << rep.trace_defect << " exceeds " << tol.trace;
        rep.message = os.str();
        return rep;
    }
    SpectralDecomposition sd = eig_hermitian(m);
    rep.min_eigenvalue = sd.eigenvalues.front();
    if (rep.min_eigenvalue < -tol.psd) {
        std::ostringstream os;
        os << "minimum eigenvalue " << rep.min_eigenvalue << " below -" << tol.psd;
        rep.message = os.str();
        return rep;
    }
    rep.accepted = true;
    rep.message = "ok";
    return rep;
}

DensityMatrix::DensityMatrix(ComplexMatrix m, std::vector<int> dims, const Tolerances& tol) {
    if (m.rows() == 0 || m.rows() != m.cols())
        throw StructuralError("density matrix must be square and nonempty");
    if (dims.empty() || dims_product(dims) != static_cast<long long>(m.rows()))
        throw StructuralError("dims product does not match matrix dimension");
    ValidationReport rep = validate_density(m, dims, tol);
    if (!rep.accepted) throw ParameterError("density validation failed: " + rep.message);
    mat_ = std::move(m);
    dims_ = std::move(dims);
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix m, std::vector<int> dims) {
    if (m.rows() == 0 || m.rows() != m.cols())
        throw StructuralError("density matrix must be square and nonempty");
    if (dims.empty() || dims_product(dims) != static_cast<long long>(m.rows()))
        throw StructuralError("dims product does not match matrix dimension");
    DensityMatrix dm;
    dm.mat_ = std::move(m);
    dm.dims_ = std::move(dims);
    return dm;
}

double max_linear_entropy(int d) {
    if (d < 1) throw ParameterError("max_linear_entropy: dimension must be positive");
    return 1.0 - 1.0 / static_cast<double>(d);
}

double purity(const DensityMatrix& rho) {
    double s = 0.0;
    for (const auto& v : rho.matrix().data()) s += std::norm(v);
    return s;
}

double linear_entropy(const DensityMatrix& rho) { return 1.0 - purity(rho); }

double renyi2_entropy(const DensityMatrix& rho) { return -std::log2(purity(rho)); }

double schatten_qnorm(const DensityMatrix& rho, double q, const Tolerances& tol) {
    if (!(q >= 1.0)) throw ParameterError("schatten_qnorm: q must be at least 1");
    const std::vector<double> lam = clamped_spectrum(rho.matrix(), tol.psd);
    double s = 0.0;
    for (double l : lam) s += std::pow(l, q);
    return std::pow(s, 1.0 / q);
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    const auto& dims = rho.dims();
    const int n = static_cast<int>(dims.size());
    if (keep.empty()) throw StructuralError("partial_trace: keep set must be nonempty");
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= n)
            throw StructuralError("partial_trace: keep index out of range");
        if (i > 0 && keep[i] <= keep[i - 1])
            throw StructuralError("partial_trace: keep indices must be strictly increasing");
    }

    std::vector<long long> stride(n, 1);
    for (int k = n - 2; k >= 0; --k) stride[k] = stride[k + 1] * dims[k + 1];

    std::vector<int> traced;
    for (int k = 0; k < n; ++k)
        if (std::find(keep.begin(), keep.end(), k) == keep.end()) traced.push_back(k);

    // Row offsets of every kept / traced multi-index.
    auto offsets_for = [&](const std::vector<int>& subs) {
        std::vector<long long> offs{0};
        for (int s : subs) {
            std::vector<long long> next;
            next.reserve(offs.size() * dims[s]);
            for (long long base : offs)
                for (int v = 0; v < dims[s]; ++v) next.push_back(base + v * stride[s]);
            offs = std::move(next);
        }
        return offs;
    };
    const std::vector<long long> kept_offs = offsets_for(keep);
    const std::vector<long long> traced_offs = offsets_for(traced);

    std::vector<int> out_dims;
    for (int k : keep) out_dims.push_back(dims[k]);
    const std::size_t dk = kept_offs.size();

    ComplexMatrix out(dk, dk);
    const auto& in = rho.matrix();
    for (std::size_t a = 0; a < dk; ++a)
        for (std::size_t b = 0; b < dk; ++b) {
            cxd acc = 0.0;
            for (long long t : traced_offs)
                acc += in(static_cast<std::size_t>(kept_offs[a] + t),
                          static_cast<std::size_t>(kept_offs[b] + t));
            out(a, b) = acc;
        }
    return DensityMatrix::unchecked(std::move(out), std::move(out_dims));
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
    std::vector<int> dims = a.dims();
    dims.insert(dims.end(), b.dims().begin(), b.dims().end());
    return DensityMatrix::unchecked(kron(a.matrix(), b.matrix()), std::move(dims));
}

SpectralDecomposition spectral(const DensityMatrix& rho) { return eig_hermitian(rho.matrix()); }

Purification purify(const DensityMatrix& rho, const Tolerances& tol) {
    const std::size_t d = rho.matrix().rows();
    SpectralDecomposition sd = eig_hermitian(rho.matrix());
    Purification out;
    out.amplitudes.assign(d * d, cxd(0.0, 0.0));
    for (std::size_t k = 0; k < d; ++k) {
        double lam = sd.eigenvalues[k];
        if (lam < 0.0) {
            if (lam < -tol.psd) throw NumericalError("purify: eigenvalue below PSD tolerance");
            lam = 0.0;
        }
        const double c = std::sqrt(lam);
        if (c == 0.0) continue;
        for (std::size_t i = 0; i < d; ++i)
            out.amplitudes[i * d + k] += c * sd.eigenvectors(i, k);
    }
    out.dims = rho.dims();
    out.dims.push_back(static_cast<int>(d));
    return out;
}

DensityMatrix pure_state_density(const std::vector<cxd>& amplitudes, const std::vector<int>& dims,
                                 const Tolerances& tol) {
    if (amplitudes.empty() || dims_product(dims) != static_cast<long long>(amplitudes.size()))
        throw StructuralError("pure_state_density: dims product does not match amplitude count");
    double nrm = 0.0;
    for (const auto& a : amplitudes) nrm += std::norm(a);
    if (std::abs(nrm - 1.0) > tol.trace)
        throw ParameterError("pure_state_density: amplitudes are not normalized");
    const std::size_t d = amplitudes.size();
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = amplitudes[i] * std::conj(amplitudes[j]);
    return DensityMatrix::unchecked(std::move(m), dims);
}

SchmidtDecomposition schmidt_decompose(const std::vector<cxd>& amplitudes, int d_a, int d_b,
                                       const Tolerances& tol) {
    if (d_a < 1 || d_b < 1 ||
        static_cast<long long>(d_a) * d_b != static_cast<long long>(amplitudes.size()))
        throw StructuralError("schmidt_decompose: dims do not match amplitude count");
    double nrm = 0.0;
    for (const auto& a : amplitudes) nrm += std::norm(a);
    if (std::abs(nrm - 1.0) > tol.trace)
        throw ParameterError("schmidt_decompose: amplitudes are not normalized");

    const std::size_t na = static_cast<std::size_t>(d_a);
    const std::size_t nb = static_cast<std::size_t>(d_b);
    auto m_at = [&](std::size_t i, std::size_t j) { return amplitudes[i * nb + j]; };
    const bool left_small = na <= nb;
    const std::size_t ns = left_small ? na : nb;

    // Hermitian PSD Gram matrix of the smaller side.
    ComplexMatrix gram(ns, ns);
    for (std::size_t i = 0; i < ns; ++i)
        for (std::size_t j = 0; j < ns; ++j) {
            cxd acc = 0.0;
            if (left_small) {
                for (std::size_t k = 0; k < nb; ++k) acc += m_at(i, k) * std::conj(m_at(j, k));
            } else {
                for (std::size_t k = 0; k < na; ++k) acc += std::conj(m_at(k, i)) * m_at(k, j);
            }
            gram(i, j) = acc;
        }
    SpectralDecomposition sd = eig_hermitian(gram);

    SchmidtDecomposition out;
    std::vector<std::vector<cxd>> small_vecs, large_vecs;
    // Descending coefficient order.
    for (std::size_t r = 0; r < ns; ++r) {
        const std::size_t k = ns - 1 - r;
        double lam = sd.eigenvalues[k];
        if (lam < 0.0) {
            if (lam < -tol.psd) throw NumericalError("schmidt_decompose: negative Gram eigenvalue");
            lam = 0.0;
        }
        const double c = std::sqrt(lam);
        out.coefficients.push_back(c);
        std::vector<cxd> s(ns);
        for (std::size_t i = 0; i < ns; ++i) s[i] = sd.eigenvectors(i, k);
        small_vecs.push_back(std::move(s));
    }

    // Partner vectors on the larger side; directions are exact for nonzero
    // coefficients, norms and orthogonality are polished below.
    const std::size_t nl = left_small ? nb : na;
    for (std::size_t r = 0; r < ns; ++r) {
        const double c = out.coefficients[r];
        if (c < 1e-12) break;
        std::vector<cxd> w(nl, cxd(0.0, 0.0));
        if (left_small) {
            // right vector: Y[k] = sum_i conj(X[i]) M(i,k) / c
            for (std::size_t k = 0; k < nl; ++k) {
                cxd acc = 0.0;
                for (std::size_t i = 0; i < ns; ++i) acc += std::conj(small_vecs[r][i]) * m_at(i, k);
                w[k] = acc / c;
            }
        } else {
            // left vector: X[i] = sum_k M(i,k) u[k] / c where u is the Gram
            // eigenvector and Y = conj(u)
            for (std::size_t i = 0; i < nl; ++i) {
                cxd acc = 0.0;
                for (std::size_t k = 0; k < ns; ++k) acc += m_at(i, k) * small_vecs[r][k];
                w[i] = acc / c;
            }
        }
        large_vecs.push_back(std::move(w));
    }
    // Gram-Schmidt polish in coefficient order, then completion for the
    // zero-coefficient tail.
    std::vector<std::vector<cxd>> polished;
    for (auto& w : large_vecs) {
        for (const auto& u : polished) {
            cxd ov = 0.0;
            for (std::size_t i = 0; i < nl; ++i) ov += std::conj(u[i]) * w[i];
            for (std::size_t i = 0; i < nl; ++i) w[i] -= ov * u[i];
        }
        double wn = 0.0;
        for (const auto& x : w) wn += std::norm(x);
        wn = std::sqrt(wn);
        if (wn < 1e-8) throw NumericalError("schmidt_decompose: degenerate partner vector");
        for (auto& x : w) x /= wn;
        polished.push_back(std::move(w));
    }
    complete_orthonormal(polished, ns, nl);

    if (left_small) {
        out.left_basis = std::move(small_vecs);
        out.right_basis = std::move(polished);
    } else {
        // small side is B: its eigenvectors are conj(right vectors)
        out.right_basis.reserve(ns);
        for (auto& s : small_vecs) {
            for (auto& x : s) x = std::conj(x);
            out.right_basis.push_back(std::move(s));
        }
        out.left_basis = std::move(polished);
    }
    return out;
}

}  // namespace linent
