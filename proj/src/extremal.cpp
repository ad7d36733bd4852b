#include "linent/extremal.hpp"

#include <algorithm>
#include <cmath>

#include "linent/errors.hpp"

namespace linent {

namespace {

void require_unit_interval(double v, const char* what) {
    if (!(v >= -1e-12) || !(v <= 1.0 + 1e-12)) throw ParameterError(std::string(what) + " outside [0, 1]");
}

// mu_1 = |0><0| (x) I/d_b, mu_2 = I/d_a (x) |0><0|, both diagonal.
ComplexMatrix mixture_matrix(double w1, double w2, double w00, DimPair dims) {
    const std::size_t na = static_cast<std::size_t>(dims.d_a);
    const std::size_t nb = static_cast<std::size_t>(dims.d_b);
    ComplexMatrix m(na * nb, na * nb);
    for (std::size_t k = 0; k < nb; ++k) m(k, k) += w1 / static_cast<double>(nb);
    for (std::size_t i = 0; i < na; ++i) m(i * nb, i * nb) += w2 / static_cast<double>(na);
    m(0, 0) += w00;
    return m;
}

}  // namespace

DensityMatrix isa_family(double alpha, DimPair dims) {
    if (dims.d_a < 2 || dims.d_b < 2)
        throw ParameterError("subsystem dimensions must be at least 2");
    require_unit_interval(alpha, "alpha");
    alpha = std::min(std::max(alpha, 0.0), 1.0);
    return DensityMatrix(mixture_matrix(alpha, 1.0 - alpha, 0.0, dims),
                         {dims.d_a, dims.d_b});
}

DensityMatrix dssa_family(double alpha, double beta, DimPair dims) {
    if (dims.d_a < 2 || dims.d_b < 2)
        throw ParameterError("subsystem dimensions must be at least 2");
    require_unit_interval(alpha, "alpha");
    require_unit_interval(beta, "beta");
    alpha = std::min(std::max(alpha, 0.0), 1.0);
    beta = std::min(std::max(beta, 0.0), 1.0);
    if (alpha + beta > 1.0 + 1e-12) throw ParameterError("alpha + beta must not exceed 1");
    const double w00 = std::max(1.0 - alpha - beta, 0.0);
    return DensityMatrix(mixture_matrix(alpha, beta, w00, dims), {dims.d_a, dims.d_b});
}

DensityMatrix mix_with_maximally_mixed(const DensityMatrix& rho, double alpha) {
    require_unit_interval(alpha, "alpha");
    alpha = std::min(std::max(alpha, 0.0), 1.0);
    const std::size_t d = rho.matrix().rows();
    ComplexMatrix m = cxd(alpha, 0.0) * rho.matrix();
    const double off = (1.0 - alpha) / static_cast<double>(d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) += off;
    return DensityMatrix(std::move(m), rho.dims());
}

DensityMatrix boundary_state_for(double x, double y, DimPair dims) {
    if (dims.d_a < 2 || dims.d_b < 2)
        throw ParameterError("subsystem dimensions must be at least 2");
    const double da = max_linear_entropy(dims.d_a);
    const double db = max_linear_entropy(dims.d_b);
    if (!(x >= -kDomainSlack) || !(x <= da + kDomainSlack))
        throw ParameterError("target x outside [0, D_a]");
    if (!(y >= -kDomainSlack) || !(y <= db + kDomainSlack))
        throw ParameterError("target y outside [0, D_b]");
    x = std::min(std::max(x, 0.0), da);
    y = std::min(std::max(y, 0.0), db);

    if (x <= dssa_restriction_r(y, dims)) {
        const double beta = 1.0 - std::sqrt(1.0 - x / da);
        const double alpha = 1.0 - std::sqrt(1.0 - y / db);
        return dssa_family(alpha, beta, dims);
    }

    const double a = da - x;
    const double b = db - y;
    if (a <= 0.0 && b <= 0.0) {
        const int d = dims.d_a * dims.d_b;
        ComplexMatrix m(d, d);
        for (int i = 0; i < d; ++i) m(i, i) = 1.0 / d;
        return DensityMatrix(std::move(m), {dims.d_a, dims.d_b});
    }

    // Collinearity of corner, seam point and target has a closed-form root;
    // alpha0 and 1 - alpha0 are both computed without cancellation.
    const double sa = std::sqrt(std::max(a, 0.0) * db);
    const double sb = std::sqrt(std::max(b, 0.0) * da);
    const double alpha0 = sa / (sa + sb);
    const double omega0 = sb / (sa + sb);  // 1 - alpha0

    // Mixing weight from the better-conditioned coordinate ratio; the two
    // ratios agree by collinearity.
    const double den_a = da * alpha0 * alpha0;
    const double den_b = db * omega0 * omega0;
    const double mix2 = den_a >= den_b ? a / den_a : b / den_b;
    const double mix = std::sqrt(std::min(std::max(mix2, 0.0), 1.0));
    return mix_with_maximally_mixed(isa_family(alpha0, dims), mix);
}

ExtremalFamily extremal_family_from_name(const std::string& name) {
    if (name == "isa") return ExtremalFamily::isa;
    if (name == "dssa") return ExtremalFamily::dssa;
    if (name == "boundary") return ExtremalFamily::boundary;
    throw ParameterError("unknown extremal family: " + name);
}

DensityMatrix build_extremal(const ExtremalParams& params, DimPair dims) {
    switch (params.family) {
        case ExtremalFamily::isa: return isa_family(params.alpha, dims);
        case ExtremalFamily::dssa: return dssa_family(params.alpha, params.beta, dims);
        case ExtremalFamily::boundary:
            return boundary_state_for(params.target_x, params.target_y, dims);
    }
    throw ParameterError("unknown extremal family");
}

}  // namespace linent
