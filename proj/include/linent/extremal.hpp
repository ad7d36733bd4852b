#pragma once

#include <string>

#include "linent/bounds.hpp"
#include "linent/density.hpp"

namespace linent {

// States mixing mu_1 = |0><0| (x) I/d_b and mu_2 = I/d_a (x) |0><0|. Entropy
// point: x = D_a (1 - alpha^2), y = D_b (2 alpha - alpha^2), z = isa_h(x, y);
// the family traces the branch seam curve.
DensityMatrix isa_family(double alpha, DimPair dims);

// alpha mu_1 + beta mu_2 + (1 - alpha - beta) |00><00| with alpha + beta <= 1.
// Entropy point: x = D_a (2 beta - beta^2), y = D_b (2 alpha - alpha^2),
// z = x + y - 2 D_a D_b alpha beta = dssa_g(x, y) exactly.
DensityMatrix dssa_family(double alpha, double beta, DimPair dims);

// alpha rho + (1 - alpha) I/d. The entropy point moves affinely in alpha^2
// between the maximally mixed corner and the point of rho, so mixing keeps
// states on the plane bound surface.
DensityMatrix mix_with_maximally_mixed(const DensityMatrix& rho, double alpha);

// State whose entropy point is (x, y, sharp_f(x, y)) up to roundoff. Curved
// region: direct dssa_family parameters. Plane region: the seam point
// collinear with the corner and the target, mixed toward I/d; the collinear
// parameter has the closed form alpha0 = sqrt(a D_b) / (sqrt(a D_b) +
// sqrt(b D_a)) with a = D_a - x, b = D_b - y.
DensityMatrix boundary_state_for(double x, double y, DimPair dims);

enum class ExtremalFamily { isa, dssa, boundary };

ExtremalFamily extremal_family_from_name(const std::string& name);

struct ExtremalParams {
    ExtremalFamily family = ExtremalFamily::isa;
    double alpha = 0.0;
    double beta = 0.0;      // dssa only
    double target_x = 0.0;  // boundary only
    double target_y = 0.0;
};

DensityMatrix build_extremal(const ExtremalParams& params, DimPair dims);

}  // namespace linent
