#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linent/density.hpp"

namespace linent {

// Slack below this counts as a violation of a bound.
inline constexpr double kViolationSlack = -1e-9;
// Slack below this aborts a sampling campaign: almost surely an
// implementation bug rather than a borderline numeric.
inline constexpr double kCampaignAbortSlack = -1e-6;
// Entropy coordinates may overshoot their domain by at most this much and
// are clamped; larger excursions are parameter errors.
inline constexpr double kDomainSlack = 1e-12;

struct DimPair {
    int d_a = 2;
    int d_b = 2;
};

// Marginal linear entropies x, y and joint z of a bipartite state.
struct EntropyPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

struct ClassicBounds {
    double lower = 0.0;  // |x - y|
    double upper = 0.0;  // x + y
};

// Dimension-free subadditivity and triangle bounds.
ClassicBounds classic_bounds(double x, double y);

struct MaybeBound {
    double value = 0.0;
    bool applicable = false;
};

// Dimension-free nonlinear upper bound
//   z <= x + y - 2 (1 - sqrt(1-x)) (1 - sqrt(1-y)),
// applicable iff sqrt(1-x) + sqrt(1-y) >= 1.
MaybeBound audenaert_bound(double x, double y);

// Dimension-dependent upper bound
//   z <= 1 + 1/(d_a d_b) - 2 sqrt((1-x)(1-y)/(d_a d_b)), valid everywhere.
double appel_nonlinear_bound(double x, double y, DimPair dims);

// Plane through the maximally mixed corner:
//   h(x, y) = x/d_b + y/d_a + D_a D_b  with  D = 1 - 1/d.
double isa_h(double x, double y, DimPair dims);

// Largest x for which the curved bound g applies at given y:
//   r(y) = D_a (y/D_b - 1 + 2 sqrt(1 - y/D_b)).
double dssa_restriction_r(double y, DimPair dims);

// Curved upper bound
//   g(x, y) = x + y - 2 D_a D_b (1 - sqrt(1-x/D_a)) (1 - sqrt(1-y/D_b)),
// applicable iff x <= r(y); invalid (too small) outside that region.
MaybeBound dssa_g(double x, double y, DimPair dims);

enum class Branch { dssa, isa };

struct SharpBound {
    double value = 0.0;
    Branch branch = Branch::isa;
    bool on_boundary = false;  // within 1e-12 of the branch seam
};

// Piecewise sharp upper bound: g on x <= r(y) (ties included), h beyond.
// C1 across the seam.
SharpBound sharp_f(double x, double y, DimPair dims);

const char* branch_name(const SharpBound& b);

// Branch seam curve (gamma_1, gamma_2, gamma_3)(t), t in [0, D_a]. The third
// component satisfies gamma_3 = h(gamma_1, gamma_2) identically.
EntropyPoint gamma_curve(double t, DimPair dims);

// Tripartite upper bound on the joint entropy S_abc:
//   S_abc <= S_ac/d_b + S_bc/d_a + D_a D_b - S_c/(d_a d_b).
double sisa_bound(double s_ac, double s_bc, double s_c, int d_a, int d_b);

// Renyi-2 form of sharp_f via the substitution e(t) = 1 - 2^-t; inputs in
// [0, log2 d].
SharpBound renyi_f(double x, double y, DimPair dims);

// Purity form of sharp_f: lower bound on the joint purity from marginal
// purities in [1/d, 1].
SharpBound purity_f(double gamma_a, double gamma_b, DimPair dims);

enum class InvertedMethod { closed_form, bisection };

struct InvertedBound {
    double value = 0.0;
    InvertedMethod method = InvertedMethod::bisection;
    int route = 1;  // 1: invert over (A, AB), 2: invert over (B, AB)
};

const char* method_name(const InvertedBound& b);

// Dimension-dependent lower bound on z obtained by inverting the sharp
// bound across the purifying system of dimension d_a d_b; always at least
// as strong as the triangle bound up to solver tolerance. Bisection is
// authoritative; the closed form is used when it agrees within 1e-8.
InvertedBound inverted_lower_f(double x, double y, DimPair dims);

// Closed-form branch inversion used as the fast path and as a test oracle.
std::optional<double> inverted_closed_form(double x, double y, DimPair dims);

// Bisection-only evaluation, the authoritative cross-check for the closed
// form. Tolerance 1e-12 on the bracket width.
double inverted_lower_bisect(double x, double y, DimPair dims);

struct BoundRecord {
    std::string name;
    std::string kind;    // "upper" or "lower"
    double value = 0.0;
    double slack = 0.0;  // bound - z for upper bounds, z - bound for lower
    bool applicable = true;
    bool satisfied = true;  // slack >= kViolationSlack whenever applicable
    std::string branch;     // branch or method tag, empty when n/a
};

struct BoundReport {
    std::vector<int> dims;
    EntropyPoint point;
    std::vector<BoundRecord> bounds;
    bool witness = false;  // some marginal entropy exceeds the joint
    bool all_satisfied = true;
    double min_slack = 0.0;
};

// Measures (x, y, z) of a validated bipartite state and evaluates every
// applicable bound against it.
BoundReport evaluate_all(const DensityMatrix& rho_ab);

// Tripartite counterpart: evaluates the sisa bound. point holds the three
// single-subsystem entropies, z_abc the joint one.
struct SisaReport {
    std::vector<int> dims;
    double s_a = 0.0, s_b = 0.0, s_c = 0.0;
    double s_ac = 0.0, s_bc = 0.0;
    double z_abc = 0.0;
    double bound = 0.0;
    double slack = 0.0;
    bool satisfied = true;
    bool witness = false;
};

SisaReport evaluate_sisa(const DensityMatrix& rho_abc);

enum class BoundForm { linear, renyi, purity, inverted };

BoundForm bound_form_from_name(const std::string& name);
const char* bound_form_name(BoundForm form);

struct SurfaceRow {
    double x = 0.0;
    double y = 0.0;
    double value = 0.0;
    std::string branch;
};

// Evaluates the selected form on an (n+1) x (n+1) grid with n = round(1/step)
// subdivisions of each axis domain.
std::vector<SurfaceRow> surface_grid(BoundForm form, DimPair dims, double step);

// Header "x,y,bound,branch"; shortest round-trip number formatting.
std::string surface_csv(const std::vector<SurfaceRow>& rows);

}  // namespace linent
