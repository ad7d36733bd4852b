#include "linent/bounds.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "linent/errors.hpp"

namespace linent {

namespace {

void require_dims(DimPair dims) {
    if (dims.d_a < 2 || dims.d_b < 2)
        throw ParameterError("subsystem dimensions must be at least 2");
}

// Clamp v into [0, hi]; tolerance kDomainSlack on both sides.
double clamp_domain(double v, double hi, const char* what) {
    if (!(v >= -kDomainSlack) || !(v <= hi + kDomainSlack)) {
        std::ostringstream os;
        os << what << " = " << v << " outside [0, " << hi << "]";
        throw ParameterError(os.str());
    }
    return std::min(std::max(v, 0.0), hi);
}

// Radicands may go slightly negative from cancellation; [-1e-12, 0) clamps
// to 0, more negative values are numerical errors.
double safe_sqrt(double v) {
    if (v < 0.0) {
        if (v < -1e-12) throw NumericalError("negative radicand beyond clamp tolerance");
        v = 0.0;
    }
    return std::sqrt(v);
}

struct Seam {
    double u, v;  // sqrt(1-x/D_a), sqrt(1-y/D_b)
    bool dssa;    // u + v >= 1 - 1e-12, i.e. x <= r(y) up to the seam tolerance
    bool tie;     // |u + v - 1| <= 1e-12
};

Seam seam_for(double x, double y, DimPair dims) {
    const double da = max_linear_entropy(dims.d_a);
    const double db = max_linear_entropy(dims.d_b);
    Seam s;
    s.u = safe_sqrt(1.0 - x / da);
    s.v = safe_sqrt(1.0 - y / db);
    const double uv = s.u + s.v;
    s.dssa = uv >= 1.0 - 1e-12;
    s.tie = std::abs(uv - 1.0) <= 1e-12;
    return s;
}

double dssa_g_value(double x, double y, DimPair dims, const Seam& s) {
    const double da = max_linear_entropy(dims.d_a);
    const double db = max_linear_entropy(dims.d_b);
    return x + y - 2.0 * da * db * (1.0 - s.u) * (1.0 - s.v);
}

SharpBound sharp_from_seam(double x, double y, DimPair dims, const Seam& s) {
    SharpBound out;
    out.on_boundary = s.tie;
    if (s.dssa) {
        out.branch = Branch::dssa;
        out.value = dssa_g_value(x, y, dims, s);
    } else {
        out.branch = Branch::isa;
        out.value = isa_h(x, y, dims);
    }
    return out;
}

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// 1 - 2^-t and its inverse, exact at integer t.
double renyi_to_linear(double t) { return 1.0 - std::exp2(-t); }
double linear_to_renyi(double s) { return -std::log2(1.0 - s); }

}  // namespace

ClassicBounds classic_bounds(double x, double y) {
    ClassicBounds out;
    out.lower = std::abs(x - y);
    out.upper = x + y;
    return out;
}

MaybeBound audenaert_bound(double x, double y) {
    const double sx = safe_sqrt(clamp_domain(1.0 - x, 1.0, "1-x"));
    const double sy = safe_sqrt(clamp_domain(1.0 - y, 1.0, "1-y"));
    MaybeBound out;
    out.applicable = sx + sy >= 1.0;
    out.value = x + y - 2.0 * (1.0 - sx) * (1.0 - sy);
    return out;
}

double appel_nonlinear_bound(double x, double y, DimPair dims) {
    require_dims(dims);
    const double dab = static_cast<double>(dims.d_a) * dims.d_b;
    x = clamp_domain(x, max_linear_entropy(dims.d_a), "x");
    y = clamp_domain(y, max_linear_entropy(dims.d_b), "y");
    return 1.0 + 1.0 / dab - 2.0 * safe_sqrt((1.0 - x) * (1.0 - y) / dab);
}

double isa_h(double x, double y, DimPair dims) {
    require_dims(dims);
    const double da = max_linear_entropy(dims.d_a);
    const double db = max_linear_entropy(dims.d_b);
    x = clamp_domain(x, da, "x");
    y = clamp_domain(y, db, "y");
    return x / dims.d_b + y / dims.d_a + da * db;
}

double dssa_restriction_r(double y, DimPair dims) {
    require_dims(dims);
    const double da = max_linear_entropy(dims.d_a);
    const double db = max_linear_entropy(dims.d_b);
    y = clamp_domain(y, db, "y");
    return da * (y / db - 1.0 + 2.0 * safe_sqrt(1.0 - y / db));
}

MaybeBound dssa_g(double x, double y, DimPair dims) {
    require_dims(dims);
    const double da = max_linear_entropy(dims.d_a);
    const double db = max_linear_entropy(dims.d_b);
    x = clamp_domain(x, da, "x");
    y = clamp_domain(y, db, "y");
    const Seam s = seam_for(x, y, dims);
    MaybeBound out;
    out.applicable = s.dssa;
    out.value = dssa_g_value(x, y, dims, s);
    return out;
}

SharpBound sharp_f(double x, double y, DimPair dims) {
    require_dims(dims);
    const double da = max_linear_entropy(dims.d_a);
    const double db = max_linear_entropy(dims.d_b);
    x = clamp_domain(x, da, "x");
    y = clamp_domain(y, db, "y");
    return sharp_from_seam(x, y, dims, seam_for(x, y, dims));
}

const char* branch_name(const SharpBound& b) {
    if (b.on_boundary) return "omega";
    return b.branch == Branch::dssa ? "dssa" : "isa";
}

EntropyPoint gamma_curve(double t, DimPair dims) {
    require_dims(dims);
    const double da = max_linear_entropy(dims.d_a);
    const double db = max_linear_entropy(dims.d_b);
    t = clamp_domain(t, da, "t");
    const double root = safe_sqrt(1.0 - t / da);
    EntropyPoint p;
    p.x = t;
    p.y = db * (t / da - 1.0 + 2.0 * root);
    const double na = dims.d_a, nb = dims.d_b;
    p.z = (na + nb - 2.0) / (nb * (na - 1.0)) * t + 2.0 * (nb - 1.0) / (na * nb) * root +
          (na - 2.0) * (nb - 1.0) / (na * nb);
    return p;
}

double sisa_bound(double s_ac, double s_bc, double s_c, int d_a, int d_b) {
    if (d_a < 2 || d_b < 2) throw ParameterError("subsystem dimensions must be at least 2");
    const double dab = static_cast<double>(d_a) * d_b;
    return s_ac / d_b + s_bc / d_a + max_linear_entropy(d_a) * max_linear_entropy(d_b) -
           s_c / dab;
}

SharpBound renyi_f(double x, double y, DimPair dims) {
    require_dims(dims);
    x = clamp_domain(x, std::log2(static_cast<double>(dims.d_a)), "renyi x");
    y = clamp_domain(y, std::log2(static_cast<double>(dims.d_b)), "renyi y");
    SharpBound lin = sharp_f(renyi_to_linear(x), renyi_to_linear(y), dims);
    lin.value = linear_to_renyi(lin.value);
    return lin;
}

SharpBound purity_f(double gamma_a, double gamma_b, DimPair dims) {
    require_dims(dims);
    if (!(gamma_a >= 1.0 / dims.d_a - kDomainSlack) || !(gamma_a <= 1.0 + kDomainSlack))
        throw ParameterError("purity gamma_a outside [1/d_a, 1]");
    if (!(gamma_b >= 1.0 / dims.d_b - kDomainSlack) || !(gamma_b <= 1.0 + kDomainSlack))
        throw ParameterError("purity gamma_b outside [1/d_b, 1]");
    gamma_a = std::min(std::max(gamma_a, 1.0 / dims.d_a), 1.0);
    gamma_b = std::min(std::max(gamma_b, 1.0 / dims.d_b), 1.0);
    SharpBound lin = sharp_f(1.0 - gamma_a, 1.0 - gamma_b, dims);
    lin.value = 1.0 - lin.value;
    return lin;
}

namespace {

// Smallest z in [0, D_joint] with sharp_f(x, z; d_marg, d_joint) >= target.
// The sharp bound is continuous and strictly increasing in z, f(x, 0) = x and
// f(x, D_joint) >= D_joint, so the bracket always closes.
double invert_route_bisect(double x, double target, DimPair route_dims) {
    if (sharp_f(x, 0.0, route_dims).value >= target) return 0.0;
    const double hi_cap = max_linear_entropy(route_dims.d_b);
    double lo = 0.0, hi = hi_cap;
    for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sharp_f(x, mid, route_dims).value >= target)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

// Closed-form inversion of one route; returns the branch-consistent root or
// nothing when neither branch self-validates.
std::optional<double> invert_route_closed(double x, double target, DimPair route_dims) {
    const double d1 = route_dims.d_a, d2 = route_dims.d_b;
    const double D1 = max_linear_entropy(route_dims.d_a);
    const double D2 = max_linear_entropy(route_dims.d_b);
    if (sharp_f(x, 0.0, route_dims).value >= target) return 0.0;
    const double u = safe_sqrt(1.0 - x / D1);
    // z below zstar lies on the curved branch, above on the plane.
    const double zstar = D2 * (2.0 * u - u * u);
    constexpr double sel = 1e-9;
    // Plane inversion: target = x/(d1 d2 / d1)... h(x,z) = x/d2 + z/d1 + D1 D2.
    const double zh = d1 * (target - x / d2 - D1 * D2);
    const bool zh_ok = zh >= zstar - sel && zh <= D2 + sel;
    // Curve inversion via w = sqrt(1 - z/D2): w = D1 a + sqrt((x-target)/D2 + (1 - D1 a)^2).
    const double a = 1.0 - u;
    const double disc = (x - target) / D2 + (1.0 - D1 * a) * (1.0 - D1 * a);
    std::optional<double> zg;
    if (disc >= -1e-15) {
        const double w = D1 * a + std::sqrt(std::max(disc, 0.0));
        if (w <= 1.0 + 1e-12) {
            const double cand = std::min(std::max(D2 * (1.0 - w * w), 0.0), D2);
            if (cand <= zstar + sel) zg = cand;
        }
    }
    if (zg && zh_ok) {
        if (std::max(*zg, zh) - std::min(*zg, zh) < 1e-9) return zg;
        return std::nullopt;
    }
    if (zg) return zg;
    if (zh_ok) return std::min(zh, D2);
    return std::nullopt;
}

}  // namespace

InvertedBound inverted_lower_f(double x, double y, DimPair dims) {
    require_dims(dims);
    const double da = max_linear_entropy(dims.d_a);
    const double db = max_linear_entropy(dims.d_b);
    x = clamp_domain(x, da, "x");
    y = clamp_domain(y, db, "y");
    const int dr = dims.d_a * dims.d_b;
    const DimPair route1{dims.d_a, dr};
    const DimPair route2{dims.d_b, dr};

    const double b1 = invert_route_bisect(x, y, route1);
    const double b2 = invert_route_bisect(y, x, route2);
    InvertedBound out;
    out.route = b1 >= b2 ? 1 : 2;
    const double bis = std::max(b1, b2);

    const std::optional<double> cf = inverted_closed_form(x, y, dims);
    if (cf && std::abs(*cf - bis) <= 1e-8) {
        out.value = *cf;
        out.method = InvertedMethod::closed_form;
    } else {
        out.value = bis;
        out.method = InvertedMethod::bisection;
    }
    return out;
}

std::optional<double> inverted_closed_form(double x, double y, DimPair dims) {
    require_dims(dims);
    const int dr = dims.d_a * dims.d_b;
    const std::optional<double> c1 = invert_route_closed(x, y, DimPair{dims.d_a, dr});
    const std::optional<double> c2 = invert_route_closed(y, x, DimPair{dims.d_b, dr});
    if (c1 && c2) return std::max(*c1, *c2);
    return std::nullopt;
}

double inverted_lower_bisect(double x, double y, DimPair dims) {
    require_dims(dims);
    x = clamp_domain(x, max_linear_entropy(dims.d_a), "x");
    y = clamp_domain(y, max_linear_entropy(dims.d_b), "y");
    const int dr = dims.d_a * dims.d_b;
    return std::max(invert_route_bisect(x, y, DimPair{dims.d_a, dr}),
                    invert_route_bisect(y, x, DimPair{dims.d_b, dr}));
}

const char* method_name(const InvertedBound& b) {
    return b.method == InvertedMethod::closed_form ? "closed-form" : "bisection";
}

BoundReport evaluate_all(const DensityMatrix& rho_ab) {
    if (rho_ab.dims().size() != 2)
        throw StructuralError("evaluate_all: state must have exactly two subsystems");
    const DimPair dims{rho_ab.dims()[0], rho_ab.dims()[1]};
    require_dims(dims);

    BoundReport rep;
    rep.dims = rho_ab.dims();
    const double da = max_linear_entropy(dims.d_a);
    const double db = max_linear_entropy(dims.d_b);
    // Measured coordinates sit in-domain up to roundoff; clamp for the
    // bound evaluations.
    rep.point.x = std::min(std::max(linear_entropy(partial_trace(rho_ab, {0})), 0.0), da);
    rep.point.y = std::min(std::max(linear_entropy(partial_trace(rho_ab, {1})), 0.0), db);
    rep.point.z = std::max(linear_entropy(rho_ab), 0.0);
    const double x = rep.point.x, y = rep.point.y, z = rep.point.z;

    auto push = [&rep](std::string name, std::string kind, double value, double slack,
                       bool applicable, std::string branch) {
        BoundRecord r;
        r.name = std::move(name);
        r.kind = std::move(kind);
        r.value = value;
        r.slack = slack;
        r.applicable = applicable;
        r.satisfied = !applicable || slack >= kViolationSlack;
        r.branch = std::move(branch);
        rep.bounds.push_back(std::move(r));
    };

    const ClassicBounds cb = classic_bounds(x, y);
    push("subadditivity", "upper", cb.upper, cb.upper - z, true, "");
    push("araki_lieb", "lower", cb.lower, z - cb.lower, true, "");
    const MaybeBound aud = audenaert_bound(x, y);
    push("audenaert", "upper", aud.value, aud.value - z, aud.applicable, "");
    const double app = appel_nonlinear_bound(x, y, dims);
    push("appel", "upper", app, app - z, true, "");
    const double h = isa_h(x, y, dims);
    push("isa", "upper", h, h - z, true, "");
    const MaybeBound g = dssa_g(x, y, dims);
    push("dssa", "upper", g.value, g.value - z, g.applicable, "");
    const SharpBound f = sharp_f(x, y, dims);
    push("sharp", "upper", f.value, f.value - z, true, branch_name(f));
    const InvertedBound inv = inverted_lower_f(x, y, dims);
    push("inverted", "lower", inv.value, z - inv.value, true, method_name(inv));

    rep.witness = x > z + kDomainSlack || y > z + kDomainSlack;
    rep.min_slack = 0.0;
    bool first = true;
    for (const auto& r : rep.bounds) {
        if (!r.applicable) continue;
        if (first || r.slack < rep.min_slack) rep.min_slack = r.slack;
        first = false;
        rep.all_satisfied = rep.all_satisfied && r.satisfied;
    }
    return rep;
}

SisaReport evaluate_sisa(const DensityMatrix& rho_abc) {
    if (rho_abc.dims().size() != 3)
        throw StructuralError("evaluate_sisa: state must have exactly three subsystems");
    SisaReport rep;
    rep.dims = rho_abc.dims();
    rep.s_a = linear_entropy(partial_trace(rho_abc, {0}));
    rep.s_b = linear_entropy(partial_trace(rho_abc, {1}));
    rep.s_c = linear_entropy(partial_trace(rho_abc, {2}));
    rep.s_ac = linear_entropy(partial_trace(rho_abc, {0, 2}));
    rep.s_bc = linear_entropy(partial_trace(rho_abc, {1, 2}));
    rep.z_abc = linear_entropy(rho_abc);
    rep.bound = sisa_bound(rep.s_ac, rep.s_bc, rep.s_c, rho_abc.dims()[0], rho_abc.dims()[1]);
    rep.slack = rep.bound - rep.z_abc;
    rep.satisfied = rep.slack >= kViolationSlack;
    rep.witness = rep.s_a > rep.z_abc + kDomainSlack || rep.s_b > rep.z_abc + kDomainSlack ||
                  rep.s_c > rep.z_abc + kDomainSlack;
    return rep;
}

BoundForm bound_form_from_name(const std::string& name) {
    if (name == "linear") return BoundForm::linear;
    if (name == "renyi") return BoundForm::renyi;
    if (name == "purity") return BoundForm::purity;
    if (name == "inverted") return BoundForm::inverted;
    throw ParameterError("unknown bound form: " + name);
}

const char* bound_form_name(BoundForm form) {
    switch (form) {
        case BoundForm::linear: return "linear";
        case BoundForm::renyi: return "renyi";
        case BoundForm::purity: return "purity";
        case BoundForm::inverted: return "inverted";
    }
    return "linear";
}

std::vector<SurfaceRow> surface_grid(BoundForm form, DimPair dims, double step) {
    require_dims(dims);
    if (!(step > 0.0) || step > 1.0) throw ParameterError("grid step must lie in (0, 1]");
    const long long n = std::max(1ll, std::llround(1.0 / step));

    double ax0 = 0.0, ax1 = 0.0, ay0 = 0.0, ay1 = 0.0;
    switch (form) {
        case BoundForm::linear:
        case BoundForm::inverted:
            ax1 = max_linear_entropy(dims.d_a);
            ay1 = max_linear_entropy(dims.d_b);
            break;
        case BoundForm::renyi:
            ax1 = std::log2(static_cast<double>(dims.d_a));
            ay1 = std::log2(static_cast<double>(dims.d_b));
            break;
        case BoundForm::purity:
            ax0 = 1.0 / dims.d_a;
            ax1 = 1.0;
            ay0 = 1.0 / dims.d_b;
            ay1 = 1.0;
            break;
    }

    std::vector<SurfaceRow> rows;
    rows.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
    for (long long i = 0; i <= n; ++i) {
        const double x = ax0 + (ax1 - ax0) * static_cast<double>(i) / static_cast<double>(n);
        for (long long j = 0; j <= n; ++j) {
            const double y = ay0 + (ay1 - ay0) * static_cast<double>(j) / static_cast<double>(n);
            SurfaceRow row;
            row.x = x;
            row.y = y;
            switch (form) {
                case BoundForm::linear: {
                    const SharpBound b = sharp_f(x, y, dims);
                    row.value = b.value;
                    row.branch = branch_name(b);
                    break;
                }
                case BoundForm::renyi: {
                    const SharpBound b = renyi_f(x, y, dims);
                    row.value = b.value;
                    row.branch = branch_name(b);
                    break;
                }
                case BoundForm::purity: {
                    const SharpBound b = purity_f(x, y, dims);
                    row.value = b.value;
                    row.branch = branch_name(b);
                    break;
                }
                case BoundForm::inverted: {
                    const InvertedBound b = inverted_lower_f(x, y, dims);
                    row.value = b.value;
                    row.branch = method_name(b);
                    break;
                }
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string surface_csv(const std::vector<SurfaceRow>& rows) {
    std::string out = "x,y,bound,branch\n";
    for (const auto& r : rows) {
        out += format_double(r.x);
        out += ',';
        out += format_double(r.y);
        out += ',';
        out += format_double(r.value);
        out += ',';
        out += r.branch;
        out += '\n';
    }
    return out;
}

}  // namespace linent
