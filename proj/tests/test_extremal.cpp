#include <doctest.h>

#include <cmath>

#include "linent/bounds.hpp"
#include "linent/density.hpp"
#include "linent/errors.hpp"
#include "linent/extremal.hpp"
#include "linent/rng.hpp"

using namespace linent;

namespace {

EntropyPoint measure(const DensityMatrix& rho) {
    EntropyPoint p;
    p.x = linear_entropy(partial_trace(rho, {0}));
    p.y = linear_entropy(partial_trace(rho, {1}));
    p.z = linear_entropy(rho);
    return p;
}

}  // namespace

TEST_CASE("plane family saturates the plane bound") {
    for (const DimPair dims : {DimPair{2, 2}, DimPair{2, 3}, DimPair{3, 3}}) {
        const double Da = max_linear_entropy(dims.d_a);
        const double Db = max_linear_entropy(dims.d_b);
        for (int k = 0; k <= 10; ++k) {
            const double a = k / 10.0;
            const EntropyPoint p = measure(isa_family(a, dims));
            CHECK(std::abs(p.x - Da * (1.0 - a * a)) <= 1e-12);
            CHECK(std::abs(p.y - Db * (2.0 * a - a * a)) <= 1e-12);
            CHECK(std::abs(p.z - isa_h(p.x, p.y, dims)) <= 1e-12);
        }
    }
}

TEST_CASE("plane family frozen midpoint") {
    const EntropyPoint p = measure(isa_family(0.5, DimPair{2, 2}));
    CHECK(std::abs(p.x - 0.375) <= 1e-15);
    CHECK(std::abs(p.y - 0.375) <= 1e-15);
    CHECK(std::abs(p.z - 0.625) <= 1e-15);
}

TEST_CASE("curved family saturates the curved bound") {
    for (const DimPair dims : {DimPair{2, 2}, DimPair{3, 3}}) {
        const double Da = max_linear_entropy(dims.d_a);
        const double Db = max_linear_entropy(dims.d_b);
        for (int i = 0; i <= 10; ++i) {
            for (int j = 0; i + j <= 10; ++j) {
                const double a = i / 10.0, b = j / 10.0;
                const EntropyPoint p = measure(dssa_family(a, b, dims));
                CHECK(std::abs(p.x - Da * (2.0 * b - b * b)) <= 1e-12);
                CHECK(std::abs(p.y - Db * (2.0 * a - a * a)) <= 1e-12);
                const MaybeBound g = dssa_g(p.x, p.y, dims);
                CHECK(g.applicable);
                CHECK(std::abs(p.z - g.value) <= 1e-12);
            }
        }
    }
}

TEST_CASE("curved family frozen point") {
    const EntropyPoint p = measure(dssa_family(0.4, 0.4, DimPair{2, 2}));
    CHECK(std::abs(p.x - 0.32) <= 1e-15);
    CHECK(std::abs(p.y - 0.32) <= 1e-15);
    CHECK(std::abs(p.z - 0.56) <= 1e-15);
}

TEST_CASE("plane family is the unit-sum slice of the curved family") {
    for (int k = 0; k <= 10; ++k) {
        const double a = k / 10.0;
        const DensityMatrix lhs = isa_family(a, DimPair{2, 3});
        const DensityMatrix rhs = dssa_family(a, 1.0 - a, DimPair{2, 3});
        CHECK(max_abs_diff(lhs.matrix(), rhs.matrix()) <= 1e-14);
    }
}

TEST_CASE("family parameters are validated") {
    CHECK_THROWS_AS(isa_family(1.5, DimPair{2, 2}), ParameterError);
    CHECK_THROWS_AS(isa_family(-0.1, DimPair{2, 2}), ParameterError);
    CHECK_THROWS_AS(dssa_family(0.7, 0.7, DimPair{2, 2}), ParameterError);
}

TEST_CASE("noise mixing moves the entropy point affinely in alpha squared") {
    const DimPair dims{2, 3};
    const double Da = max_linear_entropy(2), Db = max_linear_entropy(3);
    const double Dj = max_linear_entropy(6);
    const DensityMatrix base = dssa_family(0.3, 0.25, dims);
    const EntropyPoint p = measure(base);
    for (int k = 0; k <= 10; ++k) {
        const double a = k / 10.0;
        const EntropyPoint m = measure(mix_with_maximally_mixed(base, a));
        CHECK(std::abs(m.x - (Da + a * a * (p.x - Da))) <= 1e-12);
        CHECK(std::abs(m.y - (Db + a * a * (p.y - Db))) <= 1e-12);
        CHECK(std::abs(m.z - (Dj + a * a * (p.z - Dj))) <= 1e-12);
    }
}

TEST_CASE("mixing a seam state toward noise stays on the plane bound") {
    const DimPair dims{2, 2};
    for (int k = 1; k < 10; ++k) {
        const DensityMatrix mixed =
            mix_with_maximally_mixed(isa_family(k / 10.0, dims), 0.5);
        const EntropyPoint p = measure(mixed);
        CHECK(std::abs(p.z - isa_h(p.x, p.y, dims)) <= 1e-12);
        // strictly inside the plane branch now
        CHECK(p.x > dssa_restriction_r(p.y, dims) + 1e-6);
    }
}

TEST_CASE("boundary construction hits requested targets") {
    const DimPair d22{2, 2};

    SUBCASE("curved region target") {
        const EntropyPoint p = measure(boundary_state_for(0.32, 0.32, d22));
        CHECK(std::abs(p.x - 0.32) <= 1e-12);
        CHECK(std::abs(p.y - 0.32) <= 1e-12);
        CHECK(std::abs(p.z - 0.56) <= 1e-12);
    }
    SUBCASE("plane region target") {
        const EntropyPoint p = measure(boundary_state_for(0.48, 0.48, d22));
        CHECK(std::abs(p.x - 0.48) <= 1e-12);
        CHECK(std::abs(p.y - 0.48) <= 1e-12);
        CHECK(std::abs(p.z - 0.73) <= 1e-12);
    }
    SUBCASE("corner target is the maximally mixed state") {
        const DensityMatrix rho = boundary_state_for(0.5, 0.5, d22);
        CHECK(max_abs_diff(rho.matrix(),
                           cxd(0.25, 0) * ComplexMatrix::identity(4)) <=
              1e-12);
    }
}

TEST_CASE("boundary construction covers random targets") {
    for (const DimPair dims :
         {DimPair{2, 2}, DimPair{2, 3}, DimPair{3, 3}, DimPair{2, 4}}) {
        const double Da = max_linear_entropy(dims.d_a);
        const double Db = max_linear_entropy(dims.d_b);
        for (std::uint64_t i = 0; i < 30; ++i) {
            SampleRng rng(612 + static_cast<std::uint64_t>(dims.d_b), i);
            const double tx = Da * rng.uniform01();
            const double ty = Db * rng.uniform01();
            const DensityMatrix rho = boundary_state_for(tx, ty, dims);
            const EntropyPoint p = measure(rho);
            CHECK(std::abs(p.x - tx) <= 1e-8);
            CHECK(std::abs(p.y - ty) <= 1e-8);
            CHECK(std::abs(p.z - sharp_f(tx, ty, dims).value) <= 1e-8);
            CHECK(spectral(rho).eigenvalues.front() >= -1e-10);
        }
    }
}

TEST_CASE("edge targets reconstruct accurately") {
    // Near x = D_a the curved parametrization degenerates; the closed form
    // keeps full precision there.
    const DimPair dims{2, 3};
    const double Da = max_linear_entropy(2), Db = max_linear_entropy(3);
    for (double eps : {1e-3, 1e-6, 1e-9}) {
        const double tx = Da - eps;
        const double ty = 0.5 * Db;
        const EntropyPoint p = measure(boundary_state_for(tx, ty, dims));
        CHECK(std::abs(p.x - tx) <= 1e-8);
        CHECK(std::abs(p.y - ty) <= 1e-8);
    }
}

TEST_CASE("family dispatch by name") {
    CHECK(extremal_family_from_name("isa") == ExtremalFamily::isa);
    CHECK(extremal_family_from_name("dssa") == ExtremalFamily::dssa);
    CHECK(extremal_family_from_name("boundary") == ExtremalFamily::boundary);
    CHECK_THROWS_AS(extremal_family_from_name("other"), ParameterError);

    ExtremalParams params;
    params.family = ExtremalFamily::dssa;
    params.alpha = 0.4;
    params.beta = 0.4;
    const EntropyPoint p = measure(build_extremal(params, DimPair{2, 2}));
    CHECK(std::abs(p.z - 0.56) <= 1e-12);

    params.family = ExtremalFamily::boundary;
    params.target_x = 0.48;
    params.target_y = 0.48;
    const EntropyPoint q = measure(build_extremal(params, DimPair{2, 2}));
    CHECK(std::abs(q.z - 0.73) <= 1e-12);
}
