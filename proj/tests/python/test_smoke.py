"""Smoke tests for the python module: construction, entropies, bounds,
extremal families, and one small deterministic campaign."""

import math

import pytest

import linent

SQ2 = math.sqrt(0.5)


def bell():
    return linent.pure_state([SQ2, 0, 0, SQ2], [2, 2])


def test_density_matrix_roundtrip():
    rho = linent.DensityMatrix([[0.5, 0], [0, 0.5]], [2])
    assert rho.dims == [2]
    assert rho.dim == 2
    back = rho.matrix()
    assert back[0][0] == pytest.approx(0.5, abs=0)
    assert back[0][1] == 0


def test_validation_rejects_unphysical_matrices():
    with pytest.raises(linent.ParameterError):
        linent.DensityMatrix([[1.2, 0], [0, -0.2]], [2])
    with pytest.raises(linent.StructuralError):
        linent.DensityMatrix([[0.5, 0], [0, 0.5]], [3])


def test_bell_entropies():
    rho = bell()
    assert linent.purity(rho) == pytest.approx(1.0, abs=1e-12)
    assert linent.linear_entropy(rho) == pytest.approx(0.0, abs=1e-12)
    marginal = linent.partial_trace(rho, [0])
    assert linent.linear_entropy(marginal) == pytest.approx(0.5, abs=1e-12)
    assert linent.renyi2_entropy(marginal) == pytest.approx(1.0, abs=1e-12)


def test_sharp_bound_landmarks():
    value, branch, on_boundary = linent.sharp_f(0.375, 0.375, (2, 2))
    assert value == pytest.approx(0.625, abs=1e-12)
    assert on_boundary
    assert branch == "omega"

    value, branch, _ = linent.sharp_f(0.32, 0.32, (2, 2))
    assert value == pytest.approx(0.56, abs=1e-12)
    assert branch == "dssa"

    assert linent.dssa_g(0.48, 0.2, (2, 2)) is None
    assert linent.isa_h(0.5, 0.5, (2, 2)) == pytest.approx(0.75, abs=1e-12)

    value, _, _ = linent.renyi_f(1.0, 1.0, (2, 2))
    assert value == 2.0


def test_inverted_bound_at_maximal_entanglement():
    value, method, route = linent.inverted_lower_f(0.5, 0.5, (2, 2))
    assert value == pytest.approx(0.0, abs=1e-12)
    assert method in ("closed-form", "bisection")
    assert route in (1, 2)


def test_extremal_families_saturate():
    rho = linent.isa_family(0.5, (2, 2))
    rep = linent.evaluate_all(rho)
    assert rep["x"] == pytest.approx(0.375, abs=1e-12)
    assert rep["bounds"]["sharp"]["slack"] == pytest.approx(0.0, abs=1e-10)
    assert rep["all_satisfied"]

    target = linent.boundary_state_for(0.3, 0.45, (2, 3))
    point = linent.evaluate_all(target)
    assert point["x"] == pytest.approx(0.3, abs=1e-8)
    assert point["y"] == pytest.approx(0.45, abs=1e-8)


def test_witness_on_entangled_state():
    rep = linent.evaluate_all(bell())
    assert rep["witness"]
    assert rep["all_satisfied"]


def test_tripartite_report():
    ghz = linent.pure_state([SQ2, 0, 0, 0, 0, 0, 0, SQ2], [2, 2, 2])
    rep = linent.evaluate_sisa(ghz)
    assert rep["bound"] == pytest.approx(0.625, abs=1e-12)
    assert rep["satisfied"]
    assert rep["witness"]


def test_campaign_is_deterministic():
    kwargs = dict(dims=[2, 2], count=32, seed=5, inject_extremal=True)
    first = linent.run_campaign(**kwargs)
    second = linent.run_campaign(**kwargs, workers=2)
    assert first == second
    assert first["total_violations"] == 0
    assert first["samples"] == 32
    assert "workers" not in first
    assert "wall" not in str(sorted(first.keys()))


def test_identity_suite():
    passed, failures = linent.identity_suite([(2, 2), (2, 3)], seed=9)
    assert passed, failures


def test_surface_contains_seam_landmark():
    rows = linent.surface_grid("linear", (2, 2), 0.05)
    landmark = [r for r in rows if r[0] == 0.375 and r[1] == 0.375]
    assert len(landmark) == 1
    assert landmark[0][2] == pytest.approx(0.625, abs=1e-12)
    assert landmark[0][3] == "omega"


def test_sampled_state_is_valid():
    rho = linent.sample_state([2, 3], seed=3, index=7)
    assert linent.purity(rho) <= 1.0 + 1e-12
    assert linent.linear_entropy(rho) >= -1e-12
    assert rho.dims == [2, 3]
