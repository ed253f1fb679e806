"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import liouform as lf


def test_structure_matrices():
    j = lf.j0(1)
    assert j.shape == (2, 2)
    np.testing.assert_array_equal(j, [[0.0, 1.0], [-1.0, 0.0]])
    jt = lf.jtilde(2)
    assert jt.shape == (8, 8)
    np.testing.assert_array_equal(jt, -jt.T)
    np.testing.assert_allclose(jt @ jt, -np.eye(8), atol=0)


def test_poincare_form_is_the_null_map():
    form = lf.make_form("poincare", n=1)
    assert form.is_liouvillian
    p0, ph = lf.implicit_map(form)
    assert not p0.any() and not ph.any()
    report = lf.classify(form)
    assert report["verdict"] == "null_map"
    assert report["rho_is_zero"]
    assert len(lf.kernel_basis(form)) == 2


def test_theta_family_classification():
    assert lf.classify(lf.make_form("theta_phi", n=1, phi=0.0))["verdict"] == "symplectic"
    mid = lf.classify(lf.make_form("theta_phi", n=1, phi=math.pi / 3))
    assert mid["verdict"] == "non_symplectic"
    assert mid["identity_residual"] == pytest.approx(abs(math.sin(2 * math.pi / 3)), abs=1e-14)

    records = lf.sweep_theta_phi(1, [0.0, math.pi / 2])
    verdicts = {round(r["phi"], 12): r["verdict"] for r in records}
    assert verdicts[0.0] == "symplectic"
    assert verdicts[round(math.pi / 2, 12)] == "symplectic"
    assert verdicts[round(math.pi / 4, 12)] == "null_map"


def test_invalid_form_raises():
    with pytest.raises(ValueError):
        lf.form_from_matrix(1, np.zeros((4, 4)))
    with pytest.raises(ValueError):
        lf.make_form("no_such_family", n=1)
    with pytest.raises(ValueError):
        lf.make_form("theta_phi", n=1, phee=0.3)


def test_abc_family_from_keywords():
    form = lf.make_form(
        "abc_family", n=1, alpha=[0.4], beta=[0.1], gamma=[-0.1]
    )
    assert lf.classify(form)["verdict"] == "symplectic"
    with pytest.raises(ValueError):
        lf.make_form("abc_family", n=2, alpha=[0.4], beta=[0.1], gamma=[-0.1])


def test_midpoint_integration_conserves_energy():
    system = lf.builtin_system("harmonic", 1)
    scheme = lf.named_scheme("midpoint", 1)
    run = lf.integrate(scheme, system, np.array([1.0, 0.0]), h=0.1, steps=500, tol=1e-14)
    assert run["completed"]
    energies = np.asarray(run["energies"])
    assert np.max(np.abs(energies - energies[0])) < 1e-10


def test_linear_step_matrix_is_symplectic():
    scheme = lf.named_scheme("midpoint", 1)
    k = lf.linear_step_matrix(scheme, np.eye(2), 0.1)
    assert lf.symplectic_residual(k) < 1e-13
    ok, residual = lf.is_symplectic_matrix(k, lf.j0(1))
    assert ok and residual < 1e-13


def test_pullback_path_reaches_the_family():
    taut = lf.tautological_product_form(1)
    assert not taut.is_liouvillian
    pulled = lf.pullback_form(lf.psi_matrix(1, 0.3), taut)
    direct = lf.make_form("theta_phi", n=1, phi=0.3)
    np.testing.assert_allclose(pulled.matrix, direct.matrix, atol=1e-13)


def test_run_checks_single():
    (result,) = lf.run_checks(only="trig-identities")
    assert result["passed"]
