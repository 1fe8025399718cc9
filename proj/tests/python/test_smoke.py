import cmath
import math
from fractions import Fraction

import pytest

import qpent


def test_phi_at_origin():
    # Phi^1(0) = exp(-i pi / 12)
    assert abs(qpent.phi(0.0, 1.0) - cmath.exp(-1j * math.pi / 12)) < 1e-13


def test_phi_unit_modulus_and_product():
    for x in (-2.0, 0.7, 3.1):
        assert abs(abs(qpent.phi(x, 0.6)) - 1.0) < 1e-10
    h = 0.8 + 0.3j
    z = 0.4 - 0.2j
    assert abs(qpent.phi(z, h) - qpent.phi_product(z, h)) < 1e-8 * abs(qpent.phi(z, h))
    assert qpent.duality_residual(0.5 + 0.2j, 1.7) < 1e-9


def test_strip_violation_is_an_error():
    with pytest.raises(qpent.Error):
        qpent.phi(10j, 1.0)


def test_K_unitarity_and_identities():
    w = qpent.gaussian(1.0, 0.2j, [1.0, 0.5])
    assert abs(qpent.unitarity_ratio(w, 0.8) - 1.0) < 1e-6
    for idx in (1, 2, 3):
        assert qpent.intertwine_basic(idx, w, 0.8) < 1e-6
    z = [0.0, 1.0 + 0.5j]
    values = qpent.apply_K(w, z, 0.8)
    assert len(values) == 2 and all(isinstance(v, complex) for v in values)


def test_pentagon_small_grid():
    r = qpent.pentagon(hbar=1.0, N=2048, L=40.0, samples=3)
    assert abs(r["abs_lambda"] - 1.0) < 1e-3
    assert r["spread"] < 1e-3


def test_cluster_and_qtorus():
    assert qpent.tropical_gamma(3, -2, 5) == (3, -2)
    ia = qpent.canonical_IA(1, 1)
    assert ia[(1, 1)] == 1 and all(c > 0 for c in ia.values())
    iq = qpent.canonical_IAq(1, 0)
    assert all(all(c >= 0 for c in coeff.values()) for coeff in iq.values())
    prod = qpent.multiply_in_basis((1, 0), (0, 1))
    assert all(c > 0 for c in prod.values())


def test_moduli_exact():
    r = qpent.cross_ratio(0, 1, Fraction(1, 3), None)
    assert isinstance(r, Fraction)
    assert qpent.cross_ratio(1, Fraction(1, 3), None, 0) == 1 / r
    assert qpent.independence_check(2)["passed"]


def test_suites():
    assert qpent.suite_names()[0] == "phi"
    report = qpent.run_suite("qtorus")
    assert report["pass"] is True
    assert report == qpent.run_suite("qtorus")
    assert "runtime_ms" in qpent.run_suite("cluster", timing=True)["criteria"][0]
