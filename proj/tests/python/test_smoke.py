import cmath
import math

import numpy as np
import pytest

import subbergman as sb


def test_kernel_worked_example():
    assert sb.kernel_eval("generalized", 2.0, 0.5, 0.5) == pytest.approx(16 / 9)
    assert sb.kernel_eval("bergman", 0.0, 0.5, 0.5) == pytest.approx(16 / 9)


def test_monomial_norms():
    assert sb.monomial_norm_squared(0.0, 4) == pytest.approx(0.2)
    assert sb.monomial_norm_squared(1.0, 2) == pytest.approx(2 / 12)


def test_moebius_and_blaschke():
    phi = sb.MoebiusMap(1.0, 0.5)
    assert abs(phi(0.5)) < 1e-15
    assert abs(phi(cmath.exp(0.3j))) == pytest.approx(1.0)
    b = sb.BlaschkeProduct(1.0, [0.0, 0.5])
    assert b.derivative(0.0) == pytest.approx(0.5)
    with pytest.raises(sb.DomainError):
        sb.BlaschkeProduct(1.0, [0.3, 0.3])
    assert sb.BlaschkeProduct(1.0, [0.0, 0.0], allow_repeated=True)(0.4) == pytest.approx(0.16)


def test_defect_matrix_is_a_positive_contraction():
    m = sb.defect_matrix(1.0, sb.MoebiusMap(1.0, 0.3 + 0.2j), 40)
    assert m.shape == (41, 41)
    assert np.allclose(m, m.conj().T)
    ev = np.linalg.eigvalsh(m)
    assert ev.min() > -1e-10 and ev.max() < 1 + 1e-12


def test_defect_on_constant():
    out = sb.apply_defect(0.0, sb.MoebiusMap(1.0, 0.5), [1.0], 80)
    assert np.allclose(out[:10], [0.75 * 0.5**n for n in range(10)])


def test_conjugate_toeplitz_regression():
    vals = sb.toeplitz_conj_blaschke([1.0], sb.BlaschkeProduct(1.0, [0.5]), [0.0, 0.5, 0.3j])
    assert np.allclose(vals, 0.5)


def test_oneminus_dichotomy():
    lam, verdict = sb.oneminus_test("bergman", 0.0, [0.5, -0.5])
    assert verdict == "NOT_PSD" and lam < 0
    _, verdict = sb.oneminus_test("hardy", 0.0, [0.1, 0.4j, -0.6])
    assert verdict == "PSD"


def test_radial_probe_with_python_callable():
    values, tail, verdict = sb.radial_probe(lambda z: 1 / (2 - z), 0.0, 20)
    assert verdict == "CONVERGES"
    assert values[-1] == pytest.approx(1.0, abs=1e-5)


def test_cyclicity():
    res = sb.cyclicity_residuals([1.0, -0.5], sb.MoebiusMap(1.0, 0.3), degrees=[0, 5, 10], n_work=100)
    assert res[0] > res[1] > res[2]


def test_run_job_roundtrip():
    env = sb.run_job("kernel-eval", s=2, z=0.5, w=0.5)
    assert env["payload"]["value"]["re"] == pytest.approx(16 / 9)
    env = sb.run_job("doublestar-check", seed=3, alpha=1.0, a=[0.3, 0.0], count=10)
    assert env["payload"]["rank_one"] is True
    with pytest.raises(ValueError):
        sb.run_job("witness-search")
    assert "acceptance" in sb.command_names()
    assert isinstance(sb.__version__, str)
