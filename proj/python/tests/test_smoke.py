import math

import numpy as np
import pytest

import nvgate


def test_coefficients_first_point():
    c = nvgate.coefficients(2.4, 0.1)
    assert c.r.real == pytest.approx(0.829060, abs=1e-6)
    assert c.t.real == pytest.approx(-0.170940, abs=1e-6)
    assert c.r0.real == pytest.approx(0.047619, abs=1e-6)
    assert c.t0.real == pytest.approx(-0.952381, abs=1e-6)


def test_closed_form_efficiency():
    assert nvgate.closed_form_efficiency(nvgate.coefficients(2.4, 0.1)) == pytest.approx(
        0.847014, abs=1e-6
    )
    assert nvgate.closed_form_efficiency(nvgate.ScatteringCoefficients.ideal()) == 1.0


def test_oracles():
    t = nvgate.oracle_matrix("toffoli")
    assert t.shape == (16, 16)
    assert np.trace(t).real == pytest.approx(14.0)
    f = nvgate.oracle_matrix("fredkin")
    assert np.allclose(f @ f, np.eye(16))


def test_ideal_branch_matches_oracle():
    plus, minus = nvgate.effective_branches("fredkin")
    assert np.allclose(plus * math.sqrt(2), nvgate.oracle_matrix("fredkin"))
    assert np.allclose(minus @ minus.conj().T, np.eye(16) / 2)


def test_fidelity_and_efficiency():
    c = nvgate.coefficients(2.4, 1.0)
    assert nvgate.average_fidelity("toffoli", c) == pytest.approx(0.884273, abs=1e-6)
    assert nvgate.average_efficiency("fredkin", c, nodes=9) == pytest.approx(0.639220, abs=1e-6)
    with pytest.raises(ValueError):
        nvgate.average_fidelity("toffoli", c, nodes=4)


def test_trace():
    amps = [0, 1, 0, 1, 0, 1, 1, 0]  # L1 a2 L2 b1
    trace = nvgate.run_trace("fredkin", amps)
    tags = [e["tag"] for e in trace]
    assert tags[0] == "phi0"
    assert "phi6/plus_x" in tags
    final = trace[-1]["state"]
    live = [e["config"] for e in final if abs(complex(e["re"], e["im"])) > 1e-12]
    assert live == ["L1,a2,R2,b2"]


def test_sweep():
    pts = nvgate.sweep([1.0, 2.0], [0.1], nodes=9, threads=1)
    assert [p.gsq_over_kgamma for p in pts] == [1.0, 2.0]
    assert pts[0].f_toffoli < pts[1].f_toffoli


def test_bad_gate():
    with pytest.raises(ValueError):
        nvgate.oracle_matrix("nand")
