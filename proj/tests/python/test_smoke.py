import math

import pytest

import _tractlab as tl


def test_euler_eigenvalue():
    assert tl.euler_eigenvalue(1, 0) == pytest.approx((2 / math.pi) ** 2, rel=1e-14)
    assert tl.euler_trace(0) == pytest.approx(0.5, rel=1e-13)


def test_kernels():
    assert tl.euler_kernel(0.3, 0.7, 0) == pytest.approx(0.3)
    assert tl.wiener_kernel(1.0, 1.0, 1) == pytest.approx(1 / 3, rel=1e-13)
    assert tl.wiener_kernel(0.4, 0.9, 2) == tl.wiener_kernel(0.9, 0.4, 2)
    with pytest.raises(ValueError):
        tl.euler_kernel(1.5, 0.2, 0)


def test_sequence():
    seq = tl.SmoothnessSequence.parse("power-wiener:s=0.5")
    assert seq(4) == 6
    assert seq.spec.startswith("power-wiener")


def test_complexity():
    res = tl.n_eps(0.5, 1, "euler", "const:0")
    assert res["n"] == 1
    assert res["certified"]
    lo, hi = tl.error_of_n(1, 1, "euler", "const:0")
    assert hi == pytest.approx(0.4352361782541725, rel=1e-9)
    assert lo <= hi


def test_spectrum_and_products():
    sp = tl.wiener_spectrum(1, 4)
    assert len(sp["log_eigenvalues"]) == 4
    rows = tl.top_products([("euler", 0), ("euler", 0)], 6, 4)
    vals = [math.exp(r["log_value"]) for r in rows]
    assert vals == sorted(vals, reverse=True)


def test_criteria():
    c = tl.euler_quasi_criterion("const:0", 100)
    assert c == pytest.approx(100 / math.log(100), rel=1e-12)
    assert tl.euler_spt_exponent(0, float("inf")) == pytest.approx(2.0)


def test_paths_deterministic():
    a = tl.sample_paths(2, [0.25, 0.5, 1.0], 2, 11)
    b = tl.sample_paths(2, [0.25, 0.5, 1.0], 2, 11)
    assert a == b
