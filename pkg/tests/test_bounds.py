"""Tests for the closed-form coefficient bounds.

Frozen reference values at a = b = c = 1:

    |a2| 1/2, |a3| 1/2, |a4| 1/2, H2(1) 1/2, H2(2) 1/4,
    reported |a5| 15/384, reported |a2a3-a4| 0.376114415532599,
    reported |H3(1)| 0.31794002026629953,

computed once by hand from the Pochhammer expressions and pinned here.
"""

import math

import numpy as np
import pytest

from hohlov.bounds import (
    Functional,
    MissingCoefficient,
    PROVED,
    REPORT_ONLY,
    REPORT_ONLY_FUNCTIONALS,
    ParamsOutsideTheorem,
    TABLE_FIELDS,
    a2_bound,
    a2a3_a4_bound_reported,
    a3_bound,
    a4_bound,
    a5_bound_reported,
    alexander_fs_bound,
    bernardi_fs_bound,
    bound_for,
    fs_complex_bound,
    fs_interval_parameter,
    fs_middle_interval,
    fs_real_bound,
    functional_value,
    h2_1_bound,
    h2_2_bound,
    h3_1_bound_reported,
    hankel3_assembly,
    ruscheweyh_fs_bound,
    sharp_a3_scale,
    specialization_table,
    table_to_csv,
)
from hohlov.hypergeom import HohlovParams, preset

P111 = HohlovParams(1.0, 1.0, 1.0)
P211 = HohlovParams(2.0, 1.0, 1.0)
TRIPLES = [(1.0, 1.0, 1.0), (2.0, 1.0, 1.0), (1.5, 1.2, 1.0), (3.0, 2.0, 1.0)]


# -- frozen values ------------------------------------------------------


def test_simple_bounds_identity_params():
    assert a2_bound(P111) == 0.5
    assert a3_bound(P111) == 0.5
    assert a4_bound(P111) == 0.5
    assert h2_1_bound(P111) == 0.5
    assert h2_2_bound(P111) == 0.25
    assert a5_bound_reported(P111) == 15.0 / 384.0
    assert a2a3_a4_bound_reported(P111) == pytest.approx(0.376114415532599, abs=1e-15)
    assert h3_1_bound_reported(P111) == pytest.approx(0.31794002026629953, abs=1e-15)


def test_simple_bounds_alexander_params():
    assert a2_bound(P211) == 0.25
    assert a3_bound(P211) == pytest.approx(1.0 / 6.0, abs=1e-17)
    assert a4_bound(P211) == 0.125
    assert h2_2_bound(P211) == pytest.approx(1.0 / 36.0, abs=1e-17)


def test_sharp_a3_scale():
    assert sharp_a3_scale(P111) == 0.5
    assert sharp_a3_scale(HohlovParams(1.5, 1.2, 1.0)) == pytest.approx(
        2.0 / (1.5 * 2.5 * 1.2 * 2.2), rel=1e-15)


# -- Fekete-Szego piecewise structure -----------------------------------


def test_fs_real_piecewise_values():
    # nu(mu) = (10 + 4 mu)/16 at the identity parameters; breakpoints at
    # mu = -2.5 and 1.5
    cases = {-3.0: 0.625, -2.5: 0.5, -1.0: 0.5, 0.0: 0.5,
             1.0: 0.5, 1.5: 0.5, 2.0: 0.625, 4.0: 1.125}
    for mu, want in cases.items():
        assert fs_real_bound(P111, mu) == pytest.approx(want, abs=1e-15), mu


def test_fs_interval_parameter_and_breakpoints():
    lo, hi = fs_middle_interval(P111)
    assert (lo, hi) == (-2.5, 1.5)
    assert fs_interval_parameter(P111, lo) == pytest.approx(0.0, abs=1e-16)
    assert fs_interval_parameter(P111, hi) == pytest.approx(1.0, abs=1e-16)


def test_fs_real_continuous_at_breakpoints():
    for t in TRIPLES:
        params = HohlovParams(*t)
        k = sharp_a3_scale(params)
        lo, hi = fs_middle_interval(params)
        assert abs(fs_real_bound(params, lo) - k) < 1e-12
        assert abs(fs_real_bound(params, hi) - k) < 1e-12
        # just outside, the value rises continuously
        eps = 1e-9
        assert fs_real_bound(params, lo - eps) - k < 1e-8
        assert fs_real_bound(params, hi + eps) - k < 1e-8


def test_fs_real_equals_complex_on_reals():
    rng = np.random.default_rng(31)
    for t in TRIPLES:
        params = HohlovParams(*t)
        for mu in rng.uniform(-8.0, 8.0, size=100):
            diff = abs(fs_real_bound(params, float(mu)) - fs_complex_bound(params, float(mu)))
            assert diff < 1e-12, (t, mu)


def test_fs_complex_values():
    # |2 + 4 mu| / 8 below 1 keeps the flat value K
    assert fs_complex_bound(P111, 1.0 + 1.0j) == 0.5
    mu = 4j
    want = 0.5 * abs(2.0 + 4.0 * mu) / 8.0
    assert fs_complex_bound(P111, mu) == pytest.approx(want, rel=1e-15)


def test_fs_real_rejects_complex_mu():
    with pytest.raises(TypeError):
        fs_real_bound(P111, 1.0 + 1.0j)


def test_fs_real_monotone_outside_middle():
    params = HohlovParams(1.5, 1.2, 1.0)
    lo, hi = fs_middle_interval(params)
    right = [fs_real_bound(params, hi + s) for s in (0.5, 1.0, 2.0, 4.0)]
    assert all(x < y for x, y in zip(right, right[1:]))
    left = [fs_real_bound(params, lo - s) for s in (0.5, 1.0, 2.0, 4.0)]
    assert all(x < y for x, y in zip(left, left[1:]))


def test_h2_1_is_fs_at_one():
    for t in TRIPLES:
        params = HohlovParams(*t)
        assert h2_1_bound(params) == fs_real_bound(params, 1.0)


# -- regime warnings ----------------------------------------------------


def test_outside_regime_warns():
    bad = HohlovParams(0.5, 1.0, 1.0)  # a < c
    with pytest.warns(ParamsOutsideTheorem):
        a2_bound(bad)
    with pytest.warns(ParamsOutsideTheorem):
        fs_real_bound(bad, 0.0)
    with pytest.warns(ParamsOutsideTheorem):
        h2_2_bound(HohlovParams(0.4, 1.0, 0.5))
    # reported values carry no theorem, hence no warning
    import warnings as _w
    with _w.catch_warnings():
        _w.simplefilter("error")
        a5_bound_reported(bad)


# -- dispatch -----------------------------------------------------------


def test_bound_for_dispatch():
    spec = bound_for(Functional.FS_REAL, P111, mu=2.0)
    assert spec.functional is Functional.FS_REAL
    assert spec.value == pytest.approx(0.625, abs=1e-15)
    assert spec.status == PROVED

    spec = bound_for(Functional.FS_COMPLEX, P111, mu=2.0)
    assert spec.functional is Functional.FS_COMPLEX
    assert spec.value == pytest.approx(0.625, abs=1e-15)

    spec = bound_for(Functional.FS_REAL, P111, mu=1.0 + 0j)
    assert spec.functional is Functional.FS_REAL

    spec = bound_for(Functional.A5, P111)
    assert spec.status == REPORT_ONLY
    assert spec.value == 15.0 / 384.0

    with pytest.raises(MissingCoefficient):
        bound_for(Functional.FS_REAL, P111)
    with pytest.raises(TypeError):
        bound_for(Functional.FS_REAL, P111, mu=1j)
    with pytest.raises(ValueError):
        bound_for(Functional.A3, P111, mu=1.0)


def test_report_only_set():
    assert REPORT_ONLY_FUNCTIONALS == {Functional.A5, Functional.A2A3_A4,
                                       Functional.H3_1}
    for functional in (Functional.A2, Functional.A3, Functional.A4,
                       Functional.H2_1, Functional.H2_2):
        assert bound_for(functional, P111).status == PROVED


# -- functional evaluation ----------------------------------------------


def test_functional_values():
    binom = (0.5, -0.125, 0.0625, -5.0 / 128.0)  # sqrt(1+z) member
    assert functional_value(Functional.A2, binom) == 0.5
    assert functional_value(Functional.A5, binom) == 5.0 / 128.0
    assert functional_value(Functional.H2_1, binom) == pytest.approx(0.375, abs=1e-16)
    assert functional_value(Functional.H2_2, binom) == pytest.approx(0.015625, abs=1e-17)
    assert functional_value(Functional.A2A3_A4, binom) == pytest.approx(0.125, abs=1e-16)
    assert functional_value(Functional.FS_REAL, binom, mu=2.0) == pytest.approx(
        0.625, abs=1e-15)
    assert functional_value(Functional.FS_COMPLEX, binom, mu=1j) == pytest.approx(
        abs(-0.125 - 0.25j), rel=1e-15)


def test_h3_1_value_and_assembly():
    coeffs = (0.0, 0.0, 0.5, 0.0)
    assert functional_value(Functional.H3_1, coeffs) == 0.25
    assert hankel3_assembly(coeffs) == 0.25
    # per-term assembly dominates the determinant modulus
    rng = np.random.default_rng(32)
    for _ in range(50):
        c = rng.normal(size=4) * 0.5
        assert hankel3_assembly(c) >= functional_value(Functional.H3_1, c) - 1e-15


def test_functional_value_errors():
    with pytest.raises(MissingCoefficient):
        functional_value(Functional.A4, (0.5, 0.5))
    with pytest.raises(MissingCoefficient):
        functional_value(Functional.FS_REAL, (0.5, 0.5))
    with pytest.raises(ValueError):
        functional_value(Functional.A3, (0.5, 0.5), mu=1.0)


# -- printed specializations against the generic formula ----------------


def test_ruscheweyh_specialization():
    for lam in (0.0, 1.0, 2.0):
        params = preset("ruscheweyh", lam)
        for mu in (-3.0, -1.0, 0.0, 1.0, 2.0, 3.0):
            assert abs(ruscheweyh_fs_bound(lam, mu)
                       - fs_real_bound(params, mu)) < 1e-15
        assert abs(ruscheweyh_fs_bound(lam, 1j)
                   - fs_complex_bound(params, 1j)) < 1e-15


def test_bernardi_specialization():
    # (1, 1+eta, 2+eta) always has a < c, so the generic evaluator flags
    # the regime; the printed specialization is a formula-level identity
    # and must agree regardless
    import warnings as _w
    for eta in (0.0, 1.0, 2.0):
        params = preset("bernardi", eta)
        with _w.catch_warnings():
            _w.simplefilter("ignore", ParamsOutsideTheorem)
            for mu in (-3.0, -1.0, 0.0, 1.0, 2.0, 3.0):
                assert abs(bernardi_fs_bound(eta, mu)
                           - fs_real_bound(params, mu)) < 1e-14
            assert abs(bernardi_fs_bound(eta, 2j)
                       - fs_complex_bound(params, 2j)) < 1e-14


def test_alexander_specialization():
    for mu in (-4.0, -2.5, -1.0, 0.0, 1.0, 1.5, 2.0, 4.0):
        assert abs(alexander_fs_bound(mu) - fs_real_bound(P211, mu)) < 1e-15
    assert alexander_fs_bound(2.0) == pytest.approx(1.0 / 6.0, abs=1e-17)


# -- tables -------------------------------------------------------------


def test_specialization_table_shape():
    rows = specialization_table("alexander", (),
                                [Functional.FS_REAL, Functional.A2, Functional.H2_2],
                                mu_values=(-3.0, 0.0, 2.0))
    assert len(rows) == 5
    fs_rows = [r for r in rows if r["functional"] == "fs_real"]
    assert len(fs_rows) == 3
    for r in fs_rows:
        assert r["bound"] == pytest.approx(alexander_fs_bound(r["mu_re"]), rel=1e-15)
    plain = [r for r in rows if r["functional"] == "a2"][0]
    assert plain["mu_re"] is None and plain["mu_im"] is None
    assert plain["bound"] == 0.25
    assert all(set(r) == set(TABLE_FIELDS) for r in rows)


def test_table_csv_format():
    # the Libera parameters (1,2,3) sit outside the proof regime, so the
    # PROVED row comes with a warning but the table still renders
    with pytest.warns(ParamsOutsideTheorem):
        rows = specialization_table("libera", (), [Functional.A2, Functional.A5])
    text = table_to_csv(rows)
    lines = text.strip().split("\n")
    assert lines[0] == "functional,a,b,c,mu_re,mu_im,bound,status"
    assert len(lines) == 3
    assert lines[1].startswith("a2,1.0,2.0,3.0,,,")
    assert lines[2].endswith(REPORT_ONLY)
