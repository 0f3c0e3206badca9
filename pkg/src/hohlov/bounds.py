"""Closed-form coefficient bounds for the operator class.

Throughout, f = z + a2 z^2 + ... is a member, (a, b, c) are the operator
parameters, and K = (c)_2 / ((a)_2 (b)_2) is the sharp bound for |a3|.
Statuses:

* PROVED: sharp within the established parameter regime (generalized
  Fekete-Szego for complex and real mu, |a2|, |a3|, |a4|, and the second
  Hankel determinant |a2 a4 - a3^2|).
* REPORT_ONLY: closed forms reported for comparison only.  The brute-force
  search exhibits admissible members exceeding them (see the verifier),
  so they are never asserted as bounds.

Evaluating a PROVED bound outside its validity regime emits a
ParamsOutsideTheorem warning but still returns the formula value.
"""

from __future__ import annotations

import csv
import enum
import io
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .hypergeom import HohlovParams, pochhammer, preset


class ParamsOutsideTheorem(UserWarning):
    """Bound formula evaluated outside its established parameter regime."""


class MissingCoefficient(ValueError):
    """Functional evaluation on too short a coefficient vector."""


class Functional(enum.Enum):
    FS_COMPLEX = "fs_complex"
    FS_REAL = "fs_real"
    A2 = "a2"
    A3 = "a3"
    A4 = "a4"
    A5 = "a5"
    H2_1 = "h2_1"
    H2_2 = "h2_2"
    A2A3_A4 = "a2a3_a4"
    H3_1 = "h3_1"


PROVED = "PROVED"
REPORT_ONLY = "REPORT_ONLY"

REPORT_ONLY_FUNCTIONALS = frozenset({Functional.A5, Functional.A2A3_A4, Functional.H3_1})

# Functionals whose value needs mu.
MU_FUNCTIONALS = frozenset({Functional.FS_COMPLEX, Functional.FS_REAL})


@dataclass(frozen=True)
class BoundSpec:
    functional: Functional
    params: HohlovParams
    mu: complex | None
    value: float
    status: str


def _warn_outside(params: HohlovParams, regime: str) -> None:
    warnings.warn(f"parameters {params} outside the {regime} regime; "
                  "the returned value is the formula, not a theorem",
                  ParamsOutsideTheorem, stacklevel=3)


def _check_main(params: HohlovParams) -> None:
    if not params.main_theorem_valid:
        _warn_outside(params, "a >= c > 0, b >= c > 0")


def sharp_a3_scale(params: HohlovParams) -> float:
    """K = (c)_2 / ((a)_2 (b)_2), the |a3| bound and Fekete-Szego scale."""
    return pochhammer(params.c, 2) / (pochhammer(params.a, 2) * pochhammer(params.b, 2))


def fs_complex_bound(params: HohlovParams, mu: complex) -> float:
    """Sharp bound of |a3 - mu a2^2| for complex mu:

        K * max{1, |ab(c+1) + mu c(a+1)(b+1)| / (4ab(c+1))}.
    """
    _check_main(params)
    a, b, c = params.a, params.b, params.c
    inner = abs(a * b * (c + 1.0) + mu * c * (a + 1.0) * (b + 1.0)) / (4.0 * a * b * (c + 1.0))
    return sharp_a3_scale(params) * max(1.0, inner)


def fs_interval_parameter(params: HohlovParams, mu: float) -> float:
    """nu(mu) = (5ab(c+1) + mu c(a+1)(b+1)) / (8ab(c+1)); the real-mu bound
    is piecewise linear in nu with breakpoints 0 and 1."""
    a, b, c = params.a, params.b, params.c
    return (5.0 * a * b * (c + 1.0) + mu * c * (a + 1.0) * (b + 1.0)) / (8.0 * a * b * (c + 1.0))


def fs_real_bound(params: HohlovParams, mu: float) -> float:
    """Sharp bound of |a3 - mu a2^2| for real mu.

    With nu = nu(mu): K(1 - 2nu) for nu < 0, K on 0 <= nu <= 1, and
    K(2nu - 1) for nu > 1.  The first piece is the unique form continuous
    at nu = 0 and agreeing with the complex-mu bound on real mu; flipping
    the sign of mu's contribution there would break both.
    """
    if isinstance(mu, complex) and mu.imag != 0.0:
        raise TypeError("fs_real_bound takes real mu; use fs_complex_bound")
    _check_main(params)
    mu = float(mu.real) if isinstance(mu, complex) else float(mu)
    k = sharp_a3_scale(params)
    nu = fs_interval_parameter(params, mu)
    if nu < 0.0:
        return k * (1.0 - 2.0 * nu)
    if nu <= 1.0:
        return k
    return k * (2.0 * nu - 1.0)


def fs_middle_interval(params: HohlovParams) -> tuple:
    """The closed mu interval on which the real Fekete-Szego bound equals K."""
    a, b, c = params.a, params.b, params.c
    d = c * (a + 1.0) * (b + 1.0)
    return (-5.0 * a * b * (c + 1.0) / d, 3.0 * a * b * (c + 1.0) / d)


def a2_bound(params: HohlovParams) -> float:
    """Sharp bound c / (2ab) for |a2|."""
    _check_main(params)
    return params.c / (2.0 * params.a * params.b)


def a3_bound(params: HohlovParams) -> float:
    """Sharp bound K for |a3| (Fekete-Szego at mu = 0)."""
    _check_main(params)
    return sharp_a3_scale(params)


def a4_bound(params: HohlovParams) -> float:
    """Sharp bound 3 (c)_3 / ((a)_3 (b)_3) for |a4|."""
    _check_main(params)
    a, b, c = params.a, params.b, params.c
    return 3.0 * pochhammer(c, 3) / (pochhammer(a, 3) * pochhammer(b, 3))


def h2_1_bound(params: HohlovParams) -> float:
    """Sharp bound for |a3 - a2^2|, the Fekete-Szego value at mu = 1."""
    return fs_real_bound(params, 1.0)


def h2_2_bound(params: HohlovParams) -> float:
    """Sharp bound K^2 for the second Hankel determinant |a2 a4 - a3^2|.

    Established for a >= c >= 1/2 (with b likewise admissible); evaluated
    elsewhere it is formula only and carries a warning.
    """
    if not params.hankel_valid:
        _warn_outside(params, "a >= c >= 1/2")
    return sharp_a3_scale(params) ** 2


def a5_bound_reported(params: HohlovParams) -> float:
    """Reported value (15/16) (c)_4 / ((a)_4 (b)_4) for |a5|; REPORT_ONLY.

    Admissible members exceed it (the search exhibits |a5| = 1/2 at
    a = b = c = 1 against a reported 15/384), so it is never asserted.
    """
    a, b, c = params.a, params.b, params.c
    return 15.0 / 16.0 * pochhammer(c, 4) / (pochhammer(a, 4) * pochhammer(b, 4))


def _mixed_inner_terms(params: HohlovParams) -> tuple:
    """The pair (S, D) = (c(a+2)(b+2) + 9ab(c+2), c(a+2)(b+2) + 11ab(c+2))
    shared by the reported |a2 a3 - a4| and |H3(1)| values."""
    a, b, c = params.a, params.b, params.c
    base = c * (a + 2.0) * (b + 2.0)
    return base + 9.0 * a * b * (c + 2.0), base + 11.0 * a * b * (c + 2.0)


def a2a3_a4_bound_reported(params: HohlovParams) -> float:
    """Reported value for |a2 a3 - a4|; REPORT_ONLY.

        (13 (c)_2 / (64 a (a)_3 b (b)_3)) sqrt(S/D) S,

    with S = c(a+2)(b+2) + 9ab(c+2) and D = c(a+2)(b+2) + 11ab(c+2).
    The search exhibits members exceeding this value, so it is reported
    for comparison only.
    """
    a, b, c = params.a, params.b, params.c
    s, d = _mixed_inner_terms(params)
    pref = 13.0 * pochhammer(c, 2) / (64.0 * a * pochhammer(a, 3) * b * pochhammer(b, 3))
    return pref * math.sqrt(s / d) * s


def h3_1_bound_reported(params: HohlovParams) -> float:
    """Reported value for the third Hankel determinant |H3(1)|; REPORT_ONLY.

    Termwise assembly as printed:

        K^3 + (39 (c)_2 (c)_3 / (64 ((a)_3)^2 ((b)_3)^2)) sqrt(S/D) S
            + 15 (c)_4 (c)_2 / (64 (a)_2 (a)_4 (b)_2 (b)_4),

    with S, D as in the |a2 a3 - a4| value.  The middle and last terms are
    kept exactly in this printed shape (they do not factor through the
    other reported bounds for general a, b).
    """
    s, d = _mixed_inner_terms(params)
    a, b, c = params.a, params.b, params.c
    k = sharp_a3_scale(params)
    mid = (39.0 * pochhammer(c, 2) * pochhammer(c, 3)
           / (64.0 * pochhammer(a, 3) ** 2 * pochhammer(b, 3) ** 2)
           ) * math.sqrt(s / d) * s
    last = (15.0 * pochhammer(c, 4) * pochhammer(c, 2)
            / (64.0 * pochhammer(a, 2) * pochhammer(a, 4)
               * pochhammer(b, 2) * pochhammer(b, 4)))
    return k * k * k + mid + last


def bound_for(functional: Functional, params: HohlovParams,
              mu: complex | None = None) -> BoundSpec:
    """Dispatch to the closed-form evaluator; returns value plus status.

    For the Fekete-Szego functionals mu is required; a real mu routes to
    the piecewise real bound, a genuinely complex one to the complex
    bound.
    """
    if functional in MU_FUNCTIONALS:
        if mu is None:
            raise MissingCoefficient("Fekete-Szego bound requires mu")
        mu = complex(mu)
        if mu.imag != 0.0 and functional is Functional.FS_REAL:
            raise TypeError("fs_real takes real mu; use fs_complex")
        if mu.imag == 0.0 and functional is not Functional.FS_COMPLEX:
            return BoundSpec(Functional.FS_REAL, params, mu.real,
                             fs_real_bound(params, mu.real), PROVED)
        return BoundSpec(Functional.FS_COMPLEX, params, mu,
                         fs_complex_bound(params, mu), PROVED)
    if mu is not None:
        raise ValueError(f"{functional.value} takes no mu")
    table = {
        Functional.A2: (a2_bound, PROVED),
        Functional.A3: (a3_bound, PROVED),
        Functional.A4: (a4_bound, PROVED),
        Functional.A5: (a5_bound_reported, REPORT_ONLY),
        Functional.H2_1: (h2_1_bound, PROVED),
        Functional.H2_2: (h2_2_bound, PROVED),
        Functional.A2A3_A4: (a2a3_a4_bound_reported, REPORT_ONLY),
        Functional.H3_1: (h3_1_bound_reported, REPORT_ONLY),
    }
    fn, status = table[functional]
    return BoundSpec(functional, params, None, fn(params), status)


# -- functional evaluation on coefficient data ---------------------------

def _need(coeffs, n: int):
    # coeffs counts from a2: coeffs[0] = a2.
    if len(coeffs) < n - 1:
        raise MissingCoefficient(f"a{n} required but only {len(coeffs) + 1} coefficients given")
    return complex(coeffs[n - 2])


def functional_value(functional: Functional, coeffs, mu: complex | None = None) -> float:
    """|functional| evaluated on (a2, a3, a4[, a5]).

    `coeffs` is the coefficient tail starting at a2.  mu is required for
    the Fekete-Szego functionals and rejected otherwise.
    """
    if functional in MU_FUNCTIONALS:
        if mu is None:
            raise MissingCoefficient("Fekete-Szego value requires mu")
        a2, a3 = _need(coeffs, 2), _need(coeffs, 3)
        return abs(a3 - mu * a2 * a2)
    if mu is not None:
        raise ValueError(f"{functional.value} takes no mu")
    if functional is Functional.A2:
        return abs(_need(coeffs, 2))
    if functional is Functional.A3:
        return abs(_need(coeffs, 3))
    if functional is Functional.A4:
        return abs(_need(coeffs, 4))
    if functional is Functional.A5:
        return abs(_need(coeffs, 5))
    if functional is Functional.H2_1:
        a2, a3 = _need(coeffs, 2), _need(coeffs, 3)
        return abs(a3 - a2 * a2)
    if functional is Functional.H2_2:
        a2, a3, a4 = _need(coeffs, 2), _need(coeffs, 3), _need(coeffs, 4)
        return abs(a2 * a4 - a3 * a3)
    if functional is Functional.A2A3_A4:
        a2, a3, a4 = _need(coeffs, 2), _need(coeffs, 3), _need(coeffs, 4)
        return abs(a2 * a3 - a4)
    if functional is Functional.H3_1:
        a2, a3, a4, a5 = (_need(coeffs, 2), _need(coeffs, 3),
                          _need(coeffs, 4), _need(coeffs, 5))
        return abs(a3 * (a2 * a4 - a3 * a3) - a4 * (a4 - a2 * a3) + a5 * (a3 - a2 * a2))
    raise ValueError(f"unknown functional {functional}")


def hankel3_assembly(coeffs) -> float:
    """Triangle-inequality overestimate of |H3(1)|:
    |a3||a2a4 - a3^2| + |a4||a2a3 - a4| + |a5||a3 - a2^2|."""
    a2, a3, a4, a5 = (_need(coeffs, 2), _need(coeffs, 3),
                      _need(coeffs, 4), _need(coeffs, 5))
    return (abs(a3) * abs(a2 * a4 - a3 * a3)
            + abs(a4) * abs(a2 * a3 - a4)
            + abs(a5) * abs(a3 - a2 * a2))


# -- specializations of the Fekete-Szego bound ---------------------------
#
# For the classical operators the complex-mu bound collapses to short
# printed forms; they are kept verbatim as cross-checks of the generic
# evaluator.

def ruscheweyh_fs_bound(lam: float, mu: complex) -> float:
    """(1/(lambda+1)_2) max{1, |(lambda+1) + mu(lambda+2)| / (4(lambda+1))}."""
    return (1.0 / pochhammer(lam + 1.0, 2)) * max(
        1.0, abs((lam + 1.0) + mu * (lam + 2.0)) / (4.0 * (lam + 1.0)))


def bernardi_fs_bound(eta: float, mu: complex) -> float:
    """The (1, 1+eta, 2+eta) specialization:
    ((3+eta)/(2(1+eta))) max{1, |(1+eta)(3+eta) + 2mu(2+eta)^2| / (4(1+eta)(3+eta))}."""
    return ((3.0 + eta) / (2.0 * (1.0 + eta))) * max(
        1.0, abs((1.0 + eta) * (3.0 + eta) + 2.0 * mu * (2.0 + eta) ** 2)
        / (4.0 * (1.0 + eta) * (3.0 + eta)))


def alexander_fs_bound(mu: complex) -> float:
    """(1/6) max{1, |2 + 3mu| / 8}, the (2, 1, 1) specialization."""
    return (1.0 / 6.0) * max(1.0, abs(2.0 + 3.0 * mu) / 8.0)


# -- bound tables --------------------------------------------------------

TABLE_FIELDS = ("functional", "a", "b", "c", "mu_re", "mu_im", "bound", "status")


def specialization_table(preset_name: str, preset_args, functionals,
                         mu_values=()) -> list:
    """Bound table rows for a preset operator.

    One row per functional; the Fekete-Szego functionals get one row per
    mu in mu_values.  Rows are dicts with TABLE_FIELDS keys (mu fields
    None when the functional takes no mu).
    """
    params = preset(preset_name, *preset_args)
    rows = []
    for functional in functionals:
        if functional in MU_FUNCTIONALS:
            for mu in mu_values:
                spec = bound_for(functional, params, mu=mu)
                mu = complex(mu)
                rows.append({"functional": spec.functional.value,
                             "a": params.a, "b": params.b, "c": params.c,
                             "mu_re": mu.real, "mu_im": mu.imag,
                             "bound": spec.value, "status": spec.status})
        else:
            spec = bound_for(functional, params)
            rows.append({"functional": spec.functional.value,
                         "a": params.a, "b": params.b, "c": params.c,
                         "mu_re": None, "mu_im": None,
                         "bound": spec.value, "status": spec.status})
    return rows


def table_to_csv(rows) -> str:
    """CSV rendering with the fixed header line; None mu fields left empty."""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=TABLE_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        out = dict(row)
        for key in ("mu_re", "mu_im"):
            if out[key] is None:
                out[key] = ""
        writer.writerow(out)
    return buf.getvalue()
