"""Hypergeometric multiplier sequences and the three-parameter convolution
operator.

The operator with parameters (a, b, c) acts diagonally on Taylor
coefficients of a normalized analytic function f(z) = z + a2 z^2 + ...:
the n-th coefficient is scaled by

    psi_n = (a)_{n-1} (b)_{n-1} / ((c)_{n-1} (n-1)!),

a ratio of Pochhammer symbols with psi_1 = 1, so normalization is
preserved.  Several classical operators (Carlson-Shaffer, Ruscheweyh,
Bernardi, ...) arise as parameter specializations; see `preset`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .series import TruncatedSeries

_INT_TOL = 1e-12


class InvalidC(ValueError):
    """Lower parameter c at a pole (zero or a negative integer)."""


class NotNormalized(ValueError):
    """Operator applied to a series with f(0) != 0 or f'(0) != 1."""


class SingularMultiplier(ValueError):
    """Inverse operator where some multiplier psi_n vanishes."""


class UnknownPreset(ValueError):
    """Preset name not in the registry."""


class ParamOutOfRange(ValueError):
    """Preset parameter outside its admissible range."""


def _is_nonpositive_integer(x: float) -> bool:
    return x <= _INT_TOL and abs(x - round(x)) <= _INT_TOL


def pochhammer(alpha: float, n: int) -> float:
    """Rising factorial (alpha)_n = alpha (alpha+1) ... (alpha+n-1), (alpha)_0 = 1.

    Computed as a running product; no Gamma quotients, so nonpositive
    integer arguments give exact zeros instead of NaN.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    out = 1.0
    for k in range(n):
        out *= alpha + k
    return out


@dataclass(frozen=True)
class HohlovParams:
    """Operator parameters (a, b, c); c must avoid zero and negative integers.

    `main_theorem_valid` flags the regime a >= c > 0 and b >= c > 0 under
    which the sharp coefficient bounds are established; `hankel_valid`
    flags the stricter a >= c >= 1/2 needed for the second Hankel
    determinant bound.  Evaluation outside these regimes is permitted but
    the corresponding bounds carry a warning.
    """

    a: float
    b: float
    c: float

    def __post_init__(self):
        if _is_nonpositive_integer(self.c):
            raise InvalidC(f"c={self.c} is zero or a negative integer")

    @property
    def main_theorem_valid(self) -> bool:
        return self.a >= self.c > 0 and self.b >= self.c > 0

    @property
    def hankel_valid(self) -> bool:
        return self.a >= self.c >= 0.5

    def shift_a(self) -> "HohlovParams":
        """Parameters with a raised by one (contiguous neighbor)."""
        return HohlovParams(self.a + 1.0, self.b, self.c)


def multiplier_sequence(params: HohlovParams, n_max: int) -> np.ndarray:
    """Multipliers psi_1..psi_n_max as a float vector (index 0 <-> psi_1).

    Built by the running ratio psi_{n+1} = psi_n (a+n-1)(b+n-1)/((c+n-1) n),
    which is exact for psi_1 = 1 and avoids factorial overflow.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    a, b, c = params.a, params.b, params.c
    psi = np.empty(n_max, dtype=np.float64)
    psi[0] = 1.0
    for n in range(1, n_max):
        psi[n] = psi[n - 1] * (a + n - 1.0) * (b + n - 1.0) / ((c + n - 1.0) * n)
    return psi


def _require_normalized(f: TruncatedSeries) -> None:
    if not f.is_normalized:
        raise NotNormalized("operator input must be z + a2 z^2 + ...")


def apply(params: HohlovParams, f: TruncatedSeries) -> TruncatedSeries:
    """Operator image: coefficient n of f is scaled by psi_n."""
    _require_normalized(f)
    psi = multiplier_sequence(params, f.order)
    out = f.coeffs.copy()
    out[1:] *= psi
    return TruncatedSeries(out, order=f.order)


def apply_inverse(params: HohlovParams, g: TruncatedSeries) -> TruncatedSeries:
    """Exact diagonal inverse: coefficient n divided by psi_n.

    Raises SingularMultiplier when some psi_n vanishes (a or b hitting a
    nonpositive integer), in which case no preimage exists.
    """
    _require_normalized(g)
    psi = multiplier_sequence(params, g.order)
    if np.any(psi == 0.0):
        n = int(np.argmin(psi != 0.0)) + 1
        raise SingularMultiplier(f"psi_{n} = 0 for {params}")
    out = g.coeffs.copy()
    out[1:] /= psi
    return TruncatedSeries(out, order=g.order)


def contiguous_shift_residual(params: HohlovParams, f: TruncatedSeries) -> float:
    """Residual of the first-parameter shift identity.

    The operator family satisfies
        z (I_{a,b,c} f)'(z) = a I_{a+1,b,c} f(z) - (a-1) I_{a,b,c} f(z)
    exactly at every truncation order.  Returns the max coefficient
    deviation between the two sides, scaled by max(1, ||lhs||_inf): the
    multipliers grow fast for large a and b, so the raw difference carries
    their magnitude while the identity itself holds to machine precision.
    """
    g = apply(params, f)
    lhs = g.coeffs * np.arange(g.order + 1)
    rhs = params.a * apply(params.shift_a(), f).coeffs - (params.a - 1.0) * g.coeffs
    scale = max(1.0, float(np.max(np.abs(lhs))))
    return float(np.max(np.abs(lhs - rhs))) / scale


# -- classical operator presets -----------------------------------------

def _preset_carlson_shaffer(a: float, c: float) -> HohlovParams:
    return HohlovParams(a, 1.0, c)


def _preset_ruscheweyh(lam: float) -> HohlovParams:
    if lam <= -1.0:
        raise ParamOutOfRange(f"ruscheweyh requires lambda > -1, got {lam}")
    return HohlovParams(lam + 1.0, 1.0, 1.0)


def _preset_bernardi(eta: float) -> HohlovParams:
    if eta <= -1.0:
        raise ParamOutOfRange(f"bernardi requires eta > -1, got {eta}")
    return HohlovParams(1.0, 1.0 + eta, 2.0 + eta)


def _preset_owa_srivastava(alpha: float) -> HohlovParams:
    if alpha >= 2.0:
        raise ParamOutOfRange(f"owa_srivastava requires alpha < 2, got {alpha}")
    return HohlovParams(2.0, 1.0, 2.0 - alpha)


def _preset_noor(n: float) -> HohlovParams:
    if n <= -1.0:
        raise ParamOutOfRange(f"noor requires n > -1, got {n}")
    return HohlovParams(2.0, 1.0, n + 1.0)


def _preset_choi_saigo_srivastava(lam: float, mu: float) -> HohlovParams:
    if lam <= -1.0 or mu <= 0.0:
        raise ParamOutOfRange(
            f"choi_saigo_srivastava requires lambda > -1 and mu > 0, got ({lam}, {mu})")
    return HohlovParams(mu, 1.0, lam + 1.0)


def _preset_libera() -> HohlovParams:
    return HohlovParams(1.0, 2.0, 3.0)


def _preset_alexander() -> HohlovParams:
    return HohlovParams(2.0, 1.0, 1.0)


PRESETS = {
    "carlson_shaffer": _preset_carlson_shaffer,
    "ruscheweyh": _preset_ruscheweyh,
    "bernardi": _preset_bernardi,
    "owa_srivastava": _preset_owa_srivastava,
    "noor": _preset_noor,
    "choi_saigo_srivastava": _preset_choi_saigo_srivastava,
    "libera": _preset_libera,
    "alexander": _preset_alexander,
}


def preset(name: str, *args: float) -> HohlovParams:
    """Parameters of a named classical operator, e.g. preset('bernardi', 1.0)."""
    try:
        builder = PRESETS[name]
    except KeyError:
        raise UnknownPreset(
            f"unknown preset {name!r}; known: {', '.join(sorted(PRESETS))}") from None
    n_expected = builder.__code__.co_argcount
    if len(args) != n_expected:
        raise ParamOutOfRange(
            f"preset {name!r} takes {n_expected} parameter(s), got {len(args)}")
    return builder(*map(float, args))
