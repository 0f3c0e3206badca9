"""Truncated power series arithmetic over the complex numbers.

A series of order N is the coefficient vector (c0, ..., cN) of
c0 + c1 z + ... + cN z^N.  Every operation truncates its result back to a
finite order, silently discarding higher terms, so the arithmetic is exact
modulo z^(N+1).  Roots and powers are computed by coefficient recurrences
rather than exp/log composition; for a unit series (c0 = 1) this keeps the
principal branch automatically.
"""

from __future__ import annotations

import json
from typing import Iterable, Union

import numpy as np

DEFAULT_ORDER = 8

# Slack allowed when a structural precondition (constant term 0 or 1) is
# checked on data that went through floating point arithmetic.
_STRUCT_TOL = 1e-9

Scalar = Union[int, float, complex]


class ZeroConstantTerm(ValueError):
    """Reciprocal of a series whose constant term vanishes."""


class NotUnitSeries(ValueError):
    """Root or fractional power of a series whose constant term is not 1."""


class InnerConstantNonzero(ValueError):
    """Composition with an inner series that does not vanish at the origin."""


class TruncatedSeries:
    """A power series truncated at a fixed order.

    Coefficients are stored as a read-only complex128 vector of length
    order + 1.  Instances are immutable; every operation returns a new
    series.  Binary operations pad the shorter operand with zeros, so the
    result order is the larger of the two orders.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Scalar], order: int | None = None):
        arr = np.asarray(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                         dtype=np.complex128).ravel().copy()
        if arr.size == 0:
            arr = np.zeros(1, dtype=np.complex128)
        if order is not None:
            if order < 0:
                raise ValueError("order must be >= 0")
            if arr.size > order + 1:
                arr = arr[: order + 1].copy()
            elif arr.size < order + 1:
                arr = np.concatenate([arr, np.zeros(order + 1 - arr.size, dtype=np.complex128)])
        arr.flags.writeable = False
        self._coeffs = arr

    # -- basic structure ------------------------------------------------

    @property
    def order(self) -> int:
        return self._coeffs.size - 1

    @property
    def coeffs(self) -> np.ndarray:
        """Read-only coefficient vector (c0, ..., cN)."""
        return self._coeffs

    def coeff(self, k: int) -> complex:
        """Coefficient of z^k; zero beyond the truncation order."""
        if k < 0:
            raise IndexError("negative power")
        if k > self.order:
            return 0j
        return complex(self._coeffs[k])

    def with_order(self, order: int) -> "TruncatedSeries":
        """Pad with zeros or truncate to the given order."""
        return TruncatedSeries(self._coeffs, order=order)

    @property
    def is_normalized(self) -> bool:
        """True when f(0) = 0 and f'(0) = 1 up to roundoff."""
        return (self.order >= 1
                and abs(self._coeffs[0]) <= _STRUCT_TOL
                and abs(self._coeffs[1] - 1.0) <= _STRUCT_TOL)

    def __repr__(self) -> str:
        head = np.array2string(self._coeffs[: min(5, self._coeffs.size)],
                               precision=6, separator=", ")
        tail = ", ..." if self._coeffs.size > 5 else ""
        return f"TruncatedSeries(order={self.order}, coeffs={head[:-1]}{tail}])"

    def allclose(self, other: "TruncatedSeries", atol: float = 1e-12) -> bool:
        n = max(self.order, other.order)
        return bool(np.allclose(self.with_order(n)._coeffs,
                                other.with_order(n)._coeffs,
                                rtol=0.0, atol=atol))

    # -- ring operations ------------------------------------------------

    def _binary_orders(self, other: "TruncatedSeries"):
        n = max(self.order, other.order)
        return self.with_order(n)._coeffs, other.with_order(n)._coeffs, n

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            a, b, n = self._binary_orders(other)
            return TruncatedSeries(a + b, order=n)
        if isinstance(other, (int, float, complex)):
            arr = self._coeffs.copy()
            arr[0] += other
            return TruncatedSeries(arr, order=self.order)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self._coeffs, order=self.order)

    def __sub__(self, other):
        if isinstance(other, TruncatedSeries):
            a, b, n = self._binary_orders(other)
            return TruncatedSeries(a - b, order=n)
        if isinstance(other, (int, float, complex)):
            return self.__add__(-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            a, b, n = self._binary_orders(other)
            return TruncatedSeries(np.convolve(a, b)[: n + 1], order=n)
        if isinstance(other, (int, float, complex)):
            return TruncatedSeries(self._coeffs * other, order=self.order)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float, complex)):
            return TruncatedSeries(self._coeffs / other, order=self.order)
        if isinstance(other, TruncatedSeries):
            return self * other.reciprocal()
        return NotImplemented

    def cauchy_mul(self, other: "TruncatedSeries") -> "TruncatedSeries":
        """Cauchy product, truncated to the common order."""
        return self.__mul__(other)

    def hadamard(self, other: "TruncatedSeries") -> "TruncatedSeries":
        """Coefficientwise (Hadamard) product."""
        a, b, n = self._binary_orders(other)
        return TruncatedSeries(a * b, order=n)

    # -- inverses, roots, powers ----------------------------------------

    def reciprocal(self) -> "TruncatedSeries":
        """Multiplicative inverse; requires a nonzero constant term."""
        s = self._coeffs
        if s[0] == 0:
            raise ZeroConstantTerm("series has zero constant term")
        n = self.order
        r = np.zeros(n + 1, dtype=np.complex128)
        r[0] = 1.0 / s[0]
        for k in range(1, n + 1):
            r[k] = -(s[1 : k + 1] @ r[k - 1 :: -1]) / s[0]
        return TruncatedSeries(r, order=n)

    def sqrt(self) -> "TruncatedSeries":
        """Principal square root of a unit series (constant term 1).

        Solves r^2 = s coefficient by coefficient:
        r_k = (s_k - sum_{j=1}^{k-1} r_j r_{k-j}) / (2 r_0).
        """
        s = self._coeffs
        if abs(s[0] - 1.0) > _STRUCT_TOL:
            raise NotUnitSeries(f"constant term {s[0]} != 1")
        n = self.order
        r = np.zeros(n + 1, dtype=np.complex128)
        r[0] = np.sqrt(s[0])
        for k in range(1, n + 1):
            inner = r[1:k] @ r[k - 1 : 0 : -1] if k >= 2 else 0.0
            r[k] = (s[k] - inner) / (2.0 * r[0])
        return TruncatedSeries(r, order=n)

    def power(self, alpha: float) -> "TruncatedSeries":
        """Principal power s^alpha of a unit series, real exponent.

        Uses the differential recurrence (s^alpha)' s = alpha s' s^alpha,
        which determines the coefficients without exp/log series:
        k r_k = sum_{j=1}^{k} ((alpha+1) j - k) s_j r_{k-j}.
        """
        s = self._coeffs
        if abs(s[0] - 1.0) > _STRUCT_TOL:
            raise NotUnitSeries(f"constant term {s[0]} != 1")
        n = self.order
        r = np.zeros(n + 1, dtype=np.complex128)
        r[0] = s[0] ** alpha
        for k in range(1, n + 1):
            w = (alpha + 1.0) * np.arange(1, k + 1) - k
            r[k] = (w * s[1 : k + 1]) @ r[k - 1 :: -1] / (k * s[0])
        return TruncatedSeries(r, order=n)

    # -- calculus and composition ---------------------------------------

    def derivative(self) -> "TruncatedSeries":
        """Formal derivative; order drops by one."""
        if self.order == 0:
            return TruncatedSeries([0.0], order=0)
        n = self.order
        d = self._coeffs[1:] * np.arange(1, n + 1)
        return TruncatedSeries(d, order=n - 1)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """Composition self(inner(z)); inner must vanish at the origin."""
        if abs(inner._coeffs[0]) > _STRUCT_TOL:
            raise InnerConstantNonzero(f"inner constant term {inner._coeffs[0]} != 0")
        n = max(self.order, inner.order)
        w = inner.with_order(n)
        acc = TruncatedSeries([self._coeffs[self.order]], order=n)
        for k in range(self.order - 1, -1, -1):
            acc = acc * w + complex(self._coeffs[k])
        return acc

    def eval(self, z):
        """Evaluate the polynomial at z (scalar or numpy array), by Horner."""
        z = np.asarray(z, dtype=np.complex128)
        acc = np.full(z.shape, self._coeffs[self.order], dtype=np.complex128)
        for k in range(self.order - 1, -1, -1):
            acc = acc * z + self._coeffs[k]
        if acc.shape == ():
            return complex(acc)
        return acc

    __call__ = eval


# -- constructors -------------------------------------------------------

def constant(value: Scalar, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    c = np.zeros(order + 1, dtype=np.complex128)
    c[0] = value
    return TruncatedSeries(c, order=order)


def monomial(order: int, k: int, coeff: Scalar = 1.0) -> TruncatedSeries:
    """The single term coeff * z^k at the given order."""
    if not 0 <= k <= order:
        raise ValueError(f"power {k} outside order {order}")
    c = np.zeros(order + 1, dtype=np.complex128)
    c[k] = coeff
    return TruncatedSeries(c, order=order)


def identity(order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """The series z."""
    return monomial(order, 1)


def from_normalized(tail: Iterable[Scalar], order: int | None = None) -> TruncatedSeries:
    """Build z + a2 z^2 + a3 z^3 + ... from the tail (a2, a3, ...)."""
    tail = list(tail)
    c = [0.0, 1.0] + tail
    return TruncatedSeries(c, order=order if order is not None else len(c) - 1)


# -- normalized-series JSON interchange ---------------------------------
#
# On disk a normalized function is {"order": N, "a1_implicit": true,
# "coeffs": [[re, im], ...]} listing a2..aN; the leading z is implicit.

def normalized_to_json(f: TruncatedSeries) -> dict:
    if not f.is_normalized:
        raise ValueError("series is not normalized (f(0)=0, f'(0)=1 required)")
    tail = [[float(c.real), float(c.imag)] for c in f.coeffs[2:]]
    return {"order": f.order, "a1_implicit": True, "coeffs": tail}


def normalized_from_json(obj: dict) -> TruncatedSeries:
    order = int(obj["order"])
    if not obj.get("a1_implicit", False):
        raise ValueError("expected a1_implicit series data")
    tail = [complex(re, im) for re, im in obj["coeffs"]]
    if len(tail) > max(order - 1, 0):
        raise ValueError(f"{len(tail)} tail coefficients exceed order {order}")
    return from_normalized(tail, order=order)


def save_normalized(f: TruncatedSeries, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(normalized_to_json(f), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_normalized(path) -> TruncatedSeries:
    with open(path, "r", encoding="utf-8") as fh:
        return normalized_from_json(json.load(fh))
