"""Sampling and parametrization of the Caratheodory class.

The class P consists of analytic phi with phi(0) = 1 and Re phi > 0 on the
unit disk; its coefficient sequences phi = 1 + p1 z + p2 z^2 + ... are
exactly the sequences whose Hermitian Toeplitz moment matrices (diagonal 2)
are positive semidefinite.  Two generators are provided:

* finite Herglotz mixtures phi(z) = sum lam_j (1 + eta_j z)/(1 - eta_j z)
  with unimodular atoms eta_j, giving p_k = 2 sum lam_j eta_j^k to any
  order, and
* the disk parametrization of (p2, p3) given p1 = p in [0, 2]:

      p2 = (p^2 + (4 - p^2) x) / 2,                      |x| <= 1,
      p3 = (p^3 + 2(4-p^2)p x - (4-p^2)p x^2
            + 2(4-p^2)(1-|x|^2) zeta) / 4,               |zeta| <= 1,

  which sweeps the exact moment body for the first three coefficients.

Rotating a member (phi(e^{i sigma} z), i.e. p_k -> p_k e^{ik sigma}) stays in
the class, so samplers expose a phase sweep for functionals that are not
rotation invariant.

Members of the operator class are recovered from phi through
g = sqrt(2 phi / (1 + phi)): if the operator image of f over z equals g
then a_n = g_{n-1} / psi_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import hypergeom, series
from .hypergeom import HohlovParams
from .series import TruncatedSeries

_ATOL = 1e-12

# Smallest eigenvalue a moment matrix may have and still count as PSD;
# absorbs roundoff on boundary configurations.
PSD_TOL = 1e-9


class InvalidAtoms(ValueError):
    """Herglotz data with bad weights or non-unimodular atoms."""


@dataclass(frozen=True)
class HerglotzAtoms:
    """Finite positive measure on the circle: weights and unimodular points."""

    weights: tuple
    points: tuple

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        e = np.asarray(self.points, dtype=np.complex128)
        if w.shape != e.shape or w.ndim != 1 or w.size == 0:
            raise InvalidAtoms("weights and points must be matching nonempty vectors")
        if np.any(w < -_ATOL):
            raise InvalidAtoms("negative weight")
        if abs(w.sum() - 1.0) > _ATOL:
            raise InvalidAtoms(f"weights sum to {w.sum()}, expected 1")
        if np.max(np.abs(np.abs(e) - 1.0)) > _ATOL:
            raise InvalidAtoms("atom off the unit circle")
        object.__setattr__(self, "weights", tuple(float(x) for x in w))
        object.__setattr__(self, "points", tuple(complex(x) for x in e))

    @classmethod
    def from_angles(cls, weights: Sequence[float], angles: Sequence[float]) -> "HerglotzAtoms":
        return cls(tuple(weights), tuple(np.exp(1j * np.asarray(angles, dtype=np.float64))))

    def p_sequence(self, k_max: int) -> np.ndarray:
        """Moments p_1..p_k_max of the mixture, p_k = 2 sum lam_j eta_j^k."""
        e = np.asarray(self.points)
        w = np.asarray(self.weights)
        k = np.arange(1, k_max + 1)
        return 2.0 * (e[None, :] ** k[:, None]) @ w

    def phi(self, order: int) -> TruncatedSeries:
        """The mixture 1 + sum p_k z^k as a truncated series."""
        return moments_to_phi(self.p_sequence(order), order)


def root_atoms(m: int, rotation: float = 0.0) -> HerglotzAtoms:
    """Equal weights on the m-th roots of unity, rotated by the given angle.

    The moments are p_k = 2 e^{ik rotation} when m divides k and 0
    otherwise, which is where the known extremizers of the coefficient
    functionals sit.
    """
    if m < 1:
        raise InvalidAtoms("m must be >= 1")
    angles = 2.0 * np.pi * np.arange(m) / m + rotation
    return HerglotzAtoms.from_angles(np.full(m, 1.0 / m), angles)


@dataclass(frozen=True)
class LZPoint:
    """Disk parametrization of the first three moments: p in [0,2], |x|,|zeta| <= 1."""

    p: float
    x: complex
    zeta: complex

    def __post_init__(self):
        if not -_ATOL <= self.p <= 2.0 + _ATOL:
            raise ValueError(f"p={self.p} outside [0, 2]")
        if abs(self.x) > 1.0 + _ATOL or abs(self.zeta) > 1.0 + _ATOL:
            raise ValueError("x and zeta must lie in the closed unit disk")

    def p2(self) -> complex:
        p = self.p
        return 0.5 * (p * p + (4.0 - p * p) * self.x)

    def p3(self) -> complex:
        p, x, zeta = self.p, self.x, self.zeta
        q = 4.0 - p * p
        return 0.25 * (p**3 + 2.0 * q * p * x - q * p * x * x
                       + 2.0 * q * (1.0 - abs(x) ** 2) * zeta)

    def p_sequence(self) -> np.ndarray:
        return np.array([self.p, self.p2(), self.p3()], dtype=np.complex128)


def rotate_moments(p_seq: np.ndarray, sigma: float) -> np.ndarray:
    """Class rotation p_k -> p_k e^{ik sigma}; preserves admissibility."""
    p_seq = np.asarray(p_seq, dtype=np.complex128)
    k = np.arange(1, p_seq.size + 1)
    return p_seq * np.exp(1j * sigma * k)


# -- admissibility oracle ------------------------------------------------

def _toeplitz_matrix(p_seq: np.ndarray) -> np.ndarray:
    p_seq = np.asarray(p_seq, dtype=np.complex128)
    k = p_seq.size
    full = np.concatenate([np.conj(p_seq[::-1]), [2.0 + 0j], p_seq])
    idx = np.arange(k + 1)
    return full[k + idx[None, :] - idx[:, None]]


def toeplitz_validate(p_seq, tol: float = PSD_TOL) -> bool:
    """PSD test of the (k+1)x(k+1) moment matrix for (2, p_1, ..., p_k).

    By the trigonometric moment problem this is exact: the matrix is PSD
    precisely when the data extends to a Caratheodory function.
    """
    eig = np.linalg.eigvalsh(_toeplitz_matrix(np.asarray(p_seq, dtype=np.complex128)))
    return bool(eig[0] >= -tol)


def toeplitz_min_eig(p_seq) -> float:
    """Smallest eigenvalue of the moment matrix (batched over leading axes)."""
    p_seq = np.asarray(p_seq, dtype=np.complex128)
    if p_seq.ndim == 1:
        return float(np.linalg.eigvalsh(_toeplitz_matrix(p_seq))[0])
    mats = np.stack([_toeplitz_matrix(row) for row in p_seq])
    return np.linalg.eigvalsh(mats)[:, 0]


# -- class members from moment data -------------------------------------

def moments_to_phi(p_seq, order: int) -> TruncatedSeries:
    """Series 1 + p1 z + ... from a moment vector, zero-padded to order."""
    p_seq = np.asarray(p_seq, dtype=np.complex128)
    if p_seq.size > order:
        p_seq = p_seq[:order]
    c = np.zeros(order + 1, dtype=np.complex128)
    c[0] = 1.0
    c[1 : p_seq.size + 1] = p_seq
    return TruncatedSeries(c, order=order)


def member_from_phi(params: HohlovParams, phi: TruncatedSeries) -> TruncatedSeries:
    """Class member whose operator image over z is sqrt(2 phi / (1 + phi)).

    Returns f = z + a2 z^2 + ... of order phi.order + 1 with
    a_n = g_{n-1} / psi_n where g is that square root.
    """
    g = (2.0 * phi * (1.0 + phi).reciprocal()).sqrt()
    psi = hypergeom.multiplier_sequence(params, g.order + 1)
    coeffs = np.zeros(g.order + 2, dtype=np.complex128)
    coeffs[1:] = g.coeffs / psi
    return TruncatedSeries(coeffs, order=g.order + 1)


def member_from_atoms(params: HohlovParams, atoms: HerglotzAtoms,
                      order: int = series.DEFAULT_ORDER) -> TruncatedSeries:
    return member_from_phi(params, atoms.phi(order - 1))


def closed_form_scales(params: HohlovParams):
    """Prefactors of the closed-form coefficients below:

        (c/(4ab), 2 (c)_2/((a)_2 (b)_2), 6 (c)_3/((a)_3 (b)_3)).
    """
    a, b, c = params.a, params.b, params.c
    poch = hypergeom.pochhammer
    return (c / (4.0 * a * b),
            2.0 * poch(c, 2) / (poch(a, 2) * poch(b, 2)),
            6.0 * poch(c, 3) / (poch(a, 3) * poch(b, 3)))


def closed_form_coeffs(params: HohlovParams, p1, p2, p3):
    """(a2, a3, a4) of the member determined by moments (p1, p2, p3):

        a2 = c/(4ab) p1,
        a3 = 2 (c)_2/((a)_2 (b)_2) (p2/4 - 5 p1^2/32),
        a4 = 6 (c)_3/((a)_3 (b)_3) (p3/4 - 5 p1 p2/16 + 13 p1^3/128).

    Same member as `member_from_phi`; kept closed-form for the search
    kernels and as an independent cross-check of the series route.
    """
    c2, c3, c4 = closed_form_scales(params)
    a2 = c2 * p1
    a3 = c3 * (p2 / 4.0 - 5.0 * p1 * p1 / 32.0)
    a4 = c4 * (p3 / 4.0 - 5.0 * p1 * p2 / 16.0 + 13.0 * p1**3 / 128.0)
    return a2, a3, a4


# -- samplers ------------------------------------------------------------

def structured_atom_configs(rotations: int = 64,
                            pair_weights: int = 5,
                            pair_angles: int = 16) -> list:
    """Deterministic boundary-emphasis configurations.

    Equal-weight root-of-unity atoms (m = 1..4) over a rotation grid reach
    the moment-body corners p_k = 2 e^{ik sigma} [m | k]; a coarse grid of
    two-atom mixtures covers the edges between them.
    """
    configs = []
    for m in (1, 2, 3, 4):
        for s in range(rotations):
            configs.append(root_atoms(m, 2.0 * np.pi * s / rotations))
    lams = np.linspace(0.0, 1.0, pair_weights)
    thetas = 2.0 * np.pi * np.arange(pair_angles) / pair_angles
    for lam in lams:
        for t1 in thetas:
            for t2 in thetas:
                configs.append(HerglotzAtoms.from_angles([lam, 1.0 - lam], [t1, t2]))
    return configs


def random_atoms(rng: np.random.Generator, max_atoms: int = 4) -> HerglotzAtoms:
    """One random mixture: atom count uniform in 1..max_atoms, flat Dirichlet
    weights, uniform angles."""
    m = int(rng.integers(1, max_atoms + 1))
    w = rng.dirichlet(np.ones(m))
    ang = rng.uniform(0.0, 2.0 * np.pi, size=m)
    return HerglotzAtoms.from_angles(w, ang)


def random_atom_batch(rng: np.random.Generator, count: int, k_max: int,
                      max_atoms: int = 4):
    """Vectorized draw of `count` mixtures with max_atoms slots each.

    Returns (weights, angles, p_seqs): weights and angles have shape
    (count, max_atoms) with unused slots at weight zero; p_seqs has shape
    (count, k_max).  Reproducible for a fixed generator state.
    """
    m = rng.integers(1, max_atoms + 1, size=count)
    raw = rng.standard_exponential((count, max_atoms))
    mask = np.arange(max_atoms)[None, :] < m[:, None]
    raw = np.where(mask, raw, 0.0)
    weights = raw / raw.sum(axis=1, keepdims=True)
    angles = rng.uniform(0.0, 2.0 * np.pi, size=(count, max_atoms))
    eta = np.exp(1j * angles)
    powers = eta[:, :, None] ** np.arange(1, k_max + 1)[None, None, :]
    p_seqs = 2.0 * np.einsum("jm,jmk->jk", weights, powers)
    return weights, angles, p_seqs


def sample_points(strategy: str = "grid", *, density: int = 5, seed: int = 0,
                  count: int = 1000, k_max: int = 3,
                  phases: int = 1) -> Iterator[np.ndarray]:
    """Stream of admissible moment vectors (p_1, ..., p_k_max).

    strategy="grid": the disk parametrization on a `density`-per-axis grid
    (p over [0,2]; |x|, arg x, |zeta|, arg zeta over the closed disk,
    boundary included), limited to k_max <= 3.  strategy="random": `count`
    Herglotz mixtures drawn with the given seed, any k_max.  With
    phases > 1 each point is also emitted under a rotation sweep.
    Every emitted vector passes `toeplitz_validate`.
    """
    if phases < 1:
        raise ValueError("phases must be >= 1")
    sweep = 2.0 * np.pi * np.arange(phases) / phases

    def emit(p_seq):
        for sigma in sweep:
            rotated = rotate_moments(p_seq, sigma) if sigma else p_seq
            if not toeplitz_validate(rotated):
                raise RuntimeError(f"sampler produced inadmissible moments {rotated}")
            yield rotated

    if strategy == "grid":
        if k_max > 3:
            raise ValueError("grid strategy provides p1..p3 only")
        if density < 2:
            raise ValueError("grid density must be >= 2 per axis")
        radii = np.linspace(0.0, 1.0, density)
        args = 2.0 * np.pi * np.arange(density) / density
        for p in np.linspace(0.0, 2.0, density):
            for xr in radii:
                for xa in args:
                    for zr in radii:
                        for za in args:
                            pt = LZPoint(p, xr * np.exp(1j * xa), zr * np.exp(1j * za))
                            yield from emit(pt.p_sequence()[:k_max])
    elif strategy == "random":
        rng = np.random.default_rng(seed)
        for _ in range(count):
            yield from emit(random_atoms(rng).p_sequence(k_max))
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
