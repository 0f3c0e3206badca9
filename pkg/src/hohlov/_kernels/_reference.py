"""Vectorized numpy implementation of the search kernels.

Mirror of the compiled module: same inputs, same iteration order, strict
greater-than maximum updates, first-occurrence argmax.  Functional values
are compared as squared moduli; the square root is taken once at the end.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND = "reference"

# Functional codes shared with the compiled kernel.
FS = 0
A2 = 1
A3 = 2
A4 = 3
H2_1 = 4
H2_2 = 5
A2A3_A4 = 6

_NEEDS_A4 = frozenset({A4, H2_2, A2A3_A4})


def lz_search(func, mu, c2, c3, c4, p_grid, x_abs, x_arg, z_abs, z_arg, phases):
    """Maximize one coefficient functional over the disk-parametrized moment
    body with a rotation sweep.

    Grids: p over [0,2]; |x|, arg x, |zeta|, arg zeta; rotation angles.
    Iteration (and tie-break) order is lexicographic in
    (p, |x|, arg x, |zeta|, arg zeta, phase).  Returns
    (max_value, (ip, ixr, ixa, izr, iza, iph)).
    """
    p_grid = np.asarray(p_grid, dtype=np.float64)
    x_abs = np.asarray(x_abs, dtype=np.float64)
    x_arg = np.asarray(x_arg, dtype=np.float64)
    z_abs = np.asarray(z_abs, dtype=np.float64)
    z_arg = np.asarray(z_arg, dtype=np.float64)
    phases = np.asarray(phases, dtype=np.float64)

    mu = complex(mu)
    x = x_abs[:, None] * np.exp(1j * x_arg)[None, :]            # (nxr, nxa)
    zeta = z_abs[:, None] * np.exp(1j * z_arg)[None, :]         # (nzr, nza)
    e1 = np.exp(1j * phases)                                    # (nph,)
    e2 = e1 * e1
    e3 = e2 * e1
    shape = (x_abs.size, x_arg.size, z_abs.size, z_arg.size, phases.size)
    needs_a4 = func in _NEEDS_A4

    best = -1.0
    best_idx = (0, 0, 0, 0, 0, 0)
    for ip, p in enumerate(p_grid):
        q = 4.0 - p * p
        p1 = p * e1                                             # (nph,)
        p2 = (0.5 * (p * p + q * x))[:, :, None] * e2           # (nxr, nxa, nph)
        a2 = c2 * p1
        a3 = c3 * (0.25 * p2 - (5.0 / 32.0) * p1 * p1)
        if needs_a4:
            base = p * p * p + 2.0 * q * p * x - q * p * x * x  # (nxr, nxa)
            p3 = (0.25 * base[:, :, None, None]
                  + 0.5 * q * (1.0 - x_abs**2)[:, None, None, None] * zeta)
            p3 = p3[..., None] * e3                             # (nxr, nxa, nzr, nza, nph)
            a4 = c4 * (0.25 * p3
                       - (5.0 / 16.0) * (p1 * p2)[:, :, None, None, :]
                       + (13.0 / 128.0) * (p1 * p1 * p1))
        if func == FS:
            v = a3 - mu * a2 * a2
            v = v[:, :, None, None, :]
        elif func == A2:
            v = a2[None, None, None, None, :]
        elif func == A3:
            v = a3[:, :, None, None, :]
        elif func == H2_1:
            v = a3 - a2 * a2
            v = v[:, :, None, None, :]
        elif func == A4:
            v = a4
        elif func == H2_2:
            v = a2 * a4 - (a3 * a3)[:, :, None, None, :]
        elif func == A2A3_A4:
            v = (a2 * a3)[:, :, None, None, :] - a4
        else:
            raise ValueError(f"unknown functional code {func}")
        vals = np.broadcast_to(v.real * v.real + v.imag * v.imag, shape)
        flat = int(np.argmax(vals))
        top = float(vals.flat[flat])
        if top > best:
            best = top
            best_idx = (ip,) + tuple(int(i) for i in np.unravel_index(flat, shape))
    return math.sqrt(best), best_idx


def member_coeffs_batch(p_seqs, psi):
    """Coefficients (a2..a5) of the members determined by moment rows.

    p_seqs is (n, 4) complex with columns p1..p4; psi is (psi_2..psi_5).
    Implements the square-root route g = sqrt(1 + w), w = (phi-1)/(phi+1),
    unrolled to the first four coefficients; a_n = g_{n-1}/psi_n.
    Returns an (n, 4) complex array.
    """
    p_seqs = np.asarray(p_seqs, dtype=np.complex128)
    if p_seqs.ndim != 2 or p_seqs.shape[1] != 4:
        raise ValueError("p_seqs must have shape (n, 4)")
    psi = np.asarray(psi, dtype=np.float64)
    p1, p2, p3, p4 = (p_seqs[:, k] for k in range(4))

    i1 = -0.25 * p1
    i2 = -0.5 * (p1 * i1 + 0.5 * p2)
    i3 = -0.5 * (p1 * i2 + p2 * i1 + 0.5 * p3)
    w1 = 0.5 * p1
    w2 = p1 * i1 + 0.5 * p2
    w3 = p1 * i2 + p2 * i1 + 0.5 * p3
    w4 = p1 * i3 + p2 * i2 + p3 * i1 + 0.5 * p4
    g1 = 0.5 * w1
    g2 = 0.5 * (w2 - g1 * g1)
    g3 = 0.5 * (w3 - 2.0 * g1 * g2)
    g4 = 0.5 * (w4 - 2.0 * g1 * g3 - g2 * g2)

    out = np.empty_like(p_seqs)
    out[:, 0] = g1 / psi[0]
    out[:, 1] = g2 / psi[1]
    out[:, 2] = g3 / psi[2]
    out[:, 3] = g4 / psi[3]
    return out
