"""Timing comparison of the compiled search kernels against the numpy
reference implementation.

Runs every functional over the default search grids plus one member-batch
evaluation, reporting best-of-N wall times for whichever backends are
importable.  When the compiled extension is not built the script says so
and times the reference alone; it never fakes a speedup column.

Usage: python3 benchmarks/bench_kernels.py [--repeats N] [--atoms N]
"""

import argparse
import time

import numpy as np

from hohlov import _kernels
from hohlov.caratheodory import closed_form_scales, random_atom_batch
from hohlov.hypergeom import HohlovParams, multiplier_sequence
from hohlov.verify import DEFAULT_CONFIG, _grids

CASES = [
    ("fs mu=2", _kernels.FS, 2.0 + 0j),
    ("fs mu=1+1j", _kernels.FS, 1.0 + 1.0j),
    ("a2", _kernels.A2, 0j),
    ("a3", _kernels.A3, 0j),
    ("a4", _kernels.A4, 0j),
    ("h2_1", _kernels.H2_1, 0j),
    ("h2_2", _kernels.H2_2, 0j),
    ("a2a3_a4", _kernels.A2A3_A4, 0j),
]


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--atoms", type=int, default=100000)
    args = parser.parse_args()

    params = HohlovParams(1.0, 1.0, 1.0)
    c2, c3, c4 = closed_form_scales(params)
    g = _grids(DEFAULT_CONFIG)
    grids = (g["p"], g["x_abs"], g["x_arg"], g["z_abs"], g["z_arg"],
             g["phases"])
    points = int(np.prod([len(axis) for axis in grids]))

    compiled = _kernels.BACKEND == "compiled"
    print(f"active backend: {_kernels.BACKEND}")
    print(f"grid points per search: {points}; best of {args.repeats} runs")
    if not compiled:
        print("compiled extension not built; timing the reference only")
    print()

    header = f"{'case':<12} {'reference':>12}"
    if compiled:
        header += f" {'compiled':>12} {'speedup':>9}"
    print(header)
    for label, code, mu in CASES:
        t_ref, (v_ref, _) = best_of(
            lambda: _kernels.reference_lz_search(code, mu, c2, c3, c4, *grids),
            args.repeats)
        line = f"{label:<12} {t_ref * 1e3:>10.2f}ms"
        if compiled:
            t_nat, (v_nat, _) = best_of(
                lambda: _kernels.lz_search(code, mu, c2, c3, c4, *grids),
                args.repeats)
            line += f" {t_nat * 1e3:>10.2f}ms {t_ref / t_nat:>8.2f}x"
            if abs(v_nat - v_ref) > 1e-12 * max(1.0, abs(v_ref)):
                line += f"  ! values differ: {v_ref!r} vs {v_nat!r}"
        print(line)

    psi = multiplier_sequence(params, 5)[1:]
    rng = np.random.default_rng(0)
    _, _, p_seqs = random_atom_batch(rng, args.atoms, k_max=4)
    t_ref, rows_ref = best_of(
        lambda: _kernels.reference_member_coeffs_batch(p_seqs, psi),
        args.repeats)
    label = f"members x{args.atoms}"
    line = f"{label:<12} {t_ref * 1e3:>10.2f}ms"
    if compiled:
        t_nat, rows_nat = best_of(
            lambda: _kernels.member_coeffs_batch(p_seqs, psi), args.repeats)
        line += f" {t_nat * 1e3:>10.2f}ms {t_ref / t_nat:>8.2f}x"
        gap = float(np.max(np.abs(rows_nat - rows_ref)))
        if gap > 1e-12:
            line += f"  ! rows differ by {gap:.3e}"
    print(line)


if __name__ == "__main__":
    main()
