"""Command-line front end.

One subcommand per job: multiplier tables, closed-form bounds, brute-force
searches, membership checks, extremal members, the half-plane sufficient
condition, and preset bound tables.  Output is canonical JSON by default
(sorted keys, two-space indent, trailing newline) so identical invocations
are byte-identical; tables can also render as CSV, everything as text.

Exit codes: 0 success (a VIOLATED search is a finding, not a failure),
2 invalid parameters, 3 I/O trouble, 4 numerical failure (any non-finite
number in the payload, or a violation whose witness failed certification).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys

from . import bounds, caratheodory, hypergeom, series, verify
from .bounds import Functional
from .hypergeom import HohlovParams

_ALIASES = {
    "h21": "h2_1",
    "h22": "h2_2",
    "h31": "h3_1",
    "a2a3a4": "a2a3_a4",
}

_FUNCTIONAL_CHOICES = (
    "fs", "fs_real", "fs_complex", "a2", "a3", "a4", "a5",
    "h2_1", "h21", "h2_2", "h22", "a2a3_a4", "a2a3a4", "h3_1", "h31",
)


class _IOFailure(Exception):
    """File problem (missing, unreadable, malformed) -> exit code 3."""


_PARAM_ERRORS = (
    hypergeom.InvalidC,
    hypergeom.ParamOutOfRange,
    hypergeom.UnknownPreset,
    hypergeom.SingularMultiplier,
    hypergeom.NotNormalized,
    caratheodory.InvalidAtoms,
    bounds.MissingCoefficient,
    ValueError,
    TypeError,
)


def _parse_mu(text):
    """`RE` or `RE,IM`; a bare real keeps the real-parameter route."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return float(parts[0])
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ValueError(f"cannot parse mu from {text!r}; expected RE or RE,IM")


def _parse_preset(text):
    name, _, argtext = text.partition(":")
    args = tuple(float(tok) for tok in argtext.split(",") if tok) \
        if argtext else ()
    return name, args


def _canon_functional(name, mu):
    name = _ALIASES.get(name, name)
    if name == "fs":
        if mu is None:
            raise bounds.MissingCoefficient("fs requires --mu")
        return (Functional.FS_COMPLEX if complex(mu).imag != 0.0
                else Functional.FS_REAL)
    return Functional(name)


def _mu_pair(mu):
    if mu is None:
        return None
    mu = complex(mu)
    return [float(mu.real), float(mu.imag)]


def _all_finite(obj):
    if isinstance(obj, dict):
        return all(_all_finite(v) for v in obj.values())
    if isinstance(obj, (list, tuple)):
        return all(_all_finite(v) for v in obj)
    if isinstance(obj, float):
        return math.isfinite(obj)
    return True


def _canonical_json(payload):
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _load_series(path):
    try:
        return series.load_normalized(path)
    except OSError as exc:
        raise _IOFailure(f"cannot read {path}: {exc}")
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise _IOFailure(f"malformed series file {path}: {exc}")


def _params(ns):
    return HohlovParams(ns.a, ns.b, ns.c)


# -- subcommand payload builders ----------------------------------------

def _cmd_psi(ns):
    params = _params(ns)
    psi = hypergeom.multiplier_sequence(params, ns.n)
    return {"a": params.a, "b": params.b, "c": params.c, "n": ns.n,
            "psi": [float(v) for v in psi]}


def _cmd_bound(ns):
    params = _params(ns)
    mu = _parse_mu(ns.mu) if ns.mu is not None else None
    functional = _canon_functional(ns.functional, mu)
    spec = bounds.bound_for(
        functional, params,
        mu if functional in bounds.MU_FUNCTIONALS else None)
    return {"functional": spec.functional.value,
            "a": params.a, "b": params.b, "c": params.c,
            "mu": _mu_pair(spec.mu),
            "bound": float(spec.value),
            "status": spec.status}


def _cmd_search(ns):
    params = _params(ns)
    mu = _parse_mu(ns.mu) if ns.mu is not None else None
    overrides = {"seed": ns.seed}
    if ns.grid_p is not None:
        overrides["p_count"] = ns.grid_p
    if ns.grid_angle is not None:
        overrides["x_arg_count"] = ns.grid_angle
        overrides["z_arg_count"] = ns.grid_angle
    if ns.atoms is not None:
        overrides["atom_draws"] = ns.atoms
    cfg = dataclasses.replace(verify.DEFAULT_CONFIG, **overrides)
    name = _ALIASES.get(ns.functional, ns.functional)
    report = verify.brute_force_max(name, params, mu=mu, config=cfg)
    return report.to_dict()


def _cmd_member(ns):
    params = _params(ns)
    f = _load_series(ns.series)
    check = verify.membership_test(params, f, radius=ns.radius,
                                   samples=ns.samples)
    out = {"a": params.a, "b": params.b, "c": params.c}
    out.update(check.to_dict())
    return out


def _cmd_extremal(ns):
    params = _params(ns)
    f = verify.extremal_member(params, ns.k, order=ns.order)
    return series.normalized_to_json(f)


def _cmd_suffcond(ns):
    params = _params(ns)
    f = _load_series(ns.series)
    report = verify.sufficient_condition_check(
        params, f, ns.gamma, radius=ns.radius, samples=ns.samples)
    out = {"a": params.a, "b": params.b, "c": params.c}
    out.update(report.to_dict())
    return out


def _cmd_table(ns):
    preset_name, preset_args = _parse_preset(ns.preset)
    functionals = []
    for tok in ns.functionals.split(","):
        tok = _ALIASES.get(tok.strip(), tok.strip())
        if not tok:
            continue
        functionals.append(Functional.FS_REAL if tok == "fs"
                           else Functional(tok))
    mu_values = [float(tok) for tok in ns.mu_grid.split(",") if tok.strip()]
    return bounds.specialization_table(preset_name, preset_args,
                                       functionals, mu_values)


_COMMANDS = {
    "psi": _cmd_psi,
    "bound": _cmd_bound,
    "search": _cmd_search,
    "member": _cmd_member,
    "extremal": _cmd_extremal,
    "suffcond": _cmd_suffcond,
    "table": _cmd_table,
}


# -- rendering ----------------------------------------------------------

def _render_text(command, payload):
    lines = []
    if command == "psi":
        for n, v in enumerate(payload["psi"], start=1):
            lines.append(f"psi_{n} = {v!r}")
    elif command == "bound":
        mu = payload["mu"]
        mu_txt = "" if mu is None else f" mu=({mu[0]:g},{mu[1]:g})"
        lines.append(
            f"{payload['functional']} a={payload['a']:g} b={payload['b']:g} "
            f"c={payload['c']:g}{mu_txt}: bound = {payload['bound']!r} "
            f"[{payload['status']}]")
    elif command == "search":
        lines.append(
            f"{payload['functional']} a={payload['a']:g} b={payload['b']:g} "
            f"c={payload['c']:g}: bound {payload['bound']!r} "
            f"({payload['bound_status']}), numeric max "
            f"{payload['numeric_max']!r}, gap {payload['gap']:.3e} "
            f"-> {payload['status']}")
        witness = payload.get("witness") or {}
        lines.append(f"witness: {witness.get('kind', 'none')}, "
                     f"samples {payload['samples']}, seed {payload['seed']}")
    elif command == "member":
        lines.append(
            f"ok={payload['ok']} margin={payload['margin']!r} "
            f"max|s^2-1|={payload['max_deviation']!r} "
            f"radius={payload['radius']:g} samples={payload['samples']}")
    elif command == "extremal":
        lines.append(f"order {payload['order']}, a1 = 1 implicit")
        for n, (re, im) in enumerate(payload["coeffs"], start=2):
            lines.append(f"a{n} = {re!r} + {im!r}j")
    elif command == "suffcond":
        lines.append(
            f"premise max {payload['premise_max']!r} vs threshold "
            f"{payload['threshold']!r}: premise_holds={payload['premise_holds']}")
        lines.append(
            f"conclusion_holds={payload['conclusion_holds']} "
            f"(margin {payload['conclusion']['margin']!r})")
    elif command == "table":
        return bounds.table_to_csv(payload)
    return "\n".join(lines) + "\n"


def _render(command, payload, fmt):
    if fmt == "json":
        return _canonical_json(payload)
    if fmt == "csv":
        if command == "table":
            return bounds.table_to_csv(payload)
        if command == "psi":
            rows = ["n,psi"]
            rows += [f"{n},{v!r}" for n, v in
                     enumerate(payload["psi"], start=1)]
            return "\n".join(rows) + "\n"
        raise ValueError(f"csv output is not defined for {command!r}")
    return _render_text(command, payload)


# -- parser -------------------------------------------------------------

def _add_params(sub):
    sub.add_argument("--a", type=float, required=True)
    sub.add_argument("--b", type=float, required=True)
    sub.add_argument("--c", type=float, required=True)


def _add_output(sub, default_format="json"):
    sub.add_argument("--format", choices=("json", "csv", "text"),
                     default=default_format)
    sub.add_argument("--output", default=None, metavar="PATH")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hohlov",
        description="Coefficient bounds and numerical certification for the "
                    "hypergeometric convolution operator class.")
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("psi", help="multiplier table psi_1..psi_n")
    _add_params(sub)
    sub.add_argument("--n", type=int, required=True)
    _add_output(sub)

    sub = commands.add_parser("bound", help="closed-form bound value")
    sub.add_argument("functional", choices=_FUNCTIONAL_CHOICES)
    _add_params(sub)
    sub.add_argument("--mu", default=None, metavar="RE[,IM]")
    _add_output(sub)

    sub = commands.add_parser(
        "search", help="brute-force maximum vs the closed-form bound")
    sub.add_argument("functional", choices=_FUNCTIONAL_CHOICES)
    _add_params(sub)
    sub.add_argument("--mu", default=None, metavar="RE[,IM]")
    sub.add_argument("--grid-p", type=int, default=None)
    sub.add_argument("--grid-angle", type=int, default=None,
                     help="argument grid density for x and zeta")
    sub.add_argument("--atoms", type=int, default=None,
                     help="random atom draws (functionals involving a5)")
    sub.add_argument("--seed", type=int, default=0)
    _add_output(sub)

    sub = commands.add_parser("member", help="membership circle check")
    sub.add_argument("--series", required=True, metavar="FILE")
    _add_params(sub)
    sub.add_argument("--radius", type=float, default=0.999)
    sub.add_argument("--samples", type=int, default=4096)
    _add_output(sub)

    sub = commands.add_parser(
        "extremal", help="the member with I f / z = sqrt(1 + z^k)")
    sub.add_argument("--k", type=int, required=True, choices=(1, 2, 3, 4))
    _add_params(sub)
    sub.add_argument("--order", type=int, default=series.DEFAULT_ORDER)
    _add_output(sub)

    sub = commands.add_parser(
        "suffcond", help="half-plane premise vs subordination conclusion")
    sub.add_argument("--series", required=True, metavar="FILE")
    _add_params(sub)
    sub.add_argument("--gamma", type=float, required=True)
    sub.add_argument("--radius", type=float, default=0.999)
    sub.add_argument("--samples", type=int, default=4096)
    _add_output(sub)

    sub = commands.add_parser("table", help="preset bound table")
    sub.add_argument("--preset", required=True, metavar="NAME[:ARGS]")
    sub.add_argument("--functionals", default="fs,a2,a3,a4,h2_1,h2_2")
    sub.add_argument("--mu-grid", default="-3,-2,-1,0,1,2,3",
                     dest="mu_grid")
    _add_output(sub, default_format="csv")

    return parser


def _write(text, path):
    if path:
        try:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {path}: {exc}", file=sys.stderr)
            return 3
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None):
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    try:
        payload = _COMMANDS[ns.command](ns)
        rendered = _render(ns.command, payload, ns.format)
    except _IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except verify.UncertifiedViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (verify.BranchFailure, verify.DenominatorVanishes) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except _PARAM_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if not _all_finite(payload):
        print("error: non-finite number in result", file=sys.stderr)
        return 4

    return _write(rendered, ns.output)


if __name__ == "__main__":
    sys.exit(main())
