"""Command-line entry point: ``spinforge {tables,verify,classify,decay}``.

Exit codes: 0 success, 1 a verification check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import assembly, coupling, entanglement, orbital
from .errors import SpinforgeError
from .report import DEFAULT_SEED, build_report, fmt_float
from .spin import SpinState
from .stateio import format_state, parse_state_file, pretty_spin

CSV_HEADER = "d,overlap,sv1,sv2,sv3plus,p_same"


class UsageError(Exception):
    pass


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- tables ------------------------------------------------------------------


def _spin_rows() -> list[dict]:
    rows = []
    eqs2 = ["Eq. (7)", "Eq. (8)", "Eq. (9)", "Eq. (10)"]
    for eq, ls in zip(eqs2, coupling.two_electron_basis()):
        rows.append({"equation": eq, "label": str(ls.label), "state": ls.state})
    eqs3 = ["Eq. (17)", "Eq. (18)-(20)", "Eq. (21)-(23)", "Eq. (24)", "Eq. (27)", "Eq. (30)", "Eq. (32)", "Eq. (34)"]
    for eq, ls in zip(eqs3, coupling.three_electron_basis()):
        rows.append({"equation": eq, "label": str(ls.label), "state": ls.state})
    rows.append({"equation": "Eq. (20) as printed", "label": "misprint", "state": coupling.literal_eq20()})
    for rec in coupling.literal_symmetrized_variants():
        kind = "S" if rec.source.label.s_prime == 1 else "A"
        label = f"chi^{kind}({rec.source.label.s_prime},{rec.source.label.s_total},{rec.source.label.m})"
        rows.append({"equation": rec.equation, "label": label, "state": rec.result})
    return rows


def _space_rows() -> list[dict]:
    return [
        {"equation": "Eq. (36)", "label": "psi1^S(n,n,n)", "state": orbital.symmetric_space(("n", "n", "n"))},
        {"equation": "Eq. (37)", "label": "psi2^S(n,m,l)", "state": orbital.symmetric_space(("n", "m", "l"))},
        {"equation": "Eq. (38)", "label": "psi3^S(n,n,l)", "state": orbital.symmetric_space(("n", "n", "l"))},
        {"equation": "Eq. (38) as printed", "label": "misprint", "state": orbital.eq38_literal("n", "m", "l")},
        {"equation": "Eq. (39)", "label": "psi^A(n,m,l)", "state": orbital.slater_determinant(("n", "m", "l"))},
    ]


def _pretty_space(x: orbital.SpaceState) -> str:
    if x.is_zero():
        return "0"
    parts = []
    for i, (t, a) in enumerate(x.terms.items()):
        text = a.pretty()
        neg = text.startswith("-")
        mag = text.lstrip("-")
        if i == 0:
            parts.append(f"{'-' if neg else ''}{mag} ({','.join(t)})")
        else:
            parts.append(f"{'-' if neg else '+'} {mag} ({','.join(t)})")
    return " ".join(parts)


def cmd_tables(args) -> int:
    spin_rows = _spin_rows()
    space_rows = _space_rows()
    if args.format == "json":
        payload = {
            "spin": [
                {
                    "equation": r["equation"],
                    "label": r["label"],
                    "pretty": pretty_spin(r["state"]),
                    "state_file": format_state(r["state"]) if not r["state"].is_zero() else None,
                }
                for r in spin_rows
            ],
            "space": [
                {
                    "equation": r["equation"],
                    "label": r["label"],
                    "terms": [[a.format(), list(t)] for t, a in r["state"].terms.items()],
                }
                for r in space_rows
            ],
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.output)
        return 0
    lines = ["# spin states (basis: particle 1 first, u = +1/2)"]
    for r in spin_rows:
        st = r["state"]
        lines.append(f"{r['equation']:<22} {r['label']} = {pretty_spin(st)}")
        for p, a in st.terms().items():
            lines.append(f"    {a.format()} {p}")
    lines.append("")
    lines.append("# space states (orthonormal orbitals; tuple position = particle)")
    for r in space_rows:
        st = r["state"]
        lines.append(f"{r['equation']:<22} {r['label']} = {_pretty_space(st)}")
        for t, a in st.terms.items():
            lines.append(f"    {a.format()} ({','.join(t)})")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


# -- verify ------------------------------------------------------------------


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("SPINFORGE_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"SPINFORGE_SEED must be an integer, got {env!r}") from None


def cmd_verify(args) -> int:
    rep = build_report(_seed(args))
    _emit(rep.render_json() if args.format == "json" else rep.render_text(), args.output)
    return 0 if rep.ok else 1


# -- classify ----------------------------------------------------------------


def cmd_classify(args) -> int:
    state = parse_state_file(args.state)
    n = state.n if isinstance(state, SpinState) else state.n_particles
    total = assembly.spin_as_total(state) if isinstance(state, SpinState) else state
    verdict = entanglement.classify(total)
    if args.cut:
        try:
            cut = entanglement.Bipartition.parse(args.cut)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if not cut.covers(n):
            raise UsageError(f"cut {args.cut!r} is not a bipartition of {n} particles")
        cuts = [cut]
    else:
        cuts = entanglement.all_cuts(n)
    normalized = entanglement.state_norm2(state) == 1
    per_cut = []
    for cut in cuts:
        rank = entanglement.schmidt_rank(state, cut)
        ent = fmt_float(entanglement.entropy_bits(state, cut)) if normalized else None
        per_cut.append({"cut": str(cut), "schmidt_rank": rank, "entropy_bits": ent})
    if args.format == "json":
        payload = verdict.as_dict() | {"cuts": per_cut}
        _emit(json.dumps(payload, indent=2) + "\n", args.output)
        return 0
    lines = [f"{k} = {str(v).lower() if isinstance(v, bool) else v}" for k, v in verdict.as_dict().items()]
    for row in per_cut:
        ent = row["entropy_bits"] if row["entropy_bits"] is not None else "n/a (state not normalized)"
        lines.append(f"cut {row['cut']}: schmidt_rank = {row['schmidt_rank']}, entropy_bits = {ent}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


# -- decay -------------------------------------------------------------------


def decay_csv(rows: Sequence[orbital.ScanRow], branch: str = "sym") -> str:
    out = [CSV_HEADER]
    for r in rows:
        spec = r.symmetric if branch == "sym" else r.antisymmetric
        cells = [r.d, r.overlap, spec.sv1, spec.sv2, spec.sv3plus, spec.p_same]
        if spec.vanishes:
            cells[2:] = [float("nan")] * 4
        out.append(",".join(fmt_float(c) for c in cells))
    return "\n".join(out) + "\n"


def cmd_decay(args) -> int:
    if not args.sigma > 0:
        raise UsageError("--sigma must be positive")
    if args.dmax < 0:
        raise UsageError("--dmax must be nonnegative")
    if args.steps < 1:
        raise UsageError("--steps must be at least 1")
    step = args.grid_step if args.grid_step is not None else args.sigma / 64
    if not step > 0:
        raise UsageError("--grid-step must be positive")
    if args.steps == 1:
        distances = [0.0]
    else:
        distances = [args.dmax * k / (args.steps - 1) for k in range(args.steps)]
    rows = orbital.separation_scan(orbital.gaussian_family(args.sigma, args.dmax, step), distances)
    _emit(decay_csv(rows, args.branch), args.output)
    first = next((r.d for r in rows if r.overlap < 1e-8), None)
    analytic = orbital.overlap_threshold(args.sigma)
    where = "not reached in scan" if first is None else f"first at d = {fmt_float(first)}"
    print(
        f"# overlap < 1e-8 ({where}; exp(-d^2/(4 sigma^2)) = 1e-8 at d = {fmt_float(analytic)}); "
        f"this distance plays the role of the localization range a0",
        file=sys.stderr,
    )
    return 0


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spinforge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "json")):
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--output", "-o", help="write to this file instead of stdout")

    p = sub.add_parser("tables", help="print every reconstructed state with exact coefficients")
    common(p)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("verify", help="run all checks and the audit; exit 1 on a failed check")
    common(p)
    p.add_argument("--seed", type=int, default=None, help="seed for the random suites (default 42)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="classify the entanglement of a state file")
    common(p)
    p.add_argument("--state", required=True, help="SPINSTATE or TOTALSTATE file")
    p.add_argument("--cut", help="bipartition such as 1|23 (default: all)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("decay", help="two-particle overlap / Schmidt scan versus separation, as CSV")
    common(p, formats=("csv",))
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--dmax", type=float, default=12.0)
    p.add_argument("--steps", type=int, default=13)
    p.add_argument("--grid-step", type=float, default=None, help="default sigma/64")
    p.add_argument("--branch", choices=("sym", "anti"), default="sym", help="which two-particle amplitude to report")
    p.set_defaults(func=cmd_decay)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"spinforge: error: {exc}", file=sys.stderr)
        return 2
    except SpinforgeError as exc:
        print(f"spinforge: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"spinforge: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
