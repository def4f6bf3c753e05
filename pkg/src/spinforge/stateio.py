"""State files and human-readable state rendering.

File grammar (v1)::

    SPINSTATE v1 n=<int>            |  TOTALSTATE v1 n=<int>
    (a b c d)/den <u/d pattern>     |  (a b c d)/den <orb>,<orb>,...|<u/d pattern>

One term per line, single spaces.  Blank lines and ``#`` comments are
ignored on input.  The writer emits terms in basis order (spin index; for
total states orbital tuple first, then spin index) and never emits zeros.
"""

from __future__ import annotations

import re
from math import gcd, lcm
from pathlib import Path
from typing import Union

from .assembly import TotalState
from .errors import DuplicateTerm, ParseError, ZeroDenominator, ZeroState
from .radical import ONE, QuadraticScalar, parse_scalar
from .spin import SpinState, index_of

State = Union[SpinState, TotalState]

_HEADER_RE = re.compile(r"(SPINSTATE|TOTALSTATE) v1 n=(\d+)")
_PATTERN_RE = re.compile(r"[ud]+")
_ORBITAL_RE = re.compile(r"[^\s,|()#]+")


def _spin_sort_key(pattern: str) -> int:
    return index_of(pattern)


def format_state(x: State) -> str:
    if isinstance(x, SpinState):
        lines = [f"SPINSTATE v1 n={x.n}"]
        lines += [f"{a.format()} {p}" for p, a in x.terms().items()]
    elif isinstance(x, TotalState):
        lines = [f"TOTALSTATE v1 n={x.n_particles}"]
        items = sorted(x.terms.items(), key=lambda kv: (kv[0][0], _spin_sort_key(kv[0][1])))
        lines += [f"{a.format()} {','.join(o)}|{p}" for (o, p), a in items]
    else:
        raise TypeError(f"cannot serialize {type(x).__name__}")
    return "\n".join(lines) + "\n"


def write_state_file(path: str | Path, x: State) -> None:
    Path(path).write_text(format_state(x))


def parse_state_text(text: str) -> State:
    header = None
    kind = n = None
    seen: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if header is None:
            m = _HEADER_RE.fullmatch(line)
            if m is None:
                raise ParseError(f"expected 'SPINSTATE v1 n=<int>' or 'TOTALSTATE v1 n=<int>', got {line!r}", lineno, 1)
            header = line
            kind, n = m.group(1), int(m.group(2))
            continue
        if " " not in line:
            raise ParseError("expected '<scalar> <basis>'", lineno, 1)
        scalar_text, basis_text = line.rsplit(" ", 1)
        try:
            coef = parse_scalar(scalar_text)
        except ZeroDenominator as exc:
            raise ZeroDenominator(f"line {lineno}: {exc}") from exc
        except ParseError as exc:
            raise ParseError(str(exc), lineno, exc.column) from exc
        col = len(scalar_text) + 2
        if kind == "SPINSTATE":
            if not _PATTERN_RE.fullmatch(basis_text) or len(basis_text) != n:
                raise ParseError(f"bad spin pattern {basis_text!r} for n={n}", lineno, col)
            key = basis_text
        else:
            if basis_text.count("|") != 1:
                raise ParseError(f"bad total basis {basis_text!r}, expected 'orb,...|pattern'", lineno, col)
            orb_text, pattern = basis_text.split("|")
            orbs = tuple(orb_text.split(","))
            if len(orbs) != n or not all(_ORBITAL_RE.fullmatch(o) for o in orbs):
                raise ParseError(f"bad orbital tuple {orb_text!r} for n={n}", lineno, col)
            if not _PATTERN_RE.fullmatch(pattern) or len(pattern) != n:
                raise ParseError(f"bad spin pattern {pattern!r} for n={n}", lineno, col + len(orb_text) + 1)
            key = (orbs, pattern)
        if key in seen:
            raise DuplicateTerm(f"DuplicateTerm: basis {basis_text!r} already given on line {seen[key][1]}", lineno, col)
        seen[key] = (coef, lineno)
    if header is None:
        raise ParseError("missing header")
    terms = {k: c for k, (c, _) in seen.items() if c}
    if not terms:
        raise ZeroState("ZeroState: state file has no nonzero terms")
    if kind == "SPINSTATE":
        state = SpinState.from_terms(terms, n)
        if state.norm2() == ONE:
            state = state.mark_normalized()
        return state
    return TotalState(n, terms)


def parse_state_file(path: str | Path) -> State:
    return parse_state_text(Path(path).read_text())


# -- compact rendering -------------------------------------------------------

_RADICAL_SLOT = {1: "a", 2: "b", 3: "c", 6: "d"}


def _common_radical(amps: list[QuadraticScalar]) -> int | None:
    """k such that every amplitude is a rational multiple of sqrt(k), else None."""
    for k, slot in _RADICAL_SLOT.items():
        others = [s for s in "abcd" if s != slot]
        if all(all(getattr(a, s) == 0 for s in others) for a in amps):
            return k
    return None


def pretty_spin(x: SpinState) -> str:
    """Compact form with one shared radical, e.g. ``(2 uud - udu - duu)/sqrt6``.

    Falls back to explicit ``(a b c d)/den`` coefficients when the
    amplitudes do not share a single radical.
    """
    terms = x.terms()
    if not terms:
        return "0"
    amps = list(terms.values())
    k = _common_radical(amps)
    if k is None:
        return " + ".join(f"{a.format()} {p}" for p, a in terms.items())
    # amplitude = (coef * sqrt(k)) / den = coef * k / (den * sqrt(k))
    slot = _RADICAL_SLOT[k]
    nums = {p: getattr(a, slot) * k for p, a in terms.items()}
    dens = {p: a.den for p, a in terms.items()}
    common = 1
    for d in dens.values():
        common = lcm(common, d)
    ints = {p: nums[p] * (common // dens[p]) for p in terms}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    g = gcd(g, common)
    ints = {p: v // g for p, v in ints.items()}
    common //= g

    parts = []
    for i, (p, v) in enumerate(ints.items()):
        mag = abs(v)
        body = p if mag == 1 else f"{mag} {p}"
        if i == 0:
            parts.append(("-" if v < 0 else "") + body)
        else:
            parts.append(("- " if v < 0 else "+ ") + body)
    body = " ".join(parts)
    if common == 1 and k == 1:
        return body
    denom = f"sqrt{k}" if common == 1 else (str(common) if k == 1 else f"{common}sqrt{k}")
    if len(parts) > 1:
        body = f"({body})"
    return f"{body}/{denom}"


__all__ = [
    "format_state",
    "write_state_file",
    "parse_state_text",
    "parse_state_file",
    "pretty_spin",
]
