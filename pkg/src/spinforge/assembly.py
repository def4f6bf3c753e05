"""Total (space x spin) wave functions of three electrons and their exchange audit."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .coupling import HALF, literal_symmetrized_variants, quadruplet
from .errors import DimensionMismatch, LabelPatternMismatch, ZeroState
from .orbital import SpaceState, multiplicity_case, slater_determinant, symmetric_space
from .radical import ZERO, QuadraticScalar, inv_sqrt
from .spin import Permutation, SpinState, transpositions

TermKey = tuple[tuple[str, ...], str]


@dataclass(frozen=True)
class TotalState:
    """Exact sum of (orbital tuple, spin pattern) terms.

    Particle ``i`` carries the combined coordinate ``q_i = (r_i, s_iz)``:
    position ``i`` of the orbital tuple and letter ``i`` of the spin pattern.
    """

    n_particles: int
    terms: Mapping[TermKey, QuadraticScalar]

    def __post_init__(self):
        clean = {}
        for (orbs, pattern), amp in self.terms.items():
            orbs = tuple(orbs)
            if len(orbs) != self.n_particles or len(pattern) != self.n_particles:
                raise DimensionMismatch(f"term {orbs}|{pattern} does not have {self.n_particles} particles")
            amp = QuadraticScalar.coerce(amp)
            if amp:
                clean[(orbs, pattern)] = amp
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def scale(self, k) -> TotalState:
        k = QuadraticScalar.coerce(k)
        return TotalState(self.n_particles, {t: k * a for t, a in self.terms.items()})

    def __add__(self, other: TotalState) -> TotalState:
        if not isinstance(other, TotalState):
            return NotImplemented
        if other.n_particles != self.n_particles:
            raise DimensionMismatch("total states over different particle counts")
        out = dict(self.terms)
        for t, a in other.terms.items():
            out[t] = out.get(t, ZERO) + a
        return TotalState(self.n_particles, out)

    def __neg__(self) -> TotalState:
        return self.scale(-1)

    def __sub__(self, other: TotalState) -> TotalState:
        return self + (-other)

    def norm2(self) -> QuadraticScalar:
        return total_inner(self, self)

    def relabel(self, mapping: Mapping[str, str]) -> TotalState:
        return TotalState(
            self.n_particles,
            {(tuple(mapping.get(s, s) for s in o), p): a for (o, p), a in self.terms.items()},
        )

    def dump(self) -> str:
        """One line per term: ``coeff (orb,orb,orb) pattern``."""
        return "\n".join(f"{a.format()} ({','.join(o)}) {p}" for (o, p), a in self.terms.items())

    def __repr__(self) -> str:
        return f"TotalState(n={self.n_particles}, {len(self.terms)} terms)"


def total_inner(x: TotalState, y: TotalState) -> QuadraticScalar:
    if x.n_particles != y.n_particles:
        raise DimensionMismatch(f"n={x.n_particles} vs n={y.n_particles}")
    total = ZERO
    for key, a in x.terms.items():
        b = y.terms.get(key)
        if b is not None:
            total = total + a * b
    return total


def combine(space: SpaceState, spin: SpinState) -> TotalState:
    if space.n_particles != spin.n:
        raise DimensionMismatch(f"space over {space.n_particles} particles, spin over {spin.n}")
    spin_terms = spin.terms()
    return TotalState(
        spin.n,
        {(orbs, pat): a * b for orbs, a in space.terms.items() for pat, b in spin_terms.items()},
    )


def total_permute(pi: Permutation, x: TotalState) -> TotalState:
    """Exchange space and spin coordinates together."""
    if pi.n != x.n_particles:
        raise DimensionMismatch(f"permutation over {pi.n} applied to n={x.n_particles}")
    return TotalState(
        x.n_particles,
        {(pi.apply_to_sequence(o), "".join(pi.apply_to_sequence(p))): a for (o, p), a in x.terms.items()},
    )


def spin_as_total(spin: SpinState, orbital: str = "0") -> TotalState:
    """Put every particle in the same orbital so a bare spin state can be analyzed as a total state."""
    return combine(SpaceState.product((orbital,) * spin.n), spin)


# -- the four cases ----------------------------------------------------------


def _pair_singlet_term(doubled: str, single: str, pair: tuple[int, int], third_spin: str) -> TotalState:
    """psi_doubled(r_i) psi_doubled(r_j) chi_00(i,j) psi_single(r_k) chi(k).

    ``chi_00(i,j) = (u_i d_j - d_i u_j)/sqrt2`` with the pair taken in the
    order given, so the orientation of the singlet follows ``pair``.
    """
    i, j = pair
    (k,) = {1, 2, 3} - {i, j}
    orbs = [None] * 3
    orbs[i - 1] = orbs[j - 1] = doubled
    orbs[k - 1] = single
    amp = inv_sqrt(2)
    terms = {}
    for si, sj, sign in (("u", "d", 1), ("d", "u", -1)):
        spins = [None] * 3
        spins[i - 1], spins[j - 1], spins[k - 1] = si, sj, third_spin
        terms[(tuple(orbs), "".join(spins))] = amp if sign > 0 else -amp
    return TotalState(3, terms)


# Pair orientation for the three-term pair-singlet sum.  The cyclic order
# (12), (23), (31) is the one under which the plus-sign sum is antisymmetric;
# the ascending order (12), (13), (23) is kept for the audit comparison.
CYCLIC_PAIRS = ((1, 2), (3, 1), (2, 3))
ASCENDING_PAIRS = ((1, 2), (1, 3), (2, 3))


def pair_singlet_sum(doubled: str, single: str, third_spin: str, pairs=CYCLIC_PAIRS) -> TotalState:
    out = TotalState(3, {})
    for pair in pairs:
        out = out + _pair_singlet_term(doubled, single, pair, third_spin)
    return out.scale(inv_sqrt(3))


def literal_chi_a(m: Fraction) -> SpinState:
    """The pairwise-sum spin state used as chi^A in the triple/distinct cases."""
    eq = {HALF: "Eq. (33)", -HALF: "Eq. (35)"}[Fraction(m)]
    for rec in literal_symmetrized_variants():
        if rec.equation == eq:
            return rec.result
    raise AssertionError(eq)


def quadruplet_member(m: Fraction) -> SpinState:
    for s in quadruplet().states:
        if s.label.m == Fraction(m):
            return s.state
    raise ValueError(f"no quadruplet member with M={m}")


def _resolve_spin(case: str, spin_choice) -> SpinState | str:
    if isinstance(spin_choice, SpinState):
        return spin_choice
    if case == "c":
        if spin_choice not in ("u", "d"):
            raise ValueError("case c takes the third-particle spin 'u' or 'd'")
        return spin_choice
    m = Fraction(spin_choice)
    if case in ("a", "b"):
        return literal_chi_a(m)
    return quadruplet_member(m)


def assemble(case: str, labels: Sequence[str], spin_choice=HALF, pairs=CYCLIC_PAIRS) -> TotalState:
    """Build the total wave function for one of the four occupation cases.

    case ``a``: three equal labels, symmetric space x literal chi^A.
    case ``b``: three distinct labels, symmetric space x literal chi^A.
    case ``c``: two equal labels, three-term pair-singlet sum.
    case ``d``: three distinct labels, Slater determinant x symmetric spin.

    ``spin_choice`` is M for cases a, b, d (a SpinState is also accepted)
    and the third-particle spin letter for case c.
    """
    labels = tuple(labels)
    expected = {"a": "all_equal", "b": "all_distinct", "c": "two_equal", "d": "all_distinct"}
    if case not in expected:
        raise ValueError(f"unknown case {case!r}")
    try:
        pattern = multiplicity_case(labels)
    except ValueError as exc:
        raise LabelPatternMismatch(str(exc)) from exc
    if pattern != expected[case]:
        raise LabelPatternMismatch(f"case {case} needs {expected[case]} labels, got {labels}")
    spin = _resolve_spin(case, spin_choice)
    if case in ("a", "b"):
        return combine(symmetric_space(labels), spin)
    if case == "d":
        return combine(slater_determinant(labels), spin)
    counts = {s: labels.count(s) for s in labels}
    doubled = next(s for s, k in counts.items() if k == 2)
    single = next(s for s, k in counts.items() if k == 1)
    return pair_singlet_sum(doubled, single, spin, pairs)


# -- exchange audit ----------------------------------------------------------


@dataclass(frozen=True)
class ParityReport:
    entries: dict[str, int | None] = field(hash=False)
    residual_norm2: dict[str, QuadraticScalar] = field(hash=False)

    @property
    def verdict(self) -> str:
        values = set(self.entries.values())
        if values == {1}:
            return "fully_symmetric"
        if values == {-1}:
            return "fully_antisymmetric"
        return "neither"

    def describe(self) -> str:
        cells = []
        for name, v in self.entries.items():
            cells.append(f"{name}:{'not_eigenstate' if v is None else f'{v:+d}'}")
        return " ".join(cells) + f" -> {self.verdict}"


def pauli_parity_report(x: TotalState) -> ParityReport:
    if x.is_zero():
        raise ZeroState("parity of the zero state is undefined")
    entries = {}
    residuals = {}
    for pi in transpositions(x.n_particles):
        y = total_permute(pi, x)
        name = str(pi)
        if y == x:
            entries[name] = 1
        elif y == -x:
            entries[name] = -1
        else:
            entries[name] = None
            plus, minus = (y - x).norm2(), (y + x).norm2()
            residuals[name] = plus if float(plus) <= float(minus) else minus
    return ParityReport(entries, residuals)


__all__ = [
    "TotalState",
    "ParityReport",
    "combine",
    "assemble",
    "total_inner",
    "total_permute",
    "spin_as_total",
    "pair_singlet_sum",
    "literal_chi_a",
    "quadruplet_member",
    "pauli_parity_report",
    "CYCLIC_PAIRS",
    "ASCENDING_PAIRS",
]
