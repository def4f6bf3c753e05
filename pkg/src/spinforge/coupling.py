"""Two- and three-electron spin multiplets built by ladder descent and
orthogonal complement, plus the pairwise (anti)symmetrization audit."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction

from .radical import ONE, QuadraticScalar, inv_sqrt, try_sqrt
from .spin import (
    Permutation,
    SpinState,
    apply_ladder,
    apply_sz,
    basis,
    inner,
    normalize,
    pairwise_sum,
    permute,
    s_squared,
    tensor,
    transpositions,
)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class MultipletLabel:
    """(S', S, M): pair spin of particles 1,2, total spin, and S_z eigenvalue.

    For two-electron states ``s_total`` is None and ``s_prime`` is the pair spin.
    """

    s_prime: int
    s_total: Fraction | None
    m: Fraction

    def __post_init__(self):
        if self.s_prime not in (0, 1):
            raise ValueError(f"S' must be 0 or 1, got {self.s_prime}")
        bound = self.s_total if self.s_total is not None else Fraction(self.s_prime)
        if self.s_total is not None:
            allowed = {HALF} if self.s_prime == 0 else {HALF, Fraction(3, 2)}
            if self.s_total not in allowed:
                raise ValueError(f"S={self.s_total} not allowed for S'={self.s_prime}")
        if abs(self.m) > bound or (self.m - bound).denominator != 1:
            raise ValueError(f"M={self.m} incompatible with spin {bound}")

    def __str__(self) -> str:
        if self.s_total is None:
            return f"chi({self.s_prime},{self.m})"
        return f"chi({self.s_prime},{self.s_total},{self.m})"


@dataclass(frozen=True)
class LabeledState:
    label: MultipletLabel
    state: SpinState
    provenance: str


@dataclass(frozen=True)
class Quadruplet:
    states: tuple[LabeledState, ...]
    # norms of S- applied to the M=3/2, 1/2, -1/2 members
    ladder_factors: tuple[QuadraticScalar, ...]


def _label(s_prime, s_total, m) -> MultipletLabel:
    return MultipletLabel(s_prime, None if s_total is None else Fraction(s_total), Fraction(m))


def two_electron_basis() -> list[LabeledState]:
    """chi_11, chi_10, chi_1-1, chi_00; chi_10 comes from lowering chi_11."""
    chi11 = basis("uu")
    chi10 = normalize(apply_ladder("lower", (1, 2), chi11))
    chi1m1 = basis("dd")
    chi00 = SpinState.from_terms({"ud": inv_sqrt(2), "du": -inv_sqrt(2)}).mark_normalized()
    return [
        LabeledState(_label(1, None, 1), chi11, "Eq. (7)"),
        LabeledState(_label(1, None, 0), chi10, "Eq. (8), lowering of Eq. (7)"),
        LabeledState(_label(1, None, -1), chi1m1, "Eq. (9)"),
        LabeledState(_label(0, None, 0), chi00, "Eq. (10)"),
    ]


def _pair(m: int) -> SpinState:
    return {1: basis("uu"), 0: two_electron_basis()[1].state, -1: basis("dd")}[m]


def ladder_coefficient(j: Fraction, m: Fraction) -> QuadraticScalar:
    """sqrt((j+m)(j-m+1)), the norm picked up by one lowering step from |j m>."""
    return try_sqrt(QuadraticScalar.coerce((j + m) * (j - m + 1)))


def quadruplet() -> Quadruplet:
    """S=3/2 states by repeated lowering from uuu.

    Each lowered vector is divided by its own exact norm; the norms are
    returned so callers can compare them with the angular-momentum formula.
    """
    provenance = {
        Fraction(3, 2): "Eq. (17)",
        Fraction(1, 2): "Eq. (18)-(19)",
        Fraction(-1, 2): "Eq. (21)-(23)",
        Fraction(-3, 2): "Eq. (24), by lowering",
    }
    current = basis("uuu")
    m = Fraction(3, 2)
    states = [LabeledState(_label(1, m, m), current, provenance[m])]
    factors = []
    while m > -Fraction(3, 2):
        lowered = apply_ladder("lower", (1, 2, 3), current)
        factor = try_sqrt(inner(lowered, lowered))
        factors.append(factor)
        current = lowered.scale(ONE / factor).mark_normalized()
        m -= 1
        states.append(LabeledState(_label(1, Fraction(3, 2), m), current, provenance[m]))
    return Quadruplet(tuple(states), tuple(factors))


def orthogonal_complement(first: SpinState, second: SpinState, target: SpinState) -> SpinState:
    """Unit vector in span{first, second} orthogonal to ``target``.

    ``first`` and ``second`` must be orthonormal and ``target`` must lie in
    their span.  The overall sign gives ``first`` a positive coefficient.
    """
    alpha = inner(first, target)
    beta = inner(second, target)
    w = first.scale(beta) - second.scale(alpha)
    if alpha.is_zero() and beta.is_zero():
        raise ValueError("target is orthogonal to the whole plane")
    w = normalize(w)
    if float(inner(first, w)) < 0:
        w = -w
    return w


def doublets_sprime1() -> list[LabeledState]:
    quad = {s.label.m: s.state for s in quadruplet().states}
    up, down = basis("u"), basis("d")
    plus = orthogonal_complement(tensor(_pair(1), down), tensor(_pair(0), up), quad[HALF])
    minus = orthogonal_complement(tensor(_pair(0), down), tensor(_pair(-1), up), quad[-HALF])
    return [
        LabeledState(_label(1, HALF, HALF), plus, "Eq. (26)-(27), orthogonal to Eq. (26)"),
        LabeledState(_label(1, HALF, -HALF), minus, "Eq. (29)-(30), orthogonal to Eq. (29)"),
    ]


def doublets_sprime0() -> list[LabeledState]:
    chi00 = two_electron_basis()[3].state
    return [
        LabeledState(_label(0, HALF, HALF), tensor(chi00, basis("u")), "Eq. (32)"),
        LabeledState(_label(0, HALF, -HALF), tensor(chi00, basis("d")), "Eq. (34)"),
    ]


def three_electron_basis() -> list[LabeledState]:
    """The eight states: quadruplet, S'=1 doublet, S'=0 doublet."""
    return list(quadruplet().states) + doublets_sprime1() + doublets_sprime0()


# -- parity tables ---------------------------------------------------------


def permutation_eigenvalue(pi: Permutation, x: SpinState) -> int | None:
    """+1 or -1 if ``x`` is an eigenvector of ``pi``, otherwise None.

    The zero vector is reported as +1 (it satisfies both)."""
    y = permute(pi, x)
    if y == x:
        return 1
    if y == -x:
        return -1
    return None


def parity_table(x: SpinState) -> dict[str, int | None]:
    return {str(pi): permutation_eigenvalue(pi, x) for pi in transpositions(x.n)}


# -- the pairwise-sum audit --------------------------------------------------


@dataclass(frozen=True)
class SymmetrizationRecord:
    equation: str
    source: LabeledState
    variants: tuple[SpinState, SpinState, SpinState]
    result: SpinState
    norm2: QuadraticScalar
    parity: dict[str, int | None] = field(hash=False)
    alternating: SpinState | None = None
    alternating_norm2: QuadraticScalar | None = None
    alternating_parity: dict[str, int | None] | None = field(default=None, hash=False)

    @property
    def is_zero(self) -> bool:
        return self.result.is_zero()

    @property
    def is_normalized(self) -> bool:
        return self.norm2 == ONE

    def verdict(self, parity: dict[str, int | None] | None = None) -> str:
        parity = self.parity if parity is None else parity
        values = set(parity.values())
        if values == {1}:
            return "fully_symmetric"
        if values == {-1}:
            return "fully_antisymmetric"
        return "neither"


def relabeled_variants(x12: SpinState) -> tuple[SpinState, SpinState, SpinState]:
    """X^(12), X^(13), X^(23) generated from X^(12) by particle exchange.

    X^(13) is X^(12) with particles 2 and 3 exchanged; X^(23) likewise with
    particles 1 and 3, which carries the distinguished pair {1,2} to {3,2}.
    """
    return (x12, permute(Permutation.swap(2, 3), x12), permute(Permutation.swap(1, 3), x12))


def literal_symmetrized_variants() -> list[SymmetrizationRecord]:
    """Apply the plus-sign (1/sqrt3) sum to the four doublets, without correction."""
    return list(_symmetrized_records())


@functools.lru_cache(maxsize=1)
def _symmetrized_records() -> tuple[SymmetrizationRecord, ...]:
    d1 = {s.label.m: s for s in doublets_sprime1()}
    d0 = {s.label.m: s for s in doublets_sprime0()}
    sources = [
        ("Eq. (28)", d1[HALF], False),
        ("Eq. (31)", d1[-HALF], False),
        ("Eq. (33)", d0[HALF], True),
        ("Eq. (35)", d0[-HALF], True),
    ]
    records = []
    for equation, src, antisym in sources:
        variants = relabeled_variants(src.state)
        result = pairwise_sum(variants)
        extra = {}
        if antisym:
            alt = pairwise_sum(variants, signs=(1, -1, 1))
            extra = dict(
                alternating=alt,
                alternating_norm2=inner(alt, alt),
                alternating_parity=parity_table(alt),
            )
        records.append(
            SymmetrizationRecord(
                equation=equation,
                source=src,
                variants=variants,
                result=result,
                norm2=inner(result, result),
                parity=parity_table(result),
                **extra,
            )
        )
    return tuple(records)


# -- quantum-number checks ---------------------------------------------------


@dataclass(frozen=True)
class EigenCheck:
    name: str
    expected: Fraction
    passed: bool
    residual: SpinState


def verify_quantum_numbers(x: LabeledState) -> list[EigenCheck]:
    """Check S^2(123), S^2(12) and S_z(123) eigenvalues exactly.

    Two-electron states (``s_total is None``) get S^2(12) and S_z(12) only.
    """
    st = x.state
    label = x.label
    checks = []
    if label.s_total is not None:
        s = label.s_total
        checks.append(("S2(123)", s * (s + 1), lambda v: s_squared((1, 2, 3), v)))
    sp = Fraction(label.s_prime)
    checks.append(("S2(12)", sp * (sp + 1), lambda v: s_squared((1, 2), v)))
    checks.append(("Sz", label.m, lambda v: apply_sz(range(1, v.n + 1), v)))
    out = []
    for name, expected, op in checks:
        residual = op(st) - st.scale(expected)
        out.append(EigenCheck(name, expected, residual.is_zero(), residual))
    return out


def literal_eq20() -> SpinState:
    """The M=1/2 quadruplet expansion exactly as printed: (duu + udu + dud)/sqrt3."""
    k = inv_sqrt(3)
    return SpinState.from_terms({"duu": k, "udu": k, "dud": k})


def is_sz_eigenstate(x: SpinState) -> bool:
    y = apply_sz(range(1, x.n + 1), x)
    for a, b in zip(x.amps, y.amps):
        if a:
            ratio = b / a
            break
    else:
        return True
    return y == x.scale(ratio)


__all__ = [
    "MultipletLabel",
    "LabeledState",
    "Quadruplet",
    "SymmetrizationRecord",
    "EigenCheck",
    "two_electron_basis",
    "quadruplet",
    "doublets_sprime1",
    "doublets_sprime0",
    "three_electron_basis",
    "literal_symmetrized_variants",
    "verify_quantum_numbers",
    "ladder_coefficient",
    "orthogonal_complement",
    "relabeled_variants",
    "parity_table",
    "permutation_eigenvalue",
    "literal_eq20",
    "is_sz_eigenstate",
]
