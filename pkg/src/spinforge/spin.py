"""Spin-1/2 states in the computational basis and the operators acting on them.

Basis convention: a basis state is a string over ``u``/``d``; position ``i``
(1-based) is particle ``i``.  Its index is the binary number with particle 1
as the most significant bit and ``u -> 0``, ``d -> 1``, so for three spins
the order is ``uuu, uud, udu, udd, duu, dud, ddu, ddd``.

Amplitudes are real, so no complex conjugation appears anywhere.  Only the
lowering operator appears in the physics being modeled; the raising operator
is included as its transpose because ``s_i . s_j`` needs it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, NormOutsideField, NotRepresentable, SameParticle, ZeroState
from .radical import ONE, ZERO, QuadraticScalar, inv_sqrt, try_sqrt

__all__ = [
    "SpinState",
    "Permutation",
    "pattern_of",
    "index_of",
    "basis",
    "tensor",
    "inner",
    "apply_ladder",
    "apply_sz",
    "pair_dot",
    "s_squared",
    "permute",
    "projector",
    "pairwise_sum",
    "normalize",
    "transpositions",
]

UP, DOWN = "u", "d"


def pattern_of(index: int, n: int) -> str:
    return "".join(DOWN if (index >> (n - 1 - i)) & 1 else UP for i in range(n))


def index_of(pattern: str) -> int:
    idx = 0
    for ch in pattern:
        if ch not in (UP, DOWN):
            raise ValueError(f"invalid spin letter {ch!r} in {pattern!r}")
        idx = (idx << 1) | (ch == DOWN)
    return idx


@dataclass(frozen=True)
class SpinState:
    """Dense exact amplitude vector over the 2**n spin basis."""

    n: int
    amps: tuple[QuadraticScalar, ...]
    normalized: bool = field(default=False, compare=False)

    def __post_init__(self):
        if len(self.amps) != 1 << self.n:
            raise DimensionMismatch(f"{len(self.amps)} amplitudes for n={self.n}")

    @classmethod
    def zero(cls, n: int) -> SpinState:
        return cls(n, (ZERO,) * (1 << n))

    @classmethod
    def from_terms(cls, terms: Mapping[str, QuadraticScalar | int | Fraction], n: int | None = None) -> SpinState:
        if n is None:
            if not terms:
                raise ValueError("cannot infer n from an empty term map")
            n = len(next(iter(terms)))
        amps = [ZERO] * (1 << n)
        for pattern, coef in terms.items():
            if len(pattern) != n:
                raise DimensionMismatch(f"pattern {pattern!r} is not of length {n}")
            amps[index_of(pattern)] += QuadraticScalar.coerce(coef)
        return cls(n, tuple(amps))

    def terms(self) -> dict[str, QuadraticScalar]:
        """Nonzero amplitudes keyed by pattern, in basis order."""
        return {pattern_of(i, self.n): a for i, a in enumerate(self.amps) if a}

    def is_zero(self) -> bool:
        return not any(self.amps)

    def mark_normalized(self) -> SpinState:
        return SpinState(self.n, self.amps, True)

    def amplitude(self, pattern: str) -> QuadraticScalar:
        return self.amps[index_of(pattern)]

    def norm2(self) -> QuadraticScalar:
        return inner(self, self)

    def to_floats(self) -> list[float]:
        return [float(a) for a in self.amps]

    def __add__(self, other: SpinState) -> SpinState:
        if not isinstance(other, SpinState):
            return NotImplemented
        if other.n != self.n:
            raise DimensionMismatch(f"n={self.n} vs n={other.n}")
        return SpinState(self.n, tuple(x + y for x, y in zip(self.amps, other.amps)))

    def __neg__(self) -> SpinState:
        return SpinState(self.n, tuple(-x for x in self.amps), self.normalized)

    def __sub__(self, other: SpinState) -> SpinState:
        return self + (-other)

    def scale(self, k: QuadraticScalar | int | Fraction) -> SpinState:
        k = QuadraticScalar.coerce(k)
        return SpinState(self.n, tuple(k * x for x in self.amps))

    def __rmul__(self, k) -> SpinState:
        try:
            return self.scale(k)
        except TypeError:
            return NotImplemented

    def __repr__(self) -> str:
        body = " + ".join(f"{a.pretty()}*{p}" for p, a in self.terms().items()) or "0"
        return f"SpinState(n={self.n}: {body})"


def basis(pattern: str) -> SpinState:
    """Computational basis state, e.g. ``basis("uud")``."""
    return SpinState.from_terms({pattern: ONE}, len(pattern)).mark_normalized()


@dataclass(frozen=True)
class Permutation:
    """Bijection on particles ``1..n``; ``images[i-1]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"{self.images} is not a permutation of 1..{len(self.images)}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def swap(cls, i: int, j: int, n: int = 3) -> Permutation:
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    @classmethod
    def all(cls, n: int) -> list[Permutation]:
        return [cls(p) for p in itertools.permutations(range(1, n + 1))]

    def compose(self, other: Permutation) -> Permutation:
        """``(self o other)(i) = self(other(i))``."""
        if other.n != self.n:
            raise DimensionMismatch("permutations over different particle counts")
        return Permutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, img in enumerate(self.images, start=1):
            inv[img - 1] = i
        return Permutation(tuple(inv))

    @property
    def parity(self) -> int:
        seen = [False] * self.n
        sign = 1
        for start in range(self.n):
            if seen[start]:
                continue
            length = 0
            j = start
            while not seen[j]:
                seen[j] = True
                j = self.images[j] - 1
                length += 1
            if length % 2 == 0:
                sign = -sign
        return sign

    def apply_to_sequence(self, seq: Sequence) -> tuple:
        """Move the entry at position i to position pi(i)."""
        out = [None] * self.n
        for i, item in enumerate(seq, start=1):
            out[self(i) - 1] = item
        return tuple(out)

    def __str__(self) -> str:
        moved = [i for i in range(1, self.n + 1) if self(i) != i]
        if not moved:
            return "()"
        if len(moved) == 2 and self(moved[0]) == moved[1]:
            return f"({moved[0]}{moved[1]})"
        return "[" + " ".join(map(str, self.images)) + "]"


def transpositions(n: int = 3) -> list[Permutation]:
    return [Permutation.swap(i, j, n) for i, j in itertools.combinations(range(1, n + 1), 2)]


def _check_particles(subset: Iterable[int], n: int) -> tuple[int, ...]:
    subset = tuple(sorted(set(subset)))
    if not subset:
        raise ValueError("particle subset must be nonempty")
    for i in subset:
        if not 1 <= i <= n:
            raise ValueError(f"particle {i} out of range 1..{n}")
    return subset


def tensor(x: SpinState, y: SpinState) -> SpinState:
    amps = tuple(a * b for a in x.amps for b in y.amps)
    return SpinState(x.n + y.n, amps, x.normalized and y.normalized)


def inner(x: SpinState, y: SpinState) -> QuadraticScalar:
    if x.n != y.n:
        raise DimensionMismatch(f"inner product of n={x.n} and n={y.n} states")
    total = ZERO
    for a, b in zip(x.amps, y.amps):
        if a and b:
            total = total + a * b
    return total


def _flip(x: SpinState, i: int, source: str) -> SpinState:
    """Move weight from letter ``source`` to the other letter on particle i."""
    n = x.n
    bit = 1 << (n - i)
    amps = [ZERO] * (1 << n)
    want_set = source == DOWN
    for idx, a in enumerate(x.amps):
        if not a or bool(idx & bit) != want_set:
            continue
        amps[idx ^ bit] = amps[idx ^ bit] + a
    return SpinState(n, tuple(amps))


def apply_ladder(direction: str, subset: Iterable[int], x: SpinState) -> SpinState:
    """Sum of single-particle lowering (u -> d) or raising (d -> u) operators."""
    if direction not in ("lower", "raise"):
        raise ValueError(f"direction must be 'lower' or 'raise', not {direction!r}")
    subset = _check_particles(subset, x.n)
    source = UP if direction == "lower" else DOWN
    out = SpinState.zero(x.n)
    for i in subset:
        out = out + _flip(x, i, source)
    return out


def _sz_diag(subset: tuple[int, ...], n: int, idx: int) -> Fraction:
    total = Fraction(0)
    for i in subset:
        total += Fraction(-1, 2) if (idx >> (n - i)) & 1 else Fraction(1, 2)
    return total


def apply_sz(subset: Iterable[int], x: SpinState) -> SpinState:
    subset = _check_particles(subset, x.n)
    amps = tuple(a * QuadraticScalar.coerce(_sz_diag(subset, x.n, idx)) if a else a for idx, a in enumerate(x.amps))
    return SpinState(x.n, amps)


def pair_dot(i: int, j: int, x: SpinState) -> SpinState:
    """``s_i . s_j = (s_i+ s_j- + s_i- s_j+)/2 + s_iz s_jz``."""
    if i == j:
        raise SameParticle(f"pair_dot needs two distinct particles, got {i} twice")
    _check_particles((i, j), x.n)
    half = QuadraticScalar(1, den=2)
    flips = _flip(_flip(x, j, UP), i, DOWN) + _flip(_flip(x, j, DOWN), i, UP)
    zz = apply_sz([j], apply_sz([i], x))
    return flips.scale(half) + zz


def s_squared(subset: Iterable[int], x: SpinState) -> SpinState:
    """Squared total spin of ``subset``: (3/4)|subset| + 2 sum_{i<j} s_i . s_j."""
    subset = _check_particles(subset, x.n)
    out = x.scale(QuadraticScalar(3 * len(subset), den=4))
    for i, j in itertools.combinations(subset, 2):
        out = out + pair_dot(i, j, x).scale(2)
    return out


def permute(pi: Permutation, x: SpinState) -> SpinState:
    if pi.n != x.n:
        raise DimensionMismatch(f"permutation over {pi.n} particles applied to n={x.n}")
    amps = [ZERO] * (1 << x.n)
    for idx, a in enumerate(x.amps):
        if a:
            target = "".join(pi.apply_to_sequence(pattern_of(idx, x.n)))
            amps[index_of(target)] = a
    return SpinState(x.n, tuple(amps), x.normalized)


def projector(kind: str, x: SpinState) -> SpinState:
    """Group-average projector onto the fully symmetric or antisymmetric subspace."""
    if kind not in ("symmetrizer", "antisymmetrizer"):
        raise ValueError(f"unknown projector {kind!r}")
    out = SpinState.zero(x.n)
    for pi in Permutation.all(x.n):
        term = permute(pi, x)
        if kind == "antisymmetrizer" and pi.parity < 0:
            term = -term
        out = out + term
    return out.scale(QuadraticScalar(1, den=math.factorial(x.n)))


def pairwise_sum(variants: Sequence[SpinState], signs: Sequence[int] = (1, 1, 1)) -> SpinState:
    """``(1/sqrt3)(X12 + X13 + X23)``; no renormalization and not a projector.

    ``signs`` allows the alternating-sign comparison; the default reproduces
    the plus-sign construction.
    """
    if len(variants) != 3 or len(signs) != 3:
        raise ValueError("pairwise_sum takes exactly three variants")
    n = variants[0].n
    out = SpinState.zero(n)
    for s, v in zip(signs, variants):
        if v.n != n:
            raise DimensionMismatch("variants differ in particle count")
        out = out + (v if s > 0 else -v)
    return out.scale(inv_sqrt(3))


def normalize(x: SpinState) -> SpinState:
    n2 = inner(x, x)
    if n2.is_zero():
        raise ZeroState("cannot normalize the zero vector")
    try:
        norm = try_sqrt(n2)
    except NotRepresentable as exc:
        raise NormOutsideField(f"norm^2 = {n2.pretty()}: {exc}") from exc
    return x.scale(ONE / norm).mark_normalized()
