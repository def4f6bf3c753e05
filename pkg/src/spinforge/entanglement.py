"""Bipartite analysis of exact pure states and the space/spin entanglement classifier.

"Entangled" is operationalized as Schmidt rank > 1 across at least one
bipartition of the particles.  Ranks are exact (elimination over
Q(sqrt2, sqrt3)); only the entropy goes through floating point.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .assembly import TotalState
from .errors import NotNormalized, ZeroState
from .orbital import SpaceState
from .radical import ONE, ZERO, QuadraticScalar
from .spin import SpinState, pattern_of

AnyState = Union[SpinState, SpaceState, TotalState]

_SPIN_ORDER = {"u": 0, "d": 1}


@dataclass(frozen=True)
class Bipartition:
    left: tuple[int, ...]
    right: tuple[int, ...]

    def __post_init__(self):
        left, right = tuple(sorted(self.left)), tuple(sorted(self.right))
        if not left or not right:
            raise ValueError("both sides of a bipartition must be nonempty")
        if set(left) & set(right):
            raise ValueError(f"sides overlap: {left} | {right}")
        if 1 in right:
            left, right = right, left
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    @property
    def n(self) -> int:
        return len(self.left) + len(self.right)

    @classmethod
    def parse(cls, text: str) -> Bipartition:
        """``"1|23"`` style; particle numbers are single digits."""
        try:
            lhs, rhs = text.split("|")
            cut = cls(tuple(int(c) for c in lhs), tuple(int(c) for c in rhs))
        except ValueError as exc:
            raise ValueError(f"bad cut {text!r}: expected e.g. '1|23'") from exc
        return cut

    def covers(self, n: int) -> bool:
        return sorted(self.left + self.right) == list(range(1, n + 1))

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.left)) + "}|{" + ",".join(map(str, self.right)) + "}"


def all_cuts(n: int) -> list[Bipartition]:
    """Every bipartition of 1..n, in canonical form (particle 1 on the left)."""
    rest = list(range(2, n + 1))
    cuts = []
    for k in range(0, n - 1):
        for extra in itertools.combinations(rest, k):
            left = (1,) + extra
            right = tuple(i for i in rest if i not in extra)
            cuts.append(Bipartition(left, right))
    return cuts


def _local_terms(x: AnyState) -> tuple[int, dict[tuple, QuadraticScalar]]:
    """Amplitudes keyed by per-particle local configurations."""
    if isinstance(x, SpinState):
        return x.n, {tuple(p): a for p, a in x.terms().items()}
    if isinstance(x, SpaceState):
        return x.n_particles, dict(x.terms)
    if isinstance(x, TotalState):
        return x.n_particles, {tuple(zip(o, p)): a for (o, p), a in x.terms.items()}
    raise TypeError(f"cannot analyze {type(x).__name__}")


def _total_key(cfg: tuple[str, str]):
    # orbital label as a string, then u before d
    return (cfg[0], _SPIN_ORDER[cfg[1]])


@dataclass(frozen=True)
class CoefficientMatrix:
    rows: tuple[tuple, ...]
    cols: tuple[tuple, ...]
    entries: tuple[tuple[QuadraticScalar, ...], ...]

    def __getitem__(self, rc: tuple[int, int]) -> QuadraticScalar:
        return self.entries[rc[0]][rc[1]]

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.entries], dtype=float)


def coefficient_matrix(x: AnyState, cut: Bipartition) -> CoefficientMatrix:
    """Rows indexed by left-side configurations, columns by right-side ones.

    Spin states use the full local basis in u-before-d order; space and
    total states list only configurations that occur (zero rows and
    columns cannot change rank or spectra).
    """
    n, terms = _local_terms(x)
    if not terms:
        raise ZeroState("coefficient matrix of the zero state")
    if not cut.covers(n):
        raise ValueError(f"cut {cut} is not a bipartition of {n} particles")
    li = [i - 1 for i in cut.left]
    ri = [i - 1 for i in cut.right]
    if isinstance(x, SpinState):
        rows = [tuple(pattern_of(k, len(li))) for k in range(1 << len(li))]
        cols = [tuple(pattern_of(k, len(ri))) for k in range(1 << len(ri))]
    else:
        key = (lambda t: tuple(map(_total_key, t))) if isinstance(x, TotalState) else None
        rows = sorted({tuple(cfg[i] for i in li) for cfg in terms}, key=key)
        cols = sorted({tuple(cfg[i] for i in ri) for cfg in terms}, key=key)
    row_at = {r: k for k, r in enumerate(rows)}
    col_at = {c: k for k, c in enumerate(cols)}
    grid = [[ZERO] * len(cols) for _ in rows]
    for cfg, a in terms.items():
        grid[row_at[tuple(cfg[i] for i in li)]][col_at[tuple(cfg[i] for i in ri)]] = a
    return CoefficientMatrix(tuple(rows), tuple(cols), tuple(tuple(r) for r in grid))


def exact_rank(entries) -> int:
    """Rank by fraction-free (Bareiss) elimination; every division is exact."""
    m = [list(row) for row in entries]
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = ONE
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        inv_prev = prev.inverse()  # one inverse per step; each quotient is exact
        for r in range(rank + 1, nrows):
            lead = m[r][col]
            for c in range(col + 1, ncols):
                m[r][c] = (p * m[r][c] - lead * m[rank][c]) * inv_prev
            m[r][col] = ZERO
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def schmidt_rank(x: AnyState, cut: Bipartition) -> int:
    return exact_rank(coefficient_matrix(x, cut).entries)


@dataclass(frozen=True)
class DensityMatrix:
    dim: int
    entries: tuple[tuple[QuadraticScalar, ...], ...]
    labels: tuple[tuple, ...]

    def trace(self) -> QuadraticScalar:
        total = ZERO
        for i in range(self.dim):
            total = total + self.entries[i][i]
        return total

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.entries], dtype=float)


def state_norm2(x: AnyState) -> QuadraticScalar:
    _, terms = _local_terms(x)
    total = ZERO
    for a in terms.values():
        total = total + a * a
    return total


def reduced_density(x: AnyState, cut: Bipartition) -> DensityMatrix:
    """rho_left = M M^T for the coefficient matrix M (real amplitudes)."""
    n2 = state_norm2(x)
    if n2.is_zero():
        raise ZeroState("reduced density of the zero state")
    if n2 != ONE:
        raise NotNormalized(f"state has norm^2 {n2.pretty()}")
    cm = coefficient_matrix(x, cut)
    rows = cm.entries
    entries = []
    for ri in rows:
        line = []
        for rj in rows:
            acc = ZERO
            for a, b in zip(ri, rj):
                if a and b:
                    acc = acc + a * b
            line.append(acc)
        entries.append(tuple(line))
    return DensityMatrix(len(rows), tuple(entries), cm.rows)


def jacobi_eigenvalues(a: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations."""
    a = np.array(a, dtype=float, copy=True)
    n = a.shape[0]
    if n == 1:
        return a.diagonal().copy()
    for _ in range(max_sweeps):
        off = math.sqrt(float(np.sum(np.triu(a, 1) ** 2)))
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1))
                c = 1 / math.sqrt(t * t + 1)
                s = t * c
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
    return np.sort(a.diagonal())


def symmetric_eigenvalues(a: np.ndarray) -> np.ndarray:
    """Closed form for 2x2, Jacobi otherwise."""
    a = np.asarray(a, dtype=float)
    if a.shape == (2, 2):
        mean = (a[0, 0] + a[1, 1]) / 2
        rad = math.hypot((a[0, 0] - a[1, 1]) / 2, a[0, 1])
        return np.array([mean - rad, mean + rad])
    return jacobi_eigenvalues(a)


def entropy_bits(x: AnyState, cut: Bipartition) -> float:
    rho = reduced_density(x, cut)
    if schmidt_rank(x, cut) == 1:
        return 0.0  # exact; skip float noise from the eigen-solve
    total = 0.0
    for lam in symmetric_eigenvalues(rho.to_numpy()):
        if lam > 1e-15:
            total -= lam * math.log2(lam)
    return max(total, 0.0)


@dataclass(frozen=True)
class ProductCheck:
    is_product: bool
    left: dict | None = None
    right: dict | None = None
    mismatch: tuple | None = None


def product_oracle(x: AnyState, cut: Bipartition) -> ProductCheck:
    """Rebuild candidate factors from one nonzero row and column and test every entry.

    Independent of the elimination in :func:`exact_rank`.
    """
    cm = coefficient_matrix(x, cut)
    pivot = next(
        ((r, c) for r, row in enumerate(cm.entries) for c, v in enumerate(row) if v),
        None,
    )
    if pivot is None:
        raise ZeroState("product test of the zero state")
    r0, c0 = pivot
    p = cm[r0, c0]
    left = [cm[r, c0] for r in range(len(cm.rows))]
    right = [cm[r0, c] / p for c in range(len(cm.cols))]
    for r, row in enumerate(cm.entries):
        for c, v in enumerate(row):
            if v != left[r] * right[c]:
                return ProductCheck(False, mismatch=(cm.rows[r], cm.cols[c]))
    key = (lambda k: "".join(k)) if isinstance(x, SpinState) else (lambda k: k)
    return ProductCheck(
        True,
        left={key(k): v for k, v in zip(cm.rows, left) if v},
        right={key(k): v for k, v in zip(cm.cols, right) if v},
    )


@dataclass(frozen=True)
class Classification:
    factorable: bool
    spin_entangled: bool
    space_entangled: bool
    verdict: str
    spin_factor: SpinState | None = None
    space_factor: SpaceState | None = None

    def as_dict(self) -> dict:
        return {
            "factorable": self.factorable,
            "spin_entangled": self.spin_entangled,
            "space_entangled": self.space_entangled,
            "verdict": self.verdict,
        }


def space_spin_matrix(x: TotalState) -> tuple[list, list, list[list[QuadraticScalar]]]:
    orbs = sorted({o for o, _ in x.terms})
    pats = sorted({p for _, p in x.terms}, key=lambda s: [_SPIN_ORDER[c] for c in s])
    oi = {o: k for k, o in enumerate(orbs)}
    pi = {p: k for k, p in enumerate(pats)}
    grid = [[ZERO] * len(pats) for _ in orbs]
    for (o, p), a in x.terms.items():
        grid[oi[o]][pi[p]] = a
    return orbs, pats, grid


def is_entangled(x: AnyState) -> bool:
    n, _ = _local_terms(x)
    return any(schmidt_rank(x, cut) > 1 for cut in all_cuts(n))


def classify(x: TotalState) -> Classification:
    """Space/spin entanglement verdict.

    Factorable states get ``none``, ``spin_only``, ``space_only`` or
    ``full``; a state that is not a space x spin product gets
    ``full_nonfactorable``.
    """
    if x.is_zero():
        raise ZeroState("classification of the zero state")
    orbs, pats, grid = space_spin_matrix(x)
    if exact_rank(grid) > 1:
        return Classification(False, True, True, "full_nonfactorable")
    r0, c0 = next((r, c) for r, row in enumerate(grid) for c, v in enumerate(row) if v)
    space = SpaceState(x.n_particles, {o: grid[r][c0] for r, o in enumerate(orbs)})
    spin = SpinState.from_terms({p: grid[r0][c] for c, p in enumerate(pats)}, x.n_particles)
    spin_ent = x.n_particles > 1 and is_entangled(spin)
    space_ent = x.n_particles > 1 and is_entangled(space)
    verdict = {
        (False, False): "none",
        (True, False): "spin_only",
        (False, True): "space_only",
        (True, True): "full",
    }[(spin_ent, space_ent)]
    return Classification(True, spin_ent, space_ent, verdict, spin, space)


__all__ = [
    "Bipartition",
    "CoefficientMatrix",
    "DensityMatrix",
    "ProductCheck",
    "Classification",
    "all_cuts",
    "coefficient_matrix",
    "exact_rank",
    "schmidt_rank",
    "reduced_density",
    "jacobi_eigenvalues",
    "symmetric_eigenvalues",
    "entropy_bits",
    "product_oracle",
    "classify",
    "is_entangled",
    "space_spin_matrix",
    "state_norm2",
]
