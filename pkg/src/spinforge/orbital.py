"""Three-electron space wave functions over abstract orthonormal orbitals,
and a 1-D grid realization for the separation (overlap-decay) scan.

Orbital labels are opaque strings; distinct labels are orthonormal.  A
:class:`SpaceState` maps ordered label tuples (position ``i`` = particle
``i``) to exact amplitudes.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .errors import DimensionMismatch, GridMismatch
from .radical import ONE, ZERO, QuadraticScalar, inv_sqrt, try_sqrt
from .spin import Permutation

OrbitalTuple = tuple[str, ...]


@dataclass(frozen=True)
class SpaceState:
    n_particles: int
    terms: Mapping[OrbitalTuple, QuadraticScalar]
    pauli_excluded: bool = field(default=False, compare=False)

    def __post_init__(self):
        clean = {}
        for key, amp in self.terms.items():
            key = tuple(key)
            if len(key) != self.n_particles:
                raise DimensionMismatch(f"tuple {key} has wrong length for n={self.n_particles}")
            amp = QuadraticScalar.coerce(amp)
            if amp:
                clean[key] = amp
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def product(cls, labels: Sequence[str]) -> SpaceState:
        return cls(len(labels), {tuple(labels): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def scale(self, k) -> SpaceState:
        k = QuadraticScalar.coerce(k)
        return SpaceState(self.n_particles, {t: k * a for t, a in self.terms.items()})

    def __add__(self, other: SpaceState) -> SpaceState:
        if not isinstance(other, SpaceState):
            return NotImplemented
        if other.n_particles != self.n_particles:
            raise DimensionMismatch("space states over different particle counts")
        out = dict(self.terms)
        for t, a in other.terms.items():
            out[t] = out.get(t, ZERO) + a
        return SpaceState(self.n_particles, out)

    def __neg__(self) -> SpaceState:
        return self.scale(-1)

    def __sub__(self, other: SpaceState) -> SpaceState:
        return self + (-other)

    def relabel(self, mapping: Mapping[str, str]) -> SpaceState:
        return SpaceState(
            self.n_particles,
            {tuple(mapping.get(s, s) for s in t): a for t, a in self.terms.items()},
            self.pauli_excluded,
        )

    def __repr__(self) -> str:
        body = " + ".join(f"{a.pretty()}*({','.join(t)})" for t, a in self.terms.items()) or "0"
        return f"SpaceState({body})"


def symmetric_space(labels: Sequence[str]) -> SpaceState:
    """Normalized symmetric combination of the distinct orderings of ``labels``.

    Three equal labels give the single product, two equal give three terms
    of weight 1/sqrt3, three distinct give six terms of weight 1/sqrt6.
    """
    labels = tuple(labels)
    orderings = sorted(set(itertools.permutations(labels)))
    amp = ONE / try_sqrt(QuadraticScalar(len(orderings)))
    return SpaceState(len(labels), {t: amp for t in orderings})


def eq38_literal(n: str, m: str, l: str) -> SpaceState:
    """The two-equal-label state as printed, with a stray ``m`` in its middle term."""
    amp = inv_sqrt(3)
    return SpaceState(3, {(n, n, l): amp, (n, m, n): amp, (l, n, n): amp})


def slater_determinant(labels: Sequence[str]) -> SpaceState:
    """(1/sqrt(N!)) det[psi_{label_a}(r_i)]; zero (pauli_excluded) on repeats."""
    labels = tuple(labels)
    n = len(labels)
    if len(set(labels)) < n:
        return SpaceState(n, {}, pauli_excluded=True)
    amp = ONE / try_sqrt(QuadraticScalar(math.factorial(n)))
    terms = {}
    for sigma in Permutation.all(n):
        # particle i occupies orbital labels[sigma(i)]
        key = tuple(labels[sigma(i) - 1] for i in range(1, n + 1))
        terms[key] = amp if sigma.parity > 0 else -amp
    return SpaceState(n, terms)


def space_inner(x: SpaceState, y: SpaceState) -> QuadraticScalar:
    if x.n_particles != y.n_particles:
        raise DimensionMismatch(f"n={x.n_particles} vs n={y.n_particles}")
    total = ZERO
    for t, a in x.terms.items():
        b = y.terms.get(t)
        if b is not None:
            total = total + a * b
    return total


def space_permute(pi: Permutation, x: SpaceState) -> SpaceState:
    if pi.n != x.n_particles:
        raise DimensionMismatch(f"permutation over {pi.n} applied to n={x.n_particles}")
    return SpaceState(
        x.n_particles,
        {pi.apply_to_sequence(t): a for t, a in x.terms.items()},
        x.pauli_excluded,
    )


def space_symmetrizer(x: SpaceState) -> SpaceState:
    """Group average (1/n!) sum_pi pi x."""
    out = SpaceState(x.n_particles, {})
    for pi in Permutation.all(x.n_particles):
        out = out + space_permute(pi, x)
    return out.scale(QuadraticScalar(1, den=math.factorial(x.n_particles)))


def multiplicity_case(labels: Sequence[str]) -> str:
    """'all_equal', 'two_equal' or 'all_distinct' for a label triple."""
    counts = sorted(Counter(labels).values())
    if counts == [3]:
        return "all_equal"
    if counts == [1, 2]:
        return "two_equal"
    if counts == [1, 1, 1]:
        return "all_distinct"
    raise ValueError(f"expected three labels, got {labels}")


# -- grid realization --------------------------------------------------------


@dataclass(frozen=True)
class GridOrbital:
    """Real orbital sampled on ``grid_start + k*grid_step``; lengths in units of sigma."""

    samples: np.ndarray
    grid_start: float
    grid_step: float
    center: float

    @property
    def x(self) -> np.ndarray:
        return self.grid_start + self.grid_step * np.arange(len(self.samples))

    def same_grid(self, other: GridOrbital) -> bool:
        return (
            len(self.samples) == len(other.samples)
            and self.grid_start == other.grid_start
            and self.grid_step == other.grid_step
        )


def trapezoid_weights(npts: int, step: float) -> np.ndarray:
    w = np.full(npts, step)
    w[0] = w[-1] = step / 2
    return w


def gaussian_orbital(center: float, sigma: float, grid_start: float, grid_step: float, npts: int) -> GridOrbital:
    """exp(-(x-center)^2 / (2 sigma^2)), normalized on the grid.

    With this width convention two such orbitals a distance d apart overlap
    by exp(-d^2 / (4 sigma^2)).
    """
    x = grid_start + grid_step * np.arange(npts)
    phi = np.exp(-((x - center) ** 2) / (2 * sigma**2))
    phi /= math.sqrt(float(np.dot(trapezoid_weights(npts, grid_step), phi * phi)))
    return GridOrbital(phi, grid_start, grid_step, center)


def grid_overlap(a: GridOrbital, b: GridOrbital) -> float:
    if not a.same_grid(b):
        raise GridMismatch("orbitals are sampled on different grids")
    w = trapezoid_weights(len(a.samples), a.grid_step)
    return float(np.dot(w, a.samples * b.samples))


def gaussian_family(sigma: float, dmax: float, step: float | None = None, margin: float = 8.0):
    """Orbital generator ``center -> GridOrbital`` on the grid [-8 sigma, dmax + 8 sigma]."""
    if step is None:
        step = sigma / 64
    start = -margin * sigma
    npts = int(round((dmax + 2 * margin * sigma) / step)) + 1

    def make(center: float) -> GridOrbital:
        return gaussian_orbital(center, sigma, start, step, npts)

    return make


@dataclass(frozen=True)
class BranchSpectrum:
    singular_values: tuple[float, ...]
    p_same: float
    vanishes: bool = False

    @property
    def sv1(self) -> float:
        return self.singular_values[0] if self.singular_values else math.nan

    @property
    def sv2(self) -> float:
        return self.singular_values[1] if len(self.singular_values) > 1 else 0.0

    @property
    def sv3plus(self) -> float:
        return math.sqrt(sum(s * s for s in self.singular_values[2:]))


@dataclass(frozen=True)
class ScanRow:
    d: float
    overlap: float
    symmetric: BranchSpectrum
    antisymmetric: BranchSpectrum


def _two_particle_spectrum(phi0: GridOrbital, phid: GridOrbital, sign: int, d: float) -> BranchSpectrum:
    """Schmidt spectrum and same-side probability of phi0 x phid + sign * phid x phi0.

    The amplitude matrix is discretized with square-root trapezoid weights so
    that its Frobenius norm is the L2 norm and its singular values are the
    Schmidt coefficients.  Its column space is spanned by the two orbitals,
    so the SVD is taken after a thin QR of the weighted orbital pair.  The
    Frobenius norm of what lies outside that subspace is reported as a
    trailing third value.
    """
    npts = len(phi0.samples)
    sw = np.sqrt(trapezoid_weights(npts, phi0.grid_step))
    a = sw * phi0.samples
    b = sw * phid.samples
    # ||a b^T + s b a^T||_F^2 without forming the matrix
    aa, bb, ab = float(a @ a), float(b @ b), float(a @ b)
    frob2 = 2 * aa * bb + 2 * sign * ab * ab
    if frob2 < 1e-24:
        return BranchSpectrum((), math.nan, vanishes=True)
    scale = 1 / math.sqrt(frob2)

    pair = np.column_stack([a, b])
    j = np.array([[0.0, 1.0], [float(sign), 0.0]])
    q, r = np.linalg.qr(pair)
    core = r @ j @ r.T * scale
    top = sorted(np.linalg.svd(core, compute_uv=False).tolist(), reverse=True)
    # What a dense SVD would see beyond the QR range:
    #   A J A^T - B J B^T = E J A^T + B J E^T  with B = QR, E = A - B,
    # whose Frobenius norm needs only 4x4 Gram matrices.
    qr_pair = q @ r
    err = pair - qr_pair
    x = np.column_stack([err, qr_pair])
    y = np.column_stack([pair, err])
    k = np.zeros((4, 4))
    k[:2, :2] = k[2:, 2:] = j
    rest2 = float(np.trace(k.T @ (x.T @ x) @ k @ (y.T @ y)))
    values = tuple(top) + (math.sqrt(max(rest2, 0.0)) * scale,)

    if d == 0:
        # one region only: both orbitals sit at the origin
        p_same = 1.0
    else:
        # a grid point on the midplane counts half on each side (trapezoid split)
        x = phi0.x
        mid = d / 2
        left = np.where(x < mid, 1.0, 0.0)
        left[np.abs(x - mid) < 1e-9 * phi0.grid_step] = 0.5
        p_same = 0.0
        for m in (left, 1.0 - left):
            # sum_ij m_i m_j (a_i b_j + s b_i a_j)^2, expanded into O(N) sums
            ma, mb, mab = float(m @ (a * a)), float(m @ (b * b)), float(m @ (a * b))
            p_same += 2 * ma * mb + 2 * sign * mab * mab
        p_same *= scale * scale
    return BranchSpectrum(values, p_same)


def separation_scan(
    family: Callable[[float], GridOrbital], distances: Iterable[float]
) -> list[ScanRow]:
    distances = [float(d) for d in distances]
    if any(d < 0 for d in distances):
        raise ValueError("distances must be nonnegative")
    if distances != sorted(distances):
        raise ValueError("distances must be ascending")
    phi0 = family(0.0)
    rows = []
    for d in distances:
        phid = family(d)
        rows.append(
            ScanRow(
                d=d,
                overlap=grid_overlap(phi0, phid),
                symmetric=_two_particle_spectrum(phi0, phid, +1, d),
                antisymmetric=_two_particle_spectrum(phi0, phid, -1, d),
            )
        )
    return rows


def overlap_threshold(sigma: float, level: float = 1e-8) -> float:
    """Distance where exp(-d^2/(4 sigma^2)) equals ``level``."""
    return 2 * sigma * math.sqrt(-math.log(level))


__all__ = [
    "SpaceState",
    "GridOrbital",
    "ScanRow",
    "BranchSpectrum",
    "symmetric_space",
    "eq38_literal",
    "slater_determinant",
    "space_inner",
    "space_permute",
    "space_symmetrizer",
    "multiplicity_case",
    "gaussian_orbital",
    "gaussian_family",
    "grid_overlap",
    "separation_scan",
    "overlap_threshold",
    "trapezoid_weights",
]
