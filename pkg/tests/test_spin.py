from fractions import Fraction
from functools import reduce

import numpy as np
import pytest
from hypothesis import given

from spinforge.errors import DimensionMismatch, NormOutsideField, SameParticle, ZeroState
from spinforge.radical import ONE, QuadraticScalar, inv_sqrt
from spinforge.spin import (
    Permutation,
    SpinState,
    apply_ladder,
    apply_sz,
    basis,
    index_of,
    inner,
    normalize,
    pair_dot,
    pairwise_sum,
    pattern_of,
    permute,
    projector,
    s_squared,
    tensor,
    transpositions,
)

from conftest import permutations, scalars, spin_states

# -- independent float oracle: Kronecker products of Pauli matrices ------------

SX = np.array([[0, 1], [1, 0]], dtype=complex) / 2
SY = np.array([[0, -1j], [1j, 0]], dtype=complex) / 2
SZ = np.array([[1, 0], [0, -1]], dtype=complex) / 2
LOWER = np.array([[0, 0], [1, 0]], dtype=complex)  # |u>=(1,0) -> |d>=(0,1)
SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)


def site(op, i, n):
    mats = [np.eye(2)] * n
    mats[i - 1] = op
    return reduce(np.kron, mats)


def total_spin_sq(subset, n):
    comps = [sum(site(s, i, n) for i in subset) for s in (SX, SY, SZ)]
    return sum(c @ c for c in comps)


def vec(x):
    return np.array(x.to_floats())


# -- basics -------------------------------------------------------------------


def test_basis_order():
    assert [pattern_of(i, 3) for i in range(8)] == ["uuu", "uud", "udu", "udd", "duu", "dud", "ddu", "ddd"]
    assert index_of("dud") == 5
    assert basis("udu").amps[2] == ONE


def test_tensor_order():
    x = tensor(basis("u"), basis("d"))
    assert x == basis("ud")


def test_inner_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        inner(basis("uu"), basis("uuu"))


def test_pair_dot_same_particle():
    with pytest.raises(SameParticle):
        pair_dot(2, 2, basis("uuu"))


def test_normalize_errors():
    with pytest.raises(ZeroState):
        normalize(SpinState.zero(2))
    # norm^2 = 5 has no square root in the field
    five = SpinState.from_terms({p: 1 for p in ("uuu", "uud", "udu", "udd", "duu")})
    with pytest.raises(NormOutsideField):
        normalize(five)


def test_normalize_exact():
    x = normalize(SpinState.from_terms({"ud": 1, "du": -1}))
    assert x.amplitude("ud") == inv_sqrt(2)
    assert x.normalized


def test_permutation_string_and_parity():
    assert str(Permutation.swap(1, 3)) == "(13)"
    assert [p.parity for p in transpositions(3)] == [-1, -1, -1]
    assert sum(p.parity for p in Permutation.all(3)) == 0


# -- against the Pauli oracle -------------------------------------------------


@pytest.mark.parametrize("subset", [(1,), (1, 2), (2, 3), (1, 3), (1, 2, 3)])
@given(x=spin_states())
def test_s_squared_matches_oracle(subset, x):
    assert np.allclose(vec(s_squared(subset, x)), (total_spin_sq(subset, 3) @ vec(x)).real, atol=1e-12)


@given(x=spin_states())
def test_lowering_matches_oracle(x):
    op = sum(site(LOWER, i, 3) for i in (1, 2, 3))
    assert np.allclose(vec(apply_ladder("lower", (1, 2, 3), x)), (op @ vec(x)).real, atol=1e-12)
    assert np.allclose(vec(apply_ladder("raise", (1, 2, 3), x)), (op.T @ vec(x)).real, atol=1e-12)


@given(x=spin_states())
def test_swap_matches_oracle(x):
    swap12 = np.kron(SWAP, np.eye(2)).real
    swap23 = np.kron(np.eye(2), SWAP).real
    assert np.allclose(vec(permute(Permutation.swap(1, 2), x)), swap12 @ vec(x))
    assert np.allclose(vec(permute(Permutation.swap(2, 3), x)), swap23 @ vec(x))
    swap13 = swap12 @ swap23 @ swap12
    assert np.allclose(vec(permute(Permutation.swap(1, 3), x)), swap13 @ vec(x))


# -- algebraic invariants ----------------------------------------------------


@given(x=spin_states())
def test_ladder_commutator(x):
    full = (1, 2, 3)
    up_down = apply_ladder("raise", full, apply_ladder("lower", full, x))
    down_up = apply_ladder("lower", full, apply_ladder("raise", full, x))
    assert up_down - down_up == apply_sz(full, x).scale(2)


@given(x=spin_states())
def test_s_squared_commutes_with_lowering_and_sz(x):
    full = (1, 2, 3)
    assert s_squared(full, apply_ladder("lower", full, x)) == apply_ladder("lower", full, s_squared(full, x))
    assert s_squared(full, apply_sz(full, x)) == apply_sz(full, s_squared(full, x))


@given(x=spin_states(), pi=permutations(), sigma=permutations())
def test_group_action(x, pi, sigma):
    assert permute(pi, permute(sigma, x)) == permute(pi.compose(sigma), x)
    assert permute(pi.inverse(), permute(pi, x)) == x


@given(x=spin_states(), y=spin_states(), pi=permutations())
def test_permutation_is_orthogonal(x, y, pi):
    assert inner(permute(pi, x), permute(pi, y)) == inner(x, y)


@given(x=spin_states(), pi=permutations())
def test_s_squared_is_permutation_invariant(x, pi):
    full = (1, 2, 3)
    assert permute(pi, s_squared(full, x)) == s_squared(full, permute(pi, x))


@given(x=spin_states())
def test_projectors(x):
    sym = projector("symmetrizer", x)
    assert projector("symmetrizer", sym) == sym
    assert projector("antisymmetrizer", x).is_zero()
    for pi in Permutation.all(3):
        assert permute(pi, sym) == sym


@given(x=spin_states(n=2))
def test_two_spin_antisymmetrizer_is_singlet_projector(x):
    anti = projector("antisymmetrizer", x)
    assert projector("antisymmetrizer", anti) == anti
    assert s_squared((1, 2), anti).is_zero()


@given(k=scalars(), x=spin_states(), y=spin_states())
def test_linearity(k, x, y):
    assert s_squared((1, 2, 3), x.scale(k) + y) == s_squared((1, 2, 3), x).scale(k) + s_squared((1, 2, 3), y)


# -- the pairwise sum against brute-force expansion ---------------------------


def _expand(x, i, j):
    """Swap the letters of particles i and j in every basis pattern."""
    out = {}
    for p, a in x.terms().items():
        q = list(p)
        q[i - 1], q[j - 1] = q[j - 1], q[i - 1]
        out["".join(q)] = a
    return SpinState.from_terms(out, x.n)


@given(x=spin_states())
def test_pairwise_sum_brute_force(x):
    variants = (x, _expand(x, 2, 3), _expand(x, 1, 3))
    got = pairwise_sum(variants)
    brute = {}
    for v in variants:
        for p, a in v.terms().items():
            brute[p] = brute.get(p, QuadraticScalar(0)) + a * inv_sqrt(3)
    assert got == SpinState.from_terms(brute, 3)


def test_pairwise_sum_arity():
    with pytest.raises(ValueError):
        pairwise_sum((basis("uuu"), basis("uuu")))


def test_sz_values():
    assert apply_sz((1, 2, 3), basis("uud")) == basis("uud").scale(Fraction(1, 2))
    assert apply_sz((3,), basis("uud")) == basis("uud").scale(Fraction(-1, 2))
