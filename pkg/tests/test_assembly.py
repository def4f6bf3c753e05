from fractions import Fraction

import pytest
from hypothesis import given

from spinforge.assembly import (
    ASCENDING_PAIRS,
    CYCLIC_PAIRS,
    TotalState,
    assemble,
    combine,
    pauli_parity_report,
    spin_as_total,
    total_inner,
    total_permute,
)
from spinforge.coupling import permutation_eigenvalue, three_electron_basis
from spinforge.errors import DimensionMismatch, LabelPatternMismatch, ZeroState
from spinforge.orbital import SpaceState, slater_determinant, space_inner, space_permute, symmetric_space
from spinforge.radical import ONE, QuadraticScalar
from spinforge.spin import Permutation, basis, inner

from conftest import permutations, spin_states

HALF = Fraction(1, 2)


def brute_swap(x: TotalState, i: int, j: int) -> TotalState:
    """Exchange both coordinates of particles i and j term by term."""
    out = {}
    for (orbs, pat), a in x.terms.items():
        o, p = list(orbs), list(pat)
        o[i - 1], o[j - 1] = o[j - 1], o[i - 1]
        p[i - 1], p[j - 1] = p[j - 1], p[i - 1]
        out[(tuple(o), "".join(p))] = a
    return TotalState(x.n_particles, out)


def brute_verdict(x: TotalState) -> str:
    signs = set()
    for i, j in ((1, 2), (1, 3), (2, 3)):
        y = brute_swap(x, i, j)
        signs.add(1 if y == x else (-1 if y == -x else None))
    if signs == {1}:
        return "fully_symmetric"
    if signs == {-1}:
        return "fully_antisymmetric"
    return "neither"


CASES = {
    "a+": ("a", "nnn", HALF),
    "a-": ("a", "nnn", -HALF),
    "b+": ("b", "nml", HALF),
    "b-": ("b", "nml", -HALF),
    "c_u": ("c", "nnl", "u"),
    "c_d": ("c", "nnl", "d"),
    "d3/2": ("d", "nml", Fraction(3, 2)),
    "d1/2": ("d", "nml", HALF),
    "d-1/2": ("d", "nml", -HALF),
    "d-3/2": ("d", "nml", Fraction(-3, 2)),
}
EXPECTED = {
    "a": "neither",
    "b": "neither",
    "c": "fully_antisymmetric",
    "d": "fully_antisymmetric",
}


@pytest.mark.parametrize("name", list(CASES))
def test_parity_verdicts_match_brute_force(name):
    case, labels, choice = CASES[name]
    x = assemble(case, labels, choice)
    report = pauli_parity_report(x)
    assert report.verdict == brute_verdict(x) == EXPECTED[case]


def test_ascending_pair_orientation_is_not_antisymmetric():
    x = assemble("c", "nnl", "u", pairs=ASCENDING_PAIRS)
    assert pauli_parity_report(x).verdict == "neither"
    assert brute_verdict(x) == "neither"
    assert pauli_parity_report(x).describe().endswith("-> neither")


def test_pair_singlet_sum_normalized():
    for spin3 in "ud":
        x = assemble("c", "nnl", spin3, pairs=CYCLIC_PAIRS)
        assert x.norm2() == ONE


def test_slater_times_quadruplet_normalized():
    for m in ("3/2", "1/2", "-1/2", "-3/2"):
        assert assemble("d", "nml", m).norm2() == ONE


def test_case_a_product_terms():
    x = assemble("a", "nnn", HALF)
    assert {orbs for orbs, _ in x.terms} == {("n", "n", "n")}
    assert x.norm2() == QuadraticScalar(4, den=3)


@pytest.mark.parametrize("case, labels", [("a", "nml"), ("b", "nnl"), ("c", "nml"), ("d", "nnn")])
def test_label_pattern_mismatch(case, labels):
    with pytest.raises(LabelPatternMismatch):
        assemble(case, labels)


def test_bad_case_and_spin_choice():
    with pytest.raises(ValueError):
        assemble("e", "nml")
    with pytest.raises(ValueError):
        assemble("c", "nnl", HALF)


def test_zero_state_parity():
    with pytest.raises(ZeroState):
        pauli_parity_report(TotalState(3, {}))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        combine(SpaceState.product("nn"), basis("uuu"))


def test_dump_format():
    x = combine(SpaceState.product("nml"), basis("uud"))
    assert x.dump() == "(1 0 0 0)/1 (n,m,l) uud"


@given(spin_states(), spin_states())
def test_combine_factorizes_inner(x, y):
    space = symmetric_space("nnl")
    other = slater_determinant("nml")
    assert total_inner(combine(space, x), combine(space, y)) == space_inner(space, space) * inner(x, y)
    assert total_inner(combine(space, x), combine(other, y)).is_zero()


@given(spin_states(), permutations(), permutations())
def test_total_permute_group_action(x, pi, sigma):
    t = combine(slater_determinant("nml"), x)
    assert total_permute(pi, total_permute(sigma, t)) == total_permute(pi.compose(sigma), t)


@given(spin_states(), permutations())
def test_total_permute_matches_brute_swaps(x, pi):
    t = combine(SpaceState.product("nml"), x) + spin_as_total(x)
    for i, j in ((1, 2), (1, 3), (2, 3)):
        assert total_permute(Permutation.swap(i, j), t) == brute_swap(t, i, j)



def test_parity_factorizes_over_space_and_spin():
    """Whenever both factors are pi-eigenstates, the product's eigenvalue is the product."""
    spaces = [symmetric_space("nnl"), symmetric_space("nml"), slater_determinant("nml")]
    spins = [s.state for s in three_electron_basis()]
    checked = 0
    for pi in Permutation.all(3):
        for space in spaces:
            moved = space_permute(pi, space)
            s_sign = 1 if moved == space else (-1 if moved == -space else None)
            for spin in spins:
                x_sign = permutation_eigenvalue(pi, spin)
                if s_sign is None or x_sign is None:
                    continue
                t = combine(space, spin)
                assert total_permute(pi, t) == t.scale(s_sign * x_sign)
                checked += 1
    assert checked > 50
