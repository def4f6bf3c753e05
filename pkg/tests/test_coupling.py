from fractions import Fraction

import numpy as np
import pytest
from sympy import Rational
from sympy.physics.quantum.cg import CG

from spinforge.coupling import (
    HALF,
    MultipletLabel,
    doublets_sprime0,
    doublets_sprime1,
    is_sz_eigenstate,
    ladder_coefficient,
    literal_eq20,
    literal_symmetrized_variants,
    parity_table,
    quadruplet,
    three_electron_basis,
    two_electron_basis,
    verify_quantum_numbers,
)
from spinforge.radical import ONE, SQRT3, ZERO, QuadraticScalar, inv_sqrt
from spinforge.spin import Permutation, SpinState, basis, inner, permute, projector

R2, R3, R6 = inv_sqrt(2), inv_sqrt(3), inv_sqrt(6)

# Amplitudes as printed, typed in by hand (particle 1 first, u = +1/2).
PRINTED_TWO = [
    {"uu": ONE},
    {"ud": R2, "du": R2},
    {"dd": ONE},
    {"ud": R2, "du": -R2},
]
PRINTED_THREE = [
    {"uuu": ONE},
    {"duu": R3, "udu": R3, "uud": R3},
    {"ddu": R3, "dud": R3, "udd": R3},
    {"ddd": ONE},
    {"uud": 2 * R6, "udu": -R6, "duu": -R6},
    {"udd": R6, "dud": R6, "ddu": -2 * R6},
    {"udu": R2, "duu": -R2},
    {"udd": R2, "dud": -R2},
]


def test_two_electron_states_exact():
    for got, want in zip(two_electron_basis(), PRINTED_TWO):
        assert got.state == SpinState.from_terms(want, 2)


def test_three_electron_states_exact():
    states = three_electron_basis()
    assert len(states) == 8
    for got, want in zip(states, PRINTED_THREE):
        assert got.state == SpinState.from_terms(want, 3)


def test_labels():
    labels = [str(s.label) for s in three_electron_basis()]
    assert labels == [
        "chi(1,3/2,3/2)",
        "chi(1,3/2,1/2)",
        "chi(1,3/2,-1/2)",
        "chi(1,3/2,-3/2)",
        "chi(1,1/2,1/2)",
        "chi(1,1/2,-1/2)",
        "chi(0,1/2,1/2)",
        "chi(0,1/2,-1/2)",
    ]
    assert str(two_electron_basis()[3].label) == "chi(0,0)"


@pytest.mark.parametrize(
    "args",
    [(2, HALF, HALF), (0, Fraction(3, 2), HALF), (1, HALF, Fraction(3, 2)), (1, HALF, Fraction(0))],
)
def test_label_validation(args):
    with pytest.raises(ValueError):
        MultipletLabel(*args)


@pytest.mark.parametrize("state", two_electron_basis() + three_electron_basis(), ids=lambda s: str(s.label))
def test_quantum_numbers(state):
    checks = verify_quantum_numbers(state)
    assert checks and all(c.passed for c in checks)


def test_ladder_factors():
    q = quadruplet()
    assert q.ladder_factors == (SQRT3, QuadraticScalar(2), SQRT3)
    j = Fraction(3, 2)
    assert [ladder_coefficient(j, m) for m in (j, HALF, -HALF)] == list(q.ladder_factors)


def test_gram_and_completeness():
    states = [s.state for s in three_electron_basis()]
    for i, x in enumerate(states):
        for j, y in enumerate(states):
            assert inner(x, y) == (ONE if i == j else ZERO)
    # resolution of the identity, column by column
    for idx in range(8):
        e = SpinState(3, tuple(ONE if k == idx else ZERO for k in range(8)))
        rebuilt = SpinState.zero(3)
        for x in states:
            rebuilt = rebuilt + x.scale(inner(x, e))
        assert rebuilt == e


def test_doublets_against_clebsch_gordan():
    """Couple pair spin S'=1 (or 0) with particle 3 using sympy's tables."""
    pair = {
        (1, 1): {"uu": 1},
        (1, 0): {"ud": 1 / np.sqrt(2), "du": 1 / np.sqrt(2)},
        (1, -1): {"dd": 1},
        (0, 0): {"ud": 1 / np.sqrt(2), "du": -1 / np.sqrt(2)},
    }
    single = {Rational(1, 2): "u", Rational(-1, 2): "d"}
    states = doublets_sprime1() + doublets_sprime0()
    for ls in states:
        sp, M = ls.label.s_prime, Rational(ls.label.m.numerator, ls.label.m.denominator)
        vec = np.zeros(8)
        for (s, m1), amps in pair.items():
            if s != sp:
                continue
            for m2, letter in single.items():
                c = float(CG(sp, m1, Rational(1, 2), m2, Rational(1, 2), M).doit())
                for p, a in amps.items():
                    vec[int((p + letter).replace("u", "0").replace("d", "1"), 2)] += c * a
        got = np.array(ls.state.to_floats())
        assert np.allclose(got, vec, atol=1e-12) or np.allclose(got, -vec, atol=1e-12)


def test_quadruplet_fixed_by_every_permutation():
    for member in quadruplet().states:
        for pi in Permutation.all(3):
            assert permute(pi, member.state) == member.state


def test_symmetrizer_rank_four_and_antisymmetrizer_zero():
    images = []
    for idx in range(8):
        e = SpinState(3, tuple(ONE if k == idx else ZERO for k in range(8)))
        images.append(projector("symmetrizer", e).to_floats())
        assert projector("antisymmetrizer", e).is_zero()
    assert np.linalg.matrix_rank(np.array(images)) == 4


# -- pairwise-sum audit -------------------------------------------------------


def _records():
    return {r.equation: r for r in literal_symmetrized_variants()}


def test_sprime1_pairwise_sums_vanish():
    recs = _records()
    for eq in ("Eq. (28)", "Eq. (31)"):
        assert recs[eq].is_zero
        assert recs[eq].norm2 == ZERO


def test_sprime0_pairwise_sums():
    recs = _records()
    # frozen: (2/sqrt6)(udu - duu), norm^2 = 4/3
    assert recs["Eq. (33)"].result == SpinState.from_terms({"udu": 2 * R6, "duu": -2 * R6})
    assert recs["Eq. (35)"].result == SpinState.from_terms({"udd": 2 * R6, "dud": -2 * R6})
    for eq in ("Eq. (33)", "Eq. (35)"):
        rec = recs[eq]
        assert rec.norm2 == QuadraticScalar(4, den=3)
        assert not rec.is_normalized
        assert set(rec.parity.values()) != {-1}
        assert rec.verdict() == "neither"
        assert rec.alternating is not None


def test_alternating_variant_frozen():
    rec = _records()["Eq. (33)"]
    assert rec.alternating_norm2 == QuadraticScalar(4, den=3)
    assert rec.verdict(rec.alternating_parity) != "fully_antisymmetric"


def test_printed_eq20_is_a_misprint():
    lit = literal_eq20()
    assert lit != quadruplet().states[1].state
    assert not is_sz_eigenstate(lit)
    assert lit.norm2() == ONE


def test_parity_table_keys():
    assert parity_table(basis("uuu")) == {"(12)": 1, "(13)": 1, "(23)": 1}
    assert parity_table(doublets_sprime0()[0].state)["(12)"] == -1
