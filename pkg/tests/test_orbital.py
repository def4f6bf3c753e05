import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spinforge.errors import DimensionMismatch, GridMismatch
from spinforge.orbital import (
    SpaceState,
    eq38_literal,
    gaussian_family,
    gaussian_orbital,
    grid_overlap,
    multiplicity_case,
    overlap_threshold,
    separation_scan,
    slater_determinant,
    space_inner,
    space_permute,
    space_symmetrizer,
    symmetric_space,
    trapezoid_weights,
)
from spinforge.radical import ONE, inv_sqrt
from spinforge.spin import Permutation, transpositions

from conftest import permutations, scalars

LABELS = st.sampled_from("nml")


@st.composite
def space_states(draw):
    terms = {}
    for _ in range(draw(st.integers(0, 5))):
        terms[tuple(draw(LABELS) for _ in range(3))] = draw(scalars())
    return SpaceState(3, terms)


# -- abstract orbitals --------------------------------------------------------


def test_symmetric_space_weights():
    assert symmetric_space("nnn").terms == {("n", "n", "n"): ONE}
    assert set(symmetric_space("nnl").terms.values()) == {inv_sqrt(3)}
    assert len(symmetric_space("nml").terms) == 6
    assert set(symmetric_space("nml").terms.values()) == {inv_sqrt(6)}
    for labels in ("nnn", "nnl", "nml"):
        x = symmetric_space(labels)
        assert space_inner(x, x) == ONE


def test_eq38_literal_is_not_symmetric():
    lit = eq38_literal("n", "m", "l")
    assert lit != symmetric_space("nnl")
    assert space_symmetrizer(lit) != lit


def test_slater_determinant():
    x = slater_determinant("nml")
    assert space_inner(x, x) == ONE
    assert x.terms[("n", "m", "l")] == inv_sqrt(6)
    assert x.terms[("m", "n", "l")] == -inv_sqrt(6)
    for pi in transpositions(3):
        assert space_permute(pi, x) == -x


@pytest.mark.parametrize("labels", ["nnl", "nln", "lnn", "nnn"])
def test_slater_vanishes_on_repeats(labels):
    x = slater_determinant(labels)
    assert x.is_zero()
    assert x.pauli_excluded


def test_multiplicity_case():
    assert multiplicity_case("nnn") == "all_equal"
    assert multiplicity_case("nln") == "two_equal"
    assert multiplicity_case("nml") == "all_distinct"
    with pytest.raises(ValueError):
        multiplicity_case("nm")


def test_space_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        space_inner(SpaceState.product("nn"), SpaceState.product("nnn"))


@given(space_states())
def test_symmetrizer_idempotent(x):
    s = space_symmetrizer(x)
    assert space_symmetrizer(s) == s
    for pi in Permutation.all(3):
        assert space_permute(pi, s) == s


@given(space_states(), space_states(), permutations())
def test_permutation_preserves_inner(x, y, pi):
    assert space_inner(space_permute(pi, x), space_permute(pi, y)) == space_inner(x, y)


@given(space_states())
def test_relabel_roundtrip(x):
    swap = {"n": "m", "m": "n"}
    assert x.relabel(swap).relabel(swap) == x


# -- grid orbitals -------------------------------------------------------------


def test_trapezoid_weights():
    w = trapezoid_weights(5, 0.5)
    assert w.tolist() == [0.25, 0.5, 0.5, 0.5, 0.25]


def test_grid_mismatch():
    a = gaussian_orbital(0.0, 1.0, -8.0, 0.1, 100)
    b = gaussian_orbital(0.0, 1.0, -8.0, 0.2, 100)
    with pytest.raises(GridMismatch):
        grid_overlap(a, b)


@given(
    st.floats(0.5, 2.0),
    st.floats(0.0, 12.0),
)
def test_overlap_closed_form(sigma, d_units):
    fam = gaussian_family(sigma, 12 * sigma)
    d = d_units * sigma
    assert abs(grid_overlap(fam(0.0), fam(d)) - math.exp(-(d * d) / (4 * sigma * sigma))) < 1e-6


def test_overlap_threshold():
    assert overlap_threshold(1.0) == pytest.approx(2 * math.sqrt(8 * math.log(10)))
    assert overlap_threshold(1.0) == pytest.approx(8.583864, abs=1e-6)


def test_scan_validation():
    fam = gaussian_family(1.0, 4.0)
    with pytest.raises(ValueError):
        separation_scan(fam, [0.0, -1.0])
    with pytest.raises(ValueError):
        separation_scan(fam, [2.0, 1.0])


@pytest.fixture(scope="module")
def scan():
    return separation_scan(gaussian_family(1.0, 12.0), [float(d) for d in range(13)])


def test_schmidt_closed_form(scan):
    for row in scan:
        s = math.exp(-row.d**2 / 4)
        norm = math.sqrt(2 * (1 + s * s))
        assert row.symmetric.sv1 == pytest.approx((1 + s) / norm, abs=1e-6)
        assert row.symmetric.sv2 == pytest.approx((1 - s) / norm, abs=1e-6)
        assert row.symmetric.sv3plus < 1e-9
        if row.d > 0:
            assert row.antisymmetric.sv1 == pytest.approx(math.sqrt(0.5), abs=1e-6)
            assert row.antisymmetric.sv2 == pytest.approx(math.sqrt(0.5), abs=1e-6)


def test_antisymmetric_branch_vanishes_at_zero(scan):
    assert scan[0].antisymmetric.vanishes
    assert math.isnan(scan[0].antisymmetric.p_same)
    assert scan[0].symmetric.p_same == 1.0


def test_p_same_against_normal_cdf(scan):
    """|phi|^2 is normal with std sigma/sqrt2; the midplane splits it at d/2."""
    for row in scan[1:]:
        s2 = math.exp(-row.d**2 / 2)
        a = 0.5 * (1 + math.erf(row.d / 2))
        for sign, branch in ((1, row.symmetric), (-1, row.antisymmetric)):
            expected = (4 * a * (1 - a) + sign * s2) / (2 * (1 + sign * s2))
            assert branch.p_same == pytest.approx(expected, abs=5e-5)


def test_full_svd_oracle_on_small_grid():
    """Dense SVD of the whole discretized amplitude matrix, coarse grid."""
    sigma, dmax, step = 1.0, 3.0, 0.25
    fam = gaussian_family(sigma, dmax, step)
    rows = separation_scan(fam, [0.0, 1.5, 3.0])
    for row in rows:
        a, b = fam(0.0), fam(row.d)
        sw = np.sqrt(trapezoid_weights(len(a.samples), step))
        m = np.outer(sw * a.samples, sw * b.samples) + np.outer(sw * b.samples, sw * a.samples)
        sv = np.linalg.svd(m / np.linalg.norm(m), compute_uv=False)
        assert row.symmetric.sv1 == pytest.approx(sv[0], abs=1e-12)
        assert row.symmetric.sv2 == pytest.approx(sv[1], abs=1e-12)
        assert row.symmetric.sv3plus == pytest.approx(math.sqrt(np.sum(sv[2:] ** 2)), abs=1e-7)


def test_singular_values_sum_to_one(scan):
    for row in scan:
        spec = row.symmetric
        assert spec.sv1**2 + spec.sv2**2 + spec.sv3plus**2 == pytest.approx(1.0, abs=1e-12)
