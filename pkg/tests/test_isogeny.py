from collections import Counter
from fractions import Fraction

import pytest

from isogeny_sums.arithmetic.modular import (
    FieldElement,
    legendre,
    primes_between,
    to_field,
)
from isogeny_sums.curves.isogeny import (
    KERNEL_POINT,
    Direction,
    PairingFunctions,
    TwoIsogenyPair,
    apply_tau,
    apply_tau_hat,
    chi_tau,
    chi_tau_hat,
    image_oracle,
    normal_form_from_root,
    tate_pairing_tau,
    tate_pairing_tau_hat,
    tau_hat_image,
    tau_image,
    weight_center,
)
from isogeny_sums.curves.weierstrass import (
    INFINITY,
    CubicCurve,
    CurvePoint,
    enumerate_points,
    good_reduction_pair,
    negate,
    point_count,
    two_torsion,
)
from isogeny_sums.exceptions import (
    BadReductionError,
    NoAuxiliaryPointError,
    NotPrimeError,
    PointNotOnCurveError,
)


def good_pairs(p: int, bound: int = 5):
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            if good_reduction_pair(a, b, p):
                yield TwoIsogenyPair.from_integers(a, b, p)


def test_pair_construction(pair_2_minus1_11):
    iso = pair_2_minus1_11
    assert iso.r == FieldElement(8, 11)
    assert iso.E2 == CubicCurve.from_coefficients(-4, 8, 0, 11)
    assert iso.T1 == iso.T2 == KERNEL_POINT


def test_bad_reduction_rejected():
    with pytest.raises(BadReductionError):
        TwoIsogenyPair.from_integers(2, 1, 11)
    with pytest.raises(BadReductionError):
        TwoIsogenyPair(FieldElement(4, 11), FieldElement(4, 11))
    with pytest.raises(ValueError):
        TwoIsogenyPair(FieldElement(1, 7), FieldElement(1, 11))


def test_kernel_maps_to_infinity(pair_2_minus1_11):
    iso = pair_2_minus1_11
    assert apply_tau(iso, INFINITY) == INFINITY
    assert apply_tau(iso, iso.T1) == INFINITY
    assert apply_tau_hat(iso, iso.T2) == INFINITY


def test_tau_rejects_points_off_the_curve(pair_2_minus1_11):
    with pytest.raises(PointNotOnCurveError):
        apply_tau(pair_2_minus1_11, CurvePoint(1, 1))


def test_tau_is_two_to_one(pair_2_minus1_11):
    iso = pair_2_minus1_11
    fibres = Counter(apply_tau(iso, P) for P in enumerate_points(iso.E1))
    assert set(fibres.values()) == {2}
    assert point_count(iso.E1) == point_count(iso.E2)


def test_kernel_point_character(pair_2_minus1_11):
    iso = pair_2_minus1_11
    assert chi_tau(iso, iso.T2) == legendre(iso.r) == -1
    assert chi_tau(iso, INFINITY) == 1
    assert chi_tau_hat(iso, iso.T1) == legendre(iso.b) == -1


def test_minus2_translate_at_11():
    """(a, b) = (2, 1/2) mod 11 is the translate of y^2 = (x + 2)(x^2 - 2)."""
    iso = TwoIsogenyPair(to_field(2, 11), to_field(Fraction(1, 2), 11))
    assert tau_image(iso) == {INFINITY, CurvePoint(9, 4), CurvePoint(9, 7)}
    expected = {(9, 4): 1, (9, 7): 1, (10, 2): -1, (10, 9): -1, (0, 0): -1}
    for (x, y), sign in expected.items():
        P = CurvePoint(x, y)
        assert chi_tau(iso, P) == sign
        assert image_oracle(iso, Direction.FORWARD, P) == sign


@pytest.mark.parametrize("p", primes_between(5, 23))
def test_characters_match_images(p):
    for iso in good_pairs(p, bound=3):
        for P in enumerate_points(iso.E2):
            assert chi_tau(iso, P) == image_oracle(iso, Direction.FORWARD, P)
        for P in enumerate_points(iso.E1):
            assert chi_tau_hat(iso, P) == image_oracle(iso, Direction.DUAL, P)


@pytest.mark.slow
def test_characters_match_images_grid():
    for p in primes_between(29, 97):
        for iso in good_pairs(p):
            for P in enumerate_points(iso.E2):
                assert chi_tau(iso, P) == image_oracle(iso, Direction.FORWARD, P)
            for P in enumerate_points(iso.E1):
                assert chi_tau_hat(iso, P) == image_oracle(iso, "dual", P)


@pytest.mark.parametrize("p", primes_between(5, 47))
def test_character_is_balanced(p):
    for iso in good_pairs(p, bound=2):
        assert sum(chi_tau(iso, P) for P in enumerate_points(iso.E2)) == 0
        assert 2 * len(tau_image(iso)) == point_count(iso.E2)
        assert 2 * len(tau_hat_image(iso)) == point_count(iso.E1)
        assert (iso.T2 in tau_image(iso)) == (legendre(iso.r) == 1)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17])
def test_pairing_functions_factor_through(p):
    for iso in good_pairs(p, bound=3):
        assert PairingFunctions(iso).factors_through()


def test_pairing_off_and_on_the_support(pair_2_minus1_11):
    iso = pair_2_minus1_11
    for S in enumerate_points(iso.E2):
        assert tate_pairing_tau(iso, S, 0) == 1
        if not S.is_infinity and S.x != 0:
            assert tate_pairing_tau(iso, S, 1) == legendre(FieldElement(S.x, 11))
    assert tate_pairing_tau(iso, iso.T2, 1) == legendre(iso.r)
    assert tate_pairing_tau(iso, INFINITY, 1) == 1
    assert tate_pairing_tau_hat(iso, iso.T1, 1) == legendre(iso.b)


@pytest.mark.parametrize("p", [7, 11, 13, 17, 19])
def test_pairing_agrees_with_character(p):
    for iso in good_pairs(p, bound=3):
        for S in enumerate_points(iso.E2):
            assert tate_pairing_tau(iso, S, 1) == chi_tau(iso, S)
            assert tate_pairing_tau(iso, S, 1, aux_index=1) == chi_tau(iso, S)
        for S in enumerate_points(iso.E1):
            assert tate_pairing_tau_hat(iso, S, 1) == chi_tau_hat(iso, S)


def test_pairing_bad_arguments(pair_2_minus1_11, tiny_pair):
    with pytest.raises(ValueError):
        tate_pairing_tau(pair_2_minus1_11, INFINITY, 2)
    assert list(enumerate_points(tiny_pair.E2)) == [INFINITY, KERNEL_POINT]
    with pytest.raises(NoAuxiliaryPointError):
        tate_pairing_tau(tiny_pair, tiny_pair.T2, 1)
    assert chi_tau(tiny_pair, tiny_pair.T2) == -1


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_normal_form_of_own_codomain(p):
    for iso in good_pairs(p, bound=3):
        assert normal_form_from_root(iso.E2, FieldElement(0, p)) == (iso.a, iso.b)


def test_normal_form_of_minus2_curve():
    E = CubicCurve.from_coefficients(2, -2, -4, 11)
    a, b = normal_form_from_root(E, FieldElement(-2, 11))
    assert (a.residue, b.residue) == (2, 6)
    with pytest.raises(PointNotOnCurveError):
        normal_form_from_root(E, FieldElement(1, 11))


def test_weight_center():
    assert weight_center(TwoIsogenyPair.from_integers(2, -1, 11)) is None
    iso = TwoIsogenyPair.from_integers(2, -1, 13)
    low, high = weight_center(iso)
    assert (low.residue, high.residue) == (5, 12)
    assert {CurvePoint(low.residue, 0), CurvePoint(high.residue, 0)} <= set(
        two_torsion(iso.E2)
    )
    assert (low + high) / 2 == iso.a


def test_pair_needs_prime_modulus():
    with pytest.raises(NotPrimeError):
        TwoIsogenyPair.from_integers(2, -1, 25)
    with pytest.raises(NotPrimeError):
        TwoIsogenyPair.from_integers(2, -1, 3)
    with pytest.raises(NotPrimeError):
        TwoIsogenyPair(FieldElement(2, 9), FieldElement(-1, 9))


@pytest.mark.parametrize("p", primes_between(5, 200))
def test_characters_are_even(p):
    for iso in good_pairs(p, bound=3):
        for P in enumerate_points(iso.E2):
            assert chi_tau(iso, P) * chi_tau(iso, negate(P, p)) == 1
        for Q in enumerate_points(iso.E1):
            assert chi_tau_hat(iso, Q) * chi_tau_hat(iso, negate(Q, p)) == 1


@pytest.mark.parametrize("p", primes_between(5, 200))
def test_isogenous_curves_have_equal_counts(p):
    for iso in good_pairs(p, bound=4):
        assert point_count(iso.E1) == point_count(iso.E2), (iso.a, iso.b)


@pytest.mark.slow
def test_isogenous_curves_have_equal_counts_up_to_500():
    for p in primes_between(200, 500):
        for iso in good_pairs(p, bound=6):
            assert point_count(iso.E1) == point_count(iso.E2), (iso.a, iso.b)
