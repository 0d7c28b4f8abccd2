import logging

import pytest

from isogeny_sums.arithmetic.classnumber import hp_star
from isogeny_sums.arithmetic.modular import legendre_symbol, primes_between
from isogeny_sums.curves.weierstrass import good_reduction_pair
from isogeny_sums.exceptions import (
    AEvenError,
    BadReductionError,
    KDivisibleByPError,
    NotPrimeError,
)
from isogeny_sums.sums.charsums import (
    delta,
    dirichlet_hstar,
    dirichlet_report,
    dirichlet_sum,
    dual_error_bound,
    error_bound,
    error_R,
    error_R_hat,
    half_interval_sum,
    legendre_prefix_sum,
    lemma_report,
    quad_lemma_sum,
    rho_hat,
    rho_hat_correction,
    s_tau,
    s_tau_hat,
    weight_shift_sum,
)
from isogeny_sums.utilities.logger import get_logger

PRIMES = primes_between(5, 200)


@pytest.mark.parametrize("p, expected", [(5, 0), (7, 1), (11, 1), (13, 0), (23, 3)])
def test_dirichlet_hstar(p, expected):
    assert dirichlet_hstar(p) == expected
    assert dirichlet_report(p).ok


def test_dirichlet_sum_at_11():
    assert dirichlet_sum(11) == -11


def test_delta():
    assert delta(1, 7) == 1
    assert delta(2, 5) == 0
    assert delta(-1, 13) == 1
    assert delta(-1, 11) == 0
    with pytest.raises(KDivisibleByPError):
        delta(14, 7)


def test_legendre_prefix_sum():
    assert legendre_prefix_sum(0, 7) == 0
    assert legendre_prefix_sum(3, 7) == 1
    assert legendre_prefix_sum(3, 7, sign=-1) == -1
    assert legendre_prefix_sum(200, 211) == sum(
        legendre_symbol(x, 211) for x in range(1, 201)
    )


@pytest.mark.parametrize(
    "k, p, expected", [(1, 5, -5), (-1, 7, 0), (2, 5, 0), (2, 7, -7)]
)
def test_quad_lemma_small(k, p, expected):
    assert quad_lemma_sum(k, p) == expected


@pytest.mark.parametrize("p", PRIMES[:20])
def test_quad_lemma_all_k(p):
    for k in range(1, p):
        assert quad_lemma_sum(k, p) == -p * delta(k, p)
    assert lemma_report(p).ok


def test_quad_lemma_rejects_multiple_of_p():
    with pytest.raises(KDivisibleByPError):
        quad_lemma_sum(5, 5)


@pytest.mark.parametrize("p", PRIMES)
def test_weight_shift_sum(p):
    for a, b in [(2, -1), (3, 2), (-4, 5), (0, 1)]:
        if b % p:
            assert weight_shift_sum(a, b, p) == -p * delta(-b, p)


def test_s_tau_small_cases():
    report = s_tau(2, -1, 11)
    assert (report.S, report.quotient, report.hstar, report.error) == (-11, 1, 1, 0)
    assert report.ok
    assert s_tau(3, -1, 7).error == -1
    assert s_tau(3, -1, 7).ok


def test_s_tau_bad_reduction():
    with pytest.raises(BadReductionError):
        s_tau(2, 1, 11)
    with pytest.raises(BadReductionError):
        error_R(7, 2, 41)


def test_error_R_values():
    assert error_R(7, 2, 5) == -1
    assert error_R(7, 2, 7) == 0
    assert error_R(3, -1, 7) == -1


@pytest.mark.parametrize("p", PRIMES)
def test_error_R_closed_forms(p):
    assert error_R(2, -1, p) == 0
    if p != 13:
        assert error_R(3, -1, p) == -legendre_symbol(2, p)
    assert error_R(0, 1, p) == delta(-1, p)
    assert error_R_hat(2, -1, p) == delta(-8, p) + legendre_symbol(-1, p)


@pytest.mark.parametrize("p", PRIMES)
def test_main_identity_examples(p):
    for a, b in [(2, -1), (3, -1), (1, 3), (-3, 2), (4, -7)]:
        if good_reduction_pair(a, b, p):
            report = s_tau(a, b, p)
            assert report.ok, report
            assert report.quotient == hp_star(p) + error_R(a, b, p)


@pytest.mark.parametrize("p", PRIMES)
def test_dual_identity_examples(p):
    for a, b in [(2, -1), (0, -1), (3, 5), (-2, 3)]:
        if good_reduction_pair(a, b, p):
            report = s_tau_hat(a, b, p)
            assert report.kind == "dual"
            assert report.ok, report


@pytest.mark.parametrize(
    "p, expected", [(7, -1), (11, -3), (13, 0), (19, -3), (23, -3)]
)
def test_half_interval_sum(p, expected):
    assert half_interval_sum(p) == expected


def test_rho_hat_domain():
    with pytest.raises(AEvenError):
        rho_hat(2, -1, 11)
    with pytest.raises(AEvenError):
        rho_hat(-1, 1, 11)
    with pytest.raises(AEvenError):
        rho_hat(3, -1, 5)


@pytest.mark.parametrize("p", primes_between(7, 300))
def test_rho_hat_rewrite(p):
    for a, b in [(1, 1), (3, -1), (5, 2)]:
        if p > 2 * a and good_reduction_pair(a, b, p):
            quotient = s_tau_hat(a, b, p).quotient
            assert quotient == rho_hat(a, b, p) + rho_hat_correction(p)


@pytest.mark.parametrize("p", PRIMES)
def test_error_bounds(p):
    for a in range(-6, 7):
        for b in (-3, -1, 1, 2):
            if p > abs(a) and good_reduction_pair(a, b, p):
                assert abs(error_R(a, b, p)) <= error_bound(a)
    for a in (2, 4, 6):
        for b in (-3, -1, 1, 2):
            if p > a and good_reduction_pair(a, b, p):
                assert abs(error_R_hat(a, b, p)) <= dual_error_bound(a)


def test_bound_values():
    assert [error_bound(a) for a in (3, 0, -2)] == [3, 1, 4]
    assert dual_error_bound(4) == 3
    with pytest.raises(ValueError):
        dual_error_bound(3)


@pytest.mark.slow
def test_identities_over_grid():
    for p in primes_between(5, 499):
        for a in range(-6, 7):
            for b in range(-6, 7):
                if good_reduction_pair(a, b, p):
                    assert s_tau(a, b, p).ok, (a, b, p)
                    assert s_tau_hat(a, b, p).ok, (a, b, p)


@pytest.mark.parametrize("p", primes_between(7, 500))
def test_rho_hat_bound(p):
    for a in (1, 3, 5, 7):
        for b in (-3, -1, 1, 2, 5):
            if p > 2 * a and good_reduction_pair(a, b, p):
                assert abs(rho_hat(a, b, p)) <= (a + 3) // 2, (a, b)


@pytest.mark.parametrize("n", [1, 3, 9, 25, 91])
def test_composite_modulus_rejected(n):
    with pytest.raises(NotPrimeError):
        s_tau(2, -1, n)
    with pytest.raises(NotPrimeError):
        s_tau_hat(2, -1, n)
    with pytest.raises(NotPrimeError):
        error_R(7, 2, n)
    with pytest.raises(NotPrimeError):
        dirichlet_hstar(n)
    with pytest.raises(NotPrimeError):
        delta(2, n)
    with pytest.raises(NotPrimeError):
        half_interval_sum(n)
    with pytest.raises(NotPrimeError):
        weight_shift_sum(2, -1, n)


def test_weight_centre_is_checked(caplog):
    logger = get_logger("isogeny_sums")
    logger.addHandler(caplog.handler)
    try:
        with caplog.at_level(logging.DEBUG, logger="isogeny_sums"):
            for p in primes_between(5, 60):
                s_tau(2, -1, p)
    finally:
        logger.removeHandler(caplog.handler)
    messages = [r.getMessage() for r in caplog.records]
    centred = [m for m in messages if m.startswith("weight centre")]
    # b = -1 is a square exactly when p = 1 mod 4
    expected = [p for p in primes_between(5, 60) if p % 4 == 1]
    assert centred == [f"weight centre holds (p={p}, a=2)" for p in expected]
    assert not any("FAILED" in m for m in messages)
