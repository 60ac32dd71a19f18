import cmath
import itertools
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from swbranch.errors import NonInvertibleDenominator, NotCoprime, NotPrime, SingularForm
from swbranch.exactmath import (
    IntPolynomial,
    ModP,
    alpha_sum,
    beta_sum,
    dedekind_sum,
    determinant,
    format_rational,
    gen_binomial,
    inverse_matrix,
    is_prime,
    modp_rank,
    parse_rational,
    poly_xgcd,
    quadratic_form,
    symmetric_root_sum,
)

PRIMES = [2, 3, 5, 7, 11, 13]
rationals = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 10**6)
small_polys = st.lists(st.integers(-6, 6), max_size=6).map(IntPolynomial)


def float_root_sum(numer, denom, n):
    """Direct complex evaluation of sum_{w^n = 1, w != 1} numer(w)/denom(w)."""
    total = 0j
    for j in range(1, n):
        w = cmath.exp(2j * cmath.pi * j / n)
        total += numer(w) / denom(w)
    return total


# --- scalars ----------------------------------------------------------------


def test_is_prime_matches_trial_division():
    brute = [n for n in range(200) if n > 1 and all(n % d for d in range(2, n))]
    assert [n for n in range(200) if is_prime(n)] == brute


@given(rationals)
def test_format_parse_round_trip(x):
    assert parse_rational(format_rational(x)) == x


def test_format_rational_shapes():
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(Fraction(-1, 8)) == "-1/8"
    with pytest.raises(ValueError):
        parse_rational("0.125")
    with pytest.raises(ValueError):
        parse_rational("1e3")


@given(st.sampled_from(PRIMES), st.integers(-100, 100), st.integers(-100, 100))
def test_modp_field_axioms(p, a, b):
    x, y = ModP(p, a), ModP(p, b)
    assert x + y == ModP(p, a + b)
    assert x * y == ModP(p, a * b)
    assert x - y == -(y - x)
    if y:
        assert (x / y) * y == x
        assert y ** -3 * y ** 3 == 1


def test_modp_rejects_composites_and_mixing():
    with pytest.raises(NotPrime):
        ModP(4, 1)
    with pytest.raises(ValueError):
        ModP(3, 1) + ModP(5, 1)
    with pytest.raises(ZeroDivisionError):
        ModP(5, 0).inverse()


# --- polynomials ------------------------------------------------------------


@given(small_polys, small_polys.filter(lambda q: not q.is_zero()))
def test_polynomial_division(a, b):
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(small_polys, small_polys)
def test_polynomial_ring_laws(a, b):
    assert a * b == b * a
    assert (a + b) * (a - b) == a * a - b * b
    for x in (Fraction(-2), Fraction(1, 3), Fraction(5)):
        assert (a * b)(x) == a(x) * b(x)


@given(small_polys.filter(lambda q: not q.is_zero()), small_polys.filter(lambda q: not q.is_zero()))
@settings(max_examples=60)
def test_xgcd_bezout(a, b):
    g, s, t = poly_xgcd(a, b)
    assert s * a + t * b == g
    assert (a % g).is_zero() and (b % g).is_zero()


# --- root-of-unity sums -----------------------------------------------------


@pytest.mark.parametrize("n", [2, 3, 5, 8, 12, 17])
def test_alpha_beta_against_floats(n):
    one_minus_inv = lambda w: 1 - 1 / w  # noqa: E731
    for u in range(n):
        a = float_root_sum(lambda w: w ** u, one_minus_inv, n)
        b = float_root_sum(lambda w: w ** u, lambda w: one_minus_inv(w) ** 2, n)
        assert abs(a - float(alpha_sum(u, n))) < 1e-9
        assert abs(b - float(beta_sum(u, n))) < 1e-9


@given(st.integers(2, 15), st.lists(st.integers(-3, 3), min_size=1, max_size=4), st.integers(1, 14))
@settings(max_examples=60)
def test_symmetric_root_sum_against_floats(n, coeffs, k):
    k = k % n or 1
    numer = IntPolynomial(coeffs)
    denom = IntPolynomial([1]) - IntPolynomial.monomial(k)
    from math import gcd

    if gcd(k, n) != 1:
        with pytest.raises(NonInvertibleDenominator):
            symmetric_root_sum(numer, denom, n)
        return
    exact = symmetric_root_sum(numer, denom, n)
    approx = float_root_sum(lambda w: numer(w), lambda w: denom(w), n)
    assert abs(approx.imag) < 1e-8
    assert abs(approx.real - float(exact)) < 1e-8


# --- Dedekind sums ------------------------------------------------------------


def dedekind_by_definition(q, p):
    def saw(x):
        if x.denominator == 1:
            return Fraction(0)
        return x - (x.numerator // x.denominator) - Fraction(1, 2)

    return sum((saw(Fraction(k, p)) * saw(Fraction(k * q, p)) for k in range(1, p)), Fraction(0))


@pytest.mark.parametrize("p,q", [(3, 1), (5, 2), (7, 3), (11, 4), (12, 5), (13, 12)])
def test_dedekind_sum_definition(p, q):
    assert dedekind_sum(q, p) == dedekind_by_definition(q, p)


def test_dedekind_examples():
    assert dedekind_sum(1, 3) == Fraction(1, 18)
    with pytest.raises(NotCoprime):
        dedekind_sum(2, 4)


# --- binomials, ranks, matrices -----------------------------------------------


@given(st.integers(0, 30), st.integers(-3, 30))
def test_gen_binomial_nonnegative_top(a, k):
    assert gen_binomial(a, k) == (comb(a, k) if k >= 0 else 0)


@given(st.integers(1, 20), st.integers(0, 20))
def test_gen_binomial_negative_top(a, k):
    assert gen_binomial(-a, k) == (-1) ** k * comb(a + k - 1, k)


def _rank_brute(vectors, p):
    """Size of the span, via enumeration of all linear combinations."""
    if not vectors:
        return 0
    width = len(vectors[0])
    span = {tuple(sum(c * v[i] for c, v in zip(cs, vectors)) % p for i in range(width))
            for cs in itertools.product(range(p), repeat=len(vectors))}
    r = 0
    while p ** r < len(span):
        r += 1
    return r


@given(st.sampled_from([2, 3]), st.lists(st.lists(st.integers(0, 4), min_size=3, max_size=3), max_size=4))
@settings(max_examples=60)
def test_modp_rank_brute_force(p, vectors):
    assert modp_rank(vectors, p) == _rank_brute(vectors, p)


def test_matrix_helpers():
    m = [[-2, 1], [1, -2]]
    assert determinant(m) == 3
    inv = inverse_matrix(m)
    assert inv == [[Fraction(-2, 3), Fraction(-1, 3)], [Fraction(-1, 3), Fraction(-2, 3)]]
    assert quadratic_form(inv, [1, 1]) == Fraction(-2)
    with pytest.raises(SingularForm):
        inverse_matrix([[1, 2], [2, 4]])
