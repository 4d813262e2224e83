import random
from fractions import Fraction

import pytest

from cmhodge.cyclotomic import CyclotomicNumber, euler_phi, format_fraction, parse_fraction
from cmhodge.errors import ConductorMismatchError, UsageError
from cmhodge.polynomials import cyclotomic_polynomial

CONDUCTORS = (4, 7, 12, 28)


def rand_elt(M, rng, spread=6):
    return CyclotomicNumber(
        M, [Fraction(rng.randrange(-spread, spread + 1)) for _ in range(euler_phi(M))]
    )


@pytest.mark.parametrize("m", [1, 2, 3, 4, 7, 9, 12, 16, 28, 36, 44])
def test_euler_phi(m):
    assert euler_phi(m) == sum(1 for k in range(1, m + 1) if __import__("math").gcd(k, m) == 1)


def test_i_squares_to_minus_one():
    for M in (4, 12, 28):
        i = CyclotomicNumber.i_unit(M)
        assert i * i == CyclotomicNumber.from_rational(M, -1)


@pytest.mark.parametrize("m", CONDUCTORS)
def test_primitive_root_has_order_m(m):
    z = CyclotomicNumber.root_of_unity(m, 1)
    assert z**m == CyclotomicNumber.one(m)
    for k in range(1, m):
        assert z**k != CyclotomicNumber.one(m)


@pytest.mark.parametrize("m", [4, 7, 9, 12, 16, 28])
def test_root_satisfies_minimal_polynomial(m):
    z = CyclotomicNumber.root_of_unity(m, 1)
    value = cyclotomic_polynomial(m)(z)
    assert value == CyclotomicNumber.zero(m) or value.is_zero()


def test_all_roots_sum_to_zero():
    for m in (7, 12):
        total = CyclotomicNumber.zero(m)
        for k in range(m):
            total = total + CyclotomicNumber.root_of_unity(m, k)
        assert total.is_zero()


def test_power_of_28th_root_behaves_like_7th_root():
    # zeta_28^4 generates the 7th roots inside the bigger field
    z = CyclotomicNumber.root_of_unity(28, 4)
    assert z**7 == CyclotomicNumber.one(28)
    assert cyclotomic_polynomial(7)(z).is_zero()


@pytest.mark.parametrize("M", CONDUCTORS)
def test_ring_axioms_random_sweep(M):
    rng = random.Random(f"axioms:{M}")
    for _ in range(25):
        a, b, c = (rand_elt(M, rng) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == CyclotomicNumber.zero(M)


@pytest.mark.parametrize("M", CONDUCTORS)
def test_inverses_random_sweep(M):
    rng = random.Random(f"inverse:{M}")
    one = CyclotomicNumber.one(M)
    tried = 0
    while tried < 15:
        a = rand_elt(M, rng)
        if a.is_zero():
            continue
        tried += 1
        assert a * a.inverse() == one
        b = rand_elt(M, rng, spread=3)
        if not b.is_zero():
            assert (a / b) * b == a


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        CyclotomicNumber.zero(7).inverse()


def test_rational_scalars_mix_in():
    x = CyclotomicNumber.root_of_unity(7, 3)
    assert x * 2 == x + x
    assert x * Fraction(1, 2) + x * Fraction(1, 2) == x
    assert (1 - x) + x == CyclotomicNumber.one(7)


def test_conductor_mismatch_is_rejected():
    with pytest.raises(ConductorMismatchError):
        CyclotomicNumber.one(7) + CyclotomicNumber.one(12)


def test_galois_is_multiplicative_on_exponents():
    rng = random.Random("galois-comp")
    M = 28
    units = [a for a in range(1, M) if __import__("math").gcd(a, M) == 1]
    for _ in range(20):
        x = rand_elt(M, rng)
        a, b = rng.choice(units), rng.choice(units)
        assert x.galois(a).galois(b) == x.galois((a * b) % M)


def test_galois_on_roots_is_exponentiation():
    z = CyclotomicNumber.root_of_unity(28, 1)
    assert z.galois(9) == z**9
    assert (z**3).galois(9) == z**27


def test_galois_fixes_rationals_and_respects_products():
    rng = random.Random("galois-mult")
    M = 12
    half = CyclotomicNumber.from_rational(M, Fraction(1, 2))
    assert half.galois(5) == half
    for _ in range(10):
        x, y = rand_elt(M, rng), rand_elt(M, rng)
        assert (x * y).galois(7) == x.galois(7) * y.galois(7)


def test_galois_rejects_non_units():
    with pytest.raises(UsageError):
        CyclotomicNumber.one(12).galois(3)


def test_conjugate_is_an_involution():
    rng = random.Random("conj")
    for M in CONDUCTORS:
        x = rand_elt(M, rng)
        assert x.conjugate().conjugate() == x


def test_json_round_trip():
    rng = random.Random("json")
    for M in CONDUCTORS:
        x = CyclotomicNumber(
            M,
            [
                Fraction(rng.randrange(-9, 10), rng.randrange(1, 5))
                for _ in range(euler_phi(M))
            ],
        )
        assert CyclotomicNumber.from_json(x.to_json()) == x


def test_fraction_text_forms():
    assert parse_fraction(format_fraction(Fraction(-22, 7))) == Fraction(-22, 7)
    assert format_fraction(Fraction(5)) == "5/1"  # uniform num/den form
    assert parse_fraction("3/4") == Fraction(3, 4)
    with pytest.raises(UsageError):
        parse_fraction("three quarters")


def test_from_json_validates():
    with pytest.raises(UsageError):
        CyclotomicNumber.from_json({"coeffs": ["1"]})
    with pytest.raises(UsageError):
        CyclotomicNumber.from_json({"conductor": 0, "coeffs": []})
