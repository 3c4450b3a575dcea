import math

import pytest
from hypothesis import given, strategies as st

from dehp_ifp.numtheory import (
    int_from_text,
    int_to_text,
    NotInvertible,
    RandomSource,
    ext_gcd,
    is_probable_prime,
    mod_inverse,
    random_prime,
)

# Seed at which random_prime(16, .) first returns the reference p = 65287.
GOLDEN_PRIME_SEED = 12743


def trial_division_is_prime(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


@pytest.mark.parametrize(
    "n, expected",
    [(65287, True), (40829, True), (1, False), (0, False), (2, True), (2665602923, False)],
)
def test_is_probable_prime_examples(n, expected):
    assert is_probable_prime(n, 40) is expected


def test_is_probable_prime_matches_trial_division_below_20000():
    for n in range(20000):
        assert is_probable_prime(n) == trial_division_is_prime(n), n


def test_strong_pseudoprimes_rejected():
    # Strong pseudoprimes to several small bases, plus Carmichael numbers.
    for n in (2047, 1373653, 25326001, 3215031751, 2152302898747, 3474749660383, 341550071728321, 561, 41041, 825265):
        assert not is_probable_prime(n)


def test_large_known_primes_and_products():
    m61 = 2**61 - 1
    m127 = 2**127 - 1
    assert is_probable_prime(m61)
    assert is_probable_prime(m127)
    assert not is_probable_prime(m61 * m127)
    assert not is_probable_prime(2**128 + 1)  # divisible by 59649589127497217


def test_rounds_must_be_positive():
    with pytest.raises(ValueError):
        is_probable_prime(7, 0)


def test_random_source_seeded_streams_repeat():
    a, b = RandomSource(99), RandomSource(99)
    assert [a.randint(0, 10**30) for _ in range(50)] == [b.randint(0, 10**30) for _ in range(50)]
    assert a.mode == "seeded-deterministic"
    assert RandomSource().mode == "system-entropy"


def test_random_source_pinned_stream():
    # Mersenne Twister output is fixed across platforms and Python versions.
    assert RandomSource(0).randint(0, 1000) == 864


def test_random_source_rejects_bad_seed_and_range():
    with pytest.raises(ValueError):
        RandomSource(-1)
    with pytest.raises(ValueError):
        RandomSource(1 << 64)
    with pytest.raises(ValueError):
        RandomSource(1).randint(5, 4)


@given(st.integers(-(10**40), 10**40), st.integers(0, 10**6), st.integers(0, 2**63))
def test_randint_inside_range(lo, span, seed):
    x = RandomSource(seed).randint(lo, lo + span)
    assert lo <= x <= lo + span


def test_random_prime_golden_seed():
    assert random_prime(16, RandomSource(GOLDEN_PRIME_SEED)) == 65287


def test_random_prime_three_bits():
    assert {random_prime(3, RandomSource(s)) for s in range(40)} == {5, 7}


@pytest.mark.parametrize("bits", [3, 8, 16, 17, 64, 128])
def test_random_prime_size_and_primality(bits):
    rng = RandomSource(bits)
    for _ in range(20):
        r = random_prime(bits, rng)
        assert r.bit_length() == bits
        assert is_probable_prime(r, 40)
        if bits <= 17:
            assert trial_division_is_prime(r)


def test_random_prime_rejects_tiny_width():
    with pytest.raises(ValueError):
        random_prime(2, RandomSource(0))


def test_ext_gcd_examples():
    assert ext_gcd(23, 17) == (1, 3, -4)
    g, s, t = ext_gcd(1, 1)
    assert g == 1 and s + t == 1
    e1, e2 = 5943657286, 3278054363
    g, s, t = ext_gcd(e1, e2)
    assert e1 % g == 0 and e2 % g == 0 and s * e1 + t * e2 == g


def test_ext_gcd_brute_force_small():
    for a in range(-12, 13):
        for b in range(-12, 13):
            if a == 0 and b == 0:
                continue
            g, s, t = ext_gcd(a, b)
            assert g == math.gcd(a, b)
            assert s * a + t * b == g


@given(st.integers(-(10**60), 10**60), st.integers(-(10**60), 10**60))
def test_ext_gcd_bezout(a, b):
    if a == 0 and b == 0:
        return
    g, s, t = ext_gcd(a, b)
    assert g == math.gcd(a, b) >= 1
    assert s * a + t * b == g


def test_ext_gcd_zero_zero():
    with pytest.raises(ValueError):
        ext_gcd(0, 0)


def test_mod_inverse_examples():
    assert 3096817651 % 65287 == 59380
    assert 59380 * 49913 % 65287 == 1
    assert mod_inverse(59380, 65287) == 49913
    assert mod_inverse(1, 7) == 1
    with pytest.raises(NotInvertible):
        mod_inverse(6, 9)


def test_mod_inverse_brute_force():
    for m in range(2, 60):
        for a in range(-m, 2 * m):
            brute = [x for x in range(1, m) if a * x % m == 1]
            if math.gcd(a, m) == 1:
                assert mod_inverse(a, m) == brute[0]
            else:
                assert not brute
                with pytest.raises(NotInvertible):
                    mod_inverse(a, m)


@given(st.integers(-(10**50), 10**50), st.integers(2, 10**50))
def test_mod_inverse_property(a, m):
    if math.gcd(a, m) != 1:
        with pytest.raises(NotInvertible):
            mod_inverse(a, m)
    else:
        x = mod_inverse(a, m)
        assert 1 <= x <= m - 1
        assert a * x % m == 1


@given(st.integers(min_value=-(1 << 20000), max_value=1 << 20000))
def test_int_text_roundtrip(v):
    assert int_from_text(int_to_text(v)) == v


def test_int_text_small_values_stay_decimal():
    assert int_to_text(-2776) == "-2776"
    assert int_to_text(1 << 20000).startswith("0x1")
