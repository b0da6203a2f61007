"""Form class groups: frozen class numbers, group laws, analytic oracle.

The independent oracle for negative discriminants is the finite character
sum h = w/(2|d|) |sum a chi_d(a)|, evaluated exactly in integers; structure
constants (elementary divisors, ambiguous-class counts) are checked against
two-torsion genus counts. Positive-discriminant values are classical
frozen table entries with the narrow/wide distinction worked by hand.
"""

import math

import pytest

from genbound.arith import kronecker
from genbound.quadratic_classgroup import (
    class_group,
    enumerate_fundamental_discriminants,
    form_disc,
    generated_by_primes_up_to,
    is_fundamental_discriminant,
    prime_class,
)


def dirichlet_h(d):
    """Exact class number of the imaginary quadratic field of fundamental
    discriminant d via the character sum formula."""
    assert d < 0
    w = 6 if d == -3 else 4 if d == -4 else 2
    s = sum(kronecker(d, a) * a for a in range(1, abs(d)))
    num = w * abs(s)
    den = 2 * abs(d)
    assert num % den == 0
    return num // den


# ----------------------------------------------------------------------
# fundamental discriminants
# ----------------------------------------------------------------------
def test_is_fundamental():
    for d in (-3, -4, -7, -8, 5, 8, 12, 13, 28, -20, -163, 316):
        assert is_fundamental_discriminant(d)
    for d in (0, 1, -1, 4, -9, 9, -12, 25, 45, -16, 100):
        assert not is_fundamental_discriminant(d)


def test_enumerate_fundamental():
    fds = enumerate_fundamental_discriminants(80)
    assert len(fds) == 49
    assert fds[:12] == [-3, -4, 5, -7, -8, 8, -11, 12, 13, -15, 17, -19]
    assert all(is_fundamental_discriminant(d) for d in fds)
    assert all(abs(d) < 80 for d in fds)


# ----------------------------------------------------------------------
# frozen class groups
# ----------------------------------------------------------------------
def test_definite_frozen():
    expect = {
        -3: (1, ()), -4: (1, ()), -20: (2, (2,)), -23: (3, (3,)),
        -47: (5, (5,)), -84: (4, (2, 2)), -163: (1, ()),
    }
    for d, (h, eldiv) in expect.items():
        G = class_group(d)
        assert G.h == h
        assert G.elementary_divisors == eldiv


def test_indefinite_frozen():
    # (wide h, narrow h): narrow exceeds wide exactly when no unit of norm -1
    expect = {
        5: (1, 1), 8: (1, 1), 12: (1, 2), 13: (1, 1),
        40: (2, 2), 60: (2, 4), 229: (3, 3), 316: (3, 6),
    }
    for d, (h, hn) in expect.items():
        G = class_group(d)
        assert G.h == h, d
        assert G.narrow_class_number == hn, d


def test_dirichlet_oracle():
    for d in enumerate_fundamental_discriminants(300):
        if d > -3:
            continue
        assert class_group(d).h == dirichlet_h(d), d


def test_two_torsion_matches_genus_count():
    # number of classes killed by squaring is 2^(t-1), t = number of prime
    # divisors of the discriminant
    for d in (-20, -23, -47, -84, -120, -163, -231):
        if not is_fundamental_discriminant(d):
            continue
        G = class_group(d)
        t = len(factor_primes(d))
        two_torsion = sum(
            1 for f in G.representatives if G.compose(f, f) == G.identity
        )
        assert two_torsion == 2 ** (t - 1), d


def factor_primes(d):
    n = abs(d)
    out = set()
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.add(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.add(n)
    return out


def test_non_fundamental_rejected():
    for d in (-12, 9, 0, 1, -16, 45):
        with pytest.raises(ValueError):
            class_group.__wrapped__(d)


# ----------------------------------------------------------------------
# group laws
# ----------------------------------------------------------------------
def test_group_laws_definite():
    for d in (-20, -23, -47, -84, -104):
        G = class_group(d)
        reps = G.representatives
        assert G.identity in reps
        for f in reps:
            assert form_disc(f) == d
            assert G.compose(f, G.identity) == f
            assert G.compose(f, G.inverse(f)) == G.identity
            assert G.h % G.order_of(f) == 0
        for f in reps:
            for g in reps:
                assert G.compose(f, g) == G.compose(g, f)
                assert G.compose(f, g) in reps
        # associativity on all triples for the smaller groups
        if G.h <= 5:
            for f in reps:
                for g in reps:
                    for k in reps:
                        assert G.compose(G.compose(f, g), k) == G.compose(
                            f, G.compose(g, k)
                        )


def test_group_laws_indefinite():
    for d in (40, 60, 229, 316):
        G = class_group(d)
        for f in G.representatives:
            assert G.compose(f, G.inverse(f)) == G.identity
            assert G.h % G.order_of(f) == 0
        for f in G.representatives:
            for g in G.representatives:
                assert G.compose(f, g) == G.compose(g, f)


def test_exponent_is_last_divisor():
    for d in (-84, -23, -47, -120, 316):
        G = class_group(d)
        if not G.elementary_divisors:
            continue
        assert max(G.order_of(f) for f in G.representatives) == G.elementary_divisors[-1]


def test_cyclic_cubic_relations():
    G = class_group(-23)
    assert G.representatives == ((1, 1, 6), (2, -1, 3), (2, 1, 3))
    g = (2, 1, 3)
    assert G.compose(g, g) == G.inverse(g) == (2, -1, 3)
    assert G.order_of(g) == 3


def test_composition_represents_products():
    # the square of the norm-2 class of disc -20 is principal, and the
    # principal form represents 2*3 = 6 as 1 + 5*1
    G = class_group(-20)
    sq = G.compose((2, 2, 3), (2, 2, 3))
    assert sq == (1, 0, 5)
    assert 1 * 1 + 5 * 1 * 1 == 6


def test_class_of_accepts_unreduced():
    G = class_group(-20)
    # (7, 8, 3) has discriminant 64 - 84 = -20 and is equivalent to (2, 2, 3)
    assert form_disc((7, 8, 3)) == -20
    assert G.class_of((7, 8, 3)) == (2, 2, 3)
    with pytest.raises(ValueError):
        G.class_of((1, 0, 1))  # wrong discriminant


def test_indefinite_cycle_structure_60():
    G = class_group(60)
    # eight reduced forms, all with b = 6, in four two-element cycles
    assert G.narrow_class_number == 4
    assert G.h == 2
    assert G.elementary_divisors == (2,)


# ----------------------------------------------------------------------
# prime classes and generation
# ----------------------------------------------------------------------
def test_prime_class_cases():
    info = prime_class(-20, 2)
    assert info.status == "ramified" and info.form == (2, 2, 3)
    assert prime_class(-20, 3).status == "split"
    assert prime_class(-20, 3).form == (2, 2, 3)
    assert prime_class(-20, 7).form == (2, 2, 3)
    assert prime_class(-20, 11) == prime_class(-20, 11).__class__(11, "inert", None)
    assert prime_class(-20, 29).form == (1, 0, 5)  # 29 = 9 + 20 splits principally
    with pytest.raises(ValueError):
        prime_class(-20, 6)


def test_prime_class_form_has_right_disc():
    for d in (-23, -47, 229):
        for p in (2, 3, 5, 7, 11, 13):
            info = prime_class(d, p)
            if info.form is not None:
                assert form_disc(info.form) == d


def test_generated_by_primes():
    assert generated_by_primes_up_to(-20, 1) == (False, 1)
    assert generated_by_primes_up_to(-20, 2) == (True, 2)
    assert generated_by_primes_up_to(-47, 1) == (False, 1)
    # 2 splits in disc -47 (-47 is 1 mod 8) and h = 5 is prime
    assert generated_by_primes_up_to(-47, 2) == (True, 5)
    ok, order = generated_by_primes_up_to(-163, 1)
    assert ok and order == 1  # class number one needs no generators


def test_generated_subgroup_order_divides_h():
    for d in (-84, -120, 316):
        G = class_group(d)
        for bound in (1, 2, 3, 5, 7):
            ok, order = generated_by_primes_up_to(d, bound)
            assert G.h % order == 0
            assert ok == (order == G.h)
