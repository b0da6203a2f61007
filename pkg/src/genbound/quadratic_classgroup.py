"""Class groups of quadratic fields via binary quadratic forms.

Forms are (a, b, c) triples of discriminant d = b^2 - 4ac, d a fundamental
discriminant. Negative discriminants use the classical reduced-form
normal form; positive ones use reduction cycles, with the ordinary (wide)
group obtained from the narrow one by quotienting out the class of the
norm -1 template. Composition is ideal multiplication: each form becomes
a rank-2 module of half-integers, the product of the four generator pairs
is put in Hermite normal form, and the result is read back off as a form.
All of it is exact integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .arith import factorize, is_probable_prime, kronecker

__all__ = [
    "is_fundamental_discriminant",
    "enumerate_fundamental_discriminants",
    "form_disc",
    "class_group",
    "ClassGroupDescription",
    "PrimeClassInfo",
    "prime_class",
    "generated_by_primes_up_to",
]


def form_disc(form) -> int:
    a, b, c = form
    return b * b - 4 * a * c


def is_fundamental_discriminant(d: int) -> bool:
    if d in (0, 1):
        return False
    if d % 4 == 1:
        fac, cof = factorize(d)
        return cof == 1 and all(e == 1 for e in fac.values())
    if d % 4 == 0:
        m = d // 4
        if m % 4 not in (2, 3):
            return False
        fac, cof = factorize(m)
        return cof == 1 and all(e == 1 for e in fac.values())
    return False


def enumerate_fundamental_discriminants(bound: int):
    """All fundamental discriminants with |d| < bound, sorted by |d| then sign."""
    out = [d for d in range(-bound + 1, bound) if is_fundamental_discriminant(d)]
    return sorted(out, key=lambda d: (abs(d), d))


# ----------------------------------------------------------------------
# reduction
# ----------------------------------------------------------------------
def _reduce_definite(form):
    a, b, c = form
    if a <= 0:
        raise ValueError("positive definite forms need a > 0")
    d = form_disc(form)
    while True:
        # normalize b into (-a, a]
        r = b % (2 * a)
        if r > a:
            r -= 2 * a
        c = (r * r - d) // (4 * a)
        b = r
        if a <= c:
            break
        a, b, c = c, -b, a
    if (a == c or b == -a) and b < 0:
        b = -b
    return (a, b, c)


def _is_reduced_indefinite(form, d, sq):
    a, b, _ = form
    if b <= 0 or b * b >= d:
        return False
    t = 2 * abs(a) - b
    if t >= 0 and t * t >= d:
        return False
    s = 2 * abs(a) + b
    return s * s > d


def _rho(form, d, sq):
    # step to the neighbour form on the cycle
    a, b, c = form
    two_c = 2 * abs(c)
    if abs(c) <= sq:
        lo = sq + 1 - two_c
    else:
        lo = 1 - abs(c)
    bp = lo + ((-b - lo) % two_c)
    cp = (bp * bp - d) // (4 * c)
    assert (bp * bp - d) % (4 * c) == 0
    return (c, bp, cp)


def _reduce_indefinite(form, d, sq):
    for _ in range(10000):
        if _is_reduced_indefinite(form, d, sq):
            return form
        form = _rho(form, d, sq)
    raise RuntimeError(f"reduction did not terminate for {form}, d={d}")


def _cycle(form, d, sq):
    """Full rho-cycle through a reduced form; the cycle is the narrow class."""
    out = [form]
    f = _rho(form, d, sq)
    while f != form:
        out.append(f)
        f = _rho(f, d, sq)
    return out


def _enumerate_reduced(d):
    if d < 0:
        out = []
        amax = math.isqrt(-d // 3)
        for a in range(1, amax + 1):
            for b in range(-a + 1, a + 1):
                if (b - d) % 2:
                    continue
                num = b * b - d
                if num % (4 * a):
                    continue
                c = num // (4 * a)
                if c < a:
                    continue
                if a == c and b < 0:
                    continue
                out.append((a, b, c))
        return out
    sq = math.isqrt(d)
    out = []
    for b in range(1, sq + 1):
        if (b - d) % 2:
            continue
        N = (d - b * b) // 4
        divs = set()
        t = 1
        while t * t <= N:
            if N % t == 0:
                divs.update({t, N // t})
            t += 1
        for ap in sorted(divs):
            for a in (ap, -ap):
                c = (b * b - d) // (4 * a)
                if _is_reduced_indefinite((a, b, c), d, sq):
                    out.append((a, b, c))
    return out


# ----------------------------------------------------------------------
# composition by ideal multiplication
# ----------------------------------------------------------------------
def _hnf_two_cols(rows):
    """Hermite basis [(X, 0), (Y, w)] of the span of integer (u, v) rows."""
    rows = [list(r) for r in rows if r != (0, 0)]
    # clear the second column down to a single gcd row
    pivot = None
    for r in rows:
        if r[1] != 0:
            pivot = r
            break
    if pivot is None:
        raise ValueError("rank deficient module")
    for r in rows:
        if r is pivot or r[1] == 0:
            continue
        # gcd step on (pivot, r) in column v
        while r[1] != 0:
            q = pivot[1] // r[1]
            pivot[0], pivot[1] = pivot[0] - q * r[0], pivot[1] - q * r[1]
            pivot, r = r, pivot
        if pivot[1] == 0:
            pivot, r = r, pivot
    if pivot[1] < 0:
        pivot[0], pivot[1] = -pivot[0], -pivot[1]
    X = 0
    for r in rows:
        if r[1] == 0:
            X = math.gcd(X, r[0])
    if X == 0:
        raise ValueError("rank deficient module")
    w = pivot[1]
    Y = pivot[0] % X
    return X, Y, w


def _compose_raw(f1, f2, d):
    """Form representing the product of the classes; inputs need a > 0."""
    a1, b1, c1 = f1
    a2, b2, c2 = f2
    assert a1 > 0 and a2 > 0
    rows = [
        (2 * a1 * a2, 0),
        (-a1 * b2, a1),
        (-a2 * b1, a2),
        ((b1 * b2 + d) // 2, -(b1 + b2) // 2),
    ]
    X, Y, w = _hnf_two_cols(rows)
    assert X * w == 2 * a1 * a2
    A = (a1 * a2) // (w * w)
    B = (-Y // w) % (2 * A)
    num = B * B - d
    assert num % (4 * A) == 0
    C = num // (4 * A)
    return (A, B, C)


# ----------------------------------------------------------------------
# class group description
# ----------------------------------------------------------------------
def _abelian_invariants(elements, compose, identity):
    """Invariant factors (ascending, each dividing the next) of a small
    abelian group given by its elements and composition."""
    if len(elements) <= 1:
        return []

    def order_of(g):
        k, x = 1, g
        while x != identity:
            x = compose(x, g)
            k += 1
        return k

    orders = {g: order_of(g) for g in elements}
    gmax = max(elements, key=lambda g: (orders[g], g))
    e = orders[gmax]
    if e == len(elements):
        return [e]
    sub = []
    x = identity
    for _ in range(e):
        sub.append(x)
        x = compose(x, gmax)
    coset_rep = {}
    reps = []
    for g in elements:
        if g in coset_rep:
            continue
        members = [compose(g, s) for s in sub]
        rep = min(members)
        for mem in members:
            coset_rep[mem] = rep
        reps.append(rep)

    def q_compose(x, y):
        return coset_rep[compose(x, y)]

    return _abelian_invariants(reps, q_compose, coset_rep[identity]) + [e]


@dataclass(frozen=True)
class PrimeClassInfo:
    prime: int
    status: str  # "split", "ramified", or "inert"
    form: tuple | None  # canonical class of a prime ideal above p; None when inert


class ClassGroupDescription:
    """Ordinary (wide) class group of the quadratic order of discriminant d."""

    def __init__(self, disc: int):
        if not is_fundamental_discriminant(disc):
            raise ValueError(f"{disc} is not a fundamental discriminant")
        self.disc = disc
        self._sq = math.isqrt(disc) if disc > 0 else 0
        reduced = _enumerate_reduced(disc)
        if disc < 0:
            self._narrow_canon = {f: f for f in reduced}
            narrow_reps = sorted(reduced)
            self._wide_of = {f: f for f in narrow_reps}
        else:
            self._narrow_canon = {}
            narrow_reps = []
            seen = set()
            for f in reduced:
                if f in seen:
                    continue
                cyc = _cycle(f, disc, self._sq)
                canon = min(cyc)
                for g in cyc:
                    self._narrow_canon[g] = canon
                    seen.add(g)
                narrow_reps.append(canon)
            narrow_reps.sort()
            # quotient by the class of the norm -1 template (-1, b0, ...)
            b0 = self._principal_b0()
            neg = self._narrow_class((-1, b0, (disc - b0 * b0) // 4))
            self._wide_of = {}
            for f in narrow_reps:
                partner = self._narrow_compose(f, neg)
                self._wide_of[f] = min(f, partner)
        self.narrow_class_number = len(narrow_reps)
        self.representatives = tuple(sorted(set(self._wide_of.values())))
        self.h = len(self.representatives)
        b0 = self._principal_b0()
        self.identity = self.class_of((1, b0, (b0 * b0 - disc) // 4))
        self.elementary_divisors = tuple(
            _abelian_invariants(list(self.representatives), self.compose, self.identity)
        )
        assert math.prod(self.elementary_divisors, start=1) == self.h

    # -- internal helpers ------------------------------------------------
    def _principal_b0(self):
        return self.disc % 2

    def _narrow_class(self, form):
        if form_disc(form) != self.disc:
            raise ValueError(f"form {form} has discriminant {form_disc(form)}, not {self.disc}")
        if self.disc < 0:
            return _reduce_definite(form)
        red = _reduce_indefinite(form, self.disc, self._sq)
        return self._narrow_canon[red]

    def _positive_rep(self, narrow_canon):
        if narrow_canon[0] > 0:
            return narrow_canon
        # neighbours on the cycle alternate the sign of a
        return _rho(narrow_canon, self.disc, self._sq)

    def _narrow_compose(self, f, g):
        prod = _compose_raw(
            self._positive_rep(f), self._positive_rep(g), self.disc
        )
        return self._narrow_class(prod)

    # -- public operations -----------------------------------------------
    def class_of(self, form) -> tuple:
        """Canonical representative of the wide class of a form of this discriminant."""
        return self._wide_of[self._narrow_class(form)]

    def compose(self, f, g) -> tuple:
        f = self.class_of(f)
        g = self.class_of(g)
        return self._wide_of[self._narrow_compose(f, g)]

    def inverse(self, f) -> tuple:
        a, b, c = self.class_of(f)
        return self.class_of((a, -b, c))

    def order_of(self, f) -> int:
        f = self.class_of(f)
        k, x = 1, f
        while x != self.identity:
            x = self.compose(x, f)
            k += 1
        return k


@lru_cache(maxsize=None)
def class_group(disc: int) -> ClassGroupDescription:
    return ClassGroupDescription(disc)


# ----------------------------------------------------------------------
# prime ideals
# ----------------------------------------------------------------------
def prime_class(disc: int, p: int) -> PrimeClassInfo:
    """Class of a prime ideal of norm p, or the inert marker."""
    if not is_probable_prime(p):
        raise ValueError(f"{p} is not prime")
    sym = kronecker(disc, p)
    if sym == -1:
        return PrimeClassInfo(p, "inert", None)
    group = class_group(disc)
    for b in range(2 * p):
        if (b * b - disc) % (4 * p) == 0:
            form = (p, b, (b * b - disc) // (4 * p))
            status = "ramified" if sym == 0 else "split"
            return PrimeClassInfo(p, status, group.class_of(form))
    raise AssertionError(f"no form of leading coefficient {p} despite kronecker {sym}")


def generated_by_primes_up_to(disc: int, bound: float):
    """Do the classes of prime ideals of norm <= bound generate the class group?

    Returns (generates, subgroup_order).
    """
    group = class_group(disc)
    gens = []
    p = 2
    while p <= bound:
        if is_probable_prime(p):
            info = prime_class(disc, p)
            if info.form is not None:
                gens.append(info.form)
        p += 1
    closure = {group.identity}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for f in frontier:
            for g in gens:
                h = group.compose(f, g)
                if h not in closure:
                    closure.add(h)
                    nxt.append(h)
        frontier = nxt
    return len(closure) == group.h, len(closure)
