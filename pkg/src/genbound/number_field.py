"""Number fields presented by monic integer polynomials.

Supplies exactly what the generation criteria consume: degree and signature,
a certified field discriminant where the index can be ruled out prime by
prime, splitting types of rational primes, the stream of prime-ideal powers
with von Mangoldt weights, windowed weighted sums over that stream, the
Minkowski bound, and a brute-force principality search for small prime
ideals. Splitting at a prime whose index status cannot be certified raises
rather than guessing.
"""

from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass

import numpy as np

from .arith import factorize, is_probable_prime, kronecker
from .errors import (
    IrreducibilityError,
    SplittingUnavailableError,
    UnknownDiscriminantError,
    UnsupportedRepresentationError,
)
from .polynomials import (
    dedekind_index_certified,
    discriminant,
    gf_distinct_degree,
    gf_factor_shape,
    gf_is_irreducible,
    gf_normalize,
    poly_eval,
    poly_trim,
    resultant,
    signature,
)
from .rational_sieve import WeightedSum, default_table

__all__ = [
    "StreamEntry",
    "PrincipalityWitness",
    "CubicFixture",
    "NumberField",
    "parse_poly",
    "load_cubic_fixtures",
]

_SMALL_PRIMES = [p for p in range(2, 210)
                 if all(p % q for q in range(2, p)) and p > 1]


@dataclass(frozen=True)
class StreamEntry:
    """One prime-ideal power: norm = prime^(residue_degree * power)."""

    prime: int
    residue_degree: int
    power: int
    norm: int
    weight: float


@dataclass(frozen=True)
class PrincipalityWitness:
    """Element (as polynomial in the generator) whose norm matches the target."""

    coeffs: tuple
    norm: int


@dataclass(frozen=True)
class CubicFixture:
    coeffs: tuple
    abs_disc: int


def parse_poly(text: str) -> list:
    """Comma-separated integer coefficients, constant term first.

    A trailing 1 is the explicit leading coefficient; when the last listed
    coefficient is not 1, a monic leading term one degree higher is implied.
    The ASCII hyphen and the unicode minus sign are both accepted.
    """
    cleaned = text.replace("−", "-").strip()
    if not cleaned:
        raise UnsupportedRepresentationError("empty polynomial")
    try:
        coeffs = [int(tok.strip()) for tok in cleaned.split(",")]
    except ValueError as exc:
        raise UnsupportedRepresentationError(f"bad coefficient in {text!r}") from exc
    if coeffs[-1] != 1:
        coeffs.append(1)
    return coeffs


def _integer_roots(coeffs):
    a0 = coeffs[0]
    if a0 == 0:
        yield 0
        return
    a = abs(a0)
    d = 1
    while d * d <= a:
        if a % d == 0:
            for r in {d, -d, a // d, -(a // d)}:
                if poly_eval(coeffs, r) == 0:
                    yield r
        d += 1


def _quartic_quadratic_split(coeffs):
    # f = x^4 + c3 x^3 + c2 x^2 + c1 x + c0 = (x^2+ax+b)(x^2+cx+d)?
    c0, c1, c2, c3 = coeffs[0], coeffs[1], coeffs[2], coeffs[3]
    divs = set()
    a = abs(c0)
    d = 1
    while d * d <= a:
        if a % d == 0:
            divs.update({d, -d, a // d, -(a // d)})
        d += 1
    for b in sorted(divs):
        if c0 % b:
            continue
        dd = c0 // b
        s = c3
        prod_ac = c2 - b - dd
        disc = s * s - 4 * prod_ac
        if disc < 0:
            continue
        k = math.isqrt(disc)
        if k * k != disc:
            continue
        for kk in (k, -k):
            if (s + kk) % 2:
                continue
            aa = (s + kk) // 2
            cc = s - aa
            if aa * dd + b * cc == c1:
                return (b, aa), (dd, cc)
    return None


def _certify_irreducible(coeffs) -> str:
    """Certificate string, or IrreducibilityError."""
    n = len(coeffs) - 1
    for r in _integer_roots(coeffs):
        raise IrreducibilityError(f"reducible: integer root {r}")
    for p in _SMALL_PRIMES:
        if gf_is_irreducible(gf_normalize(coeffs, p), p):
            return f"irreducible modulo {p}"
    if n <= 3:
        # monic with no integer root: any factorization would need a
        # rational root
        return "no rational root"
    if n == 4:
        split = _quartic_quadratic_split(coeffs)
        if split is not None:
            raise IrreducibilityError(f"reducible: quadratic factors {split}")
        return "no rational root, no quadratic factorization"
    raise IrreducibilityError(
        "cannot certify irreducibility: no modular certificate below 210 "
        "and degree too high for exhaustive factor search"
    )


class NumberField:
    """Field Q[x]/(f) for a monic irreducible integer polynomial f.

    The field discriminant is certified from the polynomial discriminant
    when the index is ruled out at every prime whose square divides it;
    otherwise it stays unknown unless supplied (and cross-checked) by the
    caller via the disc argument.
    """

    def __init__(self, coeffs, disc: int | None = None):
        coeffs = poly_trim([int(c) for c in coeffs])
        if not coeffs or coeffs[-1] != 1:
            raise UnsupportedRepresentationError("monic polynomial required")
        self.degree = len(coeffs) - 1
        if self.degree < 2:
            raise UnsupportedRepresentationError("degree must be at least 2")
        self.coeffs = tuple(coeffs)
        self.irreducibility_certificate = _certify_irreducible(coeffs)
        self.r1, self.r2 = signature(coeffs)
        self.disc_defining = discriminant(coeffs)
        self._dedekind_memo = {}
        self._split_memo = {}
        certified = self._certify_field_disc()
        if disc is not None:
            self._validate_supplied_disc(disc, certified)
            self._field_disc = disc
        else:
            self._field_disc = certified
        self._stream_lock = threading.RLock()
        self._built_to = 0
        self._norms = np.empty(0, dtype=np.int64)
        self._weights = np.empty(0)
        self._cum_weights = np.empty(0)
        self._p1_norms = np.empty(0, dtype=np.int64)
        self._p1_weights = np.empty(0)
        self._entry_rows = []

    @classmethod
    def from_string(cls, text: str, disc: int | None = None) -> "NumberField":
        return cls(parse_poly(text), disc=disc)

    def __repr__(self):
        return f"NumberField({list(self.coeffs)})"

    # ------------------------------------------------------------------
    # discriminant certification
    # ------------------------------------------------------------------
    def _dedekind(self, p: int) -> bool:
        if p not in self._dedekind_memo:
            self._dedekind_memo[p] = dedekind_index_certified(list(self.coeffs), p)
        return self._dedekind_memo[p]

    def _certify_field_disc(self):
        fac, cofactor = factorize(self.disc_defining)
        if cofactor != 1:
            return None
        square_primes = [p for p, e in fac.items() if e >= 2]
        if all(self._dedekind(p) for p in square_primes):
            return self.disc_defining
        return None

    def _validate_supplied_disc(self, disc, certified):
        if certified is not None and disc != certified:
            raise ValueError(
                f"supplied discriminant {disc} contradicts certified value {certified}"
            )
        if disc == 0 or self.disc_defining % disc != 0:
            raise ValueError("supplied discriminant must divide the polynomial discriminant")
        q = self.disc_defining // disc
        if q <= 0 or math.isqrt(q) ** 2 != q:
            raise ValueError("index squared between discriminants must be a positive square")
        if (disc < 0) != (self.r2 % 2 == 1):
            raise ValueError("discriminant sign must be (-1)^r2")
        if disc % 4 not in (0, 1):
            raise ValueError("discriminant must be 0 or 1 mod 4")

    @property
    def field_disc(self) -> int:
        if self._field_disc is None:
            raise UnknownDiscriminantError(
                "field discriminant not certified at all primes; supply disc explicitly"
            )
        return self._field_disc

    @property
    def has_field_disc(self) -> bool:
        return self._field_disc is not None

    @property
    def log_abs_disc(self) -> float:
        return math.log(abs(self.field_disc))

    # ------------------------------------------------------------------
    # splitting
    # ------------------------------------------------------------------
    def split_prime(self, p: int):
        """Splitting type of p as a sorted list of (e, f) pairs, one per prime ideal."""
        memo = self._split_memo
        if p in memo:
            return memo[p]
        if p < 2 or not is_probable_prime(p):
            raise ValueError(f"{p} is not prime")
        f = list(self.coeffs)
        if self.disc_defining % p != 0:
            shape = sorted(
                (1, d) for prod, d in gf_distinct_degree(gf_normalize(f, p), p)
                for _ in range((len(prod) - 1) // d)
            )
        elif self._dedekind(p):
            shape = gf_factor_shape(f, p)
        elif self.degree == 2 and self._field_disc is not None:
            D = self._field_disc
            if D % p == 0:
                shape = [(2, 1)]
            elif kronecker(D, p) == 1:
                shape = [(1, 1), (1, 1)]
            else:
                shape = [(1, 2)]
        else:
            raise SplittingUnavailableError(p)
        assert sum(e * d for e, d in shape) == self.degree
        memo[p] = shape
        return shape

    # ------------------------------------------------------------------
    # ideal stream
    # ------------------------------------------------------------------
    def _ensure_stream(self, x: float, table=None) -> None:
        with self._stream_lock:
            if x <= self._built_to:
                return
            target = int(max(math.ceil(x), 2 * self._built_to, 64))
            table = table or default_table()
            primes = table.primes_up_to(target)
            rows = []
            for p in primes:
                p = int(p)
                for e, fdeg in self.split_prime(p):
                    norm_p = p ** fdeg
                    if norm_p > target:
                        continue
                    w = fdeg * math.log(p)
                    norm = norm_p
                    m = 1
                    while norm <= target:
                        rows.append((norm, p, fdeg, m, w))
                        norm *= norm_p
                        m += 1
            rows.sort()
            self._entry_rows = rows
            self._norms = np.array([r[0] for r in rows], dtype=np.int64)
            self._weights = np.array([r[4] for r in rows])
            self._cum_weights = np.cumsum(self._weights) if rows else np.empty(0)
            first = [r for r in rows if r[3] == 1]
            self._p1_norms = np.array([r[0] for r in first], dtype=np.int64)
            self._p1_weights = np.array([r[4] for r in first])
            self._built_to = target

    def ideal_lambda_stream(self, x: float, table=None):
        """Prime-ideal powers of norm <= x, sorted by norm, with Lambda weights."""
        if x < 2:
            return []
        self._ensure_stream(x, table)
        out = []
        for norm, p, fdeg, m, w in self._entry_rows:
            if norm > x:
                break
            out.append(StreamEntry(p, fdeg, m, norm, w))
        return out

    def prime_ideal_weighted_sum(self, T: float, cT: float, table=None) -> WeightedSum:
        """Sum of log(Np) log(cT/Np) over prime ideals with T < Np <= cT."""
        if not 1.0 <= T < cT:
            raise ValueError("need 1 <= T < cT")
        self._ensure_stream(cT, table)
        lo = np.searchsorted(self._p1_norms, T, side="right")
        hi = np.searchsorted(self._p1_norms, cT, side="right")
        if hi <= lo:
            return WeightedSum(0.0, 0, T, cT)
        norms = self._p1_norms[lo:hi].astype(np.float64)
        value = float(np.sum(self._p1_weights[lo:hi] * (math.log(cT) - np.log(norms))))
        return WeightedSum(value, int(hi - lo), T, cT)

    def short_ideal_sum(self, A: float, table=None) -> float:
        """Sum of Lambda(a) (1/A - 1/Na) over ideal powers with Na <= A; never positive."""
        if A < 2:
            return 0.0
        self._ensure_stream(A, table)
        hi = np.searchsorted(self._norms, math.floor(A), side="right")
        if hi == 0:
            return 0.0
        norms = self._norms[:hi].astype(np.float64)
        return float(np.sum(self._weights[:hi] * (1.0 / A - 1.0 / norms)))

    def field_chebyshev_psi(self, x: float, table=None) -> float:
        """Sum of Lambda over ideal powers of norm <= x."""
        if x < 2:
            return 0.0
        self._ensure_stream(x, table)
        hi = np.searchsorted(self._norms, math.floor(x), side="right")
        return float(self._cum_weights[hi - 1]) if hi else 0.0

    # ------------------------------------------------------------------
    # geometry and principality
    # ------------------------------------------------------------------
    def minkowski_bound(self) -> float:
        n = self.degree
        return (
            math.factorial(n) / n**n
            * (4.0 / math.pi) ** self.r2
            * math.sqrt(abs(self.field_disc))
        )

    def element_norm(self, coeffs) -> int:
        """Norm of the element with the given polynomial coefficients in the generator."""
        g = poly_trim(list(coeffs))
        if not g:
            return 0
        return resultant(list(self.coeffs), g)

    def principality_search(self, p, root_mod_p, norm_target, height_bound):
        """Search for a generator of the degree-1 prime (p, theta - root).

        Enumerates elements with coefficients bounded by height_bound that lie
        in the ideal (value at the root vanishes mod p) and have norm of
        absolute value norm_target. Returns a witness or None.
        """
        if poly_eval(list(self.coeffs), root_mod_p) % p != 0:
            raise ValueError(f"{root_mod_p} is not a root of the polynomial mod {p}")
        n = self.degree
        H = int(height_bound)
        powers = [pow(root_mod_p, i, p) for i in range(n)]
        for cand in itertools.product(range(-H, H + 1), repeat=n):
            if not any(cand):
                continue
            if sum(c * w for c, w in zip(cand, powers)) % p != 0:
                continue
            nm = self.element_norm(list(cand))
            if abs(nm) == norm_target:
                return PrincipalityWitness(tuple(cand), nm)
        return None


def load_cubic_fixtures():
    """Bundled cubic test fields: coefficient rows plus expected |disc|."""
    from importlib import resources

    text = resources.files("genbound").joinpath("data/cubic_fields.txt").read_text()
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        coeff_part, disc_part = line.split()
        coeffs = tuple(int(t) for t in coeff_part.split(","))
        out.append(CubicFixture(coeffs, int(disc_part)))
    return out
