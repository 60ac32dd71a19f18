"""Exact arithmetic primitives.

Everything here works over the rationals (``fractions.Fraction``) or over
the prime field Z/p.  Nothing ever touches floating point.

The one non-obvious routine is :func:`symmetric_root_sum`, which evaluates
sums of a rational function over the nontrivial n-th roots of unity.  Such a
sum is invariant under the Galois group, hence rational, and equals the trace
of multiplication by ``numer/denom`` on the algebra Q[x]/(1 + x + ... + x^(n-1)).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Tuple, Union

from .errors import NonInvertibleDenominator, NotCoprime, NotPrime, SingularForm

Rational = Fraction
RationalLike = Union[int, Fraction]

__all__ = [
    "Rational",
    "ModP",
    "IntPolynomial",
    "is_prime",
    "as_rational",
    "is_integral",
    "format_rational",
    "parse_rational",
    "symmetric_root_sum",
    "alpha_sum",
    "beta_sum",
    "dedekind_sum",
    "gen_binomial",
    "modp_rank",
    "mod_inverse",
    "determinant",
    "inverse_matrix",
    "quadratic_form",
]


# ---------------------------------------------------------------------------
# scalars


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    k = 3
    while k * k <= p:
        if p % k == 0:
            return False
        k += 2
    return True


def as_rational(x: RationalLike) -> Fraction:
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


def is_integral(x: RationalLike) -> bool:
    return Fraction(x).denominator == 1


def format_rational(x: RationalLike) -> str:
    """Render as ``a`` or ``a/b`` (lowest terms, sign on the numerator)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """Inverse of :func:`format_rational`; refuses decimal points and exponents."""
    text = text.strip()
    if any(ch in text for ch in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text)


def mod_inverse(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, -1, p)


@dataclass(frozen=True)
class ModP:
    """An element of the prime field Z/p."""

    p: int
    value: int = 0

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> "ModP":
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError(f"mixing Z/{self.p} and Z/{other.p}")
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return ModP(self.p, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.p, self.value + o.value)

    __radd__ = __add__

    def __neg__(self):
        return ModP(self.p, -self.value)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.p, self.value - o.value)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.p, o.value - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.p, self.value * o.value)

    __rmul__ = __mul__

    def inverse(self) -> "ModP":
        return ModP(self.p, mod_inverse(self.value, self.p))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return ModP(self.p, pow(mod_inverse(self.value, self.p), -e, self.p))
        return ModP(self.p, pow(self.value, e, self.p))

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return (other - self.value) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"ModP({self.p}, {self.value})"

    def __str__(self):
        return f"{self.value} (mod {self.p})"


# ---------------------------------------------------------------------------
# polynomials over Q


class IntPolynomial:
    """Univariate polynomial with exact rational coefficients.

    ``coefficients[k]`` is the coefficient of ``x**k``.  Trailing zeros are
    trimmed, so the zero polynomial has an empty coefficient tuple and
    degree -1.  Instances are immutable and hashable.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[RationalLike] = ()):
        coeffs = [as_rational(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    def __setattr__(self, key, value):
        raise AttributeError("IntPolynomial is immutable")

    # constructors
    @classmethod
    def monomial(cls, degree: int, coeff: RationalLike = 1) -> "IntPolynomial":
        if degree < 0:
            raise ValueError("negative degree")
        return cls([0] * degree + [coeff])

    @classmethod
    def constant(cls, c: RationalLike) -> "IntPolynomial":
        return cls([c])

    @classmethod
    def coerce(cls, other) -> "IntPolynomial":
        if isinstance(other, IntPolynomial):
            return other
        return cls.constant(other)

    # basic queries
    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def lead(self) -> Fraction:
        return self.coefficients[-1]

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coefficients):
            return self.coefficients[k]
        return Fraction(0)

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coefficients == other.coefficients
        if isinstance(other, (int, Fraction)):
            return self == IntPolynomial.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return f"IntPolynomial({[format_rational(c) for c in self.coefficients]})"

    # ring operations
    def __add__(self, other):
        other = IntPolynomial.coerce(other)
        n = max(len(self.coefficients), len(other.coefficients))
        return IntPolynomial(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coefficients)

    def __sub__(self, other):
        return self + (-IntPolynomial.coerce(other))

    def __rsub__(self, other):
        return IntPolynomial.coerce(other) - self

    def __mul__(self, other):
        other = IntPolynomial.coerce(other)
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = IntPolynomial.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other: "IntPolynomial") -> Tuple["IntPolynomial", "IntPolynomial"]:
        other = IntPolynomial.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coefficients)
        dq = other.degree
        lead = other.lead()
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            f = c / lead
            quot[k - dq] = f
            for i, b in enumerate(other.coefficients):
                rem[k - dq + i] -= f * b
        return IntPolynomial(quot), IntPolynomial(rem[:dq] if dq > 0 else [])

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def monic(self) -> "IntPolynomial":
        if self.is_zero():
            return self
        lead = self.lead()
        return IntPolynomial(c / lead for c in self.coefficients)


def poly_xgcd(a: IntPolynomial, b: IntPolynomial):
    """Return ``(g, s, t)`` with ``s*a + t*b == g`` and ``g`` monic (or zero)."""
    r0, r1 = a, b
    s0, s1 = IntPolynomial.constant(1), IntPolynomial()
    t0, t1 = IntPolynomial(), IntPolynomial.constant(1)
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lead = r0.lead()
    return r0.monic(), s0 * Fraction(1, lead), t0 * Fraction(1, lead)


# ---------------------------------------------------------------------------
# root-of-unity sums


@lru_cache(maxsize=None)
def _phi(n: int) -> IntPolynomial:
    # (x^n - 1)/(x - 1): its roots are exactly the nontrivial n-th roots of unity
    return IntPolynomial([1] * n)


@lru_cache(maxsize=4096)
def _inverse_mod_phi(denom: IntPolynomial, n: int) -> IntPolynomial:
    phi = _phi(n)
    g, s, _ = poly_xgcd(denom % phi, phi)
    if g.degree != 0:
        raise NonInvertibleDenominator(
            f"denominator vanishes at a nontrivial {n}-th root of unity"
        )
    return s % phi


def _trace_of_product(numer: IntPolynomial, inv: IntPolynomial, n: int) -> Fraction:
    # Sum of numer*inv over the nontrivial n-th roots of unity.  These roots
    # are also roots of x^n - 1, so exponents can be folded mod n; after that
    # Tr(x^0) = n - 1 and Tr(x^k) = -1 for 0 < k < n.
    inv_c = inv.coefficients
    folded = [Fraction(0)] * n
    for a, ca in enumerate(numer.coefficients):
        if ca == 0:
            continue
        for b, cb in enumerate(inv_c):
            folded[(a + b) % n] += ca * cb
    return n * folded[0] - sum(folded, Fraction(0))


def symmetric_root_sum(numer: IntPolynomial, denom: IntPolynomial, n: int) -> Fraction:
    """Exact value of ``sum_{j=1}^{n-1} numer(w^j) / denom(w^j)``, ``w = exp(2 pi i / n)``.

    Raises :class:`NonInvertibleDenominator` when ``denom`` shares a factor with
    ``1 + x + ... + x^(n-1)``.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    numer = IntPolynomial.coerce(numer)
    denom = IntPolynomial.coerce(denom)
    if denom.is_zero():
        raise NonInvertibleDenominator("zero denominator")
    inv = _inverse_mod_phi(denom, n)
    return _trace_of_product(numer, inv, n)


def _one_minus_xk(k: int) -> IntPolynomial:
    return IntPolynomial.constant(1) - IntPolynomial.monomial(k)


def alpha_sum(u: int, n: int) -> Fraction:
    """sum_j w^(ju) / (1 - w^(-j)); closed form (n-1)/2 - u for 0 <= u < n."""
    return symmetric_root_sum(IntPolynomial.monomial(u % n), _one_minus_xk(n - 1), n)


def beta_sum(u: int, n: int) -> Fraction:
    """sum_j w^(ju) / (1 - w^(-j))^2."""
    return symmetric_root_sum(IntPolynomial.monomial(u % n), _one_minus_xk(n - 1) ** 2, n)


# ---------------------------------------------------------------------------
# Dedekind sums


def _sawtooth(x: Fraction) -> Fraction:
    if x.denominator == 1:
        return Fraction(0)
    return x - (x.numerator // x.denominator) - Fraction(1, 2)


def dedekind_sum(q: int, p: int) -> Fraction:
    """s(q, p) = sum_{k=1}^{p-1} ((k/p)) ((kq/p))."""
    if p < 1:
        raise ValueError("p must be positive")
    if gcd(q, p) != 1:
        raise NotCoprime(f"gcd({q}, {p}) != 1")
    total = Fraction(0)
    for k in range(1, p):
        total += _sawtooth(Fraction(k, p)) * _sawtooth(Fraction(k * q, p))
    return total


# ---------------------------------------------------------------------------
# combinatorics


def gen_binomial(a: int, k: int) -> int:
    """Generalised binomial a(a-1)...(a-k+1)/k!, valid for any integer a; 0 if k < 0."""
    if k < 0:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= a - i
        den *= i + 1
    return num // den


# ---------------------------------------------------------------------------
# linear algebra


def modp_rank(vectors: Sequence[Sequence[int]], p: int) -> int:
    """Rank of a list of coordinate vectors over Z/p."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    rows = [[int(x) % p for x in v] for v in vectors]
    if not rows:
        return 0
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("vectors have different lengths")
    rank = 0
    for col in range(width):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _as_matrix(m) -> list:
    rows = [[Fraction(x) for x in row] for row in m]
    if any(len(r) != len(rows) for r in rows):
        raise ValueError("matrix must be square")
    return rows


def determinant(m: Sequence[Sequence[RationalLike]]) -> Fraction:
    a = _as_matrix(m)
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if a[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        for i in range(col + 1, n):
            f = a[i][col] / a[col][col]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return det


def inverse_matrix(m: Sequence[Sequence[RationalLike]]) -> list:
    a = _as_matrix(m)
    n = len(a)
    aug = [row + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if pivot is None:
            raise SingularForm("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        lead = aug[col][col]
        aug[col] = [x / lead for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def quadratic_form(m: Sequence[Sequence[RationalLike]], v: Sequence[RationalLike]) -> Fraction:
    """v^T m v."""
    return sum(
        (Fraction(v[i]) * Fraction(m[i][j]) * Fraction(v[j]) for i in range(len(v)) for j in range(len(v))),
        Fraction(0),
    )
