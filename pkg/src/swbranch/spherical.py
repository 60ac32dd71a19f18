"""Spherical 3-manifolds: lens spaces, prism manifolds and their invariants.

Conventions
-----------
* Lens spaces ``L(p, q)`` carry spin^c labels ``u in Z_p``.
* Prism manifolds ``Y(n)`` (quotients by the binary dihedral group of order
  ``4|n|``) carry labels ``(u, v)`` with ``u, v in {0, 1}``.  ``Y(0)`` is
  ``RP^3 # RP^3`` and ``Y(-n)`` is ``Y(n)`` with reversed orientation.
* All eta invariants are for the round metric (product metric for ``Y(0)``).
* ``delta = -eta_dir/2 + eta_sig/8``; reversing orientation negates all three.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Sequence, Tuple, Union

from .errors import NotCoprime, UnsupportedGroup
from .exactmath import IntPolynomial, dedekind_sum, symmetric_root_sum

LensLabel = int
PrismLabel = Tuple[int, int]
ConnSumLabel = Tuple[int, ...]
Label = Union[LensLabel, PrismLabel, ConnSumLabel]

PRISM_LABELS: Tuple[PrismLabel, ...] = ((0, 0), (1, 0), (0, 1), (1, 1))


# ---------------------------------------------------------------------------
# catalog


@dataclass(frozen=True)
class Lens:
    p: int
    q: int = 1
    orientation: int = 1

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("p must be positive")
        if gcd(self.p, self.q) != 1:
            raise NotCoprime(f"gcd({self.p}, {self.q}) != 1")
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")

    def labels(self) -> List[LensLabel]:
        return list(range(self.p))

    def reversed(self) -> "Lens":
        return Lens(self.p, self.q, -self.orientation)

    def __str__(self):
        sign = "-" if self.orientation < 0 else ""
        return f"{sign}L({self.p},{self.q})"


@dataclass(frozen=True)
class Prism:
    """Y(n): boundary of the disc bundle over RP^2 with Euler number n."""

    n: int

    def labels(self) -> List[PrismLabel]:
        return list(PRISM_LABELS)

    def reversed(self) -> "Prism":
        return Prism(-self.n)

    def __str__(self):
        return f"Y({self.n})"


@dataclass(frozen=True)
class ADEBoundary:
    """Boundary of the negative definite plumbing on an ADE Dynkin diagram.

    ``kind`` is one of ``"A"``, ``"D"``, ``"E"`` and ``rank`` the number of
    vertices, so ``A(n-1)`` bounds ``-L(n, 1)`` and ``D(n+2)`` bounds ``Y(n)``.
    """

    kind: str
    rank: int

    def __post_init__(self):
        if self.kind not in ("A", "D", "E"):
            raise ValueError(f"unknown Dynkin type {self.kind!r}")
        lo = {"A": 1, "D": 3, "E": 6}[self.kind]
        if self.rank < lo or (self.kind == "E" and self.rank > 8):
            raise ValueError(f"no diagram {self.kind}{self.rank}")

    def reduce(self) -> Union[Lens, Prism]:
        """The lens/prism identification of this boundary, where one is known."""
        if self.kind == "A":
            return Lens(self.rank + 1, 1, orientation=-1)
        if self.kind == "D":
            return Prism(self.rank - 2)
        raise UnsupportedGroup(
            f"E{self.rank} boundary: binary polyhedral eta sums are not implemented; "
            "use plumbing.delta_4mfd on the filling instead"
        )

    def labels(self):
        return self.reduce().labels()

    def __str__(self):
        return f"dP({self.kind}{self.rank})"


@dataclass(frozen=True)
class ConnectedSumOfLens:
    summands: Tuple[Tuple[int, int], ...] = field(default_factory=tuple)
    orientation: int = 1

    def lenses(self) -> List[Lens]:
        return [Lens(p, q, self.orientation) for p, q in self.summands]

    def labels(self) -> List[ConnSumLabel]:
        out: List[ConnSumLabel] = [()]
        for lens in self.lenses():
            out = [lab + (u,) for lab in out for u in lens.labels()]
        return out

    def __str__(self):
        sign = "-" if self.orientation < 0 else ""
        return sign + "#".join(f"L({p},{q})" for p, q in self.summands)


Manifold3 = Union[Lens, Prism, ADEBoundary, ConnectedSumOfLens]


# ---------------------------------------------------------------------------
# lens spaces


def _check_lens(p: int, q: int, u: int) -> int:
    if p < 1:
        raise ValueError("p must be positive")
    if gcd(p, q) != 1:
        raise NotCoprime(f"gcd({p}, {q}) != 1")
    if not 0 <= u < p:
        raise ValueError(f"label u={u} out of range for L({p},{q})")
    return q % p


def _one_minus(k: int) -> IntPolynomial:
    return IntPolynomial([1]) - IntPolynomial.monomial(k)


def _lens_character_sum(p: int, qn: int, u: int) -> Fraction:
    # sum_{j=1}^{p-1} w^{ju} / ((1 - w^{-j})(1 - w^{-qj}))
    denom = _one_minus(p - 1) * _one_minus((p - qn) % p)
    return symmetric_root_sum(IntPolynomial.monomial(u), denom, p)


def lens_delta(p: int, q: int, u: int) -> Fraction:
    """delta(L(p,q), s_u)."""
    qn = _check_lens(p, q, u)
    if p == 1:
        return Fraction(0)
    return _lens_character_sum(p, qn, u) / p - dedekind_sum(qn, p) / 2


def lens_eta(p: int, q: int, u: int = 0) -> Tuple[Fraction, Fraction]:
    """(eta_sig, eta_dir) of L(p,q) with the spin^c structure s_u."""
    qn = _check_lens(p, q, u)
    if p == 1:
        return Fraction(0), Fraction(0)
    eta_sig = -4 * dedekind_sum(qn, p)
    eta_dir = -2 * _lens_character_sum(p, qn, u) / p
    return eta_sig, eta_dir


def lens_delta_q1_closed_form(p: int, u: int) -> Fraction:
    """Closed form for q = 1: -(2u + 2 - p)^2/(8p) + 1/8."""
    return -Fraction((2 * u + 2 - p) ** 2, 8 * p) + Fraction(1, 8)


# ---------------------------------------------------------------------------
# prism manifolds


def _sign(n: int) -> int:
    return 1 if n > 0 else -1


def prism_invariants(n: int, u: int, v: int) -> Tuple[Fraction, Fraction, Fraction]:
    """(eta_sig, eta_dir, delta) of Y(n) with label (u, v); n != 0."""
    if n == 0:
        raise ValueError("Y(0) is not spherical; use y0_deltas()")
    if u not in (0, 1) or v not in (0, 1):
        raise ValueError("prism labels are (u, v) with u, v in {0, 1}")
    s = _sign(n)
    m = abs(n)
    eta_sig = Fraction(2 * m * m + 1, 6 * m)
    if v == 0:
        eta_dir = Fraction(1 - 4 * m * m, 24 * m) - Fraction((-1) ** u, 2)
        delta = Fraction(m + 2 * (-1) ** u, 8)
    else:
        eta_dir = Fraction(2 * m * m + 1, 24 * m)
        delta = Fraction(0)
    return s * eta_sig, s * eta_dir, s * delta


def prism_eta_sig(n: int) -> Fraction:
    """eta_sig(Y(n)); the n = 0 value (product metric) is 0."""
    if n == 0:
        return Fraction(0)
    return prism_invariants(n, 0, 0)[0]


def y0_deltas() -> Dict[PrismLabel, Fraction]:
    """Delta invariants of Y(0) = RP^3 # RP^3, built from the two RP^3 summands.

    Label ``(u, 0)`` pairs equal RP^3 structures, ``(u, 1)`` mixed ones.
    """
    rp3 = [lens_delta(2, 1, 0), lens_delta(2, 1, 1)]
    return {
        (0, 0): rp3[0] + rp3[0],
        (1, 0): rp3[1] + rp3[1],
        (0, 1): rp3[0] + rp3[1],
        (1, 1): rp3[1] + rp3[0],
    }


def prism_pullback(n: int, d: int, label: PrismLabel) -> PrismLabel:
    """Pull back s_{u,v} along the degree-d cover Y(n/d) -> Y(n)."""
    if d < 1 or n % d != 0:
        raise ValueError(f"d={d} must be a positive divisor of n={n}")
    u, v = label
    if n % 2 == 0 and d % 2 == 0:
        return (u, 0)
    return (u, v)


# ---------------------------------------------------------------------------
# rho invariants of coverings


def rho_lens_cover(n: int, p: int) -> Fraction:
    """rho of the covering L(n/p, 1) -> L(n, 1)."""
    if n <= 0 or n % p != 0:
        raise ValueError(f"need p | n with n > 0, got n={n}, p={p}")
    return Fraction((p * p - 1) * n, 3 * p) - (p - 1)


def rho_lens_cover_from_eta(n: int, p: int) -> Fraction:
    """Same quantity computed as eta_sig(L(n/p,1)) - p * eta_sig(L(n,1))."""
    return lens_eta(n // p, 1)[0] - p * lens_eta(n, 1)[0]


def rho_prism_cover(m: int) -> Fraction:
    """rho of the double covering Y(m/2) -> Y(m), m even."""
    if m % 2 != 0:
        raise ValueError("m must be even")
    return Fraction(-m, 2)


def rho_prism_cover_from_eta(m: int) -> Fraction:
    if m % 2 != 0:
        raise ValueError("m must be even")
    return prism_eta_sig(m // 2) - 2 * prism_eta_sig(m)


# ---------------------------------------------------------------------------
# delta from the group-element sum


@dataclass(frozen=True)
class Cyclic:
    p: int
    q: int = 1


@dataclass(frozen=True)
class BinaryDihedral:
    """Binary dihedral group of order 4n acting on S^3; quotient Y(n)."""

    n: int


def delta_group_sum(group, label) -> Fraction:
    """delta(S^3/G, s_phi) = (1/|G|) sum_{g != 1} (phi(g) + det(1+g^-1)/8) / det(1-g^-1).

    Evaluated independently of the closed formulas: the cyclic part goes
    through :func:`symmetric_root_sum`, the binary dihedral "x y^j" elements
    (eigenvalues +-i) are added by hand.
    """
    if isinstance(group, Cyclic):
        p, q = group.p, group.q
        qn = _check_lens(p, q, label)
        if p == 1:
            return Fraction(0)
        a = _one_minus(p - 1)
        b = _one_minus((p - qn) % p)
        numer = 8 * IntPolynomial.monomial(label) + (2 - a) * (2 - b)
        return symmetric_root_sum(numer, 8 * a * b, p) / p
    if isinstance(group, BinaryDihedral):
        n = group.n
        if n < 1:
            raise UnsupportedGroup("binary dihedral groups need n >= 1")
        u, v = label
        N = 2 * n
        a = _one_minus(N - 1)
        b = _one_minus(1)
        numer = 8 * IntPolynomial.monomial((n * v) % N) + (2 - a) * (2 - b)
        cyclic_part = symmetric_root_sum(numer, 8 * a * b, N)
        # the 2n elements x y^j: det(1 - g^-1) = det(1 + g^-1) = 2
        char_sum = 2 * n * (-1) ** u if v == 0 else 0
        exceptional = (Fraction(char_sum) + Fraction(2 * n, 4)) / 2
        return (cyclic_part + exceptional) / (4 * n)
    raise UnsupportedGroup(f"unsupported group {group!r}")


# ---------------------------------------------------------------------------
# dispatch over the catalog


def deltas(manifold: Manifold3) -> Dict[Label, Fraction]:
    """All delta invariants of a catalog manifold, keyed by spin^c label."""
    if isinstance(manifold, Lens):
        return {u: manifold.orientation * lens_delta(manifold.p, manifold.q, u) for u in manifold.labels()}
    if isinstance(manifold, Prism):
        if manifold.n == 0:
            return y0_deltas()
        return {lab: prism_invariants(manifold.n, *lab)[2] for lab in PRISM_LABELS}
    if isinstance(manifold, ADEBoundary):
        return deltas(manifold.reduce())
    if isinstance(manifold, ConnectedSumOfLens):
        parts = [deltas(lens) for lens in manifold.lenses()]
        return {lab: sum((parts[i][u] for i, u in enumerate(lab)), Fraction(0)) for lab in manifold.labels()}
    raise TypeError(f"not a catalog manifold: {manifold!r}")


def eta_invariants(manifold: Manifold3) -> Dict[Label, Tuple[Fraction, Fraction]]:
    """(eta_sig, eta_dir) per label for lens spaces and spherical prism manifolds."""
    if isinstance(manifold, Lens):
        o = manifold.orientation
        out = {}
        for u in manifold.labels():
            es, ed = lens_eta(manifold.p, manifold.q, u)
            out[u] = (o * es, o * ed)
        return out
    if isinstance(manifold, Prism):
        if manifold.n == 0:
            raise ValueError("eta_dir of Y(0) is not modelled")
        return {lab: prism_invariants(manifold.n, *lab)[:2] for lab in PRISM_LABELS}
    if isinstance(manifold, ADEBoundary):
        return eta_invariants(manifold.reduce())
    raise TypeError(f"eta invariants not available for {manifold!r}")


def multiset(values) -> List[Fraction]:
    return sorted(values)
