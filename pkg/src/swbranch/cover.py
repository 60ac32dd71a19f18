"""Cyclic branched covers of a 4-manifold along disjoint embedded spheres.

Notation: the spheres S_i have [S_i]^2 = -n_i (n_i > 0), pairings
c_i = <c(s), [S_i]> normalised into (-n_i, n_i], normal weights phi_i in
Z_p^*, and mod-p homology coordinates.  X_0 is the complement of tubular
neighbourhoods of the spheres; its boundary is a union of lens spaces
L(n_i, 1), covered by L(n_i/p, 1).
"""
from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import (
    DimensionMismatch,
    NonIntegralDimension,
    NonIntegralIndex,
    NotSharp,
    ParityViolation,
)
from .exactmath import is_prime, modp_rank
from .errors import NotPrime
from .spherical import rho_lens_cover


@dataclass(frozen=True)
class Sphere:
    n: int
    phi: int = 1
    class_mod_p: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.n <= 0:
            raise ValueError(f"self-intersection must be negative, got n={self.n}")
        object.__setattr__(self, "class_mod_p", tuple(int(x) for x in self.class_mod_p))


@dataclass(frozen=True)
class SphereConfig:
    p: int
    spheres: Tuple[Sphere, ...] = ()

    def __post_init__(self):
        if not is_prime(self.p):
            raise NotPrime(f"{self.p} is not prime")
        object.__setattr__(self, "spheres", tuple(self.spheres))
        for s in self.spheres:
            if s.phi % self.p == 0:
                raise ValueError("normal weights must be units mod p")

    @property
    def r(self) -> int:
        return len(self.spheres)

    @property
    def n(self) -> List[int]:
        return [s.n for s in self.spheres]

    @property
    def phi(self) -> List[int]:
        return [s.phi for s in self.spheres]


@dataclass(frozen=True)
class SpinCFamily:
    """A spin^c structure s on X together with the data needed for the cover."""

    c: Tuple[int, ...]
    d_X: int = 0
    b_plus: int = 3
    sw_mod_p: Optional[Tuple[int, ...]] = None


# ---------------------------------------------------------------------------
# existence


@dataclass(frozen=True)
class CoverExistence:
    exists: bool
    b1_zero_guaranteed: bool
    reason: str

    def __bool__(self):
        return self.exists


def _weighted_sum(config: SphereConfig) -> Tuple[int, ...]:
    lengths = {len(s.class_mod_p) for s in config.spheres}
    if len(lengths) > 1:
        raise DimensionMismatch(f"class coordinates have lengths {sorted(lengths)}")
    width = lengths.pop() if lengths else 0
    total = [0] * width
    for s in config.spheres:
        for k, x in enumerate(s.class_mod_p):
            total[k] = (total[k] + s.phi * x) % config.p
    return tuple(total)


def any_r_minus_one_independent(classes: Sequence[Sequence[int]], p: int) -> bool:
    r = len(classes)
    if r <= 1:
        return True
    return all(modp_rank(list(sub), p) == r - 1 for sub in itertools.combinations(classes, r - 1))


def cover_exists(config: SphereConfig, h1_coprime_p: bool) -> CoverExistence:
    """Existence of the degree-p cover with the configured weights, and whether b1 = 0 is guaranteed."""
    total = _weighted_sum(config)
    exists = all(x == 0 for x in total)
    if not exists:
        return CoverExistence(False, False, f"sum phi_i [S_i] = {total} != 0 mod {config.p}")
    classes = [s.class_mod_p for s in config.spheres]
    independent = any_r_minus_one_independent(classes, config.p)
    guaranteed = bool(h1_coprime_p and independent)
    if guaranteed:
        reason = "sum phi_i [S_i] = 0; H1 coprime to p and any r-1 classes independent, so b1 = 0"
    elif not h1_coprime_p:
        reason = "sum phi_i [S_i] = 0; b1 = 0 not guaranteed (H1 not known coprime to p)"
    else:
        reason = "sum phi_i [S_i] = 0; b1 = 0 not guaranteed (some r-1 classes dependent)"
    return CoverExistence(True, guaranteed, reason)


def find_weights(classes: Sequence[Sequence[int]], p: int) -> Optional[Tuple[int, ...]]:
    """Lexicographically first unit weights phi with sum phi_i class_i = 0 mod p."""
    if not classes:
        return ()
    width = len(classes[0])
    for phi in itertools.product(range(1, p), repeat=len(classes)):
        if all(sum(f * c[k] for f, c in zip(phi, classes)) % p == 0 for k in range(width)):
            return phi
    return None


# ---------------------------------------------------------------------------
# pairings on the cover


def normalize_pairing(c: int, n: int) -> int:
    """Reduce c into the window (-n, n] modulo 2n, warning if it moved."""
    r = n - ((n - c) % (2 * n))
    if r != c:
        warnings.warn(f"pairing {c} reduced to {r} (mod {2 * n})", stacklevel=2)
    return r


def _check_parity(n: int, c: int) -> None:
    if (c - n) % 2:
        raise ParityViolation(f"c={c} and n={n} have different parity")


def ctilde(n: int, p: int, c: int) -> int:
    """The pairing on the lifted sphere: c~ in (-n/p, n/p], c~ = c + n - n/p mod 2n/p."""
    if n % p:
        raise ValueError(f"p={p} does not divide n={n}")
    _check_parity(n, c)
    m = n // p
    t = (c + n - m) % (2 * m)
    return t if t <= m else t - 2 * m


def nu(p: int, n: int, c: int, c_tilde: Optional[int] = None) -> Fraction:
    """Contribution of one branch sphere to d(cover) - p d(X_0)."""
    if c_tilde is None:
        c_tilde = ctilde(n, p, c)
    else:
        _check_parity(n, c)
    m = n // p
    return (p - 1) + Fraction((c * c - n * n) - (c_tilde * c_tilde - m * m), 4 * m)


def lens_delta_from_pairing(n: int, c: int) -> Fraction:
    """delta(L(n,1), s|) for the restriction of a sharp structure with pairing c."""
    return Fraction(-c * c, 8 * n) + Fraction(1, 8)


def nu_from_deltas(p: int, n: int, c: int) -> Fraction:
    """Same as :func:`nu`, assembled from boundary deltas and the rho invariant."""
    m = n // p
    ct = ctilde(n, p, c)
    return (
        Fraction(p - 1, 2)
        + 2 * (lens_delta_from_pairing(m, ct) - p * lens_delta_from_pairing(n, c))
        - Fraction(3, 4) * rho_lens_cover(n, p)
    )


def cover_dimension(
    p: int,
    d_X0,
    n_list: Sequence[int],
    c_list: Sequence[int],
    ctilde_list: Optional[Sequence[Optional[int]]] = None,
) -> int:
    """d(cover_0, s~_0) = p d(X_0, s_0) + sum nu_i; raises if the result is not an integer."""
    if len(n_list) != len(c_list):
        raise DimensionMismatch("n and c lists differ in length")
    if ctilde_list is None:
        ctilde_list = [None] * len(n_list)
    total = p * Fraction(d_X0)
    for n, c, ct in zip(n_list, c_list, ctilde_list):
        total += nu(p, n, c, ct)
    if total.denominator != 1:
        raise NonIntegralDimension(f"cover dimension {total} is not an integer")
    return int(total)


# ---------------------------------------------------------------------------
# topology of the cover


@dataclass(frozen=True)
class CoverTopology:
    p: int
    r: int
    rho: Fraction
    sigma_X0: int
    sigma_cover0: Fraction
    b_plus_cover0: Fraction
    sigma_cover: Fraction
    b_plus_cover: Fraction
    euler_X: int
    euler_cover: int

    @property
    def integral(self) -> bool:
        return all(x.denominator == 1 for x in (self.sigma_cover0, self.b_plus_cover0))


def cover_topology(p: int, sigma_X: int, b_plus_X: int, n_list: Sequence[int]) -> CoverTopology:
    """Signature, b+ and Euler characteristic of the branched cover.

    X_0 keeps b+(X); its signature gains +1 per removed negative disc bundle.
    The unbranched cover of X_0 follows the covering formulas with boundary
    count r on both sides; the closed cover adds back r negative disc bundles.
    """
    r = len(n_list)
    rho = sum((rho_lens_cover(n, p) for n in n_list), Fraction(0))
    sigma_X0 = sigma_X + r
    sigma_c0 = p * sigma_X0 + rho
    bp_c0 = p * b_plus_X + (p - 1) + Fraction(r - p * r, 2) + rho / 2
    euler_X = 2 + 2 * b_plus_X - sigma_X
    return CoverTopology(
        p=p,
        r=r,
        rho=rho,
        sigma_X0=sigma_X0,
        sigma_cover0=sigma_c0,
        b_plus_cover0=bp_c0,
        sigma_cover=sigma_c0 - r,
        b_plus_cover=bp_c0,
        euler_X=euler_X,
        euler_cover=p * euler_X - 2 * r * (p - 1),
    )


# ---------------------------------------------------------------------------
# spin^c bookkeeping


def sharp_extensions(c_list: Sequence[int], n_list: Sequence[int]) -> List[Tuple[int, ...]]:
    """All sign tuples eps with sum eps_i [S_i] + s again sharp."""
    choices = []
    for c, n in zip(c_list, n_list):
        if abs(c) > n:
            raise NotSharp(f"|c|={abs(c)} exceeds n={n}")
        if c == n:
            choices.append((0, 1))
        elif c == -n:
            choices.append((0, -1))
        else:
            choices.append((0,))
    return list(itertools.product(*choices))


def family_pairings(p: int, n_list: Sequence[int], c_list: Sequence[int], phi_list: Sequence[int], j: int) -> List[int]:
    """Pairings of s_j = s + j*alpha with the spheres, reduced into (-n_i, n_i].

    alpha pairs with S_i as -phi_i n_i / p, so c_i^{(j)} = c_i + 2 j phi_i n_i / p.
    """
    out = []
    for n, c, phi in zip(n_list, c_list, phi_list):
        if n % p:
            raise ValueError(f"p={p} does not divide n={n}")
        raw = c + 2 * j * phi * (n // p)
        out.append(n - ((n - raw) % (2 * n)))
    return out


def family_indices(
    p: int,
    n_list: Sequence[int],
    c_list: Sequence[int],
    phi_list: Sequence[int],
    d_X: int,
    b_plus: int,
) -> List[int]:
    """APS indices d_j = ind(X_0, s_j), j = 0..p-1."""
    d0 = Fraction(d_X + b_plus + 1, 2)
    if d0.denominator != 1:
        raise NonIntegralIndex(f"d_0 = (d_X + b+ + 1)/2 = {d0} is not an integer")
    base = [lens_delta_from_pairing(n, c) for n, c in zip(n_list, c_list)]
    out = []
    for j in range(p):
        cj = family_pairings(p, n_list, c_list, phi_list, j)
        dj = d0 + sum(
            (lens_delta_from_pairing(n, c) - b for n, c, b in zip(n_list, cj, base)), Fraction(0)
        )
        if dj.denominator != 1:
            raise NonIntegralIndex(f"d_{j} = {dj} is not an integer; the inputs are inconsistent")
        out.append(int(dj))
    return out


def family_dimensions(indices: Sequence[int], b_plus: int) -> List[int]:
    """d(X, s_j) = 2 d_j - b+ - 1 for the sharp representatives."""
    return [2 * d - b_plus - 1 for d in indices]
