"""Mod-p Seiberg-Witten formulas for cyclic covers.

The central object is the coefficient

    mu_j(n; n_0, ..., n_{p-1}) = sum_k prod_{i != j} binom(n_i, k_i) (i - j)^(n_i - k_i)  (mod p)

summed over non-negative k with sum k = n - n_j.  Given the APS indices
d_j of the family s_j and the SW values of X on that family, the SW
invariant of the cover is

    SW(cover) = e * sum_j mu_j(-(b_0 + 1)/2; m_0 - d_0, ..., m_{p-1} - d_{p-1}) SW(X, s_j)

for *every* composition m_0 + ... + m_{p-1} = m.  A disagreement between two
compositions means the inputs describe an impossible configuration; that is
what :func:`partition_consistency` detects.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from .errors import IntegralityViolation, ParityViolation
from .exactmath import ModP, gen_binomial

IntOrModP = Union[int, ModP]


def _modp_list(p: int, values: Sequence[IntOrModP]) -> List[ModP]:
    return [v if isinstance(v, ModP) else ModP(p, int(v)) for v in values]


@dataclass(frozen=True)
class EquivariantClass:
    """coeff * v^v_power * u^u_flag in the mod-p equivariant cohomology of a point.

    ``unit_flag`` records that the value is only known up to the unit e.
    """

    coeff: ModP
    v_power: int = 0
    u_flag: int = 0
    unit_flag: bool = False

    @property
    def degree(self) -> int:
        return 2 * self.v_power + self.u_flag

    def is_zero(self) -> bool:
        return self.coeff.value == 0

    def __str__(self):
        mono = ""
        if self.v_power:
            mono += f"v^{self.v_power}"
        if self.u_flag:
            mono += "u"
        text = f"{self.coeff.value}" + (f"*{mono}" if mono else "")
        if self.unit_flag and not self.is_zero():
            text += " (x e)"
        return f"{text} mod {self.coeff.p}"


# ---------------------------------------------------------------------------
# coefficients


def compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """All tuples of `parts` non-negative integers summing to `total`, in lexicographic order."""
    if total < 0 or parts < 0:
        return
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def mu(p: int, n, n_vec: Sequence[int], j: int) -> ModP:
    """mu_j(n; n_vec) mod p; zero when n is not an integer."""
    if len(n_vec) != p:
        raise ValueError(f"need {p} entries, got {len(n_vec)}")
    n = Fraction(n)
    if n.denominator != 1:
        return ModP(p, 0)
    target = int(n) - n_vec[j]
    if target < 0:
        return ModP(p, 0)
    others = [i for i in range(p) if i != j]
    total = 0
    for ks in compositions(target, len(others)):
        term = 1
        for i, k in zip(others, ks):
            b = gen_binomial(n_vec[i], k) % p
            if b == 0:
                term = 0
                break
            term = term * b * pow(i - j, n_vec[i] - k, p) % p
        total += term
    return ModP(p, total)


def sw_cover_sum(p: int, m_vec: Sequence[int], d_vec: Sequence[int], b0: int, sw_vec: Sequence[IntOrModP]) -> ModP:
    """sum_j mu_j(-(b0+1)/2; m - d) * SW(X, s_j) mod p (without the unit e)."""
    sws = _modp_list(p, sw_vec)
    n = Fraction(-(b0 + 1), 2)
    shifted = [m - d for m, d in zip(m_vec, d_vec)]
    total = ModP(p, 0)
    for j in range(p):
        if sws[j].value:
            total = total + mu(p, n, shifted, j) * sws[j]
    return total


def sw_cover_general(p: int, m_vec: Sequence[int], d_vec: Sequence[int], b0: int, sw_vec: Sequence[IntOrModP]) -> EquivariantClass:
    """SW of the cover for one composition m_vec; for odd p it is defined up to a unit."""
    if len(m_vec) != p or len(d_vec) != p or len(sw_vec) != p:
        raise ValueError("m_vec, d_vec and sw_vec must have p entries")
    if any(m < 0 for m in m_vec):
        raise ValueError("m_vec entries must be non-negative")
    value = sw_cover_sum(p, m_vec, d_vec, b0, sw_vec)
    return EquivariantClass(value, unit_flag=(p != 2))


# ---------------------------------------------------------------------------
# consistency over compositions


@dataclass(frozen=True)
class Consistent:
    value: ModP
    partitions_checked: int

    ok = True


@dataclass(frozen=True)
class Contradiction:
    first: Tuple[int, ...]
    first_value: ModP
    second: Tuple[int, ...]
    second_value: ModP

    ok = False

    def __str__(self):
        return (
            f"S{self.first} = {self.first_value.value} but S{self.second} = "
            f"{self.second_value.value} (mod {self.first_value.p})"
        )


def partition_consistency(p: int, m: int, d_vec: Sequence[int], b0: int, sw_vec: Sequence[IntOrModP]):
    """Evaluate the covering sum on every composition of m into p parts."""
    if m < 0:
        raise ValueError("m must be non-negative")
    first = None
    count = 0
    for comp in compositions(m, p):
        val = sw_cover_sum(p, comp, d_vec, b0, sw_vec)
        count += 1
        if first is None:
            first = (comp, val)
        elif val != first[1]:
            return Contradiction(first[0], first[1], comp, val)
    return Consistent(first[1], count)


def cover_m(d_cover: int) -> int:
    """m = ceil(d / 2) for the composition sums."""
    return -((-d_cover) // 2)


class DimBound(enum.Enum):
    OK = "Ok"
    VIOLATES_BOUND = "ViolatesBound"
    NON_SIMPLE_TYPE = "NonSimpleType"


def dim_bound_check(k: int, d_cover: int) -> DimBound:
    """k = number of family members with SW != 0 mod p."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > 0 and d_cover > 2 * k - 2:
        return DimBound.VIOLATES_BOUND
    if k > 1 and d_cover == 2 * k - 2:
        return DimBound.NON_SIMPLE_TYPE
    return DimBound.OK


# ---------------------------------------------------------------------------
# double covers branched along spheres


@dataclass(frozen=True)
class P2CaseReport:
    r: int
    T: int
    bound: int
    d_cover: int
    d_shift_Ls: Fraction
    case: Optional[int]
    obstructed: bool
    non_simple_type: bool
    sw_cover: Optional[ModP]
    statement: str


def sw_p2_cases(r: int, c_list: Sequence[int], n_list: Sequence[int], sw_s: IntOrModP, sw_Ls: IntOrModP) -> P2CaseReport:
    """Classify a double-cover configuration of r spheres with [S_i]^2 = -n_i.

    T = sum c_i - sum n_i (after orienting so that c_i >= 0).  ``d_shift_Ls``
    is d(X, [S]/2 + s) - d(X, s) = (2 sum c - sum n)/4: if it is nonzero
    and X has simple type, SW(X, [S]/2 + s) must vanish.
    """
    if len(c_list) != r or len(n_list) != r:
        raise ValueError("need r pairings and r self-intersections")
    if any(n % 2 for n in n_list):
        raise ParityViolation("double covers need every n_i even")
    sw_s, sw_Ls = _modp_list(2, [sw_s, sw_Ls])
    cs = [abs(c) for c in c_list]
    sum_c, sum_n = sum(cs), sum(n_list)
    T = sum_c - sum_n
    bound = 4 - 2 * r
    d_cover = r + T // 2
    shift = Fraction(2 * sum_c - sum_n, 4)
    if T > bound:
        return P2CaseReport(r, T, bound, d_cover, shift, 1, True, False, None,
                            f"c.S + S^2 = {T} <= {bound} is FALSE")
    if T == bound:
        ok = r >= 4 and sum_c == 2 * r - 4 and sum_n == 4 * r - 8
        if not ok:
            return P2CaseReport(r, T, bound, d_cover, shift, 3, True, False, None,
                                f"borderline c.S + S^2 = {bound} needs r >= 4, c.S = {2 * r - 4}, "
                                f"S^2 = {8 - 4 * r}; got r = {r}, c.S = {sum_c}, S^2 = {-sum_n}")
        if sw_Ls.value == 0 or sw_s.value == 0:
            return P2CaseReport(r, T, bound, d_cover, shift, 3, True, False, None,
                                "borderline case needs SW(X,s) = SW(X,[S]/2+s) = 1 mod 2")
        return P2CaseReport(r, T, bound, d_cover, shift, 3, False, True, ModP(2, 1),
                            "d(cover) = 2 and SW(cover) = SW(X,s) = SW(X,[S]/2+s) = 1: cover not of simple type")
    if T == -2 * r:
        value = sw_s + sw_Ls
        return P2CaseReport(r, T, bound, d_cover, shift, 2, False, False, value,
                            f"d(cover) = 0 and SW(cover) = SW(X,s) + SW(X,[S]/2+s) = {value.value} mod 2")
    if T < -2 * r:
        return P2CaseReport(r, T, bound, d_cover, shift, 4, False, False, ModP(2, 0),
                            "d(cover) < 0 so SW(cover) = 0")
    return P2CaseReport(r, T, bound, d_cover, shift, None, False, False, None,
                        f"d(cover) = {d_cover}: no closed formula asserted")


# ---------------------------------------------------------------------------
# double covers branched along projective planes


@dataclass(frozen=True)
class RP2Data:
    r: int
    n: int
    eps: int
    delta0: int
    delta1: int
    d0: int
    d1: int
    d_cover: int
    case: int  # 1: n + 2r = 0 mod 8, 2: n + 2r = 4 mod 8

    @property
    def m(self) -> int:
        return self.d_cover // 2 if self.case == 1 else (self.d_cover + 1) // 2

    @property
    def d_A_shift(self) -> Fraction:
        """d(X_0, A + s_0) - d(X_0, s_0) = n/4 - eps/2."""
        return Fraction(self.n, 4) - Fraction(self.eps, 2)


def rp2_data(r: int, n_vec: Sequence[int], eps_vec: Sequence[int], b_plus_X0: int, d_X0: int) -> RP2Data:
    if len(n_vec) != r or len(eps_vec) != r:
        raise ValueError("need r Euler numbers and r signs")
    if any(e not in (1, -1) for e in eps_vec):
        raise ValueError("eps_i must be +1 or -1")
    n = sum(n_vec)
    eps = sum(eps_vec)
    if n % 2:
        raise IntegralityViolation(f"total Euler number {n} is odd")
    if (eps - n // 2) % 4:
        raise IntegralityViolation(f"eps = {eps} is not n/2 = {n // 2} mod 4")
    if (n + 2 * r) % 4:
        raise IntegralityViolation(f"n + 2r = {n + 2 * r} is not divisible by 4")
    if d_X0 % 2:
        raise IntegralityViolation("d(X, s) must be even")
    if (b_plus_X0 + 1) % 2:
        raise IntegralityViolation("b+ must be odd for the indices to be integral")
    delta0 = d_X0 // 2
    delta1 = delta0 + (n - 2 * eps) // 8
    half_b = (b_plus_X0 + 1) // 2
    d_cover = 4 * delta0 + (r + n - eps) // 2
    case = 1 if (n + 2 * r) % 8 == 0 else 2
    return RP2Data(r, n, eps, delta0, delta1, delta0 + half_b, delta1 + half_b, d_cover, case)


def rp2_value(data: RP2Data, m0: int, m1: int, sw_s: IntOrModP, sw_As: IntOrModP) -> ModP:
    """binom(m1-d1, delta0-m0) SW(s) + binom(m0-d0, delta1-m1) SW(A+s) mod 2."""
    sw_s, sw_As = _modp_list(2, [sw_s, sw_As])
    a = gen_binomial(m1 - data.d1, data.delta0 - m0)
    b = gen_binomial(m0 - data.d0, data.delta1 - m1)
    return ModP(2, a) * sw_s + ModP(2, b) * sw_As


def sw_rp2_cases(
    r: int,
    n_vec: Sequence[int],
    eps_vec: Sequence[int],
    b_plus_X0: int,
    d_X0: int,
    sw_s: IntOrModP,
    sw_As: IntOrModP,
    m_partition: Tuple[int, int],
) -> EquivariantClass:
    """SW of the double cover of X_0 branched along projective planes, for one (m0, m1)."""
    data = rp2_data(r, n_vec, eps_vec, b_plus_X0, d_X0)
    m0, m1 = m_partition
    if m0 < 0 or m1 < 0:
        raise ValueError("m0, m1 must be non-negative")
    if data.case == 1 and data.d_cover < 0:
        raise ValueError(f"d(cover) = {data.d_cover} < 0")
    if data.case == 2 and data.d_cover <= 0:
        raise ValueError(f"d(cover) = {data.d_cover} must be positive when n + 2r = 4 mod 8")
    if m0 + m1 != data.m:
        raise ValueError(f"m0 + m1 must equal {data.m}")
    value = rp2_value(data, m0, m1, sw_s, sw_As)
    return EquivariantClass(value, u_flag=1 if data.case == 2 else 0)


def rp2_partition_consistency(data: RP2Data, sw_s: IntOrModP, sw_As: IntOrModP):
    """Check the binomial formula for every (m0, m1) with m0 + m1 = m."""
    first = None
    count = 0
    for m0 in range(data.m + 1):
        comp = (m0, data.m - m0)
        val = rp2_value(data, comp[0], comp[1], sw_s, sw_As)
        count += 1
        if first is None:
            first = (comp, val)
        elif val != first[1]:
            return Contradiction(first[0], first[1], comp, val)
    return Consistent(first[1], count)
