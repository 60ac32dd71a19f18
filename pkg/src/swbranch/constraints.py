"""Scenario-level verdicts: which configurations of surfaces can exist.

A :class:`Scenario` describes a closed 4-manifold through the handful of
numbers the checks need (b+, signature, simple type, which primes are
coprime to H_1, Seiberg-Witten values of a few spin^c structures) together
with one family of surfaces: spheres, projective planes, or spheres with a
cusp.  Every checker returns :class:`Verdict` objects whose witness is an
exact relation instantiated with the scenario's numbers.  Obstructed
verdicts always carry a witness that evaluates false.

Conditions that can be verified from the data (parities, mod-p ranks,
integrality, bounds) are verified; the rest (simple type, SW values, H_1)
are trusted and echoed in each verdict's audit trail.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .cover import (
    SphereConfig,
    Sphere,
    cover_dimension,
    cover_exists,
    family_dimensions,
    family_indices,
    family_pairings,
    find_weights,
)
from .errors import IntegralityViolation, MalformedScenario, NonIntegralDimension, NonIntegralIndex
from .exactmath import ModP, format_rational, is_prime, modp_rank
from .plumbing import cusp_boundary_data
from .swcalc import (
    Consistent,
    Contradiction,
    DimBound,
    cover_m,
    dim_bound_check,
    partition_consistency,
    rp2_data,
    rp2_partition_consistency,
    sw_p2_cases,
)

# theorem identifiers used in verdicts
SPHERE_STRICT = "sphere-strict-adjunction"
SPHERE_CONFIG = "sphere-configuration-bound"
DOUBLE_COVER = "double-cover-sphere-cases"
COVER_FAMILY = "cover-sw-family"
RP2_BOUND = "rp2-euler-bound"
RP2_COVER = "rp2-cover-sw"
CUSP_ADJUNCTION = "cusp-adjunction"
CUSP_BORDERLINE = "left-cusp-borderline"
CUSP_ZERO = "left-cusp-square-zero"
CUSP_CONFIG = "cusp-configuration-bound"
ROKHLIN = "rokhlin"
GUILLOU_MARIN = "guillou-marin"


# ---------------------------------------------------------------------------
# scenario model


@dataclass(frozen=True)
class FourManifoldModel:
    b_plus: int
    sigma: int
    simple_type: bool = True
    h1_coprime: frozenset = frozenset()
    b1_zero: bool = True
    spin: Optional[bool] = None
    w2: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "h1_coprime", frozenset(int(q) for q in self.h1_coprime))
        if self.w2 is not None:
            object.__setattr__(self, "w2", tuple(int(x) % 2 for x in self.w2))

    @property
    def b_minus(self) -> int:
        return self.b_plus - self.sigma

    @property
    def b_plus_mod4(self) -> int:
        return self.b_plus % 4

    def h1_coprime_to(self, p: int) -> bool:
        return p in self.h1_coprime


@dataclass(frozen=True)
class BasicClass:
    """A spin^c structure with its (integral) SW value, dimension d and pairings with the surfaces."""

    label: str
    sw: int
    d: int = 0
    pairings: Tuple[int, ...] = ()


@dataclass(frozen=True)
class SphereEntry:
    n: int  # [S]^2 = -n
    class_mod_p: Tuple[int, ...] = ()


@dataclass(frozen=True)
class RP2Entry:
    e: int
    class_mod_2: Tuple[int, ...] = ()
    eps: Optional[int] = None


@dataclass(frozen=True)
class CuspEntry:
    handedness: str  # "left" or "right"
    square: int  # [C]^2
    class_mod_2: Tuple[int, ...] = ()

    @property
    def rp2_euler(self) -> int:
        """Euler number of the projective plane made by trading the cusp for a Moebius band."""
        return self.square + (6 if self.handedness == "left" else -6)


@dataclass(frozen=True)
class SurfaceConfig:
    kind: str = "none"  # none | spheres | rp2 | cusps
    entries: Tuple[Any, ...] = ()

    @property
    def r(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class CoverSpec:
    p: int
    weights: Optional[Tuple[int, ...]] = None


@dataclass(frozen=True)
class Scenario:
    manifold: FourManifoldModel
    surfaces: SurfaceConfig = SurfaceConfig()
    basic_classes: Tuple[BasicClass, ...] = ()
    cover: Optional[CoverSpec] = None
    name: str = ""

    @property
    def reference(self) -> Optional[BasicClass]:
        return self.basic_classes[0] if self.basic_classes else None

    @property
    def prime(self) -> Optional[int]:
        return self.cover.p if self.cover else None


def validate_scenario(sc: Scenario) -> Scenario:
    """Check internal consistency and orient spheres/cusps so the reference pairings are >= 0."""
    m = sc.manifold
    if m.b_plus <= 1:
        raise MalformedScenario("b_plus must be > 1", ("manifold", "b_plus"))
    if not m.b1_zero:
        raise MalformedScenario("only b1 = 0 is supported", ("manifold", "b1_zero"))
    kind = sc.surfaces.kind
    if kind not in ("none", "spheres", "rp2", "cusps"):
        raise MalformedScenario(f"unknown surface kind {kind!r}", ("surfaces", "kind"))
    if kind == "none" and sc.surfaces.entries:
        raise MalformedScenario("kind 'none' takes no entries", ("surfaces", "entries"))
    if sc.cover is not None and not is_prime(sc.cover.p):
        raise MalformedScenario(f"{sc.cover.p} is not prime", ("cover", "p"))
    widths = set()
    for i, ent in enumerate(sc.surfaces.entries):
        path = ("surfaces", "entries", str(i))
        if kind == "spheres":
            if ent.n <= 0:
                raise MalformedScenario("spheres must have negative self-intersection (n > 0)", path + ("n",))
            widths.add(len(ent.class_mod_p))
        elif kind == "rp2":
            if ent.eps not in (None, 1, -1):
                raise MalformedScenario("eps must be 1 or -1", path + ("eps",))
            widths.add(len(ent.class_mod_2))
        elif kind == "cusps":
            if ent.handedness not in ("left", "right"):
                raise MalformedScenario("handedness must be 'left' or 'right'", path + ("handedness",))
            widths.add(len(ent.class_mod_2))
    if len(widths) > 1:
        raise MalformedScenario("surface classes have different lengths", ("surfaces", "entries"))
    r = sc.surfaces.r
    for k, bc in enumerate(sc.basic_classes):
        path = ("manifold", "basic_classes", str(k))
        if (bc.d + m.b_plus + 1) % 2:
            raise MalformedScenario(f"d = {bc.d} has the wrong parity for b+ = {m.b_plus}", path + ("d",))
        if m.simple_type and bc.sw != 0 and bc.d != 0:
            raise MalformedScenario("simple type with SW != 0 forces d = 0", path + ("d",))
        if kind in ("spheres", "cusps"):
            if len(bc.pairings) != r:
                raise MalformedScenario(f"need {r} pairings", path + ("pairings",))
        elif bc.pairings:
            raise MalformedScenario(f"pairings are not used for kind {kind!r}", path + ("pairings",))
    if kind == "spheres":
        for k, bc in enumerate(sc.basic_classes):
            for i, (c, ent) in enumerate(zip(bc.pairings, sc.surfaces.entries)):
                if (c - ent.n) % 2:
                    raise MalformedScenario("pairing and self-intersection have different parity",
                                            ("manifold", "basic_classes", str(k), "pairings", str(i)))
    return _orient(sc)


def _orient(sc: Scenario) -> Scenario:
    ref = sc.reference
    if ref is None or sc.surfaces.kind not in ("spheres", "cusps"):
        return sc
    flips = [c < 0 for c in ref.pairings]
    if not any(flips):
        return sc
    p = sc.prime or 2
    entries = []
    for f, ent in zip(flips, sc.surfaces.entries):
        if f and sc.surfaces.kind == "spheres":
            ent = replace(ent, class_mod_p=tuple((-x) % p for x in ent.class_mod_p))
        entries.append(ent)
    classes = tuple(
        replace(bc, pairings=tuple(-c if f else c for c, f in zip(bc.pairings, flips))) for bc in sc.basic_classes
    )
    return replace(sc, surfaces=replace(sc.surfaces, entries=tuple(entries)), basic_classes=classes)


# ---------------------------------------------------------------------------
# verdicts


class Status(enum.Enum):
    CONSISTENT = "Consistent"
    OBSTRUCTED = "Obstructed"
    NON_SIMPLE_TYPE = "NonSimpleTypeConstruction"
    NOT_APPLICABLE = "NotApplicable"


_OPS = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    "==": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    ">=": lambda a, b: a >= b,
    ">": lambda a, b: a > b,
    "in": lambda a, b: a in b,
    "integral": lambda a, b: Fraction(a).denominator == 1,
}


@dataclass(frozen=True)
class Relation:
    lhs: Any
    op: str
    rhs: Any = None
    label: str = ""

    def holds(self) -> bool:
        return bool(_OPS[self.op](self.lhs, self.rhs))

    def __str__(self):
        lhs = _fmt(self.lhs)
        name = f"{self.label} = {lhs}" if self.label else lhs
        if self.op == "integral":
            return f"{name} is an integer"
        return f"{name} {self.op} {_fmt(self.rhs)}"


def _fmt(x) -> str:
    if isinstance(x, (tuple, frozenset, set, list)):
        return "{" + ", ".join(_fmt(v) for v in sorted(x)) + "}"
    if isinstance(x, ModP):
        return str(x.value)
    return format_rational(x)


@dataclass(frozen=True)
class Witness:
    relations: Tuple[Relation, ...]

    def holds(self) -> bool:
        return all(rel.holds() for rel in self.relations)

    @property
    def text(self) -> str:
        return " and ".join(str(rel) for rel in self.relations)

    def __str__(self):
        return f"{self.text} is {'TRUE' if self.holds() else 'FALSE'}"


def witness(*relations: Relation) -> Witness:
    return Witness(tuple(relations))


@dataclass(frozen=True)
class Verdict:
    theorem_id: str
    status: Status
    witness: Optional[Witness] = None
    details: Tuple[str, ...] = ()
    audit: Tuple[str, ...] = ()
    construction: Optional[Dict[str, Any]] = None

    def __post_init__(self):
        if self.status is Status.OBSTRUCTED and (self.witness is None or self.witness.holds()):
            raise AssertionError(f"{self.theorem_id}: obstructed verdict needs a failing witness")

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"theorem": self.theorem_id, "status": self.status.value}
        if self.witness is not None:
            out["witness"] = self.witness.text
            out["witness_holds"] = self.witness.holds()
        out["details"] = list(self.details)
        out["audit"] = list(self.audit)
        if self.construction is not None:
            out["construction"] = self.construction
        return out


def _na(theorem_id: str, reason: str, audit: Sequence[str] = ()) -> Verdict:
    return Verdict(theorem_id, Status.NOT_APPLICABLE, details=(reason,), audit=tuple(audit))


def _first_failure(hyps: Sequence[Tuple[bool, str]]) -> Optional[str]:
    for ok, text in hyps:
        if not ok:
            return text
    return None


def _trusted(sc: Scenario, p: Optional[int] = None) -> List[str]:
    m = sc.manifold
    out = [f"trusted: simple type = {m.simple_type}", "trusted: b1 = 0"]
    if p is not None:
        out.append(f"trusted: H1 coprime to {p} = {m.h1_coprime_to(p)}")
    ref = sc.reference
    if ref is not None:
        out.append(f"trusted: SW(X, {ref.label}) = {ref.sw}, d = {ref.d}")
    return out


# ---------------------------------------------------------------------------
# spheres


def _sphere_terms(sc: Scenario) -> List[int]:
    ref = sc.reference
    return [abs(c) - ent.n for c, ent in zip(ref.pairings, sc.surfaces.entries)]


def _sphere_common(sc: Scenario, theorem_id: str):
    """Shared hypotheses of the sphere theorems; returns (p, None) or (None, NotApplicable verdict)."""
    if sc.surfaces.kind != "spheres" or sc.surfaces.r == 0:
        return None, _na(theorem_id, "no embedded spheres")
    p = sc.prime
    if p is None:
        return None, _na(theorem_id, "no prime given (cover.p)")
    ref = sc.reference
    m = sc.manifold
    reason = _first_failure([
        (ref is not None, "no spin^c structure given"),
        (ref is None or ref.sw % p != 0, f"SW(X, s) = 0 mod {p}"),
        (m.simple_type, "X not of simple type"),
        (m.h1_coprime_to(p), f"H1(X; Z_{p}) not known to vanish"),
    ])
    if reason:
        return None, _na(theorem_id, reason, _trusted(sc, p))
    return p, None


def check_sphere_single(sc: Scenario) -> Verdict:
    """One sphere with [S] = 0 mod p: the adjunction inequality is strict."""
    p, na = _sphere_common(sc, SPHERE_STRICT)
    if na:
        return na
    if sc.surfaces.r != 1:
        return _na(SPHERE_STRICT, "needs exactly one sphere", _trusted(sc, p))
    ent = sc.surfaces.entries[0]
    if any(x % p for x in ent.class_mod_p):
        return _na(SPHERE_STRICT, f"[S] != 0 mod {p}", _trusted(sc, p))
    c = sc.reference.pairings[0]
    w = witness(Relation(abs(c) - ent.n, "<", 0, "|c.S| + S.S"))
    status = Status.CONSISTENT if w.holds() else Status.OBSTRUCTED
    return Verdict(SPHERE_STRICT, status, w, (f"p = {p}, n = {ent.n}, c = {c}",), tuple(_trusted(sc, p)))


def _config_hypotheses(classes: Sequence[Sequence[int]], p: int) -> Optional[str]:
    r = len(classes)
    if modp_rank(classes, p) >= r:
        return f"classes are independent mod {p}"
    for sub in itertools.combinations(classes, r - 1):
        if modp_rank(list(sub), p) != r - 1:
            return f"some {r - 1} of the classes are dependent mod {p}"
    return None


def check_sphere_multi(sc: Scenario) -> Verdict:
    """Dependent spheres, any r-1 independent: sum |c_i| + S_i^2 <= 4 - 2r.

    For r = 1 the single-sphere theorem applies under the same hypotheses and
    gives the stronger strict bound, which is what is reported.
    """
    p, na = _sphere_common(sc, SPHERE_CONFIG)
    if na:
        return na
    r = sc.surfaces.r
    if r == 1:
        v = check_sphere_single(sc)
        return replace(v, theorem_id=SPHERE_CONFIG, details=v.details + ("r = 1: strict single-sphere bound",))
    classes = [e.class_mod_p for e in sc.surfaces.entries]
    reason = _config_hypotheses(classes, p)
    if reason:
        return _na(SPHERE_CONFIG, reason, _trusted(sc, p))
    terms = _sphere_terms(sc)
    w = witness(Relation(sum(terms), "<=", 4 - 2 * r, "sum |c_i| + S_i.S_i"))
    status = Status.CONSISTENT if w.holds() else Status.OBSTRUCTED
    return Verdict(SPHERE_CONFIG, status, w, (f"p = {p}, r = {r}, terms = {terms}",), tuple(_trusted(sc, p)))


def _lookup_sw(sc: Scenario, pairings: Sequence[int]) -> Optional[BasicClass]:
    """Find a basic-class record by its pairings (compared in the window (-n, n])."""
    ns = [e.n for e in sc.surfaces.entries]

    def window(c, n):
        return n - ((n - c) % (2 * n))

    key = tuple(window(c, n) for c, n in zip(pairings, ns))
    for bc in sc.basic_classes:
        if tuple(window(c, n) for c, n in zip(bc.pairings, ns)) == key:
            return bc
    return None


@dataclass(frozen=True)
class FamilyData:
    p: int
    weights: Tuple[int, ...]
    d_cover: int
    indices: Tuple[int, ...]
    dims: Tuple[int, ...]
    pairings: Tuple[Tuple[int, ...], ...]
    known: Tuple[Optional[int], ...]  # SW(X, s_j) mod p or None when unknown
    sources: Tuple[str, ...]


def _sphere_family(sc: Scenario, p: int, weights: Sequence[int]) -> FamilyData:
    """Pairings, indices and SW values of the family s_j; raises on non-integral input."""
    ents = sc.surfaces.entries
    ns = [e.n for e in ents]
    cs = list(sc.reference.pairings)
    b = sc.manifold.b_plus
    d_cover = cover_dimension(p, sc.reference.d, ns, cs)
    idx = family_indices(p, ns, cs, weights, sc.reference.d, b)
    dims = family_dimensions(idx, b)
    pairings, known, sources = [], [], []
    for j in range(p):
        pj = tuple(family_pairings(p, ns, cs, weights, j))
        pairings.append(pj)
        if j == 0:
            known.append(sc.reference.sw % p)
            sources.append("given")
            continue
        rec = _lookup_sw(sc, pj)
        if sc.manifold.simple_type and dims[j] != 0:
            known.append(0)
            sources.append(f"simple type, d = {dims[j]}")
            if rec is not None and rec.sw % p:
                raise MalformedScenario(f"record {rec.label} has SW != 0 but d = {dims[j]}",
                                        ("manifold", "basic_classes"))
        elif rec is not None:
            known.append(rec.sw % p)
            sources.append(f"record {rec.label}")
        else:
            known.append(None)
            sources.append("unknown")
    return FamilyData(p, tuple(weights), d_cover, tuple(idx), tuple(dims), tuple(pairings), tuple(known), tuple(sources))


def _cover_weights(sc: Scenario, p: int) -> Tuple[Optional[Tuple[int, ...]], str]:
    classes = [e.class_mod_p for e in sc.surfaces.entries]
    if sc.cover.weights is not None:
        if len(sc.cover.weights) != len(classes):
            raise MalformedScenario("one weight per sphere", ("cover", "weights"))
        return tuple(sc.cover.weights), "given"
    w = find_weights(classes, p)
    return w, "found"


def _assignments(known: Sequence[Optional[int]], p: int):
    slots = [i for i, v in enumerate(known) if v is None]
    for values in itertools.product(range(p), repeat=len(slots)):
        sw = list(known)
        for i, v in zip(slots, values):
            sw[i] = v
        yield tuple(sw)


def check_cover_family(sc: Scenario) -> Verdict:
    """Run the covering SW formula over every composition and every unknown family value.

    A configuration is obstructed when no assignment of the unknown SW
    values survives both the composition-independence test and the
    dimension bound.
    """
    p, na = _sphere_common(sc, COVER_FAMILY)
    if na:
        return na
    ents = sc.surfaces.entries
    audit = _trusted(sc, p)
    if sc.reference.d != 0:
        return _na(COVER_FAMILY, "d(X, s) != 0", audit)
    if any(abs(c) > e.n for c, e in zip(sc.reference.pairings, ents)):
        return _na(COVER_FAMILY, "s is not sharp", audit)
    if any(e.n % p for e in ents):
        return _na(COVER_FAMILY, f"p = {p} does not divide every n_i", audit)
    weights, how = _cover_weights(sc, p)
    if weights is None:
        return _na(COVER_FAMILY, f"no unit weights make sum phi_i [S_i] = 0 mod {p}", audit)
    config = SphereConfig(p, tuple(Sphere(e.n, w, e.class_mod_p) for e, w in zip(ents, weights)))
    ex = cover_exists(config, sc.manifold.h1_coprime_to(p))
    audit.append(f"weights {list(weights)} ({how}); {ex.reason}")
    if not ex.exists or not ex.b1_zero_guaranteed:
        return _na(COVER_FAMILY, ex.reason, audit)
    try:
        fam = _sphere_family(sc, p, weights)
    except (NonIntegralIndex, NonIntegralDimension) as exc:
        return Verdict(COVER_FAMILY, Status.OBSTRUCTED, _integrality_witness(sc, p, weights),
                       (f"inconsistent input: {exc}",), tuple(audit))
    details = [
        f"d(cover) = {fam.d_cover}",
        f"family indices d_j = {list(fam.indices)}, d(X, s_j) = {list(fam.dims)}",
    ]
    for j in range(p):
        val = "?" if fam.known[j] is None else str(fam.known[j])
        details.append(f"s_{j}: pairings {list(fam.pairings[j])}, SW = {val} mod {p} ({fam.sources[j]})")
    if fam.d_cover < 0:
        details.append("d(cover) < 0: SW(cover) = 0, no constraint")
        return Verdict(COVER_FAMILY, Status.CONSISTENT, witness(Relation(fam.d_cover, "<", 0, "d(cover)")),
                       tuple(details), tuple(audit))
    m = cover_m(fam.d_cover)
    b0 = sc.manifold.b_plus
    survivors = []
    first_fail = None
    for sw in _assignments(fam.known, p):
        k = sum(1 for v in sw if v)
        res = partition_consistency(p, m, list(fam.indices), b0, list(sw))
        bound = dim_bound_check(k, fam.d_cover)
        if isinstance(res, Contradiction):
            fail = witness(Relation(res.first_value, "==", res.second_value,
                                    f"S{res.first} vs S{res.second}"))
            first_fail = first_fail or (sw, fail, f"compositions disagree: {res}")
            continue
        if bound is DimBound.VIOLATES_BOUND:
            fail = witness(Relation(fam.d_cover, "<=", 2 * k - 2, f"d(cover) with k = {k}"))
            first_fail = first_fail or (sw, fail, f"dimension bound violated with k = {k}")
            continue
        nst = bound is DimBound.NON_SIMPLE_TYPE or (res.value.value != 0 and fam.d_cover > 0)
        survivors.append((sw, res.value, k, nst))
    details.append(f"m = {m}, compositions of m into {p} parts checked for every unknown assignment")
    if not survivors:
        sw, fail, text = first_fail
        details.append(f"assignment SW = {list(sw)}: {text}")
        return Verdict(COVER_FAMILY, Status.OBSTRUCTED, fail, tuple(details), tuple(audit))
    for sw, value, k, nst in survivors:
        details.append(f"surviving SW = {list(sw)}: SW(cover) = {value.value} mod {p}"
                       + (" (x e)" if p != 2 else "") + f", k = {k}" + (", not simple type" if nst else ""))
    w = witness(Relation(fam.d_cover, "<=", 2 * max(s[2] for s in survivors) - 2, "d(cover)"))
    if all(s[3] for s in survivors):
        return Verdict(COVER_FAMILY, Status.NON_SIMPLE_TYPE, w, tuple(details), tuple(audit),
                       {"kind": "branched-cover", "p": p, "weights": list(weights), "d_cover": fam.d_cover})
    return Verdict(COVER_FAMILY, Status.CONSISTENT, w, tuple(details), tuple(audit))


def _integrality_witness(sc: Scenario, p: int, weights: Sequence[int]) -> Witness:
    """An exact relation that fails when the family indices or cover dimension are fractional."""
    from .cover import lens_delta_from_pairing, nu

    ents = sc.surfaces.entries
    ns = [e.n for e in ents]
    cs = list(sc.reference.pairings)
    total = p * Fraction(sc.reference.d) + sum((nu(p, n, c) for n, c in zip(ns, cs)), Fraction(0))
    if total.denominator != 1:
        return witness(Relation(total, "integral", None, "d(cover)"))
    base = [lens_delta_from_pairing(n, c) for n, c in zip(ns, cs)]
    for j in range(1, p):
        cj = family_pairings(p, ns, cs, weights, j)
        shift = sum((lens_delta_from_pairing(n, c) - b for n, c, b in zip(ns, cj, base)), Fraction(0))
        if shift.denominator != 1:
            return witness(Relation(shift, "integral", None, f"d_{j} - d_0"))
    d0 = Fraction(sc.reference.d + sc.manifold.b_plus + 1, 2)
    return witness(Relation(d0, "integral", None, "d_0"))


def check_double_cover(sc: Scenario) -> Verdict:
    """The case analysis for double covers branched along spheres."""
    if sc.prime != 2:
        return _na(DOUBLE_COVER, "needs p = 2")
    p, na = _sphere_common(sc, DOUBLE_COVER)
    if na:
        return na
    ents = sc.surfaces.entries
    audit = _trusted(sc, 2)
    if sc.reference.d != 0:
        return _na(DOUBLE_COVER, "d(X, s) != 0", audit)
    if any(e.n % 2 for e in ents):
        return _na(DOUBLE_COVER, "every n_i must be even", audit)
    config = SphereConfig(2, tuple(Sphere(e.n, 1, e.class_mod_p) for e in ents))
    ex = cover_exists(config, sc.manifold.h1_coprime_to(2))
    audit.append(ex.reason)
    if not ex.exists or not ex.b1_zero_guaranteed:
        return _na(DOUBLE_COVER, ex.reason, audit)
    r = len(ents)
    cs = list(sc.reference.pairings)
    ns = [e.n for e in ents]
    ls_pairings = family_pairings(2, ns, cs, [1] * r, 1)
    shift = Fraction(2 * sum(cs) - sum(ns), 4)
    rec = _lookup_sw(sc, ls_pairings)
    if sc.manifold.simple_type and shift != 0:
        options, src = [0], f"simple type, d(X, L+s) - d(X, s) = {format_rational(shift)}"
    elif rec is not None:
        options, src = [rec.sw % 2], f"record {rec.label}"
    else:
        options, src = [0, 1], "unknown"
    reports = [sw_p2_cases(r, cs, ns, sc.reference.sw % 2, v) for v in options]
    details = [f"SW(X, L+s) from {src}; L+s pairings {ls_pairings}"]
    for v, rep in zip(options, reports):
        val = "-" if rep.sw_cover is None else str(rep.sw_cover.value)
        details.append(f"SW(X, L+s) = {v}: case {rep.case}, d(cover) = {rep.d_cover}, SW(cover) = {val}; {rep.statement}")
    T = reports[0].T
    if all(rep.obstructed for rep in reports):
        rep = reports[0]
        if T > rep.bound:
            w = witness(Relation(T, "<=", rep.bound, "c.S + S.S"))
        elif rep.r < 4 or sum(cs) != 2 * r - 4:
            w = witness(Relation(r, ">=", 4, "r"), Relation(sum(cs), "==", 2 * r - 4, "c.S"))
        else:
            w = witness(Relation(ModP(2, options[0]), "==", ModP(2, 1), "SW(X, L+s)"))
        return Verdict(DOUBLE_COVER, Status.OBSTRUCTED, w, tuple(details), tuple(audit))
    w = witness(Relation(T, "<=", 4 - 2 * r, "c.S + S.S"))
    live = [rep for rep in reports if not rep.obstructed]
    if all(rep.non_simple_type for rep in live):
        return Verdict(DOUBLE_COVER, Status.NON_SIMPLE_TYPE, w, tuple(details), tuple(audit),
                       {"kind": "branched-double-cover", "spheres": r, "d_cover": live[0].d_cover})
    return Verdict(DOUBLE_COVER, Status.CONSISTENT, w, tuple(details), tuple(audit))


# ---------------------------------------------------------------------------
# projective planes


def _rp2_common(sc: Scenario, theorem_id: str, es: Sequence[int], classes: Sequence[Sequence[int]]):
    m = sc.manifold
    ref = sc.reference
    reason = _first_failure([
        (len(es) > 0, "no projective planes"),
        (ref is not None, "no spin^c structure given"),
        (ref is None or ref.sw % 2 == 1, "SW(X, s) is even"),
        (ref is None or ref.d == 0, "d(X, s) != 0"),
        (m.h1_coprime_to(2), "H1(X; Z_2) not known to vanish"),
    ])
    if reason:
        return reason
    r = len(es)
    if r == 1:
        if any(x % 2 for x in classes[0]):
            return "[S] != 0 mod 2"
        return None
    if any(sum(col) % 2 for col in zip(*classes)):
        return "classes do not sum to 0 mod 2"
    return _config_hypotheses(classes, 2)


def _rp2_bound(es: Sequence[int], b_plus: int, theorem_id: str, audit, extra=()) -> Verdict:
    r = len(es)
    total = sum(es)
    bound = max(0, 8 - 2 * r)
    rels = [Relation(total, "<=", bound, "sum e(S_i)")]
    details = list(extra) + [f"r = {r}, e = {list(es)}"]
    if r == 1 and b_plus % 4 == 3:
        rels.append(Relation(total, "<=", 2, "e(S) (b+ = 3 mod 4)"))
    w = witness(*rels)
    if not w.holds():
        return Verdict(theorem_id, Status.OBSTRUCTED, witness(*[x for x in rels if not x.holds()]),
                       tuple(details), tuple(audit))
    if r <= 3 and all(e >= -2 for e in es) and total == 8 - 2 * r:
        recipe: Dict[str, Any] = {"kind": "branched-double-cover", "planes": r,
                                  "fill": "negative definite plumbings on the lifted neighbourhoods"}
        if r == 1:
            recipe["alternative"] = "replace the neighbourhood of S by the D8 plumbing"
        details.append("borderline: the construction does not have simple type")
        return Verdict(theorem_id, Status.NON_SIMPLE_TYPE, w, tuple(details), tuple(audit), recipe)
    return Verdict(theorem_id, Status.CONSISTENT, w, tuple(details), tuple(audit))


def check_rp2(sc: Scenario) -> Verdict:
    """Euler-number bounds for projective planes with vanishing total mod-2 class."""
    if sc.surfaces.kind != "rp2" or sc.surfaces.r == 0:
        return _na(RP2_BOUND, "no projective planes")
    es = [e.e for e in sc.surfaces.entries]
    classes = [e.class_mod_2 for e in sc.surfaces.entries]
    audit = _trusted(sc, 2)
    reason = _rp2_common(sc, RP2_BOUND, es, classes)
    if reason:
        return _na(RP2_BOUND, reason, audit)
    return _rp2_bound(es, sc.manifold.b_plus, RP2_BOUND, audit)


def _eps_choices(entries) -> List[Tuple[int, ...]]:
    n = sum(e.e for e in entries)
    opts = [(e.eps,) if e.eps is not None else (1, -1) for e in entries]
    return [eps for eps in itertools.product(*opts) if (sum(eps) - n // 2) % 4 == 0]


def check_rp2_cover(sc: Scenario) -> Verdict:
    """Evaluate the double-cover SW formula for every admissible sign vector and unknown SW(A + s)."""
    if sc.surfaces.kind != "rp2" or sc.surfaces.r == 0:
        return _na(RP2_COVER, "no projective planes")
    ents = sc.surfaces.entries
    es = [e.e for e in ents]
    classes = [e.class_mod_2 for e in ents]
    audit = _trusted(sc, 2)
    reason = _rp2_common(sc, RP2_COVER, es, classes)
    if reason:
        return _na(RP2_COVER, reason, audit)
    r, n = len(es), sum(es)
    b = sc.manifold.b_plus
    if n % 2 or (n + 2 * r) % 4:
        return Verdict(RP2_COVER, Status.OBSTRUCTED, witness(Relation((n + 2 * r) % 4, "==", 0, "(n + 2r) mod 4")),
                       ("b+ of the cover would not be an integer",), tuple(audit))
    eps_list = _eps_choices(ents)
    if not eps_list:
        return Verdict(RP2_COVER, Status.OBSTRUCTED,
                       witness(Relation(len(eps_list), ">", 0, "admissible sign vectors")),
                       (f"no signs eps_i with sum = n/2 = {n // 2} mod 4",), tuple(audit))
    details = []
    per_eps = []
    first_fail = None
    for eps in eps_list:
        try:
            data = rp2_data(r, es, eps, b, sc.reference.d)
        except IntegralityViolation as exc:
            return _na(RP2_COVER, str(exc), audit)
        head = (f"eps = {list(eps)}: delta0 = {data.delta0}, delta1 = {data.delta1}, "
                f"d0 = {data.d0}, d1 = {data.d1}, d(cover) = {data.d_cover}, case {data.case}")
        if data.d_cover < 0 or (data.case == 2 and data.d_cover == 0):
            details.append(head + ": no constraint")
            per_eps.append([(None, None)])
            continue
        alive = []
        for sw_a in (0, 1):
            res = rp2_partition_consistency(data, 1, sw_a)
            if isinstance(res, Contradiction):
                fail = witness(Relation(res.first_value, "==", res.second_value, f"S{res.first} vs S{res.second}"))
                first_fail = first_fail or (fail, f"{head}, SW(A+s) = {sw_a}: {res}")
                details.append(f"{head}, SW(A+s) = {sw_a}: {res}")
            else:
                alive.append((sw_a, res.value.value, data))
                mono = "u" if data.case == 2 else "1"
                details.append(f"{head}, SW(A+s) = {sw_a}: SW(cover) = {res.value.value}*{mono} mod 2 "
                               f"over m = {data.m}")
        per_eps.append(alive)
    if all(not alive for alive in per_eps):
        fail, text = first_fail
        return Verdict(RP2_COVER, Status.OBSTRUCTED, fail, tuple(details + ["every choice contradicts"]), tuple(audit))
    flat = [a for alive in per_eps for a in alive]
    nst = all(a[0] is not None and a[1] == 1 and a[2].d_cover > 0 for a in flat)
    w = witness(Relation(len(flat), ">", 0, "surviving choices"))
    if nst:
        return Verdict(RP2_COVER, Status.NON_SIMPLE_TYPE, w, tuple(details), tuple(audit),
                       {"kind": "branched-double-cover", "planes": r,
                        "d_cover": sorted({a[2].d_cover for a in flat})})
    return Verdict(RP2_COVER, Status.CONSISTENT, w, tuple(details), tuple(audit))


# ---------------------------------------------------------------------------
# cusps


def check_cusp(sc: Scenario) -> List[Verdict]:
    """Adjunction, borderline constructions and configuration bounds for spheres with a cusp."""
    kinds = (CUSP_ADJUNCTION, CUSP_BORDERLINE, CUSP_ZERO, CUSP_CONFIG)
    if sc.surfaces.kind != "cusps" or sc.surfaces.r == 0:
        return [_na(t, "no cusp spheres") for t in kinds]
    m = sc.manifold
    ref = sc.reference
    audit = _trusted(sc, 2)
    base = _first_failure([
        (ref is not None, "no spin^c structure given"),
        (ref is None or ref.sw != 0, "SW(X, s) = 0"),
        (m.simple_type, "X not of simple type"),
    ])
    if base:
        return [_na(t, base, audit) for t in kinds]
    ents = sc.surfaces.entries
    sw_odd = ref.sw % 2 == 1
    upgrade = sw_odd and m.b_plus % 4 == 3
    out = []
    # adjunction, strict when SW is odd and b+ = 3 mod 4 and [C]^2 >= -7
    rels, borderline, zero = [], [], []
    for i, (c, ent) in enumerate(zip(ref.pairings, ents)):
        strict = upgrade and ent.square >= -7
        rels.append(Relation(abs(c) + ent.square, "<" if strict else "<=", 0, f"|c.C_{i}| + C_{i}.C_{i}"))
        if ent.handedness == "left" and -7 <= ent.square <= -1 and abs(c) + ent.square == 0:
            borderline.append((i, -ent.square))
        if ent.handedness == "left" and ent.square == 0:
            zero.append(i)
    w = witness(*rels)
    if w.holds():
        out.append(Verdict(CUSP_ADJUNCTION, Status.CONSISTENT, w, (), tuple(audit)))
    else:
        out.append(Verdict(CUSP_ADJUNCTION, Status.OBSTRUCTED, witness(*[x for x in rels if not x.holds()]),
                           ("strict when SW is odd and b+ = 3 mod 4",) if upgrade else (), tuple(audit)))
    # borderline left cusps
    if not borderline:
        out.append(_na(CUSP_BORDERLINE, "no left cusp with -7 <= [C]^2 <= -1 at the adjunction bound", audit))
    elif upgrade:
        w = witness(Relation(m.b_plus % 4, "==", 1, "b+ mod 4"))
        out.append(Verdict(CUSP_BORDERLINE, Status.OBSTRUCTED, w,
                           ("the non-simple-type construction would need b+ = 1 mod 4",), tuple(audit)))
    else:
        i, q = borderline[0]
        filling = cusp_boundary_data(q)
        recipe = {"kind": "replace-neighbourhood", "cusp": i, "plumbing": filling.filling.name,
                  "boundary": filling.boundary_label}
        w = witness(Relation(abs(ref.pairings[i]) + ents[i].square, "==", 0, f"|c.C_{i}| + C_{i}.C_{i}"))
        out.append(Verdict(CUSP_BORDERLINE, Status.NON_SIMPLE_TYPE, w,
                           (f"attach W_{q} = {filling.filling.name}",), tuple(audit), recipe))
    # square-zero left cusps
    if not zero:
        out.append(_na(CUSP_ZERO, "no left cusp with [C]^2 = 0", audit))
    elif upgrade:
        w = witness(Relation(m.b_plus % 4, "==", 1, "b+ mod 4"))
        out.append(Verdict(CUSP_ZERO, Status.OBSTRUCTED, w,
                           ("the non-simple-type construction would need b+ = 1 mod 4",), tuple(audit)))
    else:
        w = witness(Relation(ents[zero[0]].square, "==", 0, f"C_{zero[0]}.C_{zero[0]}"))
        out.append(Verdict(CUSP_ZERO, Status.NON_SIMPLE_TYPE, w, ("blow up, then attach E8",), tuple(audit),
                           {"kind": "blowup-and-replace", "cusp": zero[0], "plumbing": "E8"}))
    # configuration bound through projective planes
    rp2 = [ent.rp2_euler for ent in ents]
    reason = _rp2_common(sc, CUSP_CONFIG, rp2, [e.class_mod_2 for e in ents])
    if reason:
        out.append(_na(CUSP_CONFIG, reason, audit))
    else:
        v = _rp2_bound(rp2, m.b_plus, CUSP_CONFIG, audit,
                       (f"squares {[e.square for e in ents]} -> projective planes with e = {rp2}",))
        if v.status is Status.NON_SIMPLE_TYPE:
            v = replace(v, status=Status.CONSISTENT, construction=None)
        out.append(v)
    return out


# ---------------------------------------------------------------------------
# classical bounds


def check_classical(sc: Scenario) -> List[Verdict]:
    """Rokhlin's bound ([S] = 0) and the Guillou-Marin congruence ([S] = w2, X not spin)."""
    m = sc.manifold
    if sc.surfaces.kind != "rp2" or sc.surfaces.r == 0:
        return [_na(ROKHLIN, "no projective planes"), _na(GUILLOU_MARIN, "no projective planes")]
    audit = [f"trusted: H1 coprime to 2 = {m.h1_coprime_to(2)}"]
    out = []
    if not m.h1_coprime_to(2):
        return [_na(ROKHLIN, "H1(X; Z_2) not known to vanish", audit),
                _na(GUILLOU_MARIN, "H1(X; Z_2) not known to vanish", audit)]
    zero = [ent for ent in sc.surfaces.entries if not any(x % 2 for x in ent.class_mod_2)]
    if zero:
        rels, details = [], []
        for ent in zero:
            lo, hi = -2 - 4 * m.b_minus, 2 + 4 * m.b_plus
            rels += [Relation(lo, "<=", ent.e, "-2 - 4 b-"), Relation(ent.e, "<=", hi, "e(S)")]
            if ent.e == hi:
                details.append(f"e(S) = {ent.e} = 2 + 4 b+: the upper bound is attained")
        w = witness(*rels)
        if w.holds():
            out.append(Verdict(ROKHLIN, Status.CONSISTENT, w, tuple(details), tuple(audit)))
        else:
            out.append(Verdict(ROKHLIN, Status.OBSTRUCTED, witness(*[x for x in rels if not x.holds()]),
                               tuple(details), tuple(audit)))
    else:
        out.append(_na(ROKHLIN, "no plane with [S] = 0", audit))
    if m.w2 is None or m.spin is not False:
        out.append(_na(GUILLOU_MARIN, "needs X non-spin with w2 given", audit))
    else:
        hits = [ent for ent in sc.surfaces.entries if tuple(x % 2 for x in ent.class_mod_2) == m.w2]
        if not hits:
            out.append(_na(GUILLOU_MARIN, "no plane with [S] = w2", audit))
        else:
            rels = [Relation((ent.e - m.sigma) % 16, "in", frozenset({2, 14}), "(e - sigma) mod 16") for ent in hits]
            w = witness(*rels)
            if w.holds():
                out.append(Verdict(GUILLOU_MARIN, Status.CONSISTENT, w, (), tuple(audit)))
            else:
                out.append(Verdict(GUILLOU_MARIN, Status.OBSTRUCTED, witness(*[x for x in rels if not x.holds()]),
                                   (), tuple(audit)))
    return out


# ---------------------------------------------------------------------------
# dispatcher


def evaluate_scenario(sc: Scenario) -> List[Verdict]:
    """Run every checker; nothing short-circuits, so contradictions surface independently."""
    sc = validate_scenario(sc)
    out = [
        check_sphere_single(sc),
        check_sphere_multi(sc),
        check_double_cover(sc),
        check_cover_family(sc),
        check_rp2(sc),
        check_rp2_cover(sc),
    ]
    out += check_cusp(sc)
    out += check_classical(sc)
    return out


def any_obstructed(verdicts: Sequence[Verdict]) -> bool:
    return any(v.status is Status.OBSTRUCTED for v in verdicts)
