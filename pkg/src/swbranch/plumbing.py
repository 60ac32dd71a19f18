"""Negative definite plumbings, characteristic vectors and the cusp tables.

A plumbing graph is stored as a list of integer vertex weights plus a list of
edges.  Its intersection form has the weights on the diagonal and a 1 for
every edge.  Everything is exact.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import OutOfRange, SingularForm
from .exactmath import determinant, inverse_matrix, quadratic_form
from .spherical import ADEBoundary, ConnectedSumOfLens, Lens, Manifold3


@dataclass(frozen=True)
class PlumbingGraph:
    weights: Tuple[int, ...]
    edges: Tuple[Tuple[int, int], ...] = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        norm = []
        for a, b in self.edges:
            if a == b or not (0 <= a < len(self.weights) and 0 <= b < len(self.weights)):
                raise ValueError(f"bad edge ({a}, {b})")
            norm.append((min(a, b), max(a, b)))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @property
    def b2(self) -> int:
        return len(self.weights)

    def intersection_matrix(self) -> List[List[int]]:
        k = self.b2
        q = [[0] * k for _ in range(k)]
        for i, w in enumerate(self.weights):
            q[i][i] = w
        for a, b in self.edges:
            q[a][b] += 1
            q[b][a] += 1
        return q

    def det(self) -> int:
        return int(determinant(self.intersection_matrix()))

    def leading_minors(self) -> List[int]:
        q = self.intersection_matrix()
        return [int(determinant([row[:k] for row in q[:k]])) for k in range(1, self.b2 + 1)]

    def is_negative_definite(self) -> bool:
        # Sylvester: Q negative definite iff (-1)^k det(Q_k) > 0 for all k
        return all((-1) ** k * m > 0 for k, m in enumerate(self.leading_minors(), start=1))

    def signature(self) -> int:
        if self.b2 == 0:
            return 0
        if self.is_negative_definite():
            return -self.b2
        return _signature(self.intersection_matrix())

    def is_forest(self) -> bool:
        parent = list(range(self.b2))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra == rb:
                return False
            parent[ra] = rb
        return True

    def __str__(self):
        return self.name or f"Plumbing{self.weights}"


def _signature(m) -> int:
    # diagonalise by congruence over Q
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    pos = neg = 0
    idx = list(range(n))
    while idx:
        piv = next((i for i in idx if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in idx for j in idx if i != j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # replace e_i by e_i + e_j, which has nonzero square
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            if a[i][i] == 0:
                for k in range(n):
                    a[i][k] -= 2 * a[j][k]
                for k in range(n):
                    a[k][i] -= 2 * a[k][j]
            piv = i
        d = a[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        idx.remove(piv)
        for i in idx:
            f = a[i][piv] / d
            if f:
                for k in range(n):
                    a[i][k] -= f * a[piv][k]
                for k in range(n):
                    a[k][i] -= f * a[k][piv]
    return pos - neg


# ---------------------------------------------------------------------------
# constructors


def chain(weights: Sequence[int], name: str = "") -> PlumbingGraph:
    return PlumbingGraph(tuple(weights), tuple((i, i + 1) for i in range(len(weights) - 1)), name)


def disc_bundle(n: int) -> PlumbingGraph:
    """X(n): the disc bundle over S^2 with Euler number n (single vertex)."""
    return PlumbingGraph((n,), (), f"X({n})")


def star(arms: Sequence[int], centre_weight: int = -2, weight: int = -2, name: str = "") -> PlumbingGraph:
    """A central vertex with legs of the given lengths."""
    weights = [centre_weight]
    edges = []
    for length in arms:
        prev = 0
        for _ in range(length):
            weights.append(weight)
            edges.append((prev, len(weights) - 1))
            prev = len(weights) - 1
    return PlumbingGraph(tuple(weights), tuple(edges), name)


def ade(kind: str, rank: int) -> PlumbingGraph:
    """Negative definite plumbing on the Dynkin diagram, all weights -2.

    E_k is the star with legs 1, 2, k-4, which gives E5 = D5 and E4 = A4.
    """
    name = f"{kind}{rank}"
    if kind == "A":
        if rank < 1:
            raise ValueError("A_n needs n >= 1")
        return chain([-2] * rank, name)
    if kind == "D":
        if rank < 3:
            raise ValueError("D_n needs n >= 3")
        return star((1, 1, rank - 3), name=name)
    if kind == "E":
        if not 4 <= rank <= 8:
            raise ValueError("E_n needs 4 <= n <= 8")
        return star((1, 2, rank - 4), name=name)
    raise ValueError(f"unknown Dynkin type {kind!r}")


def disjoint_union(*graphs: PlumbingGraph, name: str = "") -> PlumbingGraph:
    """Boundary connected sum of plumbings = disjoint union of graphs."""
    weights: List[int] = []
    edges: List[Tuple[int, int]] = []
    for g in graphs:
        off = len(weights)
        weights.extend(g.weights)
        edges.extend((a + off, b + off) for a, b in g.edges)
    return PlumbingGraph(tuple(weights), tuple(edges), name or "+".join(str(g) for g in graphs))


def w_graph(p: int) -> PlumbingGraph:
    """The negative definite filling W_p of -p surgery on the left-handed trefoil."""
    if not 1 <= p <= 7:
        raise OutOfRange(f"p={p} not in 1..7")
    if p <= 5:
        # E_{9-p}: b2 = 9 - p, with E5 = D5 and E4 = A4
        g = ade("E", 9 - p)
        return PlumbingGraph(g.weights, g.edges, f"W{p}=E{9 - p}")
    if p == 6:
        return disjoint_union(ade("A", 1), ade("A", 2), name="W6=A1+A2")
    return chain([-8, -2], name="W7")


# ---------------------------------------------------------------------------
# characteristic vectors


@dataclass(frozen=True)
class CharVector:
    coordinates: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coordinates", tuple(int(c) for c in self.coordinates))

    def is_characteristic(self, graph: PlumbingGraph) -> bool:
        return len(self.coordinates) == graph.b2 and all(
            (c - w) % 2 == 0 for c, w in zip(self.coordinates, graph.weights)
        )


def _coords(c) -> Tuple[int, ...]:
    return c.coordinates if isinstance(c, CharVector) else tuple(c)


def delta_4mfd(c_squared, sigma: int) -> Fraction:
    """delta(X, s) = (c(s)^2 - sigma(X)) / 8."""
    return (Fraction(c_squared) - sigma) / 8


def char_square(graph: PlumbingGraph, c) -> Fraction:
    """c^2 = c^T Q^{-1} c, where c lists the pairings with the vertex spheres."""
    coords = _coords(c)
    if len(coords) != graph.b2:
        raise ValueError("coordinate count does not match the graph")
    if graph.b2 == 0:
        return Fraction(0)
    if graph.det() == 0:
        raise SingularForm(f"{graph} has degenerate intersection form")
    return quadratic_form(inverse_matrix(graph.intersection_matrix()), coords)


def delta_plumbing(graph: PlumbingGraph, c) -> Fraction:
    return delta_4mfd(char_square(graph, c), graph.signature())


def characteristic_vectors(graph: PlumbingGraph, bound: int) -> Iterator[CharVector]:
    ranges = []
    for w in graph.weights:
        start = -bound if (bound - w) % 2 == 0 else -bound + 1
        ranges.append(range(start, bound + 1, 2))
    for combo in itertools.product(*ranges):
        yield CharVector(combo)


def sharp_delta_search(graph: PlumbingGraph, target_delta_mod1, bound: int) -> List[CharVector]:
    """Characteristic vectors with |c_i| <= bound whose delta(W, c) = target mod 1."""
    if not graph.is_negative_definite():
        raise ValueError(f"{graph} is not negative definite")
    target = Fraction(target_delta_mod1)
    qinv = inverse_matrix(graph.intersection_matrix()) if graph.b2 else []
    sigma = graph.signature()
    out = []
    for c in characteristic_vectors(graph, bound):
        d = delta_4mfd(quadratic_form(qinv, c.coordinates) if graph.b2 else 0, sigma)
        if (d - target).denominator == 1:
            out.append(c)
    return out


def spinc_class_key(graph: PlumbingGraph, c) -> Tuple[Fraction, ...]:
    """Key identifying the boundary spin^c structure of c: Q^{-1} c / 2 mod Z."""
    coords = _coords(c)
    qinv = inverse_matrix(graph.intersection_matrix())
    key = []
    for row in qinv:
        x = sum((Fraction(a) * b for a, b in zip(row, coords)), Fraction(0)) / 2
        key.append(x - (x.numerator // x.denominator))
    return tuple(key)


def boundary_deltas_by_class(graph: PlumbingGraph, bound: int = 2) -> Dict[Tuple[Fraction, ...], Fraction]:
    """Maximal delta(W, c) within each boundary spin^c class (search box |c_i| <= bound).

    For the sharp fillings used here (ADE plumbings) this is the delta
    invariant of the boundary, which makes it an independent oracle for the
    spherical formulas.
    """
    best: Dict[Tuple[Fraction, ...], Fraction] = {}
    sigma = graph.signature()
    qinv = inverse_matrix(graph.intersection_matrix())
    for c in characteristic_vectors(graph, bound):
        key = spinc_class_key(graph, c)
        d = delta_4mfd(quadratic_form(qinv, c.coordinates), sigma)
        if key not in best or d > best[key]:
            best[key] = d
    return best


# ---------------------------------------------------------------------------
# cusp surgery data


@dataclass(frozen=True)
class CuspFilling:
    p: int
    boundary_label: str
    boundary: Manifold3
    filling: PlumbingGraph
    notes: Tuple[str, ...] = field(default_factory=tuple)


def cusp_boundary_data(p: int) -> CuspFilling:
    """Boundary of -p surgery on the left-handed trefoil and its filling W_p."""
    if not 1 <= p <= 7:
        raise OutOfRange(f"p={p} not in 1..7")
    g = w_graph(p)
    if p <= 5:
        seifert = f"M(-1; (2,-1), (3,-1), ({6 - p},-1))"
        kind, rank = ("E", 9 - p) if p <= 3 else (("D", 5) if p == 4 else ("A", 4))
        return CuspFilling(p, seifert, ADEBoundary(kind, rank), g)
    if p == 6:
        return CuspFilling(p, "L(2,1) # L(3,2)", ConnectedSumOfLens(((2, 1), (3, 2))), g)
    return CuspFilling(
        p,
        "L(7,2)",
        Lens(7, 2),
        g,
        notes=(
            "the two-vertex graph with weights -8, -2 has |det| = 15, so its boundary "
            "is not L(7,2); only b2 = 2 and the even weights are used downstream",
        ),
    )


def cusp_trace_delta(p: int, c: int) -> Fraction:
    """delta of the -p trace X_{-p} with pairing c on the cusp sphere."""
    return Fraction(-c * c, 8 * p) + Fraction(1, 8)


def cusp_matching_solutions(p: int) -> List[int]:
    """All c'' with |c''| <= p, c'' = p mod 2, whose trace delta matches delta(W_p, 0) mod 1."""
    data = cusp_boundary_data(p)
    g = data.filling
    target = delta_4mfd(char_square(g, [0] * g.b2), g.signature())
    return [
        c for c in range(-p, p + 1)
        if (c - p) % 2 == 0 and (cusp_trace_delta(p, c) - target).denominator == 1
    ]


def cusp_sharpness_obstruction(p: int) -> bool:
    """True iff every matching c'' has |c''| = p (so the borderline structure is not sharp)."""
    return all(abs(c) == p for c in cusp_matching_solutions(p))
