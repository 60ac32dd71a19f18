import cmath
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from swbranch.errors import NotCoprime, UnsupportedGroup
from swbranch.plumbing import boundary_deltas_by_class, chain
from swbranch.spherical import (
    ADEBoundary,
    BinaryDihedral,
    ConnectedSumOfLens,
    Cyclic,
    Lens,
    Prism,
    delta_group_sum,
    deltas,
    lens_delta,
    lens_delta_q1_closed_form,
    lens_eta,
    multiset,
    prism_invariants,
    prism_pullback,
    rho_lens_cover,
    rho_prism_cover,
    y0_deltas,
)


def hirzebruch_jung(p, q):
    """p/q = a1 - 1/(a2 - 1/...), all a_i >= 2."""
    out = []
    while q:
        a = -(-p // q)
        out.append(a)
        p, q = q, a * q - p
    return out


def float_lens_delta(p, q, u):
    """Numerical group sum over the cyclic group acting by (w, w^q)."""
    total = 0j
    for j in range(1, p):
        w = cmath.exp(2j * cmath.pi * j / p)
        g1, g2 = 1 / w, 1 / w ** q
        total += (cmath.exp(2j * cmath.pi * j * u / p) + (1 + g1) * (1 + g2) / 8) / ((1 - g1) * (1 - g2))
    return total.real / p


coprime_pairs = st.integers(2, 25).flatmap(
    lambda p: st.tuples(st.just(p), st.sampled_from([q for q in range(1, p) if gcd(p, q) == 1]))
)


@given(coprime_pairs)
def test_lens_delta_matches_float_group_sum(pq):
    p, q = pq
    for u in range(p):
        assert abs(float(lens_delta(p, q, u)) - float_lens_delta(p, q, u)) < 1e-9


@given(coprime_pairs)
@settings(max_examples=40, deadline=None)
def test_lens_delta_matches_plumbing_lattice(pq):
    """L(p,q) bounds the negative chain with the continued fraction of p/q;
    the best characteristic vector in each class realises delta."""
    p, q = pq
    weights = [-a for a in hirzebruch_jung(p, q)]
    if sum(-w for w in weights) > 12 or len(weights) > 4:
        return
    g = chain(weights)
    lattice = sorted(boundary_deltas_by_class(g, bound=max(-w for w in weights)).values())
    assert lattice == multiset(lens_delta(p, q, u) for u in range(p))


@given(coprime_pairs)
def test_eta_relation_and_orientation(pq):
    p, q = pq
    for u in range(p):
        sig, dirac = lens_eta(p, q, u)
        assert lens_delta(p, q, u) == sig / 8 - dirac / 2
    rev = deltas(Lens(p, q, orientation=-1))
    assert all(rev[u] == -lens_delta(p, q, u) for u in range(p))


def test_q1_closed_form_and_rp3():
    for p in range(1, 20):
        for u in range(p):
            assert lens_delta(p, 1, u) == lens_delta_q1_closed_form(p, u)
    assert {lens_delta(2, 1, 0), lens_delta(2, 1, 1)} == {Fraction(1, 8), Fraction(-1, 8)}


@pytest.mark.parametrize("rank", [3, 4, 5, 6])
def test_prism_deltas_match_d_type_plumbing(rank):
    from swbranch.plumbing import ade

    lattice = sorted(boundary_deltas_by_class(ade("D", rank), 2).values())
    assert lattice == multiset(deltas(ADEBoundary("D", rank)).values())


@given(st.integers(1, 30))
def test_prism_group_sum(n):
    for lab in ((0, 0), (1, 0), (0, 1), (1, 1)):
        assert prism_invariants(n, *lab)[2] == delta_group_sum(BinaryDihedral(n), lab)
        assert prism_invariants(-n, *lab) == tuple(-x for x in prism_invariants(n, *lab))


def test_y0_and_connected_sums():
    d = y0_deltas()
    assert d[(0, 0)] == Fraction(1, 4) and d[(1, 0)] == Fraction(-1, 4)
    assert d[(0, 1)] == d[(1, 1)] == 0
    cs = deltas(ConnectedSumOfLens(((2, 1), (3, 2))))
    assert len(cs) == 6
    assert cs[(1, 2)] == lens_delta(2, 1, 1) + lens_delta(3, 2, 2)
    assert deltas(Prism(0)) == d


def test_prism_pullback():
    assert prism_pullback(4, 2, (1, 1)) == (1, 0)
    assert prism_pullback(3, 3, (0, 1)) == (0, 1)
    with pytest.raises(ValueError):
        prism_pullback(5, 2, (0, 0))


def test_rho_closed_forms():
    for n in range(2, 21, 2):
        assert rho_lens_cover(n, 2) == lens_eta(n // 2, 1)[0] - 2 * lens_eta(n, 1)[0]
    assert rho_prism_cover(6) == -3
    with pytest.raises(ValueError):
        rho_lens_cover(5, 2)
    with pytest.raises(ValueError):
        rho_prism_cover(3)


def test_errors():
    with pytest.raises(NotCoprime):
        lens_delta(4, 2, 0)
    with pytest.raises(ValueError):
        lens_delta(5, 1, 5)
    with pytest.raises(UnsupportedGroup):
        deltas(ADEBoundary("E", 8))
    with pytest.raises(UnsupportedGroup):
        delta_group_sum("tetrahedral", 0)
    assert delta_group_sum(Cyclic(1), 0) == 0
