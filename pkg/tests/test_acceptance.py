"""Acceptance criteria 1-12.  Each test carries an `acceptance(n)` mark; the
conftest prints one ACCEPTANCE line per criterion at the end of the run."""
import contextlib
import io
import random
import time
from fractions import Fraction
from math import gcd
from pathlib import Path

import pytest

from swbranch import constraints as cons
from swbranch.cli import main
from swbranch.cover import (
    cover_dimension,
    ctilde,
    family_indices,
    nu,
)
from swbranch.errors import NonIntegralDimension, NonIntegralIndex
from swbranch.exactmath import alpha_sum, beta_sum, dedekind_sum, gen_binomial
from swbranch.plumbing import cusp_matching_solutions, cusp_sharpness_obstruction, w_graph
from swbranch.scenario import load
from swbranch.spherical import (
    BinaryDihedral,
    Cyclic,
    delta_group_sum,
    lens_delta,
    lens_eta,
    prism_invariants,
    rho_lens_cover,
    rho_lens_cover_from_eta,
    rho_prism_cover_from_eta,
    prism_eta_sig,
)
from swbranch.swcalc import Contradiction, cover_m, mu, partition_consistency

ROOT = Path(__file__).resolve().parent.parent
SCENARIOS = ROOT / "scenarios"


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


# 1 -------------------------------------------------------------------------


@pytest.mark.acceptance(1)
def test_root_of_unity_sums_match_closed_forms():
    with Timer() as t:
        for n in range(2, 51):
            for u in range(n):
                assert alpha_sum(u, n) == Fraction(n - 1, 2) - u
                assert beta_sum(u, n) == Fraction(-(n - 1) * (n - 5), 12) + Fraction(u * (n - u - 2), 2)
    assert t.elapsed < 10


# 2 -------------------------------------------------------------------------


@pytest.mark.acceptance(2)
def test_lens_deltas_for_q_equal_one():
    with Timer() as t:
        for p in range(1, 31):
            for u in range(p):
                expected = -Fraction((2 * u + 2 - p) ** 2, 8 * p) + Fraction(1, 8)
                assert lens_delta(p, 1, u) == expected
        assert sorted(lens_delta(2, 1, u) for u in range(2)) == [Fraction(-1, 8), Fraction(1, 8)]
    assert t.elapsed < 5


# 3 -------------------------------------------------------------------------


@pytest.mark.acceptance(3)
def test_prism_invariants_two_code_paths():
    with Timer() as t:
        for n in range(1, 31):
            assert prism_invariants(n, 0, 0)[0] == Fraction(2 * n * n + 1, 6 * n)
            for u in (0, 1):
                want0 = Fraction(n + 2 * (-1) ** u, 8)
                assert prism_invariants(n, u, 0)[2] == want0
                assert delta_group_sum(BinaryDihedral(n), (u, 0)) == want0
                assert prism_invariants(n, u, 1)[2] == 0
                assert delta_group_sum(BinaryDihedral(n), (u, 1)) == 0
    assert t.elapsed < 10


# 4 -------------------------------------------------------------------------


@pytest.mark.acceptance(4)
def test_delta_eta_triangle():
    for p in range(1, 21):
        for q in range(1, max(p, 2)):
            if gcd(p, q) != 1:
                continue
            for u in range(p):
                sig, dirac = lens_eta(p, q, u)
                d = lens_delta(p, q, u)
                assert d == -dirac / 2 + sig / 8
                assert d == delta_group_sum(Cyclic(p, q), u)
    for n in list(range(-20, 0)) + list(range(1, 21)):
        for lab in ((0, 0), (1, 0), (0, 1), (1, 1)):
            sig, dirac, d = prism_invariants(n, *lab)
            assert d == -dirac / 2 + sig / 8


# 5 -------------------------------------------------------------------------


@pytest.mark.acceptance(5)
def test_rho_invariants():
    for p in (2, 3):
        for n in range(p, 49, p):
            assert rho_lens_cover(n, p) == rho_lens_cover_from_eta(n, p)
    for m in range(2, 41, 2):
        assert prism_eta_sig(m // 2) - 2 * prism_eta_sig(m) == Fraction(-m, 2)
        assert rho_prism_cover_from_eta(m) == Fraction(-m, 2)


# 6 -------------------------------------------------------------------------


@pytest.mark.acceptance(6)
def test_dedekind_reciprocity_and_s1m():
    for p in range(2, 41):
        for q in range(1, p):
            if gcd(p, q) == 1:
                lhs = dedekind_sum(q, p) + dedekind_sum(p, q)
                assert lhs == Fraction(p * p + q * q + 1, 12 * p * q) - Fraction(1, 4)
    for m in range(1, 41):
        assert dedekind_sum(1, m) == Fraction((m - 1) * (m - 2), 12 * m)


# 7 -------------------------------------------------------------------------


@pytest.mark.acceptance(7)
def test_nu_trichotomy_and_lower_bound():
    with Timer() as t:
        for p in (2, 3, 5):
            for n in range(p, 61, p):
                for c in range(-n + 2, n + 1, 2):
                    v = nu(p, n, c)
                    assert (v == p - 1) == (c == n)
                    assert (v == 0) == (abs(c) == n - 2)
                    if c != n and abs(c) != n - 2:
                        assert v < 0
                    assert v >= (p - 1) + Fraction((p - 1) * (c - n), 2)
    assert t.elapsed < 30


# 8 -------------------------------------------------------------------------


@pytest.mark.acceptance(8)
def test_mu_properties():
    rng = random.Random(20240607)
    for _ in range(1000):
        p = rng.choice((2, 3, 5))
        j = rng.randrange(p)
        n_vec = [rng.randint(-6, 8) for _ in range(p)]
        n = n_vec[j]
        # (a) n_j = n: only k = 0 survives, leaving the product of (i - j)^{n_i}
        expected = 1
        for i in range(p):
            if i != j:
                expected = expected * pow(i - j, n_vec[i], p) % p
        assert mu(p, n, n_vec, j).value == expected != 0
        # (b) n_j > n: empty sum
        assert mu(p, n - rng.randint(1, 5), n_vec, j).value == 0
    for n in range(-10, 11):
        for n0 in range(-10, 11):
            for n1 in range(-10, 11):
                assert mu(2, n, (n0, n1), 0).value == gen_binomial(n1, n - n0) % 2


# 9 -------------------------------------------------------------------------


@pytest.mark.acceptance(9)
def test_cusp_sharpness_obstruction():
    with Timer() as t:
        for p in range(1, 8):
            assert cusp_sharpness_obstruction(p)
            assert sorted(cusp_matching_solutions(p)) == [-p, p]
            assert len(w_graph(p).weights) == 9 - p
    assert t.elapsed < 1


# 10 ------------------------------------------------------------------------


def _verdict(sc, theorem_id):
    return next(v for v in cons.evaluate_scenario(sc) if v.theorem_id == theorem_id)


@pytest.mark.acceptance(10)
def test_theorem_mechanism_regressions():
    with Timer() as t:
        for p, n in ((2, 8), (3, 9), (5, 25)):
            d = family_indices(p, [n], [n], [1], 0, 3)
            dc = cover_dimension(p, 0, [n], [n])
            assert dc == p - 1
            res = partition_consistency(p, cover_m(dc), d, 3, [1] + [0] * (p - 1))
            assert isinstance(res, Contradiction)
            v = _verdict(load(SCENARIOS / f"sphere_borderline_p{p}.json"), cons.COVER_FAMILY)
            assert v.status is cons.Status.OBSTRUCTED
        # (ii) four spheres, sum c = 4, sum n = 8
        sc = load(SCENARIOS / "double_cover_four_spheres.json")
        assert sum(sc.reference.pairings) == 4 and sum(e.n for e in sc.surfaces.entries) == 8
        v = _verdict(sc, cons.DOUBLE_COVER)
        assert v.status is cons.Status.NON_SIMPLE_TYPE
        assert any("SW(cover) = 1" in d for d in v.details)
        # (iii) single projective plane, e = 6
        v = _verdict(load(SCENARIOS / "rp2_euler_six.json"), cons.RP2_COVER)
        assert v.status is cons.Status.NON_SIMPLE_TYPE
        assert any("SW(cover) = 1*1 mod 2" in d for d in v.details)
        # (iv) same with b+ = 3 mod 4
        sc = load(SCENARIOS / "rp2_euler_six_b3.json")
        assert sc.manifold.b_plus % 4 == 3
        assert _verdict(sc, cons.RP2_COVER).status is cons.Status.OBSTRUCTED
        assert _verdict(sc, cons.RP2_BOUND).status is cons.Status.OBSTRUCTED
    assert t.elapsed < 5


# 11 ------------------------------------------------------------------------

INCONSISTENT_DIMENSION = [
    # (p, d(X_0), n, c, explicit lifted pairings)
    (2, 0, [4], [4], [0]),
    (3, 0, [9], [9], [1]),
    (3, Fraction(1, 2), [9], [9], None),
    (2, 0, [8, 8], [8, 6], [0, 1]),
    (5, Fraction(1, 3), [5], [3], None),
]

INCONSISTENT_INDEX = [
    # (p, n, c, phi, d_X, b+)
    (2, [4], [4], [1], 0, 3),
    (2, [2], [2], [1], 0, 3),
    (3, [3], [3], [1], 0, 3),
    (2, [8, 8, 8], [2, 2, 2], [1, 1, 1], 0, 3),
    (2, [8], [8], [1], 0, 2),
    (5, [5], [5], [1], 0, 3),
]


def _consistent_corpus():
    out = []
    for p, n in ((2, 8), (3, 9), (5, 25)):
        out.append((p, [n], [n], [1]))
    out.append((2, [2, 2, 2, 2], [2, 2, 0, 0], [1, 1, 1, 1]))
    out.append((2, [4], [2], [1]))
    out.append((2, [8, 8, 8], [8, 8, 8], [1, 1, 1]))
    out.append((3, [9, 9], [9, 3], [1, 2]))
    return out


@pytest.mark.acceptance(11)
def test_integrality_sentinels():
    for p, d, ns, cs, cts in INCONSISTENT_DIMENSION:
        with pytest.raises(NonIntegralDimension):
            cover_dimension(p, d, ns, cs, cts)
    for p, ns, cs, phis, d, b in INCONSISTENT_INDEX:
        with pytest.raises(NonIntegralIndex):
            family_indices(p, ns, cs, phis, d, b)
    for p, ns, cs, phis in _consistent_corpus():
        cover_dimension(p, 0, ns, cs)
        family_indices(p, ns, cs, phis, 0, 3)
    # every sharp single-sphere input with its canonical lift
    for p in (2, 3, 5):
        for n in range(p, 61, p):
            for c in range(-n + 2, n + 1, 2):
                cover_dimension(p, 0, [n], [c], [ctilde(n, p, c)])


# 12 ------------------------------------------------------------------------


def _run(path):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(["check", "--scenario", str(path)])
    return buf.getvalue() + f"exit status: {code}\n"


@pytest.mark.acceptance(12)
def test_cli_round_trip_is_byte_identical():
    docs = sorted(SCENARIOS.glob("*.json"))
    assert len(docs) >= 10
    for path in docs:
        first, second = _run(path), _run(path)
        assert first == second
        golden = SCENARIOS / "expected" / (path.stem + ".txt")
        assert golden.read_text() == first, path.name
