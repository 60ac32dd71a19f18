"""Command-line interface: ``swbranch {invariant,cover,check,plumbing,mu}``.

Exit status: 0 on success, 1 when ``check`` finds an obstructed verdict,
2 on usage or input errors.  All numbers are printed exactly ("a/b").
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from fractions import Fraction
from typing import List, Optional, Sequence

from . import constraints as cons
from .constraints import CoverSpec, Scenario, Status
from .cover import (
    Sphere,
    SphereConfig,
    cover_exists,
    cover_topology,
    ctilde,
    nu,
)
from .errors import SwBranchError
from .exactmath import alpha_sum, beta_sum, dedekind_sum, format_rational as fr
from .plumbing import cusp_boundary_data, cusp_matching_solutions, cusp_sharpness_obstruction, w_graph
from .scenario import load
from .spherical import (
    PRISM_LABELS,
    lens_delta,
    lens_eta,
    prism_invariants,
    rho_lens_cover,
    rho_prism_cover,
    y0_deltas,
)
from .swcalc import mu, rp2_data


# ---------------------------------------------------------------------------
# invariant


def cmd_invariant(args) -> List[str]:
    kind, v = args.kind, args.values

    def need(k):
        if len(v) != k:
            raise SwBranchError(f"{kind} takes {k} integer argument(s)")

    if kind == "lens-delta":
        need(2)
        p, q = v
        return [f"{u}: {fr(lens_delta(p, q, u))}" for u in range(p)]
    if kind == "lens-eta":
        need(2)
        p, q = v
        rows = [f"eta_sig: {fr(lens_eta(p, q, 0)[0])}"]
        return rows + [f"{u}: eta_dir = {fr(lens_eta(p, q, u)[1])}" for u in range(p)]
    if kind == "prism":
        need(1)
        (n,) = v
        if n == 0:
            return [f"(u={u},v={w}): {fr(d)}" for (u, w), d in y0_deltas().items()]
        rows = [f"eta_sig: {fr(prism_invariants(n, 0, 0)[0])}"]
        for u, w in PRISM_LABELS:
            _, eta_dir, delta = prism_invariants(n, u, w)
            rows.append(f"(u={u},v={w}): {fr(delta)}  [eta_dir = {fr(eta_dir)}]")
        return rows
    if kind == "y0":
        need(0)
        return [f"(u={u},v={w}): {fr(d)}" for (u, w), d in y0_deltas().items()]
    if kind == "dedekind":
        need(2)
        return [fr(dedekind_sum(*v))]
    if kind == "alpha":
        need(2)
        return [fr(alpha_sum(*v))]
    if kind == "beta":
        need(2)
        return [fr(beta_sum(*v))]
    if kind == "rho-lens":
        need(2)
        return [fr(rho_lens_cover(*v))]
    if kind == "rho-prism":
        need(1)
        return [fr(rho_prism_cover(*v))]
    raise SwBranchError(f"unknown invariant {kind}")


# ---------------------------------------------------------------------------
# scenario helpers


def _load(args) -> Scenario:
    sc = load(args.scenario)
    if args.prime is not None:
        weights = sc.cover.weights if sc.cover else None
        sc = cons.validate_scenario(replace(sc, cover=CoverSpec(args.prime, weights)))
    return sc


def _verdict_block(i: int, v: cons.Verdict) -> List[str]:
    if v.witness is not None and v.status is not Status.NOT_APPLICABLE:
        head = f"[{i}] {v.status.value} by {v.theorem_id}: {v.witness}"
    else:
        head = f"[{i}] {v.status.value}: {v.theorem_id}"
    rows = [head]
    rows += [f"    detail: {d}" for d in v.details]
    rows += [f"    audit: {a}" for a in v.audit]
    if v.construction is not None:
        rows.append("    NON-SIMPLE-TYPE CONSTRUCTION:")
        rows += [f"      {k}: {v.construction[k]}" for k in sorted(v.construction)]
    return rows


# ---------------------------------------------------------------------------
# cover


def cmd_cover(args) -> List[str]:
    sc = _load(args)
    m = sc.manifold
    p = sc.prime
    rows = [f"scenario: {sc.name}"]
    if p is None:
        raise SwBranchError("cover needs a prime (cover.p in the scenario or --prime)")
    kind = sc.surfaces.kind
    rows.append(f"p = {p}, b+ = {m.b_plus}, sigma = {m.sigma}, surfaces: {kind} (r = {sc.surfaces.r})")
    if kind in ("none", "spheres"):
        ns = [e.n for e in sc.surfaces.entries]
        if kind == "spheres":
            weights, how = cons._cover_weights(sc, p)
            if weights is None:
                rows.append(f"existence: no unit weights make sum phi_i [S_i] = 0 mod {p}")
                return rows
            config = SphereConfig(p, tuple(Sphere(e.n, w, e.class_mod_p) for e, w in zip(sc.surfaces.entries, weights)))
            ex = cover_exists(config, m.h1_coprime_to(p))
            rows.append(f"existence: {ex.reason} (weights {list(weights)}, {how})")
        else:
            rows.append("existence: unbranched (no branch locus)")
        top = cover_topology(p, m.sigma, m.b_plus, ns)
        rows.append(f"rho = {fr(top.rho)}")
        rows.append(f"sigma(X_0) = {top.sigma_X0}, sigma(cover_0) = {fr(top.sigma_cover0)}, "
                    f"b+(cover) = {fr(top.b_plus_cover)}, sigma(cover) = {fr(top.sigma_cover)}")
        rows.append(f"euler(X) = {top.euler_X}, euler(cover) = {top.euler_cover}")
        if kind == "spheres" and sc.reference is not None and all(n % p == 0 for n in ns):
            cs = sc.reference.pairings
            total = 0
            for i, (n, c) in enumerate(zip(ns, cs)):
                try:
                    ct = ctilde(n, p, c)
                    v = nu(p, n, c, ct)
                    total += v
                    rows.append(f"sphere {i}: n = {n}, c = {c}, c~ = {ct}, nu = {fr(v)}")
                except SwBranchError as exc:
                    rows.append(f"sphere {i}: n = {n}, c = {c}: {exc}")
            d = p * sc.reference.d + total
            rows.append(f"d(cover) = {fr(d)}")
        for v in (cons.check_cover_family(sc), cons.check_double_cover(sc)):
            if v.status is Status.NOT_APPLICABLE:
                rows.append(f"{v.theorem_id}: not applicable ({'; '.join(v.details)})")
                continue
            rows += _verdict_block(0, v)[0:1]
            rows += [f"    {d}" for d in v.details]
            if v.status is Status.OBSTRUCTED:
                rows.append(f"    CONTRADICTION: {v.details[-1]}")
            if v.construction is not None:
                rows.append("NON-SIMPLE-TYPE CONSTRUCTION")
                rows += [f"    {k}: {v.construction[k]}" for k in sorted(v.construction)]
        if p != 2:
            rows.append("note: odd-p cover values are determined up to a unit e (shown as x e)")
        return rows
    if kind == "rp2":
        es = [e.e for e in sc.surfaces.entries]
        n = sum(es)
        r = len(es)
        rows.append(f"double cover along projective planes: n = sum e = {n}, n + 2r = {n + 2 * r}")
        bp0 = 2 * m.b_plus + 1 - Fraction(r, 2) - Fraction(n, 4)
        rows.append(f"b+(cover_0) = {fr(bp0)}, sigma(cover_0) = {fr(2 * m.sigma - Fraction(n, 2))}")
        for eps in cons._eps_choices(sc.surfaces.entries):
            try:
                data = rp2_data(r, es, eps, m.b_plus, sc.reference.d if sc.reference else 0)
            except SwBranchError as exc:
                rows.append(f"eps = {list(eps)}: {exc}")
                continue
            rows.append(f"eps = {list(eps)}: d(cover_0) = {data.d_cover}, m = {data.m}, case {data.case}, "
                        f"d(X_0, A+s_0) - d(X_0, s_0) = {fr(data.d_A_shift)}")
        v = cons.check_rp2_cover(sc)
        rows += _verdict_block(0, v)[0:1]
        rows += [f"    {d}" for d in v.details]
        if v.construction is not None:
            rows.append("NON-SIMPLE-TYPE CONSTRUCTION")
            rows += [f"    {k}: {v.construction[k]}" for k in sorted(v.construction)]
        return rows
    rows.append("cusp scenarios are handled by 'check'")
    return rows


# ---------------------------------------------------------------------------
# check


def run_check(sc: Scenario):
    verdicts = cons.evaluate_scenario(sc)
    return verdicts, cons.any_obstructed(verdicts)


def cmd_check(args):
    sc = _load(args)
    verdicts, bad = run_check(sc)
    if args.json_out:
        doc = {"scenario": sc.name, "obstructed": bad, "verdicts": [v.to_dict() for v in verdicts]}
        return [json.dumps(doc, indent=2, sort_keys=True)], (1 if bad else 0)
    rows = [f"scenario: {sc.name}"]
    for i, v in enumerate(verdicts, 1):
        rows += _verdict_block(i, v)
    counts = {s: sum(1 for v in verdicts if v.status is s) for s in Status}
    rows.append("summary: " + ", ".join(f"{s.value} {counts[s]}" for s in Status))
    return rows, (1 if bad else 0)


# ---------------------------------------------------------------------------
# plumbing and mu


def cmd_plumbing(args) -> List[str]:
    ps = [args.p] if args.p is not None else list(range(1, 8))
    rows = []
    for p in ps:
        data = cusp_boundary_data(p)
        g = w_graph(p)
        sols = cusp_matching_solutions(p)
        rows.append(
            f"p = {p}: boundary {data.boundary_label}, filling {g.name} (b2 = {len(g.weights)}, "
            f"det = {fr(g.det())}), matching pairings {sols}, sharpness obstructed = {cusp_sharpness_obstruction(p)}"
        )
        rows += [f"    note: {n}" for n in data.notes]
    return rows


def cmd_mu(args) -> List[str]:
    p = args.prime
    if p is None:
        raise SwBranchError("mu needs --prime")
    val = mu(p, args.n, args.n_vec, args.j)
    return [f"mu_{args.j}({args.n}; {', '.join(map(str, args.n_vec))}) = {val.value} mod {p}"]


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="swbranch", description="Exact invariants and SW constraints for branched covers")
    sub = ap.add_subparsers(dest="command", required=True)

    inv = sub.add_parser("invariant", help="spherical 3-manifold invariants")
    inv.add_argument("kind", choices=["lens-delta", "lens-eta", "prism", "dedekind", "alpha", "beta",
                                      "rho-lens", "rho-prism", "y0"])
    inv.add_argument("values", nargs="*", type=int)

    for name in ("cover", "check"):
        sp = sub.add_parser(name, help=f"{name} report for a scenario document")
        sp.add_argument("--scenario", required=True)
        sp.add_argument("--prime", type=int)
        sp.add_argument("--json-out", action="store_true")

    pl = sub.add_parser("plumbing", help="cusp fillings and sharpness table")
    pl.add_argument("p", nargs="?", type=int)

    mu_p = sub.add_parser("mu", help="raw mu_j coefficient")
    mu_p.add_argument("--prime", type=int, required=True)
    mu_p.add_argument("--j", type=int, default=0)
    mu_p.add_argument("n", type=int)
    mu_p.add_argument("n_vec", nargs="+", type=int)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    code = 0
    try:
        if args.command == "invariant":
            rows = cmd_invariant(args)
        elif args.command == "cover":
            rows = cmd_cover(args)
        elif args.command == "check":
            rows, code = cmd_check(args)
        elif args.command == "plumbing":
            rows = cmd_plumbing(args)
        else:
            rows = cmd_mu(args)
    except (SwBranchError, ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print("\n".join(rows))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
