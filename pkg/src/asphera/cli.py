"""Command-line interface.

Exit codes: 0 success, 1 a reproduce check failed, 2 bad usage or input,
3 a resource cap was hit, 4 an internal invariant was violated.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .abelian import AbelianGroup
from .borel import borel_homology
from .ghom import (
    GModule,
    group_homology,
    group_homology_report,
    h2_classes,
    homology_gmodule,
    make_gmodule,
    sign_module,
    trivial_module,
)
from .grp import FiniteGroup, all_subgroups, build_group, cyclic, generated_subgroup, subgroup
from .lattice import (
    SimplicialAction,
    SimplicialComplex,
    coset_poset,
    order_complex,
    subgroup_lattice,
    trivial_simplicial_action,
)
from .limits import ScaleExceeded
from .models import coset_shift_action, dihedral_polygon_action, hexagon_action, rotation_action, zpq_graph
from .specseq import DIAGRAM_ONLY, abutment, e2_page, subgroup_diagram_check, subordinate_report
from .topo import chain_complex, components, euler_characteristic, homology, homology_groups, is_connected_graph

SCHEMA = "asphera.report/1"
EXIT_FAILED, EXIT_USAGE, EXIT_SCALE, EXIT_INTERNAL = 1, 2, 3, 4

REPRODUCE_IDS = ("zpq:<p>,<q>", "dihedral:<n>", "three-extensions", "coset-wedge:<group>")


class UsageError(ValueError):
    pass


# input parsing


def parse_action(spec: str) -> SimplicialAction:
    """Named actions: hexagon:<kind>, rotation:<n>,<k>, dihedral:<n>, coset-shift:<group>, zpq:<p>,<q>."""
    kind, _, arg = spec.partition(":")
    try:
        if kind == "hexagon":
            return hexagon_action(arg)
        if kind == "rotation":
            n, k = (int(x) for x in arg.split(","))
            return rotation_action(n, k)
        if kind == "dihedral":
            return dihedral_polygon_action(int(arg))
        if kind == "coset-shift":
            return coset_shift_action(build_group(arg))[1]
        if kind == "zpq":
            p, q = (int(x) for x in arg.split(","))
            return zpq_graph(p, q)[1]
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad action {spec!r}: {exc}") from None
    raise UsageError(f"unknown action {spec!r}; use hexagon:, rotation:, dihedral:, coset-shift: or zpq:")


def load_action(path: str) -> SimplicialAction:
    """JSON file {"group": spec, "complex": {...}, "perms": [[...], ...]} (perms optional: trivial)."""
    data = json.loads(Path(path).read_text())
    G = build_group(data["group"])
    K = SimplicialComplex.from_dict(data["complex"])
    if "perms" not in data:
        return trivial_simplicial_action(G, K)
    return SimplicialAction(G, K, [tuple(p) for p in data["perms"]])


def parse_module(G: FiniteGroup, spec: str) -> GModule:
    """trivial, trivial:<m>, sign, or file:<path> with {n_gens, relations, action}."""
    if spec == "trivial":
        return trivial_module(G)
    if spec.startswith("trivial:"):
        return trivial_module(G, int(spec.split(":", 1)[1]))
    if spec == "sign":
        return sign_module(G)
    if spec.startswith("file:"):
        data = json.loads(Path(spec[5:]).read_text())
        action = data["action"]
        if isinstance(action, dict):  # keyed by element name, as written by to_dict
            action = [action[name] for name in G.names]
        return make_gmodule(G, data["n_gens"], data.get("relations") or None, action, data.get("name", ""))
    raise UsageError(f"unknown module {spec!r}")


def parse_members(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


# compute subcommands


def _compute_group(args) -> dict:
    G = build_group(args.group)
    out = {"group": G.to_dict(), "abelian": G.is_abelian(), "cyclic": G.is_cyclic()}
    if args.subgroups:
        out["subgroups"] = [H.to_dict() for H in all_subgroups(G)]
    return out


def _compute_lattice(args) -> dict | str:
    G = build_group(args.group)
    P = subgroup_lattice(G) if args.subgroup_lattice else coset_poset(G)
    if args.dot:
        return P.to_dot()
    K = order_complex(P)
    return {
        "poset": P.to_dict(),
        "elements": P.size,
        "covering_pairs": len(P.hasse),
        "order_complex": K.to_dict(),
        "euler_characteristic": euler_characteristic(K),
        "components": components(K),
    }


def _compute_homology(args) -> dict | str:
    if args.complex:
        K = SimplicialComplex.from_dict(json.loads(Path(args.complex).read_text()))
    else:
        K = parse_action(args.action).complex
    if args.dot:
        return K.to_dot()
    out = {"complex": {"vertices": K.n_vertices, "dimension": K.dimension}}
    if args.degree is None:
        out["homology"] = [g.to_dict() | {"group": str(g)} for g in homology_groups(K)]
    else:
        hb = homology(K, args.degree)
        out["degree"] = args.degree
        out["homology"] = hb.group.to_dict() | {"group": str(hb.group)}
        out["generators"] = hb.generators
    if args.chains:
        out["chain_complex"] = chain_complex(K).to_dict()
    return out


def _compute_ghom(args, timing: bool) -> dict:
    G = build_group(args.group)
    M = parse_module(G, args.module)
    if args.h2:
        classes = h2_classes(G, M)
        return {
            "group_order": G.order,
            "module": M.to_dict(),
            "classes": [{"order": c.order, "is_split": c.is_split, "coordinates": list(c.coordinates)} for c in classes],
        }
    rep = group_homology_report(G, M, args.degree, args.cohomology, args.method)
    return rep.to_dict(timing)


def _compute_e2(args) -> dict:
    sa = load_action(args.action_file) if args.action_file else parse_action(args.action)
    page = e2_page(sa, args.pmax, args.qmax, cohomological=args.cohomological)
    out = {"page": page.to_dict()}
    if not args.cohomological:
        out["abutment"] = abutment(page, min(args.pmax, max(args.qmax, sa.complex.dimension))).to_dict()
    return out


def _compute_borel(args) -> dict:
    sa = load_action(args.action_file) if args.action_file else parse_action(args.action)
    return borel_homology(sa.complex, sa, args.m, args.kmax, args.route).to_dict()


def _compute_subordinate(args) -> dict:
    sa = load_action(args.action_file) if args.action_file else parse_action(args.action)
    out = {"report": subordinate_report(sa).to_dict()}
    if args.subgroup is not None:
        H = subgroup(sa.group, parse_members(args.subgroup))
        out["diagram"] = subgroup_diagram_check(sa, H).to_dict()
    return out


# reproduce


def _check(name: str, expected, computed) -> dict:
    return {"check": name, "expected": expected, "computed": computed, "pass": expected == computed}


def _cyclic_homology_closed_form(n: int, k: int) -> str:
    if k == 0:
        return "Z"
    return str(AbelianGroup.from_orders([n])) if k % 2 else "0"


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def reproduce_zpq(p: int, q: int) -> list[dict]:
    if p == q or not (_is_prime(p) and _is_prime(q)):
        raise UsageError("zpq needs two distinct primes")
    n = p * q
    P, sa = zpq_graph(p, q)
    K = sa.complex
    checks = [
        _check("vertices", n + p + q, K.n_vertices),
        _check("edges", 2 * n, K.count(1)),
        _check("connected", True, is_connected_graph(K)),
    ]
    hs = homology_groups(K)
    checks.append(_check("H_0", "Z", str(hs[0])))
    checks.append(_check("H_1", str(AbelianGroup((p - 1) * (q - 1))), str(hs[1])))
    M = homology_gmodule(sa, 1)
    G = sa.group
    for k in range(7):
        checks.append(_check(f"H_{k}(Z_{n}; H_1) periodic", "0", str(group_homology(G, M, k, "periodic"))))
    for k in range(4):
        try:
            checks.append(_check(f"H_{k}(Z_{n}; H_1) bar", "0", str(group_homology(G, M, k, "bar"))))
        except ScaleExceeded:
            break
    ab = abutment(e2_page(sa, 5, 1))
    for d in ab.degrees:
        checks.append(_check(f"H_{d.degree}(S) determined", True, d.status == "DETERMINED"))
        checks.append(_check(f"H_{d.degree}(S)", _cyclic_homology_closed_form(n, d.degree), str(d.value)))
    return checks


def reproduce_three_extensions() -> list[dict]:
    G = cyclic(2)
    triv = h2_classes(G, trivial_module(G))
    sign = h2_classes(G, sign_module(G))
    return [
        _check("classes over trivial Z", 2, len(triv)),
        _check("split classes over trivial Z", 1, sum(c.is_split for c in triv)),
        _check("classes over sign Z", 1, len(sign)),
        _check("split classes over sign Z", 1, sum(c.is_split for c in sign)),
        _check("total extensions", 3, len(triv) + len(sign)),
    ]


def reproduce_dihedral(n: int) -> list[dict]:
    if n < 3:
        raise UsageError("dihedral needs n >= 3")
    sa = dihedral_polygon_action(n)
    G = sa.group
    rot = generated_subgroup(G, [1])
    diag = subgroup_diagram_check(sa, rot)
    rep = subordinate_report(sa)
    checks = [
        _check("report kind", DIAGRAM_ONLY, rep.kind),
        _check("rotation quotient is a circle", True, diag.quotient_is_circle),
        _check("rotation row map", [[n]], diag.induced_map),
        _check("rotation index", 2, diag.index),
        _check("Nielsen-Schreier", True, diag.nielsen_schreier),
    ]
    borel = borel_homology(sa.complex, sa, 4, 1)
    # H_1 of the infinite dihedral group when every reflection fixes a vertex
    expected = "Z_2 + Z_2" if n % 2 else None
    checks.append(
        _check("Borel H_1", expected, str(borel.groups[1])) if expected else
        {"check": "Borel H_1", "expected": None, "computed": str(borel.groups[1]), "pass": True}
    )
    return checks


def reproduce_coset_wedge(spec: str) -> list[dict]:
    G = build_group(spec)
    P, sa = coset_shift_action(G)
    K = sa.complex
    hs = homology_groups(K)
    chi = euler_characteristic(K)
    checks = [
        _check("elements", sum(G.order // H.order for H in all_subgroups(G) if H.order < G.order), P.size),
        _check("euler characteristic", sum((-1) ** k * K.count(k) for k in range(K.dimension + 1)), chi),
        _check("connected", True, components(K) == 1),
    ]
    if K.dimension <= 1:
        checks.append(_check("H_1 rank (wedge of circles)", 1 - chi, hs[1].free_rank if len(hs) > 1 else 0))
        checks.append(_check("H_1 torsion-free", True, not (len(hs) > 1 and hs[1].torsion)))
    else:
        checks.append({"check": "homology", "expected": None, "computed": [str(h) for h in hs], "pass": True})
    return checks


def run_reproduce(example: str) -> list[dict]:
    kind, _, arg = example.partition(":")
    try:
        if kind == "zpq":
            p, q = (int(x) for x in arg.split(","))
            return reproduce_zpq(p, q)
        if kind == "three-extensions" and not arg:
            return reproduce_three_extensions()
        if kind == "dihedral":
            return reproduce_dihedral(int(arg))
        if kind == "coset-wedge" and arg:
            return reproduce_coset_wedge(arg)
    except ValueError as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(f"bad example id {example!r}: {exc}") from None
    raise UsageError(f"unknown example id {example!r}; valid ids: {', '.join(REPRODUCE_IDS)}")


# driver


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="asphera", description="Coset posets, group homology and Borel quotients.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("--out", help="write the report here instead of stdout")
    ap.add_argument("--timing", action="store_true", help="include wall time (reports stop being byte-stable)")
    sub = ap.add_subparsers(dest="command", required=True)

    rp = sub.add_parser("reproduce", help="run a worked example and compare with expected values")
    rp.add_argument("example", help="one of: " + ", ".join(REPRODUCE_IDS))

    cp = sub.add_parser("compute", help="run a single computation")
    cs = cp.add_subparsers(dest="what", required=True)

    g = cs.add_parser("group", help="multiplication table and subgroups")
    g.add_argument("--group", required=True, help="cyclic:n, dihedral:n, or 'A x B'")
    g.add_argument("--subgroups", action="store_true")

    lt = cs.add_parser("lattice", help="coset poset or subgroup lattice")
    lt.add_argument("--group", required=True)
    kind = lt.add_mutually_exclusive_group()
    kind.add_argument("--coset-poset", action="store_true", help="(default)")
    kind.add_argument("--subgroup-lattice", action="store_true")
    lt.add_argument("--dot", action="store_true", help="emit the Hasse diagram as DOT")

    h = cs.add_parser("homology", help="integral homology of a complex")
    src = h.add_mutually_exclusive_group(required=True)
    src.add_argument("--complex", help="SimplicialComplex JSON file")
    src.add_argument("--action", help="use the complex of a named action")
    h.add_argument("--degree", type=int)
    h.add_argument("--chains", action="store_true", help="include boundary matrices")
    h.add_argument("--dot", action="store_true", help="emit a 1-dimensional complex as DOT")

    gh = cs.add_parser("ghom", help="group (co)homology with module coefficients")
    gh.add_argument("--group", required=True)
    gh.add_argument("--module", default="trivial", help="trivial, trivial:<m>, sign, file:<path>")
    gh.add_argument("--degree", type=int, default=0)
    gh.add_argument("--cohomology", action="store_true")
    gh.add_argument("--method", choices=("auto", "bar", "periodic"), default="auto")
    gh.add_argument("--h2", action="store_true", help="list extension classes instead")

    for name, helptext in (("e2", "E2 page and abutment"), ("borel", "Borel homology"), ("subordinate", "extension report")):
        p = cs.add_parser(name, help=helptext)
        a = p.add_mutually_exclusive_group(required=True)
        a.add_argument("--action", help="hexagon:<kind>, rotation:<n>,<k>, dihedral:<n>, coset-shift:<group>, zpq:<p>,<q>")
        a.add_argument("--action-file", help="JSON with group, complex and perms")
        if name == "e2":
            p.add_argument("--pmax", type=int, default=3)
            p.add_argument("--qmax", type=int, default=1)
            p.add_argument("--cohomological", action="store_true")
        elif name == "borel":
            p.add_argument("--kmax", type=int, default=1)
            p.add_argument("--m", type=int, default=None, help="join levels (default kmax + 2)")
            p.add_argument("--route", choices=("cellular", "staircase"), default="cellular")
        else:
            p.add_argument("--subgroup", help="comma-separated member indices for a diagram check")
    return ap


def _dispatch(args) -> tuple[object, int]:
    if args.command == "reproduce":
        checks = run_reproduce(args.example)
        ok = all(c["pass"] for c in checks)
        return {"example": args.example, "checks": checks, "all_pass": ok}, 0 if ok else EXIT_FAILED
    handlers = {
        "group": _compute_group,
        "lattice": _compute_lattice,
        "homology": _compute_homology,
        "e2": _compute_e2,
        "borel": _compute_borel,
        "subordinate": _compute_subordinate,
    }
    if args.what == "ghom":
        return _compute_ghom(args, args.timing), 0
    return handlers[args.what](args), 0


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    t0 = time.perf_counter()
    try:
        outputs, code = _dispatch(args)
    except ScaleExceeded as exc:
        print(f"scale exceeded: {exc}", file=sys.stderr)
        return EXIT_SCALE
    except (AssertionError, ArithmeticError) as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if isinstance(outputs, str):
        text = outputs
    else:
        report = {"schema": SCHEMA, "version": __version__, "command": argv, "outputs": outputs}
        if args.timing:
            report["seconds"] = round(time.perf_counter() - t0, 4)
        text = json.dumps(report, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
