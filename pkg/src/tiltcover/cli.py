"""Command-line front end.

Algebras are read from JSON files (``{"vertices": [...], "arrows": [{"id", "from", "to"}],
"relations": [{"paths": [...], "coeffs": [...]}]}``) or named directly as ``A<n>``
(linearly oriented) or ``kronecker``.  Reports go to stdout as JSON.
Exit codes: 0 success, 1 a verification failed, 2 invalid input.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from .algebra import AlgebraError, BoundQuiverAlgebra, kronecker_algebra, linear_algebra, squid
from .cover import (CategoryCover, build_cover, covering_property_check, induced_end_cover, lift_transcript,
                    stabilizer)
from .derived import DObject, in_class_T
from .hh import DimCapExceeded, OutOfScope, hh_dim, simple_connectedness_report
from .quiver import (FiniteGroup, Quiver, finite_cover_from_monodromy, is_galois_quiver_covering, is_tree, parse_group,
                     pi1_rank, universal_cover_truncated)
from .rep import (EnumerationIncomplete, Rep, decompose, enumerate_indecomposables, generic_rep, is_indecomposable,
                  is_real_root)
from .tilt import (is_tilting_module, mutation_transcript, reduce_to_tilting,
                   tilting_hasse, tilting_modules)


class InputError(ValueError):
    pass


def _default_cap(fallback: int) -> int:
    return int(os.environ.get("TILTCOVER_DIM_CAP", fallback))


# ----------------------------------------------------------------------
# input helpers

def load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg}")


def load_algebra(spec: str) -> BoundQuiverAlgebra:
    m = re.fullmatch(r"A(\d+)", spec)
    if m and not os.path.exists(spec):
        return linear_algebra(int(m.group(1)))
    if spec.lower() == "kronecker" and not os.path.exists(spec):
        return kronecker_algebra()
    data = load_json(spec)
    try:
        return BoundQuiverAlgebra.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad algebra description: {exc}")


def load_quiver(spec: str) -> Quiver:
    return load_algebra(spec).quiver


def parse_monodromy(text: Optional[str], q: Quiver, group) -> dict:
    w = {}
    if not text:
        return w
    # commas inside parentheses belong to product-group elements such as (1,0)
    for part in re.split(r",(?![^()]*\))", text):
        if not part.strip():
            continue
        if "=" not in part:
            raise InputError(f"monodromy entries look like arrow=element, got {part!r}")
        a, g = (x.strip() for x in part.split("=", 1))
        if not q.has_arrow(a):
            raise InputError(f"unknown arrow {a!r}")
        if g not in group.elements:
            raise InputError(f"unknown group element {g!r}")
        w[a] = g
    return w


def parse_group_arg(text: str):
    if os.path.exists(text):
        return FiniteGroup.from_json(load_json(text))
    try:
        return parse_group(text)
    except ValueError as exc:
        raise InputError(str(exc))


def parse_dims(text: str, n: int) -> List[int]:
    try:
        d = [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"bad dimension vector {text!r}")
    if len(d) != n or any(x < 0 for x in d):
        raise InputError(f"dimension vector {text!r} needs {n} non-negative entries")
    return d


def indecomposable_with_dims(alg: BoundQuiverAlgebra, d: Sequence[int]) -> Rep:
    """The indecomposable at a real root (unique up to isomorphism for path algebras)."""
    if not alg.is_hereditary_path_algebra():
        raise InputError("summands by dimension vector need a path algebra")
    if not is_real_root(alg, d):
        raise InputError(f"{list(d)} is not a real root")
    M = generic_rep(alg, d)
    if not is_indecomposable(M):
        raise InputError(f"no indecomposable found at {list(d)}")
    return M


def parse_path(text: Optional[str], alg) -> List[Rep]:
    if not text:
        return []
    n = len(alg.quiver.vertices)
    return [indecomposable_with_dims(alg, parse_dims(p, n)) for p in text.split(";") if p.strip()]


def parse_object(text: str, alg) -> DObject:
    """``d1@s1;d2@s2`` with dimension vectors d and shifts s."""
    n = len(alg.quiver.vertices)
    items = []
    for part in text.split(";"):
        if not part.strip():
            continue
        dims, _, sh = part.partition("@")
        try:
            s = int(sh) if sh else 0
        except ValueError:
            raise InputError(f"bad shift in {part!r}")
        items.append((indecomposable_with_dims(alg, parse_dims(dims, n)), s))
    if not items:
        raise InputError("empty object")
    return DObject.from_reps(alg, items)


def parse_tau(text: str) -> List[Fraction]:
    if not text:
        return []
    try:
        return [Fraction(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"bad tau {text!r}")


# ----------------------------------------------------------------------
# subcommands

def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n")


def _write_dot(path: Optional[str], text: str) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_quiver_analyze(args) -> int:
    q = load_quiver(args.input)
    out = {"vertices": len(q.vertices), "arrows": len(q.arrows), "connected": q.is_connected(),
           "acyclic": q.is_acyclic()}
    if q.is_connected():
        out["pi1_rank"] = pi1_rank(q)
    out["is_tree"] = is_tree(q)
    _write_dot(args.dot, q.to_dot())
    _emit(out)
    return 0


def cmd_quiver_cover(args) -> int:
    q = load_quiver(args.input)
    if args.universal:
        base = args.base or q.vertices[0]
        if base not in q.vertices:
            raise InputError(f"unknown vertex {base!r}")
        frag = universal_cover_truncated(q, base, args.radius)
        out = {"kind": "universal-truncated", "radius": args.radius, "total": frag.total.to_json(),
               "vertex_map": frag.vertex_map, "arrow_map": frag.arrow_map, "is_tree": is_tree(frag.total)}
        _write_dot(args.dot, frag.total.to_dot("Cover"))
        _emit(out)
        return 0
    if not args.group:
        raise InputError("--group is required for finite covers")
    G = parse_group_arg(args.group)
    w = parse_monodromy(args.monodromy, q, G)
    qc = finite_cover_from_monodromy(q, w, G)
    ok = is_galois_quiver_covering(qc)
    out = {"kind": "finite", "covering": qc.to_json(), "galois": ok,
           "total_connected": qc.total.is_connected()}
    _write_dot(args.dot, qc.to_dot())
    _emit(out)
    return 0 if ok else 1


def cmd_algebra_squid(args) -> int:
    p = [int(x) for x in args.p.split(",")] if args.p else []
    alg = squid(args.t, p, parse_tau(args.tau))
    _emit({"algebra": alg.to_json(), "dim": alg.dim, "flags": list(alg.flags)})
    return 0


def _hereditary(alg):
    if not alg.is_hereditary_path_algebra():
        raise InputError("tilting commands need a path algebra of an acyclic quiver")


def cmd_tilt_enumerate(args) -> int:
    alg = load_algebra(args.input)
    _hereditary(alg)
    mods = tilting_modules(alg, args.cap)
    inds = enumerate_indecomposables(alg, args.cap)
    _emit({"count": len(mods), "modules": [[list(X.dim_vector()) for X in m] for m in mods],
           "skipped_families": [list(d) for d in inds.infinite_families]})
    return 0


def cmd_tilt_hasse(args) -> int:
    alg = load_algebra(args.input)
    _hereditary(alg)
    g = tilting_hasse(alg, args.cap)
    _write_dot(args.dot, g.to_dot())
    out = g.to_json()
    out["count"] = len(g.modules)
    _emit(out)
    return 0 if g.connected else 1


def cmd_tilt_mutate(args) -> int:
    alg = load_algebra(args.input)
    _hereditary(alg)
    tr = mutation_transcript(alg, parse_path(args.path, alg))
    end = [r for r, _ in tr.end.expanded()]
    ok = is_tilting_module(end)
    _emit({"transcript": tr.to_json(), "end": tr.end.label(), "tilting": ok})
    return 0 if ok else 1


def cmd_tilt_reduce(args) -> int:
    alg = load_algebra(args.input)
    _hereditary(alg)
    T = parse_object(args.object, alg)
    if not in_class_T(T):
        _emit({"object": T.label(), "in_class_T": False, "reason": "object is not in class T"})
        return 1
    module, i0, tr = reduce_to_tilting(T)
    ok = is_tilting_module(module)
    _emit({"object": T.label(), "in_class_T": True, "shift": i0, "module": [list(X.dim_vector()) for X in decompose(module)],
           "tilting": ok, "transcript": tr.to_json()})
    return 0 if ok else 1


def _cover_from_args(args) -> CategoryCover:
    alg = load_algebra(args.input)
    if not args.group:
        raise InputError("--group is required")
    G = parse_group_arg(args.group)
    w = parse_monodromy(args.monodromy, alg.quiver, G)
    return build_cover(alg, finite_cover_from_monodromy(alg.quiver, w, G))


def cmd_cover_build(args) -> int:
    c = _cover_from_args(args)
    _write_dot(args.dot, c.qcover.to_dot())
    out = c.to_json()
    out["total_dim"] = c.total.dim
    _emit(out)
    return 0


def cmd_cover_verify(args) -> int:
    c = _cover_from_args(args)
    if not c.total.is_hereditary_path_algebra():
        raise InputError("covering-property sweep needs a hereditary total algebra")
    inds = enumerate_indecomposables(c.total, args.cap)
    failures = []
    pairs = 0
    for M in inds:
        for N in inds:
            res = covering_property_check(c, M, N, (0, 1))
            pairs += 1
            for d, (lhs, rhs) in res.items():
                if lhs != rhs:
                    failures.append({"M": list(M.dim_vector()), "N": list(N.dim_vector()), "degree": d,
                                     "base": lhs, "total": rhs})
    _emit({"pairs": pairs, "indecomposables": len(inds), "failures": failures, "ok": not failures})
    return 0 if not failures else 1


def _lifts(args):
    c = _cover_from_args(args)
    _hereditary(c.base)
    tr = mutation_transcript(c.base, parse_path(args.path, c.base))
    history = lift_transcript(c, tr)
    return c, tr, history[-1]


def cmd_cover_lift(args) -> int:
    c, tr, lifts = _lifts(args)
    rows = []
    ok = True
    for L in lifts:
        stab = stabilizer(c, L.total[0])
        good = stab == [c.group.identity] and L.is_module == (L.base[1] == 0)
        ok = ok and good
        rows.append({"base": list(L.base[0].dim_vector()), "shift": L.base[1],
                     "lift": list(L.total[0].dim_vector()), "lift_shift": L.total[1],
                     "stabilizer": stab, "ok": good})
    _emit({"total_vertices": list(c.total.quiver.vertices), "lifts": rows, "ok": ok})
    return 0 if ok else 1


def cmd_cover_end_cover(args) -> int:
    c, tr, lifts = _lifts(args)
    T = [L.base[0] for L in lifts]
    ec = induced_end_cover(c, T, lifts)
    out = ec.report()
    out["end_algebra"] = ec.base.to_json()
    if ec.cover is not None:
        out["total_dim"] = ec.cover.total.dim
        _write_dot(args.dot, ec.cover.qcover.to_dot())
    _emit(out)
    return 0 if ec.ok else 1


def _algebra_for_hh(args) -> BoundQuiverAlgebra:
    if args.t is not None:
        p = [int(x) for x in args.p.split(",")] if args.p else []
        return squid(args.t, p, parse_tau(args.tau))
    if not args.input:
        raise InputError("give an algebra file or --t/--p/--tau for a squid")
    return load_algebra(args.input)


def cmd_hh_compute(args) -> int:
    alg = _algebra_for_hh(args)
    value = hh_dim(alg, args.degree, cap=_default_cap(args.cap))
    _emit({"algebra": alg.name or "algebra", "dim": alg.dim, "degree": args.degree, "hh": value,
           "flags": list(alg.flags)})
    return 0


def cmd_report_simply_connected(args) -> int:
    alg = _algebra_for_hh(args)
    rep = simple_connectedness_report(alg, cap=_default_cap(args.cap))
    if args.table:
        rows = [("algebra", rep.algebra), ("HH0", rep.hh0), ("HH1", rep.hh1),
                ("pi1 rank", rep.pi1_rank), ("tree", rep.is_tree), ("simply connected", rep.simply_connected)]
        for k, v in rows:
            sys.stderr.write(f"{k:<18}{'-' if v is None else v}\n")
    _emit(rep.to_json())
    return 0


# ----------------------------------------------------------------------

def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tiltcover", description="Tilting modules and Galois coverings.")
    sub = p.add_subparsers(dest="group_cmd")

    def cover_opts(sp):
        sp.add_argument("input")
        sp.add_argument("--group", help="Zn, Zn x Zm, or a group table JSON file")
        sp.add_argument("--monodromy", help="arrow=element pairs separated by commas")
        sp.add_argument("--dot")

    def squid_opts(sp):
        sp.add_argument("input", nargs="?")
        sp.add_argument("--t", type=int)
        sp.add_argument("--p", default="")
        sp.add_argument("--tau", default="")
        sp.add_argument("--cap", type=int, default=40)

    q = sub.add_parser("quiver").add_subparsers(dest="cmd")
    sp = q.add_parser("analyze")
    sp.add_argument("input")
    sp.add_argument("--dot")
    sp.set_defaults(func=cmd_quiver_analyze)
    sp = q.add_parser("cover")
    cover_opts(sp)
    sp.add_argument("--universal", action="store_true")
    sp.add_argument("--base")
    sp.add_argument("--radius", type=int, default=2)
    sp.set_defaults(func=cmd_quiver_cover)

    a = sub.add_parser("algebra").add_subparsers(dest="cmd")
    sp = a.add_parser("squid")
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--p", required=True)
    sp.add_argument("--tau", default="")
    sp.set_defaults(func=cmd_algebra_squid)

    t = sub.add_parser("tilt").add_subparsers(dest="cmd")
    for name, func in (("enumerate", cmd_tilt_enumerate), ("hasse", cmd_tilt_hasse)):
        sp = t.add_parser(name)
        sp.add_argument("input")
        sp.add_argument("--cap", type=int, default=_default_cap(4))
        sp.add_argument("--dot")
        sp.set_defaults(func=func)
    sp = t.add_parser("mutate")
    sp.add_argument("input")
    sp.add_argument("--path", default="", help="dimension vectors of summands to exchange, separated by ';'")
    sp.set_defaults(func=cmd_tilt_mutate)
    sp = t.add_parser("reduce")
    sp.add_argument("input")
    sp.add_argument("--object", required=True, help="summands as dims@shift separated by ';'")
    sp.set_defaults(func=cmd_tilt_reduce)

    c = sub.add_parser("cover").add_subparsers(dest="cmd")
    for name, func in (("build", cmd_cover_build), ("verify", cmd_cover_verify), ("lift", cmd_cover_lift),
                       ("end-cover", cmd_cover_end_cover)):
        sp = c.add_parser(name)
        cover_opts(sp)
        sp.add_argument("--cap", type=int, default=_default_cap(4))
        sp.add_argument("--path", default="")
        sp.set_defaults(func=func)

    h = sub.add_parser("hh").add_subparsers(dest="cmd")
    sp = h.add_parser("compute")
    squid_opts(sp)
    sp.add_argument("--degree", type=int, choices=(0, 1), default=1)
    sp.set_defaults(func=cmd_hh_compute)

    r = sub.add_parser("report").add_subparsers(dest="cmd")
    sp = r.add_parser("simply-connected")
    squid_opts(sp)
    sp.add_argument("--table", action="store_true", help="also print a verdict table on stderr")
    sp.set_defaults(func=cmd_report_simply_connected)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not hasattr(args, "func"):
        parser.print_usage(sys.stderr)
        _emit({"error": "missing subcommand"})
        return 2
    try:
        return args.func(args)
    except (InputError, AlgebraError, OutOfScope, DimCapExceeded, EnumerationIncomplete) as exc:
        _emit({"error": type(exc).__name__, "reason": str(exc)})
        return 2
    except ValueError as exc:
        _emit({"error": type(exc).__name__, "reason": str(exc)})
        return 2
    except AssertionError as exc:
        _emit({"error": "verification failed", "reason": str(exc)})
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
