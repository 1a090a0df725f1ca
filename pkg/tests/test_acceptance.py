"""Acceptance suite: ten exact checks, each reported as one PASS/FAIL line.

Run under pytest (the lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""
import contextlib
import io
import itertools
import json
import os
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from quiver_samples import connected_acyclic_quivers, hh1_path_algebra_formula  # noqa: E402
from tiltcover.algebra import kronecker_algebra, linear_algebra, path_algebra, squid  # noqa: E402
from tiltcover.cli import run as cli_run  # noqa: E402
from tiltcover.cover import (check_H3, cover_from_monodromy, covering_property_check,  # noqa: E402
                             homogeneous_decomposition, homogeneous_pushdown, induced_end_cover,
                             lift_is_module, lift_object, push_down, stabilizer, straighten, translate)
from tiltcover.derived import DObject, chain_hom, in_class_T, r_value, resolution_complex  # noqa: E402
from tiltcover.exactla import Matrix, inverse  # noqa: E402
from tiltcover.hh import hh_dim  # noqa: E402
from tiltcover.quiver import (FiniteGroup, Quiver, finite_cover_from_monodromy,  # noqa: E402
                              is_galois_quiver_covering, is_tree, parse_group, universal_cover_truncated)
from tiltcover.rep import (Rep, decompose, direct_sum, enumerate_indecomposables, euler_form,  # noqa: E402
                           ext1_dim, hom_dim, injective_rep, is_indecomposable, is_isomorphic,
                           projective_rep)
from tiltcover.tilt import (exchange, is_tilting_module, mutation_transcript, reduce_to_tilting,  # noqa: E402
                            tilting_check, tilting_hasse, tilting_modules)

RESULTS = {}

K = kronecker_algebra()
Z2 = FiniteGroup.cyclic(2)


def kronecker_z2():
    return cover_from_monodromy(K, {"a": "0", "b": "1"}, Z2)


def criterion(number, title, budget):
    def wrap(fn):
        def runner():
            t0 = time.perf_counter()
            detail = ""
            try:
                detail = fn() or ""
                elapsed = time.perf_counter() - t0
                assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget}s"
                RESULTS[number] = (True, title, elapsed, detail)
            except BaseException as exc:
                RESULTS[number] = (False, title, time.perf_counter() - t0, f"{type(exc).__name__}: {exc}")
                raise
        runner.number = number
        runner.__name__ = fn.__name__
        return runner
    return wrap


def result_lines():
    out = []
    for n in sorted(RESULTS):
        ok, title, elapsed, detail = RESULTS[n]
        out.append(f"[{'PASS' if ok else 'FAIL'}] {n:2d}. {title} ({elapsed:.2f}s){' - ' + detail if detail else ''}")
    return out


def _cli_json(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_run(argv)
    return code, json.loads(buf.getvalue())


@criterion(1, "squid HH1 values", 30)
def c01_squid_hh1():
    cases = [(["--t", "2", "--p", "1,1"], 1),
             (["--t", "3", "--p", "1,1,1", "--tau", "1"], 0),
             (["--t", "3", "--p", "2,1,1", "--tau", "1"], 0)]
    for args, want in cases:
        t0 = time.perf_counter()
        code, out = _cli_json(["hh", "compute", *args])
        assert code == 0 and out["hh"] == want, (args, out)
        assert time.perf_counter() - t0 < 10
    return "1, 0, 0"


@criterion(2, "tree iff HH1 = 0 on small quivers", 60)
def c02_tree_criterion():
    quivers = connected_acyclic_quivers(5, 5)
    trees = 0
    for q in quivers:
        h = hh_dim(path_algebra(q), 1, cross_check=False)
        assert h == hh1_path_algebra_formula(q), q
        assert (h == 0) == is_tree(q), q
        trees += is_tree(q)
    return f"{len(quivers)} quivers, {trees} trees"


def _brute_force_tilting_count(alg, cap):
    inds = enumerate_indecomposables(alg, cap)
    n = len(alg.quiver.vertices)
    count = 0
    for combo in itertools.combinations(inds, n):
        if all(ext1_dim(X, Y) == 0 for X in combo for Y in combo):
            count += 1
    return count


@criterion(3, "tilting graphs of A2 and A3", 30)
def c03_tilting_graph():
    catalan = {2: 2, 3: 5}
    for n, want in catalan.items():
        alg = linear_algebra(n)
        g = tilting_hasse(alg, n * (n + 1) // 2)
        assert len(g.modules) == want == _brute_force_tilting_count(alg, n)
        assert g.connected
    return "2 and 5 modules, connected"


def class_T_objects_A3():
    A3 = linear_algebra(3)
    objs = []

    def add(T):
        if T not in objs and in_class_T(T):
            objs.append(T)

    mods = tilting_modules(A3, 6)
    for m in mods:
        for shifts in itertools.product(range(3), repeat=3):
            add(DObject.from_reps(A3, list(zip(m, shifts))))
    # inverse second kind steps: exchanges that move a summand back up
    for T in list(objs):
        for k in range(3):
            st = exchange(T, k, "left")
            if st is not None and in_class_T(st.after) and r_value(st.after) > r_value(T):
                add(st.after)
    return objs


@criterion(4, "reduction to a tilting module", 60)
def c04_reduction():
    objs = class_T_objects_A3()
    assert len(objs) >= 20
    worst = 0
    for T in objs:
        module, i0, tr = reduce_to_tilting(T)
        n = len(T.alg.quiver.vertices)
        assert len(tr.steps) <= n * (T.spread() + 1), T
        worst = max(worst, len(tr.steps))
        for st in tr.steps:
            assert in_class_T(st.before) and in_class_T(st.after)
            if st.kind == "exchange":
                assert r_value(st.after) < r_value(st.before)
        assert is_tilting_module(module)
        assert tr.replay() == tr.end
    return f"{len(objs)} objects, at most {worst} steps"


def delta_family(total):
    """Dimension vector (1,1,1,1) members: one generic parameter and the four string modules."""
    q = total.quiver
    out = []
    for arrow, lam in [(q.arrows[0].id, 1), (q.arrows[0].id, 2), (q.arrows[0].id, -1)] + \
            [(a.id, 0) for a in q.arrows]:
        maps = {a.id: Matrix.from_rows([[1]]) for a in q.arrows}
        maps[arrow] = Matrix.from_rows([[lam]])
        out.append(Rep(total, {v: 1 for v in q.vertices}, maps))
    return out


@criterion(5, "covering property on the Kronecker Z/2 cover", 60)
def c05_covering_property():
    c = kronecker_z2()
    inds = list(enumerate_indecomposables(c.total, 4))
    fam = delta_family(c.total)
    assert all(is_indecomposable(M) for M in fam)
    mods = inds + fam
    for M, N in itertools.product(mods, repeat=2):
        for d, (lhs, rhs) in covering_property_check(c, M, N, (0, 1)).items():
            assert lhs == rhs, (M.dim_vector(), N.dim_vector(), d)
    return f"{len(mods)} modules, {len(mods) ** 2} ordered pairs"


def kronecker_transcript():
    P1, P2 = projective_rep(K, "1"), projective_rep(K, "2")
    return mutation_transcript(K, [P2, P1])


@criterion(6, "lifts and stabilisers along Kronecker mutations", 30)
def c06_lifting():
    c = kronecker_z2()
    tr = kronecker_transcript()
    n = 0
    for k in range(len(tr.steps) + 1):
        sub = type(tr)(tr.start, tr.steps[:k])
        for r, s in sub.end.expanded():
            L = lift_object(c, (r, s), sub)
            assert is_isomorphic(push_down(c, L.total[0]), r)
            assert stabilizer(c, L.total[0]) == [c.group.identity]
            if s == 0:
                assert L.is_module and lift_is_module(c, L)
            n += 1
    return f"{n} summands lifted over {len(tr.steps)} mutations"


@criterion(7, "induced covering of End(T)", 30)
def c07_end_cover():
    c = kronecker_z2()
    tr = mutation_transcript(K, [projective_rep(K, "2")])
    T = [r for r, _ in tr.end.expanded()]
    assert is_tilting_module(T)
    lifts = [lift_object(c, (r, 0), tr) for r in T]
    ec = induced_end_cover(c, T, lifts)
    assert ec.ok, ec.report()
    names = {ch["name"] for ch in ec.checks}
    assert "coresolutions of projectives" in names
    chk = tilting_check(T)
    assert chk.ok and len(chk.witnesses) == 2
    for w in chk.witnesses:
        assert len(w["middle"]) >= 1
    return "T = " + " + ".join(str(tuple(X.dim_vector())) for X in T)


PSIS = [
    {"a": {("a",): 2}},
    {"b": {("b",): -3}},
    {"a": {("a",): 5}, "b": {("b",): 7}},
    {"a": {("a",): 1, ("b",): 1}},
    {"b": {("b",): 1, ("a",): -2}},
    {"a": {("b",): 1}, "b": {("a",): 1}},
]


@criterion(8, "H3 for vertex-fixing automorphisms", 30)
def c08_H3():
    mods = tilting_modules(K, 7)
    for psi in PSIS:
        for T in mods:
            assert check_H3(K, psi, T), (psi, T)
    return f"{len(PSIS)} automorphisms, {len(mods)} tilting modules"


@criterion(9, "quiver covers", 10)
def c09_quiver_covers():
    kq = K.quiver
    squids = [squid(2, (1, 1), ()).quiver, squid(3, (1, 1, 1), (1,)).quiver, squid(3, (2, 1, 1), (1,)).quiver]
    for q in [kq] + squids:
        for radius in range(1, 5):
            frag = universal_cover_truncated(q, q.vertices[0], radius)
            assert is_tree(frag.total) and frag.is_morphism()
    triangle = Quiver(["1", "2", "3"], [("x", "1", "2"), ("y", "2", "3"), ("z", "1", "3")])
    bases = [kq, triangle] + squids
    checked = 0
    for spec in ("Z2", "Z3", "Z2 x Z2"):
        G = parse_group(spec)
        for q in bases:
            ids = [a.id for a in q.arrows]
            for values in itertools.islice(itertools.product(G.elements, repeat=len(ids)), 40):
                qc = finite_cover_from_monodromy(q, dict(zip(ids, values)), G)
                assert is_galois_quiver_covering(qc)
                assert len(qc.total.vertices) == G.order * len(q.vertices)
                assert len(qc.total.arrows) == G.order * len(q.arrows)
                checked += 1
    return f"{checked} finite covers"


def _scramble(M, seed):
    import random
    rng = random.Random(seed)
    B = {}
    for v, d in M.dims.items():
        while True:
            m = Matrix.from_rows([[rng.randint(-2, 2) for _ in range(d)] for _ in range(d)])
            if d == 0 or m.rank() == d:
                break
        B[v] = m
    maps = {a.id: inverse(B[a.target]) @ M.maps[a.id] @ B[a.source] if M.dims[a.target] and M.dims[a.source]
            else M.maps[a.id] for a in M.alg.quiver.arrows}
    return Rep(M.alg, dict(M.dims), maps)


def _straighten_instances(c):
    X = resolution_complex(projective_rep(c.total, "2@0"), 0)
    M = resolution_complex(projective_rep(c.total, "1@0"), 0)
    d = {g: homogeneous_pushdown(c, g, chain_hom(X, translate(c, g, M)).basis[0]) for g in c.group.elements}
    cols = [([d["0"] + d["1"], d["1"]], X, [M, M]),
            ([d["0"] + d["1"], d["0"]], X, [M, M]),
            ([d["0"].scale(2) + d["1"], d["0"] - d["1"], d["1"]], X, [M, M, M])]
    Y = resolution_complex(injective_rep(c.total, "2@0"), 0)
    e = {g: homogeneous_pushdown(c, g, chain_hom(M, translate(c, g, Y)).basis[0]) for g in c.group.elements}
    rows = [([e["0"] + e["1"], e["1"]], Y, [M, M]),
            ([e["0"] - e["1"], e["0"], e["0"] + e["1"].scale(3)], Y, [M, M, M])]
    return [(m, f, L, "column") for m, f, L in cols] + [(m, f, L, "row") for m, f, L in rows]


@criterion(10, "property suite", 120)
def c10_properties():
    pairs = 0
    for alg in (linear_algebra(2), linear_algebra(3), K):
        inds = enumerate_indecomposables(alg, 4)
        for X, Y in itertools.product(inds, repeat=2):
            assert hom_dim(X, Y) - ext1_dim(X, Y) == euler_form(alg, X.dim_vector(), Y.dim_vector())
            pairs += 1
        for k, (X, Y) in enumerate(itertools.combinations(inds, 2)):
            if k >= 15:
                break
            S = _scramble(direct_sum([X, Y, X])[0], k)
            parts = decompose(S)
            assert len(parts) == 3
            want = sorted([X, Y, X], key=lambda r: r.sort_key())
            assert all(is_isomorphic(a, b) for a, b in zip(parts, want))
            assert is_isomorphic(S, direct_sum(parts)[0])
    c = kronecker_z2()
    rounds = 0
    for maps, fixed, lifts, form in _straighten_instances(c):
        res = straighten(c, maps, fixed, lifts, form=form, check_cone=True)
        rounds += len(res.log)
        for m, L in zip(res.maps, lifts):
            dec = homogeneous_decomposition(c, m, fixed, L) if form == "column" else \
                homogeneous_decomposition(c, m, L, fixed)
            assert len(dec) <= 1
    return f"{pairs} Euler pairs, {rounds} straightening rounds"


CRITERIA = [c01_squid_hh1, c02_tree_criterion, c03_tilting_graph, c04_reduction, c05_covering_property,
            c06_lifting, c07_end_cover, c08_H3, c09_quiver_covers, c10_properties]


@pytest.mark.parametrize("crit", CRITERIA, ids=[f"criterion_{c.number:02d}" for c in CRITERIA])
def test_acceptance(crit):
    crit()


if __name__ == "__main__":
    for crit in CRITERIA:
        try:
            crit()
        except BaseException:
            pass
        print(result_lines()[-1] if crit.number in RESULTS else f"[FAIL] {crit.number}")
    sys.exit(0 if all(ok for ok, *_ in RESULTS.values()) else 1)
