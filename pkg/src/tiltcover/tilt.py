"""Approximations, elementary transformations of tilting complexes, reduction to
tilting modules, mutation and the poset of tilting modules."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from .algebra import BoundQuiverAlgebra
from .derived import (ChainMap, Complex, DObject, chain_hom, complex_to_dobject, direct_sum_complexes,
                      ghom_dim, in_class_T, mapping_cone, r_value, resolution_complex)
from .exactla import Matrix, rank
from .rep import (EnumerationIncomplete, Rep, RepMorphism, add_multiplicities, cokernel, decompose, direct_sum,
                  enumerate_indecomposables, ext1_dim, hom_space, is_isomorphic, kernel,
                  pd_at_most, projective_rep, trace_in)

__all__ = [
    "AddSubcat",
    "Approximation",
    "Step",
    "Transcript",
    "NoAdmissibleSummand",
    "right_min_approx",
    "left_min_approx",
    "right_min_approx_complex",
    "left_min_approx_complex",
    "exchange",
    "first_kind_step",
    "second_kind_step",
    "reduce_to_tilting",
    "is_tilting_module",
    "tilting_check",
    "module_mutation",
    "mutation_step",
    "mutation_transcript",
    "fac_leq",
    "tilting_hasse",
    "tilting_modules",
    "TiltingGraph",
]


class NoAdmissibleSummand(RuntimeError):
    pass


class AddSubcat:
    """add of a list of pairwise non-isomorphic indecomposables (Reps or complexes)."""

    def __init__(self, generators: Sequence):
        self.generators = list(generators)

    def __len__(self):
        return len(self.generators)


@dataclass
class Approximation:
    source: object
    target: object
    morphism: object
    parts: List[int]  # generator index of each summand of the middle term
    components: List[object]  # the map restricted to (or projected on) each summand


# ----------------------------------------------------------------------
# a small interface over modules and complexes

class _ModuleOps:
    @staticmethod
    def hom(X, Y):
        return hom_space(X, Y).basis

    @staticmethod
    def coords(X, Y, f):
        return hom_space(X, Y).coords(f)

    @staticmethod
    def compose(g, f):
        return g.compose(f)

    @staticmethod
    def direct_sum(parts, alg):
        return direct_sum(parts, alg)

    @staticmethod
    def zero(X, Y):
        return RepMorphism(X, Y, {}, check=False)


class _ComplexOps:
    @staticmethod
    def hom(X, Y):
        return chain_hom(X, Y).basis

    @staticmethod
    def coords(X, Y, f):
        return chain_hom(X, Y).coords(f)

    @staticmethod
    def compose(g, f):
        return g.compose(f)

    @staticmethod
    def direct_sum(parts, alg):
        return direct_sum_complexes(parts, alg)

    @staticmethod
    def zero(X, Y):
        return ChainMap(X, Y, {}, check=False)


def _span_rank(vectors) -> int:
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return 0
    return rank(Matrix.from_rows(vectors))


def _greedy(n_items: int, contributions, targets) -> List[int]:
    """Drop items in order while every generator's Hom space stays spanned.

    ``contributions[i][j]`` lists the coordinate vectors item i contributes to
    the Hom space of generator j, whose dimension is ``targets[j]``.  An
    irredundant generating family of homogeneous elements spans the top of the
    Hom module freely (Nakayama), so the surviving items give a minimal
    approximation.
    """
    keep = list(range(n_items))
    for i in range(n_items):
        trial = [k for k in keep if k != i]
        good = True
        for j, t in enumerate(targets):
            if t == 0:
                continue
            if _span_rank([v for k in trial for v in contributions[k][j]]) < t:
                good = False
                break
        if good:
            keep = trial
    return keep


def _right(ops, gens, M, alg):
    comps = [(k, phi) for k, G in enumerate(gens) for phi in ops.hom(G, M)]
    contributions = []
    for k, phi in comps:
        per = []
        for G in gens:
            per.append([ops.coords(G, M, ops.compose(phi, g)) for g in ops.hom(G, gens[k])])
        contributions.append(per)
    targets = [len(ops.hom(G, M)) for G in gens]
    keep = _greedy(len(comps), contributions, targets)
    chosen = [comps[i] for i in keep]
    B, incs, projs = ops.direct_sum([gens[k] for k, _ in chosen], alg)
    total = ops.zero(B, M)
    for (k, phi), p in zip(chosen, projs):
        total = total + ops.compose(phi, p)
    return Approximation(B, M, total, [k for k, _ in chosen], [phi for _, phi in chosen])


def _left(ops, gens, M, alg):
    comps = [(k, psi) for k, G in enumerate(gens) for psi in ops.hom(M, G)]
    contributions = []
    for k, psi in comps:
        per = []
        for G in gens:
            per.append([ops.coords(M, G, ops.compose(g, psi)) for g in ops.hom(gens[k], G)])
        contributions.append(per)
    targets = [len(ops.hom(M, G)) for G in gens]
    keep = _greedy(len(comps), contributions, targets)
    chosen = [comps[i] for i in keep]
    B, incs, projs = ops.direct_sum([gens[k] for k, _ in chosen], alg)
    total = ops.zero(M, B)
    for (k, psi), inc in zip(chosen, incs):
        total = total + ops.compose(inc, psi)
    return Approximation(M, B, total, [k for k, _ in chosen], [psi for _, psi in chosen])


def _gens(sub) -> list:
    return list(sub.generators) if isinstance(sub, AddSubcat) else list(sub)


def right_min_approx(M: Rep, sub) -> Approximation:
    """Right minimal add(sub)-approximation B -> M of a module."""
    return _right(_ModuleOps, _gens(sub), M, M.alg)


def left_min_approx(M: Rep, sub) -> Approximation:
    """Left minimal add(sub)-approximation M -> B of a module."""
    return _left(_ModuleOps, _gens(sub), M, M.alg)


def right_min_approx_complex(M: Complex, sub) -> Approximation:
    return _right(_ComplexOps, _gens(sub), M, M.alg)


def left_min_approx_complex(M: Complex, sub) -> Approximation:
    return _left(_ComplexOps, _gens(sub), M, M.alg)


# ----------------------------------------------------------------------
# transcripts

@dataclass
class Step:
    kind: str  # "shift", "merge" or "exchange"
    before: DObject
    after: DObject
    index: Optional[int] = None  # expanded summand of ``before`` that is replaced
    direction: Optional[str] = None  # "left": new = cone(X -> B); "right": new = cone(B -> X)[-1]
    approximation: Optional[Approximation] = None
    new_summand: Optional[Tuple[Rep, int]] = None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "before": self.before.label(), "after": self.after.label()}
        if self.kind == "exchange":
            out["index"] = self.index
            out["direction"] = self.direction
            out["middle_parts"] = list(self.approximation.parts)
            out["morphism"] = _chain_json(self.approximation.morphism)
            r, s = self.new_summand
            out["new_summand"] = {"dim": list(r.dim_vector()), "shift": s}
        return out


def _chain_json(f) -> dict:
    if isinstance(f, ChainMap):
        return {str(k): {v: [[str(x) for x in row] for row in m.to_rows()] for v, m in g.mats.items()}
                for k, g in sorted(f.comps.items())}
    return {v: [[str(x) for x in row] for row in m.to_rows()] for v, m in f.mats.items()}


@dataclass
class Transcript:
    start: DObject
    steps: List[Step] = field(default_factory=list)

    @property
    def end(self) -> DObject:
        return self.steps[-1].after if self.steps else self.start

    def replay(self) -> DObject:
        """Recompute every step from the start object and compare with the record."""
        cur = self.start
        for st in self.steps:
            if st.before != cur:
                raise ValueError("transcript does not chain")
            if st.kind == "shift":
                nxt = first_kind_step(cur)
            elif st.kind == "merge":
                nxt = first_kind_step(cur)
            else:
                nxt = exchange(cur, st.index, st.direction)
                nxt = nxt.after if nxt is not None else None
            if nxt is None or nxt != st.after:
                raise ValueError(f"step {st.kind} does not reproduce")
            cur = nxt
        return cur

    def to_json(self) -> dict:
        return {"start": self.start.label(), "steps": [s.to_json() for s in self.steps]}


# ----------------------------------------------------------------------
# the two elementary transformations

def exchange(T: DObject, index: int, direction: str) -> Optional[Step]:
    """Replace the expanded summand ``index`` of T through a minimal approximation triangle.

    ``direction="right"``: B -> X right approximation in add(rest), new summand cone[-1].
    ``direction="left"``: X -> B left approximation in add(rest), new summand cone.
    Returns None when the cone is not a single indecomposable.
    """
    ex = T.expanded()
    X, s = ex[index]
    rest = [e for i, e in enumerate(ex) if i != index]
    gens = [resolution_complex(r, t) for r, t in rest]
    CX = resolution_complex(X, s)
    if direction == "right":
        appr = right_min_approx_complex(CX, gens)
        C, _, _ = mapping_cone(appr.morphism)
        new = complex_to_dobject(C).shift(-1)
    elif direction == "left":
        appr = left_min_approx_complex(CX, gens)
        C, _, _ = mapping_cone(appr.morphism)
        new = complex_to_dobject(C)
    else:
        raise ValueError("direction must be 'left' or 'right'")
    if new.count() != 1:
        return None
    (rep, shift, _), = new.summands
    after = DObject.from_reps_decomposed(T.alg, rest + [(rep, shift)])
    return Step("exchange", T, after, index, direction, appr, (rep, shift))


def _layers(T: DObject) -> Dict[int, List[Tuple[Rep, int]]]:
    out: Dict[int, List] = {}
    i0 = T.min_shift()
    for r, s in T.expanded():
        out.setdefault(s - i0, []).append((r, s))
    return out


def first_kind_step(T: DObject) -> Optional[DObject]:
    """One rewrite of the first kind, or None if T already has Hom(Z0, Z1[1]) != 0 (or l = 0)."""
    if not in_class_T(T):
        raise ValueError("first_kind_step expects an object of the class T")
    i0 = T.min_shift()
    layers = _layers(T)
    top = max(layers)
    if top == 0:
        return None
    if 1 not in layers:
        # Z1 = 0: pull every higher layer down by one
        items = [(r, s if s == i0 else s - 1) for r, s in T.expanded()]
        return DObject.from_reps_decomposed(T.alg, items)
    Z0 = DObject.from_reps_decomposed(T.alg, layers[0])
    Z1 = DObject.from_reps_decomposed(T.alg, layers[1])
    if ghom_dim(Z0, Z1, 0) == 0:
        items = [(r, i0 if s == i0 + 1 else s) for r, s in T.expanded()]
        return DObject.from_reps_decomposed(T.alg, items)
    return None


def _choose_summand(T: DObject) -> int:
    i0 = T.min_shift()
    ex = T.expanded()
    Z0 = DObject.from_reps_decomposed(T.alg, [e for e in ex if e[1] == i0])
    higher = [i for i, e in enumerate(ex) if e[1] > i0]
    candidates, sources = [], []
    for i in higher:
        r, s = ex[i]
        if s != i0 + 1:
            continue
        M = DObject.from_reps_decomposed(T.alg, [(r, s)])
        if any(ghom_dim(DObject.from_reps_decomposed(T.alg, [ex[j]]), M, 0) for j in higher if j != i):
            continue
        sources.append(i)
        if ghom_dim(Z0, M, 0):
            candidates.append(i)
    # expanded() is already in canonical order, so the first admissible index is the minimum.
    # When no source of the first shifted layer receives maps from Z0 (this happens, e.g. for
    # S1 + S3[1] + P2[1] over A3), a source is used anyway: its approximation is zero and the
    # exchange moves it down one degree, which still lowers r and stays inside the class.
    if candidates:
        return candidates[0]
    if sources:
        return sources[0]
    raise NoAdmissibleSummand("no summand satisfies the selection conditions")


def second_kind_step(T: DObject) -> Step:
    if not in_class_T(T):
        raise ValueError("second_kind_step expects an object of the class T")
    r0 = r_value(T)
    if r0 == 0:
        raise ValueError("second_kind_step needs r(T) > 0")
    layers = _layers(T)
    if 1 not in layers or ghom_dim(DObject.from_reps_decomposed(T.alg, layers[0]),
                                   DObject.from_reps_decomposed(T.alg, layers[1]), 1 - 1) == 0:
        raise ValueError("apply first kind transformations first")
    idx = _choose_summand(T)
    step = exchange(T, idx, "right")
    if step is None:
        raise AssertionError("cone of the approximation is not indecomposable")
    if not in_class_T(step.after):
        raise AssertionError("second kind transformation left the class T")
    if not r_value(step.after) < r0:
        raise AssertionError("second kind transformation did not decrease r")
    return step


def reduce_to_tilting(T: DObject, max_steps: Optional[int] = None):
    """Return (tilting module, shift i0, transcript) with T' = module[i0] at the end."""
    if not in_class_T(T):
        raise ValueError("reduce_to_tilting expects an object of the class T")
    n = len(T.alg.quiver.vertices)
    if max_steps is None:
        max_steps = n * (T.spread() + 1) + n
    tr = Transcript(T)
    cur = T
    steps = 0
    while True:
        while True:
            nxt = first_kind_step(cur)
            if nxt is None:
                break
            kind = "shift" if 1 not in _layers(cur) else "merge"
            tr.steps.append(Step(kind, cur, nxt))
            cur = nxt
            steps += 1
        if r_value(cur) == 0:
            break
        st = second_kind_step(cur)
        tr.steps.append(st)
        cur = st.after
        steps += 1
        if steps > max_steps:
            raise RuntimeError("reduction exceeded its step bound")
    i0 = cur.min_shift()
    module = cur.shift(-i0).module()
    return module, i0, tr


# ----------------------------------------------------------------------
# tilting modules

@dataclass
class TiltingCheck:
    multiplicity_free: bool
    pd_at_most_one: bool
    ext_vanishes: bool
    coresolutions: bool
    summand_count: bool
    witnesses: List[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.multiplicity_free and self.pd_at_most_one and self.ext_vanishes and self.coresolutions


def _summands(T) -> List[Rep]:
    if isinstance(T, Rep):
        return decompose(T)
    out = []
    for X in T:
        out.extend(decompose(X))
    return out


def tilting_check(T) -> TiltingCheck:
    parts = _summands(T)
    alg = parts[0].alg
    mf = all(not (a.dims == b.dims and is_isomorphic(a, b)) for a, b in itertools.combinations(parts, 2))
    pd = all(pd_at_most(X, 1) is not None for X in parts)
    ext = all(ext1_dim(X, Y) == 0 for X in parts for Y in parts)
    cores = True
    witnesses = []
    if mf and pd and ext:
        for v in alg.quiver.vertices:
            P = projective_rep(alg, v)
            appr = left_min_approx(P, parts)
            u = appr.morphism
            if not u.is_injective():
                cores = False
                break
            Y = cokernel(u)[0]
            mult = add_multiplicities(Y, parts)
            if mult is None:
                cores = False
                break
            witnesses.append({"projective": v, "middle": [list(parts[k].dim_vector()) for k in appr.parts],
                              "cokernel": [list(parts[k].dim_vector()) for k, m in enumerate(mult)
                                           for _ in range(m)]})
    else:
        cores = False
    count = len(parts) == len(alg.quiver.vertices)
    return TiltingCheck(mf, pd, ext, cores, count, witnesses)


def is_tilting_module(T) -> bool:
    chk = tilting_check(T)
    parts = _summands(T)
    if parts[0].alg.is_hereditary_path_algebra():
        shortcut = chk.multiplicity_free and chk.pd_at_most_one and chk.ext_vanishes and chk.summand_count
        if shortcut != chk.ok:
            raise AssertionError("tilting criteria disagree")
    return chk.ok


def _exchange_module(parts: List[Rep], k: int):
    """(new summand, direction, approximation) for an exchange at summand k, or None."""
    X = parts[k]
    rest = [p for i, p in enumerate(parts) if i != k]
    if rest:
        appr = left_min_approx(X, rest)
        if appr.morphism.is_injective():
            Y = cokernel(appr.morphism)[0]
            if _good_complement(Y, rest):
                return Y, "left", appr
        appr = right_min_approx(X, rest)
        if appr.morphism.is_surjective():
            Y = kernel(appr.morphism)[0]
            if _good_complement(Y, rest):
                return Y, "right", appr
    return None


def _good_complement(Y: Rep, rest: List[Rep]) -> bool:
    if Y.is_zero():
        return False
    pieces = decompose(Y)
    if len(pieces) != 1:
        return False
    if any(Y.dims == R.dims and is_isomorphic(Y, R) for R in rest):
        return False
    return is_tilting_module(rest + [Y])


def module_mutation(T, k: int) -> Optional[Rep]:
    """Exchange the k-th summand of a tilting module; None if there is no exchange partner.

    The left approximation X -> M is tried first (new summand its cokernel), then the
    right approximation M -> X (new summand its kernel).
    """
    parts = _summands(T)
    if not 0 <= k < len(parts):
        raise IndexError("summand index out of range")
    res = _exchange_module(parts, k)
    if res is None:
        return None
    Y = res[0]
    rest = [p for i, p in enumerate(parts) if i != k]
    return direct_sum(rest + [Y], Y.alg)[0]


def mutation_step(T: DObject, k: int) -> Optional[Step]:
    """The exchange of summand k of a tilting module, recorded as a transcript step."""
    parts = [r for r, _ in T.expanded()]
    res = _exchange_module(parts, k)
    if res is None:
        return None
    Y, direction, _ = res
    step = exchange(T, k, direction)
    if step is None or not step.after.is_module():
        raise AssertionError("module exchange and derived exchange disagree")
    (r, _), = [(step.new_summand[0], 0)]
    if not is_isomorphic(r, Y):
        raise AssertionError("module exchange and derived exchange disagree")
    return step


def mutation_transcript(alg: BoundQuiverAlgebra, path: Sequence[Rep]) -> Transcript:
    """Transcript from the regular module through the exchanges that remove, in turn,
    a summand isomorphic to each rep in ``path``."""
    start = DObject.from_reps(alg, [(projective_rep(alg, v), 0) for v in alg.quiver.vertices])
    tr = Transcript(start)
    cur = start
    for X in path:
        ex = cur.expanded()
        idx = [i for i, (r, s) in enumerate(ex) if s == 0 and r.dims == X.dims and is_isomorphic(r, X)]
        if not idx:
            raise ValueError(f"{X!r} is not a summand of the current tilting module")
        st = mutation_step(cur, idx[0])
        if st is None:
            raise ValueError(f"no exchange partner for {X!r}")
        tr.steps.append(st)
        cur = st.after
    return tr


# ----------------------------------------------------------------------
# the poset of tilting modules

def fac_leq(T, U) -> bool:
    """T <= U in the order given by Fac T contained in Fac U."""
    U_sum = U if isinstance(U, Rep) else direct_sum(list(U), U[0].alg)[0]
    for X in _summands(T):
        tr = trace_in(U_sum, X)
        if tr.dims != X.dims:
            return False
    return True


@dataclass
class TiltingGraph:
    modules: List[List[Rep]]
    edges: List[Tuple[int, int]]

    @property
    def connected(self) -> bool:
        g = nx.Graph()
        g.add_nodes_from(range(len(self.modules)))
        g.add_edges_from(self.edges)
        return len(self.modules) > 0 and nx.is_connected(g)

    def labels(self) -> List[List[List[int]]]:
        return [[list(X.dim_vector()) for X in mod] for mod in self.modules]

    def to_json(self) -> dict:
        return {"vertices": self.labels(), "edges": [list(e) for e in self.edges], "connected": self.connected}

    def to_dot(self) -> str:
        lines = ["digraph tilting {"]
        for i, lab in enumerate(self.labels()):
            text = " + ".join("".join(str(x) for x in d) for d in lab)
            lines.append(f'  t{i} [label="{text}"];')
        for a, b in self.edges:
            lines.append(f"  t{a} -> t{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def tilting_modules(alg: BoundQuiverAlgebra, dim_cap: int) -> List[List[Rep]]:
    """Tilting modules whose summands have dimension <= dim_cap.

    Families at imaginary roots are skipped: such modules satisfy
    dim Ext1(X, X) >= dim End(X) - q(d) >= 1, so they never occur in a tilting module.
    """
    inds = enumerate_indecomposables(alg, dim_cap)
    return _tilting_among(alg, inds)


def _tilting_among(alg, inds) -> List[List[Rep]]:
    n = len(alg.quiver.vertices)
    m = len(inds)
    ext = [[ext1_dim(inds[i], inds[j]) for j in range(m)] for i in range(m)]
    modules = []
    for combo in itertools.combinations(range(m), n):
        if any(ext[i][j] for i in combo for j in combo):
            continue
        parts = [inds[i] for i in combo]
        if is_tilting_module(parts):
            modules.append(parts)
    return modules


def tilting_hasse(alg: BoundQuiverAlgebra, dim_cap: int) -> TiltingGraph:
    """Tilting modules among the indecomposables of dimension <= dim_cap and the Hasse
    diagram of the Fac order (edges point from the larger module to the smaller)."""
    inds = enumerate_indecomposables(alg, dim_cap)
    if inds.infinite_families:
        raise EnumerationIncomplete(f"infinite families at dimension vectors {inds.infinite_families}")
    modules = _tilting_among(alg, inds)
    g = nx.DiGraph()
    g.add_nodes_from(range(len(modules)))
    for a, b in itertools.permutations(range(len(modules)), 2):
        if fac_leq(modules[b], modules[a]):
            g.add_edge(a, b)
    red = nx.transitive_reduction(g)
    return TiltingGraph(modules, sorted(red.edges()))
