"""Bound quiver algebras kQ/I: path bases, normal forms and the squid family.

Paths are tuples of arrow ids in traversal order, so the path "first a1, then
b1" (usually written b1 a1) is ``("a1", "b1")``.  The trivial path at a vertex
is the empty tuple, always paired with its vertex.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exactla import _eliminate, _int_row, to_scalar
from .quiver import Quiver, kronecker_quiver, linear_quiver, natural_key

__all__ = [
    "Relation",
    "BoundQuiverAlgebra",
    "path_algebra",
    "squid",
    "algebra_dim",
    "indecomposable_projective",
    "AlgebraError",
    "linear_algebra",
    "kronecker_algebra",
]

PathT = Tuple[str, ...]


class AlgebraError(ValueError):
    pass


class Relation:
    """A linear combination of parallel paths of length at least two."""

    def __init__(self, terms: Mapping[Sequence[str], object]):
        t = {}
        for p, c in terms.items():
            c = to_scalar(c)
            if c:
                t[tuple(p)] = t.get(tuple(p), Fraction(0)) + c
        self.terms: Dict[PathT, Fraction] = {p: c for p, c in t.items() if c}
        if not self.terms:
            raise AlgebraError("relation has no nonzero coefficient")
        for p in self.terms:
            if len(p) < 2:
                raise AlgebraError("relations must be made of paths of length >= 2")

    def endpoints(self, q: Quiver) -> Tuple[str, str]:
        ends = set()
        for p in self.terms:
            _check_path(q, p)
            ends.add((q.arrow(p[0]).source, q.arrow(p[-1]).target))
        if len(ends) != 1:
            raise AlgebraError("relation paths are not parallel")
        return ends.pop()

    def is_homogeneous(self) -> bool:
        return len({len(p) for p in self.terms}) == 1

    def to_json(self) -> dict:
        items = sorted(self.terms.items())
        return {"paths": [list(p) for p, _ in items], "coeffs": [str(c) for _, c in items]}

    def __eq__(self, other):
        return isinstance(other, Relation) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return " + ".join(f"{c}*{'.'.join(p)}" for p, c in sorted(self.terms.items()))


def _check_path(q: Quiver, p: PathT):
    for a, b in zip(p, p[1:]):
        if q.arrow(a).target != q.arrow(b).source:
            raise AlgebraError(f"{p} is not a path")


def _path_order_key(p: PathT):
    # longer paths first, so that pivots of the ideal are leading terms
    return (-len(p), tuple(natural_key(a) for a in p))


class BoundQuiverAlgebra:
    """The algebra kQ/I with a cached path basis.

    ``basis[(s, t)]`` lists the basis paths from s to t.  ``flags`` carries
    free-form markers such as ``"degenerate squid"``.
    """

    def __init__(self, quiver: Quiver, relations: Iterable = (), name: Optional[str] = None,
                 flags: Iterable[str] = ()):
        self.quiver = quiver
        rels = []
        for r in relations:
            if not isinstance(r, Relation):
                r = Relation(r)
            rels.append(r)
        self.relations: Tuple[Relation, ...] = tuple(rels)
        self.name = name
        self.flags = tuple(flags)
        self._rel_ends = [r.endpoints(quiver) for r in self.relations]
        self._build_basis()

    # ------------------------------------------------------------------
    def _all_paths(self, max_len: int) -> Dict[Tuple[str, str], List[PathT]]:
        q = self.quiver
        out: Dict[Tuple[str, str], List[PathT]] = {}
        for v in q.vertices:
            out.setdefault((v, v), []).append(())
        frontier = [((a.id,), a.source, a.target) for a in q.arrows]
        length = 1
        while frontier and length <= max_len:
            nxt = []
            for p, s, t in frontier:
                out.setdefault((s, t), []).append(p)
                if length < max_len:
                    for a in q.out_arrows(t):
                        nxt.append((p + (a.id,), s, a.target))
            frontier = nxt
            length += 1
        return out

    def _build_basis(self):
        q = self.quiver
        acyclic = q.is_acyclic()
        if acyclic:
            max_len = max(len(q.vertices) - 1, 0)
            self.nilpotency = max_len + 1
        else:
            if not all(r.is_homogeneous() for r in self.relations):
                raise AlgebraError("quivers with oriented cycles need homogeneous relations")
            max_rel = max((len(p) for r in self.relations for p in r.terms), default=1)
            max_len = max(len(q.arrows), 1) * max_rel + 1
        paths = self._all_paths(max_len)
        groups: Dict[Tuple[str, str, Optional[int]], List[PathT]] = {}
        for (s, t), ps in paths.items():
            for p in ps:
                key = (s, t, None if acyclic else len(p))
                groups.setdefault(key, []).append(p)
        # ideal elements q.rho.p
        ideal: Dict[Tuple[str, str, Optional[int]], List[Dict[PathT, Fraction]]] = {}
        if self.relations:
            ending_at = {}
            starting_at = {}
            for (s, t), ps in paths.items():
                for p in ps:
                    ending_at.setdefault(t, []).append((s, p))
                    starting_at.setdefault(s, []).append((t, p))
            for r, (u, v) in zip(self.relations, self._rel_ends):
                rl = min(len(p) for p in r.terms)
                for s, pre in ending_at.get(u, []):
                    for t, post in starting_at.get(v, []):
                        total = len(pre) + rl + len(post)
                        if total > max_len:
                            continue
                        vec = {pre + p + post: c for p, c in r.terms.items()}
                        key = (s, t, None if acyclic else total)
                        ideal.setdefault(key, []).append(vec)
        basis: Dict[Tuple[str, str], List[PathT]] = {}
        reduce: Dict[PathT, Tuple[Tuple[str, str], Dict[PathT, Fraction]]] = {}
        zero_lengths = {}
        for key, ps in groups.items():
            s, t, ln = key
            ps = sorted(ps, key=_path_order_key)
            col = {p: i for i, p in enumerate(ps)}
            rows = []
            for vec in ideal.get(key, []):
                row = {}
                for p, c in vec.items():
                    if p in col:
                        row[col[p]] = row.get(col[p], 0) + c
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(_int_row(row))
            pivots, _ = _eliminate(rows, markowitz=False, full=True) if rows else ([], [])
            pivcols = {c for c, _ in pivots}
            free = [p for i, p in enumerate(ps) if i not in pivcols]
            if free:
                basis.setdefault((s, t), []).extend(free)
            for c, row in pivots:
                pc = row[c]
                nf = {ps[cc]: Fraction(-v, pc) for cc, v in row.items() if cc != c}
                reduce[ps[c]] = ((s, t), nf)
            if ln is not None:
                zero_lengths.setdefault(ln, []).append(bool(free))
        if not acyclic:
            nil = None
            for ln in sorted(zero_lengths):
                if ln > 0 and not any(zero_lengths[ln]):
                    # every path of this length is in the ideal; check all of them exist in groups
                    nil = ln
                    break
            if nil is None:
                raise AlgebraError("arrow ideal is not nilpotent within the length cap")
            self.nilpotency = nil
            for k in list(basis):
                basis[k] = [p for p in basis[k] if len(p) < nil]
                if not basis[k]:
                    del basis[k]
        for k in basis:
            basis[k].sort(key=lambda p: (len(p), tuple(natural_key(a) for a in p)))
        self.basis = basis
        self._reduce = reduce
        self._index = {k: {p: i for i, p in enumerate(v)} for k, v in basis.items()}

    # ------------------------------------------------------------------
    @property
    def dim(self) -> int:
        return sum(len(v) for v in self.basis.values())

    @property
    def vertices(self):
        return self.quiver.vertices

    def is_hereditary_path_algebra(self) -> bool:
        return not self.relations and self.quiver.is_acyclic()

    def basis_paths(self, s: str, t: str) -> List[PathT]:
        return self.basis.get((s, t), [])

    def path_endpoints(self, p: PathT, vertex: Optional[str] = None) -> Tuple[str, str]:
        if not p:
            return vertex, vertex
        return self.quiver.arrow(p[0]).source, self.quiver.arrow(p[-1]).target

    def normal_form(self, p: PathT) -> Dict[PathT, Fraction]:
        """Express a path (of positive length) in the basis of its (source, target) space."""
        if not p:
            return {(): Fraction(1)}
        if len(p) >= self.nilpotency:
            return {}
        s, t = self.path_endpoints(p)
        if p in self._index.get((s, t), {}):
            return {p: Fraction(1)}
        if p in self._reduce:
            return dict(self._reduce[p][1])
        return {}

    def reduce_vector(self, vec: Mapping[PathT, object]) -> Dict[PathT, Fraction]:
        out: Dict[PathT, Fraction] = {}
        for p, c in vec.items():
            c = to_scalar(c)
            if not c:
                continue
            for b, d in self.normal_form(p).items():
                out[b] = out.get(b, Fraction(0)) + c * d
        return {b: c for b, c in out.items() if c}

    def coordinates(self, s: str, t: str, vec: Mapping[PathT, object]) -> List[Fraction]:
        nf = self.reduce_vector(vec)
        idx = self._index.get((s, t), {})
        out = [Fraction(0)] * len(idx)
        for b, c in nf.items():
            out[idx[b]] = c
        return out

    def concat(self, first: PathT, then: PathT) -> PathT:
        if first and then and self.quiver.arrow(first[-1]).target != self.quiver.arrow(then[0]).source:
            raise AlgebraError("paths are not composable")
        return tuple(first) + tuple(then)

    def relation_holds_in(self, maps_eval) -> bool:
        """``maps_eval(path)`` must return a Matrix; checks every relation evaluates to 0."""
        for r in self.relations:
            acc = None
            for p, c in r.terms.items():
                m = maps_eval(p).scale(c)
                acc = m if acc is None else acc + m
            if acc is not None and not acc.is_zero():
                return False
        return True

    def structure_key(self):
        return (self.quiver, frozenset(self.relations))

    def __eq__(self, other):
        return isinstance(other, BoundQuiverAlgebra) and self.structure_key() == other.structure_key()

    def __hash__(self):
        return hash(self.structure_key())

    def __repr__(self):
        return f"BoundQuiverAlgebra({self.name or self.quiver}, dim={self.dim})"

    # serialisation ----------------------------------------------------
    def to_json(self) -> dict:
        d = self.quiver.to_json()
        d["relations"] = [r.to_json() for r in self.relations]
        if self.name:
            d["name"] = self.name
        return d

    @classmethod
    def from_json(cls, data) -> "BoundQuiverAlgebra":
        if isinstance(data, str):
            data = json.loads(data)
        q = Quiver.from_json(data)
        rels = []
        for r in data.get("relations", []):
            coeffs = r.get("coeffs") or [1] * len(r["paths"])
            rels.append(Relation({tuple(p): Fraction(str(c)) for p, c in zip(r["paths"], coeffs)}))
        return cls(q, rels, name=data.get("name"))


def path_algebra(q: Quiver) -> BoundQuiverAlgebra:
    if not q.is_acyclic():
        raise AlgebraError("path algebra of a quiver with oriented cycles is infinite-dimensional")
    return BoundQuiverAlgebra(q, (), name=q.name)


def algebra_dim(alg: BoundQuiverAlgebra) -> int:
    return alg.dim


def squid(t: int, p: Sequence[int], tau: Sequence) -> BoundQuiverAlgebra:
    """The squid algebra with t arms of lengths p and parameters tau = (tau_3, ..., tau_t).

    Vertices: ``s`` (source of a1, a2), ``c`` (centre), ``i.j`` for the j-th
    vertex of arm i.  Arrows: ``a1, a2: s -> c``, ``b_i: c -> i.1`` and
    ``c_i.j: i.j -> i.(j+1)``.  Arms with p_i = 0 lose their arrow b_i together
    with every relation mentioning it; such algebras carry the flag
    ``"degenerate squid"``.
    """
    if t < 2:
        raise AlgebraError("squid needs t >= 2")
    p = [int(x) for x in p]
    if len(p) != t:
        raise AlgebraError("p must have length t")
    if any(x < 0 for x in p):
        raise AlgebraError("arm lengths must be non-negative")
    tau = [to_scalar(x) for x in tau]
    if len(tau) != t - 2:
        raise AlgebraError("tau must have length t - 2")
    if any(x == 0 for x in tau):
        raise AlgebraError("tau entries must be nonzero")
    if len(set(tau)) != len(tau):
        raise AlgebraError("tau entries must be pairwise distinct")
    vertices = ["s", "c"]
    arrows = [("a1", "s", "c"), ("a2", "s", "c")]
    for i in range(1, t + 1):
        if p[i - 1] == 0:
            continue
        for j in range(1, p[i - 1] + 1):
            vertices.append(f"{i}.{j}")
        arrows.append((f"b{i}", "c", f"{i}.1"))
        for j in range(1, p[i - 1]):
            arrows.append((f"c{i}.{j}", f"{i}.{j}", f"{i}.{j + 1}"))
    rels = []
    if p[0]:
        rels.append(Relation({("a1", "b1"): 1}))
    if p[1]:
        rels.append(Relation({("a2", "b2"): 1}))
    for i in range(3, t + 1):
        if p[i - 1]:
            rels.append(Relation({("a2", f"b{i}"): 1, ("a1", f"b{i}"): -tau[i - 3]}))
    flags = ("degenerate squid",) if any(x == 0 for x in p) else ()
    name = f"S({t},{tuple(p)},{tuple(str(x) for x in tau)})"
    alg = BoundQuiverAlgebra(Quiver(vertices, arrows, name=name), rels, name=name, flags=flags)
    alg.squid_params = (t, tuple(p), tuple(tau))
    return alg


def linear_algebra(n: int) -> BoundQuiverAlgebra:
    return path_algebra(linear_quiver(n))


def kronecker_algebra() -> BoundQuiverAlgebra:
    return path_algebra(kronecker_quiver())


def indecomposable_projective(alg: BoundQuiverAlgebra, v: str):
    from .rep import projective_rep
    return projective_rep(alg, v)
