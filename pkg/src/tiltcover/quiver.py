"""Finite quivers, finite groups given by tables, and Galois coverings of quivers."""
from __future__ import annotations

import itertools
import json
import re
from collections import deque
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

__all__ = [
    "Arrow",
    "Quiver",
    "FiniteGroup",
    "QuiverCovering",
    "CoverFragment",
    "natural_key",
    "pi1_rank",
    "is_tree",
    "universal_cover_truncated",
    "finite_cover_from_monodromy",
    "normalize_monodromy",
    "is_galois_quiver_covering",
    "parse_group",
    "linear_quiver",
    "kronecker_quiver",
]


def natural_key(s: str):
    """Sort key that orders embedded integers numerically ("2" < "10")."""
    return tuple((0, int(t), "") if t.isdigit() else (1, 0, t) for t in re.split(r"(\d+)", str(s)) if t)


class Arrow(NamedTuple):
    id: str
    source: str
    target: str


class Quiver:
    """A finite quiver.  Vertex and arrow ids are strings; loops are rejected."""

    def __init__(self, vertices: Iterable, arrows: Iterable = (), name: Optional[str] = None):
        self.vertices: Tuple[str, ...] = tuple(str(v) for v in vertices)
        arrs = []
        for a in arrows:
            if isinstance(a, Mapping):
                a = (a["id"], a["from"], a["to"])
            aid, s, t = (str(x) for x in a)
            arrs.append(Arrow(aid, s, t))
        self.arrows: Tuple[Arrow, ...] = tuple(arrs)
        self.name = name
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        if len({a.id for a in self.arrows}) != len(self.arrows):
            raise ValueError("duplicate arrow ids")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise ValueError(f"arrow {a.id} has an unknown endpoint")
            if a.source == a.target:
                raise ValueError(f"arrow {a.id} is a loop")
        self._arrow = {a.id: a for a in self.arrows}
        self._vindex = {v: i for i, v in enumerate(self.vertices)}
        self._out: Dict[str, List[Arrow]] = {v: [] for v in self.vertices}
        self._in: Dict[str, List[Arrow]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            self._out[a.source].append(a)
            self._in[a.target].append(a)

    # basic access
    def arrow(self, aid: str) -> Arrow:
        return self._arrow[aid]

    def has_arrow(self, aid: str) -> bool:
        return aid in self._arrow

    def vertex_index(self, v: str) -> int:
        return self._vindex[v]

    def out_arrows(self, v: str) -> List[Arrow]:
        return self._out[v]

    def in_arrows(self, v: str) -> List[Arrow]:
        return self._in[v]

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def __eq__(self, other):
        return isinstance(other, Quiver) and self.vertices == other.vertices and self.arrows == other.arrows

    def __hash__(self):
        return hash((self.vertices, self.arrows))

    def __repr__(self):
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"

    # structure
    def is_acyclic(self) -> bool:
        return self.topological_order() is not None

    def topological_order(self) -> Optional[List[str]]:
        indeg = {v: len(self._in[v]) for v in self.vertices}
        queue = deque(v for v in self.vertices if indeg[v] == 0)
        order = []
        while queue:
            v = queue.popleft()
            order.append(v)
            for a in self._out[v]:
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    queue.append(a.target)
        return order if len(order) == len(self.vertices) else None

    def connected_components(self) -> List[List[str]]:
        seen = set()
        comps = []
        for v in self.vertices:
            if v in seen:
                continue
            comp = []
            stack = [v]
            seen.add(v)
            while stack:
                x = stack.pop()
                comp.append(x)
                for a in self._out[x] + self._in[x]:
                    y = a.target if a.source == x else a.source
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            comps.append(sorted(comp, key=self.vertex_index))
        return comps

    def is_connected(self) -> bool:
        return len(self.vertices) > 0 and len(self.connected_components()) == 1

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, [(a.id, a.target, a.source) for a in self.arrows], name=self.name)

    # serialisation
    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"id": a.id, "from": a.source, "to": a.target} for a in self.arrows],
        }

    @classmethod
    def from_json(cls, data) -> "Quiver":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["vertices"], data.get("arrows", []), name=data.get("name"))

    def to_dot(self, name: str = "Q") -> str:
        lines = [f"digraph {name} {{"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for a in self.arrows:
            lines.append(f'  "{a.source}" -> "{a.target}" [label="{a.id}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def linear_quiver(n: int) -> Quiver:
    """1 -> 2 -> ... -> n."""
    return Quiver([str(i) for i in range(1, n + 1)],
                  [(f"a{i}", str(i), str(i + 1)) for i in range(1, n)], name=f"A{n}")


def kronecker_quiver() -> Quiver:
    return Quiver(["1", "2"], [("a", "1", "2"), ("b", "1", "2")], name="Kronecker")


def pi1_rank(q: Quiver) -> int:
    """Rank of the free fundamental group of the underlying graph (E - V + components)."""
    if not q.vertices:
        return 0
    return len(q.arrows) - len(q.vertices) + len(q.connected_components())


def is_tree(q: Quiver) -> bool:
    return q.is_connected() and pi1_rank(q) == 0


# ----------------------------------------------------------------------
# finite groups

class FiniteGroup:
    """A finite group given by its multiplication table."""

    def __init__(self, elements: Sequence, table: Mapping, identity, name: Optional[str] = None):
        self.elements: Tuple[str, ...] = tuple(str(e) for e in elements)
        self.identity = str(identity)
        self.name = name
        self._table = {(str(a), str(b)): str(c) for (a, b), c in table.items()}
        self._index = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise ValueError("duplicate group elements")
        if len(self.elements) > 64:
            raise ValueError("groups are limited to order 64")
        self._check()
        self._inv = {}
        for a in self.elements:
            for b in self.elements:
                if self.mul(a, b) == self.identity:
                    self._inv[a] = b
                    break

    def _check(self):
        E = self.elements
        if self.identity not in self._index:
            raise ValueError("identity is not an element")
        for a in E:
            for b in E:
                c = self._table.get((a, b))
                if c is None or c not in self._index:
                    raise ValueError(f"table entry for ({a}, {b}) missing or invalid")
        for a in E:
            if self._table[(self.identity, a)] != a or self._table[(a, self.identity)] != a:
                raise ValueError("identity law fails")
            if not any(self._table[(a, b)] == self.identity for b in E):
                raise ValueError(f"{a} has no inverse")
        for a, b, c in itertools.product(E, repeat=3):
            if self._table[(self._table[(a, b)], c)] != self._table[(a, self._table[(b, c)])]:
                raise ValueError("multiplication is not associative")

    def mul(self, a: str, b: str) -> str:
        return self._table[(str(a), str(b))]

    def inv(self, a: str) -> str:
        return self._inv[str(a)]

    def index(self, a: str) -> int:
        return self._index[str(a)]

    @property
    def order(self) -> int:
        return len(self.elements)

    def product(self, elems: Iterable[str]) -> str:
        out = self.identity
        for e in elems:
            out = self.mul(out, e)
        return out

    def subgroup_generated(self, gens: Iterable[str]) -> set:
        sub = {self.identity}
        frontier = list(sub)
        gens = [str(g) for g in gens]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.mul(x, g)
                if y not in sub:
                    sub.add(y)
                    frontier.append(y)
        return sub

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.elements == other.elements and self._table == other._table

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"FiniteGroup({self.name or self.order})"

    @classmethod
    def trivial(cls) -> "FiniteGroup":
        return cls(["e"], {("e", "e"): "e"}, "e", name="1")

    @classmethod
    def cyclic(cls, n: int) -> "FiniteGroup":
        els = [str(i) for i in range(n)]
        table = {(str(a), str(b)): str((a + b) % n) for a in range(n) for b in range(n)}
        return cls(els, table, "0", name=f"Z{n}")

    @classmethod
    def direct_product(cls, g: "FiniteGroup", h: "FiniteGroup") -> "FiniteGroup":
        els = [f"({a},{b})" for a in g.elements for b in h.elements]
        table = {}
        for a1, b1 in itertools.product(g.elements, h.elements):
            for a2, b2 in itertools.product(g.elements, h.elements):
                table[(f"({a1},{b1})", f"({a2},{b2})")] = f"({g.mul(a1, a2)},{h.mul(b1, b2)})"
        return cls(els, table, f"({g.identity},{h.identity})", name=f"{g.name} x {h.name}")

    def to_json(self) -> dict:
        return {"elements": list(self.elements), "identity": self.identity,
                "table": [[self.mul(a, b) for b in self.elements] for a in self.elements]}

    @classmethod
    def from_json(cls, data) -> "FiniteGroup":
        els = data["elements"]
        table = {(a, b): data["table"][i][j] for i, a in enumerate(els) for j, b in enumerate(els)}
        return cls(els, table, data["identity"], name=data.get("name"))


def parse_group(spec: str) -> FiniteGroup:
    """Parse ``Zn`` or ``Zn x Zm`` (any number of factors)."""
    parts = [p.strip() for p in spec.split("x")]
    groups = []
    for p in parts:
        m = re.fullmatch(r"Z(\d+)", p)
        if not m or int(m.group(1)) < 1:
            raise ValueError(f"cannot parse group factor {p!r}")
        groups.append(FiniteGroup.cyclic(int(m.group(1))))
    g = groups[0]
    for h in groups[1:]:
        g = FiniteGroup.direct_product(g, h)
    return g


# ----------------------------------------------------------------------
# coverings

class CoverFragment:
    """A finite piece of an (infinite) covering: total quiver plus projection maps."""

    def __init__(self, total: Quiver, base: Quiver, vertex_map: Dict[str, str], arrow_map: Dict[str, str]):
        self.total = total
        self.base = base
        self.vertex_map = dict(vertex_map)
        self.arrow_map = dict(arrow_map)

    def is_morphism(self) -> bool:
        for a in self.total.arrows:
            b = self.base.arrow(self.arrow_map[a.id])
            if self.vertex_map[a.source] != b.source or self.vertex_map[a.target] != b.target:
                return False
        return True


class QuiverCovering(CoverFragment):
    """A covering of quivers with a finite group acting on the total quiver.

    ``vertex_action[(g, v)]`` and ``arrow_action[(g, a)]`` give the action of the
    group element ``g``.
    """

    def __init__(self, total, base, vertex_map, arrow_map, group: FiniteGroup,
                 vertex_action: Dict[Tuple[str, str], str], arrow_action: Dict[Tuple[str, str], str]):
        super().__init__(total, base, vertex_map, arrow_map)
        self.group = group
        self.vertex_action = dict(vertex_action)
        self.arrow_action = dict(arrow_action)

    def act_vertex(self, g: str, v: str) -> str:
        return self.vertex_action[(g, v)]

    def act_arrow(self, g: str, a: str) -> str:
        return self.arrow_action[(g, a)]

    def fibre(self, x: str) -> List[str]:
        """Total vertices over the base vertex x, in a fixed order."""
        return [v for v in self.total.vertices if self.vertex_map[v] == x]

    def to_json(self) -> dict:
        return {
            "total": self.total.to_json(),
            "base": self.base.to_json(),
            "vertex_map": self.vertex_map,
            "arrow_map": self.arrow_map,
            "group": self.group.to_json(),
        }

    def to_dot(self, name: str = "Cover") -> str:
        return self.total.to_dot(name)


def _bfs_tree(q: Quiver, component: Sequence[str]):
    """Deterministic spanning tree: BFS from the smallest vertex id, arrows in id order."""
    root = min(component, key=natural_key)
    parent: Dict[str, Optional[Tuple[Arrow, int]]] = {root: None}
    order = [root]
    queue = deque([root])
    while queue:
        v = queue.popleft()
        steps = [(a, +1, a.target) for a in q.out_arrows(v)] + [(a, -1, a.source) for a in q.in_arrows(v)]
        steps.sort(key=lambda s: (natural_key(s[0].id), -s[1]))
        for a, d, w in steps:
            if w not in parent:
                parent[w] = (a, d)
                order.append(w)
                queue.append(w)
    return root, parent, order


def normalize_monodromy(q: Quiver, w: Mapping[str, str], group: FiniteGroup) -> Dict[str, str]:
    """Gauge-normalise a weight function so that it is trivial on a canonical spanning tree.

    The cover built from the normalised weights is isomorphic to the original one.
    """
    pot: Dict[str, str] = {}
    for comp in q.connected_components():
        root, parent, order = _bfs_tree(q, comp)
        pot[root] = group.identity
        for v in order[1:]:
            a, d = parent[v]
            if d > 0:   # a: u -> v
                pot[v] = group.mul(pot[a.source], w[a.id])
            else:       # a: v -> u, traversed backwards
                pot[v] = group.mul(pot[a.target], group.inv(w[a.id]))
    return {a.id: group.mul(group.mul(pot[a.source], w[a.id]), group.inv(pot[a.target]))
            for a in q.arrows}


def finite_cover_from_monodromy(q: Quiver, w: Mapping[str, str], group: FiniteGroup,
                                normalize: bool = True) -> QuiverCovering:
    """The covering on Q0 x G with arrows (a, g): (s(a), g) -> (t(a), g w(a)).

    Missing arrows get the identity weight; unknown arrow ids are rejected.
    """
    for aid in w:
        if not q.has_arrow(aid):
            raise ValueError(f"monodromy references unknown arrow {aid!r}")
    weights = {a.id: str(w.get(a.id, group.identity)) for a in q.arrows}
    for aid, g in weights.items():
        if g not in group.elements:
            raise ValueError(f"monodromy value {g!r} is not a group element")
    if normalize:
        weights = normalize_monodromy(q, weights, group)
    G = group.elements
    vname = lambda v, g: f"{v}@{g}"
    aname = lambda a, g: f"{a}@{g}"
    vertices = [vname(v, g) for v in q.vertices for g in G]
    arrows = []
    vmap, amap = {}, {}
    for v in q.vertices:
        for g in G:
            vmap[vname(v, g)] = v
    for a in q.arrows:
        for g in G:
            arrows.append((aname(a.id, g), vname(a.source, g), vname(a.target, group.mul(g, weights[a.id]))))
            amap[aname(a.id, g)] = a.id
    total = Quiver(vertices, arrows)
    vact, aact = {}, {}
    for h in G:
        for v in q.vertices:
            for g in G:
                vact[(h, vname(v, g))] = vname(v, group.mul(h, g))
        for a in q.arrows:
            for g in G:
                aact[(h, aname(a.id, g))] = aname(a.id, group.mul(h, g))
    cov = QuiverCovering(total, q, vmap, amap, group, vact, aact)
    cov.weights = weights
    return cov


def is_galois_quiver_covering(c: QuiverCovering) -> bool:
    """Check freeness, equivariance and the orbit/fibre bijection."""
    G = c.group
    tq, bq = c.total, c.base
    if not c.is_morphism():
        return False
    if set(c.vertex_map.values()) != set(bq.vertices) or set(c.arrow_map.values()) != {a.id for a in bq.arrows}:
        return False
    try:
        for g in G.elements:
            for v in tq.vertices:
                gv = c.act_vertex(g, v)
                if c.vertex_map[gv] != c.vertex_map[v]:
                    return False
                if g != G.identity and gv == v:
                    return False
            for a in tq.arrows:
                ga = tq.arrow(c.act_arrow(g, a.id))
                if c.arrow_map[ga.id] != c.arrow_map[a.id]:
                    return False
                if ga.source != c.act_vertex(g, a.source) or ga.target != c.act_vertex(g, a.target):
                    return False
        for g, h in itertools.product(G.elements, repeat=2):
            gh = G.mul(g, h)
            for v in tq.vertices:
                if c.act_vertex(g, c.act_vertex(h, v)) != c.act_vertex(gh, v):
                    return False
    except KeyError:
        return False
    # each fibre is a single orbit
    for x in bq.vertices:
        fib = set(c.fibre(x))
        if not fib:
            return False
        v0 = next(iter(sorted(fib)))
        if {c.act_vertex(g, v0) for g in G.elements} != fib:
            return False
    for b in bq.arrows:
        fib = {a for a, bb in c.arrow_map.items() if bb == b.id}
        a0 = min(fib)
        if {c.act_arrow(g, a0) for g in G.elements} != fib:
            return False
    return True


def universal_cover_truncated(q: Quiver, base: str, radius: int) -> CoverFragment:
    """The ball of the given radius around the lift of ``base`` in the universal cover.

    Vertices are reduced walks starting at ``base``; a walk is written as
    ``base|a+b-`` (arrow ids with the direction of traversal).
    """
    if not q.is_connected():
        raise ValueError("universal cover requires a connected quiver")
    if base not in q.vertices:
        raise ValueError(f"unknown vertex {base!r}")

    def wname(walk):
        return f"{base}|" + ".".join(f"{a}{'+' if d > 0 else '-'}" for a, d in walk)

    walks = {(): base}
    frontier = [()]
    vertices = [wname(())]
    vmap = {wname(()): base}
    arrows, amap = [], {}
    for _ in range(radius):
        nxt = []
        for walk in frontier:
            end = walks[walk]
            steps = [(a, +1) for a in q.out_arrows(end)] + [(a, -1) for a in q.in_arrows(end)]
            steps.sort(key=lambda s: (natural_key(s[0].id), -s[1]))
            for a, d in steps:
                if walk and walk[-1] == (a.id, -d):
                    continue
                new = walk + ((a.id, d),)
                new_end = a.target if d > 0 else a.source
                walks[new] = new_end
                nm = wname(new)
                vertices.append(nm)
                vmap[nm] = new_end
                aid = f"{a.id}#{nm}"
                if d > 0:
                    arrows.append((aid, wname(walk), nm))
                else:
                    arrows.append((aid, nm, wname(walk)))
                amap[aid] = a.id
                nxt.append(new)
        frontier = nxt
    return CoverFragment(Quiver(vertices, arrows), q, vmap, amap)
