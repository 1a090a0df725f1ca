"""Representations of bound quiver algebras and their homological invariants.

Convention: a representation M assigns a space M(v) to each vertex and, to an
arrow a: s -> t, a matrix ``M.maps[a]`` of shape dims(t) x dims(s) (covariant
representations).  With this convention the indecomposable projective at v has
basis the paths starting at v, its top is the simple at v, and
Hom(P_v, M) = M(v).
"""
from __future__ import annotations

import itertools
import json
import math
import random
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import BoundQuiverAlgebra
from .exactla import (Matrix, column_space, complement_basis, inverse, kernel_basis,
                      rank, solve, solve_matrix, to_scalar)

__all__ = [
    "Rep",
    "RepMorphism",
    "HomSpace",
    "Decomposition",
    "add_multiplicities",
    "NonSplitEndomorphismRing",
    "ResolutionCapExceeded",
    "EnumerationIncomplete",
    "zero_rep",
    "simple_rep",
    "projective_rep",
    "injective_rep",
    "regular_rep",
    "direct_sum",
    "hom_basis",
    "hom_space",
    "hom_dim",
    "kernel",
    "cokernel",
    "image",
    "subrep",
    "radical_spaces",
    "projective_cover",
    "projective_resolution",
    "pd_at_most",
    "ext1_dim",
    "endomorphism_radical",
    "is_indecomposable",
    "decompose",
    "decompose_with_witness",
    "find_isomorphism",
    "is_isomorphic",
    "trace_in",
    "tits_form",
    "euler_form",
    "is_real_root",
    "enumerate_indecomposables",
    "IndecomposableList",
]


class NonSplitEndomorphismRing(ArithmeticError):
    """End(M)/rad is a proper field extension of Q, which we do not handle."""


class ResolutionCapExceeded(RuntimeError):
    pass


class EnumerationIncomplete(RuntimeError):
    pass


def _as_matrix(m, rows: int, cols: int) -> Matrix:
    if isinstance(m, Matrix):
        mat = m
    elif not m:
        mat = Matrix.zeros(rows, cols)
    else:
        mat = Matrix.from_rows(m)
    if mat.shape != (rows, cols):
        if mat.nnz == 0 and (rows == 0 or cols == 0):
            return Matrix.zeros(rows, cols)
        raise ValueError(f"matrix has shape {mat.shape}, expected {(rows, cols)}")
    return mat


class Rep:
    """A finite-dimensional representation (module) over a bound quiver algebra."""

    __slots__ = ("alg", "dims", "maps", "_hash", "_path_cache")

    def __init__(self, alg: BoundQuiverAlgebra, dims: Mapping[str, int], maps: Mapping[str, object] = None,
                 check: bool = True):
        self.alg = alg
        q = alg.quiver
        for v in dims:
            if v not in q._vindex:
                raise ValueError(f"unknown vertex {v!r}")
        self.dims: Dict[str, int] = {v: int(dims.get(v, 0)) for v in q.vertices}
        maps = maps or {}
        for a in maps:
            if not q.has_arrow(a):
                raise ValueError(f"unknown arrow {a!r}")
        self.maps: Dict[str, Matrix] = {
            a.id: _as_matrix(maps.get(a.id), self.dims[a.target], self.dims[a.source]) for a in q.arrows
        }
        self._hash = None
        self._path_cache = {}
        if check and alg.relations:
            if not alg.relation_holds_in(self.eval_path):
                raise ValueError("representation does not satisfy the relations")

    # ------------------------------------------------------------------
    def eval_path(self, p: Sequence[str]) -> Matrix:
        p = tuple(p)
        if p in self._path_cache:
            return self._path_cache[p]
        m = self.maps[p[0]]
        for a in p[1:]:
            m = self.maps[a] @ m
        self._path_cache[p] = m
        return m

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def dim_vector(self) -> Tuple[int, ...]:
        return tuple(self.dims[v] for v in self.alg.quiver.vertices)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def sort_key(self):
        return (self.dim_vector(),
                tuple(tuple(self.maps[a.id].flat()) for a in self.alg.quiver.arrows))

    def __eq__(self, other):
        return (isinstance(other, Rep) and self.alg == other.alg and self.dims == other.dims
                and self.maps == other.maps)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.alg, tuple(self.dims.items()), tuple(self.maps.items())))
        return self._hash

    def __repr__(self):
        return f"Rep(dims={self.dim_vector()})"

    def to_json(self) -> dict:
        return {
            "dims": dict(self.dims),
            "maps": {a: [[str(x) for x in row] for row in m.to_rows()] for a, m in self.maps.items()},
        }

    @classmethod
    def from_json(cls, alg: BoundQuiverAlgebra, data) -> "Rep":
        if isinstance(data, str):
            data = json.loads(data)
        dims = {str(k): int(v) for k, v in data["dims"].items()}
        maps = {}
        for a, rows in data.get("maps", {}).items():
            arr = alg.quiver.arrow(a)
            maps[a] = _as_matrix([[Fraction(str(x)) for x in r] for r in rows],
                                 dims.get(arr.target, 0), dims.get(arr.source, 0)) if rows else None
        return cls(alg, dims, maps)

    def identity(self) -> "RepMorphism":
        return RepMorphism(self, self, {v: Matrix.identity(d) for v, d in self.dims.items()}, check=False)

    def zero_to(self, other: "Rep") -> "RepMorphism":
        return RepMorphism(self, other, {}, check=False)

    def change_basis(self, bases: Mapping[str, Matrix]) -> "Rep":
        """The isomorphic representation obtained by conjugating with invertible ``bases[v]``."""
        inv = {v: inverse(bases[v]) if self.dims[v] else bases[v] for v in self.dims}
        maps = {}
        for a in self.alg.quiver.arrows:
            maps[a.id] = inv[a.target] @ self.maps[a.id] @ bases[a.source]
        return Rep(self.alg, self.dims, maps, check=False)


class RepMorphism:
    """A morphism of representations; ``mats[v]`` has shape dims_target(v) x dims_source(v)."""

    __slots__ = ("source", "target", "mats", "_hash")

    def __init__(self, source: Rep, target: Rep, mats: Mapping[str, object], check: bool = True):
        if source.alg != target.alg:
            raise ValueError("morphism between representations of different algebras")
        self.source = source
        self.target = target
        self.mats: Dict[str, Matrix] = {
            v: _as_matrix(mats.get(v), target.dims[v], source.dims[v]) for v in source.dims
        }
        self._hash = None
        if check and not self.commutes():
            raise ValueError("matrices do not commute with the arrow maps")

    def commutes(self) -> bool:
        for a in self.source.alg.quiver.arrows:
            lhs = self.target.maps[a.id] @ self.mats[a.source]
            rhs = self.mats[a.target] @ self.source.maps[a.id]
            if lhs != rhs:
                return False
        return True

    def compose(self, first: "RepMorphism") -> "RepMorphism":
        """``self`` after ``first``."""
        if first.target != self.source:
            if first.target.dims != self.source.dims:
                raise ValueError("morphisms are not composable")
        return RepMorphism(first.source, self.target,
                           {v: self.mats[v] @ first.mats[v] for v in self.mats}, check=False)

    __matmul__ = compose

    def __add__(self, other: "RepMorphism") -> "RepMorphism":
        return RepMorphism(self.source, self.target, {v: self.mats[v] + other.mats[v] for v in self.mats},
                           check=False)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "RepMorphism":
        return RepMorphism(self.source, self.target, {v: m.scale(c) for v, m in self.mats.items()}, check=False)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats.values())

    def rank(self) -> int:
        return sum(rank(m) for m in self.mats.values())

    def is_injective(self) -> bool:
        return all(rank(self.mats[v]) == self.source.dims[v] for v in self.mats)

    def is_surjective(self) -> bool:
        return all(rank(self.mats[v]) == self.target.dims[v] for v in self.mats)

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()

    def inverse(self) -> "RepMorphism":
        return RepMorphism(self.target, self.source,
                           {v: inverse(m) if m.rows else m for v, m in self.mats.items()}, check=False)

    def vector(self) -> List[Fraction]:
        out = []
        for v in self.source.alg.quiver.vertices:
            out.extend(self.mats[v].flat())
        return out

    def trace(self) -> Fraction:
        return sum((m.trace() for m in self.mats.values()), Fraction(0))

    def total_matrix(self) -> Matrix:
        return Matrix.diagonal_blocks([self.mats[v] for v in self.source.alg.quiver.vertices])

    def __eq__(self, other):
        return (isinstance(other, RepMorphism) and self.source == other.source
                and self.target == other.target and self.mats == other.mats)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.source, self.target, tuple(self.mats.items())))
        return self._hash

    def __repr__(self):
        return f"RepMorphism({self.source!r} -> {self.target!r})"


def linear_combination(maps: Sequence[RepMorphism], coeffs: Sequence, source: Rep = None,
                       target: Rep = None) -> RepMorphism:
    if not maps:
        return RepMorphism(source, target, {}, check=False)
    out = None
    for f, c in zip(maps, coeffs):
        c = to_scalar(c)
        if not c:
            continue
        out = f.scale(c) if out is None else out + f.scale(c)
    if out is None:
        return RepMorphism(maps[0].source, maps[0].target, {}, check=False)
    return out


# ----------------------------------------------------------------------
# constructors

def zero_rep(alg: BoundQuiverAlgebra) -> Rep:
    return Rep(alg, {}, {}, check=False)


def simple_rep(alg: BoundQuiverAlgebra, v: str) -> Rep:
    if v not in alg.quiver.vertices:
        raise ValueError(f"unknown vertex {v!r}")
    return Rep(alg, {v: 1}, {}, check=False)


@lru_cache(maxsize=None)
def projective_rep(alg: BoundQuiverAlgebra, v: str) -> Rep:
    """P_v: the space at w has basis the basis paths v -> w; arrows act by post-composition."""
    if v not in alg.quiver.vertices:
        raise ValueError(f"unknown vertex {v!r}")
    dims = {w: len(alg.basis_paths(v, w)) for w in alg.quiver.vertices}
    maps = {}
    for a in alg.quiver.arrows:
        src = alg.basis_paths(v, a.source)
        tgt_index = alg._index.get((v, a.target), {})
        entries = {}
        for j, p in enumerate(src):
            for b, c in alg.normal_form(p + (a.id,)).items():
                entries[(tgt_index[b], j)] = c
        maps[a.id] = Matrix(dims[a.target], dims[a.source], entries)
    return Rep(alg, dims, maps, check=False)


@lru_cache(maxsize=None)
def injective_rep(alg: BoundQuiverAlgebra, v: str) -> Rep:
    """I_v: the space at w is dual to the basis paths w -> v."""
    if v not in alg.quiver.vertices:
        raise ValueError(f"unknown vertex {v!r}")
    dims = {w: len(alg.basis_paths(w, v)) for w in alg.quiver.vertices}
    maps = {}
    for a in alg.quiver.arrows:
        src_index = alg._index.get((a.source, v), {})
        tgt_paths = alg.basis_paths(a.target, v)
        entries = {}
        for i, qpath in enumerate(tgt_paths):
            for b, c in alg.normal_form((a.id,) + qpath).items():
                entries[(i, src_index[b])] = c
        maps[a.id] = Matrix(dims[a.target], dims[a.source], entries)
    return Rep(alg, dims, maps, check=False)


def regular_rep(alg: BoundQuiverAlgebra) -> Rep:
    return direct_sum([projective_rep(alg, v) for v in alg.quiver.vertices])[0]


def direct_sum(reps: Sequence[Rep], alg: BoundQuiverAlgebra = None):
    """Return ``(S, inclusions, projections)``."""
    if not reps:
        if alg is None:
            raise ValueError("empty direct sum needs the algebra")
        return zero_rep(alg), [], []
    alg = reps[0].alg
    q = alg.quiver
    dims = {v: sum(r.dims[v] for r in reps) for v in q.vertices}
    maps = {a.id: Matrix.diagonal_blocks([r.maps[a.id] for r in reps]) for a in q.arrows}
    S = Rep(alg, dims, maps, check=False)
    incs, projs = [], []
    offsets = {v: 0 for v in q.vertices}
    for r in reps:
        inc, proj = {}, {}
        for v in q.vertices:
            o, d = offsets[v], r.dims[v]
            inc[v] = Matrix(dims[v], d, {(o + i, i): 1 for i in range(d)})
            proj[v] = Matrix(d, dims[v], {(i, o + i): 1 for i in range(d)})
            offsets[v] += d
        incs.append(RepMorphism(r, S, inc, check=False))
        projs.append(RepMorphism(S, r, proj, check=False))
    return S, incs, projs


def morphism_from_blocks(source_parts: Sequence[Rep], target_parts: Sequence[Rep],
                         blocks: Mapping[Tuple[int, int], RepMorphism]) -> RepMorphism:
    """Assemble a morphism between direct sums; ``blocks[(i, j)]`` maps part j to part i."""
    S, _, _ = direct_sum(list(source_parts), source_parts[0].alg if source_parts else target_parts[0].alg)
    T, _, _ = direct_sum(list(target_parts), target_parts[0].alg if target_parts else source_parts[0].alg)
    alg = S.alg
    mats = {}
    for v in alg.quiver.vertices:
        grid = []
        for i, tp in enumerate(target_parts):
            row = []
            for j, sp in enumerate(source_parts):
                b = blocks.get((i, j))
                row.append(b.mats[v] if b is not None else Matrix.zeros(tp.dims[v], sp.dims[v]))
            grid.append(row)
        if grid and grid[0]:
            mats[v] = Matrix.block(grid)
        else:
            mats[v] = Matrix.zeros(T.dims[v], S.dims[v])
    return RepMorphism(S, T, mats, check=False)


# ----------------------------------------------------------------------
# Hom spaces

class HomSpace:
    """A basis of Hom(M, N) with coordinate extraction."""

    def __init__(self, M: Rep, N: Rep, basis: Sequence[RepMorphism], kernel_matrix: Matrix):
        self.source = M
        self.target = N
        self.basis = list(basis)
        self._K = kernel_matrix
        # the canonical null basis has, for every column, a row whose only entry
        # sits in that column; reading those rows gives coordinates without solving
        rows = kernel_matrix.row_dicts()
        self._read: List[Optional[Tuple[int, Fraction]]] = [None] * kernel_matrix.cols
        for r, d in enumerate(rows):
            if len(d) == 1:
                (j, x), = d.items()
                if self._read[j] is None:
                    self._read[j] = (r, x)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, f: RepMorphism, check: bool = False) -> List[Fraction]:
        vec = f.vector()
        if all(r is not None for r in self._read):
            out = [vec[r] / x for r, x in self._read]
            if check and self._K.apply(out) != list(vec):
                raise ValueError("not a morphism in this Hom space")
            return out
        x = solve(self._K, vec)
        if x is None:
            raise ValueError("not a morphism in this Hom space")
        return x

    def combine(self, coeffs: Sequence) -> RepMorphism:
        return linear_combination(self.basis, coeffs, self.source, self.target)


def _unflatten(M: Rep, N: Rep, vec: Sequence) -> Dict[str, Matrix]:
    mats = {}
    off = 0
    for v in M.alg.quiver.vertices:
        r, c = N.dims[v], M.dims[v]
        entries = {}
        for i in range(r):
            for j in range(c):
                x = vec[off + i * c + j]
                if x:
                    entries[(i, j)] = x
        mats[v] = Matrix(r, c, entries)
        off += r * c
    return mats


@lru_cache(maxsize=4096)
def hom_space(M: Rep, N: Rep) -> HomSpace:
    if M.alg != N.alg:
        raise ValueError("Hom between representations of different algebras")
    q = M.alg.quiver
    offs = {}
    n = 0
    for v in q.vertices:
        offs[v] = n
        n += N.dims[v] * M.dims[v]
    entries = {}
    row = 0
    for a in q.arrows:
        s, t = a.source, a.target
        Na, Ma = N.maps[a.id], M.maps[a.id]
        ds, dt = M.dims[s], N.dims[t]
        # (N_a f_s - f_t M_a)[i, j] for i < dims_N(t), j < dims_M(s)
        na_rows = Na.row_dicts()
        ma_cols: Dict[int, List[Tuple[int, Fraction]]] = {}
        for (l, j), x in Ma.items():
            ma_cols.setdefault(j, []).append((l, x))
        cs = M.dims[s]
        ct = M.dims[t]
        for i in range(dt):
            for j in range(ds):
                eq = {}
                for k, x in na_rows[i].items():
                    key = offs[s] + k * cs + j
                    eq[key] = eq.get(key, 0) + x
                for l, x in ma_cols.get(j, ()):
                    key = offs[t] + i * ct + l
                    eq[key] = eq.get(key, 0) - x
                for key, x in eq.items():
                    if x:
                        entries[(row, key)] = x
                row += 1
    system = Matrix(row, n, entries)
    K = kernel_basis(system)
    basis = [RepMorphism(M, N, _unflatten(M, N, col), check=False) for col in K.columns()]
    return HomSpace(M, N, basis, K)


def hom_basis(M: Rep, N: Rep) -> List[RepMorphism]:
    return list(hom_space(M, N).basis)


def hom_dim(M: Rep, N: Rep) -> int:
    return hom_space(M, N).dim


def solve_in_hom(space: HomSpace, func, target_vector: Sequence) -> Optional[List[Fraction]]:
    """Coefficients x with func(sum x_i b_i) = target, for a linear ``func`` returning vectors."""
    cols = [func(b) for b in space.basis]
    if not cols:
        return [] if not any(target_vector) else None
    A = Matrix.from_columns(cols, len(target_vector))
    return solve(A, target_vector)


# ----------------------------------------------------------------------
# kernels, images, cokernels

def subrep(M: Rep, spaces: Mapping[str, Matrix]) -> Tuple[Rep, RepMorphism]:
    """The subrepresentation with the given (invariant) subspaces, and its inclusion."""
    q = M.alg.quiver
    dims = {v: spaces[v].cols for v in q.vertices}
    maps = {}
    for a in q.arrows:
        S, T = spaces[a.source], spaces[a.target]
        if S.cols == 0 or T.cols == 0:
            if S.cols and not (M.maps[a.id] @ S).is_zero():
                raise ValueError("subspaces are not invariant")
            maps[a.id] = Matrix.zeros(T.cols, S.cols)
            continue
        X = solve_matrix(T, M.maps[a.id] @ S)
        if X is None:
            raise ValueError("subspaces are not invariant")
        maps[a.id] = X
    sub = Rep(M.alg, dims, maps, check=False)
    return sub, RepMorphism(sub, M, dict(spaces), check=False)


def kernel(f: RepMorphism) -> Tuple[Rep, RepMorphism]:
    spaces = {v: kernel_basis(m) if m.cols else Matrix.zeros(0, 0) for v, m in f.mats.items()}
    spaces = {v: (s if f.source.dims[v] else Matrix.zeros(0, 0)) for v, s in spaces.items()}
    return subrep(f.source, spaces)


def image(f: RepMorphism) -> Tuple[Rep, RepMorphism]:
    spaces = {}
    for v, m in f.mats.items():
        spaces[v] = column_space(m)[0] if m.nnz else Matrix.zeros(f.target.dims[v], 0)
    return subrep(f.target, spaces)


def quotient(M: Rep, spaces: Mapping[str, Matrix]) -> Tuple[Rep, RepMorphism]:
    """M / (invariant subspaces), with the projection."""
    q = M.alg.quiver
    proj, lifts, dims = {}, {}, {}
    for v in q.vertices:
        S = spaces[v]
        d = M.dims[v]
        C = complement_basis(S) if S.cols else Matrix.identity(d)
        dims[v] = C.cols
        full = S.hstack(C) if S.cols else C
        if d:
            inv = inverse(full)
            proj[v] = inv.submatrix(range(S.cols, d), range(d))
        else:
            proj[v] = Matrix.zeros(0, 0)
        lifts[v] = C
    maps = {}
    for a in q.arrows:
        maps[a.id] = proj[a.target] @ M.maps[a.id] @ lifts[a.source]
    Q = Rep(M.alg, dims, maps, check=False)
    return Q, RepMorphism(M, Q, proj, check=False)


def cokernel(f: RepMorphism) -> Tuple[Rep, RepMorphism]:
    spaces = {}
    for v, m in f.mats.items():
        spaces[v] = column_space(m)[0] if m.nnz else Matrix.zeros(f.target.dims[v], 0)
    return quotient(f.target, spaces)


def factor_through_mono(f: RepMorphism, mono: RepMorphism) -> RepMorphism:
    """g with mono o g = f (requires im f inside im mono)."""
    mats = {}
    for v in f.mats:
        if mono.source.dims[v] == 0:
            if not f.mats[v].is_zero():
                raise ValueError("map does not factor through the monomorphism")
            mats[v] = Matrix.zeros(0, f.source.dims[v])
            continue
        X = solve_matrix(mono.mats[v], f.mats[v])
        if X is None:
            raise ValueError("map does not factor through the monomorphism")
        mats[v] = X
    return RepMorphism(f.source, mono.source, mats, check=False)


def factor_through_epi(f: RepMorphism, epi: RepMorphism) -> RepMorphism:
    """g with g o epi = f (requires ker epi inside ker f)."""
    mats = {}
    for v in f.mats:
        E = epi.mats[v]
        if E.rows == 0:
            mats[v] = Matrix.zeros(f.target.dims[v], 0)
            continue
        X = solve_matrix(E.T, f.mats[v].T)
        if X is None:
            raise ValueError("map does not factor through the epimorphism")
        mats[v] = X.T
    return RepMorphism(epi.target, f.target, mats, check=False)


# ----------------------------------------------------------------------
# radical, projective covers and resolutions

def radical_spaces(M: Rep) -> Dict[str, Matrix]:
    out = {}
    for v in M.alg.quiver.vertices:
        ims = [M.maps[a.id] for a in M.alg.quiver.in_arrows(v) if M.maps[a.id].nnz]
        if ims:
            out[v] = column_space(Matrix.block([ims]))[0]
        else:
            out[v] = Matrix.zeros(M.dims[v], 0)
    return out


def projective_cover(M: Rep) -> Tuple[Rep, RepMorphism, List[Tuple[str, List[Fraction]]]]:
    """Projective cover P -> M; also returns the chosen top generators (vertex, vector)."""
    alg = M.alg
    rad = radical_spaces(M)
    gens = []
    for v in alg.quiver.vertices:
        C = complement_basis(rad[v]) if rad[v].cols else Matrix.identity(M.dims[v])
        for col in C.columns():
            gens.append((v, col))
    parts = [projective_rep(alg, v) for v, _ in gens]
    P, incs, _ = direct_sum(parts, alg)
    mats = {w: [] for w in alg.quiver.vertices}
    for (v, m), part in zip(gens, parts):
        for w in alg.quiver.vertices:
            cols = []
            for p in alg.basis_paths(v, w):
                cols.append(M.eval_path(p).apply(m) if p else list(m))
            mats[w].append(Matrix.from_columns(cols, M.dims[w]) if cols else Matrix.zeros(M.dims[w], 0))
    full = {w: (Matrix.block([mats[w]]) if mats[w] else Matrix.zeros(M.dims[w], 0)) for w in mats}
    return P, RepMorphism(P, M, full, check=False), gens


def projective_resolution(M: Rep, cap: int = 10) -> List[Tuple[Rep, RepMorphism]]:
    """Minimal projective resolution ``[(P0, P0 -> M), (P1, P1 -> P0), ...]``."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    out = []
    current = M
    to_prev = None
    for step in range(cap + 1):
        if current.is_zero():
            return out
        P, eps, _ = projective_cover(current)
        d = eps if to_prev is None else to_prev.compose(eps)
        out.append((P, d))
        K, inc = kernel(eps)
        current = K
        to_prev = inc
    if current.is_zero():
        return out
    raise ResolutionCapExceeded(f"resolution exceeds cap {cap}")


def pd_at_most(M: Rep, cap: int) -> Optional[int]:
    try:
        res = projective_resolution(M, max(cap, 1))
    except ResolutionCapExceeded:
        return None
    d = max(len(res) - 1, 0)
    return d if d <= cap else None


@lru_cache(maxsize=4096)
def syzygy(M: Rep):
    """(P0, eps: P0 -> M, Omega M, inclusion Omega M -> P0) from the projective cover."""
    P, eps, _ = projective_cover(M)
    K, inc = kernel(eps)
    return P, eps, K, inc


def ext1_dim(M: Rep, N: Rep) -> int:
    """dim coker(Hom(P0, N) -> Hom(Omega M, N)), computed as
    dim Hom(Omega M, N) - dim Hom(P0, N) + dim Hom(M, N)."""
    if M.alg != N.alg:
        raise ValueError("representations over different algebras")
    if M.is_zero() or N.is_zero():
        return 0
    P, eps, K, inc = syzygy(M)
    if K.is_zero():
        return 0
    # Hom(P_v, N) = N(v), one summand P_v per top generator
    _, _, gens = projective_cover(M)
    hom_p0 = sum(N.dims[v] for v, _ in gens)
    return hom_dim(K, N) - hom_p0 + hom_dim(M, N)


# ----------------------------------------------------------------------
# endomorphisms, indecomposability and decomposition

def endomorphism_radical(M: Rep) -> Tuple[List[RepMorphism], Matrix]:
    """Basis of End(M) and a matrix whose columns give the radical in that basis.

    Uses the characteristic-zero criterion rad = {x : tr(xy) = 0 for all y}.
    """
    E = hom_basis(M, M)
    n = len(E)
    gram = {}
    for i in range(n):
        for j in range(i, n):
            t = E[i].compose(E[j]).trace()
            if t:
                gram[(i, j)] = t
                gram[(j, i)] = t
    G = Matrix(n, n, gram)
    return E, kernel_basis(G)


def _charpoly_factors(f: RepMorphism):
    import sympy
    x = sympy.Symbol("x")
    poly = sympy.Poly(1, x, domain="QQ")
    for v, m in f.mats.items():
        if m.rows == 0:
            continue
        sm = sympy.Matrix(m.rows, m.cols, lambda i, j: sympy.Rational(m[i, j].numerator, m[i, j].denominator))
        poly = poly * sympy.Poly(sm.charpoly(x).as_expr(), x, domain="QQ")
    _, factors = sympy.factor_list(poly.as_expr(), x, domain="QQ")
    out = []
    for fac, mult in factors:
        p = sympy.Poly(fac, x, domain="QQ")
        coeffs = [Fraction(int(c.p), int(c.q)) for c in p.all_coeffs()]
        out.append((coeffs, mult))
    return out


def _poly_eval(coeffs: Sequence[Fraction], m: Matrix) -> Matrix:
    n = m.rows
    out = Matrix.zeros(n, n)
    I = Matrix.identity(n)
    for c in coeffs:
        out = out @ m + I.scale(c)
    return out


def _candidates(E: Sequence[RepMorphism], seed: int, budget: int):
    n = len(E)
    for e in E:
        yield e
    for i in range(n):
        for j in range(i + 1, n):
            yield E[i] + E[j]
    rng = random.Random(seed)
    for _ in range(budget):
        coeffs = [rng.choice((-2, -1, 0, 1, 1, 2, 3)) for _ in range(n)]
        yield linear_combination(E, coeffs)


def _fitting_split(M: Rep, E: Sequence[RepMorphism], seed: int = 0, budget: int = 60):
    """Find an endomorphism whose characteristic polynomial has two coprime parts and
    return the induced decomposition into invariant subspace families."""
    for f in _candidates(E, seed, budget):
        factors = _charpoly_factors(f)
        if len(factors) < 2:
            continue
        parts = []
        for coeffs, mult in factors:
            spaces = {}
            for v, m in f.mats.items():
                if m.rows == 0:
                    spaces[v] = Matrix.zeros(0, 0)
                    continue
                pm = _poly_eval(coeffs, m).power(mult)
                spaces[v] = kernel_basis(pm)
            parts.append(spaces)
        return parts
    return None


class Decomposition:
    """Indecomposable summands with inclusions and projections realising M = sum of summands."""

    def __init__(self, M: Rep, summands, inclusions, projections):
        self.module = M
        self.summands: List[Rep] = list(summands)
        self.inclusions: List[RepMorphism] = list(inclusions)
        self.projections: List[RepMorphism] = list(projections)

    def multiset(self) -> List[Tuple[Rep, int]]:
        groups: List[List] = []
        for s in self.summands:
            for g in groups:
                if g[0].dims == s.dims and is_isomorphic(g[0], s):
                    g[1] += 1
                    break
            else:
                groups.append([s, 1])
        return [(g[0], g[1]) for g in groups]

    def verify(self) -> bool:
        """The inclusions assemble to an isomorphism onto M."""
        q = self.module.alg.quiver
        for v in q.vertices:
            blocks = [i.mats[v] for i in self.inclusions if i.mats[v].cols]
            d = self.module.dims[v]
            if not blocks:
                if d:
                    return False
                continue
            B = Matrix.block([blocks])
            if B.cols != d or rank(B) != d:
                return False
        return True


def _decompose_rec(M: Rep, inc: RepMorphism, depth: int = 0):
    if M.is_zero():
        return []
    E, radK = endomorphism_radical(M)
    if len(E) - radK.cols == 1:
        return [(M, inc)]
    parts = _fitting_split(M, E, seed=depth)
    if parts is None:
        parts = _split_off_brick(M)
    if parts is None:
        raise NonSplitEndomorphismRing(
            f"End(M)/rad has dimension {len(E) - radK.cols} but no splitting element was found")
    out = []
    for spaces in parts:
        sub, sinc = subrep(M, spaces)
        out.extend(_decompose_rec(sub, inc.compose(sinc), depth + 1))
    return out


def _split_pair(X: Rep, M: Rep):
    """(f, g) with f: X -> M, g: M -> X and gf invertible, or None."""
    F = hom_basis(X, M)
    G = hom_basis(M, X) if F else []
    for g in G:
        for f in F:
            h = g.compose(f)
            if h.is_injective() and h.is_surjective():
                return f, g
    return None


def _split_off_brick(M: Rep):
    """Fallback when End(M)/rad is a matrix algebra without an easy splitting element.

    Over a path algebra a summand X with M = X^k and dim X a real root is the
    unique exceptional module of that dimension, so a generic representation of
    dimension dim(M)/k can be split off directly.
    """
    alg = M.alg
    if not alg.is_hereditary_path_algebra():
        return None
    d = list(M.dim_vector())
    g = 0
    for x in d:
        g = math.gcd(g, x)
    for k in range(g, 1, -1):
        if g % k or not is_real_root(alg, [x // k for x in d]):
            continue
        X = generic_rep(alg, [x // k for x in d])
        if hom_dim(X, X) != 1:
            continue
        pair = _split_pair(X, M)
        if pair is None:
            continue
        f, gmap = pair
        img = {v: f.mats[v] for v in M.dims}
        ker = kernel(gmap)[1]
        return [img, {v: ker.mats[v] for v in M.dims}]
    return None


@lru_cache(maxsize=2048)
def decompose_with_witness(M: Rep) -> Decomposition:
    pieces = _decompose_rec(M, M.identity())
    pieces.sort(key=lambda t: t[0].sort_key())
    q = M.alg.quiver
    projs_mats = [dict() for _ in pieces]
    for v in q.vertices:
        d = M.dims[v]
        blocks = [inc.mats[v] for _, inc in pieces]
        if d == 0:
            for k, (s, _) in enumerate(pieces):
                projs_mats[k][v] = Matrix.zeros(s.dims[v], 0)
            continue
        B = Matrix.block([blocks])
        Binv = inverse(B)
        off = 0
        for k, (s, _) in enumerate(pieces):
            projs_mats[k][v] = Binv.submatrix(range(off, off + s.dims[v]), range(d))
            off += s.dims[v]
    projections = [RepMorphism(M, s, pm, check=False) for (s, _), pm in zip(pieces, projs_mats)]
    return Decomposition(M, [s for s, _ in pieces], [i for _, i in pieces], projections)


def decompose(M: Rep) -> List[Rep]:
    """Indecomposable summands (with repetition), sorted canonically."""
    return list(decompose_with_witness(M).summands)


def add_multiplicities(M: Rep, parts: Sequence[Rep]) -> Optional[List[int]]:
    """Multiplicities of M in add(parts), or None if M is not a sum of copies of them.

    Each part must be indecomposable with End/rad = Q.  Copies are split off one at a
    time through a pair f: X -> M, g: M -> X with gf invertible, so no decomposition of
    M itself is needed (useful when End(M)/rad is a full matrix algebra).
    """
    counts = [0] * len(parts)
    cur = M
    while not cur.is_zero():
        for i, X in enumerate(parts):
            if any(X.dims[v] > cur.dims[v] for v in X.dims):
                continue
            F = hom_basis(X, cur)
            G = hom_basis(cur, X) if F else []
            pair = next(((f, g) for g in G for f in F if (lambda h: h.is_injective() and h.is_surjective())(g.compose(f))), None)
            if pair is None:
                continue
            cur = kernel(pair[1])[0]
            counts[i] += 1
            break
        else:
            return None
    return counts


def is_indecomposable(M: Rep) -> bool:
    if M.is_zero():
        raise ValueError("the zero representation is not considered")
    E, radK = endomorphism_radical(M)
    if len(E) - radK.cols == 1:
        return True
    parts = _fitting_split(M, E)
    if parts is None:
        raise NonSplitEndomorphismRing("End(M)/rad is not split over Q")
    return False


def _iso_indecomposables(X: Rep, Y: Rep) -> Optional[RepMorphism]:
    """Exact test for indecomposables with split local endomorphism rings."""
    if X.dims != Y.dims:
        return None
    F = hom_basis(X, Y)
    G = hom_basis(Y, X)
    for f in F:
        for g in G:
            if g.compose(f).trace() != 0:
                return f
    return None


def find_isomorphism(M: Rep, N: Rep, tries: int = 3, seed: int = 12345) -> Optional[RepMorphism]:
    """An isomorphism M -> N, or None.  Random search first, then exact matching of summands."""
    if M.alg != N.alg:
        raise ValueError("representations over different algebras")
    if M.dims != N.dims:
        return None
    if M.is_zero():
        return M.zero_to(N)
    H = hom_basis(M, N)
    if not H:
        return None
    rng = random.Random(seed)
    for t in range(tries):
        if t == 0 and len(H) == 1:
            f = H[0]
        else:
            f = linear_combination(H, [rng.randint(-1000, 1000) for _ in H])
        if f.is_iso():
            return f
    dm = decompose_with_witness(M)
    dn = decompose_with_witness(N)
    if len(dm.summands) != len(dn.summands):
        return None
    used = set()
    blocks = []
    for i, X in enumerate(dm.summands):
        for j, Y in enumerate(dn.summands):
            if j in used:
                continue
            w = _iso_indecomposables(X, Y)
            if w is not None:
                used.add(j)
                blocks.append(dn.inclusions[j].compose(w).compose(dm.projections[i]))
                break
        else:
            return None
    f = blocks[0]
    for b in blocks[1:]:
        f = f + b
    return f if f.is_iso() else None


def is_isomorphic(M: Rep, N: Rep) -> bool:
    return find_isomorphism(M, N) is not None


def trace_in(T: Rep, X: Rep) -> Rep:
    """Sum of the images of all morphisms T -> X (a subrepresentation of X)."""
    return trace_inclusion(T, X)[0]


def trace_inclusion(T: Rep, X: Rep) -> Tuple[Rep, RepMorphism]:
    H = hom_basis(T, X)
    spaces = {}
    for v in X.alg.quiver.vertices:
        cols = [f.mats[v] for f in H if f.mats[v].nnz]
        spaces[v] = column_space(Matrix.block([cols]))[0] if cols else Matrix.zeros(X.dims[v], 0)
    return subrep(X, spaces)


# ----------------------------------------------------------------------
# quadratic forms and enumeration (path algebras)

def tits_form(alg: BoundQuiverAlgebra, d: Sequence[int]) -> int:
    q = alg.quiver
    idx = {v: i for i, v in enumerate(q.vertices)}
    return sum(x * x for x in d) - sum(d[idx[a.source]] * d[idx[a.target]] for a in q.arrows)


def euler_form(alg: BoundQuiverAlgebra, dm: Sequence[int], dn: Sequence[int]) -> int:
    """<dim M, dim N> = dim Hom(M, N) - dim Ext^1(M, N) for path algebras."""
    q = alg.quiver
    idx = {v: i for i, v in enumerate(q.vertices)}
    return (sum(a * b for a, b in zip(dm, dn))
            - sum(dm[idx[a.source]] * dn[idx[a.target]] for a in q.arrows))


def _sym_form(alg, x, y) -> int:
    return euler_form(alg, x, y) + euler_form(alg, y, x)


def is_real_root(alg: BoundQuiverAlgebra, d: Sequence[int]) -> bool:
    """Reduce by simple reflections; a positive real root reaches a simple root."""
    d = list(d)
    n = len(d)
    if any(x < 0 for x in d) or not any(d):
        return False
    while sum(d) > 1:
        for i in range(n):
            e = [0] * n
            e[i] = 1
            c = _sym_form(alg, d, e)
            if c > 0 and d[i] > 0:
                d[i] -= c
                break
        else:
            return False
        if any(x < 0 for x in d):
            return False
    return True


class IndecomposableList(list):
    """A list of representatives that also records dimension vectors where an
    infinite family of indecomposables was encountered."""

    def __init__(self, items=(), infinite_families=()):
        super().__init__(items)
        self.infinite_families = list(infinite_families)


def _support_connected(alg, d) -> bool:
    q = alg.quiver
    sup = {v for v, x in zip(q.vertices, d) if x}
    if not sup:
        return False
    start = next(iter(sup))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for a in q.out_arrows(v) + q.in_arrows(v):
            w = a.target if a.source == v else a.source
            if w in sup and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == sup


def generic_rep(alg: BoundQuiverAlgebra, d: Sequence[int], seed: int = 0, spread: int = 9) -> Rep:
    q = alg.quiver
    dims = dict(zip(q.vertices, d))
    rng = random.Random(seed)
    maps = {}
    for a in q.arrows:
        r, c = dims[a.target], dims[a.source]
        maps[a.id] = Matrix.from_rows([[rng.randint(-spread, spread) for _ in range(c)] for _ in range(r)]) \
            if r and c else Matrix.zeros(r, c)
    return Rep(alg, dims, maps)


def enumerate_indecomposables(alg: BoundQuiverAlgebra, dim_cap: int, attempts: int = 6) -> IndecomposableList:
    """Indecomposables of total dimension <= dim_cap over a path algebra, one per class.

    Dimension vectors are scanned in lexicographic order.  Vectors with Tits
    form 1 that are real roots carry exactly one indecomposable, obtained as a
    seeded generic representation and certified by ``is_indecomposable``.
    Vectors with Tits form <= 0 and connected support are recorded in
    ``infinite_families``.
    """
    if not alg.is_hereditary_path_algebra():
        raise ValueError("enumeration is implemented for path algebras of acyclic quivers")
    q = alg.quiver
    n = len(q.vertices)
    out = IndecomposableList()
    for d in itertools.product(range(dim_cap + 1), repeat=n):
        if not any(d) or sum(d) > dim_cap:
            continue
        if not _support_connected(alg, d):
            continue
        form = tits_form(alg, d)
        if form >= 2:
            continue
        if form <= 0:
            out.infinite_families.append(tuple(d))
            continue
        if not is_real_root(alg, d):
            continue
        seed = hash(tuple(d)) & 0xFFFF
        for k in range(attempts):
            M = generic_rep(alg, d, seed=seed + k)
            if is_indecomposable(M):
                out.append(M)
                break
        else:
            raise EnumerationIncomplete(f"no indecomposable found for real root {d}")
    return out
