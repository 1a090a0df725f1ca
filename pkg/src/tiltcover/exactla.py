"""Exact sparse linear algebra over the rationals.

Matrices are immutable and store only their nonzero entries as
:class:`fractions.Fraction`.  Elimination works on integer rows (every row is
cleared of denominators and divided by its content), so no fraction arithmetic
happens inside the inner loops.

Two pivoting strategies are used:

* ``rank`` uses a Markowitz-style minimal-fill choice with ``(row, col)``
  lexicographic tie-breaking;
* ``kernel_basis`` and ``solve`` pivot column by column, left to right, which
  gives the canonical reduced-row-echelon null basis.

An optional modular pre-filter (:func:`rank_mod_p`) is available.  Its answer
is only ever used when it certifies full rank, since rank mod p never exceeds
the rational rank.
"""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

__all__ = [
    "Matrix",
    "to_scalar",
    "rank",
    "rank_mod_p",
    "kernel_basis",
    "solve",
    "column_space",
    "inverse",
    "DEFAULT_PRIME",
    "solve_matrix",
    "complement_basis",
    "stack_vectors",
]

DEFAULT_PRIME = 2_147_483_647  # 2^31 - 1


def to_scalar(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point entries are not allowed; use int, str or Fraction")
    return Fraction(x)


class Matrix:
    """Immutable sparse matrix with rational entries."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, rows: int, cols: int, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix shape")
        self.rows = rows
        self.cols = cols
        data: Dict[Tuple[int, int], Fraction] = {}
        if entries:
            items = entries.items() if isinstance(entries, dict) else entries
            for (r, c), v in items:
                if not (0 <= r < rows and 0 <= c < cols):
                    raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
                v = to_scalar(v)
                if v:
                    data[(r, c)] = v
        self._data = data
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def _raw(cls, rows: int, cols: int, data: Dict[Tuple[int, int], Fraction]) -> "Matrix":
        m = cls.__new__(cls)
        m.rows, m.cols, m._data, m._hash = rows, cols, data, None
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls._raw(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "Matrix":
        nr = len(rows)
        nc = len(rows[0]) if rows else (cols or 0)
        if cols is not None and rows and nc != cols:
            raise ValueError("row length does not match cols")
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != nc:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                v = to_scalar(v)
                if v:
                    entries[(i, j)] = v
        return cls._raw(nr, nc, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        entries = {}
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise ValueError("column length mismatch")
            for i, v in enumerate(col):
                v = to_scalar(v)
                if v:
                    entries[(i, j)] = v
        return cls._raw(rows, len(columns), entries)

    @classmethod
    def column_vector(cls, values: Sequence) -> "Matrix":
        return cls.from_columns([values], len(values))

    @classmethod
    def diagonal_blocks(cls, blocks: Sequence["Matrix"]) -> "Matrix":
        data = {}
        r0 = c0 = 0
        for b in blocks:
            for (r, c), v in b._data.items():
                data[(r0 + r, c0 + c)] = v
            r0 += b.rows
            c0 += b.cols
        return cls._raw(r0, c0, data)

    @classmethod
    def block(cls, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        """Assemble a block matrix; every block in a row shares its row count."""
        if not grid:
            return cls.zeros(0, 0)
        row_heights = [blocks[0].rows if blocks else 0 for blocks in grid]
        col_widths = [b.cols for b in grid[0]]
        data = {}
        r0 = 0
        for bi, blocks in enumerate(grid):
            c0 = 0
            for bj, b in enumerate(blocks):
                if b.rows != row_heights[bi] or b.cols != col_widths[bj]:
                    raise ValueError("inconsistent block shapes")
                for (r, c), v in b._data.items():
                    data[(r0 + r, c0 + c)] = v
                c0 += b.cols
            r0 += row_heights[bi]
        return cls._raw(sum(row_heights), sum(col_widths), data)

    # access -------------------------------------------------------------
    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, key) -> Fraction:
        r, c = key
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise IndexError(key)
        return self._data.get((r, c), Fraction(0))

    def items(self) -> Iterator[Tuple[Tuple[int, int], Fraction]]:
        return iter(self._data.items())

    @property
    def nnz(self) -> int:
        return len(self._data)

    def to_rows(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self._data.items():
            out[r][c] = v
        return out

    def column(self, j: int) -> List[Fraction]:
        out = [Fraction(0)] * self.rows
        for (r, c), v in self._data.items():
            if c == j:
                out[r] = v
        return out

    def columns(self) -> List[List[Fraction]]:
        out = [[Fraction(0)] * self.rows for _ in range(self.cols)]
        for (r, c), v in self._data.items():
            out[c][r] = v
        return out

    def row_dicts(self) -> List[Dict[int, Fraction]]:
        out: List[Dict[int, Fraction]] = [dict() for _ in range(self.rows)]
        for (r, c), v in self._data.items():
            out[r][c] = v
        return out

    def flat(self) -> List[Fraction]:
        """Entries in row-major order."""
        out = [Fraction(0)] * (self.rows * self.cols)
        for (r, c), v in self._data.items():
            out[r * self.cols + c] = v
        return out

    def is_zero(self) -> bool:
        return not self._data

    def is_square(self) -> bool:
        return self.rows == self.cols

    def trace(self) -> Fraction:
        return sum((v for (r, c), v in self._data.items() if r == c), Fraction(0))

    # arithmetic ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, frozenset(self._data.items())))
        return self._hash

    def __repr__(self) -> str:
        if self.rows * self.cols <= 64:
            body = "; ".join(" ".join(str(v) for v in row) for row in self.to_rows())
            return f"Matrix({self.rows}x{self.cols}: [{body}])"
        return f"Matrix({self.rows}x{self.cols}, nnz={self.nnz})"

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        data = dict(self._data)
        for k, v in other._data.items():
            s = data.get(k, 0) + v
            if s:
                data[k] = s
            else:
                data.pop(k, None)
        return Matrix._raw(self.rows, self.cols, data)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.rows, self.cols, {k: -v for k, v in self._data.items()})

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, s) -> "Matrix":
        s = to_scalar(s)
        if not s:
            return Matrix.zeros(self.rows, self.cols)
        return Matrix._raw(self.rows, self.cols, {k: v * s for k, v in self._data.items()})

    def __mul__(self, s) -> "Matrix":
        if isinstance(s, Matrix):
            return self @ s
        return self.scale(s)

    __rmul__ = scale

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        if not self._data or not other._data:
            return Matrix.zeros(self.rows, other.cols)
        orows = defaultdict(list)
        for (r, c), v in other._data.items():
            orows[r].append((c, v))
        acc: Dict[Tuple[int, int], Fraction] = defaultdict(Fraction)
        for (i, j), a in self._data.items():
            for k, b in orows.get(j, ()):
                acc[(i, k)] += a * b
        return Matrix._raw(self.rows, other.cols, {k: v for k, v in acc.items() if v})

    def apply(self, vec: Sequence) -> List[Fraction]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = [Fraction(0)] * self.rows
        for (r, c), v in self._data.items():
            x = vec[c]
            if x:
                out[r] += v * x
        return out

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(self.cols, self.rows, {(c, r): v for (r, c), v in self._data.items()})

    def transpose(self) -> "Matrix":
        return self.T

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Matrix":
        rmap = {r: i for i, r in enumerate(row_idx)}
        cmap = {c: j for j, c in enumerate(col_idx)}
        data = {}
        for (r, c), v in self._data.items():
            if r in rmap and c in cmap:
                data[(rmap[r], cmap[c])] = v
        return Matrix._raw(len(row_idx), len(col_idx), data)

    def hstack(self, *others: "Matrix") -> "Matrix":
        return Matrix.block([[self, *others]])

    def vstack(self, *others: "Matrix") -> "Matrix":
        return Matrix.block([[self]] + [[o] for o in others])

    def power(self, k: int) -> "Matrix":
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    # linear algebra shortcuts ------------------------------------------
    def rank(self) -> int:
        return rank(self)

    def kernel(self) -> "Matrix":
        return kernel_basis(self)


# ----------------------------------------------------------------------
# integer row elimination

def _int_row(row: Dict[int, Fraction]) -> Dict[int, int]:
    den = 1
    for v in row.values():
        d = v.denominator
        if d != 1:
            den = den * d // gcd(den, d)
    out = {c: int(v * den) for c, v in row.items()}
    return _primitive(out)


def _primitive(row: Dict[int, int]) -> Dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def _combine(target: Dict[int, int], pivot: Dict[int, int], col: int) -> Dict[int, int]:
    """Return a primitive integer row equal to a combination of target and pivot with ``col`` cleared."""
    a = target[col]
    p = pivot[col]
    g = gcd(a, p)
    m_t = p // g
    m_p = a // g
    out = {c: v * m_t for c, v in target.items()}
    for c, v in pivot.items():
        s = out.get(c, 0) - m_p * v
        if s:
            out[c] = s
        else:
            out.pop(c, None)
    if m_t < 0:
        out = {c: -v for c, v in out.items()}
    return _primitive(out)


def _eliminate(rows: List[Dict[int, int]], *, markowitz: bool, full: bool,
               pivot_limit: Optional[int] = None, modulus: Optional[int] = None
               ) -> Tuple[List[Tuple[int, Dict[int, int]]], List[Dict[int, int]]]:
    """Gaussian elimination on sparse integer rows.

    Returns ``(pivots, leftovers)``: pivot rows with their pivot column, and the
    nonzero rows that could not supply a pivot (they only have entries at
    columns ``>= pivot_limit``).
    """
    live: Dict[int, Dict[int, int]] = {}
    colidx: Dict[int, set] = defaultdict(set)
    for i, r in enumerate(rows):
        if r:
            live[i] = r
            for c in r:
                colidx[c].add(i)
    pivots: List[Tuple[int, Dict[int, int]]] = []

    def allowed(c: int) -> bool:
        return pivot_limit is None or c < pivot_limit

    while live:
        choice = None
        if markowitz:
            best = None
            for i in sorted(live):
                r = live[i]
                rl = len(r) - 1
                for c in sorted(r):
                    if not allowed(c):
                        continue
                    cost = rl * (len(colidx[c]) - 1)
                    key = (cost, i, c)
                    if best is None or key < best:
                        best = key
                if best is not None and best[0] == 0:
                    break
            if best is not None:
                choice = (best[1], best[2])
        else:
            cands = [c for c, s in colidx.items() if s and allowed(c)]
            if cands:
                c = min(cands)
                i = min(colidx[c], key=lambda j: (len(live[j]), j))
                choice = (i, c)
        if choice is None:
            break
        i, c = choice
        prow = live.pop(i)
        for cc in prow:
            colidx[cc].discard(i)
        if modulus is not None:
            inv = pow(prow[c], -1, modulus)
            prow = {cc: (v * inv) % modulus for cc, v in prow.items()}
        for j in list(colidx[c]):
            old = live[j]
            if modulus is None:
                new = _combine(old, prow, c)
            else:
                f = old[c]
                new = dict(old)
                for cc, v in prow.items():
                    s = (new.get(cc, 0) - f * v) % modulus
                    if s:
                        new[cc] = s
                    else:
                        new.pop(cc, None)
            for cc in old:
                if cc not in new:
                    colidx[cc].discard(j)
            for cc in new:
                colidx[cc].add(j)
            if new:
                live[j] = new
            else:
                del live[j]
        pivots.append((c, prow))

    if full:
        for k in range(len(pivots) - 1, -1, -1):
            ck, rk = pivots[k]
            for j in range(k):
                cj, rj = pivots[j]
                if ck in rj:
                    pivots[j] = (cj, _combine(rj, rk, ck))
    return pivots, list(live.values())


def _int_rows(m: Matrix) -> List[Dict[int, int]]:
    return [_int_row(r) for r in m.row_dicts() if r]


def rank(m: Matrix, *, prefilter: bool = False) -> int:
    """Exact rank over Q.

    With ``prefilter=True`` a rank computation modulo a large prime is tried
    first; it is accepted only when it already equals ``min(rows, cols)``.
    """
    if not m.nnz:
        return 0
    if prefilter:
        rp = rank_mod_p(m)
        if rp == min(m.rows, m.cols):
            return rp
    pivots, _ = _eliminate(_int_rows(m), markowitz=True, full=False)
    return len(pivots)


def rank_mod_p(m: Matrix, p: int = DEFAULT_PRIME) -> int:
    """Rank of ``m`` reduced modulo the prime ``p`` (a lower bound for the rational rank)."""
    rows = []
    for r in m.row_dicts():
        if not r:
            continue
        row = {}
        for c, v in r.items():
            if v.denominator % p == 0:
                raise ZeroDivisionError("denominator divisible by the chosen prime")
            x = (v.numerator * pow(v.denominator, -1, p)) % p
            if x:
                row[c] = x
        if row:
            rows.append(row)
    pivots, _ = _eliminate(rows, markowitz=True, full=False, modulus=p)
    return len(pivots)


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form the canonical (reduced echelon) basis of the right null space."""
    n = m.cols
    if not m.nnz:
        return Matrix.identity(n)
    pivots, _ = _eliminate(_int_rows(m), markowitz=False, full=True)
    pivot_cols = {c for c, _ in pivots}
    free = [c for c in range(n) if c not in pivot_cols]
    data = {}
    for j, f in enumerate(free):
        data[(f, j)] = Fraction(1)
        for c, row in pivots:
            v = row.get(f)
            if v:
                data[(c, j)] = Fraction(-v, row[c])
    return Matrix._raw(n, len(free), data)


def solve(m: Matrix, b: Sequence) -> Optional[List[Fraction]]:
    """Some ``x`` with ``m x = b`` (free variables set to 0), or ``None``."""
    if len(b) != m.rows:
        raise ValueError("right-hand side length does not match rows")
    n = m.cols
    rows = m.row_dicts()
    aug = []
    for i, r in enumerate(rows):
        bi = to_scalar(b[i])
        if bi:
            r = dict(r)
            r[n] = bi
        if r:
            aug.append(_int_row(r))
    pivots, leftovers = _eliminate(aug, markowitz=False, full=True, pivot_limit=n)
    if leftovers:
        return None
    x = [Fraction(0)] * n
    for c, row in pivots:
        v = row.get(n)
        if v:
            x[c] = Fraction(v, row[c])
    return x


def column_space(m: Matrix) -> Tuple[Matrix, List[int]]:
    """A basis of the column space made of original columns, with their indices."""
    if not m.nnz:
        return Matrix.zeros(m.rows, 0), []
    idx = _independent_columns(m)
    return m.submatrix(range(m.rows), idx), idx


def _independent_columns(m: Matrix) -> List[int]:
    # leftmost pivoting on rows picks the lexicographically first independent column set
    pivots, _ = _eliminate(_int_rows(m), markowitz=False, full=False)
    return sorted(c for c, _ in pivots)


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    aug = m.hstack(Matrix.identity(n))
    pivots, _ = _eliminate(_int_rows(aug), markowitz=False, full=True, pivot_limit=n)
    if len(pivots) != n:
        raise ZeroDivisionError("matrix is singular")
    data = {}
    for c, row in pivots:
        p = row[c]
        for cc, v in row.items():
            if cc >= n:
                data[(c, cc - n)] = Fraction(v, p)
    return Matrix._raw(n, n, data)


def stack_vectors(vectors: Iterable[Sequence], length: int) -> Matrix:
    """Matrix whose columns are the given vectors."""
    return Matrix.from_columns(list(vectors), length)


def solve_matrix(m: Matrix, b: Matrix) -> Optional[Matrix]:
    """Some ``X`` with ``m X = b``, or ``None`` if a column is inconsistent."""
    if b.rows != m.rows:
        raise ValueError("row count mismatch")
    n = m.cols
    if not b.nnz:
        return Matrix.zeros(n, b.cols)
    aug = m.hstack(b)
    pivots, leftovers = _eliminate(_int_rows(aug), markowitz=False, full=True, pivot_limit=n)
    if leftovers:
        return None
    data = {}
    for c, row in pivots:
        p = row[c]
        for cc, v in row.items():
            if cc >= n:
                data[(c, cc - n)] = Fraction(v, p)
    return Matrix._raw(n, b.cols, data)


def complement_basis(sub: Matrix) -> Matrix:
    """Standard basis vectors completing the column span of ``sub`` to the whole space.

    The chosen coordinates are the non-pivot columns of the echelon form of
    ``sub`` transposed.
    """
    n = sub.rows
    if not sub.nnz:
        return Matrix.identity(n)
    pivots, _ = _eliminate(_int_rows(sub.T), markowitz=False, full=False)
    pc = {c for c, _ in pivots}
    chosen = [i for i in range(n) if i not in pc]
    return Matrix._raw(n, len(chosen), {(i, j): Fraction(1) for j, i in enumerate(chosen)})
