"""Exact sparse linear algebra over Fraction or GaussianRational scalars.

Vectors are dicts mapping an index to a nonzero scalar; matrices are stored
column-sparse.  Everything here is field-generic: any scalar type with exact
+, -, *, / and truthiness-as-nonzero works.  No floating point anywhere.
"""

from __future__ import annotations

__all__ = [
    "vec_iadd_scaled",
    "vec_scale",
    "SparseMatrix",
    "Echelon",
    "SpanSolver",
    "nullspace",
    "solve_unique",
]


def vec_iadd_scaled(u: dict, v: dict, c) -> dict:
    """u += c*v in place, purging zero entries; returns u."""
    if not c:
        return u
    for k, val in v.items():
        s = u.get(k)
        s = val * c if s is None else s + val * c
        if s:
            u[k] = s
        else:
            u.pop(k, None)
    return u


def vec_scale(v: dict, c) -> dict:
    if not c:
        return {}
    return {k: val * c for k, val in v.items()}


class SparseMatrix:
    """Column-sparse exact matrix: ``cols[j]`` maps row index -> nonzero entry."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols=None):
        self.nrows = nrows
        self.ncols = ncols
        self.cols = [dict() for _ in range(ncols)] if cols is None else cols

    @classmethod
    def identity(cls, n: int, one):
        return cls(n, n, [{i: one} for i in range(n)])

    @classmethod
    def from_entries(cls, nrows, ncols, entries):
        m = cls(nrows, ncols)
        for r, c, v in entries:
            if v:
                m.cols[c][r] = v
        return m

    def set(self, r: int, c: int, v) -> None:
        if v:
            self.cols[c][r] = v
        else:
            self.cols[c].pop(r, None)

    def get(self, r: int, c: int):
        return self.cols[c].get(r)

    def col(self, j: int) -> dict:
        return self.cols[j]

    def entries(self):
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                yield i, j, v

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def apply(self, vec: dict) -> dict:
        """Matrix times column vector."""
        out: dict = {}
        for j, c in vec.items():
            vec_iadd_scaled(out, self.cols[j], c)
        return out

    def apply_transpose(self, vec: dict) -> dict:
        """Row vector times matrix (returns a dict over column indices)."""
        out: dict = {}
        for j, col in enumerate(self.cols):
            s = None
            for i, v in col.items():
                c = vec.get(i)
                if c is not None:
                    s = v * c if s is None else s + v * c
            if s:
                out[j] = s
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in matrix product")
        return SparseMatrix(
            self.nrows, other.ncols, [self.apply(c) for c in other.cols]
        )

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        cols = []
        for a, b in zip(self.cols, other.cols):
            col = dict(a)
            vec_iadd_scaled(col, b, 1)
            cols.append(col)
        return SparseMatrix(self.nrows, self.ncols, cols)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        cols = []
        for a, b in zip(self.cols, other.cols):
            col = dict(a)
            vec_iadd_scaled(col, b, -1)
            cols.append(col)
        return SparseMatrix(self.nrows, self.ncols, cols)

    def scale(self, c) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, [vec_scale(col, c) for col in self.cols])

    def __neg__(self):
        return self.scale(-1)

    def transpose(self) -> "SparseMatrix":
        m = SparseMatrix(self.ncols, self.nrows)
        for i, j, v in self.entries():
            m.cols[i][j] = v
        return m

    def trace(self):
        tot = 0
        for j, col in enumerate(self.cols):
            v = col.get(j)
            if v is not None:
                tot = tot + v
        return tot

    def is_zero(self) -> bool:
        return all(not col for col in self.cols)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            return False
        return all(a == b for a, b in zip(self.cols, other.cols))

    def __hash__(self):
        raise TypeError("SparseMatrix is not hashable")

    def copy(self) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, [dict(c) for c in self.cols])


class Echelon:
    """Incremental exact row-echelon form of a set of sparse row vectors.

    Rows are dicts keyed by any totally ordered index type; the pivot of a row
    is its minimal index.  Stored pivot rows are normalized to pivot entry 1.
    """

    __slots__ = ("rows",)

    def __init__(self):
        self.rows: dict = {}  # pivot index -> normalized row

    def reduce(self, row: dict) -> dict:
        row = dict(row)
        rows = self.rows
        while row:
            p = min(row)
            pivot_row = rows.get(p)
            if pivot_row is None:
                return row
            vec_iadd_scaled(row, pivot_row, -row[p])
        return row

    def add(self, row: dict):
        """Insert a row; return its pivot index, or None if dependent."""
        row = self.reduce(row)
        if not row:
            return None
        p = min(row)
        inv = _invert_scalar(row[p])
        if inv != 1:
            row = vec_scale(row, inv)
        self.rows[p] = row
        return p

    @property
    def rank(self) -> int:
        return len(self.rows)


class SpanSolver:
    """Row space of tagged vectors, with exact membership and expression.

    ``add(tag, vec)`` inserts a vector; ``express(vec)`` writes a vector as an
    exact linear combination of the inserted ones (dict tag -> coefficient) or
    returns None when it is outside the span.
    """

    __slots__ = ("rows", "tags")

    def __init__(self):
        self.rows: dict = {}  # pivot -> (vec, rep); invariant vec == sum rep[t]*orig[t]
        self.tags: list = []

    def _reduce(self, vec: dict, rep: dict):
        vec = dict(vec)
        rep = dict(rep)
        rows = self.rows
        while vec:
            p = min(vec)
            stored = rows.get(p)
            if stored is None:
                return p, vec, rep
            svec, srep = stored
            c = vec[p]
            vec_iadd_scaled(vec, svec, -c)
            vec_iadd_scaled(rep, srep, -c)
        return None, vec, rep

    def add(self, tag, vec: dict) -> bool:
        """Insert; returns True when the vector enlarges the span."""
        rep = {tag: 1}
        p, vec, rep = self._reduce(vec, rep)
        if p is None:
            return False
        inv = _invert_scalar(vec[p])
        if inv != 1:
            vec = vec_scale(vec, inv)
            rep = vec_scale(rep, inv)
        self.rows[p] = (vec, rep)
        self.tags.append(tag)
        return True

    def contains(self, vec: dict) -> bool:
        p, _, _ = self._reduce(vec, {})
        return p is None

    def express(self, vec: dict):
        p, _, rep = self._reduce(vec, {})
        if p is not None:
            return None
        return {t: -c for t, c in rep.items()}

    @property
    def rank(self) -> int:
        return len(self.rows)


def _invert_scalar(c):
    """Exact 1/c that keeps ints inside the rationals."""
    if isinstance(c, int):
        from fractions import Fraction

        return Fraction(1, c)
    one = c / c
    return one / c


def nullspace(rows, columns) -> list:
    """Basis of {x : A x = 0} for the row-sparse matrix A over ``columns``.

    ``rows`` is an iterable of dicts keyed by members of ``columns`` (any
    hashable, totally ordered index set).  Returns a list of dict vectors.
    """
    columns = list(columns)
    ech = Echelon()
    for r in rows:
        ech.add(r)
    pivots = ech.rows
    free = [c for c in columns if c not in pivots]
    basis = []
    for f in free:
        x = {f: 1}
        for p in sorted(pivots, reverse=True):
            row = pivots[p]
            s = None
            for c, v in row.items():
                if c == p:
                    continue
                xc = x.get(c)
                if xc is not None:
                    s = v * xc if s is None else s + v * xc
            if s:
                x[p] = -s
        basis.append(x)
    return basis


def solve_unique(rows_with_rhs):
    """Solve A x = b given rows as (coefficient dict, rhs scalar) pairs.

    The augmented vector (a, -b) is echelonized; a pivot landing in the
    right-hand-side column means the system is inconsistent (ValueError).
    Free coefficient columns are set to zero, so when A has full column rank
    on the referenced columns the returned dict is the unique solution.
    """
    ech = Echelon()
    for row, rhs in rows_with_rhs:
        r = {(0, c): v for c, v in row.items() if v}
        if rhs:
            r[_RHS] = -rhs
        ech.add(r)
    pivots = ech.rows
    if _RHS in pivots:
        raise ValueError("inconsistent linear system")
    x: dict = {_RHS: 1}
    for p in sorted(pivots, reverse=True):
        row = pivots[p]
        s = None
        for c, v in row.items():
            if c == p:
                continue
            xc = x.get(c)
            if xc is not None:
                s = v * xc if s is None else s + v * xc
        if s:
            x[p] = -s
    return {c: v for (flag, c), v in x.items() if flag == 0 and v}


# sorts after every coefficient column (0, c)
_RHS = (1, "rhs")
