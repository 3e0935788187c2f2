"""Exact sparse linear algebra over the prime field F_p.

Matrices are stored as sparse triplet maps and assembled row-major on
demand for elimination.  Pivoting is deterministic (rows in order, each
reduced at its leading column), so homology representative bases are
reproducible across runs.
"""

from __future__ import annotations


class NotAComplexError(ValueError):
    """Raised when a claimed differential pair fails d_out . d_in = 0."""


def _check_odd_prime(p: int) -> None:
    if p < 3 or p % 2 == 0:
        raise ValueError(f"p must be an odd prime, got {p}")
    d = 3
    while d * d <= p:
        if p % d == 0:
            raise ValueError(f"p must be an odd prime, got {p}")
        d += 2


class FpMatrix:
    """Sparse matrix over F_p; immutable after construction."""

    __slots__ = ("p", "rows", "cols", "entries")

    def __init__(self, p: int, rows: int, cols: int, entries=None):
        _check_odd_prime(p)
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        self.p = p
        self.rows = rows
        self.cols = cols
        clean = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"entry ({r},{c}) out of bounds")
            v %= p
            if v:
                clean[(r, c)] = v
        self.entries = clean

    @classmethod
    def from_rows(cls, p: int, rowlist) -> "FpMatrix":
        rowlist = [list(r) for r in rowlist]
        cols = len(rowlist[0]) if rowlist else 0
        ent = {}
        for i, row in enumerate(rowlist):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                if v % p:
                    ent[(i, j)] = v % p
        return cls(p, len(rowlist), cols, ent)

    @classmethod
    def identity(cls, p: int, n: int) -> "FpMatrix":
        return cls(p, n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zero(cls, p: int, rows: int, cols: int) -> "FpMatrix":
        return cls(p, rows, cols, {})

    def row_dicts(self) -> list[dict]:
        out = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def col_dicts(self) -> list[dict]:
        out = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            out[c][r] = v
        return out

    def transpose(self) -> "FpMatrix":
        return FpMatrix(
            self.p, self.cols, self.rows,
            {(c, r): v for (r, c), v in self.entries.items()},
        )

    def compose(self, inner: "FpMatrix") -> "FpMatrix":
        """Matrix product self . inner (apply inner first)."""
        if self.p != inner.p:
            raise ValueError("prime mismatch")
        if self.cols != inner.rows:
            raise ValueError("shape mismatch in composition")
        p = self.p
        by_col = {}
        for (r, c), v in self.entries.items():
            by_col.setdefault(c, []).append((r, v))
        acc = {}
        for (mid, j), w in inner.entries.items():
            for r, v in by_col.get(mid, ()):
                key = (r, j)
                acc[key] = (acc.get(key, 0) + v * w) % p
        return FpMatrix(p, self.rows, inner.cols, acc)

    def apply(self, vec: dict) -> dict:
        """Apply to a sparse column vector {index: value}."""
        p = self.p
        out = {}
        by_col = {}
        for (r, c), v in self.entries.items():
            by_col.setdefault(c, []).append((r, v))
        for c, w in vec.items():
            for r, v in by_col.get(c, ()):
                nv = (out.get(r, 0) + v * w) % p
                if nv:
                    out[r] = nv
                else:
                    out.pop(r, None)
        return out

    def is_zero(self) -> bool:
        return not self.entries

    def __repr__(self):
        return f"FpMatrix(p={self.p}, {self.rows}x{self.cols}, nnz={len(self.entries)})"


def _reduce_row(row: dict, pivots: dict, p: int) -> dict:
    """Reduce a sparse row against pivot rows at leading columns only."""
    while row:
        c = min(row)
        piv = pivots.get(c)
        if piv is None:
            return row
        coef = row[c]
        for k, v in piv.items():
            nv = (row.get(k, 0) - coef * v) % p
            if nv:
                row[k] = nv
            else:
                row.pop(k, None)
    return row


def _insert_row(row: dict, pivots: dict, p: int):
    """Insert a row into an echelon set; returns its pivot column or None."""
    row = _reduce_row(row, pivots, p)
    if not row:
        return None
    c = min(row)
    inv = pow(row[c], p - 2, p)
    if inv != 1:
        row = {k: (v * inv) % p for k, v in row.items()}
    pivots[c] = row
    return c


def _echelon(rowiter, p: int) -> dict:
    pivots: dict = {}
    for row in rowiter:
        if row:
            _insert_row(dict(row), pivots, p)
    return pivots


def _back_substitute(pivots: dict, p: int) -> None:
    """Turn an echelon set into reduced row echelon form, in place."""
    for c in sorted(pivots, reverse=True):
        prow = pivots[c]
        for c2, other in pivots.items():
            if c2 >= c:
                continue
            coef = other.get(c)
            if not coef:
                continue
            for k, v in prow.items():
                nv = (other.get(k, 0) - coef * v) % p
                if nv:
                    other[k] = nv
                else:
                    other.pop(k, None)


def rank(m: FpMatrix) -> int:
    """Rank over F_p by Gaussian elimination on sparse rows."""
    return len(_echelon(m.row_dicts(), m.p))


def kernel_basis(m: FpMatrix) -> list[dict]:
    """Basis of the null space {x : m x = 0} as sparse vectors.

    One vector per free column, ordered by free column index; the vector
    for free column f has entry 1 at f.
    """
    p = m.p
    pivots = _echelon(m.row_dicts(), p)
    _back_substitute(pivots, p)
    pivot_cols = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_cols:
            continue
        vec = {f: 1}
        for c, row in pivots.items():
            v = row.get(f)
            if v:
                vec[c] = (-v) % p
        basis.append(vec)
    return basis


class HomologySummand:
    """Homology at the middle stage of d_in -> . -> d_out."""

    __slots__ = ("dimension", "representatives")

    def __init__(self, dimension: int, representatives: list[dict]):
        self.dimension = dimension
        self.representatives = representatives


def homology(d_in: FpMatrix, d_out: FpMatrix) -> HomologySummand:
    """dim ker(d_out) - rank(d_in), with chosen cycle representatives.

    Raises NotAComplexError unless d_out . d_in = 0.
    """
    if d_in.p != d_out.p:
        raise ValueError("prime mismatch")
    if d_out.cols != d_in.rows:
        raise ValueError("shape mismatch: d_out.cols != d_in.rows")
    if not d_out.compose(d_in).is_zero():
        raise NotAComplexError("not a complex: d_out . d_in != 0")
    p = d_in.p
    image_pivots = _echelon(d_in.col_dicts(), p)
    dim = (d_out.cols - rank(d_out)) - len(image_pivots)
    reps = []
    seen = dict(image_pivots)
    if dim > 0:
        for vec in kernel_basis(d_out):
            reduced = _reduce_row(dict(vec), seen, p)
            if not reduced:
                continue
            reps.append(dict(vec))
            _insert_row(reduced, seen, p)
            if len(reps) == dim:
                break
    if len(reps) != dim:
        raise AssertionError("representative extraction disagrees with rank count")
    return HomologySummand(dim, reps)


def subquotient_dimension(d_in: FpMatrix, d_out: FpMatrix) -> int:
    return homology(d_in, d_out).dimension


def reduce_mod_span(vec: dict, span_vectors: list[dict], p: int) -> dict:
    """Reduce a sparse vector modulo the span of the given vectors."""
    pivots = _echelon(span_vectors, p)
    return _reduce_row(dict(vec), pivots, p)
