"""Sparse GF(2) matrices with O(1) ``low`` and ``left`` pivot queries.

Entries are stored twice: as sorted row indices per column and as sorted
column indices per row.  Both views are kept in sync by every mutation.
Indices are 1-based; slot 0 of each view is unused.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .complex import Filtration, boundary_faces


def _symdiff(a: list[int], b: list[int]) -> list[int]:
    """Sorted merge of two sorted lists, cancelling common entries."""
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        x, y = a[i], b[j]
        if x < y:
            out.append(x)
            i += 1
        elif y < x:
            out.append(y)
            j += 1
        else:
            i += 1
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return out


def _toggle(support: list[int], k: int) -> None:
    pos = bisect_left(support, k)
    if pos < len(support) and support[pos] == k:
        del support[pos]
    else:
        support.insert(pos, k)


class SparsePivotMatrix:
    def __init__(self, n_rows: int, n_cols: int, entries: Iterable[tuple[int, int]] = ()):
        if n_rows < 0 or n_cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.n_rows = n_rows
        self.n_cols = n_cols
        self._cols: list[list[int]] = [[] for _ in range(n_cols + 1)]
        self._rows: list[list[int]] = [[] for _ in range(n_rows + 1)]
        for i, j in set(entries):
            self._check_row(i)
            self._check_col(j)
            self._cols[j].append(i)
            self._rows[i].append(j)
        for support in self._cols:
            support.sort()
        for support in self._rows:
            support.sort()

    @classmethod
    def from_columns(cls, n_rows: int, columns: list[Iterable[int]]) -> "SparsePivotMatrix":
        """Build from 1-based row supports, ``columns[k]`` being column ``k + 1``."""
        return cls(n_rows, len(columns), ((i, j) for j, col in enumerate(columns, start=1) for i in col))

    @classmethod
    def identity(cls, n: int) -> "SparsePivotMatrix":
        return cls(n, n, ((k, k) for k in range(1, n + 1)))

    @classmethod
    def from_dense(cls, grid: list[list[int]]) -> "SparsePivotMatrix":
        n_rows = len(grid)
        n_cols = len(grid[0]) if grid else 0
        return cls(
            n_rows,
            n_cols,
            ((i, j) for i, row in enumerate(grid, 1) for j, x in enumerate(row, 1) if x % 2),
        )

    def _check_row(self, i: int) -> None:
        if not 1 <= i <= self.n_rows:
            raise IndexError(f"row {i} out of range 1..{self.n_rows}")

    def _check_col(self, j: int) -> None:
        if not 1 <= j <= self.n_cols:
            raise IndexError(f"column {j} out of range 1..{self.n_cols}")

    @property
    def shape(self) -> tuple[int, int]:
        return self.n_rows, self.n_cols

    def column(self, j: int) -> list[int]:
        self._check_col(j)
        return list(self._cols[j])

    def row(self, i: int) -> list[int]:
        self._check_row(i)
        return list(self._rows[i])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        self._check_row(i)
        self._check_col(j)
        support = self._cols[j]
        pos = bisect_left(support, i)
        return int(pos < len(support) and support[pos] == i)

    def low(self, j: int) -> Optional[int]:
        """Row index of the lowest nonzero entry of column ``j``."""
        self._check_col(j)
        support = self._cols[j]
        return support[-1] if support else None

    def left(self, i: int) -> Optional[int]:
        """Column index of the leftmost nonzero entry of row ``i``."""
        self._check_row(i)
        support = self._rows[i]
        return support[0] if support else None

    def add_column(self, src: int, dst: int) -> int:
        """Add column ``src`` to column ``dst``; returns the number of entries toggled."""
        self._check_col(src)
        self._check_col(dst)
        if src == dst:
            raise ValueError("cannot add a column to itself")
        support = self._cols[src]
        self._cols[dst] = _symdiff(self._cols[dst], support)
        for i in support:
            _toggle(self._rows[i], dst)
        return len(support)

    def add_row(self, src: int, dst: int) -> int:
        """Add row ``src`` to row ``dst``; returns the number of entries toggled."""
        self._check_row(src)
        self._check_row(dst)
        if src == dst:
            raise ValueError("cannot add a row to itself")
        support = self._rows[src]
        self._rows[dst] = _symdiff(self._rows[dst], support)
        for j in support:
            _toggle(self._cols[j], dst)
        return len(support)

    def clear_column(self, j: int) -> None:
        self._check_col(j)
        for i in self._cols[j]:
            _toggle(self._rows[i], j)
        self._cols[j] = []

    def clear_row(self, i: int) -> None:
        self._check_row(i)
        for j in self._rows[i]:
            _toggle(self._cols[j], i)
        self._rows[i] = []

    def entries(self) -> Iterator[tuple[int, int]]:
        """Nonzero positions in column-major order."""
        for j in range(1, self.n_cols + 1):
            for i in self._cols[j]:
                yield i, j

    def nnz(self) -> int:
        return sum(len(c) for c in self._cols)

    def copy(self) -> "SparsePivotMatrix":
        other = SparsePivotMatrix(self.n_rows, self.n_cols)
        other._cols = [list(c) for c in self._cols]
        other._rows = [list(r) for r in self._rows]
        return other

    def anti_transpose(self) -> "SparsePivotMatrix":
        """Send entry ``(i, j)`` to ``(n_cols + 1 - j, n_rows + 1 - i)``."""
        return SparsePivotMatrix(
            self.n_cols,
            self.n_rows,
            ((self.n_cols + 1 - j, self.n_rows + 1 - i) for i, j in self.entries()),
        )

    def is_upper_triangular(self, strict: bool = False) -> bool:
        if strict:
            return all(i < j for i, j in self.entries())
        return all(i <= j for i, j in self.entries())

    def to_dense(self) -> list[list[int]]:
        grid = [[0] * self.n_cols for _ in range(self.n_rows)]
        for i, j in self.entries():
            grid[i - 1][j - 1] = 1
        return grid

    def dump(self) -> str:
        """Dense 0/1 text grid, one row per line."""
        return "".join("".join(map(str, row)) + "\n" for row in self.to_dense())

    def _views_agree(self) -> bool:
        from_cols = {(i, j) for j in range(1, self.n_cols + 1) for i in self._cols[j]}
        from_rows = {(i, j) for i in range(1, self.n_rows + 1) for j in self._rows[i]}
        return from_cols == from_rows

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparsePivotMatrix):
            return NotImplemented
        return self.shape == other.shape and self._cols == other._cols

    def __repr__(self) -> str:
        return f"SparsePivotMatrix({self.n_rows}x{self.n_cols}, nnz={self.nnz()})"


def build_boundary_matrix(f: Filtration) -> SparsePivotMatrix:
    """The m x m boundary matrix of a valid filtration."""
    f.checked()
    m = len(f)
    return SparsePivotMatrix(
        m,
        m,
        ((f.position(face), j) for j, s in enumerate(f.simplices, start=1) for face in boundary_faces(s)),
    )


def anti_transpose(M: SparsePivotMatrix) -> SparsePivotMatrix:
    return M.anti_transpose()


@dataclass(frozen=True)
class SubmatrixSpec:
    """Lower-left block: rows ``>= i`` and columns ``<= j``."""

    i: int
    j: int


def rank_gf2(M: SparsePivotMatrix, spec: SubmatrixSpec) -> int:
    """GF(2) rank of the lower-left block of ``M`` selected by ``spec``.

    Plain Gaussian elimination on integer bitmasks; deliberately shares no
    code with the reduction routines so it can serve as their oracle.
    """
    if not 1 <= spec.i <= M.n_rows + 1 or not 0 <= spec.j <= M.n_cols:
        raise IndexError(f"submatrix {spec} out of bounds for {M.shape}")
    rows = []
    for i in range(spec.i, M.n_rows + 1):
        mask = 0
        for j in M.row(i):
            if j > spec.j:
                break
            mask |= 1 << j
        if mask:
            rows.append(mask)
    return _bitmask_rank(rows)


def _bitmask_rank(rows: list[int]) -> int:
    basis: dict[int, int] = {}  # leading bit -> basis vector
    for v in rows:
        while v:
            lead = v.bit_length() - 1
            if lead not in basis:
                basis[lead] = v
                break
            v ^= basis[lead]
    return len(basis)
