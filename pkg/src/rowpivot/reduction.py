"""Column and row pivot reductions with the clear and compress shortcuts.

Column reduction adds earlier columns to later ones until every nonzero
column has its own ``low``.  Row reduction walks rows bottom-up and adds
later rows to earlier ones until every nonzero row has its own ``left``.
The coboundary is handled as the anti-transpose of the boundary, so the
same two engines serve all four orientations.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Iterable, Optional

from .complex import Filtration
from .matrix import SparsePivotMatrix, build_boundary_matrix
from .pairing import (
    Barcode,
    PersistencePair,
    assemble_barcode,
    pairs_from_column_reduced,
    pairs_from_row_reduced,
    with_dimensions,
)


class InvalidStrategyError(ValueError):
    pass


class Orientation(str, Enum):
    COL_B = "col-b"
    COL_COB = "col-cob"
    ROW_B = "row-b"
    ROW_COB = "row-cob"

    @property
    def by_rows(self) -> bool:
        return self in (Orientation.ROW_B, Orientation.ROW_COB)

    @property
    def on_coboundary(self) -> bool:
        return self in (Orientation.COL_COB, Orientation.ROW_COB)


class Optimization(str, Enum):
    NONE = "none"
    CLEAR = "clear"
    COMPRESS = "compress"


@dataclass(frozen=True)
class Strategy:
    orientation: Orientation = Orientation.ROW_B
    optimization: Optimization = Optimization.COMPRESS

    def __post_init__(self):
        try:
            orientation = Orientation(self.orientation)
            optimization = Optimization(self.optimization)
        except ValueError as exc:
            raise InvalidStrategyError(str(exc)) from None
        if optimization is Optimization.CLEAR and orientation.by_rows:
            raise InvalidStrategyError("clear requires a column orientation")
        if optimization is Optimization.COMPRESS and not orientation.by_rows:
            raise InvalidStrategyError("compress requires a row orientation")
        object.__setattr__(self, "orientation", orientation)
        object.__setattr__(self, "optimization", optimization)

    def __str__(self) -> str:
        return f"{self.orientation.value}+{self.optimization.value}"


ALL_STRATEGIES = tuple(
    Strategy(o, opt)
    for o in Orientation
    for opt in (Optimization.NONE, Optimization.COMPRESS if o.by_rows else Optimization.CLEAR)
)


@dataclass
class ReductionStats:
    rows_processed: int = 0
    cols_processed: int = 0
    additions: int = 0
    symbol_flips: int = 0
    skipped_by_clear: int = 0
    skipped_by_compress: int = 0

    def to_record(self, strategy: Strategy, pairs: int, essential: int) -> dict:
        """Flat record for JSON output; ``pairs`` and ``essential`` are counts."""
        return {
            "strategy": strategy.orientation.value,
            "optimization": strategy.optimization.value,
            **asdict(self),
            "pairs": pairs,
            "essential": essential,
        }


@dataclass
class ReductionCertificate:
    """``reduced = transform @ original`` (side "left") or ``original @ transform`` (side "right")."""

    transform: SparsePivotMatrix
    side: str


@dataclass
class ReductionResult:
    reduced: SparsePivotMatrix
    stats: ReductionStats
    by_rows: bool
    certificate: Optional[ReductionCertificate] = None
    operations: list[tuple[int, int]] = field(default_factory=list)  # (src, dst)
    skipped: list[int] = field(default_factory=list)

    @property
    def pairs(self) -> set[PersistencePair]:
        """Pivot pairs in the indexing of the reduced matrix."""
        if self.by_rows:
            return pairs_from_row_reduced(self.reduced)
        return pairs_from_column_reduced(self.reduced)


def _reduce_by_columns(
    M: SparsePivotMatrix,
    order: Iterable[int],
    clear: bool = False,
    certificate: bool = False,
) -> ReductionResult:
    stats = ReductionStats()
    V = SparsePivotMatrix.identity(M.n_cols) if certificate else None
    ops: list[tuple[int, int]] = []
    skipped: list[int] = []
    pivot_col: dict[int, int] = {}  # low row -> column owning it
    visited: set[int] = set()
    cleared: set[int] = set()
    for j in order:
        visited.add(j)
        if j in cleared or M.low(j) is None:
            continue
        stats.cols_processed += 1
        i = M.low(j)
        while i is not None and i in pivot_col:
            src = pivot_col[i]
            stats.symbol_flips += M.add_column(src, j)
            stats.additions += 1
            ops.append((src, j))
            if V is not None:
                V.add_column(src, j)
            i = M.low(j)
        if i is None:
            continue
        pivot_col[i] = j
        if clear and i <= M.n_cols and i not in visited and i not in cleared and M.low(i) is not None:
            M.clear_column(i)
            cleared.add(i)
            skipped.append(i)
            stats.skipped_by_clear += 1
    return ReductionResult(
        M, stats, False, ReductionCertificate(V, "right") if V is not None else None, ops, skipped
    )


def _reduce_by_rows(
    M: SparsePivotMatrix,
    order: Iterable[int],
    compress: bool = False,
    certificate: bool = False,
) -> ReductionResult:
    stats = ReductionStats()
    W = SparsePivotMatrix.identity(M.n_rows) if certificate else None
    ops: list[tuple[int, int]] = []
    skipped: list[int] = []
    pivot_row: dict[int, int] = {}  # left column -> row owning it
    visited: set[int] = set()
    compressed: set[int] = set()
    for i in order:
        visited.add(i)
        if i in compressed or M.left(i) is None:
            continue
        stats.rows_processed += 1
        j = M.left(i)
        # rows below i are already reduced, so at most one candidate per pivot
        while j is not None and j in pivot_row:
            src = pivot_row[j]
            stats.symbol_flips += M.add_row(src, i)
            stats.additions += 1
            ops.append((src, i))
            if W is not None:
                W.add_row(src, i)
            j = M.left(i)
        if j is None:
            continue
        pivot_row[j] = i
        if compress and j <= M.n_rows and j not in visited and j not in compressed and M.left(j) is not None:
            M.clear_row(j)
            compressed.add(j)
            skipped.append(j)
            stats.skipped_by_compress += 1
    return ReductionResult(
        M, stats, True, ReductionCertificate(W, "left") if W is not None else None, ops, skipped
    )


def reduce_columns(M: SparsePivotMatrix, certificate: bool = True, copy: bool = True) -> ReductionResult:
    """Standard left-to-right column reduction."""
    if copy:
        M = M.copy()
    return _reduce_by_columns(M, range(1, M.n_cols + 1), certificate=certificate)


def reduce_rows(M: SparsePivotMatrix, certificate: bool = True, copy: bool = True) -> ReductionResult:
    """Row pivot reduction: rows ``m..1``, each absorbing later rows sharing its left pivot."""
    if copy:
        M = M.copy()
    return _reduce_by_rows(M, range(M.n_rows, 0, -1), certificate=certificate)


def _target_matrix(f: Filtration, target: str) -> SparsePivotMatrix:
    D = build_boundary_matrix(f)
    if target == "boundary":
        return D
    if target == "coboundary":
        return D.anti_transpose()
    raise ValueError(f"unknown target {target!r}")


def _index_dimensions(f: Filtration, target: str) -> list[int]:
    """Simplex dimension of every index 1..m of the target matrix (slot 0 unused)."""
    dims = [s.dimension for s in f.simplices]
    if target == "coboundary":
        dims.reverse()
    return [-1] + dims


def _blocked(dims: list[int], increasing_dims: bool, increasing_index: bool) -> list[int]:
    m = len(dims) - 1
    index = range(1, m + 1) if increasing_index else range(m, 0, -1)
    levels = sorted({dims[k] for k in index}, reverse=not increasing_dims)
    return [k for d in levels for k in index if dims[k] == d]


def reduce_columns_clear(f: Filtration, target: str = "boundary") -> ReductionResult:
    """Column reduction with clearing, one dimension block at a time.

    Boundary blocks go in decreasing dimension, coboundary blocks in
    increasing dimension, so each pivot found clears a column that has not
    been reached yet.
    """
    M = _target_matrix(f, target)
    order = _blocked(_index_dimensions(f, target), increasing_dims=target == "coboundary", increasing_index=True)
    return _reduce_by_columns(M, order, clear=True)


def reduce_rows_compress(f: Filtration, target: str = "boundary") -> ReductionResult:
    """Row reduction with compression, one dimension block at a time.

    Boundary blocks go in increasing dimension, coboundary blocks in
    decreasing dimension, so each pivot found compresses a row that has not
    been reached yet.
    """
    M = _target_matrix(f, target)
    order = _blocked(_index_dimensions(f, target), increasing_dims=target == "boundary", increasing_index=False)
    return _reduce_by_rows(M, order, compress=True)


@dataclass
class StrategyRun:
    strategy: Strategy
    pairs: set[PersistencePair]
    essential: list[int]
    barcode: Barcode
    stats: ReductionStats
    result: ReductionResult

    def record(self) -> dict:
        return self.stats.to_record(self.strategy, len(self.pairs), len(self.essential))


def run_strategy(f: Filtration, s: Strategy, certificate: bool = False) -> StrategyRun:
    """Reduce ``f`` with strategy ``s`` and report pairs in boundary indexing."""
    f.checked()
    target = "coboundary" if s.orientation.on_coboundary else "boundary"
    if s.optimization is Optimization.CLEAR:
        result = reduce_columns_clear(f, target)
    elif s.optimization is Optimization.COMPRESS:
        result = reduce_rows_compress(f, target)
    else:
        M = _target_matrix(f, target)
        engine = reduce_rows if s.orientation.by_rows else reduce_columns
        result = engine(M, certificate=certificate, copy=False)
    raw = result.pairs
    if target == "coboundary":
        m = len(f)
        # entry (r, c) of the anti-transpose is entry (m+1-c, m+1-r) of the boundary
        raw = {PersistencePair(m + 1 - p.death, m + 1 - p.birth) for p in raw}
    pairs = with_dimensions(f, raw)
    barcode = assemble_barcode(f, pairs)
    essential = sorted(b for births in barcode.essential.values() for b in births)
    return StrategyRun(s, pairs, essential, barcode, result.stats, result)


def verify_certificate(
    original: SparsePivotMatrix, reduced: SparsePivotMatrix, cert: ReductionCertificate
) -> Optional[str]:
    """``None`` if the certificate reproduces ``reduced``, else a description of the mismatch.

    The product is recomputed with integer bitmasks, independently of the
    row/column addition code.
    """
    T = cert.transform
    n = T.n_rows
    if T.n_cols != n:
        return "transform is not square"
    entries = set(T.entries())
    if any(i > j for i, j in entries):
        return "transform is not upper-triangular"
    if any((k, k) not in entries for k in range(1, n + 1)):
        return "transform lacks a unit diagonal"
    if cert.side == "left":
        if n != original.n_rows or reduced.shape != original.shape:
            return "dimension mismatch"
        src = [_mask(original.row(k)) for k in range(1, n + 1)]
        for i in range(1, n + 1):
            acc = 0
            for k in T.row(i):
                acc ^= src[k - 1]
            if acc != _mask(reduced.row(i)):
                return f"row {i} of transform @ original differs from reduced"
    elif cert.side == "right":
        if n != original.n_cols or reduced.shape != original.shape:
            return "dimension mismatch"
        src = [_mask(original.column(k)) for k in range(1, n + 1)]
        for j in range(1, n + 1):
            acc = 0
            for k in T.column(j):
                acc ^= src[k - 1]
            if acc != _mask(reduced.column(j)):
                return f"column {j} of original @ transform differs from reduced"
    else:
        return f"unknown side {cert.side!r}"
    return None


def _mask(indices: Iterable[int]) -> int:
    out = 0
    for k in indices:
        out |= 1 << k
    return out
