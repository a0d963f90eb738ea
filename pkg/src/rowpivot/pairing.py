"""Persistence pairs, barcodes, and the rank-function oracle."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

from .complex import Filtration
from .matrix import SparsePivotMatrix, SubmatrixSpec, rank_gf2


class PairingError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class PersistencePair:
    birth: int
    death: int
    dimension: Optional[int] = None

    def __post_init__(self):
        if self.birth >= self.death:
            raise PairingError(f"birth {self.birth} must precede death {self.death}")

    @property
    def indices(self) -> tuple[int, int]:
        return self.birth, self.death


def pairs_from_row_reduced(R: SparsePivotMatrix) -> set[PersistencePair]:
    """One pair ``(i, left(i))`` per nonzero row of a row reduced matrix."""
    seen: dict[int, int] = {}
    for i in range(1, R.n_rows + 1):
        j = R.left(i)
        if j is None:
            continue
        if j in seen:
            raise PairingError(f"rows {seen[j]} and {i} share left pivot {j}; matrix is not row reduced")
        seen[j] = i
    return {PersistencePair(i, j) for j, i in seen.items()}


def pairs_from_column_reduced(C: SparsePivotMatrix) -> set[PersistencePair]:
    """One pair ``(low(j), j)`` per nonzero column of a column reduced matrix."""
    seen: dict[int, int] = {}
    for j in range(1, C.n_cols + 1):
        i = C.low(j)
        if i is None:
            continue
        if i in seen:
            raise PairingError(f"columns {seen[i]} and {j} share low pivot {i}; matrix is not column reduced")
        seen[i] = j
    return {PersistencePair(i, j) for i, j in seen.items()}


def pairing_oracle(D: SparsePivotMatrix, i: int, j: int) -> int:
    """``rank D[i:, :j] - rank D[i+1:, :j] + rank D[i+1:, :j-1] - rank D[i:, :j-1]``."""
    if not 1 <= i <= D.n_rows or not 1 <= j <= D.n_cols:
        raise IndexError(f"({i}, {j}) out of bounds for {D.shape}")
    return (
        rank_gf2(D, SubmatrixSpec(i, j))
        - rank_gf2(D, SubmatrixSpec(i + 1, j))
        + rank_gf2(D, SubmatrixSpec(i + 1, j - 1))
        - rank_gf2(D, SubmatrixSpec(i, j - 1))
    )


def lower_left_ranks(D: SparsePivotMatrix) -> list[list[int]]:
    """Table ``t[i][j]`` of lower-left ranks for ``1 <= i <= n_rows + 1``, ``0 <= j <= n_cols``.

    Built column-prefix by column-prefix, inserting rows bottom-up into a
    fresh XOR basis each time.  Cubic, meant for small oracle checks.
    """
    n, m = D.n_rows, D.n_cols
    table = [[0] * (m + 1) for _ in range(n + 2)]
    full_rows = [0] * (n + 1)
    for i in range(1, n + 1):
        for j in D.row(i):
            full_rows[i] |= 1 << j
    for j in range(1, m + 1):
        mask = (1 << (j + 1)) - 1
        basis: dict[int, int] = {}
        for i in range(n, 0, -1):
            v = full_rows[i] & mask
            while v:
                lead = v.bit_length() - 1
                if lead not in basis:
                    basis[lead] = v
                    break
                v ^= basis[lead]
            table[i][j] = len(basis)
    return table


def oracle_pairs(D: SparsePivotMatrix) -> set[tuple[int, int]]:
    """All ``(i, j)`` with rank-function value 1, read off the original matrix."""
    t = lower_left_ranks(D)
    return {
        (i, j)
        for i in range(1, D.n_rows + 1)
        for j in range(1, D.n_cols + 1)
        if t[i][j] - t[i + 1][j] + t[i + 1][j - 1] - t[i][j - 1] == 1
    }


@dataclass
class Barcode:
    """Index-level barcode: half-open ``[birth, death)`` intervals plus essential births."""

    intervals: dict[int, list[tuple[int, int]]]
    essential: dict[int, list[int]]
    grades: Optional[tuple[float, ...]] = None

    def lines(self) -> list[tuple[int, int, float]]:
        rows: list[tuple[int, int, float]] = []
        for dim, ivs in self.intervals.items():
            rows.extend((dim, b, d) for b, d in ivs)
        for dim, births in self.essential.items():
            rows.extend((dim, b, math.inf) for b in births)
        return sorted(rows)

    def __len__(self) -> int:
        return sum(map(len, self.intervals.values())) + sum(map(len, self.essential.values()))

    def to_text(self, values: bool = False) -> str:
        """``<dim> <birth> <death>`` per line, ``inf`` for essential deaths.

        With ``values`` the birth and death grades are appended.
        """
        if values and self.grades is None:
            raise ValueError("filtration carries no grades")
        out = []
        for dim, b, d in self.lines():
            fields = [str(dim), str(b), "inf" if d == math.inf else str(d)]
            if values:
                fields.append(_fmt(self.grades[b - 1]))
                fields.append("inf" if d == math.inf else _fmt(self.grades[d - 1]))
            out.append(" ".join(fields) + "\n")
        return "".join(out)

    def value_intervals(self, drop_zero_length: bool = False) -> list[tuple[int, float, float]]:
        """Intervals translated through the filtration grades."""
        if self.grades is None:
            raise ValueError("filtration carries no grades")
        out = []
        for dim, b, d in self.lines():
            lo = self.grades[b - 1]
            hi = math.inf if d == math.inf else self.grades[d - 1]
            if drop_zero_length and lo == hi:
                continue
            out.append((dim, lo, hi))
        return out


def _fmt(x: float) -> str:
    return repr(int(x)) if float(x).is_integer() else repr(x)


def assemble_barcode(f: Filtration, pairs: Iterable[PersistencePair | tuple[int, int]]) -> Barcode:
    m = len(f)
    used: set[int] = set()
    intervals: dict[int, list[tuple[int, int]]] = {}
    for p in pairs:
        b, d = p.indices if isinstance(p, PersistencePair) else p
        if not (1 <= b < d <= m):
            raise PairingError(f"pair ({b}, {d}) out of range for {m} simplices")
        if b in used or d in used:
            raise PairingError(f"index reused by pair ({b}, {d})")
        if f[d].dimension != f[b].dimension + 1:
            raise PairingError(f"pair ({b}, {d}) does not raise dimension by one")
        used.update((b, d))
        intervals.setdefault(f[b].dimension, []).append((b, d))
    essential: dict[int, list[int]] = {}
    for pos in range(1, m + 1):
        if pos not in used:
            essential.setdefault(f[pos].dimension, []).append(pos)
    return Barcode(
        {k: sorted(v) for k, v in sorted(intervals.items())},
        dict(sorted(essential.items())),
        f.values,
    )


def with_dimensions(f: Filtration, pairs: Iterable[PersistencePair]) -> set[PersistencePair]:
    return {PersistencePair(p.birth, p.death, f[p.birth].dimension) for p in pairs}


def acyclic_reduction_count(v: int, d: int) -> int:
    """Rows (resp. columns) left to reduce under compress (resp. clear) on an acyclic complex."""
    if v < 1 or d < 0:
        raise ValueError("need v >= 1 and d >= 0")
    return sum(math.comb(v - 1, h) for h in range(d + 2))
