"""Reading filtrations from text and building Vietoris-Rips filtrations."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Sequence

from .complex import Filtration, Simplex


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric distances stored as the strict lower triangle, row by row."""

    n: int
    entries: tuple[float, ...]

    def __post_init__(self):
        if len(self.entries) != self.n * (self.n - 1) // 2:
            raise ValueError(f"{len(self.entries)} entries do not fill a {self.n}-point lower triangle")
        for x in self.entries:
            if not math.isfinite(x) or x < 0:
                raise ValueError(f"distance {x} is not finite and non-negative")

    def __call__(self, p: int, q: int) -> float:
        if p == q:
            return 0.0
        if p < q:
            p, q = q, p
        return self.entries[p * (p - 1) // 2 + q]

    @classmethod
    def from_points(cls, points: Sequence[Sequence[float]]) -> "DistanceMatrix":
        return cls(len(points), tuple(math.dist(points[p], points[q]) for p in range(len(points)) for q in range(p)))


_SEP = re.compile(r"[,\s]+")


def parse_explicit_filtration(text: str) -> Filtration:
    """One simplex per line (vertex ids), optionally followed by ``@ <grade>``.

    Blank lines and ``#`` comments are ignored.  Grades must be given for
    every simplex or for none.
    """
    simplices: list[Simplex] = []
    grades: list[float] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        body, at, grade = line.partition("@")
        try:
            vertices = [int(tok) for tok in body.split()]
            simplices.append(Simplex.of(*vertices))
        except ValueError as exc:
            raise ParseError(f"bad simplex {body.strip()!r}: {exc}", lineno) from None
        if at:
            try:
                grades.append(float(grade))
            except ValueError:
                raise ParseError(f"bad grade {grade.strip()!r}", lineno) from None
    if grades and len(grades) != len(simplices):
        raise ParseError("grades must be given for all simplices or none")
    return Filtration(tuple(simplices), tuple(grades) if grades else None).checked()


def parse_lower_distance_matrix(text: str) -> DistanceMatrix:
    tokens = [t for t in _SEP.split(text.strip()) if t]
    try:
        values = [float(t) for t in tokens]
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    k = len(values)
    n = (1 + math.isqrt(1 + 8 * k)) // 2
    if n * (n - 1) // 2 != k:
        raise ParseError(f"{k} entries is not a triangular number")
    try:
        return DistanceMatrix(n, tuple(values))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_point_cloud(text: str) -> DistanceMatrix:
    points: list[list[float]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            point = [float(t) for t in _SEP.split(line) if t]
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        if points and len(point) != len(points[0]):
            raise ParseError(f"expected {len(points[0])} coordinates, got {len(point)}", lineno)
        if not all(map(math.isfinite, point)):
            raise ParseError("non-finite coordinate", lineno)
        points.append(point)
    return DistanceMatrix.from_points(points)


def build_rips(dm: DistanceMatrix, max_dim: int = 1, threshold: float = math.inf) -> Filtration:
    """Vietoris-Rips filtration up to ``max_dim``, truncated at ``threshold``.

    Simplices are sorted by (diameter, dimension, vertices); the grade of a
    simplex is its diameter.
    """
    if max_dim < 0 or threshold < 0:
        raise ValueError("max_dim and threshold must be non-negative")
    n = dm.n
    cells: list[tuple[float, int, tuple[int, ...]]] = [(0.0, 0, (v,)) for v in range(n)]
    neighbours = [{q for q in range(n) if q != p and dm(p, q) <= threshold} for p in range(n)]
    layer = [((v,), 0.0) for v in range(n)]
    for dim in range(1, max_dim + 1):
        nxt = []
        for vs, diam in layer:
            common = set.intersection(*(neighbours[v] for v in vs))
            for w in sorted(common):
                if w <= vs[-1]:
                    continue
                d = max(diam, max(dm(v, w) for v in vs))
                nxt.append((vs + (w,), d))
        cells.extend((d, dim, vs) for vs, d in nxt)
        layer = nxt
        if not layer:
            break
    cells.sort()
    return Filtration(tuple(Simplex(vs) for _, _, vs in cells), tuple(d for d, _, _ in cells))
