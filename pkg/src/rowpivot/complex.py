"""Simplices and simplexwise filtrations."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional, Sequence


class InvalidFiltrationError(ValueError):
    """Raised when a filtration violates the face-before-coface order."""

    def __init__(self, violation: "Violation"):
        super().__init__(str(violation))
        self.violation = violation


@dataclass(frozen=True, order=True)
class Simplex:
    vertices: tuple[int, ...]

    def __post_init__(self):
        vs = tuple(int(v) for v in self.vertices)
        if not vs:
            raise ValueError("a simplex needs at least one vertex")
        if any(v < 0 for v in vs):
            raise ValueError(f"negative vertex id in {vs}")
        if any(a >= b for a, b in zip(vs, vs[1:])):
            raise ValueError(f"vertices must be strictly increasing, got {vs}")
        object.__setattr__(self, "vertices", vs)

    @classmethod
    def of(cls, *vertices: int) -> "Simplex":
        """Build a simplex from vertices in any order; duplicates are rejected."""
        vs = sorted(vertices)
        if len(set(vs)) != len(vs):
            raise ValueError(f"duplicate vertex in {tuple(vertices)}")
        return cls(tuple(vs))

    @property
    def dimension(self) -> int:
        return len(self.vertices) - 1

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __str__(self) -> str:
        return " ".join(map(str, self.vertices))


def boundary_faces(s: Simplex) -> list[Simplex]:
    """Codimension-one faces of ``s``, in lexicographic order."""
    if s.dimension == 0:
        return []
    return [Simplex(vs) for vs in combinations(s.vertices, len(s) - 1)]


@dataclass(frozen=True)
class Violation:
    position: int  # 1-based
    reason: str  # "missing-faces" | "duplicate" | "decreasing-value"
    missing: tuple[Simplex, ...] = ()

    def __str__(self) -> str:
        if self.reason == "missing-faces":
            faces = ", ".join("{" + str(f) + "}" for f in self.missing)
            return f"position {self.position}: missing faces {faces}"
        if self.reason == "duplicate":
            return f"position {self.position}: duplicate simplex"
        return f"position {self.position}: filtration value decreases"


@dataclass(frozen=True)
class Filtration:
    """Ordered simplices, optionally graded by real values.

    Positions are 1-based in every public method.  Construction does not
    validate; call :func:`validate_filtration` or :meth:`checked`.
    """

    simplices: tuple[Simplex, ...] = ()
    values: Optional[tuple[float, ...]] = None
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        simplices = tuple(s if isinstance(s, Simplex) else Simplex.of(*s) for s in self.simplices)
        object.__setattr__(self, "simplices", simplices)
        if self.values is not None:
            values = tuple(float(v) for v in self.values)
            if len(values) != len(simplices):
                raise ValueError("values and simplices differ in length")
            object.__setattr__(self, "values", values)
        index: dict[Simplex, int] = {}
        for pos, s in enumerate(simplices, start=1):
            index.setdefault(s, pos)
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_vertex_lists(
        cls, lists: Iterable[Sequence[int]], values: Optional[Sequence[float]] = None
    ) -> "Filtration":
        return cls(tuple(Simplex.of(*vs) for vs in lists), None if values is None else tuple(values))

    def checked(self) -> "Filtration":
        violation = validate_filtration(self)
        if violation is not None:
            raise InvalidFiltrationError(violation)
        return self

    def __len__(self) -> int:
        return len(self.simplices)

    def __getitem__(self, position: int) -> Simplex:
        if not 1 <= position <= len(self.simplices):
            raise IndexError(f"position {position} out of range 1..{len(self.simplices)}")
        return self.simplices[position - 1]

    def position(self, s: Simplex) -> int:
        return self._index[s]

    def value(self, position: int) -> Optional[float]:
        return None if self.values is None else self.values[position - 1]

    def dimension_of(self, position: int) -> int:
        return self[position].dimension

    @property
    def dimension(self) -> int:
        """Maximal simplex dimension, -1 for the empty filtration."""
        return max((s.dimension for s in self.simplices), default=-1)

    @property
    def vertices(self) -> set[int]:
        return {v for s in self.simplices for v in s.vertices}


def validate_filtration(f: Filtration) -> Optional[Violation]:
    """Return ``None`` if ``f`` is a valid filtration, else the first violation."""
    seen: set[Simplex] = set()
    for pos, s in enumerate(f.simplices, start=1):
        if s in seen:
            return Violation(pos, "duplicate")
        missing = tuple(face for face in boundary_faces(s) if face not in seen)
        if missing:
            return Violation(pos, "missing-faces", missing)
        if f.values is not None and pos > 1 and f.values[pos - 1] < f.values[pos - 2]:
            return Violation(pos, "decreasing-value")
        seen.add(s)
    return None


def dimension_blocks(f: Filtration) -> dict[int, list[int]]:
    """Map each dimension to the increasing positions of its simplices."""
    blocks: dict[int, list[int]] = {}
    for pos, s in enumerate(f.simplices, start=1):
        blocks.setdefault(s.dimension, []).append(pos)
    return dict(sorted(blocks.items()))


def full_simplex(v: int) -> Filtration:
    """All faces of the simplex on vertices ``0..v-1``, ordered by dimension then lexicographically."""
    simplices = [Simplex(c) for k in range(1, v + 1) for c in combinations(range(v), k)]
    return Filtration(tuple(simplices))
