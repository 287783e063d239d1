"""Partitions as Young diagrams in French notation.

A partition ``(7, 6, 5, 1)`` is the set of boxes ``(x, y)`` with
``1 <= y <= 4`` and ``1 <= x <= rows[y-1]``; ``x`` is the column and ``y``
the row, counted from the bottom.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Iterator, Sequence

Box = tuple[int, int]


@dataclass(frozen=True)
class Partition:
    rows: tuple[int, ...] = ()

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        if any(r < 1 for r in rows):
            raise ValueError(f"row lengths must be positive: {rows}")
        if any(a < b for a, b in zip(rows, rows[1:])):
            raise ValueError(f"row lengths must be weakly decreasing: {rows}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def of(cls, *rows: int) -> "Partition":
        return cls(tuple(rows))

    @classmethod
    def from_boxes(cls, boxes: Iterable[Box]) -> "Partition":
        lengths: dict[int, int] = {}
        count = 0
        for x, y in boxes:
            lengths[y] = max(lengths.get(y, 0), x)
            count += 1
        rows = tuple(lengths.get(y, 0) for y in range(1, len(lengths) + 1))
        lam = cls(rows)
        if lam.size != count:
            raise ValueError("box set is not a Young diagram")
        return lam

    @property
    def size(self) -> int:
        return sum(self.rows)

    @property
    def height(self) -> int:
        return len(self.rows)

    @property
    def width(self) -> int:
        return self.rows[0] if self.rows else 0

    def __len__(self) -> int:
        return self.size

    def __contains__(self, box) -> bool:
        x, y = box
        return 1 <= y <= len(self.rows) and 1 <= x <= self.rows[y - 1]

    def __iter__(self) -> Iterator[Box]:
        return iter(self.boxes())

    def boxes(self) -> list[Box]:
        """Boxes in reading order: bottom row first, left to right."""
        return [(x, y) for y, r in enumerate(self.rows, 1) for x in range(1, r + 1)]

    def column_length(self, x: int) -> int:
        return sum(1 for r in self.rows if r >= x)

    def issubset(self, other: "Partition") -> bool:
        if len(self.rows) > len(other.rows):
            return False
        return all(a <= b for a, b in zip(self.rows, other.rows))

    __le__ = issubset

    def is_rectangle(self) -> bool:
        return len(set(self.rows)) <= 1

    def addable_corners(self) -> list[Box]:
        """Boxes outside the diagram whose left and lower neighbours lie in the closure."""
        rows = self.rows
        out = []
        for y in range(1, len(rows) + 2):
            x = rows[y - 1] + 1 if y <= len(rows) else 1
            if y == 1 or rows[y - 2] >= x:
                out.append((x, y))
        return out

    def add_boxes(self, boxes: Iterable[Box]) -> "Partition":
        rows = list(self.rows)
        for x, y in sorted(boxes, key=lambda b: b[1]):
            if y == len(rows) + 1:
                rows.append(0)
            if rows[y - 1] + 1 != x:
                raise ValueError(f"box {(x, y)} is not addable")
            rows[y - 1] = x
        return Partition(tuple(rows))

    def to_json(self) -> list[int]:
        return list(self.rows)

    @classmethod
    def from_json(cls, obj: Sequence[int]) -> "Partition":
        return cls(tuple(obj))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.rows)) + ")" if self.rows else "()"


EMPTY = Partition()


@dataclass(frozen=True)
class ResidueSet:
    """A set of integers that is empty, a single integer, or a class ``z + mZ``."""

    kind: str
    z: int = 0
    m: int = 0

    def __post_init__(self):
        if self.kind == "residue":
            if self.m < 1:
                raise ValueError("residue class needs a positive modulus")
            object.__setattr__(self, "z", self.z % self.m)
        elif self.kind not in ("empty", "singleton"):
            raise ValueError(f"unknown residue-set kind {self.kind!r}")

    @classmethod
    def empty(cls) -> "ResidueSet":
        return cls("empty")

    @classmethod
    def singleton(cls, z: int) -> "ResidueSet":
        return cls("singleton", int(z))

    @classmethod
    def residue(cls, z: int, m: int) -> "ResidueSet":
        return cls("residue", int(z), int(m))

    @classmethod
    def point(cls, z: int, m: int) -> "ResidueSet":
        """``z + mZ`` with the convention that ``m == 0`` means ``{z}``."""
        return cls.singleton(z) if m == 0 else cls.residue(z, m)

    def __contains__(self, n: int) -> bool:
        if self.kind == "empty":
            return False
        if self.kind == "singleton":
            return n == self.z
        return (n - self.z) % self.m == 0

    def __bool__(self) -> bool:
        return self.kind != "empty"


def contains(lam: Partition, b: Box) -> bool:
    return b in lam


def closure_contains(lam: Partition, x: int, y: int) -> bool:
    return x <= 0 or y <= 0 or (x, y) in lam


def loose_boxes(lam: Partition, S: ResidueSet) -> frozenset[Box]:
    # a loose box has both lower neighbours in the closure, so it is an addable corner
    return frozenset(b for b in lam.addable_corners() if b[0] - b[1] in S)


def disp_plus(lam: Partition, S: ResidueSet) -> Partition:
    loose = loose_boxes(lam, S)
    return lam.add_boxes(loose) if loose else lam


def hook_length(lam: Partition, b: Box) -> int:
    if b not in lam:
        raise ValueError(f"box {b} is not in {lam}")
    x, y = b
    arm = lam.rows[y - 1] - x
    leg = lam.column_length(x) - y
    return arm + leg + 1


def hook_product(lam: Partition) -> int:
    return prod(hook_length(lam, b) for b in lam.boxes())


def count_syt(lam: Partition) -> int:
    n_fact = factorial(lam.size)
    hp = hook_product(lam)
    q, r = divmod(n_fact, hp)
    assert r == 0, "hook product must divide |lambda|!"
    return q


def dual(lam: Partition) -> Partition:
    return Partition(tuple(lam.column_length(x) for x in range(1, lam.width + 1)))


def _check_grda(g: int, r: int, d: int, alpha: Sequence[int]) -> None:
    if r < 0:
        raise ValueError("r must be nonnegative")
    if len(alpha) != r + 1:
        raise ValueError(f"alpha must have r+1 = {r + 1} entries, got {len(alpha)}")
    if any(a < 0 for a in alpha):
        raise ValueError("alpha entries must be nonnegative")
    if any(a > b for a, b in zip(alpha, alpha[1:])):
        raise ValueError("alpha must be nondecreasing")
    if g < 0 or g - d + r < 0:
        raise ValueError("need g >= 0 and g - d + r >= 0")


def partition_from_grda(g: int, r: int, d: int, alpha: Sequence[int]) -> Partition:
    """Partition attached to rank ``r``, degree ``d`` and ramification ``alpha`` at the marked point."""
    _check_grda(g, r, d, alpha)
    width = g - d + r
    rows = [width + alpha[r - i] for i in range(r + 1)]
    return Partition(tuple(x for x in rows if x > 0))


def rho(g: int, r: int, d: int, alpha: Sequence[int]) -> int:
    _check_grda(g, r, d, alpha)
    return g - (r + 1) * (g - d + r) - sum(alpha)


@lru_cache(maxsize=None)
def partitions_of(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of ``n`` (parts at most ``max_part``), reverse-lexicographic."""
    if max_part is None:
        max_part = n
    if n == 0:
        return (EMPTY,)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            out.append(Partition((first,) + rest.rows))
    return tuple(out)


def partitions_up_to(n: int) -> list[Partition]:
    return [lam for k in range(n + 1) for lam in partitions_of(k)]


def subpartitions(lam: Partition) -> list[Partition]:
    """Every partition contained in ``lam``."""
    out: list[Partition] = []

    def rec(prefix: list[int], y: int):
        out.append(Partition(tuple(prefix)))
        if y > lam.height:
            return
        cap = min(lam.rows[y - 1], prefix[-1] if prefix else lam.rows[y - 1])
        for r in range(1, cap + 1):
            prefix.append(r)
            rec(prefix, y + 1)
            prefix.pop()

    rec([], 1)
    return out


def parse_shape(text: str) -> Partition:
    text = text.strip()
    if text in ("", "()", "[]", "0"):
        return EMPTY
    return Partition(tuple(int(t) for t in text.strip("()[]").split(",") if t.strip()))
