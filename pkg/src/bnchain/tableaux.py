"""Displacement tableaux.

A tableau labels the boxes of a partition with symbols ``1..g``, strictly
increasing along rows and columns, where a symbol ``i`` may repeat only on
diagonals ``x - y`` that agree modulo the torsion order ``m_i`` (and never
when ``m_i = 0``).

Equivalently, the boxes carrying labels ``<= i`` form a partition
``lam_i``, and ``lam_i`` is ``lam_{i-1}`` plus some of its addable corners.
The search routines below walk that layered picture; :func:`enumerate`
fills boxes one at a time so that its output order is lexicographic.
"""
from __future__ import annotations

import builtins
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Mapping, Sequence

from .chain import TorsionProfile
from .partitions import Box, Partition, ResidueSet, disp_plus

_enumerate = builtins.enumerate


@dataclass(frozen=True)
class DisplacementTableau:
    """Labels stored row by row, bottom row first (French notation)."""

    shape: Partition
    rows: tuple[tuple[int, ...], ...]
    g: int

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        if tuple(len(r) for r in rows) != self.shape.rows:
            raise ValueError(f"label rows {rows} do not match shape {self.shape}")
        for r in rows:
            for v in r:
                if not 1 <= v <= self.g:
                    raise ValueError(f"label {v} outside alphabet 1..{self.g}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], g: int) -> "DisplacementTableau":
        return cls(Partition(tuple(len(r) for r in rows)), tuple(tuple(r) for r in rows), g)

    @classmethod
    def from_labels(cls, labels: Mapping[Box, int], g: int) -> "DisplacementTableau":
        shape = Partition.from_boxes(labels)
        rows = tuple(tuple(labels[(x, y)] for x in range(1, r + 1)) for y, r in _enumerate(shape.rows, 1))
        return cls(shape, rows, g)

    def __getitem__(self, box: Box) -> int:
        x, y = box
        return self.rows[y - 1][x - 1]

    def items(self) -> list[tuple[Box, int]]:
        return [((x, y), v) for y, r in _enumerate(self.rows, 1) for x, v in _enumerate(r, 1)]

    def labels(self) -> dict[Box, int]:
        return dict(self.items())

    def symbols(self) -> set[int]:
        return {v for r in self.rows for v in r}

    def distinct(self) -> int:
        return len(self.symbols())

    def has_repeat(self) -> bool:
        return self.distinct() < self.shape.size

    def dual(self) -> "DisplacementTableau":
        return DisplacementTableau.from_labels({(y, x): v for (x, y), v in self.items()}, self.g)

    def layers(self) -> list[Partition]:
        """``lam_0 = {} ⊆ lam_1 ⊆ ... ⊆ lam_g``, where ``lam_i`` holds the labels ``<= i``."""
        out = []
        for i in range(self.g + 1):
            out.append(Partition(tuple(n for n in (sum(1 for v in r if v <= i) for r in self.rows) if n)))
        return out

    def to_json(self) -> dict:
        return {"shape": self.shape.to_json(), "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, obj: Mapping, g: int) -> "DisplacementTableau":
        t = cls.from_rows(obj["rows"], g)
        if "shape" in obj and list(obj["shape"]) != list(t.shape.rows):
            raise ValueError("tableau 'shape' disagrees with its rows")
        return t

    def __str__(self) -> str:
        return "/".join(",".join(map(str, r)) for r in self.rows)


def _orders(m: TorsionProfile | Sequence[int], g: int) -> list[int]:
    """Torsion orders indexed by label (entry 0 and 1 are never consulted)."""
    if isinstance(m, TorsionProfile):
        if m.g != g:
            raise ValueError(f"profile genus {m.g} does not match alphabet size {g}")
        return m.orders()
    m = list(m)
    if len(m) != g - 1:
        raise ValueError(f"profile for alphabet size {g} needs {g - 1} entries, got {len(m)}")
    return [0, 0, *m]


def _compatible(m_i: int, d1: int, d2: int) -> bool:
    return m_i > 0 and (d1 - d2) % m_i == 0


def validate(t: DisplacementTableau, m: TorsionProfile | Sequence[int]) -> bool:
    orders = _orders(m, t.g)
    for (x, y), v in t.items():
        if x > 1 and t[(x - 1, y)] >= v:
            return False
        if y > 1 and t[(x, y - 1)] >= v:
            return False
    first_diag: dict[int, int] = {}
    for (x, y), v in t.items():
        if v in first_diag:
            if not _compatible(orders[v], x - y, first_diag[v]):
                return False
        else:
            first_diag[v] = x - y
    return True


def _reach(lam: Partition) -> dict[Box, int]:
    """Longest up/right lattice path starting at each box, counted in steps."""
    reach: dict[Box, int] = {}
    for y in range(lam.height, 0, -1):
        for x in range(lam.rows[y - 1], 0, -1):
            best = 0
            if (x + 1, y) in lam:
                best = reach[(x + 1, y)] + 1
            if (x, y + 1) in lam:
                best = max(best, reach[(x, y + 1)] + 1)
            reach[(x, y)] = best
    return reach


def enumerate(lam: Partition, m: TorsionProfile | Sequence[int], g: int) -> Iterator[DisplacementTableau]:
    """Every ``m``-displacement tableau on ``lam`` with alphabet ``1..g``, in lexicographic order."""
    if g < 1:
        raise ValueError("alphabet size must be at least 1")
    orders = _orders(m, g)
    boxes = lam.boxes()
    reach = _reach(lam)
    labels: dict[Box, int] = {}
    used_diag: dict[int, int] = {}
    used_count = [0] * (g + 1)

    def rec(k: int) -> Iterator[DisplacementTableau]:
        if k == len(boxes):
            yield DisplacementTableau.from_labels(labels, g)
            return
        x, y = boxes[k]
        lo = 1
        if x > 1:
            lo = labels[(x - 1, y)] + 1
        if y > 1:
            lo = max(lo, labels[(x, y - 1)] + 1)
        hi = g - reach[(x, y)]
        diag = x - y
        for v in range(lo, hi + 1):
            if used_count[v] and not _compatible(orders[v], diag, used_diag[v]):
                continue
            labels[(x, y)] = v
            if not used_count[v]:
                used_diag[v] = diag
            used_count[v] += 1
            yield from rec(k + 1)
            used_count[v] -= 1
            del labels[(x, y)]

    yield from rec(0)


def count(lam: Partition, m: TorsionProfile | Sequence[int], g: int) -> int:
    return sum(1 for _ in enumerate(lam, m, g))


def _corner_steps(mu: Partition, m_i: int, allowed=None) -> list[tuple[Box, ...]]:
    """Nonempty sets of addable corners of ``mu`` that one label may occupy together."""
    corners = [b for b in mu.addable_corners() if allowed is None or allowed(b)]
    steps: list[tuple[Box, ...]] = [(b,) for b in corners]
    if m_i <= 0:
        return steps
    # group corners by diagonal residue; any subset of a group is a legal step
    groups: dict[int, list[Box]] = {}
    for b in corners:
        groups.setdefault((b[0] - b[1]) % m_i, []).append(b)
    for grp in groups.values():
        for size in range(2, len(grp) + 1):
            steps.extend(combinations(grp, size))
    return steps


def min_distinct_symbols(lam: Partition, m: TorsionProfile | Sequence[int], g: int) -> int | None:
    """Fewest distinct labels over all ``m``-displacement tableaux on ``lam``; None if there are none."""
    if g < 1:
        raise ValueError("alphabet size must be at least 1")
    orders = _orders(m, g)
    best: dict[Partition, int] = {Partition(): 0}
    for i in range(1, g + 1):
        m_i = orders[i] if i >= 2 else 0
        nxt = dict(best)
        for mu, cost in best.items():
            for step in _corner_steps(mu, m_i, lam.__contains__):
                nu = mu.add_boxes(step)
                if nxt.get(nu, cost + 2) > cost + 1:
                    nxt[nu] = cost + 1
        best = nxt
    return best.get(lam)


def find_repeated(
    m: TorsionProfile | Sequence[int],
    g: int,
    size_bound: int,
    rectangular: bool = False,
) -> DisplacementTableau | None:
    """Search for a tableau with a repeated symbol on a shape of size ``<= size_bound``.

    With ``rectangular=True`` only rectangular shapes count. Returns a
    witness tableau, or None when no such tableau exists.
    """
    orders = _orders(m, g)
    # state: (partition, repeated?) -> labelled boxes reaching it
    frontier: dict[tuple[Partition, bool], dict[Box, int]] = {(Partition(), False): {}}
    for i in range(1, g + 1):
        m_i = orders[i] if i >= 2 else 0
        nxt = dict(frontier)
        for (mu, rep), labels in frontier.items():
            for step in _corner_steps(mu, m_i):
                if mu.size + len(step) > size_bound:
                    continue
                key = (mu.add_boxes(step), rep or len(step) > 1)
                if key not in nxt:
                    new = dict(labels)
                    new.update((b, i) for b in step)
                    nxt[key] = new
        frontier = nxt
    for (mu, rep), labels in sorted(frontier.items(), key=lambda kv: (kv[0][0].size, kv[0][0].rows)):
        if rep and (not rectangular or mu.is_rectangle()):
            return DisplacementTableau.from_labels(labels, g)
    return None


def assemble(t: DisplacementTableau, S: Sequence[ResidueSet]) -> list[Partition]:
    """Run ``lam'_{i+1} = disp+(lam'_i, S_{i+1})`` from the empty partition.

    ``S[i-1]`` is the set for label ``i``. Every box must satisfy
    ``x - y in S_{t(x, y)}``; the final partition then contains the shape.
    """
    if len(S) != t.g:
        raise ValueError(f"need {t.g} residue sets, got {len(S)}")
    for (x, y), v in t.items():
        if x - y not in S[v - 1]:
            raise ValueError(f"box {(x, y)} with label {v}: diagonal {x - y} not in S_{v}")
    seq = [Partition()]
    for s in S:
        seq.append(disp_plus(seq[-1], s))
    return seq

