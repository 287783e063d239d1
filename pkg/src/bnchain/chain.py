"""Chains of cycles: edge lengths, torsion orders and points on the cycles.

Points on cycle ``i`` are addressed by a rational coordinate ``xi``: the
point ``<xi>_i`` sits ``xi * cw_i`` clockwise from ``w_i``, where ``cw_i``
is the length of the clockwise edge ``v_i -> w_i``. In particular
``w_i = <0>_i`` and ``v_i = <-1>_i``.

Two kinds of chain are supported. A :class:`MetricChain` carries exact
rational lengths. An :class:`AbstractChain` carries only a torsion
profile; a cycle with ``m_i > 0`` is realized with ``cw = 1`` and total
length ``m_i``, and a cycle with ``m_i = 0`` behaves as if the ratio were
irrational, so two coordinates name the same point only when equal.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .partitions import ResidueSet


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(value)


def _check_order(m: int, where: str) -> int:
    m = int(m)
    if m < 0 or m == 1:
        raise ValueError(f"{where}: torsion order must be 0 or >= 2, got {m}")
    return m


@dataclass(frozen=True)
class TorsionProfile:
    """Torsion orders ``(m_2, ..., m_g)`` plus the first order ``m1``."""

    g: int
    m: tuple[int, ...]
    m1: int = 0

    def __post_init__(self):
        if self.g < 1:
            raise ValueError("genus must be at least 1")
        m = tuple(_check_order(x, f"m_{i}") for i, x in enumerate(self.m, 2))
        if len(m) != self.g - 1:
            raise ValueError(f"profile for genus {self.g} needs {self.g - 1} entries, got {len(m)}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "m1", _check_order(self.m1, "m_1"))

    @classmethod
    def generic(cls, g: int) -> "TorsionProfile":
        return cls(g, (0,) * (g - 1))

    @classmethod
    def from_list(cls, m: Sequence[int], g: int | None = None, m1: int = 0) -> "TorsionProfile":
        g = len(m) + 1 if g is None else g
        return cls(g, tuple(m), m1)

    def order(self, i: int) -> int:
        if not 1 <= i <= self.g:
            raise IndexError(f"cycle index {i} outside 1..{self.g}")
        return self.m1 if i == 1 else self.m[i - 2]

    def orders(self) -> list[int]:
        """Torsion orders indexed by cycle; entry 0 is unused."""
        return [0, self.m1, *self.m]

    def to_json(self) -> dict:
        return {"genus": self.g, "profile": list(self.m), "m1": self.m1}


@dataclass(frozen=True)
class CyclePoint:
    cycle: int
    xi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "xi", as_fraction(self.xi))


@dataclass(frozen=True)
class Cycle:
    cw: Fraction
    total: Fraction

    def __post_init__(self):
        cw, total = as_fraction(self.cw), as_fraction(self.total)
        if not 0 < cw < total:
            raise ValueError(f"need 0 < cw < total, got cw={cw}, total={total}")
        object.__setattr__(self, "cw", cw)
        object.__setattr__(self, "total", total)

    @property
    def ratio(self) -> Fraction:
        return self.cw / self.total

    @property
    def torsion(self) -> int:
        return self.ratio.denominator

    @property
    def period(self) -> Fraction:
        """Period of the xi coordinate."""
        return self.total / self.cw

    def arc(self, xi: Fraction) -> Fraction:
        """Clockwise arc length from ``w`` to ``<xi>``, reduced into ``[0, total)``."""
        return (as_fraction(xi) * self.cw) % self.total


class _ChainBase:
    genus: int

    def _cycle_index(self, i: int) -> int:
        if not 1 <= i <= self.genus:
            raise IndexError(f"cycle index {i} outside 1..{self.genus}")
        return i

    # (a, m): xi-coordinates have period m / a; (1, 0) means no identification
    def _lattice(self, i: int) -> tuple[int, int]:
        raise NotImplementedError

    def torsion_profile(self) -> TorsionProfile:
        raise NotImplementedError

    def canon(self, i: int, xi) -> Fraction:
        a, m = self._lattice(self._cycle_index(i))
        xi = as_fraction(xi)
        return xi if m == 0 else xi % Fraction(m, a)

    def point(self, i: int, xi) -> CyclePoint:
        return CyclePoint(i, self.canon(i, xi))

    def same_point(self, i: int, xi1, xi2) -> bool:
        return self.canon(i, xi1) == self.canon(i, xi2)

    def residues(self, i: int, xi) -> ResidueSet:
        """Integers ``z`` with ``<z>_i = <xi>_i``."""
        a, m = self._lattice(self._cycle_index(i))
        xi = as_fraction(xi)
        if m == 0:
            return ResidueSet.singleton(int(xi)) if xi.denominator == 1 else ResidueSet.empty()
        # (xi - z) * a / m must be an integer
        axi = a * xi
        if axi.denominator != 1:
            return ResidueSet.empty()
        return ResidueSet.residue(int(axi) * pow(a, -1, m), m)

    def marked_point(self) -> CyclePoint:
        return CyclePoint(self.genus, Fraction(0))


@dataclass(frozen=True)
class MetricChain(_ChainBase):
    cycles: tuple[Cycle, ...]
    bridges: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        cycles = tuple(c if isinstance(c, Cycle) else Cycle(*c) for c in self.cycles)
        if not cycles:
            raise ValueError("a chain needs at least one cycle")
        object.__setattr__(self, "cycles", cycles)
        if self.bridges is not None:
            bridges = tuple(as_fraction(b) for b in self.bridges)
            if len(bridges) != len(cycles) - 1:
                raise ValueError(f"expected {len(cycles) - 1} bridge lengths, got {len(bridges)}")
            if any(b < 0 for b in bridges):
                raise ValueError("bridge lengths must be nonnegative")
            object.__setattr__(self, "bridges", bridges)

    @property
    def genus(self) -> int:
        return len(self.cycles)

    def cycle(self, i: int) -> Cycle:
        return self.cycles[self._cycle_index(i) - 1]

    def bridge_length(self, i: int) -> Fraction:
        """Length of the bridge from ``w_i`` to ``v_{i+1}`` (0 when unspecified)."""
        return Fraction(0) if self.bridges is None else self.bridges[i - 1]

    def _lattice(self, i: int) -> tuple[int, int]:
        q = self.cycles[i - 1].ratio
        return q.numerator, q.denominator

    def torsion_profile(self) -> TorsionProfile:
        ms = [c.torsion for c in self.cycles]
        return TorsionProfile(self.genus, tuple(ms[1:]), ms[0])

    def to_json(self) -> dict:
        obj: dict = {"cycles": [{"cw": str(c.cw), "total": str(c.total)} for c in self.cycles]}
        if self.bridges is not None:
            obj["bridges"] = [str(b) for b in self.bridges]
        return obj


@dataclass(frozen=True)
class AbstractChain(_ChainBase):
    profile: TorsionProfile = field(default_factory=lambda: TorsionProfile(1, ()))

    @classmethod
    def of(cls, m: Sequence[int], g: int | None = None, m1: int = 0) -> "AbstractChain":
        return cls(TorsionProfile.from_list(m, g, m1))

    @property
    def genus(self) -> int:
        return self.profile.g

    def _lattice(self, i: int) -> tuple[int, int]:
        return 1, self.profile.order(i)

    def torsion_profile(self) -> TorsionProfile:
        return self.profile

    def to_json(self) -> dict:
        return self.profile.to_json()


Chain = Union[MetricChain, AbstractChain]


def chain_from_json(obj: dict) -> Chain:
    if "cycles" in obj:
        cycles = tuple(Cycle(as_fraction(c["cw"]), as_fraction(c["total"])) for c in obj["cycles"])
        bridges = obj.get("bridges")
        return MetricChain(cycles, None if bridges is None else tuple(as_fraction(b) for b in bridges))
    if "profile" not in obj and "genus" not in obj:
        raise ValueError("chain JSON needs either 'cycles' or 'genus'/'profile'")
    profile = list(obj.get("profile", []))
    g = int(obj.get("genus", len(profile) + 1))
    return AbstractChain(TorsionProfile(g, tuple(profile), int(obj.get("m1", 0))))


def as_profile(source: Chain | TorsionProfile) -> TorsionProfile:
    if isinstance(source, TorsionProfile):
        return source
    return source.torsion_profile()


def torsion_profile(chain: Chain) -> TorsionProfile:
    return chain.torsion_profile()


def genus(chain: Chain | TorsionProfile) -> int:
    return chain.g if isinstance(chain, TorsionProfile) else chain.genus


def canonical_marked_point(chain: Chain) -> CyclePoint:
    return chain.marked_point()


def point_eq(p: CyclePoint, q: CyclePoint, chain: Chain) -> bool:
    if p.cycle != q.cycle:
        raise ValueError(f"points lie on different cycles ({p.cycle} vs {q.cycle})")
    return chain.same_point(p.cycle, p.xi, q.xi)


def integer_residues(p: CyclePoint, chain: Chain) -> ResidueSet:
    return chain.residues(p.cycle, p.xi)
