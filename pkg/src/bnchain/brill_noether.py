"""Brill-Noether loci ``W^lam(Γ, w_g)`` of a chain: components, dimension, generality."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import tableaux
from .chain import Chain, TorsionProfile, as_profile
from .divisors import ChainDivisor, divisor_from_xi
from .partitions import Partition, hook_product
from .tableaux import DisplacementTableau


@dataclass(frozen=True)
class TorusDescriptor:
    """Cycles whose coordinate is pinned to ``<z>_i`` (``z`` mod ``m_i``), the rest free."""

    g: int
    fixed: tuple[tuple[int, int, int], ...]  # (cycle, z, mod), z normalized when mod > 0

    @property
    def fixed_cycles(self) -> set[int]:
        return {i for i, _, _ in self.fixed}

    @property
    def free(self) -> tuple[int, ...]:
        pinned = self.fixed_cycles
        return tuple(i for i in range(1, self.g + 1) if i not in pinned)

    @property
    def dim(self) -> int:
        return self.g - len(self.fixed)

    def constraint(self, i: int) -> tuple[int, int] | None:
        for j, z, mod in self.fixed:
            if j == i:
                return z, mod
        return None

    def contains(self, other: "TorusDescriptor") -> bool:
        """True when every class of ``other`` lies in this torus."""
        return all(other.constraint(i) == (z, mod) for i, z, mod in self.fixed)

    def sample(self, free_values: dict[int, object] | None = None) -> ChainDivisor:
        """A degree-0 class in the torus; free cycles take ``free_values`` (default 1/2)."""
        free_values = free_values or {}
        xi = []
        for i in range(1, self.g + 1):
            c = self.constraint(i)
            xi.append(c[0] if c is not None else free_values.get(i, Fraction(1, 2)))
        return divisor_from_xi(xi, 0)

    def to_json(self) -> dict:
        return {
            "fixed": {str(i): {"z": z, "mod": mod} for i, z, mod in self.fixed},
            "free": list(self.free),
        }


def torus_of(t: DisplacementTableau, profile: TorsionProfile) -> TorusDescriptor:
    fixed: dict[int, tuple[int, int]] = {}
    for (x, y), v in t.items():
        mod = profile.order(v)
        z = (x - y) % mod if mod else x - y
        fixed.setdefault(v, (z, mod))
    return TorusDescriptor(profile.g, tuple(sorted((i, z, mod) for i, (z, mod) in fixed.items())))


@dataclass(frozen=True)
class Component:
    tableau: DisplacementTableau
    torus: TorusDescriptor

    @property
    def dim(self) -> int:
        return self.torus.dim

    @property
    def stable(self) -> bool:
        """No repeated symbol: the torus persists for every torsion profile."""
        return not self.tableau.has_repeat()

    def to_json(self) -> dict:
        return {
            "tableau": self.tableau.to_json(),
            "torus": self.torus.to_json(),
            "dim": self.dim,
            "stable": self.stable,
        }


def components(lam: Partition, chain: Chain | TorsionProfile, maximal: bool = False) -> list[Component]:
    """One torus per displacement tableau on ``lam``; their union is the locus.

    With ``maximal=True`` tori contained in another listed torus are dropped
    (the first of two equal tori is kept).
    """
    profile = as_profile(chain)
    comps = [Component(t, torus_of(t, profile)) for t in tableaux.enumerate(lam, profile, profile.g)]
    if not maximal:
        return comps
    kept = []
    for k, c in enumerate(comps):
        dominated = any(
            other.torus.contains(c.torus) and (not c.torus.contains(other.torus) or j < k)
            for j, other in enumerate(comps)
            if j != k
        )
        if not dominated:
            kept.append(c)
    return kept


def dimension(lam: Partition, chain: Chain | TorsionProfile) -> int | None:
    """Dimension of the locus, or None when it is empty."""
    profile = as_profile(chain)
    k = tableaux.min_distinct_symbols(lam, profile, profile.g)
    return None if k is None else profile.g - k


@dataclass(frozen=True)
class GeneralityVerdict:
    general: bool
    marked: bool
    index: int | None = None
    order: int | None = None
    witness: DisplacementTableau | None = None

    def __bool__(self) -> bool:
        return self.general

    def describe(self) -> str:
        kind = "marked" if self.marked else "unmarked"
        if self.general:
            return f"general ({kind})"
        i, m, g = self.index, self.order, self.witness.g if self.witness else None
        if i is None:
            return f"not general ({kind})"
        bound = f"{i}" if self.marked else f"min({i},{g + 1 - i})"
        return f"not general ({kind}): m_{i}={m} ≤ {bound}"

    def to_json(self) -> dict:
        return {
            "general": self.general,
            "marked": self.marked,
            "index": self.index,
            "order": self.order,
            "witness": self.witness.to_json() if self.witness else None,
        }


def _profile(profile, g: int | None) -> TorsionProfile:
    if isinstance(profile, TorsionProfile):
        return profile
    if not isinstance(profile, (list, tuple)):
        return as_profile(profile)
    return TorsionProfile.from_list(profile, g)


def _repeat_witness(i: int, m_i: int, g: int, height: int) -> DisplacementTableau:
    bottom = [x - m_i + i for x in range(1, m_i + 1)]
    top = [x + i - 1 for x in range(1, m_i + 1)][: m_i if height == 2 else 1]
    return DisplacementTableau.from_rows([bottom, top], g)


def is_general_unmarked(profile, g: int | None = None) -> GeneralityVerdict:
    """Chain general iff each ``m_i`` (``2 <= i <= g-1``) is 0 or exceeds ``min(i, g+1-i)``."""
    p = _profile(profile, g)
    for i in range(2, p.g):
        m_i = p.order(i)
        if m_i != 0 and m_i <= min(i, p.g + 1 - i):
            return GeneralityVerdict(False, False, i, m_i, _repeat_witness(i, m_i, p.g, 2))
    return GeneralityVerdict(True, False)


def is_general_marked(profile, g: int | None = None) -> GeneralityVerdict:
    """Marked chain general iff each ``m_i`` (``2 <= i <= g``) is 0 or exceeds ``i``."""
    p = _profile(profile, g)
    for i in range(2, p.g + 1):
        m_i = p.order(i)
        if m_i != 0 and m_i <= i:
            return GeneralityVerdict(False, True, i, m_i, _repeat_witness(i, m_i, p.g, 1))
    return GeneralityVerdict(True, True)


def is_general_bruteforce(profile, g: int | None = None, marked: bool = False,
                          size_bound: int | None = None) -> GeneralityVerdict:
    """Search shapes of size ``<= size_bound`` (default ``2g``) for a tableau with a repeated symbol."""
    p = _profile(profile, g)
    bound = 2 * p.g if size_bound is None else size_bound
    witness = tableaux.find_repeated(p, p.g, bound, rectangular=not marked)
    return GeneralityVerdict(witness is None, marked, witness=witness)


@dataclass(frozen=True)
class ExpectedClass:
    theta_power: int
    coefficient: Fraction
    expected_dim: int
    syt_count: int

    def to_json(self) -> dict:
        return {
            "theta_power": self.theta_power,
            "coefficient": str(self.coefficient),
            "expected_dim": self.expected_dim,
            "syt_count": self.syt_count,
        }


def expected_class(lam: Partition, g: int) -> ExpectedClass:
    """``Θ^{|lam|} / prod hook(x, y)`` together with the expected dimension."""
    coeff = Fraction(1, hook_product(lam))
    syt = coeff * factorial(lam.size)
    assert syt.denominator == 1
    return ExpectedClass(lam.size, coeff, g - lam.size, int(syt))
