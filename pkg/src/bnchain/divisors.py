"""Divisor classes on a chain of cycles.

Every degree ``d`` class has a unique representative
``sum_i <xi_i>_i + (d - g) w_g`` (its standard form). The coordinates are

    xi_i(D) = (i - 1) + sum over chips of  -1   (chip left of v_i)
                                            0   (chip right of w_i)
                                            z   (chip at <z>_i)

and the Weierstrass partition at ``w_g`` comes from displacing the empty
partition once per cycle by the integers ``z`` with ``<z>_i = <xi_i>_i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .chain import Chain, CyclePoint, MetricChain, as_fraction
from .partitions import Partition, closure_contains, disp_plus
from .tableaux import DisplacementTableau


@dataclass(frozen=True)
class BridgePoint:
    """Any point on the bridge from ``w_b`` to ``v_{b+1}``; all of them are equivalent."""

    bridge: int


Location = Union[CyclePoint, BridgePoint]


@dataclass(frozen=True)
class ChainDivisor:
    terms: tuple[tuple[Location, int], ...] = ()
    wg: int = 0

    def __post_init__(self):
        terms = tuple((loc, int(k)) for loc, k in self.terms if int(k) != 0)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "wg", int(self.wg))

    @classmethod
    def at(cls, *points: tuple[int, object], wg: int = 0) -> "ChainDivisor":
        """Shorthand: ``ChainDivisor.at((1, 0), (2, '1/2'), wg=-2)``, one chip per point."""
        return cls(tuple((CyclePoint(i, as_fraction(xi)), 1) for i, xi in points), wg)

    @property
    def degree(self) -> int:
        return sum(k for _, k in self.terms) + self.wg

    def __add__(self, other: "ChainDivisor") -> "ChainDivisor":
        return ChainDivisor(self.terms + other.terms, self.wg + other.wg)

    def __neg__(self) -> "ChainDivisor":
        return ChainDivisor(tuple((loc, -k) for loc, k in self.terms), -self.wg)

    def __sub__(self, other: "ChainDivisor") -> "ChainDivisor":
        return self + (-other)

    def twist(self, n: int) -> "ChainDivisor":
        """Add ``n`` copies of the marked point."""
        return ChainDivisor(self.terms, self.wg + n)

    def to_json(self) -> dict:
        terms = []
        for loc, k in self.terms:
            if isinstance(loc, BridgePoint):
                terms.append({"bridge": loc.bridge, "mult": k})
            else:
                terms.append({"cycle": loc.cycle, "xi": str(loc.xi), "mult": k})
        return {"terms": terms, "wg": self.wg}

    @classmethod
    def from_json(cls, obj: Mapping) -> "ChainDivisor":
        terms = []
        for t in obj.get("terms", []):
            mult = int(t.get("mult", 1))
            if "bridge" in t:
                terms.append((BridgePoint(int(t["bridge"])), mult))
            else:
                terms.append((CyclePoint(int(t["cycle"]), as_fraction(t["xi"])), mult))
        return cls(tuple(terms), int(obj.get("wg", 0)))


@dataclass(frozen=True)
class StandardForm:
    xi: tuple[Fraction, ...]
    degree: int

    def to_divisor(self) -> ChainDivisor:
        g = len(self.xi)
        return ChainDivisor(tuple((CyclePoint(i, x), 1) for i, x in enumerate(self.xi, 1)), self.degree - g)

    def to_json(self) -> dict:
        return {"xi": [str(x) for x in self.xi], "degree": self.degree}


def _check_support(D: ChainDivisor, g: int) -> None:
    for loc, _ in D.terms:
        if isinstance(loc, BridgePoint):
            if not 1 <= loc.bridge <= g - 1:
                raise ValueError(f"bridge index {loc.bridge} outside 1..{g - 1}")
        elif not 1 <= loc.cycle <= g:
            raise ValueError(f"cycle index {loc.cycle} outside 1..{g}")


def xi_tilde(D: ChainDivisor, i: int) -> Fraction:
    total = Fraction(0)
    for loc, k in D.terms:
        if isinstance(loc, BridgePoint):
            total += -k if loc.bridge < i else 0
        elif loc.cycle < i:
            total -= k
        elif loc.cycle == i:
            total += k * loc.xi
    return total


def standard_form(D: ChainDivisor, chain: Chain) -> StandardForm:
    g = chain.genus
    _check_support(D, g)
    xi = tuple(chain.canon(i, (i - 1) + xi_tilde(D, i)) for i in range(1, g + 1))
    return StandardForm(xi, D.degree)


def canonical_divisor(chain: Chain) -> ChainDivisor:
    """``K = v_2 + ... + v_g + w_1 + ... + w_{g-1}``."""
    g = chain.genus
    terms = [(CyclePoint(i, Fraction(-1)), 1) for i in range(2, g + 1)]
    terms += [(CyclePoint(i, Fraction(0)), 1) for i in range(1, g)]
    return ChainDivisor(tuple(terms))


# --- single cycle -----------------------------------------------------------

def _cycle_lengths(chain: Chain, i: int) -> tuple[Fraction, Fraction | None]:
    """(cw, total) of cycle ``i``; total is None for an abstract cycle with m_i = 0."""
    if isinstance(chain, MetricChain):
        c = chain.cycle(i)
        return c.cw, c.total
    m = chain.torsion_profile().order(i)
    return Fraction(1), (Fraction(m) if m else None)


def cycle_invariant(points: Iterable[tuple[Fraction, int]], cw, total) -> tuple[int, Fraction]:
    """Degree and summed clockwise arc length (mod ``total``) of chips ``(xi, mult)`` on one cycle.

    ``total=None`` stands for a cycle whose length is incommensurable with
    ``cw``; the arc sum is then kept exactly.
    """
    cw = as_fraction(cw)
    deg, s = 0, Fraction(0)
    for xi, k in points:
        deg += k
        s += k * as_fraction(xi) * cw
    if total is not None:
        s %= as_fraction(total)
    return deg, s


def cycle_equivalent(a, b, cw, total) -> bool:
    return cycle_invariant(a, cw, total) == cycle_invariant(b, cw, total)


def cycle_reduce(points, cw, total) -> Fraction:
    """Arc position of the single point equivalent to a degree-1 divisor on one cycle."""
    deg, s = cycle_invariant(points, cw, total)
    if deg != 1:
        raise ValueError(f"single-point representative needs degree 1, got {deg}")
    return s


def restrict_to_cycle(D: ChainDivisor, chain: Chain, i: int) -> list[tuple[Fraction, int]]:
    """Project ``D`` onto cycle ``i``: chips to the left sit at ``v_i``, to the right at ``w_i``."""
    out = []
    for loc, k in D.terms:
        if isinstance(loc, BridgePoint):
            out.append((Fraction(-1) if loc.bridge < i else Fraction(0), k))
        elif loc.cycle == i:
            out.append((loc.xi, k))
        else:
            out.append((Fraction(-1) if loc.cycle < i else Fraction(0), k))
    out.append((Fraction(0), D.wg))
    return out


def linearly_equivalent(D1: ChainDivisor, D2: ChainDivisor, chain: Chain) -> bool:
    """Decide ``D1 ~ D2`` cycle by cycle from arc-length invariants.

    Independent of :func:`standard_form`: moving every chip onto cycle ``i``
    through the bridges, the two divisors must agree in degree and summed
    arc position on each cycle.
    """
    if D1.degree != D2.degree:
        return False
    for i in range(1, chain.genus + 1):
        cw, total = _cycle_lengths(chain, i)
        if not cycle_equivalent(restrict_to_cycle(D1, chain, i), restrict_to_cycle(D2, chain, i), cw, total):
            return False
    return True


# --- Weierstrass partitions ---------------------------------------------------

def weierstrass_sequence(D: ChainDivisor, chain: Chain) -> list[Partition]:
    """Partitions ``lam_0 = {}, ..., lam_g``; ``lam_i`` is the Weierstrass partition on the first i cycles."""
    sf = standard_form(D, chain)
    seq = [Partition()]
    for i, x in enumerate(sf.xi, 1):
        seq.append(disp_plus(seq[-1], chain.residues(i, x)))
    return seq


def weierstrass_partition(D: ChainDivisor, chain: Chain) -> Partition:
    return weierstrass_sequence(D, chain)[-1]


def rank_from_partition(lam: Partition, g: int, d: int) -> int:
    """Largest ``r`` with ``(g - d + r, r + 1)`` in the closure of ``lam``."""
    r = max(-1, d - g)
    while closure_contains(lam, g - d + r + 1, r + 2):
        r += 1
    return r


def rank(D: ChainDivisor, chain: Chain) -> int:
    return rank_from_partition(weierstrass_partition(D, chain), chain.genus, D.degree)


def in_w_lambda(D: ChainDivisor, lam: Partition, chain: Chain) -> bool:
    return lam.issubset(weierstrass_partition(D, chain))


def in_torus(D: ChainDivisor, t: DisplacementTableau, chain: Chain) -> bool:
    if t.g != chain.genus:
        raise ValueError(f"tableau alphabet {t.g} does not match genus {chain.genus}")
    xi = standard_form(D, chain).xi
    return all(chain.same_point(v, xi[v - 1], x - y) for (x, y), v in t.items())


def serre_dual(D: ChainDivisor, chain: Chain) -> ChainDivisor:
    """``K - D - (2g - 2) w_g``; a degree-0 class goes to a degree-0 class."""
    g = chain.genus
    return (canonical_divisor(chain) - D).twist(-(2 * g - 2))


def torus_witness(D: ChainDivisor, lam: Partition, chain: Chain) -> DisplacementTableau | None:
    """Tableau ``t(x, y) = min{i : (x, y) in lam_i}`` over the Weierstrass sequence of ``D``.

    Returns None when ``lam`` is not contained in the Weierstrass partition.
    """
    seq = weierstrass_sequence(D, chain)
    if not lam.issubset(seq[-1]):
        return None
    labels = {}
    for b in lam.boxes():
        labels[b] = next(i for i in range(1, len(seq)) if b in seq[i])
    return DisplacementTableau.from_labels(labels, chain.genus)


def divisor_from_xi(xi: Sequence, degree: int = 0) -> ChainDivisor:
    """``sum <xi_i>_i + (degree - g) w_g``."""
    return StandardForm(tuple(as_fraction(x) for x in xi), degree).to_divisor()
