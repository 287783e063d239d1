from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bnchain import tableaux
from bnchain.brill_noether import components
from bnchain.chain import AbstractChain, Cycle, CyclePoint, MetricChain
from bnchain.divisors import (
    BridgePoint,
    ChainDivisor,
    StandardForm,
    canonical_divisor,
    cycle_equivalent,
    cycle_reduce,
    divisor_from_xi,
    in_torus,
    in_w_lambda,
    linearly_equivalent,
    rank,
    rank_from_partition,
    serre_dual,
    standard_form,
    torus_witness,
    weierstrass_partition,
    weierstrass_sequence,
)
from bnchain.partitions import EMPTY, Partition, closure_contains
from bnchain.tableaux import DisplacementTableau

P = Partition.of
T = DisplacementTableau.from_rows
GENERIC4 = AbstractChain.of([0, 0, 0])


def xi_of(D, ch):
    return tuple(standard_form(D, ch).xi)


def same_xi(ch, a, b):
    return all(ch.same_point(i, x, y) for i, (x, y) in enumerate(zip(a, b), 1))


# --- single cycle -------------------------------------------------------------

def test_cycle_reduce_additive():
    assert cycle_reduce([(F(1), 2), (F(1, 2), -1)], cw=1, total=3) == F(3, 2)


def test_cycle_reduce_needs_degree_one():
    with pytest.raises(ValueError):
        cycle_reduce([(F(1), 2)], cw=1, total=3)


def test_distinct_points_inequivalent():
    for a in range(3):
        for b in range(3):
            assert cycle_equivalent([(F(a), 1)], [(F(b), 1)], 1, 3) == (a == b)


def test_trivial_difference_is_principal():
    assert cycle_equivalent([(F(5, 4), 1), (F(5, 4), -1)], [], 1, 3)


# --- standard form ------------------------------------------------------------

def test_standard_form_of_zero():
    sf = standard_form(ChainDivisor(), GENERIC4)
    assert sf == StandardForm((F(0), F(1), F(2), F(3)), 0)
    assert sf.to_json() == {"xi": ["0", "1", "2", "3"], "degree": 0}
    # sum <i-1>_i is equivalent to g w_g
    assert linearly_equivalent(divisor_from_xi([0, 1, 2, 3], 4), ChainDivisor(wg=4), GENERIC4)


def test_standard_form_of_canonical_divisor():
    # the oracle confirms K ~ sum <-(i-1)>_i + (g-2) w_g; see test_oracle
    for g in range(1, 7):
        ch = AbstractChain.of([0] * (g - 1))
        K = canonical_divisor(ch)
        assert K.degree == 2 * g - 2
        assert xi_of(K, ch) == tuple(F(-(i - 1)) for i in range(1, g + 1))
        assert linearly_equivalent(K, divisor_from_xi([-(i - 1) for i in range(1, g + 1)], 2 * g - 2), ch)


def test_standard_form_of_w1():
    ch = AbstractChain.of([0])
    assert standard_form(ChainDivisor.at((1, 0)), ch) == StandardForm((F(0), F(0)), 1)


def test_standard_form_canonicalizes_per_cycle():
    ch = AbstractChain.of([2, 3])
    assert xi_of(divisor_from_xi([5, -1, 7], 0), ch) == (F(5), F(1), F(1))


def test_bridge_chip_equals_either_end():
    ch = AbstractChain.of([0, 0, 0])
    on_bridge = ChainDivisor(((BridgePoint(2), 1),))
    assert xi_of(on_bridge, ch) == xi_of(ChainDivisor.at((2, 0)), ch) == xi_of(ChainDivisor.at((3, -1)), ch)


def test_support_checked():
    with pytest.raises(ValueError):
        standard_form(ChainDivisor.at((5, 0)), GENERIC4)
    with pytest.raises(ValueError):
        standard_form(ChainDivisor(((BridgePoint(4), 1),)), GENERIC4)


def test_divisor_json():
    D = ChainDivisor(((CyclePoint(1, F(0)), 1), (BridgePoint(2), -1)), wg=-3)
    obj = D.to_json()
    assert obj == {"terms": [{"cycle": 1, "xi": "0", "mult": 1}, {"bridge": 2, "mult": -1}], "wg": -3}
    assert ChainDivisor.from_json(obj) == D
    assert D.degree == -3


# --- Weierstrass partitions and rank -------------------------------------------

def test_weierstrass_partition_w13_class():
    D = divisor_from_xi([0, 1, -1, 0], 4)
    seq = weierstrass_sequence(D, GENERIC4)
    assert seq[1:] == [P(1), P(2), P(2, 1), P(2, 2)]
    assert weierstrass_partition(D, GENERIC4) == P(2, 2)


@pytest.mark.parametrize("g", range(1, 7))
def test_zero_class_gives_single_row(g):
    ch = AbstractChain.of([0] * (g - 1))
    assert weierstrass_partition(ChainDivisor(), ch) == P(g)


def test_hyperelliptic_genus_two():
    ch = AbstractChain.of([2])
    D = divisor_from_xi([0, -1], 2)
    lam = weierstrass_partition(D, ch)
    assert (1, 2) in lam
    assert rank(D, ch) == 1


def test_rank_examples():
    assert rank(ChainDivisor(), GENERIC4) == 0
    assert rank(canonical_divisor(GENERIC4), GENERIC4) == 3
    assert rank(divisor_from_xi([0, 1, -1, 0], 3), GENERIC4) == 1
    assert rank(ChainDivisor(wg=-1), GENERIC4) == -1
    assert rank(ChainDivisor(wg=9), GENERIC4) == 5


def test_rank_from_partition_honours_riemann_roch_floor():
    assert rank_from_partition(EMPTY, 3, 5) == 2
    assert rank_from_partition(EMPTY, 3, 0) == -1


def test_in_w_lambda_examples():
    assert in_w_lambda(ChainDivisor(), P(1), GENERIC4)
    assert not in_w_lambda(ChainDivisor(), P(1, 1), GENERIC4)
    assert in_w_lambda(divisor_from_xi([0, 1, -1, 0]), P(2, 2), GENERIC4)


def test_in_torus_examples():
    ch = AbstractChain.of([2, 0, 0])
    D = divisor_from_xi([0, 1, F(1, 2), 0])
    assert in_torus(D, T([[1, 2], [2, 4]], 4), ch)
    assert not in_torus(D, T([[1, 2], [3, 4]], 4), ch)
    assert in_torus(ChainDivisor(), DisplacementTableau(EMPTY, (), 4), ch)


def test_serre_dual_examples():
    ch = AbstractChain.of([0])
    assert xi_of(serre_dual(ChainDivisor(), ch), ch) == (F(0), F(-1))
    D = divisor_from_xi([F(1, 3), 2])
    assert xi_of(serre_dual(serre_dual(D, ch), ch), ch) == xi_of(D, ch)
    t = T([[1, 2], [3, 4]], 4)
    D = divisor_from_xi([0, 1, -1, 0])
    dual = serre_dual(D, GENERIC4)
    assert in_torus(D, t, GENERIC4)
    assert in_torus(dual, t.dual(), GENERIC4)
    assert serre_dual(D, GENERIC4).degree == 0


def test_torus_witness_w13():
    D = divisor_from_xi([0, 1, -1, 0])
    assert torus_witness(D, P(2, 2), GENERIC4) == T([[1, 2], [3, 4]], 4)
    assert torus_witness(D, P(3), GENERIC4) is None


# --- properties ---------------------------------------------------------------

xis = st.one_of(
    st.integers(-6, 6).map(F),
    st.fractions(min_value=-6, max_value=6, max_denominator=4),
)


@st.composite
def abstract_chains(draw, max_g=5, orders=(0, 2, 3, 4)):
    g = draw(st.integers(1, max_g))
    m = draw(st.lists(st.sampled_from(orders), min_size=g - 1, max_size=g - 1))
    return AbstractChain.of(m, g, draw(st.sampled_from(orders)))


@st.composite
def divisors(draw, g, max_terms=6):
    terms = []
    for _ in range(draw(st.integers(0, max_terms))):
        k = draw(st.sampled_from([1, 1, 2, -1]))
        if g > 1 and draw(st.integers(0, 9)) == 0:
            terms.append((BridgePoint(draw(st.integers(1, g - 1))), k))
        else:
            terms.append((CyclePoint(draw(st.integers(1, g)), draw(xis)), k))
    return ChainDivisor(tuple(terms), draw(st.integers(-4, 4)))


@st.composite
def chains_with_divisor(draw, **kw):
    ch = draw(abstract_chains(**kw))
    return ch, draw(divisors(ch.genus))


@st.composite
def principal(draw, ch):
    """A random principal divisor assembled from elementary moves."""
    g = ch.genus
    out = ChainDivisor()
    for _ in range(draw(st.integers(0, 5))):
        kind = draw(st.integers(0, 3))
        if kind == 0 and g > 1:
            i = draw(st.integers(1, g - 1))
            out += ChainDivisor(((CyclePoint(i, F(0)), 1), (CyclePoint(i + 1, F(-1)), -1)))
        elif kind == 1 and g > 1:
            b = draw(st.integers(1, g - 1))
            end = CyclePoint(b, F(0)) if draw(st.booleans()) else CyclePoint(b + 1, F(-1))
            out += ChainDivisor(((BridgePoint(b), 1), (end, -1)))
        elif kind == 2:
            # two chips on one cycle sliding in opposite directions
            i = draw(st.integers(1, g))
            a, b, c = draw(xis), draw(xis), draw(xis)
            out += ChainDivisor(((CyclePoint(i, a), 1), (CyclePoint(i, b), 1),
                                 (CyclePoint(i, a + c), -1), (CyclePoint(i, b - c), -1)))
        else:
            # a full period names the same point
            i = draw(st.integers(1, g))
            m = ch.torsion_profile().order(i)
            if m:
                a = draw(xis)
                out += ChainDivisor(((CyclePoint(i, a + m * draw(st.integers(-2, 2))), 1), (CyclePoint(i, a), -1)))
    return out


@settings(max_examples=300)
@given(chains_with_divisor(), st.data())
def test_standard_form_constant_on_classes(cd, data):
    ch, D = cd
    E = D + data.draw(principal(ch))
    assert standard_form(D, ch) == standard_form(E, ch)
    assert linearly_equivalent(D, E, ch)
    sf = standard_form(D, ch)
    assert standard_form(sf.to_divisor(), ch) == sf
    assert linearly_equivalent(sf.to_divisor(), D, ch)


@settings(max_examples=200)
@given(chains_with_divisor(), chains_with_divisor())
def test_standard_form_separates_classes(cd1, cd2):
    ch, D1 = cd1
    _, D2 = cd2
    if any(loc.cycle > ch.genus if isinstance(loc, CyclePoint) else loc.bridge >= ch.genus for loc, _ in D2.terms):
        return
    assert (standard_form(D1, ch) == standard_form(D2, ch)) == linearly_equivalent(D1, D2, ch)


@settings(max_examples=300)
@given(chains_with_divisor())
def test_serre_antisymmetry(cd):
    ch, D = cd
    D = D.twist(-D.degree)
    dual = serre_dual(D, ch)
    assert dual.degree == 0
    assert same_xi(ch, xi_of(dual, ch), tuple(-x for x in xi_of(D, ch)))
    assert standard_form(serre_dual(dual, ch), ch) == standard_form(D, ch)


@settings(max_examples=200)
@given(chains_with_divisor())
def test_effectivity_box(cd):
    ch, D = cd
    g, d = ch.genus, D.degree
    lam = weierstrass_partition(D, ch)
    for e in range(-2, 2 * g + 1):
        r = rank(D.twist(e - d), ch)
        assert closure_contains(lam, g - e, 1) == (r >= 0)
        assert r >= max(-1, e - g)
        assert r <= max(-1, e)


@settings(max_examples=100, deadline=None)
@given(abstract_chains(max_g=4), st.data())
def test_torus_classes_lie_in_locus(ch, data):
    g = ch.genus
    lam = data.draw(st.sampled_from([P(1), P(2), P(1, 1), P(2, 1), P(2, 2), P(3, 1), P(3, 2)]))
    for comp in components(lam, ch):
        free = {i: data.draw(xis) for i in comp.torus.free}
        D = comp.torus.sample(free)
        assert in_torus(D, comp.tableau, ch)
        assert lam <= weierstrass_partition(D, ch)


@settings(max_examples=300, deadline=None)
@given(chains_with_divisor(max_g=5))
def test_witness_tableau_certifies_membership(cd):
    ch, D = cd
    lam = weierstrass_partition(D, ch)
    t = torus_witness(D, lam, ch)
    assert t is not None and t.shape == lam
    assert tableaux.validate(t, ch.torsion_profile())
    assert in_torus(D, t, ch)


@settings(max_examples=100)
@given(st.integers(2, 4), st.data())
def test_metric_and_abstract_agree_on_lattice_classes(g, data):
    orders = data.draw(st.lists(st.sampled_from([2, 3, 5]), min_size=g, max_size=g))
    metric = MetricChain(tuple(Cycle(F(1), F(m)) for m in orders))
    abstract = AbstractChain.of(orders[1:], g, orders[0])
    xi = data.draw(st.lists(xis, min_size=g, max_size=g))
    D = divisor_from_xi(xi, data.draw(st.integers(-1, 2 * g)))
    assert weierstrass_partition(D, metric) == weierstrass_partition(D, abstract)
    assert rank(D, metric) == rank(D, abstract)
