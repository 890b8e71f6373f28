"""Root data, parahorics, Levi factorizations, root valuations."""

from fractions import Fraction

import pytest

from cellmap.rootdata import (Parahoric, build, enumerate_parahorics,
                              root_valuations)

COUNTS = {
    # name: (n roots, |W|, degrees)
    "A1": (2, 2, (2,)),
    "A2": (6, 6, (2, 3)),
    "A3": (12, 24, (2, 3, 4)),
    "B2": (8, 8, (2, 4)),
    "B3": (18, 48, (2, 4, 6)),
    "C3": (18, 48, (2, 4, 6)),
    "D4": (24, 192, (2, 4, 4, 6)),
    "D5": (40, 1920, (2, 4, 6, 8, 5)),
    "G2": (12, 12, (2, 6)),
}


@pytest.mark.parametrize("name", sorted(COUNTS))
def test_counts(name):
    d = build(name)
    n, order, degrees = COUNTS[name]
    assert len(d.roots) == n
    assert d.weyl_order == order
    assert sorted(d.degrees) == sorted(degrees)
    assert 2 * d.npos == n
    prod = 1
    for deg in d.degrees:
        prod *= deg
    assert prod == order


def test_dual():
    assert build("B3").dual().name == "C3"
    assert build("C4").dual().name == "B4"
    for name in ("A3", "D4", "G2"):
        assert build(name).dual().name == name


@pytest.mark.parametrize("name", ["A2", "B2", "C3", "D4", "G2"])
def test_parahoric_enumeration(name):
    d = build(name)
    ps = enumerate_parahorics(d)
    assert len(ps) == 2 ** (d.rank + 1) - 1
    # the Iwahori has a torus Levi; the full subsets have one factor of
    # full rank
    assert ps[0].levi_type() == "T"


LEVI_TYPES = {
    ("B2", (0, 1)): "A1xA1",
    ("B2", (0, 2)): "B2",
    ("C2", (0, 2)): "A1xA1",
    ("C2", (0, 1)): "C2",
    ("G2", (0, 2)): "A2",
    ("G2", (0, 1)): "A1xA1",
    ("G2", (1, 2)): "G2",
    ("D4", (1, 2, 3, 4)): "D4",
    ("A3", (0, 2)): "A1xA1",
}


@pytest.mark.parametrize("key", sorted(LEVI_TYPES))
def test_levi_types(key):
    name, nodes = key
    P = Parahoric(build(name), frozenset(nodes))
    assert P.levi_type() == LEVI_TYPES[key]


def test_full_levi_matches_ambient_order():
    # matching a full-type Levi back to the standard datum must use the
    # identity on simple roots even when diagram automorphisms (D4
    # triality) allow other matchings
    d = build("D4")
    P = Parahoric(d, frozenset({1, 2, 3, 4}))
    assert len(P.factors) == 1
    assert P.factors[0].simples == d.simple_roots


def test_parahoric_rejects_improper():
    d = build("A2")
    with pytest.raises(ValueError):
        Parahoric(d, frozenset({0, 1, 2}))


def test_root_valuations_duality_bc():
    # val alpha(gamma) = val alpha_dual(gamma) because coroots are scalar
    # multiples of roots in these realizations; the multisets over the
    # dual root systems therefore agree exactly
    B2, C2 = build("B2"), build("C2")
    gammas = [
        ({0: Fraction(1)}, {Fraction(1, 2): Fraction(1)}),
        ({Fraction(1, 3): 2}, {1: 1, 2: -3}),
        ({0: 1, 1: 1}, {0: -2}),
    ]
    for coords in gammas:
        assert root_valuations(B2, coords) == root_valuations(C2, coords)


def test_root_valuations_rejects_degenerate():
    d = build("A1")
    with pytest.raises(ValueError):
        root_valuations(d, ({0: 1}, {0: 1}))
