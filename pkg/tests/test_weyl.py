"""Weyl groups: classes, character tables, reflection subgroups."""

import pytest

from cellmap.rootdata import Parahoric, build
from cellmap.weyl import ReflectionSubgroup, build_weyl

CLASS_COUNTS = {"A1": 2, "A2": 3, "A3": 5, "B2": 5, "B3": 10, "C3": 10,
                "D4": 13, "G2": 6}


@pytest.mark.parametrize("name", sorted(CLASS_COUNTS))
def test_class_counts_and_sizes(name):
    W = build_weyl(name)
    assert len(W.classes) == CLASS_COUNTS[name]
    assert sum(c.size for c in W.classes) == W.datum.weyl_order
    # identity class
    assert any(c.size == 1 and c.order == 1 for c in W.classes)


@pytest.mark.parametrize("name", sorted(CLASS_COUNTS))
def test_orthogonality(name):
    W = build_weyl(name)
    chars = W.characters()
    order = W.datum.weyl_order
    assert sum(ch.dim ** 2 for ch in chars) == order
    for i, a in enumerate(chars):
        for j, b in enumerate(chars):
            s = sum(c.size * a.values[k] * b.values[k]
                    for k, c in enumerate(W.classes))
            assert s == (order if i == j else 0), (a.name, b.name)


def test_column_orthogonality_b2():
    W = build_weyl("B2")
    chars = W.characters()
    for k, ck in enumerate(W.classes):
        for l, cl in enumerate(W.classes):
            s = sum(ch.values[k] * ch.values[l] for ch in chars)
            expect = W.datum.weyl_order // ck.size if k == l else 0
            assert s == expect


def test_d4_split_classes():
    W = build_weyl("D4")
    labels = {c.label for c in W.classes}
    for cyc in ((2, 2), (4,)):
        plus = ('D', cyc, (), '+')
        minus = ('D', cyc, (), '-')
        assert plus in labels and minus in labels
        cp = next(c for c in W.classes if c.label == plus)
        cm = next(c for c in W.classes if c.label == minus)
        assert cp.size == cm.size


def test_g2_characters():
    W = build_weyl("G2")
    names = sorted(c.name for c in W.characters())
    assert names == ["phi_1_0", "phi_1_3a", "phi_1_3b", "phi_1_6",
                     "phi_2_1", "phi_2_2"]
    dims = sorted(c.dim for c in W.characters())
    assert dims == [1, 1, 1, 1, 2, 2]


def test_reflection_subgroup_induction_a2():
    # Ind_{S2}^{S3}(triv) = triv + std;  Ind(sign) = sign + std
    W = build_weyl("A2")
    P = Parahoric(W.datum, frozenset({1}))
    sub = ReflectionSubgroup(W, [(f.std.name, f.simples)
                                 for f in P.factors])
    chars = W.characters()
    by_name = {c.name: i for i, c in enumerate(chars)}
    triv_sub = next(c for c in sub.characters() if c.name == "2")
    mults = sub.induce_decompose(triv_sub)
    assert mults[by_name["3"]] == 1
    assert mults[by_name["2,1"]] == 1
    assert mults[by_name["1,1,1"]] == 0
    sign_sub = next(c for c in sub.characters() if c.name == "1,1")
    mults = sub.induce_decompose(sign_sub)
    assert mults[by_name["3"]] == 0
    assert mults[by_name["2,1"]] == 1
    assert mults[by_name["1,1,1"]] == 1


def test_trivial_subgroup_induces_regular():
    W = build_weyl("B2")
    sub = ReflectionSubgroup(W, [])
    triv = sub.characters()[0]
    mults = sub.induce_decompose(triv)
    assert mults == [c.dim for c in W.characters()]
