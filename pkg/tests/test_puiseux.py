"""The sampling oracle for the classical Kazhdan-Lusztig maps.

Frozen values below were produced by this package's own two independent
pipelines (direct sampling vs. the truncated-induction side of the main
identity) and, for type A, by the closed form KL(O_lambda) = [lambda].
"""

import pytest

from cellmap.errors import OrbitLeviMismatch, UnsupportedType
from cellmap.orbits import nilpotent_orbits, orbit_str
from cellmap.puiseux import kl_map, kl_parahoric
from cellmap.rootdata import Parahoric, build

# frozen values cross-checked against the dual-side pipeline (j-induction +
# Springer inverse + dual oracle) in the main-identity run
B2_KL = {"1,1,1,1,1": "1,1;", "2,2,1": "2;", "3,1,1": ";1,1", "5": ";2"}
C2_KL = {"1,1,1,1": "1,1;", "2,1,1": "1;1", "2,2": ";1,1", "4": ";2"}
D4_KL = {
    "1,1,1,1,1,1,1,1": "1,1,1,1;",
    "2,2,1,1,1,1": "2,1,1;",
    "2,2,2,2|+": "2,2;|+",
    "2,2,2,2|-": "2,2;|-",
    "3,1,1,1,1,1": "1,1;1,1",
    "3,2,2,1": ";1,1,1,1",
    "3,3,1,1": "3,1;",
    "4,4|+": "4;|+",
    "4,4|-": "4;|-",
    "5,1,1,1": "1;2,1",
    "5,3": ";2,2",
    "7,1": ";3,1",
}


def test_type_a_is_identity():
    for name in ("A1", "A2", "A3"):
        d = build(name)
        for O in nilpotent_orbits(d):
            rep = kl_map(d, O)
            assert rep.class_label == ('A', O[1])
            assert rep.delta == rep.d_orbit


@pytest.mark.parametrize("name,frozen", [("B2", B2_KL), ("C2", C2_KL)])
def test_bc_rank2_frozen(name, frozen):
    d = build(name)
    got = {orbit_str(O): kl_map(d, O).class_name
           for O in nilpotent_orbits(d)}
    assert got == frozen


def test_d4_frozen_and_injective():
    d = build("D4")
    got = {}
    for O in nilpotent_orbits(d):
        rep = kl_map(d, O)
        got[orbit_str(O)] = rep.class_name
        assert rep.delta == rep.d_orbit      # holds even off the specials
    assert got == D4_KL
    assert len(set(got.values())) == len(got)


def test_split_tags_swap_consistently():
    # the two halves of each very even pair land on the two split
    # classes, never on the same one
    d = build("D4")
    for cyc in ("2,2,2,2", "4,4"):
        plus = kl_map(d, ('D', tuple(int(c) for c in cyc.split(',')), '+'))
        minus = kl_map(d, ('D', tuple(int(c) for c in cyc.split(',')), '-'))
        assert plus.class_label[1] == minus.class_label[1]
        assert {plus.class_label[3], minus.class_label[3]} == {'+', '-'}


def test_iwahori_regular_chain_is_coxeter():
    # Iwahori + zero orbit of the torus: the generic element is a
    # regular chain, class = Coxeter
    d = build("A1")
    rep = kl_parahoric(Parahoric(d, frozenset()), ())
    assert rep.class_name == "2"
    d = build("B2")
    rep = kl_parahoric(Parahoric(d, frozenset()), ())
    assert rep.class_name == ";2"


def test_full_group_zero_orbit_is_identity():
    for name in ("A2", "B2", "C2"):
        d = build(name)
        zero = nilpotent_orbits(d)[0]
        rep = kl_map(d, zero)
        assert rep.class_label in (('A', (1,) * (d.rank + 1)),
                                   ('BC', (1,) * d.rank, ()))
        assert rep.delta == d.npos


def test_parahoric_cross_check_gl2_gl2():
    # sl_4 with the gl_2 x gl_2 Levi, both factors regular: the oracle
    # answer must equal the dual-side prediction (frozen from that run)
    d = build("A3")
    P = Parahoric(d, frozenset({0, 2}))
    assert P.levi_type() == "A1xA1"
    # dual side: j(triv x triv) = triv, dual orbit [4], class 4
    rep = kl_parahoric(P, (('A', (2,)), ('A', (2,))))
    assert rep.class_name == "4"
    # and the sign x sign endpoint: j = [2,2] character, dual orbit
    # [2,2], class 2,2
    rep = kl_parahoric(P, (('A', (1, 1)), ('A', (1, 1))))
    assert rep.class_name == "2,2"


def test_determinism():
    d = build("B2")
    a = kl_map(d, ('B', (3, 1, 1)))
    b = kl_map(d, ('B', (3, 1, 1)))
    for attr in ("class_label", "val_disc", "delta", "truncation",
                 "bound", "retries", "seeds"):
        assert getattr(a, attr) == getattr(b, attr)
    c = kl_map(d, ('B', (3, 1, 1)), base_seed=1)
    assert c.class_label == a.class_label


def test_label_validation():
    d = build("B2")
    with pytest.raises(OrbitLeviMismatch):
        kl_map(d, ('C', (2, 2)))
    with pytest.raises(UnsupportedType):
        kl_map(build("G2"), ('X', 'G2'))
