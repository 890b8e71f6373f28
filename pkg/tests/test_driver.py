"""Driver: main identity, cell map, strata, two-parameter identity,
exceptional prediction."""

import pytest

from cellmap import driver
from cellmap.errors import UnsupportedType, VerificationFailure
from cellmap.orbits import orbit_str
from cellmap.rootdata import build


def test_verify_a1():
    rows = driver.verify_thm_kl(build("A1"))
    assert len(rows) == 5
    assert all(r.match is True for r in rows)
    # Iwahori + zero of the torus: j(triv) = triv, dual orbit regular,
    # both sides the Coxeter class
    iwahori = next(r for r in rows if r.nodes == ())
    assert iwahori.lhs_name == "2" and iwahori.rhs_name == "2"


def test_verify_a2():
    rows = driver.verify_thm_kl(build("A2"))
    assert len(rows) == 16               # 7 parahorics x special orbits
    assert all(r.match is True for r in rows)
    assert all(r.delta_check for r in rows)


def test_verify_b2_endpoints():
    rows = driver.verify_thm_kl(build("B2"))
    assert all(r.match is True for r in rows)
    full = [r for r in rows if r.levi_type == "B2"]
    zero = next(r for r in full if r.orbit_names() == ("1,1,1,1,1",))
    assert zero.lhs_name == "1,1;"       # identity class
    reg = next(r for r in full if r.orbit_names() == ("5",))
    assert reg.lhs_name == ";2"          # Coxeter class


def test_av_map_small():
    out = driver.av_map(build("A2"))
    got = {orbit_str(O): name for O, (label, name) in out.items()}
    assert got == {"1,1,1": "1,1,1", "2,1": "2,1", "3": "3"}
    assert len(driver.av_map(build("A1"))) == 2


def test_av_map_injective_b2_c2_d4():
    for name in ("B2", "C2", "D4"):
        out = driver.av_map(build(name))
        labels = [v[0] for v in out.values()]
        assert len(set(labels)) == len(labels)


def test_strata_a1():
    st = driver.strata(build("A1"))
    assert len(st) == 2
    by_label = {s.w_rep.name: s.kl_class_name for s in st}
    assert by_label == {"2": "2", "1,1": "1,1"}
    cox = next(s for s in st if s.w_rep.name == "2")
    # the Iwahori (generic x, u = 0) and the regular orbit in G itself
    # land in the same stratum
    assert ((), ()) in cox.sources
    srcs = {n for n, _ in cox.sources}
    assert (1,) in srcs or (0,) in srcs


def test_strata_b2():
    st = driver.strata(build("B2"))
    assert len(st) == 4
    got = {s.w_rep.name: s.kl_class_name for s in st}
    # frozen from the oracle + j-induction pipelines
    assert got == {"1,1;": "1;1", "1;1": ";1,1", "2;": ";2",
                   ";1,1": "1,1;"}


def test_s_sets_b2_c2():
    s, skipped = driver.s_sets_match(build("B2"))
    assert skipped == []
    assert len(s) == 5                   # every class of W(B2) is hit


def test_generalized_identity_c2():
    rows = driver.generalized_identity(build("C2"), {0, 2}, {1, 2})
    assert len(rows) == 4
    assert all(r.match for r in rows)
    got = {r.e_name: (r.lhs_name, r.rhs_name) for r in rows}
    assert got["1,1*1,1"] == ("2;", "2;")
    assert got["2*2"] == (";2", ";2")


def test_generalized_identity_full_zeta_reduces_to_main():
    # zeta = full dual group: the common subgroup is the x-side Levi and
    # the rows coincide with the main-identity rows for that parahoric
    d = build("B2")
    rows = driver.generalized_identity(d, {0, 1}, {1, 2})
    main = [r for r in driver.verify_thm_kl(d)
            if r.nodes == (0, 1)]
    assert {(r.lhs_name, r.rhs_name) for r in rows} \
        == {(m.lhs_name, m.lhs_name) for m in main}
    assert all(r.match for r in rows)


def test_generalized_identity_rejects_exceptional():
    with pytest.raises(UnsupportedType):
        driver.generalized_identity(build("G2"), {0}, {1})


def test_emit_exceptional_g2():
    rows = driver.emit_exceptional(build("G2"))
    assert all(r.match == "predicted-only" for r in rows)
    assert len(rows) == 18
    rd = {(r.nodes, r.orbit_names()): r for r in rows}
    # endpoints: L+G zero orbit -> identity class; Iwahori (regular
    # chain) -> Coxeter class
    assert rd[((1, 2), ("0",))].rhs_name == "1A"
    assert rd[((), ())].rhs_name == "6A"
    # the one gap: the dual orbit A1 is not special, no table value
    gap = rd[((0, 2), ("1,1,1",))]
    assert gap.rhs_name is None
    assert orbit_str(gap.dual_orbit) == "A1"
    # every other row is predicted
    assert sum(1 for r in rows if r.rhs_name is None) == 1
    # determinism
    again = driver.emit_exceptional(build("G2"))
    assert [r.as_dict() for r in again] == [r.as_dict() for r in rows]


def test_emit_exceptional_rejects_classical():
    with pytest.raises(UnsupportedType):
        driver.emit_exceptional(build("A2"))
