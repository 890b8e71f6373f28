"""External table format: parsing, checksums, consistency suites."""

import os

import pytest

from cellmap import tables
from cellmap.errors import TableError
from cellmap.weyl import build_weyl


def test_packaged_g2_tables_load():
    for kind in ("orbits", "springer", "kl"):
        tab = tables.load_default(kind, "G2")
        assert tab is not None
        assert tab.kind == kind and tab.group == "G2"
        assert tab.checksum == tables.payload_checksum(
            ["\t".join(r) for r in tab.rows])


def test_serialize_parse_roundtrip():
    rows = [("0", "1A"), ("G2", "6A")]
    text = tables.serialize("kl", "G2", rows, "roundtrip test")
    tab = tables.parse(text, "<memory>")
    assert tab.rows == [tuple(r) for r in rows]
    assert tables.serialize(tab.kind, tab.group, tab.rows,
                            "roundtrip test") == text


def test_checksum_tamper_rejected():
    text = tables.serialize("kl", "G2", [("0", "1A")], "tamper test")
    bad = text.replace("1A", "2A")
    with pytest.raises(TableError, match="checksum"):
        tables.parse(bad, "<memory>")


def test_bad_header_rejected():
    with pytest.raises(TableError):
        tables.parse("NOT-A-TABLE v1 kl G2 0123456789abcdef\n", "<memory>")
    with pytest.raises(TableError):
        tables.parse("CELLMAP-TABLE v2 kl G2 0123456789abcdef\n", "<memory>")
    text = tables.serialize("kl", "G2", [("0", "1A")], "kind test")
    with pytest.raises(TableError):
        tables.parse(text.replace(" kl ", " nonsense "), "<memory>")


def test_kl_duplicate_rows_rejected():
    with pytest.raises(TableError):
        tables.parse(tables.serialize(
            "kl", "G2", [("0", "1A"), ("0", "2A")], "dup"), "<memory>")


def test_orbits_consistency_rejected():
    # dual must be an involution on specials with reversed dimensions
    rows = [("0", "0", "1", "0"), ("G2", "12", "1", "G2")]
    with pytest.raises(TableError):
        tables.parse(tables.serialize("orbits", "G2", rows, "bad dual"),
                     "<memory>")


def test_chartab_orthogonality_enforced():
    W = build_weyl("A1")
    good = [("classes", "1,1", "2"),
            ("sizes", "1", "1"),
            ("triv", "1", "1"),
            ("sign", "1", "-1")]
    tab = tables.parse(tables.serialize("chartab", "A1", good, "ok"),
                       "<memory>")
    chars = tables.chartab_to_chars(tab, W)
    assert sorted(c.dim for c in chars) == [1, 1]
    bad = [("classes", "1,1", "2"),
           ("sizes", "1", "1"),
           ("triv", "1", "1"),
           ("sign", "1", "1")]
    with pytest.raises(TableError):
        tables.parse(tables.serialize("chartab", "A1", bad, "bad"),
                     "<memory>")


def test_ingest_conflict_needs_force(tmp_path):
    p1 = tmp_path / "kl_Z9.tbl"
    p1.write_text(tables.serialize("kl", "Z9", [("0", "1A")], "v1"))
    p2 = tmp_path / "kl_Z9b.tbl"
    p2.write_text(tables.serialize("kl", "Z9", [("0", "2A")], "v2"))
    tables.ingest(str(p1))
    with pytest.raises(TableError, match="force"):
        tables.ingest(str(p2))
    tab = tables.ingest(str(p2), force=True)
    assert tab.rows == [("0", "2A")]


def test_table_dir_env(tmp_path, monkeypatch):
    text = tables.serialize("kl", "Z8", [("0", "1A")], "env test")
    (tmp_path / "kl_Z8.tbl").write_text(text)
    monkeypatch.setenv("CELLMAP_TABLE_DIR", str(tmp_path))
    tab = tables.load_default("kl", "Z8")
    assert tab is not None and tab.rows == [("0", "1A")]
    monkeypatch.delenv("CELLMAP_TABLE_DIR")
    assert tables.load_default("kl", "Z8") is None
