"""Text-format data tables with checksums and consistency validation.

Tables carry data that is transcribed from published sources rather than
computed here (exceptional-type orbit posets, Springer labels, character
tables, and known Kazhdan-Lusztig values).  The format is line-oriented so
the files can be written and audited by hand:

    CELLMAP-TABLE v1 <kind> <group> <checksum>
    # free-text source notes
    <field> <TAB> <field> ...

`checksum` is the first 16 hex digits of the sha256 of the data lines
(comment and blank lines excluded) joined by newlines.  Supported kinds:

    orbits    name  dim  special(0|1)  dual-name
    springer  orbit-name  character-name
    kl        orbit-name  class-name
    chartab   a `classes` row, a `sizes` row, then one row per character

Each kind has a consistency suite that runs on ingestion: order reversal
and involution-on-specials for `orbits`; injectivity and the d = b
normalization for `springer`; totality on special orbits for `kl`; exact
orthogonality for `chartab`.
"""

import hashlib
import os
from fractions import Fraction

from .errors import TableError, ExternalTableRequired
from . import orbits as orbits_mod

MAGIC = "CELLMAP-TABLE"
VERSION = "v1"
KINDS = ("chartab", "orbits", "springer", "kl")

# tables registered explicitly in this process (CLI --tables, tests)
_registry = {}


class TableFile:
    """A parsed and checksum-verified table."""

    def __init__(self, kind, group, rows, checksum, source_note="", path=None):
        self.kind = kind
        self.group = group
        self.rows = rows
        self.checksum = checksum
        self.source_note = source_note
        self.path = path

    def __repr__(self):
        return f"TableFile({self.kind}, {self.group}, {len(self.rows)} rows)"


def payload_checksum(data_lines):
    payload = "\n".join(data_lines).encode("utf-8")
    return hashlib.sha256(payload).hexdigest()[:16]


def parse(text, path=None):
    """Parse table text; verifies the header checksum and the grammar."""
    lines = text.splitlines()
    if not lines:
        raise TableError(f"{path or '<string>'}: empty table file")
    head = lines[0].split()
    if len(head) != 5 or head[0] != MAGIC or head[1] != VERSION:
        raise TableError(
            f"{path or '<string>'} line 1: expected header "
            f"'{MAGIC} {VERSION} <kind> <group> <checksum>'")
    _, _, kind, group, checksum = head
    if kind not in KINDS:
        raise TableError(f"{path or '<string>'} line 1: unknown kind {kind}")
    data_lines, notes = [], []
    for ln, raw in enumerate(lines[1:], start=2):
        line = raw.rstrip("\n")
        if not line.strip():
            continue
        if line.lstrip().startswith("#"):
            notes.append(line.lstrip().lstrip("#").strip())
            continue
        data_lines.append(line)
    actual = payload_checksum(data_lines)
    if actual != checksum:
        raise TableError(
            f"{path or '<string>'}: checksum mismatch "
            f"(header {checksum}, payload {actual})")
    rows = []
    for line in data_lines:
        rows.append(tuple(line.split("\t")))
    tab = TableFile(kind, group, rows, checksum,
                    source_note="; ".join(notes), path=path)
    _validate(tab)
    return tab


def serialize(kind, group, rows, source_note=""):
    """Render rows to the canonical text format (with a fresh checksum)."""
    data_lines = ["\t".join(str(f) for f in row) for row in rows]
    checksum = payload_checksum(data_lines)
    out = [f"{MAGIC} {VERSION} {kind} {group} {checksum}"]
    for note in filter(None, source_note.split("\n")):
        out.append(f"# {note}")
    out.extend(data_lines)
    return "\n".join(out) + "\n"


def ingest(path, force=False):
    """Parse, validate, and register a table file."""
    with open(path, "r", encoding="utf-8") as fh:
        tab = parse(fh.read(), path=path)
    key = (tab.kind, tab.group)
    prev = _registry.get(key)
    if prev is not None and prev.checksum != tab.checksum and not force:
        raise TableError(
            f"{path}: table ({tab.kind}, {tab.group}) already registered "
            f"with checksum {prev.checksum}; pass force to replace")
    _registry[key] = tab
    return tab


def register_dir(directory, force=False):
    """Ingest every .tbl file in a directory; returns ingested tables."""
    out = []
    for fn in sorted(os.listdir(directory)):
        if fn.endswith(".tbl"):
            out.append(ingest(os.path.join(directory, fn), force=force))
    return out


def _packaged_dir():
    return os.path.join(os.path.dirname(__file__), "data")


def load_default(kind, group):
    """Resolve a table: explicit registration, then $CELLMAP_TABLE_DIR,
    then the packaged data directory.  Returns None when absent."""
    key = (kind, group)
    if key in _registry:
        return _registry[key]
    candidates = []
    env = os.environ.get("CELLMAP_TABLE_DIR")
    if env:
        candidates.append(env)
    candidates.append(_packaged_dir())
    fname = f"{kind}_{group}.tbl"
    for d in candidates:
        p = os.path.join(d, fname)
        if os.path.isfile(p):
            with open(p, "r", encoding="utf-8") as fh:
                return parse(fh.read(), path=p)
    return None


# -- kind-specific consistency suites ------------------------------------------


def _validate(tab):
    where = tab.path or "<string>"
    if tab.kind == "orbits":
        _validate_orbits(tab, where)
    elif tab.kind == "springer":
        _validate_springer(tab, where)
    elif tab.kind == "kl":
        _validate_kl(tab, where)
    elif tab.kind == "chartab":
        _validate_chartab(tab, where)


def _validate_orbits(tab, where):
    seen = {}
    for row in tab.rows:
        if len(row) != 4:
            raise TableError(f"{where}: orbits rows need 4 fields, got {row}")
        name, dim, special, dual = row
        if name in seen:
            raise TableError(f"{where}: duplicate orbit {name}")
        try:
            seen[name] = (int(dim), int(special), dual)
        except ValueError:
            raise TableError(f"{where}: non-integer field in {row}")
    for name, (dim, special, dual) in seen.items():
        if dual not in seen:
            raise TableError(f"{where}: dual {dual} of {name} not listed")
        ddim, dspecial, ddual = seen[dual]
        if not dspecial:
            raise TableError(
                f"{where}: dual {dual} of {name} is not special")
        if special and ddual != name:
            raise TableError(
                f"{where}: duality not involutive on special orbit {name}")
    # order reversal on dimensions of special orbits
    specials = [(d, seen[n][2]) for n, (d, s, _) in seen.items() if s
                for d in [seen[n][0]]]
    for d1, dual1 in specials:
        for d2, dual2 in specials:
            if d1 < d2 and seen[dual1][0] < seen[dual2][0]:
                raise TableError(
                    f"{where}: duality does not reverse the dimension order")


def _validate_springer(tab, where):
    orbs, chars = [], []
    for row in tab.rows:
        if len(row) != 2:
            raise TableError(f"{where}: springer rows need 2 fields: {row}")
        orbs.append(row[0])
        chars.append(row[1])
    if len(set(orbs)) != len(orbs):
        raise TableError(f"{where}: springer map defined twice for an orbit")
    if len(set(chars)) != len(chars):
        raise TableError(f"{where}: springer map not injective")


def _validate_kl(tab, where):
    seen = set()
    for row in tab.rows:
        if len(row) != 2:
            raise TableError(f"{where}: kl rows need 2 fields: {row}")
        if row[0] in seen:
            raise TableError(f"{where}: kl value defined twice for {row[0]}")
        seen.add(row[0])


def _validate_chartab(tab, where):
    rows = list(tab.rows)
    if len(rows) < 3 or rows[0][0] != "classes" or rows[1][0] != "sizes":
        raise TableError(
            f"{where}: chartab needs `classes` and `sizes` rows first")
    classes = rows[0][1:]
    try:
        sizes = [int(v) for v in rows[1][1:]]
    except ValueError:
        raise TableError(f"{where}: non-integer class size")
    if len(sizes) != len(classes):
        raise TableError(f"{where}: sizes row length mismatch")
    order = sum(sizes)
    chars = []
    for row in rows[2:]:
        if len(row) != len(classes) + 1:
            raise TableError(f"{where}: character row length mismatch: {row}")
        try:
            chars.append((row[0], [int(v) for v in row[1:]]))
        except ValueError:
            raise TableError(f"{where}: non-integer character value in {row}")
    if len(chars) != len(classes):
        raise TableError(
            f"{where}: {len(chars)} characters for {len(classes)} classes")
    if sum(v[0] ** 2 for _, v in chars) != order:
        raise TableError(f"{where}: sum of squared dimensions != group order")
    # both orthogonality relations, exactly
    for i, (_, vi) in enumerate(chars):
        for j, (_, vj) in enumerate(chars):
            s = sum(sz * a * b for sz, a, b in zip(sizes, vi, vj))
            if s != (order if i == j else 0):
                raise TableError(
                    f"{where}: row orthogonality fails at ({i}, {j})")
    for a in range(len(classes)):
        for b in range(len(classes)):
            s = sum(v[a] * v[b] for _, v in chars)
            want = order // sizes[a] if a == b else 0
            if s != want:
                raise TableError(
                    f"{where}: column orthogonality fails at ({a}, {b})")


# -- adapters ------------------------------------------------------------------


def orbits_from_tables(datum, orb_tab, spr_tab):
    """Combine `orbits` and `springer` tables into ExcOrbit rows, checking
    the d = b normalization against the internally built character data."""
    spr = {row[0]: row[1] for row in spr_tab.rows}
    out = []
    for name, dim, special, dual in orb_tab.rows:
        if name not in spr:
            raise TableError(
                f"springer table for {datum.name} missing orbit {name}")
        out.append(orbits_mod.ExcOrbit(
            name, int(dim), bool(int(special)), dual, spr[name]))
    from .weyl import build_weyl
    from .invariants import b_invariant
    W = build_weyl(datum.name)
    nilcone = 2 * len(datum.positive_roots)
    names = {ch.name for ch in W.characters()}
    for row in out:
        if row.springer not in names:
            raise TableError(
                f"springer character {row.springer} unknown in "
                f"W({datum.name})")
        if row.special:
            d_o = (nilcone - row.dim) // 2
            b = b_invariant(W, W.char_by_name(row.springer))
            if d_o != b:
                raise TableError(
                    f"d = b normalization fails for {datum.name} orbit "
                    f"{row.name}: d = {d_o}, b = {b}")
    return out


def chartab_to_chars(tab, weyl):
    """Build IrrChar values aligned with `weyl.classes` from a chartab."""
    from .weyl import IrrChar
    rows = list(tab.rows)
    classes = rows[0][1:]
    order = {n: i for i, n in enumerate(classes)}
    missing = [c.name for c in weyl.classes if c.name not in order]
    if missing:
        raise TableError(
            f"chartab for {tab.group} missing classes {missing}")
    sizes = [int(v) for v in rows[1][1:]]
    for c in weyl.classes:
        if sizes[order[c.name]] != c.size:
            raise TableError(
                f"chartab for {tab.group}: class {c.name} has size "
                f"{sizes[order[c.name]]}, expected {c.size}")
    chars = []
    for row in rows[2:]:
        vals = [int(row[1 + order[c.name]]) for c in weyl.classes]
        chars.append(IrrChar(('X', row[0]), vals))
    return chars


def kl_value(group, orbit_name):
    """Known KL class for a full-group orbit, from the ingested table."""
    tab = load_default(kind="kl", group=group)
    if tab is None:
        raise ExternalTableRequired(
            f"KL values for {group} require an ingested 'kl' table")
    for row in tab.rows:
        if row[0] == orbit_name:
            return row[1]
    return None
