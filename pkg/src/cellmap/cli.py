"""Command-line surface.

Subcommands map one-to-one onto library entry points; output is a
line-oriented human table by default and a canonical JSON document with
``--json`` (sorted keys, two-space indent, trailing newline), so that
identical commands with identical seeds produce identical bytes.

Exit codes: 0 success, 1 usage, 2 data/table error, 3 verification
failure, 4 inconclusive oracle.
"""

import argparse
import json
import os
import sys

from . import tables
from .errors import (CellmapError, CorrespondenceGap, DegenerateSample,
                     DeltaMismatch, ExternalTableRequired, FormViolation,
                     InconclusiveSample, InsufficientTruncation,
                     MLSViolation, OrbitLeviMismatch,
                     SpringerNormalizationError, TableError,
                     UnsupportedType, VerificationFailure)
from .invariants import fake_degree, j_induction
from .orbits import (check_orbit_valid, d_invariant, is_special,
                     nilpotent_orbits, orbit_dim, orbit_str, springer)
from .puiseux import kl_map, kl_parahoric
from .rootdata import Parahoric, build, enumerate_parahorics
from .weyl import build_weyl
from . import driver

DEFAULT_SEED = 0

USAGE_ERRORS = (UnsupportedType, OrbitLeviMismatch, ValueError, KeyError)
DATA_ERRORS = (TableError, ExternalTableRequired, CorrespondenceGap,
               SpringerNormalizationError, OSError)
VERIFY_ERRORS = (VerificationFailure, DeltaMismatch, MLSViolation,
                 FormViolation)
INCONCLUSIVE_ERRORS = (InconclusiveSample, InsufficientTruncation,
                       DegenerateSample)


# -- labels --------------------------------------------------------------------


def parse_orbit(datum, text):
    """Canonical orbit grammar: partitions as comma lists, a D split tag
    after '|', exceptional orbits as bare names."""
    fam = datum.family
    if fam not in "ABCD":
        return ('X', text)
    if '|' in text:
        body, tag = text.split('|', 1)
    else:
        body, tag = text, ''
    lam = tuple(int(c) for c in body.split(','))
    label = ('D', lam, tag) if fam == 'D' else (fam, lam)
    check_orbit_valid(datum, label)
    return label


def parse_nodes(text):
    if text in ("", "-"):
        return frozenset()
    return frozenset(int(c) for c in text.split(','))


# -- output --------------------------------------------------------------------


def emit(doc, lines, args):
    if args.json:
        out = json.dumps(doc, sort_keys=True, indent=2,
                         ensure_ascii=True) + "\n"
    else:
        out = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def oracle_dict(rep):
    return {
        "group": rep.datum_name,
        "nodes": list(rep.nodes),
        "orbits": [orbit_str(o) for o in rep.orbit_labels],
        "class": rep.class_name,
        "val_disc": str(rep.val_disc),
        "delta": rep.delta,
        "special": rep.special,
        "d_orbit": rep.d_orbit,
        "truncation": rep.truncation,
        "bound": rep.bound,
        "retries": rep.retries,
        "seeds": list(rep.seeds),
    }


# -- subcommand bodies ---------------------------------------------------------


def cmd_roots(args):
    d = build(args.type)
    doc = {
        "command": "roots", "group": d.name, "family": d.family,
        "rank": d.rank, "weyl_order": d.weyl_order, "npos": d.npos,
        "degrees": list(d.degrees), "marks": list(d.marks),
        "simple_roots": [list(a) for a in d.simple_roots],
        "highest_root": list(d.highest_root),
        "n_roots": len(d.roots),
    }
    lines = [f"{d.name}: rank {d.rank}, |W| = {d.weyl_order}, "
             f"{len(d.roots)} roots, N = {d.npos}",
             f"degrees: {list(d.degrees)}  marks: {list(d.marks)}"]
    for i, a in enumerate(d.simple_roots):
        lines.append(f"alpha_{i + 1} = {list(a)}")
    lines.append(f"theta   = {list(d.highest_root)}")
    emit(doc, lines, args)
    return 0


def cmd_classes(args):
    W = build_weyl(args.type)
    rows = [{"name": c.name, "size": c.size, "fixed_dim": c.fixed_dim}
            for c in W.classes]
    doc = {"command": "classes", "group": args.type, "rows": rows}
    lines = [f"{r['name']:16s} size {r['size']:6d} "
             f"fixed-space dim {r['fixed_dim']}" for r in rows]
    emit(doc, lines, args)
    return 0


def cmd_chars(args):
    W = build_weyl(args.type)
    classes = [c.name for c in W.classes]
    rows = [{"name": ch.name, "dim": ch.dim, "values": list(ch.values)}
            for ch in W.characters()]
    doc = {"command": "chars", "group": args.type, "classes": classes,
           "rows": rows}
    width = max(len(r["name"]) for r in rows) + 2
    lines = [" " * width + "  ".join(f"{c:>8s}" for c in classes)]
    for r in rows:
        lines.append(f"{r['name']:{width}s}" +
                     "  ".join(f"{v:8d}" for v in r["values"]))
    emit(doc, lines, args)
    return 0


def cmd_fakedeg(args):
    W = build_weyl(args.type)
    rows = []
    for ch in W.characters():
        fd = fake_degree(W, ch)
        b = next(k for k, c in enumerate(fd) if c != 0)
        rows.append({"name": ch.name, "b": b, "fake_degree": list(fd)})
    doc = {"command": "fakedeg", "group": args.type, "rows": rows}
    lines = [f"{r['name']:16s} b = {r['b']:3d}  {r['fake_degree']}"
             for r in rows]
    emit(doc, lines, args)
    return 0


def cmd_orbits(args):
    d = build(args.type)
    rows = []
    for O in nilpotent_orbits(d):
        rows.append({
            "orbit": orbit_str(O),
            "dim": orbit_dim(d, O),
            "special": is_special(d, O),
            "d": d_invariant(d, O),
            "springer": _char_name(d, springer(d, O)),
        })
    doc = {"command": "orbits", "group": d.name, "rows": rows}
    lines = [f"{r['orbit']:18s} dim {r['dim']:4d}  "
             f"{'special' if r['special'] else 'nonspec'}  d = {r['d']:3d}  "
             f"Spr = {r['springer']}" for r in rows]
    emit(doc, lines, args)
    return 0


def _char_name(datum, char_label):
    W = build_weyl(datum.name)
    for c in W.characters():
        if c.label == char_label:
            return c.name
    raise CorrespondenceGap(
        f"character {char_label} not found in W({datum.name})")


def cmd_springer(args):
    d = build(args.type)
    rows = []
    for O in nilpotent_orbits(d):
        rows.append({"orbit": orbit_str(O),
                     "char": _char_name(d, springer(d, O)),
                     "special": is_special(d, O)})
    doc = {"command": "springer", "group": d.name, "rows": rows}
    lines = [f"{r['orbit']:18s} -> {r['char']}" for r in rows]
    emit(doc, lines, args)
    return 0


def cmd_jinduce(args):
    d = build(args.type)
    P = Parahoric(d, parse_nodes(args.levi))
    sub = driver.levi_subgroup(P)
    match = [ch for ch in sub.characters() if ch.name == args.rep]
    if not match:
        raise ValueError(
            f"no character named {args.rep!r} of the Levi of "
            f"J={sorted(P.nodes)} (factors {P.levi_type()}); factor names "
            f"join with '*'")
    from .invariants import b_invariant
    W = build_weyl(d.name)
    image = j_induction(sub, match[0])
    b = b_invariant(W, image)
    doc = {"command": "jinduce", "group": d.name,
           "nodes": sorted(P.nodes), "levi": P.levi_type(),
           "rep": args.rep, "image": image.name, "b": b}
    lines = [f"j_{{{P.levi_type()}}}^W({args.rep}) = {image.name} "
             f"(b = {b})"]
    emit(doc, lines, args)
    return 0


def cmd_kl(args):
    d = build(args.type)
    if args.parahoric is None:
        P = Parahoric(d, frozenset(range(1, d.rank + 1)))
    else:
        P = Parahoric(d, parse_nodes(args.parahoric))
    texts = args.orbit or []
    if len(texts) != len(P.factors):
        raise ValueError(
            f"need one --orbit per Levi factor "
            f"({len(P.factors)} factors {P.levi_type()}), got {len(texts)}")
    labels = tuple(parse_orbit(f.std, t) for f, t in zip(P.factors, texts))
    rep = kl_parahoric(P, labels, base_seed=args.seed, k_start=args.trunc)
    doc = {"command": "kl", "report": oracle_dict(rep)}
    lines = [f"KL_{d.name}^J{sorted(P.nodes)}"
             f"({', '.join(texts) or '0'}) = {rep.class_name}",
             f"val disc = {rep.val_disc}, delta = {rep.delta}"
             + (f" = d_O = {rep.d_orbit}" if rep.special else
                f" (non-special, d_O = {rep.d_orbit})"),
             f"K = {rep.truncation}, bound = {rep.bound}, "
             f"retries = {rep.retries}"]
    emit(doc, lines, args)
    return 0


def cmd_verify(args):
    d = build(args.type)
    rows = driver.verify_thm_kl(d, base_seed=args.seed)
    doc = {"command": "verify", "group": d.name, "seed": args.seed,
           "rows": [r.as_dict() for r in rows],
           "all_match": all(r.match is True for r in rows)}
    lines = []
    for r in rows:
        rd = r.as_dict()
        lines.append(
            f"J={rd['nodes']!s:12s} {rd['levi']:8s} "
            f"u=({', '.join(rd['orbits'])}) jE={rd['j_E_P']:12s} "
            f"O^v={rd['dual_orbit']:12s} lhs={rd['lhs_class']} "
            f"rhs={rd['rhs_class']} {'ok' if r.match is True else r.match}")
    lines.append(f"{len(rows)} rows, "
                 f"{sum(1 for r in rows if r.match is True)} matches")
    emit(doc, lines, args)
    return 0


def cmd_av(args):
    d = build(args.type)
    out = driver.av_map(d, base_seed=args.seed)
    rows = [{"dual_orbit": orbit_str(O), "class": name}
            for O, (label, name) in sorted(out.items(),
                                           key=lambda kv: orbit_str(kv[0]))]
    doc = {"command": "av", "group": d.name, "rows": rows}
    lines = [f"AV~({r['dual_orbit']}) = {r['class']}" for r in rows]
    emit(doc, lines, args)
    return 0


def cmd_strata(args):
    d = build(args.type)
    out = driver.strata(d, base_seed=args.seed)
    doc = {"command": "strata", "group": d.name,
           "rows": [s.as_dict() for s in out]}
    lines = []
    for s in out:
        lines.append(f"{s.w_rep.name:16s} -> {s.kl_class_name:16s} "
                     f"({len(s.sources)} sources)")
    lines.append(f"{len(out)} strata")
    emit(doc, lines, args)
    return 0


def cmd_predict(args):
    d = build(args.type)
    rows = driver.emit_exceptional(d)
    doc = {"command": "predict", "group": d.name,
           "rows": [r.as_dict() for r in rows]}
    lines = []
    for r in rows:
        rd = r.as_dict()
        pred = rd["rhs_class"] if rd["rhs_class"] is not None else \
            "(no table value)"
        lines.append(
            f"J={rd['nodes']!s:12s} {rd['levi']:8s} "
            f"u=({', '.join(rd['orbits']) or '0'}) E_P={rd['E_P']:16s} "
            f"jE={rd['j_E_P']:10s} O^v={rd['dual_orbit']:9s} "
            f"predicted {pred}")
    emit(doc, lines, args)
    return 0


def cmd_ingest(args):
    tab = tables.ingest(args.path, force=args.force)
    doc = {"command": "ingest", "kind": tab.kind, "group": tab.group,
           "checksum": tab.checksum, "rows": len(tab.rows)}
    lines = [f"ingested {tab.kind} table for {tab.group}: "
             f"{len(tab.rows)} rows, checksum {tab.checksum}"]
    emit(doc, lines, args)
    return 0


def cmd_selftest(args):
    checks = []

    def check(name, fn):
        fn()
        checks.append(name)

    def chartab(name):
        W = build_weyl(name)
        chars = W.characters()
        order = W.datum.weyl_order
        assert sum(ch.dim ** 2 for ch in chars) == order
        for i, a in enumerate(chars):
            for j, b in enumerate(chars):
                s = sum(c.size * a.values[k] * b.values[k]
                        for k, c in enumerate(W.classes))
                assert s == (order if i == j else 0)

    for name in ("A1", "A2", "A3", "B2", "C2", "B3", "D4", "G2"):
        check(f"chartab {name}", lambda n=name: chartab(n))
        check(f"fakedeg {name}", lambda n=name: _fd_identity(n))
    check("springer A3/B3/C3/D4/G2", _springer_suite)
    check("packaged G2 tables", _g2_tables_suite)
    check("kl A2 regular", lambda: _kl_smoke())
    check("verify A1", lambda: driver.verify_thm_kl(build("A1")))
    doc = {"command": "selftest", "passed": checks}
    lines = [f"ok {c}" for c in checks] + [f"{len(checks)} checks passed"]
    emit(doc, lines, args)
    return 0


def _fd_identity(name):
    from .invariants import b_invariant, graded_regular_identity
    W = build_weyl(name)
    lhs, rhs = graded_regular_identity(W)
    assert lhs == rhs
    triv = max(W.characters(), key=lambda c: sum(c.values))
    assert b_invariant(W, triv) == 0


def _springer_suite():
    from .invariants import b_invariant
    for name in ("A3", "B3", "C3", "D4", "G2"):
        d = build(name)
        W = build_weyl(name)
        chars = {c.label: c for c in W.characters()}
        seen = set()
        for O in nilpotent_orbits(d):
            lab = springer(d, O)
            assert lab not in seen, "Springer map not injective"
            seen.add(lab)
            if is_special(d, O):
                assert d_invariant(d, O) == b_invariant(W, chars[lab])


def _g2_tables_suite():
    for kind in ("orbits", "springer", "kl"):
        tab = tables.load_default(kind, "G2")
        assert tab is not None, f"packaged G2 {kind} table missing"


def _kl_smoke():
    rep = kl_map(build("A2"), ('A', (3,)))
    assert rep.class_name == "3"


# -- argument parsing ----------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def make_parser():
    p = _Parser(prog="cellmap", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, **kw)
        sp.set_defaults(fn=fn)
        sp.add_argument("--json", action="store_true",
                        help="emit canonical JSON")
        sp.add_argument("--out", default=None, help="write output to FILE")
        sp.add_argument("--tables", default=None,
                        help="directory of CELLMAP-TABLE files to register")
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="base sampling seed (default %(default)s)")
        return sp

    for name, fn in (("roots", cmd_roots), ("classes", cmd_classes),
                     ("chars", cmd_chars), ("fakedeg", cmd_fakedeg),
                     ("orbits", cmd_orbits), ("springer", cmd_springer)):
        sp = add(name, fn)
        sp.add_argument("type", help="root datum name, e.g. A3, B2, G2")

    sp = add("jinduce", cmd_jinduce)
    sp.add_argument("type")
    sp.add_argument("--levi", required=True,
                    help="comma list of affine nodes, e.g. 0,2 ('-' = Iwahori)")
    sp.add_argument("--rep", required=True,
                    help="factor character names joined by '*'")

    sp = add("kl", cmd_kl)
    sp.add_argument("type")
    sp.add_argument("--orbit", action="append",
                    help="orbit label, one per Levi factor")
    sp.add_argument("--parahoric", default=None,
                    help="comma list of affine nodes (default: L+G)")
    sp.add_argument("--trunc", type=int, default=None,
                    help="starting t-adic truncation")

    for name, fn in (("verify", cmd_verify), ("av", cmd_av),
                     ("strata", cmd_strata), ("predict", cmd_predict)):
        sp = add(name, fn)
        sp.add_argument("type")

    sp = add("ingest", cmd_ingest)
    sp.add_argument("path")
    sp.add_argument("--force", action="store_true",
                    help="replace an already-registered table")

    add("selftest", cmd_selftest)
    return p


def main(argv=None):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 1
    try:
        if args.tables:
            tables.register_dir(args.tables)
        return args.fn(args)
    except INCONCLUSIVE_ERRORS as e:
        sys.stderr.write(f"cellmap: inconclusive: {e}\n")
        return 4
    except VERIFY_ERRORS as e:
        sys.stderr.write(f"cellmap: verification failure: {e}\n")
        return 3
    except DATA_ERRORS as e:
        sys.stderr.write(f"cellmap: table/data error: {e}\n")
        return 2
    except USAGE_ERRORS as e:
        sys.stderr.write(f"cellmap: {e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
