"""End-to-end verification and assembly.

For a parahoric P with Levi L_P, the identity under test says that the
class attached to a generic lift of a special nilpotent L_P-orbit by the
parahoric Kazhdan-Lusztig map equals the full Kazhdan-Lusztig map of the
dual group evaluated on the dual-side orbit recovered from truncated
induction:

    KL_{G_dual}( Spr^{-1}( j_{W_P}^W Spr(O_P) ) )  ==  KL_G^P(O_P).

Classical types compute both sides with independent pipelines and any
mismatch is a hard failure; exceptional types emit the right-hand side
as a prediction (and, where an ingested table provides the full KL map,
use it for the dual-side lookup).

Built on top of the same identity: the cell map AV~ (dual orbit ->
class, injectivity enforced), the strata of G (fibers of the map
(pseudo-Levi, special orbit) -> j-induced character, with the class
function phi checked to be well defined and injective on labels), and
the two-parameter generalization mixing a pseudo-Levi of G with one of
the dual group.
"""

import itertools

from .errors import (CorrespondenceGap, ExternalTableRequired,
                     UnsupportedType, VerificationFailure)
from .invariants import b_invariant, j_induction
from .orbits import (d_invariant, is_special, nilpotent_orbits, orbit_str,
                     springer, springer_inverse)
from .puiseux import kl_map, kl_parahoric
from .rootdata import Parahoric, enumerate_parahorics, pairing, _idot
from .weyl import ReflectionSubgroup, SubChar, build_weyl
from . import tables

CLASSICAL = "ABCD"


# -- shared plumbing -----------------------------------------------------------


def levi_subgroup(parahoric):
    """The Levi's Weyl group as a reflection subgroup of the ambient W."""
    W = build_weyl(parahoric.datum.name)
    return ReflectionSubgroup(
        W, [(f.std.name, f.simples) for f in parahoric.factors])


def special_orbit_tuples(parahoric):
    """All tuples of special orbit labels, one per Levi factor, in
    deterministic (factor-wise enumeration) order."""
    per_factor = []
    for fac in parahoric.factors:
        per_factor.append([O for O in nilpotent_orbits(fac.std)
                           if is_special(fac.std, O)])
    return list(itertools.product(*per_factor))


def product_char(subgroup, factor_weyls, factor_chars):
    """The SubChar of `subgroup` whose restriction to each factor is the
    given irreducible of that factor's standard Weyl group."""
    classes = subgroup.classes()
    vals = []
    for cl in classes:
        v = 1
        for ch, ci in zip(factor_chars, cl.factor_classes):
            v *= ch.values[ci]
        vals.append(v)
    b = sum(b_invariant(w, ch) for w, ch in zip(factor_weyls, factor_chars))
    return SubChar(tuple(ch.name for ch in factor_chars), vals, b)


def springer_subchar(parahoric, subgroup, orbit_labels):
    """Spr(O_P) as a character of the Levi subgroup, factor by factor."""
    ws, chs = [], []
    for fac, lab in zip(parahoric.factors, orbit_labels):
        wstd = build_weyl(fac.std.name)
        chlabel = springer(fac.std, lab)
        table = {c.label: c for c in wstd.characters()}
        ws.append(wstd)
        chs.append(table[chlabel])
    return product_char(subgroup, ws, chs)


def transport_class_label(label):
    """Class labels under the canonical W(G) = W(G_dual) identification:
    the cycle-type conventions already coincide for every family."""
    return label


# -- theorem verification ------------------------------------------------------


class KLReport:
    """One row of the verification (or prediction) run."""

    def __init__(self, datum, nodes, levi_type, orbit_labels, e_p_name,
                 j_char, dual_orbit, rhs_class, rhs_name, lhs_class,
                 lhs_name, match, delta_check, diagnostics):
        self.datum_name = datum.name
        self.nodes = tuple(sorted(nodes))
        self.levi_type = levi_type
        self.orbit_labels = orbit_labels
        self.e_p_name = e_p_name
        self.j_char_name = j_char.name
        self.dual_orbit = dual_orbit
        self.rhs_class = rhs_class
        self.rhs_name = rhs_name
        self.lhs_class = lhs_class
        self.lhs_name = lhs_name
        self.match = match            # True / False / "predicted-only"
        self.delta_check = delta_check
        self.diagnostics = diagnostics

    def orbit_names(self):
        return tuple(orbit_str(o) for o in self.orbit_labels)

    def as_dict(self):
        return {
            "group": self.datum_name,
            "nodes": list(self.nodes),
            "levi": self.levi_type,
            "orbits": list(self.orbit_names()),
            "E_P": self.e_p_name,
            "j_E_P": self.j_char_name,
            "dual_orbit": orbit_str(self.dual_orbit),
            "rhs_class": self.rhs_name,
            "lhs_class": self.lhs_name,
            "match": self.match,
            "delta_check": self.delta_check,
            "diagnostics": self.diagnostics,
        }


def _rhs_of_row(datum, j_char):
    """(dual orbit, rhs class label, rhs class name, diagnostics) from
    the j-induced character, on the dual datum."""
    dual = datum.dual()
    dual_orbit = springer_inverse(dual, transport_class_label(j_char.label))
    if dual.family in CLASSICAL:
        rep = kl_map(dual, dual_orbit)
        diag = {"rhs_seeds": rep.seeds, "rhs_K": rep.truncation,
                "rhs_retries": rep.retries, "rhs_delta": rep.delta}
        return dual_orbit, rep.class_label, rep.class_name, diag
    name = tables.kl_value(dual.name, dual_orbit[1])
    if name is None:
        return dual_orbit, None, None, {"rhs_source": "table:missing"}
    W = build_weyl(dual.name)
    cls = W.class_by_name(name)
    return dual_orbit, cls.label, cls.name, {"rhs_source": "table"}


def verify_thm_kl(datum, parahorics=None, budget=None, base_seed=0,
                  progress=None):
    """All (parahoric, special Levi orbit) rows.  Classical: both sides
    computed independently; a mismatch raises VerificationFailure.
    Exceptional: rows carry the predicted right-hand side only."""
    classical = datum.family in CLASSICAL
    if parahorics is None:
        parahorics = enumerate_parahorics(datum)
    kwargs = {} if budget is None else {"budget": budget}
    reports = []
    for P in parahorics:
        sub = levi_subgroup(P)
        for labels in special_orbit_tuples(P):
            e_p = springer_subchar(P, sub, labels)
            j_char = j_induction(sub, e_p)
            dual_orbit, rhs_class, rhs_name, diag = _rhs_of_row(datum, j_char)
            if classical:
                lhs = kl_parahoric(P, labels, base_seed=base_seed, **kwargs)
                diag.update({"lhs_seeds": lhs.seeds, "lhs_K": lhs.truncation,
                             "lhs_retries": lhs.retries,
                             "lhs_delta": lhs.delta})
                match = lhs.class_label == rhs_class
                delta_check = lhs.delta == lhs.d_orbit
                row = KLReport(datum, P.nodes, P.levi_type(), labels,
                               e_p.name, j_char, dual_orbit, rhs_class,
                               rhs_name, lhs.class_label, lhs.class_name,
                               match, delta_check, diag)
                if not match:
                    raise VerificationFailure(
                        f"{datum.name} J={sorted(P.nodes)} orbit "
                        f"{row.orbit_names()}: parahoric side gave "
                        f"{lhs.class_name}, dual side gave {rhs_name}")
            else:
                row = KLReport(datum, P.nodes, P.levi_type(), labels,
                               e_p.name, j_char, dual_orbit, rhs_class,
                               rhs_name, None, None, "predicted-only",
                               None, diag)
            reports.append(row)
            if progress is not None:
                progress(row)
    return reports


# -- the cell map --------------------------------------------------------------


def av_map(datum, budget=None, base_seed=0):
    """Cell label (= dual nilpotent orbit) -> class of W, via the full
    Kazhdan-Lusztig map of the dual group.  Injectivity is enforced."""
    dual = datum.dual()
    kwargs = {} if budget is None else {"budget": budget}
    out = {}
    if dual.family in CLASSICAL:
        for O in nilpotent_orbits(dual):
            rep = kl_map(dual, O, base_seed=base_seed, **kwargs)
            out[O] = (rep.class_label, rep.class_name)
    else:
        W = build_weyl(dual.name)
        for O in nilpotent_orbits(dual):
            name = tables.kl_value(dual.name, O[1])
            if name is None:
                continue
            cls = W.class_by_name(name)
            out[O] = (cls.label, cls.name)
    seen = {}
    for O, (label, name) in out.items():
        if label in seen:
            raise VerificationFailure(
                f"AV~ not injective on {dual.name}: orbits "
                f"{orbit_str(seen[label])} and {orbit_str(O)} both map "
                f"to {name}")
        seen[label] = O
    return out


# -- strata --------------------------------------------------------------------


class StratumLabel:
    """One j-induction label with all its (pseudo-Levi, orbit) sources
    and the class of W attached to any of them (phi)."""

    def __init__(self, w_rep, sources, kl_class, kl_class_name):
        self.w_rep = w_rep
        self.sources = sources
        self.kl_class = kl_class
        self.kl_class_name = kl_class_name

    def as_dict(self):
        return {
            "label": self.w_rep.name,
            "sources": [{"nodes": list(n), "orbits": list(o)}
                        for n, o in self.sources],
            "kl_class": self.kl_class_name,
        }


def strata(datum, budget=None, base_seed=0, reports=None):
    """Strata of G: group the (pseudo-Levi, special orbit) pairs by their
    j-induced character; attach to each label the parahoric KL class of
    any source and assert it does not depend on the source; assert the
    labels-to-classes map phi is injective (fibers of phi = strata)."""
    if reports is None:
        reports = verify_thm_kl(datum, budget=budget, base_seed=base_seed)
    W = build_weyl(datum.name)
    chars = {c.label: c for c in W.characters()}
    by_label = {}
    for row in reports:
        cls = row.lhs_class if row.lhs_class is not None else row.rhs_class
        name = row.lhs_name if row.lhs_name is not None else row.rhs_name
        if cls is None:
            continue
        key = row.j_char_name
        src = (row.nodes, row.orbit_names())
        if key not in by_label:
            by_label[key] = (row.j_char_name, [src], cls, name)
        else:
            _, sources, cls0, name0 = by_label[key]
            if cls0 != cls:
                raise VerificationFailure(
                    f"phi not well defined on {datum.name}: label {key} "
                    f"gets class {name0} from {by_label[key][1][0]} but "
                    f"{name} from {src}")
            sources.append(src)
    out = []
    for key in sorted(by_label):
        jname, sources, cls, name = by_label[key]
        w_rep = next(c for c in W.characters() if c.name == jname)
        out.append(StratumLabel(w_rep, sources, cls, name))
    by_class = {}
    for s in out:
        if s.kl_class in by_class:
            raise VerificationFailure(
                f"strata grouping broken on {datum.name}: labels "
                f"{by_class[s.kl_class].w_rep.name} and {s.w_rep.name} "
                f"share the class {s.kl_class_name}")
        by_class[s.kl_class] = s
    return out


def _s_set(datum, budget=None, base_seed=0):
    """All classes hit by some parahoric KL value, over every Levi orbit
    (special or not); orbits on which the oracle gives up within budget
    are skipped and reported."""
    from .errors import InconclusiveSample
    hit = set()
    skipped = []
    for P in enumerate_parahorics(datum):
        per_factor = [nilpotent_orbits(f.std) for f in P.factors]
        for labels in itertools.product(*per_factor):
            kwargs = {} if budget is None else {"budget": budget}
            try:
                rep = kl_parahoric(P, labels, base_seed=base_seed, **kwargs)
            except InconclusiveSample:
                skipped.append((tuple(sorted(P.nodes)),
                                tuple(orbit_str(o) for o in labels)))
                continue
            hit.add(rep.class_label)
    return hit, skipped


def s_sets_match(datum, budget=None, base_seed=0):
    """The set of classes hit by the parahoric KL maps (all parahorics,
    all Levi orbits) is the same for G and for its dual under the label
    identification.  Returns (common set, skipped rows); raises on
    mismatch."""
    s_g, skip_g = _s_set(datum, budget=budget, base_seed=base_seed)
    s_d, skip_d = _s_set(datum.dual(), budget=budget, base_seed=base_seed)
    s_d = {transport_class_label(c) for c in s_d}
    if s_g != s_d and not (skip_g or skip_d):
        raise VerificationFailure(
            f"S_G != S_G_dual for {datum.name}: only in G "
            f"{sorted(s_g - s_d)}, only in dual {sorted(s_d - s_g)}")
    return s_g, skip_g + skip_d


# -- the two-parameter generalization ------------------------------------------


def _coroot(alpha):
    n = _idot(alpha, alpha)
    assert all((2 * c) % n == 0 for c in alpha), alpha
    return tuple(2 * c // n for c in alpha)


def _component_split(roots):
    """Connected components of a set of roots under non-orthogonality."""
    pool = list(roots)
    comps = []
    while pool:
        comp = [pool.pop()]
        changed = True
        while changed:
            changed = False
            for a in list(pool):
                if any(_idot(a, b) != 0 for b in comp):
                    comp.append(a)
                    pool.remove(a)
                    changed = True
        comps.append(comp)
    return sorted(comps, key=lambda c: sorted(c))


def _simple_system(roots):
    """Indecomposable elements of a positivity-selected half."""
    if not roots:
        return []
    dim = len(roots[0])
    ref = None
    for cand in itertools.product((1, 3, 7, 13, 29), repeat=dim):
        if all(sum(a * b for a, b in zip(r, cand)) != 0 for r in roots):
            ref = cand
            break
    assert ref is not None, "no generic linear form found"
    positive = [r for r in roots
                if sum(a * b for a, b in zip(r, ref)) > 0]
    rootset = set(roots)
    simples = []
    for r in positive:
        if not any(tuple(x - y for x, y in zip(r, s)) in rootset
                   for s in positive if s != r):
            simples.append(r)
    return sorted(simples)


def common_subgroup_factors(ambient, px_roots, qz_coroot_roots):
    """Components of the root subsystem common to a pseudo-Levi of G and
    (via the coroot identification) a pseudo-Levi of the dual group,
    matched against standard data.  Returns a list of
    (std_name, simples) pairs in ambient coordinates."""
    from .rootdata import _match_component
    common = [a for a in px_roots if _coroot(a) in qz_coroot_roots]
    factors = []
    for comp in _component_split(common):
        simples = _simple_system(comp)
        std, ordered = _match_component(ambient, simples)
        factors.append((std.name, tuple(ordered)))
    return factors


class GeneralizedRow:
    def __init__(self, x_nodes, z_nodes, e_name, lhs_name, rhs_name, match):
        self.x_nodes = tuple(sorted(x_nodes))
        self.z_nodes = tuple(sorted(z_nodes))
        self.e_name = e_name
        self.lhs_name = lhs_name
        self.rhs_name = rhs_name
        self.match = match

    def as_dict(self):
        return {"x": list(self.x_nodes), "zeta": list(self.z_nodes),
                "E": self.e_name, "lhs_class": self.lhs_name,
                "rhs_class": self.rhs_name, "match": self.match}


def _side_orbit_labels(parahoric, comp_factors, comp_chars):
    """Push a special character of the common subgroup through truncated
    induction into each Levi factor of `parahoric` and read off the
    corresponding special orbit labels, factor by factor."""
    labels = []
    for fac in parahoric.factors:
        wstd = build_weyl(fac.std.name)
        mine = []
        for (cname, csimples), cch in zip(comp_factors, comp_chars):
            if all(r in fac.subsystem for r in csimples):
                std_simples = tuple(
                    tuple(sum(c * s[i] for c, s in
                              zip(fac.expans[r], fac.std.simple_roots))
                          for i in range(fac.std.ambient_dim))
                    for r in csimples)
                mine.append(((cname, std_simples), cch))
        sub = ReflectionSubgroup(wstd, [f for f, _ in mine])
        if mine:
            ws = [build_weyl(f[0]) for f, _ in mine]
            chs = [c for _, c in mine]
            e = product_char(sub, ws, chs)
        else:
            e = SubChar((), [1], 0)
        j_char = j_induction(sub, e)
        labels.append(springer_inverse(fac.std, j_char.label))
    return tuple(labels)


def generalized_identity(datum, x_nodes, z_nodes, budget=None, base_seed=0):
    """Both sides of the two-parameter identity for every special
    character E of the common subgroup W_{x,zeta}: the zeta-side
    parahoric KL map of the dual group on the orbit induced from E must
    agree with the x-side parahoric KL map of G.  Returns the rows;
    mismatch raises, incompatible pair raises UnsupportedType."""
    if datum.family not in CLASSICAL:
        raise UnsupportedType(
            f"two-parameter identity needs the classical oracle, got "
            f"{datum.name}")
    dual = datum.dual()
    P = Parahoric(datum, x_nodes)
    Q = Parahoric(dual, z_nodes)
    comp_factors = common_subgroup_factors(
        datum, P.levi_roots, set(Q.levi_roots))
    # the same components on the dual side, via coroots
    dual_factors = []
    for cname, csimples in comp_factors:
        from .rootdata import _match_component
        dsimples = _simple_system([_coroot(r) for r in csimples])
        # coroots of a simple system need not be simple for the same
        # order; rebuild from the full dual component
        dcomp = [_coroot(r) for r in _component_roots(datum, csimples)]
        std, ordered = _match_component(dual, _simple_system(dcomp))
        dual_factors.append((std.name, tuple(ordered)))
    kwargs = {} if budget is None else {"budget": budget}
    rows = []
    specials = []
    for cname, _ in comp_factors:
        std = build_weyl(cname).datum
        specials.append([O for O in nilpotent_orbits(std)
                         if is_special(std, O)])
    for combo in itertools.product(*specials):
        chs = []
        for (cname, _), lab in zip(comp_factors, combo):
            wstd = build_weyl(cname)
            table = {c.label: c for c in wstd.characters()}
            chs.append(table[springer(wstd.datum, lab)])
        x_labels = _side_orbit_labels(P, comp_factors, chs)
        z_labels = _side_orbit_labels(Q, dual_factors, chs)
        lhs = kl_parahoric(Q, z_labels, base_seed=base_seed, **kwargs)
        rhs = kl_parahoric(P, x_labels, base_seed=base_seed, **kwargs)
        match = transport_class_label(lhs.class_label) == rhs.class_label
        e_name = "*".join(ch.name for ch in chs) or "triv"
        rows.append(GeneralizedRow(x_nodes, z_nodes, e_name,
                                   lhs.class_name, rhs.class_name, match))
        if not match:
            raise VerificationFailure(
                f"two-parameter identity fails on {datum.name} "
                f"x={sorted(x_nodes)} zeta={sorted(z_nodes)} E={e_name}: "
                f"zeta side {lhs.class_name}, x side {rhs.class_name}")
    return rows


def _component_roots(datum, simples):
    """All ambient roots in the span of the given simple system."""
    from . import ratlin
    rows = [list(map(int, s)) for s in simples]
    out = []
    for rt in datum.roots:
        aug = [list(map(int, r)) for r in rows] + [list(map(int, rt))]
        if ratlin.rank([[c for c in row] for row in aug]) == len(rows):
            out.append(rt)
    return out


# -- exceptional emission ------------------------------------------------------


def emit_exceptional(datum, budget=None):
    """Predicted parahoric KL values for an exceptional group, one row
    per (parahoric, special Levi orbit), with all intermediates.  Rows
    whose dual-side value is absent from the ingested KL table carry
    rhs_class None and are reported as gaps, not silently dropped."""
    if datum.family in CLASSICAL:
        raise UnsupportedType(
            f"{datum.name} is classical; run the verification instead")
    return verify_thm_kl(datum, budget=budget)
