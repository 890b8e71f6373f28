"""Newton-polygon branch analysis of truncated characteristic polynomials
and the Kazhdan-Lusztig maps it drives.

The Cartan type (a conjugacy class of the Weyl group) of a regular
semisimple loop-algebra element is read off from eigenvalue branches:
slopes and residual polynomials of the Newton polygon, with residual
root structure analysed only through squarefree decomposition (no
algebraic-number arithmetic).  kl_parahoric samples 8 deterministic
generic elements, requires a unanimous class, re-checks at truncation
K+2, and certifies delta = d_{O_P} on special inputs.
"""

from fractions import Fraction
from functools import lru_cache

from . import looplattice as ll
from .errors import (DegenerateSample, DeltaMismatch, FormViolation,
                     InconclusiveSample, InsufficientTruncation,
                     UnsupportedType)
from .orbits import d_invariant, is_special, orbit_str
from .rootdata import Parahoric
from .trunclaurent import TruncLaurent, poly_derivative, resultant_valuation
from .weyl import build_weyl

SEEDS = 8
DEFAULT_BOUND = 7
DEFAULT_BUDGET = 5


# -- Newton polygon ------------------------------------------------------------


def newton_segments(p):
    """Lower-hull segments of a monic polynomial over TruncLaurent.
    Yields (i0, v0, slope, length) with slope = branch valuation a/b > 0
    ordering by decreasing slope (left to right on the polygon)."""
    n = len(p) - 1
    pts = []
    for i, c in enumerate(p):
        if c.coeffs:
            pts.append((i, c.valuation()))
        elif c.prec is not None:
            pts.append((i, None, c.prec))  # unknown: val >= prec
    known = [(i, v) for t in pts for (i, v) in [t[:2]] if v is not None]
    if not known or known[0][0] != 0:
        raise InsufficientTruncation(
            "constant coefficient is zero to tracked precision; "
            "regular-semisimplicity not certifiable")
    # lower convex hull over known points (monotone chain)
    hull = []
    for pt in known:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    assert hull[-1][0] == n and hull[-1][1] == 0, "polynomial not monic"
    # certify: no unknown coefficient can cut below the hull
    def hull_at(i):
        for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
            if x1 <= i <= x2:
                return y1 + Fraction(y2 - y1, x2 - x1) * (i - x1)
        raise AssertionError(i)
    for t in pts:
        if t[1] is None and t[0] < n:
            if t[2] <= hull_at(t[0]):
                raise InsufficientTruncation(
                    "hull-determining coefficient unknown at tracked "
                    "precision")
    segs = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        s = Fraction(y1 - y2, x2 - x1)
        if s <= 0:
            raise DegenerateSample(
                "non-positive Newton slope: element not topologically "
                "nilpotent")
        segs.append((x1, y1, s, x2 - x1))
    return segs


def residual_poly(p, i0, v0, slope, length):
    """Residual polynomial R(u) of a polygon segment; R(0) != 0 and
    deg R = length / ramification."""
    a, b = slope.numerator, slope.denominator
    assert length % b == 0
    k = length // b
    out = []
    for j in range(k + 1):
        out.append(p[i0 + j * b].coeff(v0 - j * a))
    assert out[0] != 0 and out[-1] != 0
    return out


# -- exact polynomial helpers over Q ------------------------------------------


def _q_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _q_deriv(f):
    return [Fraction(i) * f[i] for i in range(1, len(f))]


def _q_divmod(f, g):
    f = [Fraction(c) for c in f]
    g = [Fraction(c) for c in g]
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 0)
    while len(f) >= len(g) and _q_trim(f):
        if len(f) < len(g):
            break
        c = f[-1] / g[-1]
        d = len(f) - len(g)
        q[d] = c
        for i in range(len(g)):
            f[d + i] -= c * g[i]
        f.pop()
    return q, f


def _q_gcd(f, g):
    f, g = list(f), list(g)
    _q_trim(f)
    _q_trim(g)
    while g:
        _, r = _q_divmod(f, g)
        f, g = g, _q_trim(r)
    if f:
        lead = Fraction(f[-1])
        f = [Fraction(c) / lead for c in f]
    return f


def squarefree_decomposition(f):
    """Yun's algorithm: returns [A_1, A_2, ...] with f ~ prod A_k^k,
    each A_k squarefree, pairwise coprime."""
    f = [Fraction(c) for c in f]
    _q_trim(f)
    assert f
    lead = f[-1]
    f = [c / lead for c in f]
    if len(f) == 1:
        return []
    fp = _q_deriv(f)
    a = _q_gcd(f, fp)
    b, r = _q_divmod(f, a)
    assert not _q_trim(r)
    c, r = _q_divmod(fp, a)
    assert not _q_trim(r)
    d = _q_trim([ci - bi for ci, bi in
                 zip(c + [Fraction(0)] * len(b), _q_deriv(b) +
                     [Fraction(0)] * len(c))])
    out = []
    while len(b) > 1:
        a_k = _q_gcd(b, d if d else [Fraction(0)])
        if not a_k:
            a_k = list(b)
        out.append(a_k)
        b2, r = _q_divmod(b, a_k)
        assert not _q_trim(r)
        c2, r = _q_divmod(d, a_k) if d else ([Fraction(0)], [])
        assert not _q_trim(list(r))
        b = _q_trim(b2)
        d = _q_trim([ci - bi for ci, bi in
                     zip(c2 + [Fraction(0)] * len(b), _q_deriv(b) +
                         [Fraction(0)] * len(c2))])
    return out


def _rational_roots(f):
    """All rational roots of f with multiplicities ignored (f squarefree
    callers); returns list of Fractions."""
    f = [Fraction(c) for c in f]
    _q_trim(f)
    den = 1
    for c in f:
        den = den * c.denominator // _gcd_int(den, c.denominator)
    g = [int(c * den) for c in f]
    cont = 0
    for c in g:
        cont = _gcd_int(cont, abs(c))
    g = [c // cont for c in g]
    while g and g[0] == 0:
        g.pop(0)  # root 0 never occurs in residual polynomials
    roots = []
    a0, an = abs(g[0]), abs(g[-1])
    for pnum in _divisors(a0):
        for qden in _divisors(an):
            for sgn in (1, -1):
                r = Fraction(sgn * pnum, qden)
                if _q_eval(f, r) == 0 and r not in roots:
                    roots.append(r)
    return roots


def _q_eval(f, x):
    v = Fraction(0)
    for c in reversed(f):
        v = v * x + c
    return v


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a if a else 1


def _divisors(n):
    n = abs(n)
    out = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(out + [n // d for d in out]))


# -- Cartan type extraction ----------------------------------------------------


def cartan_type_A(p, depth=None):
    """Partition of deg p: ramification indices of the eigenvalue
    branches (= cycle type of the splitting symmetric-group class)."""
    if depth is None:
        depth = len(p) + 1
    parts = _branch_parts_A(p, Fraction(0), depth)
    assert sum(parts) == len(p) - 1
    return tuple(sorted(parts, reverse=True))


def _branch_parts_A(p, min_slope, depth):
    if depth < 0:
        raise DegenerateSample("Newton-Puiseux recursion depth exceeded")
    parts = []
    for (i0, v0, slope, length) in newton_segments(p):
        if slope <= min_slope:
            continue
        a, b = slope.numerator, slope.denominator
        res = residual_poly(p, i0, v0, slope, length)
        dec = squarefree_decomposition(res)
        parts.extend([b] * (len(dec[0]) - 1 if dec else 0))
        for mult, a_k in enumerate(dec[1:], start=2):
            if len(a_k) <= 1:
                continue
            if b != 1:
                raise DegenerateSample(
                    "repeated residual root on a ramified segment")
            roots = _rational_roots(a_k)
            if len(roots) != len(a_k) - 1:
                raise DegenerateSample(
                    "repeated residual factor with no rational root")
            for u0 in roots:
                shifted = _substitute(p, u0, a)
                sub = _branch_parts_A(shifted, slope, depth - 1)
                if sum(sub) != mult:
                    raise DegenerateSample(
                        "branch recount mismatch after recursion")
                parts.extend(sub)
    return parts


def _substitute(p, u0, a):
    """p(x) -> p(y + u0 t^a)."""
    n = len(p) - 1
    out = [TruncLaurent.ZERO] * (n + 1)
    # binomials
    binom = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        binom[i][0] = 1
        for j in range(1, i + 1):
            binom[i][j] = binom[i - 1][j - 1] + binom[i - 1][j]
    for i, c in enumerate(p):
        power = TruncLaurent.ONE
        for j in range(i, -1, -1):
            # term c * C(i, j) * (u0 t^a)^{i-j} y^j
            out[j] = out[j] + c * power.scale(binom[i][j])
            if j > 0:
                power = power * TruncLaurent.monomial(u0, a)
    return out


def cartan_type_BCD(p, family, rank):
    """Signed cycle type (positive cycles; negative cycles) of the
    splitting Weyl-group class, from negation-pairing of branches."""
    if family == 'B':
        assert p[0].is_known_zero() and p[0].prec is None
        p = p[1:]
    pos, neg = [], []
    for (i0, v0, slope, length) in newton_segments(p):
        b = slope.denominator
        res = residual_poly(p, i0, v0, slope, length)
        dec = squarefree_decomposition(res)
        d1 = len(dec[0]) - 1 if dec else 0
        d2 = len(dec[1]) - 1 if len(dec) > 1 else 0
        if any(len(a_k) > 1 for a_k in dec[2:]):
            raise DegenerateSample(
                "residual root of multiplicity >= 3 in a paired family")
        if b % 2 == 0:
            neg.extend([b // 2] * d1)
            pos.extend([b] * d2)
        else:
            if d2:
                raise DegenerateSample(
                    "repeated residual root on an odd-ramification "
                    "segment of a paired family")
            # negation symmetry: R(u) = S(u^2), roots pair u <-> -u
            for j in range(1, len(res), 2):
                if res[j] != 0:
                    raise FormViolation(
                        "residual polynomial not negation-symmetric")
            assert d1 % 2 == 0
            pos.extend([b] * (d1 // 2))
    total = sum(pos) + sum(neg)
    if total != rank:
        raise FormViolation(
            f"branch pairing lost eigenvalues: {total} != {rank}")
    if family == 'D' and len(neg) % 2 == 1:
        raise FormViolation("odd number of negative cycles in type D")
    pos = tuple(sorted(pos, reverse=True))
    neg = tuple(sorted(neg, reverse=True))
    if family == 'D':
        tag = ''
        if not neg and all(c % 2 == 0 for c in pos):
            tag = '+'  # placeholder; resolved against the matrix by
            # _resolve_split_tag when one is available
        return ('D', pos, neg, tag)
    return ('BC', pos, neg)


def cartan_type(datum, p):
    if datum.family == 'A':
        return ('A', cartan_type_A(p))
    return cartan_type_BCD(p, datum.family, datum.rank)


# -- split-class tags in type D -------------------------------------------------
#
# The two W(D_n) classes sharing an all-even positive cycle type are told
# apart by a Pfaffian invariant of the sampled matrix itself: the sign
#
#     pf(S gamma)_lead / prod_s (-1)^{deg A2_s} A2_s(0)
#
# (product over Newton segments, A2_s the monic squarefree part of doubled
# residual roots) is constant under SO-conjugation and loop rescaling and
# flips under the outer automorphism O \ SO.  The tag is '+' exactly when
# the sign agrees with that of an exact companion-block representative
# whose splitting class is the plain block-cycle representative used to
# anchor the '+' label in the Weyl-group class table.

_SPLIT_SCALARS = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43)


def _segment_root_product(p):
    """prod over Newton segments of (-1)^{deg A2} A2(0), A2 monic: the
    product of all doubled residual roots of the characteristic
    polynomial."""
    prod = Fraction(1)
    for (i0, v0, slope, length) in newton_segments(p):
        res = residual_poly(p, i0, v0, slope, length)
        dec = squarefree_decomposition(res)
        if len(dec) > 1 and len(dec[1]) > 1:
            a2 = dec[1]
            prod *= Fraction((-1) ** (len(a2) - 1)) * a2[0]
    return prod


def _pfaffian_ratio(form, mat, p):
    from .trunclaurent import pfaffian_tl
    m = len(mat)
    a = [[TruncLaurent.ZERO] * m for _ in range(m)]
    for i in range(m):
        for k in range(m):
            if form[i][k]:
                for j in range(m):
                    a[i][j] = a[i][j] + mat[k][j].scale(form[i][k])
    pf = pfaffian_tl(a)
    ratio = Fraction(pf.leading()) / _segment_root_product(p)
    if ratio not in (1, -1):
        raise DegenerateSample(
            f"pfaffian invariant ratio {ratio} is not a sign")
    return int(ratio)


@lru_cache(maxsize=None)
def _plain_reference_ratio(name, seg_key):
    """Pfaffian invariant of the exact companion-block element whose
    splitting class is the plain representative of the '+' class, with
    one positive b-cycle of branch valuation a/b per (a, b) in seg_key."""
    rep = ll.defining_rep(name)
    datum = rep.datum
    m = rep.m
    n = m // 2
    assert len(seg_key) <= len(_SPLIT_SCALARS)
    zero = TruncLaurent.ZERO
    mat = [[zero] * m for _ in range(m)]
    pos = 0
    for (a, b), c in zip(seg_key, _SPLIT_SCALARS):
        for i in range(b - 1):
            mat[pos + i + 1][pos + i] = TruncLaurent.ONE
        mat[pos][pos + b - 1] = TruncLaurent.monomial(c, a)
        pos += b
    assert pos == n
    for i in range(n, m):
        for j in range(n, m):
            e = mat[m - 1 - j][m - 1 - i]
            if not e.is_known_zero():
                mat[i][j] = -e
    from .trunclaurent import char_poly_tl
    p = ll.enforce_structure(datum, char_poly_tl(mat))
    label = cartan_type_BCD(p, 'D', n)
    cycles = tuple(sorted((b for _, b in seg_key), reverse=True))
    assert label == ('D', cycles, (), '+'), label
    return _pfaffian_ratio(rep.form, mat, p)


def _resolve_split_tag(datum, mat, p, label):
    segs = []
    for (i0, v0, slope, length) in newton_segments(p):
        res = residual_poly(p, i0, v0, slope, length)
        dec = squarefree_decomposition(res)
        d2 = len(dec[1]) - 1 if len(dec) > 1 else 0
        segs.extend([(slope.numerator, slope.denominator)] * d2)
    seg_key = tuple(sorted(segs))
    rep = ll.defining_rep(datum.name)
    sample = _pfaffian_ratio(rep.form, mat, p)
    ref = _plain_reference_ratio(datum.name, seg_key)
    tag = '+' if sample == ref else '-'
    return ('D', label[1], label[2], tag)


# -- discriminant valuation and delta ------------------------------------------


def val_delta(datum, p):
    """t-adic valuation of the Lie-algebra discriminant, recovered from
    the characteristic polynomial per family (the lambda <-> -lambda
    pairings that are not roots are discarded)."""
    fam = datum.family
    if fam == 'A':
        return Fraction(resultant_valuation(p, poly_derivative(p)))
    if fam == 'B':
        q = p[1:]
        vd = resultant_valuation(q, poly_derivative(q))
        return Fraction(vd + q[0].valuation(), 2)
    vd = resultant_valuation(p, poly_derivative(p))
    v0 = p[0].valuation()
    if fam == 'C':
        return Fraction(vd + v0, 2)
    return Fraction(vd - v0, 2)


class DeltaReport:
    def __init__(self, val_disc, class_label, delta, shallow):
        self.val_disc = val_disc
        self.class_label = class_label
        self.delta = delta
        self.shallow = shallow


def discriminant_delta(datum, p, class_label):
    vd = val_delta(datum, p)
    W = build_weyl(datum.name)
    cls = _class_by_label(W, class_label)
    delta = Fraction(vd - (datum.rank - cls.fixed_dim), 2)
    assert delta >= 0 and (2 * delta).denominator == 1
    if delta.denominator == 1:
        delta = int(delta)
    return DeltaReport(vd, class_label, delta, shallow=False)


@lru_cache(maxsize=None)
def _class_lookup(name):
    W = build_weyl(name)
    return {c.label: c for c in W.classes}


def _class_by_label(W, label):
    table = _class_lookup(W.datum.name)
    if label not in table:
        raise FormViolation(
            f"extracted class label {label} is not a class of "
            f"W({W.datum.name})")
    return table[label]


# -- the Kazhdan-Lusztig maps --------------------------------------------------


class KLReport:
    """Accepted unanimous oracle answer for one (parahoric, orbit)."""

    def __init__(self, datum, nodes, orbit_labels, class_label, class_name,
                 val_disc, delta, special, d_orbit, truncation, bound,
                 retries, seeds):
        self.datum_name = datum.name
        self.nodes = tuple(sorted(nodes))
        self.orbit_labels = orbit_labels
        self.class_label = class_label
        self.class_name = class_name
        self.val_disc = val_disc
        self.delta = delta
        self.special = special
        self.d_orbit = d_orbit
        self.truncation = truncation
        self.bound = bound
        self.retries = retries
        self.seeds = seeds


def _classify_once(datum, lift, K, seed, bound):
    mat = ll.sample_generic(lift, K, seed, bound)
    p = ll.enforce_structure(datum, ll.char_poly_t(mat))
    label = cartan_type(datum, p)
    if label[0] == 'D' and label[3] == '+':
        label = _resolve_split_tag(datum, mat, p, label)
    vd = val_delta(datum, p)
    return label, vd


def levi_orbit_data(parahoric, orbit_labels):
    """(is_special, d_invariant) of a levi orbit given factorwise."""
    special = True
    dsum = 0
    for fac, label in zip(parahoric.factors, orbit_labels):
        special = special and is_special(fac.std, label)
        dsum += d_invariant(fac.std, label)
    return special, dsum


def kl_parahoric(parahoric, orbit_labels, budget=DEFAULT_BUDGET,
                 base_seed=0, k_start=None):
    """The parahoric Kazhdan-Lusztig map: conjugacy class of W attached
    to a generic element of e_P + Lie P+, by 8-seed unanimous sampling
    with truncation-stability re-check."""
    datum = parahoric.datum
    if datum.family not in "ABCD":
        raise UnsupportedType(
            f"no sampling oracle for exceptional type {datum.name}")
    orbit_labels = tuple(orbit_labels)
    lift = ll.lift_nilpotent(parahoric, orbit_labels)
    K = ll.k_min(datum) if k_start is None else int(k_start)
    bound = DEFAULT_BOUND
    special, d_orb = levi_orbit_data(parahoric, orbit_labels)
    failures = []
    for attempt in range(budget):
        seeds = [f"{base_seed}.{attempt}.{i}" for i in range(SEEDS)]
        try:
            answers = [_classify_once(datum, lift, K, s, bound)
                       for s in seeds]
            stable = [_classify_once(datum, lift, K + 2, s, bound)
                      for s in seeds]
        except (DegenerateSample, InsufficientTruncation) as exc:
            failures.append(str(exc))
            bound *= 2
            continue
        if len(set(answers)) == 1 and answers == stable:
            label, vd = answers[0]
            W = build_weyl(datum.name)
            cls = _class_by_label(W, label)
            delta = Fraction(vd - (datum.rank - cls.fixed_dim), 2)
            if delta.denominator == 1:
                delta = int(delta)
            if special and delta != d_orb:
                raise DeltaMismatch(
                    f"delta = {delta} but d_O = {d_orb} for special orbit "
                    f"({', '.join(orbit_str(o) for o in orbit_labels)}) at "
                    f"P = J{sorted(parahoric.nodes)} of {datum.name}")
            return KLReport(datum, parahoric.nodes, orbit_labels, label,
                            cls.name, vd, delta, special, d_orb, K, bound,
                            attempt, seeds)
        failures.append("seed disagreement or truncation instability")
        bound *= 2
    raise InconclusiveSample(
        f"no unanimous classification within {budget} attempts for "
        f"({', '.join(orbit_str(o) for o in orbit_labels)}) at "
        f"P = J{sorted(parahoric.nodes)} of {datum.name}: {failures}")


def kl_map(datum, orbit_label, budget=DEFAULT_BUDGET, base_seed=0,
           k_start=None):
    """KL map of the full loop group: kl_parahoric at P = L+G."""
    P = Parahoric(datum, frozenset(range(1, datum.rank + 1)))
    assert len(P.factors) == 1
    return kl_parahoric(P, (orbit_label,), budget=budget,
                        base_seed=base_seed, k_start=k_start)
