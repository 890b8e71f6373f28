"""Weyl groups by explicit enumeration.

Elements are stored as permutations of the root list (faithful, fast to
compose and hash); rational matrices on the ambient space are
reconstructed on demand.  Conjugacy classes carry canonical labels:
cycle types (A), signed cycle types (B/C), signed cycle types with a
split tag (D), and order+letter names for G2/F4.
"""

import itertools
import math
from fractions import Fraction
from functools import lru_cache

from . import chartables, ratlin
from .errors import ExternalTableRequired, GroupTooLarge
from .partitions import normalize
from .rootdata import WEYL_ORDER_BOUND, build, pairing


def _label_str(label):
    """Canonical string form of a class or character label."""
    kind = label[0]
    if kind == 'A':
        return ",".join(map(str, label[1])) or "1"

    def side(p):
        return ",".join(map(str, p))

    if kind == 'BC':
        return f"{side(label[1])};{side(label[2])}"
    if kind == 'D':
        return f"{side(label[1])};{side(label[2])}" + \
            (f"|{label[3]}" if label[3] else "")
    if kind == 'Dchar':
        pair, tag = label[1], label[2]
        return "{" + side(pair[0]) + "|" + side(pair[1]) + "}" + tag
    if kind == 'X':
        return label[1]
    raise ValueError(label)


class ConjClass:
    def __init__(self, label, size, order, rep, word, refl_charpoly,
                 fixed_dim, trace):
        self.label = label
        self.name = _label_str(label) if label is not None else ""
        self.size = size
        self.order = order
        self.rep = rep
        self.word = word
        self.refl_charpoly = refl_charpoly
        self.fixed_dim = fixed_dim
        self.trace = trace

    def __repr__(self):
        return f"ConjClass({self.name}, size={self.size})"


class IrrChar:
    def __init__(self, label, values):
        self.label = label
        self.name = _label_str(label)
        self.values = tuple(int(v) for v in values)
        self.dim = self.values[0] if values else 1

    def __repr__(self):
        return f"IrrChar({self.name}, dim={self.dim})"


class WeylGroup:
    def __init__(self, datum):
        self.datum = datum
        self.roots = datum.roots
        self.root_index = {r: i for i, r in enumerate(self.roots)}
        if datum.weyl_order > WEYL_ORDER_BOUND:
            raise GroupTooLarge(datum.name)
        self.simple_perms = tuple(
            self.reflection_perm(a) for a in datum.simple_roots)
        self._enumerate()
        self._trivial_dirs = datum.ambient_dim - datum.rank
        self._basis, self._basis_inv = self._ambient_basis()
        self._build_classes()
        self._characters = None

    # -- group structure ---------------------------------------------------

    def reflection_perm(self, alpha):
        imgs = []
        for r in self.roots:
            c = pairing(r, alpha)
            img = tuple(x - c * a for x, a in zip(r, alpha))
            img = tuple(int(v) if Fraction(v).denominator == 1 else v
                        for v in img)
            imgs.append(self.root_index[img])
        return tuple(imgs)

    def mult(self, p, q):
        return tuple(p[i] for i in q)

    def inv(self, p):
        out = [0] * len(p)
        for i, j in enumerate(p):
            out[j] = i
        return tuple(out)

    def _enumerate(self):
        ident = tuple(range(len(self.roots)))
        words = {ident: ()}
        frontier = [ident]
        while frontier:
            nxt = []
            for p in frontier:
                for i, s in enumerate(self.simple_perms):
                    q = self.mult(s, p)
                    if q not in words:
                        words[q] = (i,) + tuple()  # placeholder
                        words[q] = (i,) + words[p]
                        nxt.append(q)
            frontier = nxt
        assert len(words) == self.datum.weyl_order, \
            (len(words), self.datum.weyl_order)
        self.words = words
        self.elements = list(words)
        self.identity = ident

    def word_to_perm(self, word):
        p = self.identity
        for i in word:
            p = self.mult(self.simple_perms[i], p)
        return p

    # -- matrices ------------------------------------------------------------

    def _ambient_basis(self):
        d = self.datum
        cols = [list(a) for a in d.simple_roots]
        # extend by the orthogonal complement of the root span, which W
        # fixes pointwise
        n = d.ambient_dim
        cols += [list(v) for v in ratlin.kernel_basis(
            [list(a) for a in d.simple_roots])]
        assert len(cols) == n
        b = ratlin.transpose(tuple(tuple(map(Fraction, c)) for c in cols))
        return b, ratlin.inverse(b)

    def matrix_of(self, perm):
        d = self.datum
        n = d.ambient_dim
        imgcols = [list(self.roots[perm[self.root_index[a]]])
                   for a in d.simple_roots]
        # complement columns: W acts trivially there only if the complement
        # columns are themselves fixed; recompute them as basis tail images
        tail = [list(col) for col in ratlin.transpose(self._basis)[d.rank:]]
        cols = imgcols + tail
        m = ratlin.transpose(tuple(tuple(map(Fraction, c)) for c in cols))
        return ratlin.mat_mul(m, self._basis_inv)

    def perm_of_matrix(self, mat):
        imgs = []
        for r in self.roots:
            img = ratlin.mat_vec(mat, list(map(Fraction, r)))
            img = tuple(int(v) for v in img)
            imgs.append(self.root_index[img])
        return tuple(imgs)

    # -- conjugacy classes -----------------------------------------------

    def _perm_order(self, p):
        order = 1
        seen = [False] * len(p)
        for i in range(len(p)):
            if seen[i]:
                continue
            ln = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                ln += 1
            order = order * ln // math.gcd(order, ln)
        return order

    def _class_orbit(self, p):
        seen = {p}
        frontier = [p]
        while frontier:
            nxt = []
            for q in frontier:
                for s in self.simple_perms:
                    c = self.mult(s, self.mult(q, s))
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
            frontier = nxt
        return seen

    def _signed_perm(self, mat):
        """Interpret a matrix as a signed permutation of coordinates."""
        n = len(mat)
        pi, sign = [None] * n, [0] * n
        for j in range(n):
            col = [mat[i][j] for i in range(n)]
            nz = [i for i, v in enumerate(col) if v != 0]
            if len(nz) != 1 or abs(col[nz[0]]) != 1:
                return None
            pi[j] = nz[0]
            sign[j] = 1 if col[nz[0]] > 0 else -1
        return pi, sign

    def _signed_cycle_type(self, mat):
        sp = self._signed_perm(mat)
        assert sp is not None
        pi, sign = sp
        pos, neg = [], []
        seen = [False] * len(pi)
        for i in range(len(pi)):
            if seen[i]:
                continue
            ln, s, j = 0, 1, i
            while not seen[j]:
                seen[j] = True
                s *= sign[j]
                j = pi[j]
                ln += 1
            (pos if s == 1 else neg).append(ln)
        return normalize(pos), normalize(neg)

    def _classify_label(self, rep):
        d = self.datum
        mat = self.matrix_of(rep)
        if d.family == 'A':
            pos, neg = self._signed_cycle_type(mat)
            assert not neg
            return ('A', pos)
        if d.family in ('B', 'C'):
            pos, neg = self._signed_cycle_type(mat)
            return ('BC', pos, neg)
        if d.family == 'D':
            pos, neg = self._signed_cycle_type(mat)
            return ('D', pos, neg, '')   # split tag fixed up later
        return None

    def _build_classes(self):
        d = self.datum
        unassigned = set(self.elements)
        raw = []
        while unassigned:
            p = next(iter(unassigned))
            orb = self._class_orbit(p)
            unassigned -= orb
            # canonical representative: minimal word length, then perm
            rep = min(orb, key=lambda q: (len(self.words[q]), q))
            raw.append((rep, len(orb)))
        classes = []
        for rep, size in raw:
            mat = self.matrix_of(rep)
            cp = ratlin.char_poly_q(mat)
            # strip trivial directions: divide by (x-1)^k
            for _ in range(self._trivial_dirs):
                cp = _poly_div_x_minus_1(cp)
            fixed = ratlin.eigen_multiplicity_one(mat) - self._trivial_dirs
            trace = sum((mat[i][i] for i in range(len(mat))), Fraction(0)) \
                - self._trivial_dirs
            label = self._classify_label(rep)
            classes.append(ConjClass(label, size, self._perm_order(rep), rep,
                                     self.words[rep], tuple(cp), fixed,
                                     trace))
        if d.family == 'D':
            self._fix_split_tags(classes)
        if d.family in ('G', 'F'):
            self._name_exceptional(classes)
        classes.sort(key=lambda c: (c.name,))
        self.classes = classes
        self.class_index = {}
        for ci, c in enumerate(classes):
            for q in self._class_orbit(c.rep):
                self.class_index[q] = ci
        assert sum(c.size for c in classes) == d.weyl_order

    def _fix_split_tags(self, classes):
        from collections import Counter
        d = self.datum
        n = d.rank
        counts = Counter(c.label for c in classes)
        for label, k in counts.items():
            if k == 1:
                continue
            assert k == 2, label
            _, pos, neg, _ = label
            assert not neg and all(p % 2 == 0 for p in pos), label
            # canonical plain-permutation representative of this type
            mat = _block_cycle_matrix(n, pos)
            rep = self.perm_of_matrix(mat)
            plus_orbit = self._class_orbit(rep)
            pair = [c for c in classes if c.label == label]
            for c in pair:
                tag = '+' if c.rep in plus_orbit else '-'
                c.label = (label[0], label[1], label[2], tag)
                c.name = _label_str(c.label)
            assert {c.label[3] for c in pair} == {'+', '-'}

    def _name_exceptional(self, classes):
        long2 = max(self.datum.root_length2(r) for r in self.roots)
        long_idx = [i for i, r in enumerate(self.roots)
                    if self.datum.root_length2(r) == long2]
        short_idx = [i for i in range(len(self.roots)) if i not in long_idx]

        def orbit_profile(perm, idxs):
            seen = set()
            prof = []
            for i in idxs:
                if i in seen:
                    continue
                ln, j = 0, i
                while j not in seen:
                    seen.add(j)
                    j = perm[j]
                    ln += 1
                prof.append(ln)
            return tuple(sorted(prof))

        keyed = []
        for c in classes:
            key = (c.order, c.size, c.refl_charpoly,
                   orbit_profile(c.rep, long_idx),
                   orbit_profile(c.rep, short_idx))
            keyed.append((key, c))
        assert len({k for k, _ in keyed}) == len(classes), \
            "canonical class key collision"
        keyed.sort(key=lambda kc: kc[0])
        counters = {}
        for key, c in keyed:
            o = key[0]
            letter = counters.get(o, 0)
            counters[o] = letter + 1
            c.label = ('X', f"{o}{chr(ord('A') + letter)}")
            c.name = _label_str(c.label)

    # -- characters -----------------------------------------------------------

    def characters(self):
        if self._characters is None:
            self._characters = self._build_characters()
        return self._characters

    def _build_characters(self):
        d = self.datum
        if d.family == 'A':
            n = d.rank + 1
            chars = []
            for lam in sorted(chartables.partitions_of(n)):
                vals = [chartables.sym_char(lam, c.label[1])
                        for c in self.classes]
                chars.append(IrrChar(('A', lam), vals))
        elif d.family in ('B', 'C'):
            chars = []
            for pair in sorted(chartables.bc_bipartitions(d.rank)):
                vals = [chartables.bc_char_value(
                    pair, (c.label[1], c.label[2])) for c in self.classes]
                chars.append(IrrChar(('BC', pair[0], pair[1]), vals))
        elif d.family == 'D':
            _, dchars = chartables.d_characters(d.rank)
            chars = []
            for (pair, tag), values in sorted(dchars):
                vals = [values[(c.label[1], c.label[2], c.label[3])]
                        for c in self.classes]
                chars.append(IrrChar(('Dchar', pair, tag), vals))
        elif d.name == 'G2':
            chars = self._dihedral_characters()
        else:
            chars = self._ingested_characters()
        self._verify_orthogonality(chars)
        return chars

    def _dihedral_characters(self):
        # linear characters: sign assignments on the two generators
        vals_lin = []
        for e1, e2 in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            vals = []
            for c in self.classes:
                w = c.word
                v = e1 ** sum(1 for i in w if i == 0) \
                    * e2 ** sum(1 for i in w if i == 1)
                vals.append(v)
            vals_lin.append(tuple(vals))
        refl = []
        for c in self.classes:
            tr = c.trace
            assert Fraction(tr).denominator == 1
            refl.append(int(tr))
        twist = tuple(r * l for r, l in zip(refl, vals_lin[1]))
        raw = vals_lin + [tuple(refl), twist]
        chars = [IrrChar(('X', f"tmp{i}"), v) for i, v in enumerate(raw)]
        return self._finalize_exceptional_names(chars)

    def _ingested_characters(self):
        from . import tables
        tab = tables.load_default(kind="chartab", group=self.datum.name)
        if tab is None:
            raise ExternalTableRequired(
                f"character table of {self.datum.name} requires an ingested "
                f"table (kind 'chartab')")
        return tables.chartab_to_chars(tab, self)

    def _finalize_exceptional_names(self, chars):
        from .invariants import b_invariant
        keyed = []
        for ch in chars:
            b = b_invariant(self, ch)
            keyed.append(((ch.dim, b, ch.values), ch))
        keyed.sort(key=lambda kc: kc[0])
        counters = {}
        out = []
        for (dim, b, _), ch in keyed:
            k = (dim, b)
            idx = counters.get(k, 0)
            counters[k] = idx + 1
            suffix = "" if counters[k] == 1 else None
            out.append((dim, b, ch))
        # second pass: add letter suffixes only where (dim, b) collide
        from collections import Counter
        cnt = Counter((dim, b) for dim, b, _ in out)
        counters = {}
        final = []
        for dim, b, ch in out:
            if cnt[(dim, b)] > 1:
                i = counters.get((dim, b), 0)
                counters[(dim, b)] = i + 1
                name = f"phi_{dim}_{b}{chr(ord('a') + i)}"
            else:
                name = f"phi_{dim}_{b}"
            final.append(IrrChar(('X', name), ch.values))
        return final

    def _verify_orthogonality(self, chars):
        order = self.datum.weyl_order
        sizes = [c.size for c in self.classes]
        for i, c1 in enumerate(chars):
            for c2 in chars[i:]:
                ip = sum(s * a * b for s, a, b
                         in zip(sizes, c1.values, c2.values))
                expect = order if c1 is c2 else 0
                assert ip == expect, (c1.name, c2.name, ip)
        assert sum(ch.dim ** 2 for ch in chars) == order
        assert len(chars) == len(self.classes)

    def char_by_name(self, name):
        for ch in self.characters():
            if ch.name == name:
                return ch
        raise KeyError(name)

    def class_by_name(self, name):
        for c in self.classes:
            if c.name == name:
                return c
        raise KeyError(name)


def _poly_div_x_minus_1(coeffs):
    """Exact division of a polynomial (list of coeffs, index = degree) by
    (x - 1)."""
    n = len(coeffs) - 1
    out = [Fraction(0)] * n
    carry = Fraction(0)
    for k in range(n - 1, -1, -1):
        carry = coeffs[k + 1] + carry
        out[k] = carry
    assert coeffs[0] + carry * (-1) == 0 or coeffs[0] == -carry
    return out


def _block_cycle_matrix(n, parts):
    """Plain permutation matrix with cycles of the given lengths on
    consecutive coordinates (canonical very even representative)."""
    mat = [[Fraction(0)] * n for _ in range(n)]
    pos = 0
    for p in parts:
        for k in range(p):
            mat[pos + (k + 1) % p][pos + k] = Fraction(1)
        pos += p
    for k in range(pos, n):
        mat[k][k] = Fraction(1)
    return tuple(tuple(row) for row in mat)


@lru_cache(maxsize=None)
def build_weyl(name):
    return WeylGroup(build(name))


# ---------------------------------------------------------------------------
# Reflection subgroups given by factored simple systems (parahoric Levis,
# common endoscopic subgroups, ...).
# ---------------------------------------------------------------------------


class SubClass:
    def __init__(self, labels, size, rep_perm, fused_index, factor_classes):
        self.labels = labels
        self.name = "*".join(l for l in labels) or "1"
        self.size = size
        self.rep = rep_perm
        self.fused_index = fused_index
        self.factor_classes = factor_classes


class SubChar:
    def __init__(self, labels, values, b=None, gamma=None):
        self.labels = labels
        self.name = "*".join(l for l in labels) or "triv"
        self.values = tuple(values)
        self.dim = self.values[0] if values else 1
        self.b = b
        self.gamma = gamma


class ReflectionSubgroup:
    """A product of irreducible reflection subgroups embedded in W.

    `factors` is a list of (std_datum_name, embedded_simple_roots) pairs;
    the embedded simples must match the standard Cartan matrix in order.
    """

    def __init__(self, weyl, factors):
        self.weyl = weyl
        self.factor_data = []
        order = 1
        for std_name, simples in factors:
            wstd = build_weyl(std_name)
            gens = [weyl.reflection_perm(b) for b in simples]
            # sanity: generator orders and braid data are enforced by the
            # Cartan-matrix match performed by the caller
            self.factor_data.append((wstd, tuple(simples), tuple(gens)))
            order *= wstd.datum.weyl_order
        self.order = order
        self._classes = None
        self._characters = None

    def embed_word(self, fi, word):
        wstd, _, gens = self.factor_data[fi]
        p = self.weyl.identity
        for i in word:
            p = self.weyl.mult(gens[i], p)
        return p

    def embed_element(self, factor_perms):
        p = self.weyl.identity
        for fi, q in enumerate(factor_perms):
            wstd, _, _ = self.factor_data[fi]
            p = self.weyl.mult(p, self.embed_word(fi, wstd.words[q]))
        return p

    def classes(self):
        if self._classes is not None:
            return self._classes
        lists = [w.classes for w, _, _ in self.factor_data]
        out = []
        ranges = [range(len(l)) for l in lists]
        for idxs in itertools.product(*ranges):
            combo = tuple(lists[fi][ci] for fi, ci in enumerate(idxs))
            size = 1
            for c in combo:
                size *= c.size
            rep = self.weyl.identity
            for fi, c in enumerate(combo):
                rep = self.weyl.mult(rep, self.embed_word(fi, c.word))
            fused = self.weyl.class_index[rep]
            out.append(SubClass(tuple(c.name for c in combo), size, rep,
                                fused, idxs))
        assert sum(c.size for c in out) == self.order
        self._classes = out
        return out

    def characters(self):
        if self._characters is not None:
            return self._characters
        from .invariants import b_invariant_sub, b_leading_coeff
        classes = self.classes()
        char_lists = [w.characters() for w, _, _ in self.factor_data]
        out = []
        for combo in itertools.product(*char_lists):
            vals = []
            for cl in classes:
                v = 1
                for ch, ci in zip(combo, cl.factor_classes):
                    v *= ch.values[ci]
                vals.append(v)
            b = sum(b_invariant_sub(w, ch)
                    for (w, _, _), ch in zip(self.factor_data, combo))
            gamma = 1
            for (w, _, _), ch in zip(self.factor_data, combo):
                gamma *= b_leading_coeff(w, ch)
            out.append(SubChar(tuple(ch.name for ch in combo), vals, b,
                               gamma))
        if not self.factor_data:
            out = [SubChar((), [1], 0, 1)]
        self._characters = out
        return out

    def induce_decompose(self, subchar):
        """Multiplicities of each ambient irreducible in Ind(subchar)."""
        W = self.weyl
        classes = self.classes()
        out = []
        for E in W.characters():
            tot = 0
            for cl, v in zip(classes, subchar.values):
                tot += cl.size * v * E.values[cl.fused_index]
            q, r = divmod(tot, self.order)
            assert r == 0 and q >= 0, (subchar.name, E.name, tot)
            out.append(q)
        return out
