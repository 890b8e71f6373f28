"""Root systems, affine diagrams and parahoric facet combinatorics.

All roots live in an ambient integer coordinate space (type A in the
sum-zero hyperplane of Z^{n+1}, F4 scaled by 2 so that every root is
integral).  The ambient space is identified with its dual by the
standard inner product, so alpha(x) is a plain dot product.
"""

import itertools
from fractions import Fraction
from functools import lru_cache

from . import ratlin
from .errors import UnsupportedType

SUPPORTED = (
    [f"A{n}" for n in range(1, 7)]
    + [f"B{n}" for n in range(2, 5)]
    + [f"C{n}" for n in range(2, 5)]
    + ["D4", "D5", "G2", "F4"]
)

WEYL_ORDER_BOUND = 100_000

_DEGREES = {
    "A": lambda n: tuple(range(2, n + 2)),
    "B": lambda n: tuple(range(2, 2 * n + 1, 2)),
    "C": lambda n: tuple(range(2, 2 * n + 1, 2)),
    "D": lambda n: tuple(sorted(tuple(range(2, 2 * n - 1, 2)) + (n,))),
    "G": lambda n: (2, 6),
    "F": lambda n: (2, 6, 8, 12),
}


def _simple_roots(family, rank):
    if family == "A":
        dim = rank + 1
        return [tuple(1 if k == i else -1 if k == i + 1 else 0
                      for k in range(dim)) for i in range(rank)]
    if family in ("B", "C", "D"):
        dim = rank
        alphas = [tuple(1 if k == i else -1 if k == i + 1 else 0
                        for k in range(dim)) for i in range(rank - 1)]
        last = [0] * dim
        if family == "B":
            last[rank - 1] = 1
        elif family == "C":
            last[rank - 1] = 2
        else:
            last = [0] * dim
            last[rank - 2] = 1
            last[rank - 1] = 1
        alphas.append(tuple(last))
        return alphas
    if family == "G":
        return [(1, -1, 0), (-2, 1, 1)]
    if family == "F":
        return [(0, 2, -2, 0), (0, 0, 2, -2), (0, 0, 0, 2), (1, -1, -1, -1)]
    raise UnsupportedType(family)


def _idot(u, v):
    return sum(a * b for a, b in zip(u, v))


def pairing(beta, alpha):
    """<beta, alpha_vee> = 2 (beta, alpha) / (alpha, alpha)."""
    return Fraction(2 * _idot(beta, alpha), _idot(alpha, alpha))


def _reflect(v, alpha):
    c = pairing(v, alpha)
    out = tuple(Fraction(x) - c * a for x, a in zip(v, alpha))
    if any(x.denominator != 1 for x in out):
        return out
    return tuple(int(x) for x in out)


class RootDatum:
    """An irreducible root system with a fixed simple system."""

    def __init__(self, family, rank):
        key = f"{family}{rank}" if family not in ("G", "F") else \
            ("G2" if family == "G" else "F4")
        if key not in SUPPORTED:
            raise UnsupportedType(f"unsupported type {family}{rank}")
        self.family = family
        self.rank = rank
        self.name = key
        self.simple_roots = tuple(tuple(a) for a in _simple_roots(family, rank))
        self.ambient_dim = len(self.simple_roots[0])
        self.roots = self._generate_roots()
        self.nroots = len(self.roots)
        self.degrees = _DEGREES[family](rank)
        self.npos = len(self.roots) // 2
        self._expansions = self._compute_expansions()
        self.positive_roots = tuple(
            a for a in self.roots
            if sum(self._expansions[a]) > 0)
        self.highest_root = max(
            self.positive_roots, key=lambda a: sum(self._expansions[a]))
        self.marks = tuple(int(c) for c in self._expansions[self.highest_root])
        self.cartan_matrix = tuple(
            tuple(pairing(b, a) for b in self.simple_roots)
            for a in self.simple_roots)
        self.weyl_order = 1
        for d in self.degrees:
            self.weyl_order *= d
        if self.weyl_order > WEYL_ORDER_BOUND:
            raise UnsupportedType(f"Weyl group of {key} too large")
        assert sum(d - 1 for d in self.degrees) == self.npos
        assert len(self.degrees) == rank

    # -- construction helpers -------------------------------------------

    def _generate_roots(self):
        seen = set(self.simple_roots)
        frontier = list(self.simple_roots)
        while frontier:
            nxt = []
            for v in frontier:
                for a in self.simple_roots:
                    w = _reflect(v, a)
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return tuple(sorted(seen))

    def _compute_expansions(self):
        basis = [list(map(Fraction, a)) for a in self.simple_roots]
        gram = [[_idot(a, b) for b in self.simple_roots]
                for a in self.simple_roots]
        ginv = ratlin.inverse(gram)
        out = {}
        for rt in self.roots:
            rhs = [Fraction(_idot(rt, a)) for a in self.simple_roots]
            coeffs = ratlin.mat_vec(ginv, rhs)
            assert all(c.denominator == 1 for c in coeffs), rt
            out[rt] = tuple(int(c) for c in coeffs)
        return out

    # -- basic queries ----------------------------------------------------

    def expansion(self, root):
        return self._expansions[root]

    def coroot(self, alpha):
        q = Fraction(2, _idot(alpha, alpha))
        return tuple(q * a for a in alpha)

    def root_length2(self, alpha):
        return _idot(alpha, alpha)

    def is_long(self, alpha):
        m = max(self.root_length2(a) for a in self.roots)
        return self.root_length2(alpha) == m

    def fundamental_coweights(self):
        """omega_i with alpha_j(omega_i) = delta_ij, in span of coroots."""
        n = self.rank
        coroots = [self.coroot(a) for a in self.simple_roots]
        # alpha_j(sum_k c_k coroot_k) = sum_k c_k * Cartan[k][j]
        cmat = [[Fraction(pairing(self.simple_roots[j], self.simple_roots[k]))
                 for j in range(n)] for k in range(n)]
        cinv = ratlin.inverse(cmat)
        out = []
        for i in range(n):
            # need sum_k c_k cmat[k][j] = delta_ij, i.e. c = row i of cinv
            coeffs = [cinv[i][k] for k in range(n)]
            vec = tuple(sum((c * cr[d] for c, cr in zip(coeffs, coroots)),
                            Fraction(0)) for d in range(self.ambient_dim))
            out.append(vec)
        return tuple(out)

    def dual(self):
        fam = {"A": "A", "B": "C", "C": "B", "D": "D", "G": "G", "F": "F"}
        return build(f"{fam[self.family]}{self.rank}"
                     if self.family not in ("G", "F") else self.name)

    def __repr__(self):
        return f"RootDatum({self.name})"


@lru_cache(maxsize=None)
def build(name):
    name = name.strip()
    family, rank = name[0], int(name[1:])
    if family == "G" and rank == 2:
        return RootDatum("G", 2)
    if family == "F" and rank == 4:
        return RootDatum("F", 4)
    return RootDatum(family, rank)


# ---------------------------------------------------------------------------
# Parahoric subgroups: proper subsets of the affine node set {0, .., rank}.
# ---------------------------------------------------------------------------


class LeviFactor:
    """One irreducible factor of a parahoric Levi.

    std:        the standard model RootDatum of the same Cartan type
    simples:    embedded simple roots, ordered to match std's nodes
    subsystem:  all ambient roots lying in the factor's span (the factor's
                root system inside the ambient one)
    expans:     expansion of each subsystem root in `simples`
    """

    def __init__(self, std, simples, subsystem, expans):
        self.std = std
        self.simples = simples
        self.subsystem = subsystem
        self.expans = expans

    def __repr__(self):
        return f"LeviFactor({self.std.name})"


def _match_component(datum, comp):
    """Identify the Cartan type of a connected simple-root set and order
    its nodes to match the standard model.  Returns (std, ordered_nodes)."""
    k = len(comp)
    candidates = []
    for fam in ("A", "B", "C", "D", "G", "F"):
        if fam == "G" and k == 2:
            candidates.append("G2")
        elif fam == "F" and k == 4:
            candidates.append("F4")
        elif fam == "A" and 1 <= k <= 6:
            candidates.append(f"A{k}")
        elif fam in ("B", "C") and 2 <= k <= 4:
            candidates.append(f"{fam}{k}")
        elif fam == "D" and k in (4, 5):
            candidates.append(f"D{k}")
    # rank-2 double-edge components match both B2 and C2 (transposed
    # Cartan matrices coincide up to node order); prefer the ambient
    # family so the full-group levi is typed as itself
    candidates.sort(key=lambda c: c[0] != datum.family)
    amb_index = {r: i for i, r in enumerate(datum.simple_roots)}
    for cname in candidates:
        std = build(cname)
        target = std.cartan_matrix
        matches = []
        for perm in itertools.permutations(range(k)):
            ok = True
            for i in range(k):
                for j in range(k):
                    if pairing(comp[perm[j]], comp[perm[i]]) != target[i][j]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                matches.append(perm)
        if matches:
            # several matchings differ by a diagram automorphism (e.g. D4
            # triality); pick the one aligned with the ambient simple-root
            # order so that orbit labels of a full-type levi transport
            # through the identity identification
            def key(perm):
                return tuple(
                    (0, amb_index[comp[perm[i]]])
                    if comp[perm[i]] in amb_index else (1, comp[perm[i]])
                    for i in range(k))
            perm = min(matches, key=key)
            return std, [comp[perm[i]] for i in range(k)]
    raise UnsupportedType(
        f"levi component of rank {k} not of supported type: {comp}")


class Parahoric:
    """A standard parahoric of the loop group, given by a proper subset J
    of the affine nodes.  Finite node i corresponds to simple root
    alpha_i (1-based), node 0 to the affine node."""

    def __init__(self, datum, nodes):
        nodes = frozenset(int(j) for j in nodes)
        allnodes = set(range(datum.rank + 1))
        if not nodes.issubset(allnodes) or nodes == allnodes:
            raise ValueError(f"J must be a proper subset of affine nodes, "
                             f"got {nodes}")
        self.datum = datum
        self.nodes = nodes
        self.x = self._facet_point()
        self.levi_roots = tuple(
            a for a in datum.roots
            if Fraction(_idot(a, self.x)).denominator == 1)
        sp = [datum.simple_roots[j - 1] for j in sorted(nodes) if j != 0]
        if 0 in nodes:
            sp.append(tuple(-c for c in datum.highest_root))
        self.levi_simples = tuple(sp)
        self.factors = self._split_factors()
        self._check_invariants()

    @property
    def is_levi(self):
        return 0 not in self.nodes

    def _facet_point(self):
        d = self.datum
        omegas = d.fundamental_coweights()
        verts = []
        for j in range(d.rank + 1):
            if j in self.nodes:
                continue
            if j == 0:
                verts.append(tuple(Fraction(0) for _ in range(d.ambient_dim)))
            else:
                m = d.marks[j - 1]
                verts.append(tuple(c / m for c in omegas[j - 1]))
        k = len(verts)
        return tuple(sum(col, Fraction(0)) / k for col in zip(*verts))

    def _split_factors(self):
        comps = []
        pool = list(self.levi_simples)
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
        factors = []
        for comp in sorted(comps, key=lambda c: sorted(c)):
            std, simples = _match_component(self.datum, comp)
            # roots of the ambient system lying in the factor's span
            rows = [list(map(Fraction, s)) for s in simples]
            sub = []
            expans = {}
            for rt in self.levi_roots:
                aug = rows + [list(map(Fraction, rt))]
                if ratlin.rank(aug) == len(rows):
                    gram = [[Fraction(_idot(a, b)) for b in simples]
                            for a in simples]
                    rhs = [Fraction(_idot(rt, a)) for a in simples]
                    coeffs = ratlin.solve(gram, rhs)
                    assert all(c.denominator == 1 for c in coeffs)
                    sub.append(rt)
                    expans[rt] = tuple(int(c) for c in coeffs)
            factors.append(LeviFactor(std, tuple(simples), tuple(sub), expans))
        return factors

    def _check_invariants(self):
        d = self.datum
        x = self.x
        for j in sorted(self.nodes):
            if j == 0:
                assert _idot(d.highest_root, x) == 1
            else:
                assert _idot(d.simple_roots[j - 1], x) == 0
        for j in range(1, d.rank + 1):
            if j not in self.nodes:
                v = Fraction(_idot(d.simple_roots[j - 1], x))
                assert v > 0
        if 0 not in self.nodes:
            assert Fraction(_idot(d.highest_root, x)) < 1
        nfac = sum(len(f.subsystem) for f in self.factors)
        assert nfac == len(self.levi_roots), "factor split lost roots"

    def levi_type(self):
        return "x".join(sorted(f.std.name for f in self.factors)) or "T"

    def __repr__(self):
        return f"Parahoric({self.datum.name}, J={sorted(self.nodes)})"


def enumerate_parahorics(datum):
    """All standard proper parahorics: J ranges over the proper subsets of
    the affine node set, 2^(rank+1) - 1 of them.  J is the set of affine
    nodes whose basic affine roots vanish on the facet; J = {} is the
    Iwahori (torus Levi), large J means small facet and large Levi.
    """
    nodes = list(range(datum.rank + 1))
    out = []
    for sz in range(0, len(nodes)):
        for sub in itertools.combinations(nodes, sz):
            out.append(Parahoric(datum, sub))
    return out


def root_valuations(datum, coords):
    """Multiset of t-adic valuations val alpha(gamma) over all roots.

    `coords` is a tuple of ambient coordinates of a Cartan loop element,
    each a dict {exponent: Fraction coefficient} (exponents rational).
    Returns a sorted tuple; raises if some root pairs to zero identically.
    """
    out = []
    for a in datum.roots:
        acc = {}
        for c, comp in zip(a, coords):
            if c == 0:
                continue
            for e, q in comp.items():
                acc[e] = acc.get(e, Fraction(0)) + c * Fraction(q)
        nz = [e for e, q in acc.items() if q != 0]
        if not nz:
            raise ValueError(f"root {a} vanishes identically")
        out.append(min(nz))
    return tuple(sorted(out))
