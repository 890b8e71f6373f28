"""Nilpotent orbits of the classical groups and the Springer map.

Orbits are labelled by partitions with the usual parity constraints
(Jordan types in the defining representation); type D very even
partitions carry a '+'/'-' split tag.  The Springer correspondence is
computed by the beta-number/symbol recipe and is pinned down by two hard
postconditions checked at build time: d_O = b(Spr(O)) on special orbits
and global injectivity.
"""

from functools import lru_cache

from .errors import (CorrespondenceGap, ExternalTableRequired,
                     OrbitLeviMismatch, SpringerNormalizationError)
from .partitions import (collapse, is_valid_bc, n_invariant, normalize,
                         partitions_of, transpose, valid_partitions)


def orbit_str(label):
    kind = label[0]
    if kind in ('A', 'B', 'C'):
        return ",".join(map(str, label[1]))
    if kind == 'D':
        return ",".join(map(str, label[1])) + \
            (f"|{label[2]}" if label[2] else "")
    if kind == 'X':
        return label[1]
    raise ValueError(label)


def is_very_even(lam):
    return all(p % 2 == 0 for p in lam)


def _defining_size(family, rank):
    return {"A": rank + 1, "B": 2 * rank + 1,
            "C": 2 * rank, "D": 2 * rank}[family]


def nilpotent_orbits(datum):
    """All nilpotent orbit labels of the datum, sorted by string."""
    fam, n = datum.family, datum.rank
    if fam == 'A':
        out = [('A', lam) for lam in partitions_of(n + 1)]
    elif fam in ('B', 'C'):
        out = [(fam, lam) for lam in valid_partitions(_defining_size(fam, n),
                                                      fam)]
    elif fam == 'D':
        out = []
        for lam in valid_partitions(2 * n, 'D'):
            if is_very_even(lam):
                out.append(('D', lam, '+'))
                out.append(('D', lam, '-'))
            else:
                out.append(('D', lam, ''))
    else:
        out = [('X', row.name) for row in _exceptional_orbits(datum)]
    return sorted(out, key=orbit_str)


def orbit_dim(datum, label):
    fam, n = datum.family, datum.rank
    if label[0] == 'X':
        return _exceptional_orbit(datum, label[1]).dim
    lam = label[1]
    lt = transpose(lam)
    sq = sum(c * c for c in lt)
    odd = sum(1 for p in lam if p % 2 == 1)
    if fam == 'A':
        m = n + 1
        return m * m - sq
    if fam == 'B':
        g = n * (2 * n + 1)
        return g - (sq - odd) // 2
    if fam == 'C':
        g = n * (2 * n + 1)
        return g - (sq + odd) // 2
    if fam == 'D':
        g = n * (2 * n - 1)
        return g - (sq - odd) // 2
    raise ValueError(fam)


def nilcone_dim(datum):
    """dim of the nilpotent cone = #roots."""
    return datum.nroots


def d_invariant(datum, label):
    num = nilcone_dim(datum) - orbit_dim(datum, label)
    assert num % 2 == 0
    return num // 2


def spaltenstein_dual(datum, label):
    """Order-reversing duality d (transpose + parity collapse); d is an
    involution exactly on the special orbits."""
    fam = datum.family
    if label[0] == 'X':
        row = _exceptional_orbit(datum, label[1])
        return ('X', row.dual)
    lam = label[1]
    if fam == 'A':
        return ('A', transpose(lam))
    dual = collapse(transpose(lam), fam)
    if fam == 'D':
        tag = label[2]
        if is_very_even(dual):
            # canonical split convention: duality preserves the tag
            return ('D', dual, tag if tag else '+')
        return ('D', dual, '')
    return (fam, dual)


def is_special(datum, label):
    if label[0] == 'X':
        return _exceptional_orbit(datum, label[1]).special
    return spaltenstein_dual(datum, spaltenstein_dual(datum, label)) == label


# -- Springer correspondence -------------------------------------------------


def _symbol_bipartition(lam, parity):
    """Split the beta-set of lam (padded to length of the given parity)
    into odd and even entries; returns (alpha, beta)."""
    lam = normalize(lam)
    ln = len(lam)
    if ln % 2 != parity:
        ln += 1
    asc = [0] * (ln - len(lam)) + sorted(lam)
    mu = [asc[i] + i for i in range(ln)]
    odds = [(v - 1) // 2 for v in mu if v % 2 == 1]
    evens = [v // 2 for v in mu if v % 2 == 0]
    alpha = normalize([v - i for i, v in enumerate(odds)])
    beta = normalize([v - i for i, v in enumerate(evens)])
    return alpha, beta


def springer(datum, label):
    """Springer correspondence (trivial local system): orbit label ->
    character label of the Weyl group."""
    fam = datum.family
    if label[0] == 'X':
        row = _exceptional_orbit(datum, label[1])
        return ('X', row.springer)
    lam = label[1]
    if fam == 'A':
        return ('A', lam)
    if fam == 'B':
        alpha, beta = _symbol_bipartition(lam, 1)
        return ('BC', alpha, beta)
    if fam == 'C':
        alpha, beta = _symbol_bipartition(lam, 0)
        return ('BC', alpha, beta)
    if fam == 'D':
        alpha, beta = _symbol_bipartition(lam, 0)
        pair = tuple(sorted((alpha, beta)))
        tag = label[2]
        if alpha == beta:
            assert tag in ('+', '-'), label
            return ('Dchar', pair, tag)
        assert tag == '', label
        return ('Dchar', pair, '')
    raise ValueError(fam)


@lru_cache(maxsize=None)
def springer_table(datum):
    """{orbit label: char label}, with both hard postconditions."""
    out = {}
    for ol in nilpotent_orbits(datum):
        out[ol] = springer(datum, ol)
    if len(set(out.values())) != len(out):
        raise SpringerNormalizationError(
            f"Springer map not injective for {datum.name}")
    from .invariants import b_invariant
    from .weyl import build_weyl
    W = build_weyl(datum.name)
    by_label = {ch.label: ch for ch in W.characters()}
    for ol, cl in out.items():
        if cl not in by_label:
            raise SpringerNormalizationError(
                f"Springer image {cl} is not a character label of "
                f"W({datum.name})")
        if is_special(datum, ol):
            b = b_invariant(W, by_label[cl])
            if b != d_invariant(datum, ol):
                raise SpringerNormalizationError(
                    f"d_O != b_E for special orbit {orbit_str(ol)} of "
                    f"{datum.name}: d={d_invariant(datum, ol)}, b={b}")
    return out


def springer_inverse(datum, char_label):
    table = springer_table(datum)
    for ol, cl in table.items():
        if cl == char_label:
            return ol
    raise CorrespondenceGap(
        f"character {char_label} of W({datum.name}) is not in the image of "
        f"the Springer correspondence")


# -- weighted Dynkin diagrams -------------------------------------------------


def weighted_dynkin(datum, label):
    """Node weights of the weighted Dynkin diagram, in simple-root order."""
    fam, n = datum.family, datum.rank
    if label[0] == 'X':
        raise ExternalTableRequired(
            f"no weighted Dynkin data for exceptional {datum.name}")
    lam = label[1]
    vals = []
    for p in lam:
        vals.extend(range(p - 1, -p - 1, -2))
    vals.sort(reverse=True)
    if fam == 'A':
        h = vals
        return tuple(h[i] - h[i + 1] for i in range(n))
    h = vals[:n]
    assert all(v >= 0 for v in h)
    if fam == 'D' and label[2] == '-':
        h = h[:-1] + [-h[-1]]
    weights = [h[i] - h[i + 1] for i in range(n - 1)]
    if fam == 'B':
        weights.append(h[-1])
    elif fam == 'C':
        weights.append(2 * h[-1])
    else:
        weights = [h[i] - h[i + 1] for i in range(n - 2)]
        weights.append(h[-2] - h[-1])
        weights.append(h[-2] + h[-1])
    return tuple(weights)


def check_orbit_valid(datum, label):
    if label not in nilpotent_orbits(datum):
        raise OrbitLeviMismatch(
            f"{orbit_str(label)} is not a nilpotent orbit label of "
            f"{datum.name}")


# -- exceptional orbit data (ingested) ----------------------------------------


class ExcOrbit:
    def __init__(self, name, dim, special, dual, springer_char):
        self.name = name
        self.dim = dim
        self.special = special
        self.dual = dual
        self.springer = springer_char


@lru_cache(maxsize=None)
def _exceptional_orbits(datum):
    from . import tables
    orb = tables.load_default(kind="orbits", group=datum.name)
    spr = tables.load_default(kind="springer", group=datum.name)
    if orb is None or spr is None:
        raise ExternalTableRequired(
            f"nilpotent orbit data for {datum.name} requires ingested "
            f"tables (kinds 'orbits' and 'springer')")
    return tables.orbits_from_tables(datum, orb, spr)


def _exceptional_orbit(datum, name):
    for row in _exceptional_orbits(datum):
        if row.name == name:
            return row
    raise OrbitLeviMismatch(f"unknown orbit {name} of {datum.name}")
