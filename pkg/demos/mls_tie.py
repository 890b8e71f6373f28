"""
Where truncated induction is genuinely undefined.

Truncated induction j picks the unique constituent of Ind(E_P) whose
b-invariant (lowest degree of the fake degree) equals b_{E_P}.  The
uniqueness theorem has a hypothesis that is easy to miss: the fake
degree of E_P must have leading coefficient 1.  Every character in the
Springer image of a special orbit satisfies it, so the orbit pipeline
never notices.  But sweeping over ALL irreducibles of all parahoric
Levis finds genuine ties.

The mechanism, provable from the exact identity

    R^D_{a,b}(q) * (1 + q^n)  =  R^B_{(a;b)}(q) + R^B_{(b;a)}(q)

(restricting the B_n coinvariant algebra to W(D_n)): for a W(D_n) pair
character {a|b} with a != b and |a| = |b| the two B-side valuations tie,
the leading coefficient is 2, and the induced character carries TWO
minimal-b constituents, each with multiplicity 1.  The smallest case is
{1,1|2} of W(D4), inside W(D5) (a parabolic!) or inside W(B4) (a
pseudo-Levi via the affine node).

Run:  python3 demos/mls_tie.py
"""

from cellmap import rootdata, driver, invariants, weyl
from cellmap.errors import MLSViolation


def show(datum_name, nodes):
    d = rootdata.build(datum_name)
    W = weyl.build_weyl(datum_name)
    P = [p for p in rootdata.enumerate_parahorics(d)
         if p.nodes == frozenset(nodes)][0]
    sub = driver.levi_subgroup(P)
    ch = [c for c in sub.characters() if c.name == "{1,1|2}"][0]
    print(f"{datum_name}, parahoric nodes {sorted(nodes)}, "
          f"Levi {'x'.join(f.std.name for f in P.factors)}, "
          f"character {ch.name} (b = {ch.b}, gamma = {ch.gamma})")
    mults = sub.induce_decompose(ch)
    chars = W.characters()
    for E, m in zip(chars, mults):
        if m:
            b = invariants.b_invariant(W, E)
            g = invariants.b_leading_coeff(W, E)
            tag = "  <- minimal" if b == ch.b else ""
            print(f"    {E.name:<12} mult {m}  b = {b}  gamma = {g}{tag}")
    try:
        invariants.j_induction(sub, ch)
    except MLSViolation as e:
        print(f"    j_induction -> MLSViolation: {e}\n")


def main():
    show("D5", {2, 3, 4, 5})   # parabolic D4 < D5
    show("B4", {0, 1, 2, 3})   # pseudo-Levi D4 < B4 (affine node)
    print("note the gamma bookkeeping: the minimal constituents' gammas")
    print("sum to gamma of the inducted character (1 + 1 = 2), exactly as")
    print("the coinvariant-algebra identity predicts.  {1,1|2} is not the")
    print("Springer label of any special orbit, so the verification")
    print("pipeline never inducts it.")


if __name__ == "__main__":
    main()
