"""
How the D-type split conjugacy classes are told apart.

In W(D_n) a class of signed-permutation type with all cycles even and all
signs positive splits into two classes that are swapped by the outer
automorphism (conjugation by a sign flip).  Any classifier that only sees
characteristic-polynomial data (Newton slopes of the eigenvalue spectrum)
cannot separate them: both classes produce identical slope multisets.

The discriminating invariant used here is a Pfaffian ratio.  A sampled
regular semisimple matrix S*gamma is skew-symmetrizable against the
invariant bilinear form; its Pfaffian is a square root of the determinant
whose SIGN (more precisely, the leading coefficient of the truncated
Laurent series, normalized by the product of the residual Newton-segment
constants) is conjugation-invariant under SO but flips under O \\ SO.
The '+' tag is anchored by evaluating the same ratio on an explicit
companion-block reference element built from the plain class
representative, so the tag convention matches the character table's.

Run:  python3 demos/split_tags_d4.py
"""

from cellmap import rootdata
from cellmap.puiseux import kl_map

DATUM = "D4"

# the three pairs of split special orbits / classes in D4
SPLIT_ORBITS = [
    ("D", (2, 2, 2, 2), "+"),
    ("D", (2, 2, 2, 2), "-"),
    ("D", (4, 4), "+"),
    ("D", (4, 4), "-"),
]


def main():
    d = rootdata.build(DATUM)
    print(f"datum {d.name}; the split orbit pairs and their classes:\n")
    for O in SPLIT_ORBITS:
        rep = kl_map(d, O)
        print(f"  orbit {O[1]} tag {O[2]!r:4} ->  class {rep.class_name}"
              f"   (delta = {rep.delta}, d_O = {rep.d_orbit})")
    print()
    print("the two members of each pair land on the two split classes;")
    print("dropping the Pfaffian ratio would merge each pair into one")
    print("ambiguous label and the Kazhdan-Lusztig map would not be")
    print("injective on special orbits.")


if __name__ == "__main__":
    main()
