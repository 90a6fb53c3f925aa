"""
Sorting three-dimensional lens spaces L(p; 1, q) into classes.

For each small prime p the spaces are grouped by homotopy type (q1 q2 or
-q1 q2 a square mod p) and then by torsion profile.  Within a homotopy
class, equal profiles pick out the simple homotopy classes, which for
3-manifolds are also the homeomorphism classes.
"""
import math

from rtorsion import LensSpace, homeomorphic_3d, homotopy_equivalent, torsion_profile
from rtorsion.spaces import franz_search


def classes(items, same):
    out = []
    for x in items:
        for c in out:
            if same(c[0], x):
                c.append(x)
                break
        else:
            out.append([x])
    return out


def main():
    for p in (5, 7, 11, 13):
        qs = [q for q in range(1, p) if math.gcd(p, q) == 1]
        spaces = {q: LensSpace(p, (1, q)) for q in qs}
        homotopy = classes(qs, lambda a, b: homotopy_equivalent(spaces[a], spaces[b])[0])
        print(f"p = {p}")
        for hc in homotopy:
            profile = classes(hc, lambda a, b: all(
                math.isclose(x, y, rel_tol=1e-9)
                for x, y in zip(torsion_profile(spaces[a]), torsion_profile(spaces[b]))))
            homeo = classes(hc, lambda a, b: homeomorphic_3d(p, a, b))
            print(f"  homotopy class q in {hc}: by profile {profile}, by homeomorphism {homeo}")
    for p in (5, 7):
        print(f"Franz search p = {p}, |a_j| <= 3: {len(franz_search(p, 3))} solution(s), the zero vector")


if __name__ == "__main__":
    main()
