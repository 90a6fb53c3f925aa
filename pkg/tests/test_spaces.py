import cmath
import itertools
import math

import numpy as np
import pytest

from rtorsion.chain_complex import augmentation, integral_homology, specialize, tensor_product
from rtorsion.errors import NonAcyclicError, TorsionError
from rtorsion.group_ring import GroupRingElement, Representation, class_equal
from rtorsion.spaces import (LensSpace, ball3_complex, circle_complex, eta, franz_search,
                             homeomorphic_3d, homotopy_equivalent, interval_complex,
                             lens_ambiguity, lens_chain_complex, lens_torsion, marked_profile,
                             pants_torsion, pants_torsion_matrix, point_complex, profiles_match,
                             simple_homotopy_equivalent, sphere2_complex, three_dim_R_torsion,
                             torsion_profile, whitehead_image)
from rtorsion.torsion import torsion_alternating, torsion_milnor

from oracles import same_mod_sign


def units(p):
    return [u for u in range(1, p) if math.gcd(u, p) == 1]


def test_lens_space_parameters():
    L = LensSpace(7, (1, 9))
    assert L.q == (1, 2) and L.r == (1, 4)
    assert L.dimension == 3
    with pytest.raises(ValueError):
        LensSpace(6, (1, 2))
    assert LensSpace.three_dim(7, 2) == LensSpace(7, (1, 2))


def test_lens_chain_complex_shapes():
    C = lens_chain_complex(LensSpace(5, (1,)))
    assert C.ranks == (1, 1)
    assert C.d(1)[0, 0] == GroupRingElement.sigma(5) - 1
    C = lens_chain_complex(LensSpace(7, (1, 2)))
    assert [C.d(k)[0, 0] for k in (1, 2, 3)] == [GroupRingElement.sigma(7) - 1,
                                                  GroupRingElement.norm_element(7),
                                                  GroupRingElement.sigma(7, 4) - 1]


def test_lens_complexes_are_valid():
    # construction runs validate, so this checks d^2 = 0 exactly
    for p in range(2, 13):
        for n in (1, 2, 3):
            for q in itertools.islice(itertools.product(units(p), repeat=n), 20):
                lens_chain_complex(LensSpace(p, q))


def test_lens_torsion_reference_table():
    L1, L2 = LensSpace(7, (1, 1)), LensSpace(7, (1, 2))
    # 1.76354... is printed as 1.763 (truncated rather than rounded)
    assert math.floor(lens_torsion(L1, eta(7, 1)).modulus_squared * 1000) == 1763
    assert lens_torsion(L2, eta(7, 2)).modulus_squared == pytest.approx(0.543, abs=5e-4)


def test_lens_torsion_exact_for_q_all_one():
    # L(p; 1, 1): |tau|^2 = |eta - 1|^-4 = 1 / (16 sin^4(pi k / p))
    for p in (3, 5, 7, 11):
        for k in range(1, p):
            expected = 1 / (16 * math.sin(math.pi * k / p) ** 4)
            assert lens_torsion(LensSpace(p, (1, 1)), eta(p, k)).modulus_squared == pytest.approx(expected, rel=1e-12)


def test_lens_torsion_requires_nontrivial_eta():
    with pytest.raises(NonAcyclicError):
        lens_torsion(LensSpace(7, (1, 1)), eta(7, 0))
    with pytest.raises(TorsionError):
        lens_torsion(LensSpace(7, (1, 1)), eta(5, 1))


def test_closed_form_matches_chain_complex_small():
    for p in range(2, 12):
        for q in itertools.product(units(p), repeat=2):
            L = LensSpace(p, q)
            for k in range(1, p):
                rep = eta(p, k)
                chain = torsion_milnor(specialize(lens_chain_complex(L), rep))
                chain = chain.with_ambiguity(lens_ambiguity(L, rep))
                assert class_equal(chain, lens_torsion(L, rep))


def test_three_dim_R_torsion():
    assert three_dim_R_torsion(7, 1, eta(7, 1)) == pytest.approx(1 / (16 * math.sin(math.pi / 7) ** 4))
    assert three_dim_R_torsion(7, 2, eta(7, 3)) == pytest.approx(0.108, abs=5e-4)
    for p in range(2, 12):
        for q in units(p):
            for k in range(1, p):
                T = three_dim_R_torsion(p, q, eta(p, k))
                assert T == pytest.approx(lens_torsion(LensSpace(p, (1, q)), eta(p, k)).modulus_squared,
                                          rel=1e-12)


def test_homotopy_classification():
    assert homotopy_equivalent(LensSpace(5, (1, 1)), LensSpace(5, (1, 2))) == (False, None)
    assert homotopy_equivalent(LensSpace(7, (1, 1)), LensSpace(7, (1, 2))) == (True, 2)
    L = LensSpace(11, (1, 3))
    assert homotopy_equivalent(L, L, marked=True) == (True, 1)
    with pytest.raises(ValueError):
        homotopy_equivalent(LensSpace(7, (1, 1)), LensSpace(7, (1,)))


def test_simple_homotopy_classification():
    assert simple_homotopy_equivalent(LensSpace(7, (1, 1)), LensSpace(7, (1, 2)))[0] is False
    ok, (m, perm, signs) = simple_homotopy_equivalent(LensSpace(7, (1, 2)), LensSpace(7, (2, 1)),
                                                      marked=True)
    assert ok and m == 1 and perm == (1, 0)
    ok, (m, perm, signs) = simple_homotopy_equivalent(LensSpace(11, (1, 3)), LensSpace(11, (10, 3)),
                                                      marked=True)
    assert ok and signs == (-1, 1)


def test_homeomorphism_3d():
    assert homeomorphic_3d(7, 1, 2) is False
    assert homeomorphic_3d(7, 2, 2) is True
    assert homeomorphic_3d(5, 2, 3) is True


def test_profiles():
    prof = torsion_profile(LensSpace(7, (1, 1)))
    assert np.allclose(prof[:4], [0.069, 0.069, 0.167, 0.167], atol=5e-4)
    assert [math.floor(x * 1000) for x in prof[4:]] == [1763, 1763]
    assert torsion_profile(LensSpace(2, (1,))) == pytest.approx([0.25])


def test_profile_invariant_under_moves():
    p = 11
    L = LensSpace(p, (1, 3, 4))
    base = torsion_profile(L)
    for perm in itertools.permutations(L.q):
        assert np.allclose(torsion_profile(LensSpace(p, perm)), base)
    assert np.allclose(torsion_profile(LensSpace(p, (-1, 3, -4))), base)
    # multiplying every q by m re-marks the generator: the sorted profile is unchanged
    for m in units(p):
        Lm = LensSpace(p, tuple(m * x for x in L.q))
        assert np.allclose(torsion_profile(Lm), base)
        assert profiles_match(L, Lm, marked=False)[0]


def test_profile_equality_iff_simple_homotopy_equivalence():
    for p in (5, 7):
        spaces = [LensSpace(p, (1, q)) for q in units(p)]
        for L, M in itertools.product(spaces, repeat=2):
            s = simple_homotopy_equivalent(L, M)[0]
            assert profiles_match(L, M, marked=False)[0] == s
            assert np.allclose(torsion_profile(L), torsion_profile(M), rtol=1e-9) == s
            assert profiles_match(L, M, marked=True)[0] == simple_homotopy_equivalent(L, M, True)[0]


def test_whitehead_image_values():
    L, M = LensSpace(7, (1, 1)), LensSpace(7, (1, 2))
    got = [whitehead_image(L, M, 2, eta(7, k)).modulus_squared for k in (1, 2, 3)]
    assert got == pytest.approx([0.061, 2.088, 7.851], abs=5e-4)
    ident = whitehead_image(L, L, 1, eta(7, 3))
    assert class_equal(ident, ident ** 0)
    with pytest.raises(TorsionError):
        whitehead_image(L, M, 1, eta(7, 1))


def test_whitehead_image_against_direct_formula():
    # (eta - 1)^2 / ((eta^4 - 1)(eta^2 - 1)) for L(7,1) -> L(7,2), m = 2
    L, M = LensSpace(7, (1, 1)), LensSpace(7, (1, 2))
    for k in range(1, 7):
        e = cmath.exp(2j * math.pi * k / 7)
        direct = (e - 1) ** 2 / ((e ** 4 - 1) * (e ** 2 - 1))
        assert abs(whitehead_image(L, M, 2, eta(7, k)).value) == pytest.approx(abs(direct))


def test_franz_search():
    for p in (5, 7):
        sols = franz_search(p, 3)
        assert len(sols) == 1 and not any(sols[0].values())
    assert franz_search(7, 0) == [{j: 0 for j in range(1, 7)}]


def test_franz_product_condition_fails_off_zero():
    # a nonzero symmetric sum-zero vector, explicitly checked against one root
    p = 7
    a = {1: 1, 6: 1, 2: -1, 5: -1}
    e = cmath.exp(2j * math.pi / p)
    prod = np.prod([(e ** j - 1) ** x for j, x in a.items()])
    assert abs(prod - 1) > 1e-3


def test_circle_complex():
    t = 3 - 1j
    C = circle_complex(1, Representation.complex_eval(t))
    assert C.d(1)[0, 0] == pytest.approx(t - 1)
    assert same_mod_sign(torsion_milnor(C).value, 1 / (t - 1))
    for N in (1, 2, 4, 8, 16, 32, 64):
        D = circle_complex(N, Representation.angle(1.0))
        assert abs(np.linalg.det(D.d(1))) == pytest.approx(abs(cmath.exp(1j) - 1), rel=1e-10)
        assert torsion_alternating(D) == pytest.approx(1 / abs(cmath.exp(1j) - 1), rel=1e-10)
    with pytest.raises(NonAcyclicError):
        circle_complex(4, Representation.angle(0.0))


def test_product_formula():
    for psi in (0.7, 2.5):
        C = circle_complex(3, Representation.angle(psi))
        base = torsion_milnor(C).value
        for Y in (point_complex(), interval_complex(), sphere2_complex(), ball3_complex()):
            got = torsion_milnor(tensor_product(C, Y)).value
            assert same_mod_sign(got, base ** Y.euler_characteristic)


def test_integral_homology_of_lens_spaces():
    for p in range(2, 13):
        for n in (1, 2, 3):
            q = tuple(units(p)[:n]) + (1,) * max(0, n - len(units(p)))
            H = integral_homology(augmentation(lens_chain_complex(LensSpace(p, q))))
            expected = [(1, [])]
            for i in range(1, n):
                expected += [(0, [p]), (0, [])]
            expected += [(1, [])]
            assert H == expected


def test_pants():
    third = 2 * math.pi / 3
    assert pants_torsion(third, third, third) == pytest.approx(3 * math.sqrt(3))
    for a, b in [(0.3, 1.1), (2.0, 2.5), (-1.0, 0.4)]:
        c = -a - b
        tau = pants_torsion(a, b, c)
        assert tau == pytest.approx(pants_torsion_matrix(a, b, c))
        boundary = np.prod([abs(cmath.exp(1j * x) - 1) ** 2 for x in (a, b, c)])
        assert tau ** 2 == pytest.approx(boundary)
    with pytest.raises(TorsionError):
        pants_torsion(0.3, 0.4, 0.5)
    with pytest.raises(NonAcyclicError):
        pants_torsion(0.0, 1.0, -1.0)


def test_lens_json():
    L = LensSpace(7, (1, 2))
    assert L.to_json() == {"p": 7, "q": [1, 2]}
    assert LensSpace.from_json(L.to_json()) == L
    assert len(marked_profile(L)) == 6
