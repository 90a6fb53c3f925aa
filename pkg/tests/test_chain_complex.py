import cmath
import math

import numpy as np
import pytest

from rtorsion.chain_complex import (COMPLEX, INTEGER, BasedChainComplex, augmentation, direct_sum,
                                    dual_complex, group_ring, homology_ranks, integral_homology,
                                    random_complex, specialize, tensor_product, validate,
                                    zero_complex)
from rtorsion.corpus import build_fixtures, fixture_names, laurent_circle, load_fixture_json
from rtorsion.errors import InvalidComplexError, RingMismatchError
from rtorsion.group_ring import GroupRingElement, Representation
from rtorsion.spaces import (LensSpace, interval_complex, lens_chain_complex, point_complex,
                             sphere2_complex)

from oracles import milnor_oracle, same_mod_sign


def complex_2term(M):
    M = np.asarray(M, dtype=complex)
    return BasedChainComplex(COMPLEX, [M.shape[0], M.shape[1]], [M])


def test_validate_accepts_and_rejects():
    assert validate(lens_chain_complex(LensSpace(5, (1, 2))))["valid"]
    assert validate(complex_2term(np.eye(3)))["valid"]
    with pytest.raises(InvalidComplexError) as err:
        BasedChainComplex(COMPLEX, [2, 2, 2], [np.eye(2), np.eye(2)])
    assert err.value.degree == 2
    with pytest.raises(InvalidComplexError) as err:
        BasedChainComplex(INTEGER, [2, 1], [[[1, 2]]])
    assert err.value.degree == 1


def test_corrupted_fixtures_fail_validation():
    names = [n for n in fixture_names() if n.startswith("corrupt")]
    assert len(names) == 3
    for name in names:
        with pytest.raises(InvalidComplexError):
            BasedChainComplex.from_json(load_fixture_json(name))


def test_shipped_fixtures_match_generator():
    built = build_fixtures()
    assert sorted(built) == fixture_names()
    for name, data in built.items():
        assert load_fixture_json(name) == data


def test_json_round_trip_exact_domains():
    for name in fixture_names():
        if name.startswith("corrupt"):
            continue
        C = BasedChainComplex.from_json(load_fixture_json(name))
        assert BasedChainComplex.loads(C.dumps()) == C
        assert C.to_json() == load_fixture_json(name)


def test_json_group_ring_entries():
    C = lens_chain_complex(LensSpace(7, (1, 2)))
    data = C.to_json()
    assert data["ring"] == {"type": "cyclic", "p": 7}
    # sigma^4 - 1 in degree 3 (2 * 4 = 1 mod 7)
    assert sorted(map(tuple, data["boundaries"][3][0][0])) == [(-1, 0), (1, 4)]


def test_specialize_circle():
    circle = laurent_circle(1)
    for t in (2, 0.5 + 1j, -3):
        D = specialize(circle, Representation.complex_eval(t))
        assert D.d(1)[0, 0] == pytest.approx(t - 1)
    assert homology_ranks(specialize(circle, Representation.complex_eval(2))) == [0, 0]
    assert homology_ranks(specialize(circle, Representation.complex_eval(1))) == [1, 1]


def test_specialize_lens():
    L = LensSpace(7, (1, 1))
    D = specialize(lens_chain_complex(L), Representation.root_of_unity(7, 1))
    eta = cmath.exp(2j * math.pi / 7)
    assert D.d(1)[0, 0] == pytest.approx(eta - 1)
    assert D.d(2)[0, 0] == 0
    assert D.d(3)[0, 0] == pytest.approx(eta - 1)
    assert homology_ranks(D) == [0, 0, 0, 0]


def test_augmentation_of_lens_chains():
    Z = augmentation(lens_chain_complex(LensSpace(5, (1, 2, 3))))
    assert [int(Z.d(k)[0, 0]) for k in range(1, 6)] == [0, 5, 0, 5, 0]


def test_integral_homology_of_lens_space():
    H = integral_homology(augmentation(lens_chain_complex(LensSpace(5, (1, 2)))))
    assert H == [(1, []), (0, [5]), (0, []), (1, [])]
    zero = BasedChainComplex(INTEGER, [1, 1], [[[0]]])
    assert integral_homology(zero) == [(1, []), (1, [])]


def test_integral_homology_mixed():
    # Z^2 -> Z^2 with d = diag(2, 0), then H_0 = Z + Z/2, H_1 = Z
    C = BasedChainComplex(INTEGER, [2, 2], [[[2, 0], [0, 0]]])
    assert integral_homology(C) == [(1, [2]), (1, [])]


def test_euler_characteristic_conservation(rng):
    for _ in range(30):
        n = int(rng.integers(1, 5))
        b = [int(x) for x in rng.integers(0, 3, size=n)] + [0]
        h = [int(x) for x in rng.integers(0, 3, size=n + 1)]
        C = random_complex(rng, b, h)
        hr = homology_ranks(C)
        assert hr == h
        assert sum((-1) ** k * x for k, x in enumerate(hr)) == C.euler_characteristic


def test_dual_is_an_involution(rng):
    C = random_complex(rng, [2, 1, 1, 0])
    D = dual_complex(dual_complex(C))
    assert D.ranks == C.ranks
    for k in range(1, C.top_degree + 1):
        assert np.allclose(D.d(k), C.d(k))
    M = np.array([[1, 2j], [3, 4]])
    assert np.allclose(dual_complex(complex_2term(M)).d(1), M.conj().T)


def test_dual_of_group_ring_complex_uses_involution():
    C = lens_chain_complex(LensSpace(7, (1, 2)))
    D = dual_complex(C)
    assert D.ranks == C.ranks
    assert D.d(1)[0, 0] == GroupRingElement.sigma(7, -4) - 1
    assert D.d(2)[0, 0] == GroupRingElement.norm_element(7)


def test_direct_sum():
    A = complex_2term([[2.0]])
    B = BasedChainComplex(COMPLEX, [2, 3], [np.zeros((2, 3))])
    assert direct_sum(A, B).ranks == (3, 4)
    Z = zero_complex()
    S = direct_sum(A, Z)
    assert S.ranks == A.ranks and np.allclose(S.d(1), A.d(1))
    with pytest.raises(RingMismatchError):
        direct_sum(A, BasedChainComplex(INTEGER, [1], []))


def test_tensor_with_point_is_identity(rng):
    C = random_complex(rng, [1, 2, 0])
    P = tensor_product(C, point_complex())
    assert P.ranks == C.ranks
    for k in (1, 2):
        assert np.allclose(P.d(k), C.d(k))


def test_tensor_product_is_a_complex(rng):
    C = random_complex(rng, [1, 2, 1, 0], [1, 0, 1, 0])
    for Y in (interval_complex(), sphere2_complex()):
        P = tensor_product(C, Y)
        for k in range(2, P.top_degree + 1):
            assert np.abs(P.d(k - 1) @ P.d(k)).max() < 1e-12


def test_tensor_products_at_group_ring_level_commute_with_specialization():
    rep = Representation.complex_eval(0.5 - 2j)
    circle = laurent_circle(2)
    for Y in (interval_complex(), sphere2_complex()):
        a = specialize(tensor_product(circle, Y), rep)
        b = tensor_product(specialize(circle, rep), Y)
        assert a.ranks == b.ranks
        assert all(np.allclose(a.d(k), b.d(k)) for k in range(1, a.top_degree + 1))


def test_circle_times_interval_and_sphere():
    t = 2.5 + 0.5j
    circle = specialize(laurent_circle(1), Representation.complex_eval(t))
    base = 1 / (t - 1)
    tau_i = milnor_oracle(*_parts(tensor_product(circle, interval_complex())))
    tau_s = milnor_oracle(*_parts(tensor_product(circle, sphere2_complex())))
    assert same_mod_sign(tau_i, base)
    assert same_mod_sign(tau_s, base ** 2)


def _parts(C):
    return [None] + [C.d(k) for k in range(1, C.top_degree + 1)], list(C.ranks)


def test_ring_from_json_accepts_laurent():
    C = BasedChainComplex.from_json({"ring": {"type": "laurent"}, "ranks": [1, 1],
                                     "boundaries": [[[[[-1, 0], [1, 1]]]]]})
    assert C.ring == group_ring(0)
