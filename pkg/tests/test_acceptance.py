"""
Acceptance suite: one test per criterion, each recording a single
pass/fail line (collected in the "acceptance criteria" summary section).
"""
import itertools
import math
import time

import numpy as np
import pytest

from rtorsion.analytic import CircleBundle, cellular_cochain_torsion, circle_det_laplacian
from rtorsion.chain_complex import (augmentation, direct_sum, dual_complex, integral_homology,
                                    random_acyclic_complex, random_complex, specialize,
                                    tensor_product)
from rtorsion.group_ring import class_equal
from rtorsion.snf import invariant_factors
from rtorsion.spaces import (LensSpace, circle_complex, eta, franz_search, homeomorphic_3d,
                             homotopy_equivalent, interval_complex, lens_ambiguity,
                             lens_chain_complex, lens_torsion, point_complex,
                             simple_homotopy_equivalent, sphere2_complex, torsion_profile,
                             whitehead_image)
from rtorsion.group_ring import Representation
from rtorsion.torsion import (build_contraction, harmonic_basis, laplacian_torsion, les_torsion,
                              random_contraction, torsion_alternating, torsion_contraction,
                              torsion_milnor)

from oracles import determinantal_divisors, rel, same_mod_sign
from test_torsion import random_extension

L71, L72 = LensSpace(7, (1, 1)), LensSpace(7, (1, 2))
TABLE = {L71: [1.763, 0.167, 0.069], L72: [0.349, 0.543, 0.108]}


def units(p):
    return [u for u in range(1, p) if math.gcd(u, p) == 1]


def _table_deviations():
    rows = []
    for L, printed in TABLE.items():
        for k, ref in zip((1, 2, 3), printed):
            vals = [lens_torsion(L, eta(7, s * k)).modulus_squared for s in (1, -1)]
            rows.append((L, k, ref, vals, max(abs(v - ref) for v in vals)))
    return rows


@pytest.mark.xfail(strict=True, reason="the printed 1.763 for L(7;1,1) at eta^{+-1} is 1.763545 "
                                       "truncated; it misses the 5e-4 window by 4.5e-5")
def test_criterion_01_lens_tables(acceptance):
    t0 = time.perf_counter()
    rows = _table_deviations()
    elapsed = time.perf_counter() - t0
    bad = [r for r in rows if r[4] > 5e-4]
    ok = not bad and elapsed < 1
    detail = (f"{len(rows) - len(bad)}/{len(rows)} printed values within 5e-4"
              + "".join(f"; {r[0]} k=+-{r[1]}: {r[3][0]:.6f} vs {r[2]} (diff {r[4]:.2e})" for r in bad))
    acceptance(1, ok, detail, elapsed)
    assert ok


def test_criterion_01_lens_tables_to_printed_digits(acceptance):
    # every printed value equals the exact value cut to 3 decimals, rounded or truncated
    t0 = time.perf_counter()
    rows = _table_deviations()
    elapsed = time.perf_counter() - t0
    ok = elapsed < 1
    for _, _, ref, vals, _ in rows:
        for v in vals:
            ok &= round(v, 3) == ref or math.floor(v * 1000) / 1000 == ref
    acceptance("1b", ok, "all six table values reproduce the printed digits "
               "(five rounded, L(7;1,1) eta^{+-1} truncated)", elapsed)
    assert ok


def test_criterion_02_whitehead_image(acceptance):
    t0 = time.perf_counter()
    got = [whitehead_image(L71, L72, 2, eta(7, k)).modulus_squared for k in (1, 2, 3)]
    elapsed = time.perf_counter() - t0
    err = max(abs(a - b) for a, b in zip(got, [0.061, 2.088, 7.851]))
    ok = err < 5e-4 and elapsed < 1
    acceptance(2, ok, f"|h_* tau(f)|^2 = {', '.join(f'{x:.4f}' for x in got)}; max diff {err:.1e}",
               elapsed)
    assert ok


def test_criterion_03_cheeger_muller_circle(acceptance):
    t0 = time.perf_counter()
    worst_cell, worst_det = 0.0, 0.0
    for psi in (0.5, 1.0, 2.0, math.pi):
        b = CircleBundle(psi)
        closed = (2 * math.sin(psi / 2)) ** 2
        worst_det = max(worst_det, rel(circle_det_laplacian(b), closed ** 2))
        for N in (1, 2, 8, 64):
            worst_cell = max(worst_cell, rel(cellular_cochain_torsion(b, N), closed))
    elapsed = time.perf_counter() - t0
    ok = worst_cell < 1e-9 and worst_det < 1e-8 and elapsed < 5
    acceptance(3, ok, f"cellular rel err {worst_cell:.1e} (< 1e-9), zeta det rel err "
               f"{worst_det:.1e} (< 1e-8)", elapsed)
    assert ok


def test_criterion_04_algorithm_agreement(acceptance):
    rng = np.random.default_rng(4)
    t0 = time.perf_counter()
    worst, worst_choice = 0.0, 0.0
    for _ in range(200):
        C = random_acyclic_complex(rng, max_degree=4, max_rank=6)
        m = abs(torsion_milnor(C).value)
        others = [abs(torsion_contraction(C).value), torsion_alternating(C), laplacian_torsion(C)[0]]
        worst = max([worst] + [rel(x, m) for x in others])
        a = torsion_contraction(C, build_contraction(C)).value
        b = torsion_contraction(C, random_contraction(C, rng)).value
        worst_choice = max(worst_choice, min(abs(a - b), abs(a + b)) / abs(a))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-9 and worst_choice < 1e-9 and elapsed < 30
    acceptance(4, ok, f"200 complexes: max rel spread {worst:.1e}; contraction choice "
               f"{worst_choice:.1e}", elapsed)
    assert ok


def test_criterion_05_multiplicativity_duality_scaling(acceptance):
    rng = np.random.default_rng(5)
    t0 = time.perf_counter()
    checks = {"sum": 0, "les": 0, "dual": 0, "scale": 0}
    fails = []
    for _ in range(50):
        C, D = random_acyclic_complex(rng, 3, 5), random_acyclic_complex(rng, 3, 5)
        checks["sum"] += 1
        if not same_mod_sign(torsion_milnor(direct_sum(C, D)).value,
                             torsion_milnor(C).value * torsion_milnor(D).value):
            fails.append("sum")
    for _ in range(50):
        Cp = random_complex(rng, [1, 1, 0], [1, 0, 1])
        Cpp = random_complex(rng, [1, 0, 1, 0], [0, 1, 1, 1])
        C, i, p = random_extension(rng, Cp, Cpp)
        hb = (harmonic_basis(Cp), harmonic_basis(C), harmonic_basis(Cpp))
        rhs = (torsion_milnor(Cp, hb[0]).value * torsion_milnor(Cpp, hb[2]).value
               * les_torsion(Cp, C, Cpp, i, p, hb).value)
        checks["les"] += 1
        if not same_mod_sign(torsion_milnor(C, hb[1]).value, rhs):
            fails.append("les")
    for _ in range(50):
        C = random_acyclic_complex(rng, 4, 6)
        expected = np.conj(torsion_milnor(C).value) ** ((-1) ** (C.top_degree + 1))
        checks["dual"] += 1
        if not same_mod_sign(torsion_milnor(dual_complex(C)).value, expected):
            fails.append("dual")
    for _ in range(50):
        b = [int(x) for x in rng.integers(0, 3, size=4)] + [0]
        h = [int(x) for x in rng.integers(0, 2, size=5)]
        C = random_complex(rng, b, h)
        alpha = complex(*rng.uniform(0.3, 2.0, size=2))
        hb = harmonic_basis(C)
        ratio = torsion_milnor(C.scaled(alpha), hb).value / torsion_milnor(C, hb).value
        checks["scale"] += 1
        if not same_mod_sign(ratio, alpha ** (-sum((-1) ** k * x for k, x in enumerate(b)))):
            fails.append("scale")
    elapsed = time.perf_counter() - t0
    ok = not fails
    acceptance(5, ok, ", ".join(f"{k} {v - fails.count(k)}/{v}" for k, v in checks.items()), elapsed)
    assert ok


def test_criterion_06_closed_form_vs_chain_complex(acceptance):
    # q_1 = 1 and q_2 <= ... <= q_n: permuting q only reorders the odd boundaries, and
    # L(p; m q) at eta has the same specialized matrices as L(p; q) at eta^{1/m}
    t0 = time.perf_counter()
    cases, bad = 0, []
    for p in range(2, 12):
        for n in (1, 2, 3):
            for rest in itertools.combinations_with_replacement(units(p), n - 1):
                L = LensSpace(p, (1, *rest))
                C = lens_chain_complex(L)
                for k in range(1, p):
                    rep = eta(p, k)
                    chain = torsion_milnor(specialize(C, rep)).with_ambiguity(lens_ambiguity(L, rep))
                    cases += 1
                    if not class_equal(chain, lens_torsion(L, rep)):
                        bad.append((L, k))
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 10
    acceptance(6, ok, f"{cases - len(bad)}/{cases} (p <= 11, n <= 3, every eta != 1) equal mod +-eta^j",
               elapsed)
    assert ok


def test_criterion_07_classification(acceptance):
    t0 = time.perf_counter()
    named = [
        homotopy_equivalent(LensSpace(5, (1, 1)), LensSpace(5, (1, 2)))[0] is False,
        homotopy_equivalent(L71, L72) == (True, 2),
        simple_homotopy_equivalent(L71, L72)[0] is False,
        homeomorphic_3d(7, 1, 2) is False,
        homeomorphic_3d(5, 2, 3) is True,
    ]
    pairs, mismatches = 0, 0
    for p in (5, 7, 11):
        spaces = [LensSpace(p, q) for q in itertools.product(units(p), repeat=2)]
        profiles = {L: torsion_profile(L) for L in spaces}
        for L, M in itertools.product(spaces, repeat=2):
            same = np.allclose(profiles[L], profiles[M], rtol=1e-9, atol=0)
            pairs += 1
            mismatches += same != simple_homotopy_equivalent(L, M)[0]
    elapsed = time.perf_counter() - t0
    ok = all(named) and mismatches == 0
    acceptance(7, ok, f"named cases {sum(named)}/5; profile equality <=> simple homotopy on "
               f"{pairs - mismatches}/{pairs} pairs", elapsed)
    assert ok


def test_criterion_08_franz(acceptance):
    t0 = time.perf_counter()
    sols = {p: franz_search(p, 3) for p in (5, 7)}
    elapsed = time.perf_counter() - t0
    ok = all(len(s) == 1 and not any(s[0].values()) for s in sols.values()) and elapsed < 10
    acceptance(8, ok, "p = 5, 7, bound 3: only the zero vector", elapsed)
    assert ok


def test_criterion_09_product_formula(acceptance):
    t0 = time.perf_counter()
    worst = 0.0
    for psi in (0.5, 1.0, 2.0, math.pi):
        for N in (1, 3):
            C = circle_complex(N, Representation.angle(psi))
            base = torsion_milnor(C).value
            for Y in (point_complex(), interval_complex(), sphere2_complex()):
                got = torsion_milnor(tensor_product(C, Y)).value
                want = base ** Y.euler_characteristic
                worst = max(worst, min(abs(got - want), abs(got + want)) / abs(want))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-9
    acceptance(9, ok, f"circle x (point, interval, S^2): max rel err {worst:.1e}", elapsed)
    assert ok


def test_criterion_10_integral_homology(acceptance):
    t0 = time.perf_counter()
    lens_ok, lens_cases = 0, 0
    for p in range(2, 13):
        for n in (1, 2, 3):
            for q in itertools.product(units(p), repeat=n):
                H = integral_homology(augmentation(lens_chain_complex(LensSpace(p, q))))
                expected = [(1, [])] + [(0, [p]), (0, [])] * (n - 1) + [(1, [])]
                lens_cases += 1
                lens_ok += H == expected
    # exhaustive: all shapes with at most 4 entries over [-3, 3], and all 2x3, 3x2, 3x3 over [-1, 1]
    shapes = [(m, n, range(-3, 4)) for m in range(1, 5) for n in range(1, 5) if m * n <= 4]
    shapes += [(2, 3, range(-1, 2)), (3, 2, range(-1, 2)), (3, 3, range(-1, 2))]
    snf_cases, snf_ok = 0, 0
    for m, n, entries in shapes:
        for flat in itertools.product(entries, repeat=m * n):
            M = [list(flat[i * n:(i + 1) * n]) for i in range(m)]
            snf_cases += 1
            snf_ok += invariant_factors(M) == determinantal_divisors(M)
    elapsed = time.perf_counter() - t0
    ok = lens_ok == lens_cases and snf_ok == snf_cases
    acceptance(10, ok, f"lens homology {lens_ok}/{lens_cases}; SNF vs minor-gcd oracle "
               f"{snf_ok}/{snf_cases}", elapsed)
    assert ok
