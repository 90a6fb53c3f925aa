"""
Zeta-regularized determinants on the circle.

The twisted Laplacian of a flat SO(2) bundle with holonomy angle psi has
spectrum ``(2 pi k + psi)^2``, ``k in Z``, each with multiplicity 2, in both
form degrees. Its zeta function is a pair of Hurwitz zeta functions, which
are continued to ``s = 0`` by Euler-Maclaurin summation.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .chain_complex import RANK_RTOL
from .errors import NonAcyclicError
from .group_ring import Representation

HEAD_TERMS = 32
MAX_ORDER = 6          # Bernoulli corrections through B_12
ZETA_TOL = 1e-12


def _bernoulli(n: int) -> list[Fraction]:
    """``B_0 .. B_n`` (with ``B_1 = -1/2``) by the Akiyama-Tanigawa algorithm."""
    out, A = [], [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        A[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            A[j - 1] = j * (A[j - 1] - A[j])
        out.append(A[0])
    if n >= 1:
        out[1] = -out[1]
    return out


_B = _bernoulli(2 * MAX_ORDER + 2)
_EM_COEF = [float(_B[2 * j] / math.factorial(2 * j)) for j in range(MAX_ORDER + 2)]


def _euler_maclaurin(s: complex, a: float, K: int, order: int):
    """Value and s-derivative of ``sum_{k>=0} (k + a)^{-s}`` with ``K`` head terms."""
    val = 0j
    der = 0j
    for k in range(K):
        x = k + a
        lx = math.log(x)
        t = cmath.exp(-s * lx)
        val += t
        der -= lx * t
    x = K + a
    lx = math.log(x)
    xs = cmath.exp(-s * lx)          # x^{-s}
    # tail integral x^{1-s}/(s-1)
    tail = x * xs / (s - 1)
    val += tail
    der += tail * (-lx - 1 / (s - 1))
    val += xs / 2
    der += -lx * xs / 2
    # Bernoulli corrections: B_2j/(2j)! * s(s+1)...(s+2j-2) * x^{-s-2j+1}
    last = 0j
    for j in range(1, order + 1):
        factors = [s + i for i in range(2 * j - 1)]
        poch = 1 + 0j
        for f in factors:
            poch *= f
        dpoch = 0j
        for i in range(len(factors)):
            prod = 1 + 0j
            for m, f in enumerate(factors):
                if m != i:
                    prod *= f
            dpoch += prod
        xp = xs * x ** (1 - 2 * j)
        term = _EM_COEF[j] * poch * xp
        val += term
        der += _EM_COEF[j] * xp * (dpoch - lx * poch)
        last = term
    return val, der, last


def _hurwitz(s: complex, a: float):
    s = complex(s)
    if s == 1:
        raise ValueError("Hurwitz zeta has a pole at s = 1")
    if not 0 < a <= 1:
        raise ValueError("a must lie in (0, 1]")
    K = HEAD_TERMS
    while True:
        val, der, last = _euler_maclaurin(s, a, K, MAX_ORDER)
        if abs(last) <= ZETA_TOL * max(1.0, abs(val)) or K > 1 << 16:
            return val, der
        K *= 2


def hurwitz_zeta(s: complex, a: float) -> complex:
    """``zeta(s, a) = sum_{k>=0} (k + a)^{-s}``, continued to all ``s != 1``."""
    return _hurwitz(s, a)[0]


def hurwitz_zeta_ds(s: complex, a: float) -> complex:
    """``d/ds zeta(s, a)``."""
    return _hurwitz(s, a)[1]


@dataclass(frozen=True)
class CircleBundle:
    """Flat SO(2) bundle over the unit-length circle with holonomy angle ``psi``."""

    psi: float

    def __post_init__(self):
        r = math.remainder(self.psi, 2 * math.pi)
        if abs(r) <= 1e-12:
            raise NonAcyclicError("psi = 0 mod 2 pi: the twisted de Rham complex is not acyclic")

    @property
    def normalized_psi(self) -> float:
        """``psi`` reduced into ``(0, 2 pi)``."""
        return self.psi % (2 * math.pi)

    @property
    def representation(self) -> Representation:
        return Representation.angle(self.psi)


def circle_zeta(s: complex, bundle: CircleBundle, degree: int = 0) -> complex:
    """``2 (2 pi)^{-2s} (zeta(2s, a) + zeta(2s, 1 - a))`` with ``a = psi / 2 pi``."""
    if degree not in (0, 1):
        raise ValueError("the circle has form degrees 0 and 1")
    a = bundle.normalized_psi / (2 * math.pi)
    s = complex(s)
    return 2 * (2 * math.pi) ** (-2 * s) * (hurwitz_zeta(2 * s, a) + hurwitz_zeta(2 * s, 1 - a))


def circle_zeta_ds(s: complex, bundle: CircleBundle, degree: int = 0) -> complex:
    if degree not in (0, 1):
        raise ValueError("the circle has form degrees 0 and 1")
    a = bundle.normalized_psi / (2 * math.pi)
    s = complex(s)
    pref = 2 * (2 * math.pi) ** (-2 * s)
    z = hurwitz_zeta(2 * s, a) + hurwitz_zeta(2 * s, 1 - a)
    dz = hurwitz_zeta_ds(2 * s, a) + hurwitz_zeta_ds(2 * s, 1 - a)
    return pref * (-2 * math.log(2 * math.pi) * z + 2 * dz)


def circle_det_laplacian(bundle: CircleBundle, degree: int = 0) -> float:
    """``exp(-zeta'_Delta(0))``; equals ``(2 sin(psi/2))^4``."""
    return math.exp(-circle_zeta_ds(0, bundle, degree).real)


def circle_rs_torsion(bundle: CircleBundle) -> float:
    """Ray-Singer torsion ``(det Delta^(1))^{1/2} = (2 sin(psi/2))^2``."""
    return math.sqrt(circle_det_laplacian(bundle, degree=1))


@dataclass(frozen=True)
class CheegerMullerReport:
    psi: float
    cells: int
    det_laplacian: float
    rs_torsion: float
    cellular: float
    rel_error: float

    def to_json(self) -> dict:
        return {"psi": self.psi, "cells": self.cells, "det_laplacian": self.det_laplacian,
                "rs_torsion": self.rs_torsion, "cellular": self.cellular,
                "rel_error": self.rel_error}


def cellular_cochain_torsion(bundle: CircleBundle, N: int, rtol=RANK_RTOL) -> float:
    """O(2) cochain R-torsion ``|tau_chain|^{-2}`` of the ``N``-cell twisted circle."""
    from .spaces import circle_complex
    from .torsion import torsion_milnor

    C = circle_complex(N, bundle.representation)
    return abs(torsion_milnor(C, rtol=rtol).value) ** -2


def cheeger_muller_report(bundle: CircleBundle, N: int) -> CheegerMullerReport:
    analytic = circle_rs_torsion(bundle)
    cellular = cellular_cochain_torsion(bundle, N)
    return CheegerMullerReport(bundle.psi, N, circle_det_laplacian(bundle), analytic, cellular,
                               abs(cellular - analytic) / analytic)


def cheeger_muller_check(bundle: CircleBundle, N: int) -> float:
    """Relative difference between cellular and Ray-Singer torsion of the circle."""
    return cheeger_muller_report(bundle, N).rel_error
