"""
Named complexes: lens spaces, subdivided circles, pairs of pants; lens
space classification predicates and torsion profiles.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .chain_complex import COMPLEX, BasedChainComplex, group_ring
from .errors import NonAcyclicError, TorsionError
from .group_ring import Ambiguity, GroupRingElement, Representation, TorsionClass

PROFILE_TOL = 1e-9


@dataclass(frozen=True)
class LensSpace:
    """
    ``L(p; q_1, ..., q_n)``; the ``q_k`` are stored reduced mod ``p`` and
    ``r`` holds their inverse residues.
    """

    p: int
    q: tuple
    r: tuple = field(init=False)

    def __init__(self, p: int, q: Sequence[int]):
        p = int(p)
        if p < 1:
            raise ValueError("p must be >= 1")
        q = tuple(int(x) % p for x in q)
        if not q:
            raise ValueError("a lens space needs at least one q")
        for x in q:
            if math.gcd(x, p) != 1:
                raise ValueError(f"q = {x} is not coprime with p = {p}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "r", tuple(pow(x, -1, p) if p > 1 else 0 for x in q))

    @classmethod
    def three_dim(cls, p: int, q: int) -> "LensSpace":
        """The 3-manifold ``L(p, q)``, i.e. ``L(p; 1, q)``."""
        return cls(p, (1, q))

    @property
    def n(self) -> int:
        return len(self.q)

    @property
    def dimension(self) -> int:
        return 2 * self.n - 1

    def to_json(self) -> dict:
        return {"p": self.p, "q": list(self.q)}

    @classmethod
    def from_json(cls, data: dict) -> "LensSpace":
        return cls(data["p"], data["q"])

    def __str__(self):
        return f"L({self.p}; {', '.join(map(str, self.q))})"


def eta(p: int, k: int) -> Representation:
    """The representation ``sigma -> exp(2 pi i k / p)``."""
    return Representation.root_of_unity(p, k)


def lens_chain_complex(L: LensSpace) -> BasedChainComplex:
    """
    Equivariant cellular chains of the universal cover ``S^{2n-1}`` over
    ``Z[Z_p]``: ``d_{2i-1} = sigma^{r_i} - 1`` and ``d_{2i} = nu``.
    """
    p = L.p
    ring = group_ring(p)
    nu = GroupRingElement.norm_element(p)
    mats = [None]
    for deg in range(1, 2 * L.n):
        if deg % 2 == 1:
            x = GroupRingElement.sigma(p, L.r[(deg - 1) // 2]) - 1
        else:
            x = nu
        M = np.empty((1, 1), dtype=object)
        M[0, 0] = x
        mats.append(M)
    labels = [[f"e{deg}"] for deg in range(2 * L.n)]
    return BasedChainComplex(ring, [1] * (2 * L.n), mats, labels)


def _check_eta(L: LensSpace, rep: Representation) -> None:
    if not rep.satisfies_order(L.p):
        raise TorsionError(f"eta must be a {L.p}-th root of unity")
    if rep.is_trivial:
        raise NonAcyclicError("eta = 1: H_0 and H_{2n-1} are nonzero")


def lens_ambiguity(L: LensSpace, rep: Representation) -> Ambiguity:
    return Ambiguity.powers(L.p, rep.value)


def lens_torsion(L: LensSpace, rep: Representation) -> TorsionClass:
    """``prod_i (eta^{r_i} - 1)^{-1}`` modulo ``+-eta^j``."""
    _check_eta(L, rep)
    value = 1 + 0j
    for r in L.r:
        value /= rep.power(r) - 1
    return TorsionClass(value, lens_ambiguity(L, rep), "lens_closed_form")


def three_dim_R_torsion(p: int, q: int, rep: Representation) -> float:
    """``|(1 - eta)(1 - eta^r)|^{-2}`` for ``L(p, q)``, ``q r = 1 mod p``."""
    if math.gcd(q, p) != 1:
        raise ValueError(f"q = {q} is not coprime with p = {p}")
    if not rep.satisfies_order(p):
        raise TorsionError(f"eta must be a {p}-th root of unity")
    if rep.is_trivial:
        raise NonAcyclicError("eta = 1")
    r = pow(q, -1, p)
    return abs((1 - rep.value) * (1 - rep.power(r))) ** -2


def torsion_profile(L: LensSpace) -> list[float]:
    """Sorted multiset ``{|tau_eta(L)|^2 : eta = exp(2 pi i k / p), k = 1..p-1}``."""
    return sorted(marked_profile(L))


def marked_profile(L: LensSpace) -> list[float]:
    """``|tau_eta(L)|^2`` indexed by ``k = 1..p-1`` (uses the preferred generator)."""
    return [lens_torsion(L, eta(L.p, k)).modulus_squared for k in range(1, L.p)]


def _same_profile(a, b, tol=PROFILE_TOL) -> bool:
    return len(a) == len(b) and all(abs(x - y) <= tol * max(1.0, abs(y)) for x, y in zip(a, b))


def profiles_match(L: LensSpace, Lp: LensSpace, marked: bool = True,
                   tol: float = PROFILE_TOL) -> tuple[bool, int | None]:
    """
    Compare torsion profiles.

    ``marked``: ``|tau_{eta^k}(L)|^2 = |tau_{eta^k}(L')|^2`` for all ``k``.
    Otherwise scan remarkings ``k -> m k`` of ``L'`` over units ``m`` and
    return the first ``m`` that matches.
    """
    if L.p != Lp.p or L.n != Lp.n:
        return False, None
    a, b = marked_profile(L), marked_profile(Lp)
    ms = [1] if marked else [m for m in range(1, L.p) if math.gcd(m, L.p) == 1] or [1]
    for m in ms:
        remarked = [b[(m * k) % L.p - 1] for k in range(1, L.p)]
        if _same_profile(a, remarked, tol):
            return True, m
    return False, None


def _units(p: int) -> list[int]:
    return [m for m in range(1, p) if math.gcd(m, p) == 1] or [0]


def _check_same_family(L: LensSpace, Lp: LensSpace) -> None:
    if L.p != Lp.p or L.n != Lp.n:
        raise ValueError(f"{L} and {Lp} have different p or dimension")


def homotopy_equivalent(L: LensSpace, Lp: LensSpace, marked: bool = False) -> tuple[bool, int | None]:
    """
    ``m^n q'_1...q'_n = +- q_1...q_n (mod p)`` for some unit ``m`` (``m = 1``
    when the preferred generator must be preserved). Returns the first witness.
    """
    _check_same_family(L, Lp)
    p = L.p
    prod_q = math.prod(L.q) % p
    prod_qp = math.prod(Lp.q) % p
    for m in ([1] if marked else _units(p)):
        lhs = (pow(m, L.n, p) * prod_qp) % p
        if lhs == prod_q % p or lhs == (-prod_q) % p:
            return True, m
    return False, None


def simple_homotopy_equivalent(L: LensSpace, Lp: LensSpace, marked: bool = False):
    """
    ``q'_k = +- m q_{pi(k)} (mod p)`` for a permutation ``pi`` and unit ``m``
    (``m = 1`` when marked). Returns ``(found, (m, pi, signs))``.
    """
    _check_same_family(L, Lp)
    p = L.p
    for m in ([1] if marked else _units(p)):
        for perm in itertools.permutations(range(L.n)):
            signs = []
            for k in range(L.n):
                target = (m * L.q[perm[k]]) % p
                if Lp.q[k] == target:
                    signs.append(1)
                elif Lp.q[k] == (-target) % p:
                    signs.append(-1)
                else:
                    break
            else:
                return True, (m, perm, tuple(signs))
    return False, None


def homeomorphic_3d(p: int, q1: int, q2: int) -> bool:
    """``q1 q2 = +-1`` or ``q1 = +-q2 (mod p)``."""
    for q in (q1, q2):
        if math.gcd(q, p) != 1:
            raise ValueError(f"q = {q} is not coprime with p = {p}")
    return ((q1 * q2) % p in (1 % p, (-1) % p)) or (q1 % p in (q2 % p, (-q2) % p))


def whitehead_image(L: LensSpace, Lp: LensSpace, m: int, rep: Representation) -> TorsionClass:
    """
    Image of the Whitehead torsion of the homotopy equivalence ``L -> L'``
    sending ``sigma`` to ``sigma'^m``: ``tau_{eta'}(L') / tau_eta(L)`` with
    ``eta' = eta^r``, ``m r = 1 (mod p)``.
    """
    _check_same_family(L, Lp)
    p = L.p
    if math.gcd(m, p) != 1:
        raise TorsionError(f"m = {m} is not a unit mod {p}")
    lhs = (pow(m, L.n, p) * math.prod(Lp.q)) % p
    prod_q = math.prod(L.q) % p
    if lhs not in (prod_q, (-prod_q) % p):
        raise TorsionError(f"m = {m} does not define a homotopy equivalence {L} -> {Lp}")
    _check_eta(L, rep)
    r = pow(m, -1, p)
    if rep.kind == "root_of_unity":
        rep_p = Representation.root_of_unity(rep.p, rep.k * r)
    else:
        rep_p = Representation.complex_eval(rep.power(r))
    ratio = lens_torsion(Lp, rep_p).value / lens_torsion(L, rep).value
    return TorsionClass(ratio, lens_ambiguity(L, rep), "whitehead_image")


def franz_search(p: int, bound: int, tol: float = 1e-8) -> list[dict[int, int]]:
    """
    All integer vectors ``{a_j}`` over units ``j`` mod ``p`` with
    ``|a_j| <= bound``, ``a_j = a_{-j}``, ``sum a_j = 0`` and
    ``prod_j (eta^j - 1)^{a_j} = 1`` for every ``p``-th root ``eta != 1``.
    """
    if p < 3:
        raise ValueError("p must be >= 3")
    units = [j for j in range(1, p) if math.gcd(j, p) == 1]
    reps = [j for j in units if j < p - j]
    k = np.arange(1, p)
    # logs of (eta^j - 1)(eta^{-j} - 1) for eta = exp(2 pi i k / p); the branch is irrelevant for integer exponents
    logs = np.array([[cmath.log((cmath.exp(2j * math.pi * ((kk * j) % p) / p) - 1)
                                * (cmath.exp(-2j * math.pi * ((kk * j) % p) / p) - 1))
                      for j in reps] for kk in k])
    rng = range(-bound, bound + 1)
    cand = np.array([v for v in itertools.product(rng, repeat=len(reps)) if sum(v) == 0],
                    dtype=float).reshape(-1, len(reps))
    if cand.size == 0:
        return []
    prods = np.exp(cand @ logs.T)
    ok = np.all(np.abs(prods - 1) < tol, axis=1)
    out = []
    for v in cand[ok].astype(int):
        a = {}
        for j, x in zip(reps, v):
            a[j] = int(x)
            a[p - j] = int(x)
        out.append(dict(sorted(a.items())))
    return out


def _cell_holonomy(rep: Representation, N: int) -> complex:
    if rep.kind == "root_of_unity":
        return cmath.exp(2j * math.pi * rep.k / (rep.p * N))
    if rep.kind == "angle":
        return cmath.exp(1j * rep.psi / N)
    return rep.t ** (1.0 / N)


def circle_complex(N: int, rep: Representation) -> BasedChainComplex:
    """
    Circle with ``N`` vertices and ``N`` edges, holonomy spread evenly:
    ``d e_j = h v_{j+1} - v_j`` with ``h^N`` the total holonomy.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if rep.is_trivial:
        raise NonAcyclicError("total holonomy is 1; the twisted circle is not acyclic")
    h = _cell_holonomy(rep, N)
    D = -np.eye(N, dtype=complex)
    for j in range(N):
        D[(j + 1) % N, j] += h
    labels = [[f"v{j}" for j in range(N)], [f"e{j}" for j in range(N)]]
    return BasedChainComplex(COMPLEX, [N, N], [D], labels)


def interval_complex() -> BasedChainComplex:
    """Integer chains of ``[0, 1]``: two vertices, one edge."""
    return BasedChainComplex.from_json({"ring": {"type": "integer"}, "ranks": [2, 1],
                                        "boundaries": [[[-1], [1]]]})


def point_complex() -> BasedChainComplex:
    return BasedChainComplex.from_json({"ring": {"type": "integer"}, "ranks": [1], "boundaries": []})


def sphere2_complex() -> BasedChainComplex:
    """``S^2 = e^0 + e^2``."""
    return BasedChainComplex.from_json({"ring": {"type": "integer"}, "ranks": [1, 0, 1],
                                        "boundaries": [[], []]})


def ball3_complex() -> BasedChainComplex:
    """``B^3 = e^0 + e^2 + e^3`` with ``d e^3 = e^2``."""
    return BasedChainComplex.from_json({"ring": {"type": "integer"}, "ranks": [1, 0, 1, 1],
                                        "boundaries": [[], [], [[1]]]})


def _rotation(psi: float) -> np.ndarray:
    c, s = math.cos(psi), math.sin(psi)
    return np.array([[c, -s], [s, c]])


def _check_pants(psis) -> None:
    total = math.remainder(sum(psis), 2 * math.pi)
    if abs(total) > 1e-9:
        raise TorsionError("holonomies must multiply to 1 (angles summing to 0 mod 2 pi)")
    for psi in psis:
        if abs(math.remainder(psi, 2 * math.pi)) <= 1e-12:
            raise NonAcyclicError("a boundary holonomy is trivial")


def pants_torsion(psi1: float, psi2: float, psi3: float) -> float:
    """``det((1 - g1)(1 - g2)(1 - g3))^{1/2} = prod_i |e^{i psi_i} - 1|`` for rotations ``g_i``."""
    _check_pants((psi1, psi2, psi3))
    return math.prod(abs(cmath.exp(1j * psi) - 1) for psi in (psi1, psi2, psi3))


def pants_torsion_matrix(psi1: float, psi2: float, psi3: float) -> float:
    """Same value through the 2x2 rotation matrices."""
    _check_pants((psi1, psi2, psi3))
    I = np.eye(2)
    M = (I - _rotation(psi1)) @ (I - _rotation(psi2)) @ (I - _rotation(psi3))
    return math.sqrt(np.linalg.det(M))


def circle_arcs_mayer_vietoris(rep: Representation):
    """
    The twisted circle ``Z = X u Y`` cut into two arcs meeting in two points.

    Returns ``(C(X n Y), C(X) + C(Y), C(Z), inclusion, projection)`` for the
    short exact sequence ``0 -> C(X n Y) -> C(X) + C(Y) -> C(Z) -> 0`` with
    ``inclusion = (incl, -incl)`` and ``projection = incl + incl``. The arc
    ``Y`` carries the holonomy ``h`` on its edge: ``d e1 = h v0 - v1``.
    """
    if rep.is_trivial:
        raise NonAcyclicError("total holonomy is 1; the twisted circle is not acyclic")
    h = rep.value
    points = BasedChainComplex(COMPLEX, [2], [], [["v0", "v1"]])
    # degree 0 basis: X.v0, X.v1, Y.v0, Y.v1; degree 1: X.e0, Y.e1
    arcs = BasedChainComplex(COMPLEX, [4, 2], [np.array([[-1, 0], [1, 0], [0, h], [0, -1]])],
                             [["x0", "x1", "y0", "y1"], ["e0", "e1"]])
    Z = BasedChainComplex(COMPLEX, [2, 2], [np.array([[-1, h], [1, -1]])],
                          [["v0", "v1"], ["e0", "e1"]])
    I2 = np.eye(2)
    inclusion = [np.vstack([I2, -I2]), np.zeros((2, 0))]
    projection = [np.hstack([I2, I2]), I2]
    return points, arcs, Z, inclusion, projection
