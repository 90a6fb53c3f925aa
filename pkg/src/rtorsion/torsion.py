"""
Torsion of based chain complexes over C.

Three independent routes to the same number are provided for acyclic
complexes: transition determinants against boundary-adapted bases
(:func:`torsion_milnor`), the determinant of ``(d + kappa)`` from even to odd
chains (:func:`torsion_contraction`), and the alternating product of
determinants of ``d`` restricted to coexact -> exact subspaces in
orthonormal bases (:func:`torsion_alternating`). :func:`laplacian_torsion`
expresses the same modulus through combinatorial Laplacian spectra and
also covers complexes with homology.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .chain_complex import (COMPLEX, RANK_RTOL, BasedChainComplex, HomologyBasis,
                            homology_ranks, numerical_rank)
from .errors import InvalidComplexError, NonAcyclicError, NotExactError, RingMismatchError
from .group_ring import SIGN, TorsionClass

EIG_RTOL = 1e-9


def _require_complex(C: BasedChainComplex) -> None:
    if C.ring.kind != "complex":
        raise RingMismatchError("torsion is computed over C; specialize or call to_complex() first")


def _require_acyclic(C: BasedChainComplex, rtol=RANK_RTOL) -> None:
    h = homology_ranks(C, rtol)
    if any(h):
        raise NonAcyclicError(f"complex is not acyclic: homology ranks {h}")


def _columns(vectors, rows: int) -> np.ndarray:
    """Vectors as a ``(rows, m)`` column matrix; empty input gives ``m = 0``."""
    V = np.asarray(vectors, dtype=complex)
    if V.size == 0:
        return np.zeros((rows, 0), dtype=complex)
    return V.reshape(rows, -1)


def _range_basis(M: np.ndarray, rtol=RANK_RTOL) -> np.ndarray:
    """Orthonormal basis of the column space of ``M``."""
    M = np.asarray(M, dtype=complex)
    if M.size == 0:
        return np.zeros((M.shape[0], 0), dtype=complex)
    U, s, _ = np.linalg.svd(M, full_matrices=False)
    r = int(np.sum(s > rtol * s[0])) if s.size and s[0] > 0 else 0
    return U[:, :r]


def _pivot_columns(M: np.ndarray, rtol=RANK_RTOL) -> np.ndarray:
    """Indices of ``rank M`` columns of ``M`` chosen by column-pivoted QR."""
    r = numerical_rank(M, rtol)
    if r == 0:
        return np.zeros(0, dtype=int)
    _, _, piv = scipy.linalg.qr(np.asarray(M, dtype=complex), mode="economic", pivoting=True)
    return np.sort(piv[:r])


# --------------------------------------------------------------------------
# Milnor torsion
# --------------------------------------------------------------------------

def _lift_matrices(C: BasedChainComplex, choice: str, rng, rtol):
    """
    For each degree k a matrix ``W_k`` (rank C_k x rank d_k) such that
    ``d_k W_k`` has full column rank; its columns lift a basis of ``B_{k-1}``.
    """
    lifts = []
    for k in range(C.top_degree + 2):
        D = C.d(k)
        r = numerical_rank(D, rtol)
        if choice == "pivoted":
            W = np.eye(D.shape[1], dtype=complex)[:, _pivot_columns(D, rtol)]
        elif choice == "random":
            if rng is None:
                rng = np.random.default_rng()
            W = (rng.standard_normal((D.shape[1], r))
                 + 1j * rng.standard_normal((D.shape[1], r)))
        else:
            raise ValueError(f"unknown lift choice {choice!r}")
        lifts.append(W)
    return lifts


def milnor_determinants(C: BasedChainComplex, hbasis: HomologyBasis | None = None,
                        lift_choice: str = "pivoted", rng=None, rtol=RANK_RTOL) -> list[complex]:
    """
    Per-degree determinants ``det[b_k h_k b_{k-1} / c_k]``: the determinant of
    the matrix whose columns are ``d_{k+1} W_{k+1}``, ``h_k`` and ``W_k`` in
    the stored basis.
    """
    _require_complex(C)
    hr = homology_ranks(C, rtol)
    if any(hr) and hbasis is None:
        raise NonAcyclicError(f"complex has homology {hr}; a homology basis is required")
    W = _lift_matrices(C, lift_choice, rng, rtol)
    dets = []
    for k in range(C.top_degree + 1):
        b_k = np.asarray(C.d(k + 1), dtype=complex) @ W[k + 1]
        h_k = np.zeros((C.ranks[k], 0), dtype=complex)
        if hbasis is not None:
            h_k = _columns(hbasis[k], C.ranks[k])
            if h_k.shape[1] != hr[k]:
                raise InvalidComplexError(
                    f"homology basis in degree {k} has {h_k.shape[1]} vectors, H_{k} has dim {hr[k]}",
                    degree=k)
            if h_k.shape[1]:
                res = np.abs(np.asarray(C.d(k), dtype=complex) @ h_k).max(initial=0.0)
                scale = max(1.0, np.abs(C.d(k)).max(initial=0.0) * np.abs(h_k).max())
                if res > 1e-9 * scale:
                    raise InvalidComplexError(f"homology basis vector in degree {k} is not a cycle",
                                              degree=k)
        M = np.hstack([b_k, h_k, W[k]])
        if M.shape[0] != M.shape[1]:
            raise NonAcyclicError(f"degree {k}: combined basis has {M.shape[1]} vectors for rank {M.shape[0]}")
        if M.shape[0] == 0:
            dets.append(1 + 0j)
            continue
        if numerical_rank(M, rtol) < M.shape[0]:
            raise InvalidComplexError(f"homology classes in degree {k} are dependent", degree=k)
        dets.append(complex(np.linalg.det(M)))
    return dets


def torsion_milnor(C: BasedChainComplex, hbasis: HomologyBasis | None = None,
                   lift_choice: str = "pivoted", rng=None, rtol=RANK_RTOL) -> TorsionClass:
    """
    Torsion ``prod_k [c_k / (b_k h_k b_{k-1})]^{(-1)^k}`` relative to the
    stored chain bases and the given homology basis, modulo sign.

    ``lift_choice="random"`` draws random boundary bases instead of pivoted
    ones; the value does not depend on this choice.
    """
    dets = milnor_determinants(C, hbasis, lift_choice, rng, rtol)
    value = 1 + 0j
    for k, d in enumerate(dets):
        # [c/b] = 1 / det(columns of b in c-coordinates)
        value *= d ** (-((-1) ** k))
    return TorsionClass(value, SIGN, "milnor")


# --------------------------------------------------------------------------
# chain contraction
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ChainContraction:
    """``kappa[k]`` maps degree k to degree k+1 (shape ``(rank C_{k+1}, rank C_k)``)."""

    kappa: tuple

    def __getitem__(self, k):
        return self.kappa[k]

    def residuals(self, C: BasedChainComplex) -> tuple[float, float]:
        """Max-entry residuals of ``d kappa + kappa d - 1`` and ``kappa^2``."""
        n = C.top_degree
        homotopy, square = 0.0, 0.0
        for k in range(n + 1):
            up = C.d(k + 1) @ self.kappa[k] if k < n else np.zeros((C.ranks[k],) * 2)
            down = self.kappa[k - 1] @ C.d(k) if k > 0 else np.zeros((C.ranks[k],) * 2)
            R = up + down - np.eye(C.ranks[k])
            homotopy = max(homotopy, float(np.abs(R).max(initial=0.0)))
            if k + 1 < n:
                square = max(square, float(np.abs(self.kappa[k + 1] @ self.kappa[k]).max(initial=0.0)))
        return homotopy, square


def build_contraction(C: BasedChainComplex, rtol=RANK_RTOL) -> ChainContraction:
    """
    Contraction from the orthogonal splitting ``C_k = im d_{k+1} + im d_k^*``:
    ``kappa_k`` is the Moore-Penrose pseudo-inverse of ``d_{k+1}``.
    """
    _require_complex(C)
    _require_acyclic(C, rtol)
    kappa = tuple(np.linalg.pinv(np.asarray(C.d(k + 1), dtype=complex), rcond=rtol)
                  for k in range(C.top_degree))
    return ChainContraction(kappa)


def random_contraction(C: BasedChainComplex, rng: np.random.Generator,
                       rtol=RANK_RTOL) -> ChainContraction:
    """
    Contraction with ``kappa^2 = 0`` built from random (non-orthogonal)
    complements of the boundaries.
    """
    _require_complex(C)
    _require_acyclic(C, rtol)
    n = C.top_degree
    Q = [_range_basis(C.d(k + 1), rtol) for k in range(n + 1)]
    b = [q.shape[1] for q in Q]
    # K_k: random complement of B_k in C_k, of dimension b_{k-1}
    K = []
    for k in range(n + 1):
        m = b[k - 1] if k else 0
        K.append(rng.standard_normal((C.ranks[k], m)) + 1j * rng.standard_normal((C.ranks[k], m)))
    kappa = []
    for k in range(n):
        if C.ranks[k] == 0:
            kappa.append(np.zeros((C.ranks[k + 1], 0), dtype=complex))
            continue
        coords = np.linalg.inv(np.hstack([Q[k], K[k]]))[:b[k]]       # B_k-coordinates along K_k
        G = np.linalg.lstsq(Q[k], C.d(k + 1) @ K[k + 1], rcond=None)[0]  # d K_{k+1} = Q_k G
        kappa.append(K[k + 1] @ np.linalg.solve(G, coords))
    return ChainContraction(tuple(kappa))


def _even_odd_matrix(C: BasedChainComplex, kappa: ChainContraction) -> np.ndarray:
    n = C.top_degree
    even = [k for k in range(n + 1) if k % 2 == 0]
    odd = [k for k in range(n + 1) if k % 2 == 1]

    def offsets(degs):
        off, acc = {}, 0
        for k in degs:
            off[k] = acc
            acc += C.ranks[k]
        return off, acc

    eo, ne = offsets(even)
    oo, no = offsets(odd)
    if ne != no:
        raise NonAcyclicError("even and odd chains have different total rank")
    M = np.zeros((no, ne), dtype=complex)
    for k in even:
        c0 = eo[k]
        if k - 1 in oo:
            D = C.d(k)
            M[oo[k - 1]:oo[k - 1] + D.shape[0], c0:c0 + D.shape[1]] += D
        if k + 1 in oo:
            Kk = kappa[k]
            M[oo[k + 1]:oo[k + 1] + Kk.shape[0], c0:c0 + Kk.shape[1]] += Kk
    return M


def torsion_contraction(C: BasedChainComplex, contraction: ChainContraction | None = None,
                        rtol=RANK_RTOL) -> TorsionClass:
    """Torsion as ``det (d + kappa): C_even -> C_odd`` in the stored bases, modulo sign."""
    _require_complex(C)
    if contraction is None:
        contraction = build_contraction(C, rtol)
    else:
        _require_acyclic(C, rtol)
    M = _even_odd_matrix(C, contraction)
    value = complex(np.linalg.det(M)) if M.size else 1 + 0j
    return TorsionClass(value, SIGN, "contraction")


# --------------------------------------------------------------------------
# orthonormal coexact -> exact determinants
# --------------------------------------------------------------------------

def alternating_determinants(C: BasedChainComplex, rtol=RANK_RTOL) -> list[float]:
    """``|det d_k : C^coex_k -> C^ex_{k-1}|`` in orthonormal bases, for ``k = 1..n``."""
    out = []
    for k in range(1, C.top_degree + 1):
        D = np.asarray(C.d(k), dtype=complex)
        ex = _range_basis(D, rtol)                 # im d_k in C_{k-1}
        coex = _range_basis(D.conj().T, rtol)      # (ker d_k)^perp in C_k
        A = ex.conj().T @ D @ coex
        out.append(float(abs(np.linalg.det(A))) if A.size else 1.0)
    return out


def torsion_alternating(C: BasedChainComplex, rtol=RANK_RTOL) -> float:
    """``prod_k |det(d_k: coex_k -> ex_{k-1})|^{(-1)^k}`` with the stored basis orthonormal."""
    _require_complex(C)
    _require_acyclic(C, rtol)
    value = 1.0
    for k, d in enumerate(alternating_determinants(C, rtol), start=1):
        value *= d ** ((-1) ** k)
    return value


# --------------------------------------------------------------------------
# Hodge theory
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class HodgeData:
    """
    Per degree: the Laplacian, its (ascending) eigenvalues, and orthonormal
    bases of the harmonic, exact (``im d_{k+1}``) and coexact (``im d_k^*``)
    subspaces.
    """

    laplacians: tuple
    eigenvalues: tuple
    harmonic: tuple
    exact: tuple
    coexact: tuple

    def homology_basis(self) -> HomologyBasis:
        return HomologyBasis(self.harmonic)

    def reduced_determinants(self) -> list[float]:
        """``det'`` (product of nonzero eigenvalues) per degree."""
        out = []
        for ev in self.eigenvalues:
            if ev.size == 0:
                out.append(1.0)
                continue
            nz = ev[ev > EIG_RTOL * max(ev.max(), 0.0)] if ev.max() > 0 else ev[:0]
            out.append(float(np.prod(nz)))
        return out


def hodge(C: BasedChainComplex, rtol=RANK_RTOL) -> HodgeData:
    """Combinatorial Laplacians ``d^* d + d d^*`` with the stored basis declared orthonormal."""
    _require_complex(C)
    laps, evs, harm, ex, coex = [], [], [], [], []
    for k in range(C.top_degree + 1):
        Dk = np.asarray(C.d(k), dtype=complex)
        Du = np.asarray(C.d(k + 1), dtype=complex)
        L = Dk.conj().T @ Dk + Du @ Du.conj().T
        L = (L + L.conj().T) / 2
        if L.size:
            # L = A^* A; squaring the singular values of A keeps small eigenvalues
            # accurate to eps * cond(A) rather than eps * cond(A)^2
            A = np.vstack([Dk, Du.conj().T])
            _, s, Vh = np.linalg.svd(A, full_matrices=True)
            w = np.zeros(C.ranks[k])
            w[:s.size] = s ** 2
            order = np.argsort(w)
            w, V = w[order], Vh.conj().T[:, order]
            thr = EIG_RTOL * max(w.max(), 0.0)
            kernel = V[:, w <= thr] if w.max() > 0 else V
        else:
            w = np.zeros(0)
            kernel = np.zeros((C.ranks[k], 0), dtype=complex)
        laps.append(L)
        evs.append(w)
        harm.append(kernel)
        ex.append(_range_basis(Du, rtol))
        coex.append(_range_basis(Dk.conj().T, rtol))
    return HodgeData(tuple(laps), tuple(evs), tuple(harm), tuple(ex), tuple(coex))


def harmonic_basis(C: BasedChainComplex, rtol=RANK_RTOL) -> HomologyBasis:
    """Orthonormal harmonic representatives of homology."""
    return hodge(C, rtol).homology_basis()


def laplacian_torsion(C: BasedChainComplex, rtol=RANK_RTOL) -> tuple[float, HomologyBasis]:
    """
    ``prod_k (det' Laplacian_k)^{k (-1)^k / 2}``.

    For an acyclic complex this is ``|torsion|``; otherwise it is the torsion
    relative to the returned orthonormal harmonic homology basis.
    """
    H = hodge(C, rtol)
    log_value = 0.0
    for k, det in enumerate(H.reduced_determinants()):
        log_value += 0.5 * k * (-1) ** k * np.log(det)
    return float(np.exp(log_value)), H.homology_basis()


# --------------------------------------------------------------------------
# long exact sequence
# --------------------------------------------------------------------------

def _class_coordinates(C: BasedChainComplex, k: int, basis: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Coordinates of the homology class of the cycles ``z`` in ``basis``, modulo boundaries."""
    if basis.shape[1] == 0:
        return np.zeros((0, z.shape[1]), dtype=complex)
    B = _range_basis(C.d(k + 1))
    A = np.hstack([basis, B])
    sol = np.linalg.lstsq(A, z, rcond=None)[0][:basis.shape[1]]
    # a zero class computes as round-off; keep exact zeros so ranks stay honest
    scale = max(1.0, float(np.abs(z).max(initial=0.0)))
    sol[np.abs(sol) < 1e-10 * scale] = 0
    return sol


def _check_ses(Cp, C, Cpp, inclusion, projection, tol=1e-9):
    n = max(Cp.top_degree, C.top_degree, Cpp.top_degree)

    def rank(X, k):
        return X.ranks[k] if 0 <= k <= X.top_degree else 0

    for k in range(n + 1):
        i_k = np.asarray(inclusion[k], dtype=complex).reshape(rank(C, k), rank(Cp, k))
        p_k = np.asarray(projection[k], dtype=complex).reshape(rank(Cpp, k), rank(C, k))
        if rank(Cp, k) + rank(Cpp, k) != rank(C, k):
            raise NotExactError(f"ranks do not add up in degree {k}")
        if np.abs(p_k @ i_k).max(initial=0.0) > tol * max(1.0, np.abs(p_k).max(initial=0) * np.abs(i_k).max(initial=0)):
            raise NotExactError(f"projection o inclusion != 0 in degree {k}")
        if numerical_rank(i_k) != rank(Cp, k) or numerical_rank(p_k) != rank(Cpp, k):
            raise NotExactError(f"inclusion not injective or projection not surjective in degree {k}")
        if k >= 1:
            i_prev = np.asarray(inclusion[k - 1], dtype=complex).reshape(rank(C, k - 1), rank(Cp, k - 1))
            p_prev = np.asarray(projection[k - 1], dtype=complex).reshape(rank(Cpp, k - 1), rank(C, k - 1))
            if (np.abs(C.d(k) @ i_k - i_prev @ Cp.d(k)).max(initial=0.0) > tol * max(1.0, np.abs(C.d(k)).max(initial=0))
                    or np.abs(p_prev @ C.d(k) - Cpp.d(k) @ p_k).max(initial=0.0) > tol * max(1.0, np.abs(C.d(k)).max(initial=0))):
                raise NotExactError(f"maps are not chain maps in degree {k}")


def product_basis_factor(inclusion, projection) -> list[complex]:
    """
    Per degree, ``det[iota(c') lift(c'')]`` in the stored basis of C; it is
    +-1 exactly when the stored basis is a product basis ``c' c''``.
    """
    out = []
    for i_k, p_k in zip(inclusion, projection):
        i_k = np.atleast_2d(np.asarray(i_k, dtype=complex))
        p_k = np.asarray(p_k, dtype=complex)
        if p_k.ndim == 1:
            p_k = p_k.reshape(-1, i_k.shape[0]) if i_k.shape[0] else p_k.reshape(0, 0)
        n = i_k.shape[0]
        if n == 0:
            out.append(1 + 0j)
            continue
        lift = np.linalg.pinv(p_k) if p_k.size else np.zeros((n, 0))
        out.append(complex(np.linalg.det(np.hstack([i_k.reshape(n, -1), lift]))))
    return out


def les_complex(Cp: BasedChainComplex, C: BasedChainComplex, Cpp: BasedChainComplex,
                inclusion, projection, hbases=None) -> BasedChainComplex:
    """
    The long exact homology sequence of ``0 -> C' -> C -> C'' -> 0`` as an
    acyclic complex over C, in coordinates of the given homology bases.

    ``H''_i`` sits in degree ``3i``, ``H_i`` in ``3i + 1``, ``H'_i`` in ``3i + 2``.
    """
    for X in (Cp, C, Cpp):
        _require_complex(X)
    n = max(Cp.top_degree, C.top_degree, Cpp.top_degree)
    _check_ses(Cp, C, Cpp, inclusion, projection)
    if hbases is None:
        hbases = (harmonic_basis(Cp), harmonic_basis(C), harmonic_basis(Cpp))
    hp, h, hpp = hbases

    def rank(X, k):
        return X.ranks[k] if 0 <= k <= X.top_degree else 0

    def hb(basis, X, k):
        if 0 <= k <= X.top_degree:
            return _columns(basis[k], X.ranks[k])
        return np.zeros((0, 0), dtype=complex)

    def incl(k):
        return np.asarray(inclusion[k], dtype=complex).reshape(rank(C, k), rank(Cp, k))

    def proj(k):
        return np.asarray(projection[k], dtype=complex).reshape(rank(Cpp, k), rank(C, k))

    ranks, mats = [], [None]
    for i in range(n + 1):
        ranks += [hb(hpp, Cpp, i).shape[1], hb(h, C, i).shape[1], hb(hp, Cp, i).shape[1]]
    for deg in range(1, 3 * n + 3):
        i, slot = divmod(deg, 3)
        if slot == 1:      # H_i -> H''_i
            z = proj(i) @ hb(h, C, i)
            M = _class_coordinates(Cpp, i, hb(hpp, Cpp, i), z)
        elif slot == 2:    # H'_i -> H_i
            z = incl(i) @ hb(hp, Cp, i)
            M = _class_coordinates(C, i, hb(h, C, i), z)
        else:              # connecting map H''_i -> H'_{i-1}
            z = hb(hpp, Cpp, i)
            y = np.linalg.pinv(proj(i)) @ z if z.size else np.zeros((rank(C, i), z.shape[1]))
            x = np.linalg.lstsq(incl(i - 1), C.d(i) @ y, rcond=None)[0] if rank(Cp, i - 1) else np.zeros((0, z.shape[1]))
            M = _class_coordinates(Cp, i - 1, hb(hp, Cp, i - 1), x)
        mats.append(np.asarray(M, dtype=complex).reshape(ranks[deg - 1], ranks[deg]))
    chi = BasedChainComplex(COMPLEX, ranks, mats, check=False)
    chi_h = homology_ranks(chi)
    if any(chi_h):
        raise NotExactError(f"homology sequence is not exact: {chi_h}")
    return chi


def les_torsion(Cp: BasedChainComplex, C: BasedChainComplex, Cpp: BasedChainComplex,
                inclusion, projection, hbases=None) -> TorsionClass:
    """
    Torsion of the long exact homology sequence, the correction term in
    ``tau(C) = tau(C') tau(C'') tau(chi)`` for a product basis on C.

    ``hbases = (h', h, h'')`` defaults to harmonic bases; pass the same bases
    used for the three chain-complex torsions.
    """
    chi = les_complex(Cp, C, Cpp, inclusion, projection, hbases)
    if sum(chi.ranks) == 0:
        return TorsionClass(1 + 0j, SIGN, "les")
    t = torsion_milnor(chi)
    return TorsionClass(t.value, SIGN, "les")
