"""
Finite based chain complexes over Z[Z_p], Z[Z], the integers, or the
complex numbers.

A complex with top degree ``n`` stores ``ranks[0..n]`` and boundary matrices
``boundaries[0..n]``, where ``boundaries[k]`` maps degree ``k`` to degree
``k - 1`` and has shape ``(ranks[k-1], ranks[k])``; ``boundaries[0]`` is the
empty ``(0, ranks[0])`` matrix. Complex matrices are ``complex128`` arrays;
integer and group-ring matrices are object arrays of exact entries.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidComplexError, RingMismatchError
from .group_ring import GroupRingElement, Representation, evaluate, involution
from .snf import invariant_factors

RANK_RTOL = 1e-9
BOUNDARY_ATOL = 1e-12


@dataclass(frozen=True)
class Ring:
    """Scalar domain of a complex: ``cyclic`` (group ring, p = 0 for Z[Z]), ``integer``, ``complex``."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("cyclic", "integer", "complex"):
            raise ValueError(f"unknown ring {self.kind!r}")

    @property
    def exact(self) -> bool:
        return self.kind != "complex"

    def zero(self):
        if self.kind == "cyclic":
            return GroupRingElement.zero(self.p)
        return 0

    def to_json(self) -> dict:
        if self.kind == "cyclic":
            return {"type": "cyclic", "p": self.p}
        return {"type": self.kind}

    @classmethod
    def from_json(cls, data: dict) -> "Ring":
        t = data["type"]
        if t in ("cyclic", "laurent"):
            return cls("cyclic", int(data.get("p", 0)))
        return cls(t)


COMPLEX = Ring("complex")
INTEGER = Ring("integer")


def group_ring(p: int) -> Ring:
    return Ring("cyclic", p)


def _as_matrix(ring: Ring, M, shape) -> np.ndarray:
    if ring.kind == "complex":
        A = np.array(M, dtype=complex).reshape(shape)
    else:
        A = np.empty(shape, dtype=object)
        src = list(M) if not isinstance(M, np.ndarray) else M
        for i in range(shape[0]):
            for j in range(shape[1]):
                x = src[i][j]
                if ring.kind == "integer":
                    if isinstance(x, (float, np.floating)) and float(x) != int(x):
                        raise InvalidComplexError("non-integer entry in integer complex")
                    x = int(x)
                elif isinstance(x, int):
                    x = GroupRingElement.integer(ring.p, x)
                elif not isinstance(x, GroupRingElement) or x.modulus != ring.p:
                    raise InvalidComplexError("group-ring entry has the wrong modulus")
                A[i, j] = x
    A.flags.writeable = False
    return A


def _zeros(ring: Ring, shape) -> np.ndarray:
    if ring.kind == "complex":
        return np.zeros(shape, dtype=complex)
    A = np.empty(shape, dtype=object)
    for idx in np.ndindex(*shape):
        A[idx] = ring.zero()
    return A


def exact_matmul(A: np.ndarray, B: np.ndarray, ring: Ring) -> np.ndarray:
    """Matrix product for complex or exact (object) matrices, including empty shapes."""
    if ring.kind == "complex":
        return np.asarray(A) @ np.asarray(B)
    out = _zeros(ring, (A.shape[0], B.shape[1]))
    for i in range(A.shape[0]):
        for j in range(B.shape[1]):
            acc = ring.zero()
            for k in range(A.shape[1]):
                acc = acc + A[i, k] * B[k, j]
            out[i, j] = acc
    return out


def _is_zero_entry(x) -> bool:
    return x.is_zero() if isinstance(x, GroupRingElement) else x == 0


class BasedChainComplex:
    """
    A finite chain complex of free modules with preferred bases.

    Parameters
    ----------
    ring : Ring
    ranks : sequence of int
        ``ranks[k]`` is the rank of the degree-``k`` chain module.
    boundaries : sequence of matrices
        Either ``n + 1`` matrices indexed by degree (``boundaries[0]`` empty),
        or ``n`` matrices ``[d_1, ..., d_n]``.
    labels : optional per-degree lists of basis labels
    check : bool
        Run :func:`validate` on construction.
    """

    def __init__(self, ring: Ring, ranks: Sequence[int], boundaries, labels=None, check=True):
        ranks = tuple(int(r) for r in ranks)
        if not ranks or any(r < 0 for r in ranks):
            raise InvalidComplexError("ranks must be a nonempty list of nonnegative integers")
        boundaries = list(boundaries)
        n = len(ranks) - 1
        if len(boundaries) == n:
            boundaries = [None] + boundaries
        if len(boundaries) != n + 1:
            raise InvalidComplexError(
                f"expected {n} or {n + 1} boundary matrices, got {len(boundaries)}")
        mats = [_as_matrix(ring, [], (0, ranks[0]))]
        for k in range(1, n + 1):
            shape = (ranks[k - 1], ranks[k])
            M = boundaries[k]
            arr = np.asarray(M, dtype=object) if ring.exact else np.asarray(M, dtype=complex)
            if arr.size == 0 and 0 in shape:
                arr = np.empty(shape, dtype=arr.dtype)
            if arr.shape != shape:
                raise InvalidComplexError(
                    f"boundary {k} has shape {arr.shape}, expected {shape}", degree=k)
            mats.append(_as_matrix(ring, arr, shape))
        self.ring = ring
        self.ranks = ranks
        self.boundaries = tuple(mats)
        self.labels = tuple(tuple(l) for l in labels) if labels is not None else None
        if check:
            validate(self)

    @property
    def top_degree(self) -> int:
        return len(self.ranks) - 1

    def d(self, k: int) -> np.ndarray:
        """Boundary ``C_k -> C_{k-1}``; empty outside ``1..n``."""
        if 1 <= k <= self.top_degree:
            return self.boundaries[k]
        rows = self.ranks[k - 1] if 0 <= k - 1 <= self.top_degree else 0
        cols = self.ranks[k] if 0 <= k <= self.top_degree else 0
        if self.ring.kind == "complex":
            return np.zeros((rows, cols), dtype=complex)
        return _zeros(self.ring, (rows, cols))

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * r for k, r in enumerate(self.ranks))

    def scaled(self, alpha: complex) -> "BasedChainComplex":
        """The complex with every boundary multiplied by ``alpha`` (complex domain only)."""
        if self.ring.kind != "complex":
            raise RingMismatchError("scaling is only defined over the complex numbers")
        return BasedChainComplex(self.ring, self.ranks,
                                 [alpha * np.asarray(M) for M in self.boundaries],
                                 self.labels, check=False)

    def to_complex(self) -> "BasedChainComplex":
        """View an integer complex as a complex one (identity on complex input)."""
        if self.ring.kind == "complex":
            return self
        if self.ring.kind != "integer":
            raise RingMismatchError("use specialize() for group-ring complexes")
        return BasedChainComplex(COMPLEX, self.ranks,
                                 [np.array(M, dtype=float).astype(complex) for M in self.boundaries],
                                 self.labels, check=False)

    # serialization -------------------------------------------------------

    def to_json(self) -> dict:
        def entry(x):
            if self.ring.kind == "cyclic":
                return x.to_json()
            if self.ring.kind == "integer":
                return int(x)
            return [float(x.real), float(x.imag)]

        return {
            "ring": self.ring.to_json(),
            "ranks": list(self.ranks),
            "boundaries": [[[entry(x) for x in row] for row in M] for M in self.boundaries],
            **({"labels": [list(l) for l in self.labels]} if self.labels else {}),
        }

    @classmethod
    def from_json(cls, data: dict, check=True) -> "BasedChainComplex":
        ring = Ring.from_json(data["ring"])
        ranks = data["ranks"]
        n = len(ranks) - 1
        raw = list(data["boundaries"])
        if len(raw) == n:
            raw = [[]] + raw

        def entry(x):
            if ring.kind == "cyclic":
                return x if isinstance(x, int) else GroupRingElement.from_json(ring.p, x)
            if ring.kind == "integer":
                return int(x)
            if isinstance(x, (list, tuple)):
                return complex(x[0], x[1])
            return complex(x)

        mats = [None]
        for k in range(1, len(raw)):
            shape = (ranks[k - 1], ranks[k]) if k <= n else (0, 0)
            rows = [[entry(x) for x in row] for row in raw[k]]
            got = (len(rows), len(rows[0]) if rows else 0)
            if shape[0] * shape[1] and got != shape or (not shape[0] * shape[1] and got[0] * got[1]):
                raise InvalidComplexError(f"boundary {k} has shape {got}, expected {shape}", degree=k)
            if ring.kind == "complex":
                M = np.array(rows, dtype=complex).reshape(shape) if shape[0] * shape[1] else np.zeros(shape, complex)
            else:
                M = np.empty(shape, dtype=object)
                for i, row in enumerate(rows):
                    for j, x in enumerate(row):
                        M[i, j] = x
            mats.append(M)
        return cls(ring, ranks, mats, data.get("labels"), check=check)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def loads(cls, text: str, check=True) -> "BasedChainComplex":
        return cls.from_json(json.loads(text), check=check)

    def __eq__(self, other):
        if not isinstance(other, BasedChainComplex):
            return NotImplemented
        if self.ring != other.ring or self.ranks != other.ranks:
            return False
        return all(np.array_equal(a, b) for a, b in zip(self.boundaries, other.boundaries))

    __hash__ = None

    def __repr__(self):
        return f"BasedChainComplex(ring={self.ring}, ranks={list(self.ranks)})"


@dataclass(frozen=True)
class HomologyBasis:
    """Per degree, a ``(rank C_k, dim H_k)`` matrix whose columns are cycles."""

    vectors: tuple

    @classmethod
    def from_list(cls, vectors) -> "HomologyBasis":
        return cls(tuple(np.asarray(v, dtype=complex) for v in vectors))

    def __getitem__(self, k) -> np.ndarray:
        return self.vectors[k]


# --------------------------------------------------------------------------
# operations
# --------------------------------------------------------------------------

def validate(C: BasedChainComplex) -> dict:
    """
    Check matrix shapes and ``d_{k-1} d_k = 0``.

    Returns a small diagnostics dict on success; raises
    :class:`InvalidComplexError` carrying the first bad degree otherwise.
    """
    for k in range(1, C.top_degree + 1):
        if C.boundaries[k].shape != (C.ranks[k - 1], C.ranks[k]):
            raise InvalidComplexError(f"boundary {k} has wrong shape", degree=k)
    residuals = []
    for k in range(2, C.top_degree + 1):
        P = exact_matmul(C.boundaries[k - 1], C.boundaries[k], C.ring)
        if C.ring.exact:
            if not all(_is_zero_entry(x) for x in P.flat):
                raise InvalidComplexError(f"d_{k - 1} d_{k} != 0", degree=k)
            residuals.append(0.0)
        else:
            scale = max(1.0, np.abs(C.boundaries[k - 1]).max(initial=0.0)
                        * np.abs(C.boundaries[k]).max(initial=0.0))
            res = float(np.abs(P).max(initial=0.0))
            if res > BOUNDARY_ATOL * scale * max(1, C.ranks[k - 1]):
                raise InvalidComplexError(f"d_{k - 1} d_{k} != 0 (residual {res:.3e})", degree=k)
            residuals.append(res)
    return {"valid": True, "ring": C.ring.to_json(), "ranks": list(C.ranks),
            "d_squared_residuals": residuals}


def specialize(C: BasedChainComplex, rep: Representation) -> BasedChainComplex:
    """Change of rings along the evaluation ``sigma -> rep.value``."""
    if C.ring.kind != "cyclic":
        raise RingMismatchError("specialize expects a group-ring complex")
    mats = [None]
    for k in range(1, C.top_degree + 1):
        M = C.boundaries[k]
        out = np.zeros(M.shape, dtype=complex)
        for idx in np.ndindex(*M.shape):
            x = M[idx]
            v = evaluate(x, rep)
            # cancellation noise, e.g. 1 + eta + ... + eta^{p-1} at a root eta != 1
            scale = sum(abs(c) * abs(rep.value) ** e for e, c in x.terms)
            out[idx] = 0 if abs(v) <= 1e-13 * scale else v
        mats.append(out)
    return BasedChainComplex(COMPLEX, C.ranks, mats, C.labels)


def augmentation(C: BasedChainComplex) -> BasedChainComplex:
    """Change of rings ``sigma -> 1`` into the integers (untwisted integral chains)."""
    if C.ring.kind != "cyclic":
        raise RingMismatchError("augmentation expects a group-ring complex")
    mats = [None]
    for k in range(1, C.top_degree + 1):
        M = C.boundaries[k]
        out = np.empty(M.shape, dtype=object)
        for idx in np.ndindex(*M.shape):
            out[idx] = M[idx].augmentation()
        mats.append(out)
    return BasedChainComplex(INTEGER, C.ranks, mats, C.labels)


def numerical_rank(M: np.ndarray, rtol: float = RANK_RTOL) -> int:
    """Rank from singular values above ``rtol * sigma_max``."""
    M = np.asarray(M, dtype=complex)
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > rtol * s[0]))


def homology_ranks(C: BasedChainComplex, rtol: float = RANK_RTOL) -> list[int]:
    """``dim ker d_k - rank d_{k+1}`` over C (integer complexes are viewed in C)."""
    if C.ring.kind == "cyclic":
        raise RingMismatchError("specialize a group-ring complex before taking ranks")
    Cc = C.to_complex()
    rk = [numerical_rank(Cc.d(k), rtol) for k in range(C.top_degree + 2)]
    return [C.ranks[k] - rk[k] - rk[k + 1] for k in range(C.top_degree + 1)]


def integral_homology(C: BasedChainComplex) -> list[tuple[int, list[int]]]:
    """
    Homology of an integer complex as ``(betti, torsion_coefficients)`` per degree,
    so that ``H_k = Z^betti + sum Z/d``.
    """
    if C.ring.kind != "integer":
        raise RingMismatchError("integral_homology expects an integer complex")
    factors = [invariant_factors(C.d(k)) if C.d(k).size else []
               for k in range(C.top_degree + 2)]
    out = []
    for k in range(C.top_degree + 1):
        rank_out = len(factors[k])
        rank_in = len(factors[k + 1])
        betti = C.ranks[k] - rank_out - rank_in
        torsion = [abs(d) for d in factors[k + 1] if abs(d) > 1]
        out.append((betti, torsion))
    return out


def _conj_transpose(M: np.ndarray, ring: Ring) -> np.ndarray:
    if ring.kind == "complex":
        return np.asarray(M).conj().T
    out = np.empty((M.shape[1], M.shape[0]), dtype=object)
    for i in range(M.shape[0]):
        for j in range(M.shape[1]):
            out[j, i] = involution(M[i, j]) if ring.kind == "cyclic" else M[i, j]
    return out


def dual_complex(C: BasedChainComplex) -> BasedChainComplex:
    """``(C^v)_{n-k} = (C_k)^v`` with ``d^v_{n-k+1} = (d_k)^dagger``."""
    n = C.top_degree
    ranks = [C.ranks[n - j] for j in range(n + 1)]
    mats = [None]
    for j in range(1, n + 1):
        mats.append(_conj_transpose(C.boundaries[n - j + 1], C.ring))
    labels = [C.labels[n - j] for j in range(n + 1)] if C.labels else None
    return BasedChainComplex(C.ring, ranks, mats, labels)


def direct_sum(C: BasedChainComplex, D: BasedChainComplex) -> BasedChainComplex:
    """Degreewise block sum; the shorter complex is padded with zero modules."""
    if C.ring != D.ring:
        raise RingMismatchError(f"cannot add complexes over {C.ring} and {D.ring}")
    n = max(C.top_degree, D.top_degree)

    def rank(X, k):
        return X.ranks[k] if k <= X.top_degree else 0

    ranks = [rank(C, k) + rank(D, k) for k in range(n + 1)]
    mats = [None]
    for k in range(1, n + 1):
        M = _zeros(C.ring, (ranks[k - 1], ranks[k]))
        A, B = C.d(k), D.d(k)
        M[:A.shape[0], :A.shape[1]] = A
        M[A.shape[0]:, A.shape[1]:] = B
        mats.append(M)
    return BasedChainComplex(C.ring, ranks, mats)


def _kron(A: np.ndarray, B: np.ndarray, ring: Ring) -> np.ndarray:
    if ring.kind == "complex":
        return np.kron(A, B)
    out = _zeros(ring, (A.shape[0] * B.shape[0], A.shape[1] * B.shape[1]))
    for (i, j), a in np.ndenumerate(A):
        for (k, l), b in np.ndenumerate(B):
            out[i * B.shape[0] + k, j * B.shape[1] + l] = a * int(b)
    return out


def _identity(ring: Ring, n: int) -> np.ndarray:
    if ring.kind == "complex":
        return np.eye(n, dtype=complex)
    out = _zeros(ring, (n, n))
    for i in range(n):
        out[i, i] = 1
    return out


def tensor_product(C: BasedChainComplex, D: BasedChainComplex) -> BasedChainComplex:
    """
    Graded tensor product ``C (x) D`` of a complex (or group-ring) complex
    with an integer complex.

    ``d(x (x) y) = dx (x) y + (-1)^{deg x} x (x) dy``; within each total degree
    the blocks ``C_i (x) D_j`` are ordered by ``i`` and the basis of each
    block is lexicographic with the ``C`` index major.
    """
    if C.ring.kind == "integer":
        raise RingMismatchError("left factor must be a complex or group-ring complex")
    if D.ring.kind != "integer":
        raise RingMismatchError("right factor must be an integer complex")
    ring = C.ring
    n = C.top_degree + D.top_degree

    def blocks(m):
        return [(i, m - i) for i in range(max(0, m - D.top_degree), min(C.top_degree, m) + 1)]

    def offsets(m):
        off, acc = {}, 0
        for i, j in blocks(m):
            off[(i, j)] = acc
            acc += C.ranks[i] * D.ranks[j]
        return off, acc

    ranks = [offsets(m)[1] for m in range(n + 1)]
    mats = [None]
    for m in range(1, n + 1):
        src, _ = offsets(m)
        dst, _ = offsets(m - 1)
        M = _zeros(ring, (ranks[m - 1], ranks[m]))
        for (i, j), c0 in src.items():
            w = C.ranks[i] * D.ranks[j]
            if (i - 1, j) in dst:
                r0 = dst[(i - 1, j)]
                blk = _kron(C.d(i), np.eye(D.ranks[j], dtype=int), ring)
                M[r0:r0 + blk.shape[0], c0:c0 + w] += blk
            if (i, j - 1) in dst:
                r0 = dst[(i, j - 1)]
                blk = _kron(_identity(ring, C.ranks[i]), (-1) ** i * np.asarray(D.d(j), dtype=int), ring)
                M[r0:r0 + blk.shape[0], c0:c0 + w] += blk
        mats.append(M)
    return BasedChainComplex(ring, ranks, mats)


def zero_complex(ring: Ring = COMPLEX) -> BasedChainComplex:
    return BasedChainComplex(ring, [0], [])


# --------------------------------------------------------------------------
# random complexes
# --------------------------------------------------------------------------

def _random_invertible(rng, n, max_cond=1e4):
    while True:
        T = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
        if n == 0 or np.linalg.cond(T) < max_cond:
            return T


def random_complex(rng: np.random.Generator, boundary_dims: Sequence[int],
                   homology_dims: Sequence[int] | None = None) -> BasedChainComplex:
    """
    Random complex over C with prescribed ``dim B_k`` and ``dim H_k``.

    ``boundary_dims[k] = dim im(d_{k+1})`` for ``k = 0..n`` (the last entry
    must be 0), so ``rank C_k = b_k + h_k + b_{k-1}``. Each chain module gets
    a random well-conditioned complex Gaussian basis.
    """
    b = list(boundary_dims)
    n = len(b) - 1
    if b[-1] != 0:
        raise ValueError("the top degree has no incoming boundaries")
    h = list(homology_dims) if homology_dims is not None else [0] * (n + 1)
    ranks = [b[k] + h[k] + (b[k - 1] if k else 0) for k in range(n + 1)]
    T = [_random_invertible(rng, r) for r in ranks]
    mats = [None]
    for k in range(1, n + 1):
        E = np.zeros((ranks[k - 1], ranks[k]), dtype=complex)
        G = _random_invertible(rng, b[k - 1])
        # adapted coordinates: C_k = B_k + H_k + (lift of B_{k-1})
        E[:b[k - 1], b[k] + h[k]:] = G
        mats.append(T[k - 1] @ E @ np.linalg.inv(T[k]))
    return BasedChainComplex(COMPLEX, ranks, mats)


def random_acyclic_complex(rng: np.random.Generator, max_degree: int = 4,
                           max_rank: int = 6) -> BasedChainComplex:
    """Random acyclic complex with at most ``max_degree + 1`` degrees and ranks <= ``max_rank``."""
    while True:
        n = int(rng.integers(1, max_degree + 1))
        b = [int(x) for x in rng.integers(0, max_rank // 2 + 1, size=n)] + [0]
        ranks = [b[k] + (b[k - 1] if k else 0) for k in range(n + 1)]
        if max(ranks) <= max_rank and sum(ranks) > 0:
            return random_complex(rng, b)
