"""
Exact arithmetic in the integral group rings Z[Z_p] and Z[Z] (Laurent
polynomials), evaluation at complex units, and torsion values modulo the
ambiguity coming from choices of cell lifts.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import RingMismatchError, TorsionError

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class GroupRingElement:
    """
    Element ``sum_e c_e sigma^e`` of Z[Z_p] (``modulus = p >= 1``) or of the
    Laurent ring Z[sigma, sigma^-1] (``modulus = 0``).

    ``terms`` is a sorted tuple of ``(exponent, coefficient)`` pairs with
    nonzero coefficients; exponents are reduced into ``[0, p)`` when
    ``modulus >= 1``. Build instances with :meth:`from_terms` or the named
    constructors rather than by hand.
    """

    modulus: int
    terms: tuple = ()

    def __post_init__(self):
        if self.modulus < 0:
            raise ValueError("modulus must be >= 0")
        for e, c in self.terms:
            if c == 0:
                raise ValueError("zero coefficient stored")
            if self.modulus and not 0 <= e < self.modulus:
                raise ValueError(f"exponent {e} not reduced mod {self.modulus}")

    @classmethod
    def from_terms(cls, modulus: int, terms: Mapping[int, int] | Iterable) -> "GroupRingElement":
        """Build from ``{exponent: coeff}`` or an iterable of ``(exponent, coeff)``."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            e = int(e)
            if modulus:
                e %= modulus
            acc[e] = acc.get(e, 0) + int(c)
        return cls(modulus, tuple(sorted((e, c) for e, c in acc.items() if c != 0)))

    @classmethod
    def zero(cls, modulus: int) -> "GroupRingElement":
        return cls(modulus, ())

    @classmethod
    def one(cls, modulus: int) -> "GroupRingElement":
        return cls.from_terms(modulus, {0: 1})

    @classmethod
    def integer(cls, modulus: int, n: int) -> "GroupRingElement":
        return cls.from_terms(modulus, {0: n})

    @classmethod
    def sigma(cls, modulus: int, power: int = 1) -> "GroupRingElement":
        """The group element ``sigma**power``."""
        return cls.from_terms(modulus, {power: 1})

    @classmethod
    def norm_element(cls, p: int) -> "GroupRingElement":
        """``nu = 1 + sigma + ... + sigma^(p-1)`` in Z[Z_p]."""
        if p < 1:
            raise ValueError("the norm element needs a finite cyclic group")
        return cls.from_terms(p, {e: 1 for e in range(p)})

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "GroupRingElement") -> None:
        if self.modulus != other.modulus:
            raise RingMismatchError(
                f"group ring modulus mismatch: {self.modulus} vs {other.modulus}")

    def _coerce(self, other):
        if isinstance(other, GroupRingElement):
            self._check(other)
            return other
        if isinstance(other, int):
            return GroupRingElement.integer(self.modulus, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = self.as_dict()
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return GroupRingElement.from_terms(self.modulus, acc)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement(self.modulus, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                if self.modulus:
                    e %= self.modulus
                acc[e] = acc.get(e, 0) + c1 * c2
        return GroupRingElement.from_terms(self.modulus, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are only defined for units; use involution for sigma^-1")
        result = GroupRingElement.one(self.modulus)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def involution(self) -> "GroupRingElement":
        return involution(self)

    def evaluate(self, rep: "Representation") -> complex:
        return evaluate(self, rep)

    def augmentation(self) -> int:
        """Image under sigma -> 1, i.e. the sum of coefficients."""
        return sum(c for _, c in self.terms)

    def to_json(self) -> list:
        return [[c, e] for e, c in self.terms]

    @classmethod
    def from_json(cls, modulus: int, data) -> "GroupRingElement":
        return cls.from_terms(modulus, [(e, c) for c, e in data])

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "1" if e == 0 else ("s" if e == 1 else f"s^{e}")
            if mono == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}{mono}")
        ring = f"Z[Z_{self.modulus}]" if self.modulus else "Z[Z]"
        return " + ".join(parts).replace("+ -", "- ") + f"  in {ring}"


def add(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    a._check(b)
    return a + b


def mul(a: GroupRingElement, b: GroupRingElement) -> GroupRingElement:
    a._check(b)
    return a * b


def involution(a: GroupRingElement) -> GroupRingElement:
    """Conjugation ``sum c_e sigma^e -> sum c_e sigma^-e``."""
    return GroupRingElement.from_terms(a.modulus, [(-e, c) for e, c in a.terms])


# --------------------------------------------------------------------------
# representations
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Representation:
    """
    A homomorphism from the cyclic group generated by sigma into C*.

    Use :meth:`root_of_unity`, :meth:`angle` or :meth:`complex_eval`.
    The trivial value 1 is representable (it is needed for the untwisted
    specialization); :attr:`is_trivial` flags it.
    """

    kind: str
    p: int = 0
    k: int = 0
    psi: float = 0.0
    t: complex = 0j

    @classmethod
    def root_of_unity(cls, p: int, k: int) -> "Representation":
        if p < 1:
            raise ValueError("root of unity order must be >= 1")
        return cls("root_of_unity", p=int(p), k=int(k) % int(p))

    @classmethod
    def angle(cls, psi: float) -> "Representation":
        return cls("angle", psi=float(psi))

    @classmethod
    def complex_eval(cls, t: complex) -> "Representation":
        t = complex(t)
        if t == 0:
            raise ValueError("evaluation value must be nonzero")
        return cls("complex", t=t)

    @property
    def value(self) -> complex:
        return self.power(1)

    @property
    def is_trivial(self) -> bool:
        if self.kind == "root_of_unity":
            return self.k % self.p == 0
        if self.kind == "angle":
            return _angle_is_zero(self.psi)
        return abs(self.t - 1) <= 1e-12

    @property
    def is_unitary(self) -> bool:
        return self.kind != "complex" or abs(abs(self.t) - 1) <= 1e-12

    def power(self, e: int) -> complex:
        """``value**e`` computed without accumulating rounding for roots of unity."""
        if self.kind == "root_of_unity":
            return cmath.exp(2j * math.pi * ((self.k * e) % self.p) / self.p)
        if self.kind == "angle":
            return cmath.exp(1j * self.psi * e)
        return self.t ** e

    def satisfies_order(self, p: int) -> bool:
        """True when ``value**p == 1``, exactly for roots of unity."""
        if self.kind == "root_of_unity":
            return (self.k * p) % self.p == 0
        if self.kind == "angle":
            return _angle_is_zero(self.psi * p)
        return abs(self.t ** p - 1) <= 1e-12 * max(1.0, abs(self.t) ** p)

    def to_json(self) -> dict:
        if self.kind == "root_of_unity":
            return {"kind": "root_of_unity", "p": self.p, "k": self.k}
        if self.kind == "angle":
            return {"kind": "angle", "psi": self.psi}
        return {"kind": "complex", "re": self.t.real, "im": self.t.imag}

    @classmethod
    def from_json(cls, data: dict) -> "Representation":
        kind = data["kind"]
        if kind == "root_of_unity":
            return cls.root_of_unity(data["p"], data["k"])
        if kind == "angle":
            return cls.angle(data["psi"])
        if kind == "complex":
            return cls.complex_eval(complex(data["re"], data["im"]))
        raise ValueError(f"unknown representation kind {kind!r}")

    @classmethod
    def parse(cls, spec: str) -> "Representation":
        """Parse ``eta:P:K``, ``angle:PSI`` or ``complex:RE,IM``."""
        head, _, rest = spec.partition(":")
        if head == "eta":
            p, _, k = rest.partition(":")
            return cls.root_of_unity(int(p), int(k))
        if head == "angle":
            return cls.angle(float(rest))
        if head == "complex":
            re, _, im = rest.partition(",")
            return cls.complex_eval(complex(float(re), float(im or 0.0)))
        raise ValueError(f"bad representation spec {spec!r}")


def _angle_is_zero(psi: float, tol: float = 1e-12) -> bool:
    r = math.remainder(psi, 2 * math.pi)
    return abs(r) <= tol


def evaluate(a: GroupRingElement, rep: Representation) -> complex:
    """
    Ring homomorphism Z[Z_p] -> C (or Z[Z] -> C) sending sigma to the
    representation value.

    Over Z[Z_p] the value must satisfy ``t**p == 1``; anything else is not a
    ring homomorphism and is rejected.
    """
    if a.modulus and not rep.satisfies_order(a.modulus):
        raise TorsionError(
            f"evaluation of Z[Z_{a.modulus}] needs a {a.modulus}-th root of unity, got {rep.value}")
    return complex(sum(c * rep.power(e) for e, c in a.terms))


# --------------------------------------------------------------------------
# torsion values up to ambiguity
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Ambiguity:
    """Indeterminacy group of a torsion value: trivial, +-1, or +-eta^j."""

    kind: str = "sign"  # "none" | "sign" | "sign_and_powers"
    p: int = 0
    eta: complex = 1 + 0j

    @classmethod
    def powers(cls, p: int, eta: complex) -> "Ambiguity":
        return cls("sign_and_powers", int(p), complex(eta))

    def orbit_factors(self) -> list[complex]:
        if self.kind == "none":
            return [1 + 0j]
        if self.kind == "sign":
            return [1 + 0j, -1 + 0j]
        out = []
        for j in range(self.p):
            w = self.eta ** j
            out.extend([w, -w])
        return out

    def same_as(self, other: "Ambiguity", tol: float = 1e-12) -> bool:
        return (self.kind == other.kind and self.p == other.p
                and abs(self.eta - other.eta) <= tol)

    def to_json(self):
        if self.kind in ("none", "sign"):
            return self.kind
        return {"kind": self.kind, "p": self.p,
                "eta": {"re": self.eta.real, "im": self.eta.imag}}

    @classmethod
    def from_json(cls, data) -> "Ambiguity":
        if isinstance(data, str):
            return cls(data)
        eta = data["eta"]
        return cls.powers(data["p"], complex(eta["re"], eta["im"]))


NO_AMBIGUITY = Ambiguity("none")
SIGN = Ambiguity("sign")


@dataclass(frozen=True)
class TorsionClass:
    """A nonzero complex torsion value together with its ambiguity group."""

    value: complex
    ambiguity: Ambiguity = field(default=SIGN)
    method: str = ""

    def __post_init__(self):
        if self.value == 0 or not cmath.isfinite(self.value):
            raise TorsionError(f"torsion value must be finite and nonzero, got {self.value}")
        if self.ambiguity.kind == "sign_and_powers" and abs(abs(self.ambiguity.eta) - 1) > 1e-12:
            raise TorsionError("only unit-modulus eta is supported")

    @property
    def modulus_squared(self) -> float:
        return abs(self.value) ** 2

    @property
    def canonical(self) -> complex:
        """Orbit member with maximal real part, ties broken by imaginary part."""
        members = [w * self.value for w in self.ambiguity.orbit_factors()]
        return max(members, key=lambda z: (round(z.real, 10), round(z.imag, 10)))

    def _combine(self, other: "TorsionClass") -> Ambiguity:
        if not self.ambiguity.same_as(other.ambiguity):
            raise TorsionError("cannot combine torsion classes with different ambiguities")
        return self.ambiguity

    def __mul__(self, other):
        if isinstance(other, TorsionClass):
            return TorsionClass(self.value * other.value, self._combine(other), self.method)
        return TorsionClass(self.value * complex(other), self.ambiguity, self.method)

    def __truediv__(self, other):
        if isinstance(other, TorsionClass):
            return TorsionClass(self.value / other.value, self._combine(other), self.method)
        return TorsionClass(self.value / complex(other), self.ambiguity, self.method)

    def __pow__(self, n: int):
        return TorsionClass(self.value ** n, self.ambiguity, self.method)

    def conjugate(self) -> "TorsionClass":
        amb = self.ambiguity
        if amb.kind == "sign_and_powers":
            amb = Ambiguity.powers(amb.p, amb.eta.conjugate())
        return TorsionClass(self.value.conjugate(), amb, self.method)

    def with_ambiguity(self, ambiguity: Ambiguity) -> "TorsionClass":
        return TorsionClass(self.value, ambiguity, self.method)

    def equals(self, other: "TorsionClass", tol: float = DEFAULT_TOL) -> bool:
        return class_equal(self, other, tol)

    def to_json(self) -> dict:
        v = self.canonical
        return {"value": {"re": v.real, "im": v.imag},
                "ambiguity": self.ambiguity.to_json(),
                "modulus_squared": self.modulus_squared,
                "method": self.method}

    @classmethod
    def from_json(cls, data: dict) -> "TorsionClass":
        v = data["value"]
        return cls(complex(v["re"], v["im"]), Ambiguity.from_json(data["ambiguity"]),
                   data.get("method", ""))


def class_equal(a: TorsionClass, b: TorsionClass, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``a.value = s * eta^j * b.value`` for some orbit factor, relative to ``|b|``."""
    if not a.ambiguity.same_as(b.ambiguity):
        raise TorsionError("ambiguity descriptors differ")
    scale = tol * abs(b.value)
    return any(abs(a.value - w * b.value) <= scale for w in b.ambiguity.orbit_factors())
