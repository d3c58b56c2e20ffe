"""Exact arithmetic in Z[zeta_p].

A :class:`CycInt` is stored as a length-p integer vector ``c`` meaning
``sum(c[a] * zeta^a)``.  Because ``1 + zeta + ... + zeta^(p-1) = 0`` two
vectors denote the same number iff their difference is constant; equality
and hashing go through :meth:`CycInt.normalized`, which shifts the last
coordinate to zero.  Keeping the redundant coordinate lets a Walsh
coefficient carry its raw value counts unchanged.
"""

from __future__ import annotations

import cmath
import warnings
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CharacteristicTwoError,
    MixedPrimeError,
    NonRationalOrbitSumError,
    RepresentationDependentWarning,
    ZeroIndexError,
)
from .galois import legendre


class CycInt:
    __slots__ = ("p", "coords")

    def __init__(self, p: int, coords: Iterable[int]):
        coords = tuple(int(c) for c in coords)
        if len(coords) != p:
            raise ValueError(f"need {p} coordinates, got {len(coords)}")
        self.p = p
        self.coords = coords

    # -- constructors --------------------------------------------------------

    @classmethod
    def integer(cls, p: int, k: int) -> "CycInt":
        return cls(p, [k] + [0] * (p - 1))

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> "CycInt":
        c = [0] * p
        c[k % p] = 1
        return cls(p, c)

    # -- representation ------------------------------------------------------

    def normalized(self) -> "CycInt":
        last = self.coords[-1]
        return CycInt(self.p, [c - last for c in self.coords])

    def is_rational(self) -> bool:
        return len(set(self.coords[1:])) <= 1

    def rational_value(self) -> int:
        """The integer this element equals; raises if it is not rational."""
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational integer")
        return self.coords[0] - self.coords[1]

    def _check(self, other: "CycInt"):
        if not isinstance(other, CycInt):
            raise TypeError("expected CycInt")
        if other.p != self.p:
            raise MixedPrimeError(f"p={self.p} vs p={other.p}")

    def _coerce(self, other):
        if isinstance(other, int):
            return CycInt.integer(self.p, other)
        self._check(other)
        return other

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        return CycInt(self.p, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self):
        return CycInt(self.p, [-a for a in self.coords])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.p, [a * other for a in self.coords])
        self._check(other)
        p = self.p
        out = [0] * p
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        out[(i + j) % p] += a * b
        return CycInt(p, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers are not in the ring")
        result = CycInt.integer(self.p, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def times_zeta(self, k: int) -> "CycInt":
        """Multiply by zeta^k: a cyclic shift of the coordinates."""
        k %= self.p
        c = self.coords
        return CycInt(self.p, c[-k:] + c[:-k] if k else c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycInt.integer(self.p, other)
        if not isinstance(other, CycInt) or other.p != self.p:
            return NotImplemented
        return self.normalized().coords == other.normalized().coords

    def __hash__(self):
        return hash((self.p, self.normalized().coords))

    def __repr__(self):
        return f"CycInt({self.p}, {list(self.coords)})"

    def __str__(self):
        return render(self)


def galois_sigma(a: int, u: CycInt) -> CycInt:
    """The automorphism zeta -> zeta^a."""
    p = u.p
    a %= p
    if a == 0:
        raise ZeroIndexError("sigma_0 is not an automorphism")
    out = [0] * p
    for j, c in enumerate(u.coords):
        out[(a * j) % p] += c
    return CycInt(p, out)


def conj(u: CycInt) -> CycInt:
    return galois_sigma(-1, u)


def norm_sq(u: CycInt) -> int:
    """|u|^2 = u * sigma_{-1}(u) as an integer.

    The product lies in the real subfield, which is Q only for p = 3; for
    larger p this raises unless the product happens to be rational.
    """
    return (u * conj(u)).rational_value()


def gauss_sum(p: int) -> CycInt:
    """sqrt(p*) as the quadratic Gauss sum sum_{x != 0} eta_0(x) zeta^x."""
    if p == 2:
        raise CharacteristicTwoError("the quadratic Gauss sum needs odd p")
    return CycInt(p, [0] + [legendre(x, p) for x in range(1, p)])


def p_star(p: int) -> int:
    return p if p % 4 == 1 else -p


def sqrt_pstar_power(p: int, e: int) -> CycInt:
    """sqrt(p*)^e; even powers are the literal integer (p*)^(e/2)."""
    if e % 2 == 0:
        return CycInt.integer(p, p_star(p) ** (e // 2))
    return gauss_sum(p) * (p_star(p) ** (e // 2))


def orbit_trace(u: CycInt) -> int:
    """sum over z in F_p^* of sigma_z(u): the field trace down to Q."""
    total = CycInt.integer(u.p, 0)
    for z in range(1, u.p):
        total = total + galois_sigma(z, u)
    return total.rational_value()


def orbit_trace_counts(counts: np.ndarray, shift: np.ndarray | int = 0) -> np.ndarray:
    """Vectorised orbit_trace of ``sum_a counts[..., a] zeta^(a - shift)``.

    Uses sum_{z != 0} zeta^(z b) = p - 1 if b = 0 else -1, so the trace is
    ``p * counts[..., shift] - sum(counts)``.
    """
    counts = np.asarray(counts, dtype=np.int64)
    p = counts.shape[-1]
    shift = np.broadcast_to(np.asarray(shift, dtype=np.int64) % p, counts.shape[:-1])
    at = np.take_along_axis(counts, shift[..., None], axis=-1)[..., 0]
    return p * at - counts.sum(axis=-1)


def criterion_sums(v: CycInt, warn: bool = True) -> tuple[int, int, int]:
    """(sum c_a a^2, sum c_a a, sum c_a), each mod p, from the raw coordinates."""
    p = v.p
    if p == 3 and warn:
        warnings.warn(
            "criterion sums depend on the coordinate representative when p = 3",
            RepresentationDependentWarning,
            stacklevel=2,
        )
    s2 = sum(c * a * a for a, c in enumerate(v.coords)) % p
    s1 = sum(c * a for a, c in enumerate(v.coords)) % p
    s0 = sum(v.coords) % p
    return s2, s1, s0


def criterion_sums_counts(counts: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    counts = np.asarray(counts, dtype=np.int64)
    p = counts.shape[-1]
    a = np.arange(p, dtype=np.int64)
    return (counts @ (a * a)) % p, (counts @ a) % p, counts.sum(axis=-1) % p


def to_complex(u: CycInt) -> complex:
    p = u.p
    return sum(c * cmath.exp(2j * cmath.pi * a / p) for a, c in enumerate(u.coords))


def render(u: CycInt) -> str:
    """Exact text form ``a0 + a1*z + ... + a{p-1}*z^{p-1}`` (z = zeta_p); zero terms dropped."""
    terms = []
    for a, c in enumerate(u.coords):
        if c == 0:
            continue
        mon = "" if a == 0 else ("z" if a == 1 else f"z^{a}")
        if not mon:
            terms.append(str(c))
        elif c == 1:
            terms.append(mon)
        elif c == -1:
            terms.append("-" + mon)
        else:
            terms.append(f"{c}*{mon}")
    if not terms:
        return "0"
    return " + ".join(terms).replace("+ -", "- ")


def check_orbit_divisible(total: int, p: int) -> int:
    if total % p:
        raise NonRationalOrbitSumError(f"orbit sum {total} not divisible by {p}")
    return total // p


def from_counts(row: Sequence[int]) -> CycInt:
    return CycInt(len(row), row)
