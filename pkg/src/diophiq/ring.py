"""Exact arithmetic in rings of integers of imaginary quadratic fields.

For a squarefree d < 0 the ring of integers of Q(sqrt(d)) has integral
basis (1, w) with w = sqrt(d) when d = 2, 3 (mod 4) and w = (-1+sqrt(d))/2
when d = 1 (mod 4).  Elements are stored as exact integer coordinates
(u, v) over that basis; every operation below is exact integer arithmetic,
never floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt
from typing import Iterator

from .errors import MixedRings


def is_squarefree(n: int) -> bool:
    """True iff n > 0 has no repeated prime factor."""
    if n <= 0:
        return False
    if n % 4 == 0:
        return False
    p = 3
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 2
    return True


@dataclass(frozen=True, slots=True)
class RingSpec:
    """A ring of integers O_K for K = Q(sqrt(d)), d squarefree and negative.

    half_basis is True exactly when d = 1 (mod 4), i.e. when the second
    basis element is (-1+sqrt(d))/2 rather than sqrt(d).
    """

    d: int
    half_basis: bool = field(init=False)

    def __post_init__(self) -> None:
        if self.d >= 0:
            raise ValueError(f"d must be negative, got {self.d}")
        if not is_squarefree(-self.d):
            raise ValueError(f"d must be squarefree, got {self.d}")
        object.__setattr__(self, "half_basis", self.d % 4 == 1)

    @property
    def half_coeff(self) -> int:
        """(1-d)/4, the norm of the half-basis generator; only for half_basis."""
        return (1 - self.d) // 4

    def elem(self, u: int, v: int = 0) -> RingElem:
        return RingElem(u, v, self)

    @property
    def zero(self) -> RingElem:
        return RingElem(0, 0, self)

    @property
    def one(self) -> RingElem:
        return RingElem(1, 0, self)

    def __repr__(self) -> str:
        return f"RingSpec(d={self.d})"


@dataclass(frozen=True, slots=True)
class RingElem:
    """u + v*w in the ring described by spec; immutable and hashable."""

    u: int
    v: int
    spec: RingSpec

    def _check(self, other: RingElem) -> None:
        if self.spec != other.spec:
            raise MixedRings(f"{self.spec} vs {other.spec}")

    def __add__(self, other: RingElem) -> RingElem:
        self._check(other)
        return RingElem(self.u + other.u, self.v + other.v, self.spec)

    def __sub__(self, other: RingElem) -> RingElem:
        self._check(other)
        return RingElem(self.u - other.u, self.v - other.v, self.spec)

    def __neg__(self) -> RingElem:
        return RingElem(-self.u, -self.v, self.spec)

    def __mul__(self, other: RingElem | int) -> RingElem:
        if isinstance(other, int):
            return RingElem(self.u * other, self.v * other, self.spec)
        self._check(other)
        u1, v1, u2, v2 = self.u, self.v, other.u, other.v
        if self.spec.half_basis:
            # w^2 = -w + (d-1)/4 from the minimal polynomial of (-1+sqrt(d))/2
            c = (self.spec.d - 1) // 4
            return RingElem(u1 * u2 + v1 * v2 * c, u1 * v2 + v1 * u2 - v1 * v2, self.spec)
        return RingElem(u1 * u2 + v1 * v2 * self.spec.d, u1 * v2 + v1 * u2, self.spec)

    def __rmul__(self, other: int) -> RingElem:
        return self * other

    def abs_sq(self) -> int:
        """Squared complex absolute value; equals the field norm, always a nonnegative int."""
        u, v = self.u, self.v
        if self.spec.half_basis:
            return u * u - u * v + self.spec.half_coeff * v * v
        return u * u - self.spec.d * v * v

    def conj(self) -> RingElem:
        if self.spec.half_basis:
            return RingElem(self.u - self.v, -self.v, self.spec)
        return RingElem(self.u, -self.v, self.spec)

    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    def is_unit(self) -> bool:
        return self.abs_sq() == 1

    def divide_exact(self, other: RingElem) -> RingElem | None:
        """self / other when the quotient lies in the ring, else None."""
        self._check(other)
        n = other.abs_sq()
        if n == 0:
            return None
        q = self * other.conj()
        if q.u % n or q.v % n:
            return None
        return RingElem(q.u // n, q.v // n, self.spec)

    def canonical_key(self) -> tuple[int, int, int]:
        """Total order used everywhere: (abs_sq, u, v) lexicographic."""
        return (self.abs_sq(), self.u, self.v)

    def coords(self) -> tuple[int, int]:
        return (self.u, self.v)

    def __str__(self) -> str:
        return f"({self.u},{self.v})"


def cmp_abs(z1: RingElem, z2: RingElem) -> int:
    """-1, 0 or +1 comparing |z1| and |z2| exactly via squared absolute values."""
    z1._check(z2)
    a, b = z1.abs_sq(), z2.abs_sq()
    return (a > b) - (a < b)


def elements_with_abs_sq(spec: RingSpec, n: int) -> list[RingElem]:
    """All ring elements of squared absolute value exactly n, sorted by (u, v).

    Solves the positive definite norm form exactly: |v| is bounded by
    floor(sqrt(4n/|disc|)) and the remaining quadratic in u is solved with
    integer square roots only.
    """
    if n < 0:
        return []
    if n == 0:
        return [spec.zero]
    out: list[RingElem] = []
    d = spec.d
    if spec.half_basis:
        vmax = isqrt((4 * n) // (-d))
        for v in range(-vmax, vmax + 1):
            disc = 4 * n + d * v * v
            if disc < 0:
                continue
            r = isqrt(disc)
            if r * r != disc or (v - r) % 2:
                continue
            out.append(RingElem((v + r) // 2, v, spec))
            if r:
                out.append(RingElem((v - r) // 2, v, spec))
    else:
        vmax = isqrt(n // (-d))
        for v in range(-vmax, vmax + 1):
            rem = n + d * v * v
            u = isqrt(rem)
            if u * u != rem:
                continue
            out.append(RingElem(u, v, spec))
            if u:
                out.append(RingElem(-u, v, spec))
    out.sort(key=lambda z: (z.u, z.v))
    return out


def iter_disk_coords(spec: RingSpec, b_sq: int) -> Iterator[tuple[int, int, int]]:
    """Unordered stream of (u, v, abs_sq) for all nonzero z with abs_sq <= b_sq.

    Hot-path helper: runs in O(number of lattice points) with plain int
    arithmetic; use enumerate_up_to for the canonical order.
    """
    if b_sq < 1:
        return
    d = spec.d
    if spec.half_basis:
        vmax = isqrt((4 * b_sq) // (-d))
        c = spec.half_coeff
        for v in range(-vmax, vmax + 1):
            rr = 4 * b_sq + d * v * v
            r = isqrt(rr)
            cv = c * v * v
            # u ranges over [(v-r)/2, (v+r)/2]
            for u in range(-((r - v) // 2), (v + r) // 2 + 1):
                if u or v:
                    yield u, v, u * u - u * v + cv
    else:
        vmax = isqrt(b_sq // (-d))
        for v in range(-vmax, vmax + 1):
            r = isqrt(b_sq + d * v * v)
            dv = -d * v * v
            for u in range(-r, r + 1):
                if u or v:
                    yield u, v, u * u + dv


def enumerate_up_to(spec: RingSpec, b_sq: int) -> Iterator[RingElem]:
    """Every nonzero z with abs_sq(z) <= b_sq, exactly once, canonical order."""
    pts = sorted((n, u, v) for u, v, n in iter_disk_coords(spec, b_sq))
    for n, u, v in pts:
        yield RingElem(u, v, spec)


def sqrt_in_ring(w: RingElem) -> tuple[RingElem, ...]:
    """All z in the ring with z*z == w; empty, {0}, or a +/- pair.

    Necessary condition from norm multiplicativity: abs_sq(w) must be a
    perfect square in Z.  Candidates are then the finitely many elements of
    the right absolute value, filtered by exact squaring.
    """
    n = w.abs_sq()
    r = isqrt(n)
    if r * r != n:
        return ()
    roots = tuple(z for z in elements_with_abs_sq(w.spec, r) if z * z == w)
    return tuple(sorted(roots, key=RingElem.canonical_key))


def canonical_sqrt(w: RingElem) -> RingElem | None:
    """The square root maximal in canonical order, or None if w is not a square."""
    roots = sqrt_in_ring(w)
    if not roots:
        return None
    return roots[-1]
