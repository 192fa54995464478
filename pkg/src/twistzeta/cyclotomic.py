"""Exact arithmetic in cyclotomic fields Q(zeta_r).

An element is a coordinate vector of length phi(r) in the power basis
1, z, ..., z^(phi(r)-1), where z is a fixed primitive r-th root of unity,
kept fully reduced modulo the r-th cyclotomic polynomial.  Coordinates are
exact rationals, so equality of coordinate vectors is equality in the
field and values can be compared across independently computed routes.
"""

from __future__ import annotations

import cmath
import fractions
import functools
import math

from ._backend import kernels
from ._rational import ONE, ZERO, Rational, format_rational
from .errors import DimensionMismatch, FieldMismatch, ZeroInverse

__all__ = [
    "CyclotomicElement",
    "CyclotomicField",
    "cyclotomic_polynomial",
    "elem_add",
    "elem_inv",
    "elem_mul",
    "elem_pow",
    "embed",
    "root_of_unity",
]


def _divisors(r: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= r:
        if r % d == 0:
            small.append(d)
            if d != r // d:
                large.append(r // d)
        d += 1
    return small + large[::-1]


def _exact_div(num: list[int], den: tuple[int, ...]) -> list[int]:
    """Divide integer polynomials (low degree first); den is monic and
    must divide num exactly."""
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + dd]
        if c:
            out[i] = c
            for j, dj in enumerate(den):
                num[i + j] -= c * dj
    if any(num[:dd]):
        raise ArithmeticError("division was not exact")
    return out


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(r: int) -> tuple[int, ...]:
    """Integer coefficients of the r-th cyclotomic polynomial, low degree
    first, monic.

    Computed by exact division of x^r - 1 by the product of the
    polynomials of all proper divisors of r.

    >>> cyclotomic_polynomial(1)
    (-1, 1)
    >>> cyclotomic_polynomial(4)
    (1, 0, 1)
    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if r < 1:
        raise ValueError("order must be a positive integer")
    if r == 1:
        return (-1, 1)
    coeffs = [0] * (r + 1)
    coeffs[0] = -1
    coeffs[r] = 1
    for d in _divisors(r):
        if d < r:
            coeffs = _exact_div(coeffs, cyclotomic_polynomial(d))
    return tuple(coeffs)


def _totient(r: int) -> int:
    phi = r
    n = r
    p = 2
    while p * p <= n:
        if n % p == 0:
            phi -= phi // p
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        phi -= phi // n
    return phi


class CyclotomicField:
    """The field Q(zeta_r) with its reduction data.

    Instances are interned per order, so elements of one order always
    share the same field object.
    """

    __slots__ = ("order", "degree", "modulus", "reduction_rows", "_root")

    def __init__(self, order: int):
        modulus = cyclotomic_polynomial(order)
        phi = len(modulus) - 1
        if phi != _totient(order):
            raise AssertionError("cyclotomic degree is not the totient")
        self.order = order
        self.degree = phi
        self.modulus = modulus
        self.reduction_rows = self._build_rows(modulus, phi)
        self._root = cmath.exp(2j * math.pi / order)

    @staticmethod
    def _build_rows(modulus: tuple[int, ...], phi: int) -> tuple:
        # rows[j] = integer coordinates of z^(phi+j), for j = 0..phi-2;
        # a product of two reduced elements never needs more.
        rows = []
        row = [-c for c in modulus[:phi]]
        rows.append(tuple(row))
        for _ in range(phi - 2):
            top = row[phi - 1]
            row = [0] + row[: phi - 1]
            if top:
                first = rows[0]
                row = [row[i] + top * first[i] for i in range(phi)]
            rows.append(tuple(row))
        return tuple(rows)

    @staticmethod
    @functools.lru_cache(maxsize=None)
    def get(order: int) -> "CyclotomicField":
        return CyclotomicField(order)

    def element(self, coords) -> "CyclotomicElement":
        coords = tuple(
            c if isinstance(c, type(ONE)) else Rational(c) for c in coords
        )
        if len(coords) != self.degree:
            raise DimensionMismatch(
                f"expected {self.degree} coordinates, got {len(coords)}"
            )
        return CyclotomicElement(self, coords)

    def constant(self, value) -> "CyclotomicElement":
        coords = (Rational(value),) + (ZERO,) * (self.degree - 1)
        return CyclotomicElement(self, coords)

    @property
    def zero(self) -> "CyclotomicElement":
        return self.constant(0)

    @property
    def one(self) -> "CyclotomicElement":
        return self.constant(1)

    def root(self, e: int = 1) -> "CyclotomicElement":
        """The element zeta_r^e."""
        e %= self.order
        if self.degree == 1:
            # r = 1 or 2: z is 1 or -1
            base = self.constant(-1) if self.order == 2 else self.one
        else:
            coords = [ZERO] * self.degree
            coords[1] = ONE
            base = CyclotomicElement(self, tuple(coords))
        return base**e

    def __repr__(self) -> str:
        return f"CyclotomicField({self.order})"


class CyclotomicElement:
    """An exact element of Q(zeta_r); immutable, canonical coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field: CyclotomicField, coords: tuple):
        self.field = field
        self.coords = coords

    def _lift(self, other):
        """Coerce an exact scalar to coordinates in this field, or None."""
        if isinstance(other, CyclotomicElement):
            if other.field.order != self.field.order:
                raise FieldMismatch(
                    f"orders {self.field.order} and {other.field.order}"
                )
            return other.coords
        if isinstance(other, int) or isinstance(other, type(ONE)):
            q = Rational(other)
            return (q,) + (ZERO,) * (self.field.degree - 1)
        if isinstance(other, fractions.Fraction):
            q = Rational(other.numerator, other.denominator)
            return (q,) + (ZERO,) * (self.field.degree - 1)
        return None

    def __add__(self, other):
        oc = self._lift(other)
        if oc is None:
            return NotImplemented
        return CyclotomicElement(
            self.field, tuple(a + b for a, b in zip(self.coords, oc))
        )

    __radd__ = __add__

    def __sub__(self, other):
        oc = self._lift(other)
        if oc is None:
            return NotImplemented
        return CyclotomicElement(
            self.field, tuple(a - b for a, b in zip(self.coords, oc))
        )

    def __rsub__(self, other):
        oc = self._lift(other)
        if oc is None:
            return NotImplemented
        return CyclotomicElement(
            self.field, tuple(b - a for a, b in zip(self.coords, oc))
        )

    def __neg__(self):
        return CyclotomicElement(self.field, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, CyclotomicElement):
            if other.field.order != self.field.order:
                raise FieldMismatch(
                    f"orders {self.field.order} and {other.field.order}"
                )
            coords = kernels.cyclo_mul(
                self.coords, other.coords, self.field.reduction_rows
            )
            return CyclotomicElement(
                self.field,
                tuple(
                    c if isinstance(c, type(ONE)) else Rational(c)
                    for c in coords
                ),
            )
        oc = self._lift(other)
        if oc is None:
            return NotImplemented
        q = oc[0]
        return CyclotomicElement(self.field, tuple(a * q for a in self.coords))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self) -> "CyclotomicElement":
        """Multiplicative inverse via the extended Euclidean algorithm on
        the coordinate polynomial and the field polynomial over Q."""
        if self.is_zero:
            raise ZeroInverse("zero has no inverse")
        # Invariant: old_r = old_s * self + (...) * modulus, over Q[x].
        old_r = [q for q in self.coords]
        r = [Rational(c) for c in self.field.modulus]
        old_s = [ONE]
        s: list = [ZERO]
        while any(r):
            q, rem = _poly_divmod(old_r, r)
            old_r, r = r, rem
            old_s, s = s, _poly_sub(old_s, _poly_mul(q, s))
        # old_r is now a nonzero constant gcd (the modulus is irreducible)
        lead = _poly_trim(old_r)
        if len(lead) != 1:
            raise ZeroInverse("element shares a factor with the modulus")
        inv_lead = ONE / lead[0]
        coeffs = [c * inv_lead for c in old_s]
        coeffs = coeffs[: self.field.degree]
        coeffs += [ZERO] * (self.field.degree - len(coeffs))
        return CyclotomicElement(self.field, tuple(coeffs))

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def is_one(self) -> bool:
        return self.coords[0] == 1 and not any(self.coords[1:])

    def embed(self) -> complex:
        """Numeric value at z = exp(2 pi i / r), in double precision."""
        z = self.field._root
        acc = 0j
        for c in reversed(self.coords):
            acc = acc * z + float(c)
        return acc

    def coords_text(self) -> str:
        return ",".join(format_rational(c) for c in self.coords)

    def __eq__(self, other):
        if isinstance(other, CyclotomicElement):
            return (
                self.field.order == other.field.order
                and self.coords == other.coords
            )
        oc = self._lift(other)
        if oc is None:
            return NotImplemented
        return self.coords == oc

    def __hash__(self):
        return hash((self.field.order, self.coords))

    def __bool__(self):
        return not self.is_zero

    def __str__(self) -> str:
        parts = []
        for i, c in enumerate(self.coords):
            if not c:
                continue
            q = format_rational(c)
            if i == 0:
                parts.append(q)
            elif i == 1:
                parts.append(f"{q}*z")
            else:
                parts.append(f"{q}*z^{i}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"<Q(zeta_{self.field.order}): {self}>"


def _poly_trim(p: list) -> list:
    i = len(p)
    while i > 0 and not p[i - 1]:
        i -= 1
    return p[:i]


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else ZERO
        y = b[i] if i < len(b) else ZERO
        out.append(x - y)
    return out


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return out


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    q = [ZERO] * (len(a) - len(b) + 1)
    inv_lead = ONE / b[-1]
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] * inv_lead
        if c:
            q[i] = c
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return q, _poly_trim(a)


# Operation-style aliases used by the tests and the docs.


def elem_add(a: CyclotomicElement, b: CyclotomicElement) -> CyclotomicElement:
    return a + b


def elem_mul(a: CyclotomicElement, b: CyclotomicElement) -> CyclotomicElement:
    return a * b


def elem_inv(a: CyclotomicElement) -> CyclotomicElement:
    return a.inverse()


def elem_pow(a: CyclotomicElement, n: int) -> CyclotomicElement:
    return a**n


def root_of_unity(r: int, e: int) -> CyclotomicElement:
    """zeta_r^e as an element of Q(zeta_r)."""
    return CyclotomicField.get(r).root(e)


def embed(a: CyclotomicElement) -> complex:
    return a.embed()
