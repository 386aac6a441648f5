"""
Quaternion values over two scalar backends.

Float mode stores IEEE-754 doubles; Exact mode stores :class:`fractions.Fraction`
values (arbitrary-precision numerator and denominator, always in lowest terms).
The mode of a value is decided by the type of its components. Plain ``int``
components are promoted to whatever mode the other components use, and to
Exact mode when every component is an integer. Mixing the two modes in one
operation raises :class:`~qcommute.errors.ModeError` instead of silently
degrading to floats.

Products use the scalar/vector form::

    ab = (a0 b0 - a.b) + h.(a0 b + b0 a + a x b)

with ``h = (i, j, k)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import ModeError

Scalar = Union[float, Fraction]


class Mode(str, enum.Enum):
    FLOAT = "float"
    EXACT = "exact"


@dataclass(frozen=True)
class Tolerance:
    """Float-mode equality: ``|x - y| <= max(atol, rtol * scale)``."""

    rtol: float = 1e-9
    atol: float = 1e-12

    def bound(self, scale: float) -> float:
        return max(self.atol, self.rtol * abs(scale))


DEFAULT_TOLERANCE = Tolerance()


def scalar_mode(x) -> Mode:
    if isinstance(x, float):
        return Mode.FLOAT
    if isinstance(x, Rational) and not isinstance(x, bool):
        return Mode.EXACT
    raise TypeError(f"unsupported scalar type {type(x).__name__}")


def to_scalar(x, mode: Mode) -> Scalar:
    """Coerce ``x`` into ``mode``; ints go either way, floats never become exact."""
    if mode is Mode.FLOAT:
        if isinstance(x, float):
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return float(x)
        raise ModeError(f"cannot use {type(x).__name__} value {x!r} in float mode")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational) and not isinstance(x, bool):
        return Fraction(x)
    raise ModeError(f"cannot use {type(x).__name__} value {x!r} in exact mode")


def _common_mode(values) -> Mode:
    modes = {scalar_mode(v) for v in values if not isinstance(v, int)}
    if len(modes) > 1:
        raise ModeError("float and exact scalars mixed in one value")
    return modes.pop() if modes else Mode.EXACT


def scalars_close(x: Scalar, y: Scalar, scale: float = 1.0, tol: Tolerance | None = None) -> bool:
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x == y
    tol = tol or DEFAULT_TOLERANCE
    scale = max(abs(scale), abs(x), abs(y))
    return abs(x - y) <= tol.bound(scale)


def scalar_is_zero(x: Scalar, scale: float = 1.0, tol: Tolerance | None = None) -> bool:
    if isinstance(x, Fraction):
        return x == 0
    tol = tol or DEFAULT_TOLERANCE
    return abs(x) <= tol.bound(scale)


@dataclass(frozen=True)
class Vector3:
    x: Scalar
    y: Scalar
    z: Scalar

    def __post_init__(self):
        if type(self.x) is type(self.y) is type(self.z) and not isinstance(self.x, int):
            return
        mode = _common_mode((self.x, self.y, self.z))
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, to_scalar(getattr(self, name), mode))

    @property
    def mode(self) -> Mode:
        return Mode.FLOAT if type(self.x) is float else Mode.EXACT

    def __iter__(self):
        yield self.x
        yield self.y
        yield self.z

    def __add__(self, other: Vector3) -> Vector3:
        _check_same(self.x, other.x)
        return Vector3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: Vector3) -> Vector3:
        _check_same(self.x, other.x)
        return Vector3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> Vector3:
        return Vector3(-self.x, -self.y, -self.z)

    def scale(self, s) -> Vector3:
        s = to_scalar(s, self.mode)
        return Vector3(s * self.x, s * self.y, s * self.z)

    def dot(self, other: Vector3) -> Scalar:
        _check_same(self.x, other.x)
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: Vector3) -> Vector3:
        _check_same(self.x, other.x)
        return Vector3(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def norm_sq(self) -> Scalar:
        return self.dot(self)

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0 and self.z == 0


def det3(a: Vector3, b: Vector3, c: Vector3) -> Scalar:
    """Scalar triple product ``(a x b) . c``."""
    return a.cross(b).dot(c)


def _check_same(s, t):
    if type(s) is not type(t):
        raise ModeError("float and exact operands mixed")


@dataclass(frozen=True)
class Quaternion:
    """``w + x i + y j + z k``; ``re`` and ``im`` give the scalar/vector split."""

    w: Scalar
    x: Scalar
    y: Scalar
    z: Scalar

    def __post_init__(self):
        t = type(self.w)
        if t is type(self.x) is type(self.y) is type(self.z) and t is not int:
            if t is float or t is Fraction:
                return
        mode = _common_mode((self.w, self.x, self.y, self.z))
        for name in ("w", "x", "y", "z"):
            object.__setattr__(self, name, to_scalar(getattr(self, name), mode))

    @classmethod
    def from_parts(cls, re, im: Vector3) -> Quaternion:
        return cls(re, im.x, im.y, im.z)

    @classmethod
    def real(cls, value, mode: Mode | None = None) -> Quaternion:
        mode = mode or scalar_mode(value)
        zero = to_scalar(0, mode)
        return cls(to_scalar(value, mode), zero, zero, zero)

    @classmethod
    def one(cls, mode: Mode = Mode.EXACT) -> Quaternion:
        return cls.real(1, mode)

    @classmethod
    def zero(cls, mode: Mode = Mode.EXACT) -> Quaternion:
        return cls.real(0, mode)

    @property
    def re(self) -> Scalar:
        return self.w

    @property
    def im(self) -> Vector3:
        return Vector3(self.x, self.y, self.z)

    @property
    def mode(self) -> Mode:
        return Mode.FLOAT if type(self.w) is float else Mode.EXACT

    def components(self) -> tuple:
        return (self.w, self.x, self.y, self.z)

    def __iter__(self):
        return iter(self.components())

    def to_mode(self, mode: Mode) -> Quaternion:
        if mode is self.mode:
            return self
        if mode is Mode.FLOAT:
            return Quaternion(*(float(c) for c in self))
        return Quaternion(*(Fraction(c) for c in self))

    def is_zero(self) -> bool:
        return self.w == 0 and self.x == 0 and self.y == 0 and self.z == 0

    def _coerce(self, other) -> Quaternion:
        if isinstance(other, Quaternion):
            if type(other.w) is not type(self.w):
                raise ModeError("float and exact quaternions mixed")
            return other
        return Quaternion.real(to_scalar(other, self.mode), self.mode)

    def __add__(self, other) -> Quaternion:
        o = self._coerce(other)
        return Quaternion(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)

    __radd__ = __add__

    def __sub__(self, other) -> Quaternion:
        o = self._coerce(other)
        return Quaternion(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)

    def __rsub__(self, other) -> Quaternion:
        return self._coerce(other) - self

    def __neg__(self) -> Quaternion:
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other) -> Quaternion:
        if not isinstance(other, Quaternion):
            s = to_scalar(other, self.mode)
            return Quaternion(s * self.w, s * self.x, s * self.y, s * self.z)
        return mul(self, other)

    def __rmul__(self, other) -> Quaternion:
        # scalars are central, so left and right scaling agree
        return self.__mul__(other)

    def __truediv__(self, other) -> Quaternion:
        if isinstance(other, Quaternion):
            raise TypeError("quaternion division is ambiguous; use inverse() explicitly")
        s = to_scalar(other, self.mode)
        if s == 0:
            raise ZeroDivisionError("quaternion divided by zero scalar")
        return Quaternion(self.w / s, self.x / s, self.y / s, self.z / s)

    def conj(self) -> Quaternion:
        return conj(self)

    def norm_sq(self) -> Scalar:
        return norm_sq(self)

    def norm(self) -> Scalar:
        return norm(self)

    def inverse(self) -> Quaternion:
        return inverse(self)

    def close(self, other: Quaternion, tol: Tolerance | None = None, scale: float = 0.0) -> bool:
        """Exact equality in Exact mode, otherwise a componentwise tolerance check."""
        o = self._coerce(other)
        if self.mode is Mode.EXACT:
            return self == o
        tol = tol or DEFAULT_TOLERANCE
        s = max(scale, max_abs(self), max_abs(o))
        bound = tol.bound(s)
        return all(abs(p - q) <= bound for p, q in zip(self, o))

    def __str__(self) -> str:
        from .literals import format_quaternion

        return format_quaternion(self)


def max_abs(q: Quaternion) -> float:
    return float(max(abs(c) for c in q))


def mul(a: Quaternion, b: Quaternion) -> Quaternion:
    if type(a.w) is not type(b.w):
        raise ModeError("float and exact quaternions mixed")
    a0, a1, a2, a3 = a.w, a.x, a.y, a.z
    b0, b1, b2, b3 = b.w, b.x, b.y, b.z
    # (a0 b0 - a.b) + (a0 b + b0 a + a x b), expanded per component
    return Quaternion(
        a0 * b0 - (a1 * b1 + a2 * b2 + a3 * b3),
        a0 * b1 + b0 * a1 + (a2 * b3 - a3 * b2),
        a0 * b2 + b0 * a2 + (a3 * b1 - a1 * b3),
        a0 * b3 + b0 * a3 + (a1 * b2 - a2 * b1),
    )


def mul_vector_form(a: Quaternion, b: Quaternion) -> Quaternion:
    """The same product assembled from dot and cross products (slower; used as a cross-check)."""
    va, vb = a.im, b.im
    re = a.re * b.re - va.dot(vb)
    im = vb.scale(a.re) + va.scale(b.re) + va.cross(vb)
    return Quaternion.from_parts(re, im)


def conj(q: Quaternion) -> Quaternion:
    return Quaternion(q.w, -q.x, -q.y, -q.z)


def norm_sq(q: Quaternion) -> Scalar:
    return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z


def _exact_sqrt(x: Fraction) -> Fraction:
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn != n or rd * rd != d:
        raise ModeError(f"norm of {x} is irrational; use norm_sq in exact mode")
    return Fraction(rn, rd)


def norm(q: Quaternion) -> Scalar:
    """Euclidean norm; Exact mode only succeeds when ``norm_sq`` is a rational square."""
    if q.mode is Mode.FLOAT:
        return math.hypot(*q)  # no underflow or overflow in the squares
    return _exact_sqrt(norm_sq(q))


def inverse(q: Quaternion) -> Quaternion:
    n2 = norm_sq(q)
    if n2 == 0:
        raise ZeroDivisionError("zero quaternion has no inverse")
    return conj(q) / n2


def pure(v: Vector3) -> Quaternion:
    return Quaternion(v.x * 0, v.x, v.y, v.z)


# exact basis units
ONE = Quaternion(1, 0, 0, 0)
I = Quaternion(0, 1, 0, 0)
J = Quaternion(0, 0, 1, 0)
K = Quaternion(0, 0, 0, 1)
