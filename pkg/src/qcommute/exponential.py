"""
Quaternionic exponential and the derivative of ``exp(psi(x))`` along a path.

Writing ``psi = f + I g`` with ``f`` real, ``g = |im psi|`` and ``I`` a unit
pure quaternion, ``exp(psi) = e^f (cos g + I sin g)``. Because ``I`` and its
derivative anticommute, the derivative is not ``psi' exp(psi)`` but::

    psi' exp(psi) - I' (g exp(psi) - e^f sin g)

Everything here is Float mode only; transcendental functions have no exact
rational counterpart.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .algebra import Mode, Quaternion, mul, pure
from .errors import ModeError

POLAR_EPS = 1e-12
DERIVATIVE_SWITCH = 1e-6
SERIES_TERMS = 40
DERIVATIVE_SERIES_TERMS = 30


def _require_float(*qs: Quaternion) -> None:
    for q in qs:
        if q.mode is not Mode.FLOAT:
            raise ModeError("exponential functions require float-mode quaternions")


@dataclass(frozen=True)
class PolarForm:
    f: float
    g: float
    axis: Quaternion
    degenerate: bool

    def reconstruct(self) -> Quaternion:
        return self.axis * self.g + self.f


def polar_decompose(q: Quaternion, eps: float = POLAR_EPS) -> PolarForm:
    _require_float(q)
    v = q.im
    g = math.sqrt(v.norm_sq())
    if g < eps:
        return PolarForm(q.re, g, Quaternion(0.0, 1.0, 0.0, 0.0), True)
    return PolarForm(q.re, g, pure(v) / g, False)


def qexp(q: Quaternion) -> Quaternion:
    p = polar_decompose(q)
    ef = math.exp(p.f)
    if p.degenerate:
        # cos g ~ 1 and the axis term is below resolution; keep the sub-threshold part linearly
        return Quaternion(ef, ef * q.x, ef * q.y, ef * q.z)
    return p.axis * (ef * math.sin(p.g)) + ef * math.cos(p.g)


def qexp_series(q: Quaternion, terms: int = SERIES_TERMS) -> Quaternion:
    """Partial sum ``sum_{n < terms} q^n / n!``."""
    if terms < 1:
        raise ValueError("terms must be >= 1")
    _require_float(q)
    term = Quaternion.one(Mode.FLOAT)
    total = term
    for n in range(1, terms):
        term = mul(term, q) / n
        total = total + term
    return total


@dataclass(frozen=True)
class JetPair:
    """Value and first derivative of a quaternion path at one point."""

    value: Quaternion
    derivative: Quaternion


def _jet_parts(jet: JetPair):
    v, dv = jet.value.im, jet.derivative.im
    g = math.sqrt(v.norm_sq())
    return v, dv, g


def magnitude_derivative(jet: JetPair) -> float:
    """``g' = (v . v') / g``."""
    v, dv, g = _jet_parts(jet)
    return v.dot(dv) / g


def axis_derivative(jet: JetPair) -> Quaternion:
    """``I' = v'/g - v (v . v') / g^3``, computed algebraically from the jet."""
    _require_float(jet.value, jet.derivative)
    v, dv, g = _jet_parts(jet)
    if g == 0.0:
        raise ZeroDivisionError("axis derivative undefined on the real axis")
    vdv = v.dot(dv)
    return pure(dv.scale(1.0 / g) - v.scale(vdv / g**3))


def anticommutator(a: Quaternion, b: Quaternion) -> Quaternion:
    return mul(a, b) + mul(b, a)


def naive_derivative(jet: JetPair) -> Quaternion:
    """``psi' exp(psi)``: correct only when ``psi`` and ``psi'`` commute."""
    return mul(jet.derivative, qexp(jet.value))


def qexp_derivative(jet: JetPair, switch: float = DERIVATIVE_SWITCH) -> Quaternion:
    """Closed-form derivative of ``exp(psi)``.

    Below ``g < switch`` the ``1/g`` in ``I'`` ruins accuracy, so the real
    part is split off (it commutes with everything) and the remaining pure part
    goes through the term-by-term series derivative.
    """
    _require_float(jet.value, jet.derivative)
    psi, dpsi = jet.value, jet.derivative
    v, _, g = _jet_parts(jet)
    e_psi = qexp(psi)
    if g < switch:
        ef = math.exp(psi.re)
        inner = qexp_derivative_series(JetPair(pure(v), pure(dpsi.im)))
        return e_psi * dpsi.re + inner * ef
    di = axis_derivative(jet)
    correction = e_psi * g - math.exp(psi.re) * math.sin(g)
    return mul(dpsi, e_psi) - mul(di, correction)


def qexp_derivative_series(jet: JetPair, terms: int = DERIVATIVE_SERIES_TERMS) -> Quaternion:
    """``sum_{1 <= n < terms} (1/n!) sum_k psi^k psi' psi^(n-1-k)``.

    Uses ``D_n = psi' psi^(n-1) + psi D_(n-1)`` for ``D_n = (psi^n)'``, scaled by
    ``1/n!`` as it goes. No commutation is assumed.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    _require_float(jet.value, jet.derivative)
    psi, dpsi = jet.value, jet.derivative
    power = Quaternion.one(Mode.FLOAT)  # psi^(n-1) / (n-1)!
    deriv = Quaternion.zero(Mode.FLOAT)  # D_(n-1) / (n-1)!
    total = Quaternion.zero(Mode.FLOAT)
    for n in range(1, terms):
        deriv = (mul(dpsi, power) + mul(psi, deriv)) / n
        power = mul(power, psi) / n
        total = total + deriv
    return total


@dataclass(frozen=True)
class QuaternionPolynomial:
    """``psi(x) = sum_k c_k x^k`` with quaternion coefficients (lowest degree first)."""

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(c.to_mode(Mode.FLOAT) for c in self.coeffs)
        if not coeffs:
            raise ValueError("polynomial needs at least one coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    def value(self, x: float) -> Quaternion:
        acc = Quaternion.zero(Mode.FLOAT)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self, x: float) -> Quaternion:
        acc = Quaternion.zero(Mode.FLOAT)
        for k in range(len(self.coeffs) - 1, 0, -1):
            acc = acc * x + self.coeffs[k] * float(k)
        return acc

    def jet(self, x: float) -> JetPair:
        return JetPair(self.value(x), self.derivative(x))


def central_difference(path, x: float, h: float) -> Quaternion:
    """``[exp(psi(x+h)) - exp(psi(x-h))] / 2h``; ``path`` is any callable returning a quaternion."""
    return (qexp(path(x + h)) - qexp(path(x - h))) / (2.0 * h)


def witness_path() -> QuaternionPolynomial:
    """``psi(x) = x i + x^2 j``, along which ``psi`` and ``psi'`` do not commute."""
    zero = Quaternion(0.0, 0.0, 0.0, 0.0)
    return QuaternionPolynomial((zero, Quaternion(0.0, 1.0, 0.0, 0.0), Quaternion(0.0, 0.0, 1.0, 0.0)))


def polynomial(coeffs: Sequence[Quaternion]) -> QuaternionPolynomial:
    return QuaternionPolynomial(tuple(coeffs))
