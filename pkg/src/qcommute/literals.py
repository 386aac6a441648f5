"""
Text form of quaternions, e.g. ``1+2i-3j+0.5k`` or ``1/2 - 1/3 i``.

Grammar: signed terms joined by ``+``/``-``; a term is a coefficient, a
coefficient followed by a unit ``i``/``j``/``k``, or a bare unit. Float-mode
coefficients are decimals (exponents allowed); Exact-mode coefficients are
integers or ``int/int``. Whitespace is ignored and repeated units add up.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import Mode, Quaternion
from .errors import ModeError, ParseError

_TERM = re.compile(
    r"(?P<sign>[+-])?(?P<coef>\d+/\d+|(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?(?P<unit>[ijk])?"
)
_UNITS = {"": 0, "i": 1, "j": 2, "k": 3}


def _coefficient(text: str, mode: Mode, pos: int):
    if "/" in text:
        num, den = (int(p) for p in text.split("/"))
        if den == 0:
            raise ParseError("zero denominator", pos)
        value = Fraction(num, den)
        return value if mode is Mode.EXACT else float(value)
    if mode is Mode.EXACT:
        if any(ch in text for ch in ".eE"):
            raise ModeError(f"decimal coefficient {text!r} at position {pos} not allowed in exact mode")
        return Fraction(int(text))
    return float(text)


def parse_quaternion(text: str, mode: Mode | str = Mode.EXACT) -> Quaternion:
    mode = Mode(mode)
    # positions in error messages refer to the original text
    where = [i for i, ch in enumerate(text) if not ch.isspace()]
    body = "".join(text[i] for i in where)
    if not body:
        raise ParseError("empty literal", len(text))

    def origin(p):
        return where[p] if p < len(where) else len(text)

    one = Fraction(1) if mode is Mode.EXACT else 1.0
    parts = [one * 0] * 4
    pos = 0
    while pos < len(body):
        m = _TERM.match(body, pos)
        sign, coef, unit = m.group("sign", "coef", "unit")
        if pos > 0 and sign is None:
            raise ParseError("expected '+' or '-'", origin(pos))
        if coef is None and unit is None:
            at = m.end()
            what = f"unexpected character {body[at]!r}" if at < len(body) else "dangling sign"
            raise ParseError(what, origin(at))
        value = _coefficient(coef, mode, origin(pos)) if coef else one
        parts[_UNITS[unit or ""]] += -value if sign == "-" else value
        pos = m.end()
    return Quaternion(*parts)


def _format_scalar(x) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return repr(float(x))


def format_quaternion(q: Quaternion) -> str:
    """Canonical literal; ``parse_quaternion(format_quaternion(q), q.mode) == q``."""
    out = []
    for value, unit in zip(q, ("", "i", "j", "k")):
        if value == 0:
            continue
        text = _format_scalar(value)
        if text.startswith("-"):
            sign, text = "-", text[1:]
        else:
            sign = "+"
        if not out and sign == "+":
            sign = ""
        out.append(f"{sign}{text}{unit}")
    if not out:
        return "0" if q.mode is Mode.EXACT else "0.0"
    return "".join(out)


def parse_tuple(line: str, mode: Mode | str = Mode.EXACT) -> tuple:
    """Semicolon-separated literals on one line."""
    return tuple(parse_quaternion(part, mode) for part in line.split(";") if part.strip())
