"""
Similarity of multiproducts.

Two quaternions are similar (``q = s^-1 p s`` for some nonzero ``s``) exactly
when they share real part and norm, so every check here compares a
:class:`SimilarityKey`. All decisive criteria are polynomial in the
components; Exact mode never takes a square root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import (
    DEFAULT_TOLERANCE,
    Mode,
    Quaternion,
    Scalar,
    Tolerance,
    Vector3,
    det3,
    inverse,
    mul,
    norm_sq,
    pure,
    scalar_is_zero,
    scalars_close,
)
from .commutator import Permutation, all_permutations
from .errors import ArityError, ModeError, PreconditionError, SizeLimitError

MAX_PARTITION_N = 8


@dataclass(frozen=True)
class SimilarityKey:
    re: Scalar
    norm_sq: Scalar

    def matches(self, other: SimilarityKey, tol: Tolerance | None = None) -> bool:
        if isinstance(self.re, Fraction) and isinstance(other.re, Fraction):
            return self == other
        if isinstance(self.re, Fraction) != isinstance(other.re, Fraction):
            raise ModeError("float and exact keys compared")
        # re is on the scale of the norm, norm_sq on its square
        scale = math.sqrt(max(self.norm_sq, other.norm_sq))
        return scalars_close(self.re, other.re, scale, tol) and scalars_close(
            self.norm_sq, other.norm_sq, scale * scale, tol
        )


def similarity_key(q: Quaternion) -> SimilarityKey:
    return SimilarityKey(q.re, norm_sq(q))


def is_similar(p: Quaternion, q: Quaternion, tol: Tolerance | None = None) -> bool:
    if p.mode is not q.mode:
        raise ModeError("float and exact quaternions mixed")
    return similarity_key(p).matches(similarity_key(q), tol)


def conjugate_by(p: Quaternion, s: Quaternion) -> Quaternion:
    """``s^-1 p s``."""
    return mul(inverse(s), mul(p, s))


def _orthogonal(u: Vector3) -> Vector3:
    # cross with the last axis along which u is smallest; rational whenever u is
    comps = [abs(c) for c in u]
    k = max(i for i in range(3) if comps[i] == min(comps))
    zero, one = u.x * 0, u.x * 0 + 1
    axis = [zero, zero, zero]
    axis[k] = one
    return Vector3(*axis).cross(u)


def similarity_witness(p: Quaternion, q: Quaternion, tol: Tolerance | None = None) -> Quaternion:
    """Return a nonzero ``s`` with ``s^-1 p s == q``.

    The vector part of ``p`` is carried onto that of ``q`` by the half-angle
    rotation ``r = |u|^2 + u.v + u x v`` (``u = im p``, ``v = im q``); since
    ``r u r^-1 = v`` we return ``s = conj(r)``. Everything stays rational
    because ``|u| = |v|``. Antipodal vectors use any axis orthogonal to ``u``.
    """
    if not is_similar(p, q, tol):
        raise PreconditionError("quaternions are not similar")
    u, v = p.im, q.im
    one = Quaternion.one(p.mode)
    if u == v:
        return one
    if p.mode is Mode.FLOAT:
        # the witness is scale-free; normalizing keeps tiny inputs out of underflow
        m = max(abs(c) for c in (*u, *v))
        u, v = Vector3(*(c / m for c in u)), Vector3(*(c / m for c in v))
    # |u|^2 + u.v == |u+v|^2 / 2 when |u| == |v|; this form avoids cancellation near -u
    r = Quaternion.from_parts((u + v).norm_sq() / 2, u.cross(v))
    if p.mode is Mode.EXACT:
        antipodal = u == -v
    else:
        antipodal = norm_sq(r) <= 1e-24 * u.norm_sq() ** 2
    if antipodal:
        return pure(_orthogonal(u))
    return r.conj()


def lemma1_witness(a: Quaternion, b: Quaternion) -> Quaternion:
    """Witness for ``ab ~ ba``: ``s = b^-1``, i.e. ``b (ab) b^-1 = ba``. Zero ``b`` gives 1."""
    if b.is_zero():
        return Quaternion.one(b.mode)
    return inverse(b)


def multiproduct(qs: Sequence[Quaternion], sigma: Permutation | None = None) -> Quaternion:
    if not qs:
        raise ArityError("multiproduct of an empty sequence")
    ordered = sigma.apply(qs) if sigma is not None else tuple(qs)
    acc = ordered[0]
    for q in ordered[1:]:
        acc = mul(acc, q)
    return acc


def _products_lex(qs: Sequence[Quaternion]):
    """Yield ``(mapping, product)`` for all of ``S_n`` in lexicographic order, sharing prefixes."""
    n = len(qs)

    def walk(prefix, acc, remaining):
        if not remaining:
            yield prefix, acc
            return
        for idx in remaining:
            rest = [r for r in remaining if r != idx]
            nxt = qs[idx - 1] if acc is None else mul(acc, qs[idx - 1])
            yield from walk(prefix + (idx,), nxt, rest)

    yield from walk((), None, list(range(1, n + 1)))


@dataclass
class SimilarityClass:
    key: SimilarityKey
    members: list = field(default_factory=list)  # (Permutation, Quaternion)

    @property
    def size(self) -> int:
        return len(self.members)

    def permutations(self) -> list:
        return [sigma for sigma, _ in self.members]


@dataclass
class ClassPartition:
    tuple_size: int
    classes: list
    # Exact mode only: for each class, its members grouped by exactly equal product
    equality_classes: list | None = None
    heuristic: bool = False

    @property
    def class_count(self) -> int:
        return len(self.classes)

    @property
    def sizes(self) -> list:
        return sorted((c.size for c in self.classes), reverse=True)

    def class_of(self, sigma: Permutation) -> int:
        for idx, c in enumerate(self.classes):
            if any(s == sigma for s, _ in c.members):
                return idx
        raise KeyError(sigma)


def enumerate_class_partition(
    qs: Sequence[Quaternion],
    max_n: int = MAX_PARTITION_N,
    tol: Tolerance | None = None,
) -> ClassPartition:
    """Group all ``n!`` multiproducts of ``qs`` into similarity classes.

    Classes appear in order of their first member (lexicographic in the
    permutation). Float-mode partitions bucket keys against each class's first
    member and are flagged ``heuristic``.
    """
    n = len(qs)
    if n < 1:
        raise ArityError("need at least one quaternion")
    if n > max_n:
        raise SizeLimitError(f"n={n} exceeds the enumeration cap of {max_n}")
    modes = {q.mode for q in qs}
    if len(modes) > 1:
        raise ModeError("float and exact quaternions mixed")
    mode = modes.pop()
    exact = mode is Mode.EXACT

    if any(q.is_zero() for q in qs):
        zero = Quaternion.zero(mode)
        cls = SimilarityClass(similarity_key(zero), [(s, zero) for s in all_permutations(n)])
        eq = [[cls.permutations()]] if exact else None
        return ClassPartition(n, [cls], eq, heuristic=not exact)

    classes: list = []
    index: dict = {}
    for mapping, prod in _products_lex(qs):
        key = similarity_key(prod)
        sigma = Permutation(mapping)
        if exact:
            slot = index.get(key)
            if slot is None:
                slot = index[key] = len(classes)
                classes.append(SimilarityClass(key))
            classes[slot].members.append((sigma, prod))
            continue
        for c in classes:
            if c.key.matches(key, tol or DEFAULT_TOLERANCE):
                c.members.append((sigma, prod))
                break
        else:
            classes.append(SimilarityClass(key, [(sigma, prod)]))

    equality = None
    if exact:
        equality = []
        for c in classes:
            groups: dict = {}
            for sigma, prod in c.members:
                groups.setdefault(prod, []).append(sigma)
            equality.append(list(groups.values()))
    return ClassPartition(n, classes, equality, heuristic=not exact)


def triple_det(a: Quaternion, b: Quaternion, c: Quaternion) -> Scalar:
    """``det[a, b, c]`` of the vector parts."""
    return det3(a.im, b.im, c.im)


def triple_re_difference(a: Quaternion, b: Quaternion, c: Quaternion) -> Scalar:
    """``re(abc) - re(acb)`` by direct multiplication."""
    return mul(mul(a, b), c).re - mul(mul(a, c), b).re


def triple_similar_criterion(a: Quaternion, b: Quaternion, c: Quaternion, tol: Tolerance | None = None) -> bool:
    """True iff the vector parts of ``a, b, c`` are linearly dependent."""
    d = triple_det(a, b, c)
    if isinstance(d, Fraction):
        return d == 0
    scale = math.sqrt(a.im.norm_sq() * b.im.norm_sq() * c.im.norm_sq())
    return scalar_is_zero(d, scale, tol)


def quad_re_difference(a: Quaternion, b: Quaternion, c: Quaternion, d: Quaternion) -> Scalar:
    """``re(abcd) - re(adcb)`` by direct multiplication."""
    return multiproduct((a, b, c, d)).re - multiproduct((a, d, c, b)).re


def quad_re_difference_acbd(a: Quaternion, b: Quaternion, c: Quaternion, d: Quaternion) -> Scalar:
    return multiproduct((a, b, c, d)).re - multiproduct((a, c, b, d)).re


def quad_re_difference_formula(a: Quaternion, b: Quaternion, c: Quaternion, d: Quaternion) -> Scalar:
    """Closed form ``-2[(a0 b + b0 a).(c x d) + (a x b).(c0 d + d0 c)]``."""
    va, vb, vc, vd = a.im, b.im, c.im, d.im
    first = (vb.scale(a.re) + va.scale(b.re)).dot(vc.cross(vd))
    second = va.cross(vb).dot(vd.scale(c.re) + vc.scale(d.re))
    return -2 * (first + second)


def rational_nullspace(rows: Sequence[Sequence[Fraction]]) -> list:
    """Basis of ``{x : rows @ x = 0}`` by Gauss-Jordan elimination over the rationals."""
    m = [[Fraction(v) for v in row] for row in rows]
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        lead = m[r][col]
        m[r] = [v / lead for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [vi - f * vr for vi, vr in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [Fraction(0)] * ncols
        vec[fcol] = Fraction(1)
        for row, pcol in enumerate(pivots):
            vec[pcol] = -m[row][fcol]
        basis.append(vec)
    return basis


@dataclass(frozen=True)
class DependenceCoefficients:
    """``alpha a + beta b + gamma c + delta d = 0``, first nonzero coefficient scaled to 1."""

    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    delta: Fraction
    null_dim: int = 1

    @property
    def spanning(self) -> bool:
        """True when the four vectors span 3-space (the relation is unique up to scale)."""
        return self.null_dim == 1

    def as_tuple(self) -> tuple:
        return (self.alpha, self.beta, self.gamma, self.delta)

    def residual(self, a, b, c, d) -> Vector3:
        return a.im.scale(self.alpha) + b.im.scale(self.beta) + c.im.scale(self.gamma) + d.im.scale(self.delta)


def dependence_coefficients(a: Quaternion, b: Quaternion, c: Quaternion, d: Quaternion) -> DependenceCoefficients:
    qs = (a, b, c, d)
    if any(q.mode is not Mode.EXACT for q in qs):
        raise ModeError("dependence_coefficients requires exact-mode quaternions")
    cols = [tuple(q.im) for q in qs]
    rows = [[col[r] for col in cols] for r in range(3)]
    basis = rational_nullspace(rows)
    vec = basis[0]
    lead = next(v for v in vec if v != 0)
    vec = [v / lead for v in vec]
    return DependenceCoefficients(*vec, null_dim=len(basis))


def quad_criterion(
    a: Quaternion, b: Quaternion, c: Quaternion, d: Quaternion, coeffs: DependenceCoefficients
) -> Scalar:
    """``a0 alpha - b0 beta + c0 gamma - d0 delta`` for a relation among the vector parts."""
    if not coeffs.residual(a, b, c, d).is_zero():
        raise PreconditionError("coefficients do not annihilate the vector parts")
    return a.re * coeffs.alpha - b.re * coeffs.beta + c.re * coeffs.gamma - d.re * coeffs.delta


def span_dimension(vectors: Sequence[Vector3]) -> int:
    if not vectors:
        return 0
    cols = [tuple(Fraction(x) for x in v) for v in vectors]
    rows = [[col[r] for col in cols] for r in range(3)]
    return len(vectors) - len(rational_nullspace(rows))
