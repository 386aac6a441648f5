"""Permutations, pairwise and right-nested commutators, and the multicommutator sign check."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterator, Sequence

from .algebra import Mode, Quaternion, Vector3, mul, pure
from .errors import ArityError, ModeError


class Verdict(str, enum.Enum):
    CONFIRMED = "CONFIRMED"
    REFUTED = "REFUTED"
    DEGENERATE = "DEGENERATE"
    MIXED = "MIXED"


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{1..n}`` in one-line notation; ``mapping[i-1] == sigma(i)``."""

    mapping: tuple
    parity: int = field(init=False, compare=False)

    def __post_init__(self):
        mapping = tuple(int(m) for m in self.mapping)
        if sorted(mapping) != list(range(1, len(mapping) + 1)):
            raise ValueError(f"{self.mapping!r} is not a permutation of 1..{len(mapping)}")
        object.__setattr__(self, "mapping", mapping)
        inversions = sum(
            1
            for i in range(len(mapping))
            for j in range(i + 1, len(mapping))
            if mapping[i] > mapping[j]
        )
        object.__setattr__(self, "parity", -1 if inversions % 2 else 1)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def rotation(cls, n: int, k: int) -> Permutation:
        """``sigma(i) = i + k mod n``."""
        return cls(tuple((i + k) % n + 1 for i in range(n)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> Permutation:
        m = list(range(1, n + 1))
        m[i - 1], m[j - 1] = m[j - 1], m[i - 1]
        return cls(tuple(m))

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __call__(self, i: int) -> int:
        return self.mapping[i - 1]

    def __len__(self):
        return len(self.mapping)

    def compose(self, other: Permutation) -> Permutation:
        """``(self o other)(i) = self(other(i))``."""
        if other.n != self.n:
            raise ValueError("permutations act on different sets")
        return Permutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, m in enumerate(self.mapping, start=1):
            inv[m - 1] = i
        return Permutation(tuple(inv))

    def apply(self, seq: Sequence) -> tuple:
        """Reorder ``seq`` so position ``i`` holds ``seq[sigma(i)]``."""
        if len(seq) != self.n:
            raise ArityError(f"permutation of {self.n} applied to {len(seq)} operands")
        return tuple(seq[m - 1] for m in self.mapping)

    def is_rotation(self) -> bool:
        k = self.mapping[0] - 1
        return self == Permutation.rotation(self.n, k)

    def __str__(self):
        return "[" + ",".join(map(str, self.mapping)) + "]"


def all_permutations(n: int) -> Iterator[Permutation]:
    """All of ``S_n`` in lexicographic order of the one-line mapping."""
    for m in itertools.permutations(range(1, n + 1)):
        yield Permutation(m)


def commutator(a: Quaternion, b: Quaternion) -> Quaternion:
    return mul(a, b) - mul(b, a)


def commutator_cross(a: Quaternion, b: Quaternion) -> Quaternion:
    """``2 h.(a x b)``: the commutator read off the cross product of the vector parts."""
    if a.mode is not b.mode:
        raise ModeError("float and exact quaternions mixed")
    return pure(a.im.cross(b.im)) * 2


def nested_commutator(qs: Sequence[Quaternion], sigma: Permutation | None = None) -> Quaternion:
    """``[q_s(1), [q_s(2), ..., [q_s(n-1), q_s(n)]...]]``, bracketed from the right."""
    if len(qs) < 2:
        raise ArityError("a commutator needs at least two operands")
    ordered = sigma.apply(qs) if sigma is not None else tuple(qs)
    return reduce(lambda acc, q: commutator(q, acc), reversed(ordered[:-1]), ordered[-1])


def flat_formula(qs: Sequence[Quaternion], sigma: Permutation | None = None) -> Quaternion:
    """Closed form ``2^(n-1) h.(v_s(1) x (v_s(2) x (... x v_s(n))))`` of the nested commutator.

    Real parts never enter, and the permutation is applied to the operand
    order rather than pulled out as a sign.
    """
    if len(qs) < 2:
        raise ArityError("a commutator needs at least two operands")
    ordered = sigma.apply(qs) if sigma is not None else tuple(qs)
    vectors = [q.im for q in ordered]
    acc: Vector3 = reduce(lambda acc, v: v.cross(acc), reversed(vectors[:-1]), vectors[-1])
    return pure(acc) * (2 ** (len(qs) - 1))


@dataclass(frozen=True)
class SignClaimReport:
    verdict: Verdict
    reference: Quaternion
    witnesses: tuple  # (Permutation, Quaternion) pairs that are not +-reference

    @property
    def confirmed(self) -> bool:
        return self.verdict is Verdict.CONFIRMED


def verify_sign_claim(qs: Sequence[Quaternion]) -> SignClaimReport:
    """Check whether every multicommutator of ``qs`` equals +-the identity-order one.

    Exact mode only, so that the verdict never hinges on a tolerance.
    """
    if len(qs) < 2:
        raise ArityError("a commutator needs at least two operands")
    if any(q.mode is not Mode.EXACT for q in qs):
        raise ModeError("verify_sign_claim requires exact-mode quaternions")
    n = len(qs)
    values = [(sigma, nested_commutator(qs, sigma)) for sigma in all_permutations(n)]
    reference = values[0][1]
    if all(v.is_zero() for _, v in values):
        return SignClaimReport(Verdict.DEGENERATE, reference, ())
    neg = -reference
    witnesses = tuple(
        (sigma, v) for sigma, v in values if v != reference and v != neg
    )
    verdict = Verdict.REFUTED if witnesses else Verdict.CONFIRMED
    return SignClaimReport(verdict, reference, witnesses)
