"""
Randomized claim harness.

Each claim is a pair of functions: a sampler that draws one trial's inputs
from a private random stream, and a check that evaluates the identity on
those inputs. Keeping the check separate lets counterexamples be replayed
straight from their serialized literals. Every fifth trial is a constructed
special case (dependent triple, planar quadruple, ...) so the measure-zero
branches are always exercised.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .algebra import Mode, Quaternion, norm, norm_sq, pure
from .commutator import Permutation, Verdict, verify_sign_claim
from .errors import ModeError, QuaternionError
from .exponential import (
    JetPair,
    QuaternionPolynomial,
    anticommutator,
    axis_derivative,
    central_difference,
    naive_derivative,
    qexp_derivative,
    qexp_derivative_series,
    witness_path,
)
from .literals import format_quaternion, parse_quaternion
from .similarity import (
    conjugate_by,
    dependence_coefficients,
    enumerate_class_partition,
    is_similar,
    lemma1_witness,
    multiproduct,
    quad_criterion,
    quad_re_difference,
    quad_re_difference_formula,
    span_dimension,
    triple_det,
    triple_re_difference,
    triple_similar_criterion,
)

CONSTRUCTED_EVERY = 5
NORM_RTOL = 1e-12
SERIES_TOL = 1e-9
FD_RATIO_WINDOW = (50.0, 200.0)
ANTICOMMUTATION_TOL = 1e-10

PASS, FAIL, SKIP = "pass", "fail", "skip"


class UsageError(QuaternionError, ValueError):
    pass


@dataclass(frozen=True)
class HarnessConfig:
    claim: str
    trials: int = 100
    seed: int = 0
    mode: Mode | None = None  # None picks the claim's first supported mode
    n: int | None = None
    bound: int = 9

    def __post_init__(self):
        if self.claim not in CLAIMS:
            raise UsageError(f"unknown claim {self.claim!r}; choose from {', '.join(CLAIMS)}")
        entry = CLAIMS[self.claim]
        object.__setattr__(self, "mode", entry.modes[0] if self.mode is None else Mode(self.mode))
        if self.trials < 1:
            raise UsageError("trials must be >= 1")
        if self.bound < 1:
            raise UsageError("bound must be >= 1")
        if self.mode not in entry.modes:
            raise ModeError(f"claim {self.claim} does not support {self.mode.value} mode")
        n = entry.default_n if self.n is None else self.n
        lo, hi = entry.n_range
        if not lo <= n <= hi:
            raise UsageError(f"claim {self.claim} supports n in [{lo}, {hi}], got {n}")
        object.__setattr__(self, "n", n)


@dataclass
class TrialOutcome:
    status: str
    inputs: tuple = ()
    lhs: object = None
    rhs: object = None
    info: dict = field(default_factory=dict)


@dataclass
class HarnessReport:
    claim: str
    verdict: Verdict
    trials: int
    counterexamples: list
    histogram: dict
    seed: int
    observations: dict = field(default_factory=dict)
    rows: list = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "verdict": self.verdict.value,
            "trials": self.trials,
            "counterexamples": self.counterexamples,
            "histogram": self.histogram,
            "seed": self.seed,
            "observations": self.observations,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["trial", "kind", "status", "inputs", "lhs", "rhs"])
        for row in self.rows:
            writer.writerow(row)
        return buf.getvalue()


def _text(value) -> str:
    if isinstance(value, Quaternion):
        return format_quaternion(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_text(v) for v in value) + "]"
    return str(value)


# sampling ---------------------------------------------------------------


def trial_rng(seed: int, index: int) -> random.Random:
    # string seeds are hashed with sha512, so this is stable across processes
    return random.Random(f"{seed}/{index}")


def random_scalar(rng: random.Random, mode: Mode, bound: int = 9):
    if mode is Mode.EXACT:
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    return rng.gauss(0.0, 1.0)


def random_quaternion(rng: random.Random, mode: Mode, bound: int = 9) -> Quaternion:
    return Quaternion(*(random_scalar(rng, mode, bound) for _ in range(4)))


def random_tuple(rng, mode, n, bound=9) -> tuple:
    return tuple(random_quaternion(rng, mode, bound) for _ in range(n))


def dependent_triple(rng, mode, bound=9) -> tuple:
    """``(a, b, c)`` with ``im c = alpha im a + beta im b``."""
    a, b = random_tuple(rng, mode, 2, bound)
    alpha, beta, c0 = (random_scalar(rng, mode, bound) for _ in range(3))
    return a, b, Quaternion.from_parts(c0, a.im.scale(alpha) + b.im.scale(beta))


def planar_quadruple(rng, mode, bound=9) -> tuple:
    """Four quaternions whose vector parts lie in the plane of two random vectors."""
    u, v = (random_quaternion(rng, mode, bound).im for _ in range(2))
    out = []
    for _ in range(4):
        s, t, r = (random_scalar(rng, mode, bound) for _ in range(3))
        out.append(Quaternion.from_parts(r, u.scale(s) + v.scale(t)))
    return tuple(out)


def pure_tuple(rng, mode, n, bound=9) -> tuple:
    return tuple(pure(random_quaternion(rng, mode, bound).im) for _ in range(n))


def random_path(rng: random.Random, min_g: float = 0.1, max_norm: float = 2.0):
    """A degree-3 quaternion polynomial and a point where ``0.1 <= g`` and ``|psi| <= 2``."""
    while True:
        coeffs = [Quaternion(*(rng.gauss(0.0, 0.6) for _ in range(4))) for _ in range(4)]
        path = QuaternionPolynomial(tuple(coeffs))
        x = rng.uniform(-1.0, 1.0)
        psi = path.value(x)
        if math.sqrt(psi.im.norm_sq()) >= min_g and norm(psi) <= max_norm:
            return path, x


# checks -----------------------------------------------------------------


def _close(x, y, scale, rtol):
    if isinstance(x, Fraction):
        return x == y
    return abs(x - y) <= rtol * max(scale, abs(x), abs(y))


def check_norm_identities(qs, config) -> TrialOutcome:
    p, q = qs
    pq, qp = p * q, q * p
    if config.mode is Mode.EXACT:
        sides = [
            ("norm_sq(pq) = norm_sq(qp)", norm_sq(pq), norm_sq(qp), 0),
            ("norm_sq(pq) = norm_sq(p) norm_sq(q)", norm_sq(pq), norm_sq(p) * norm_sq(q), 0),
            ("norm_sq(1-pq) = norm_sq(1-qp)", norm_sq(1 - pq), norm_sq(1 - qp), 0),
        ]
    else:
        scale = norm(p) * norm(q)
        sides = [
            ("|pq| = |qp|", norm(pq), norm(qp), scale),
            ("|pq| = |p||q|", norm(pq), scale, scale),
            ("|1-pq| = |1-qp|", norm(1 - pq), norm(1 - qp), max(1.0, scale)),
        ]
    for name, lhs, rhs, scale in sides:
        if not _close(lhs, rhs, scale, NORM_RTOL):
            return TrialOutcome(FAIL, qs, lhs, rhs, {"identity": name})
    return TrialOutcome(PASS, qs)


def check_cyclic_similarity(qs, config) -> TrialOutcome:
    n = len(qs)
    base = multiproduct(qs)
    for k in range(1, n):
        rotated = multiproduct(qs, Permutation.rotation(n, k))
        if not is_similar(base, rotated):
            return TrialOutcome(FAIL, qs, base, rotated, {"rotation": k})
    if n == 2:
        a, b = qs
        s = lemma1_witness(a, b)
        if not conjugate_by(a * b, s).close(b * a):
            return TrialOutcome(FAIL, qs, conjugate_by(a * b, s), b * a, {"witness": _text(s)})
    return TrialOutcome(PASS, qs)


def check_class_count(qs, config) -> TrialOutcome:
    n = len(qs)
    part = enumerate_class_partition(qs)
    bound = math.factorial(n - 1)
    info = {"class_count": part.class_count, "sizes": part.sizes}
    if part.class_count > bound:
        return TrialOutcome(FAIL, qs, part.class_count, bound, info)
    if n == 3 and config.mode is Mode.EXACT and not any(q.is_zero() for q in qs):
        expected = [6] if triple_det(*qs) == 0 else [3, 3]
        info["generic"] = expected == [3, 3]
        if part.sizes != expected:
            return TrialOutcome(FAIL, qs, part.sizes, expected, info)
    return TrialOutcome(PASS, qs, info=info)


def check_lemma3(qs, config) -> TrialOutcome:
    a, b, c = qs
    det = triple_det(a, b, c)
    diff = triple_re_difference(a, b, c)
    criterion = triple_similar_criterion(a, b, c)
    similar = is_similar(a * b * c, a * c * b)
    if det == 0:
        sign = "zero"
    elif diff == -2 * det:
        sign = "-2det"
    elif diff == 2 * det:
        sign = "+2det"
    else:
        sign = "other"
    info = {"sign": sign, "dependent": criterion}
    if criterion != similar:
        return TrialOutcome(FAIL, qs, criterion, similar, {**info, "identity": "det=0 <=> abc~acb"})
    if diff * diff != 4 * det * det:
        return TrialOutcome(FAIL, qs, diff * diff, 4 * det * det, {**info, "identity": "diff^2 = 4 det^2"})
    return TrialOutcome(PASS, qs, info=info)


def check_lemma4(qs, config) -> TrialOutcome:
    a, b, c, d = qs
    coeffs = dependence_coefficients(a, b, c, d)
    if not coeffs.spanning:
        return TrialOutcome(SKIP, qs, info={"span": span_dimension([q.im for q in qs])})
    crit = quad_criterion(a, b, c, d, coeffs)
    similar = is_similar(multiproduct(qs), multiproduct((a, d, c, b)))
    info = {"criterion_zero": crit == 0, "similar": similar}
    if (crit == 0) != similar:
        return TrialOutcome(FAIL, qs, crit, quad_re_difference(a, b, c, d), info)
    return TrialOutcome(PASS, qs, info=info)


def check_case4(qs, config) -> TrialOutcome:
    direct = quad_re_difference(*qs)
    formula = quad_re_difference_formula(*qs)
    scale = math.prod(float(norm_sq(q)) for q in qs) ** 0.5
    info = {}
    if config.mode is Mode.EXACT:
        info["planar"] = span_dimension([q.im for q in qs]) <= 2
        info["direct_zero"] = direct == 0
    if not _close(direct, formula, scale, 1e-9):
        return TrialOutcome(FAIL, qs, direct, formula, info)
    return TrialOutcome(PASS, qs, info=info)


def check_multicom_sign(qs, config) -> TrialOutcome:
    report = verify_sign_claim(qs)
    if report.verdict is Verdict.DEGENERATE:
        return TrialOutcome(SKIP, qs)
    if report.verdict is Verdict.REFUTED:
        sigma, value = report.witnesses[0]
        return TrialOutcome(
            FAIL, qs, value, report.reference, {"permutation": str(sigma), "witness_count": len(report.witnesses)}
        )
    return TrialOutcome(PASS, qs)


def _path_inputs(path: QuaternionPolynomial, x: float) -> tuple:
    return tuple(path.coeffs) + (Quaternion(float(x), 0.0, 0.0, 0.0),)


def _path_from_inputs(qs):
    return QuaternionPolynomial(tuple(qs[:-1])), qs[-1].re


def check_exp_derivative(qs, config) -> TrialOutcome:
    path, x = _path_from_inputs(qs)
    jet = path.jet(x)
    closed = qexp_derivative(jet)
    series = qexp_derivative_series(jet)
    gap = float(norm(closed - series))
    if norm(jet.value) <= 2.0 and gap > SERIES_TOL:
        return TrialOutcome(FAIL, qs, closed, series, {"identity": "closed = series", "gap": gap})
    err = [float(norm(central_difference(path.value, x, h) - closed)) for h in (1e-3, 1e-4)]
    ratio = err[0] / err[1] if err[1] > 0 else math.inf
    info = {"fd_ratio": ratio}
    lo, hi = FD_RATIO_WINDOW
    if not lo <= ratio <= hi:
        return TrialOutcome(FAIL, qs, err[0], err[1], {**info, "identity": "second-order FD convergence"})
    return TrialOutcome(PASS, qs, info=info)


def check_anticommutation(qs, config) -> TrialOutcome:
    jet = JetPair(*qs)
    axis = pure(jet.value.im) / math.sqrt(jet.value.im.norm_sq())
    value = anticommutator(axis, axis_derivative(jet))
    size = float(norm(value))
    if size > ANTICOMMUTATION_TOL:
        return TrialOutcome(FAIL, qs, value, Quaternion.zero(Mode.FLOAT), {"norm": size})
    return TrialOutcome(PASS, qs)


# samplers ---------------------------------------------------------------


def _sample_pairs(rng, config, constructed):
    p = random_quaternion(rng, config.mode, config.bound)
    return (p, p.conj()) if constructed else (p, random_quaternion(rng, config.mode, config.bound))


def _sample_tuple(rng, config, constructed):
    qs = random_tuple(rng, config.mode, config.n, config.bound)
    if constructed and config.n >= 2:
        # repeated operand
        qs = qs[:-1] + (qs[0],)
    return qs


def _sample_class_tuple(rng, config, constructed):
    if constructed and config.n == 3:
        return dependent_triple(rng, config.mode, config.bound)
    return _sample_tuple(rng, config, constructed)


def _sample_triple(rng, config, constructed):
    if constructed:
        return dependent_triple(rng, config.mode, config.bound)
    return random_tuple(rng, config.mode, 3, config.bound)


def _sample_lemma4(rng, config, constructed):
    if constructed:
        return pure_tuple(rng, config.mode, 4, config.bound)
    return random_tuple(rng, config.mode, 4, config.bound)


def _sample_case4(rng, config, constructed):
    if constructed:
        return planar_quadruple(rng, config.mode, config.bound)
    return random_tuple(rng, config.mode, 4, config.bound)


def _sample_multicom(rng, config, constructed):
    if constructed:
        return pure_tuple(rng, config.mode, config.n, config.bound)
    return random_tuple(rng, config.mode, config.n, config.bound)


def _sample_path(rng, config, constructed):
    path, x = random_path(rng)
    return _path_inputs(path, x)


def _sample_jet(rng, config, constructed):
    while True:
        jet = JetPair(random_quaternion(rng, Mode.FLOAT), random_quaternion(rng, Mode.FLOAT))
        if jet.value.im.norm_sq() >= 1e-2:
            return jet.value, jet.derivative


@dataclass(frozen=True)
class Claim:
    sample: Callable
    check: Callable
    modes: tuple
    default_n: int
    n_range: tuple


BOTH = (Mode.EXACT, Mode.FLOAT)
CLAIMS = {
    "norm-identities": Claim(_sample_pairs, check_norm_identities, BOTH, 2, (2, 2)),
    "cyclic-similarity": Claim(_sample_tuple, check_cyclic_similarity, BOTH, 3, (2, 8)),
    "class-count": Claim(_sample_class_tuple, check_class_count, BOTH, 3, (1, 8)),
    "lemma3": Claim(_sample_triple, check_lemma3, (Mode.EXACT,), 3, (3, 3)),
    "lemma4": Claim(_sample_lemma4, check_lemma4, (Mode.EXACT,), 4, (4, 4)),
    "case4-formula": Claim(_sample_case4, check_case4, BOTH, 4, (4, 4)),
    "multicom-sign": Claim(_sample_multicom, check_multicom_sign, (Mode.EXACT,), 3, (2, 6)),
    "exp-derivative": Claim(_sample_path, check_exp_derivative, (Mode.FLOAT,), 4, (4, 4)),
    "anticommutation": Claim(_sample_jet, check_anticommutation, (Mode.FLOAT,), 2, (2, 2)),
}


def _observations(config, outcomes) -> dict:
    obs: dict = {}
    statuses = Counter(o.status for o in outcomes)
    obs["passed"] = statuses[PASS]
    obs["failed"] = statuses[FAIL]
    obs["skipped"] = statuses[SKIP]
    infos = [o.info for o in outcomes]
    if config.claim == "lemma3":
        obs["sign_relation"] = dict(sorted(Counter(i["sign"] for i in infos if "sign" in i).items()))
        obs["dependent_triples"] = sum(1 for i in infos if i.get("dependent"))
    elif config.claim == "lemma4":
        evaluated = [i for i in infos if "similar" in i]
        obs["spanning_quadruples"] = len(evaluated)
        obs["criterion_zero"] = sum(1 for i in evaluated if i["criterion_zero"])
        obs["agreement_rate"] = statuses[PASS] / len(evaluated) if evaluated else None
    elif config.claim == "case4-formula" and config.mode is Mode.EXACT:
        planar = [i for i in infos if i.get("planar")]
        obs["planar_quadruples"] = len(planar)
        obs["planar_direct_zero"] = sum(1 for i in planar if i["direct_zero"])
    elif config.claim == "class-count" and config.n == 3 and config.mode is Mode.EXACT:
        obs["generic_triples"] = sum(1 for i in infos if i.get("generic"))
    elif config.claim == "exp-derivative":
        ratios = [i["fd_ratio"] for i in infos if "fd_ratio" in i]
        if ratios:
            obs["fd_ratio_min"] = min(ratios)
            obs["fd_ratio_max"] = max(ratios)
        wp = witness_path()
        jet = wp.jet(1.0)
        obs["naive_formula_gap"] = float(norm(naive_derivative(jet) - qexp_derivative(jet)))
    if config.mode is Mode.FLOAT and config.claim == "class-count":
        obs["heuristic"] = True
    return obs


def run_harness(config: HarnessConfig) -> HarnessReport:
    claim = CLAIMS[config.claim]
    outcomes = []
    rows = []
    counterexamples = []
    histogram: Counter = Counter()
    for index in range(config.trials):
        rng = trial_rng(config.seed, index)
        constructed = index % CONSTRUCTED_EVERY == CONSTRUCTED_EVERY - 1
        kind = "constructed" if constructed else "random"
        qs = claim.sample(rng, config, constructed)
        outcome = claim.check(qs, config)
        outcomes.append(outcome)
        if "class_count" in outcome.info:
            histogram[outcome.info["class_count"]] += 1
        inputs = [format_quaternion(q) for q in outcome.inputs]
        rows.append([index, kind, outcome.status, ";".join(inputs), _text(outcome.lhs), _text(outcome.rhs)])
        if outcome.status == FAIL:
            counterexamples.append(
                {
                    "trial": index,
                    "kind": kind,
                    "inputs": inputs,
                    "lhs": _text(outcome.lhs),
                    "rhs": _text(outcome.rhs),
                    "detail": {k: _jsonable(v) for k, v in sorted(outcome.info.items())},
                }
            )
    passed = sum(o.status == PASS for o in outcomes)
    failed = len(counterexamples)
    if failed == 0:
        verdict = Verdict.CONFIRMED if passed else Verdict.DEGENERATE
    else:
        verdict = Verdict.MIXED if passed else Verdict.REFUTED
    return HarnessReport(
        claim=config.claim,
        verdict=verdict,
        trials=config.trials,
        counterexamples=counterexamples,
        histogram={str(k): histogram[k] for k in sorted(histogram)},
        seed=config.seed,
        observations=_observations(config, outcomes),
        rows=rows,
    )


def _jsonable(v):
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, float):
        return v if math.isfinite(v) else repr(v)
    if isinstance(v, list):
        return [_jsonable(x) for x in v]
    return _text(v)


def replay(config: HarnessConfig, counterexample: dict) -> bool:
    """Re-run a serialized counterexample; True when the violation reproduces."""
    qs = tuple(parse_quaternion(text, config.mode) for text in counterexample["inputs"])
    return CLAIMS[config.claim].check(qs, config).status == FAIL
