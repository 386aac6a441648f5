import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import exact_quaternions, float_quaternions, rationals
from qcommute.algebra import I, J, K, ONE, Mode, Quaternion, mul, norm_sq
from qcommute.commutator import Permutation, all_permutations
from qcommute.errors import ArityError, ModeError, PreconditionError, SizeLimitError
from qcommute.harness import dependent_triple, planar_quadruple, pure_tuple, random_tuple
from qcommute.similarity import (
    DependenceCoefficients,
    conjugate_by,
    dependence_coefficients,
    enumerate_class_partition,
    is_similar,
    lemma1_witness,
    multiproduct,
    quad_criterion,
    quad_re_difference,
    quad_re_difference_acbd,
    quad_re_difference_formula,
    rational_nullspace,
    similarity_witness,
    span_dimension,
    triple_det,
    triple_re_difference,
    triple_similar_criterion,
)


def test_multiproduct_examples():
    a, b = Quaternion(1, 2, 0, -1), Quaternion(0, 3, 1, 1)
    assert multiproduct((a, b), Permutation.identity(2)) == mul(a, b)
    assert multiproduct((I, J, K)) == -ONE
    assert multiproduct((I, J, K), Permutation((1, 3, 2))) == ONE
    with pytest.raises(ArityError):
        multiproduct(())


def test_is_similar_examples():
    q = Quaternion(1, 2, 3, 4)
    assert is_similar(q, q)
    assert is_similar(I, J)
    assert not is_similar(I, 1 + I)
    with pytest.raises(ModeError):
        is_similar(I, J.to_mode(Mode.FLOAT))


@given(exact_quaternions(nonzero=True), exact_quaternions(nonzero=True))
def test_similarity_definition_roundtrip(p, s):
    """s^-1 p s is always similar to p, and the key test sees it."""
    assert is_similar(p, conjugate_by(p, s))


class TestWitness:
    def test_examples(self):
        q = Quaternion(1, 2, 3, 4)
        assert similarity_witness(q, q) == ONE
        s = similarity_witness(I, -I)
        assert s == J
        assert conjugate_by(I, s) == -I
        s = similarity_witness(I, J)
        assert conjugate_by(I, s) == J

    def test_not_similar_raises(self):
        with pytest.raises(PreconditionError):
            similarity_witness(I, 1 + I)

    @given(exact_quaternions(), exact_quaternions(nonzero=True))
    def test_substitution_exact(self, p, s):
        q = conjugate_by(p, s)
        w = similarity_witness(p, q)
        assert not w.is_zero()
        assert conjugate_by(p, w) == q

    @given(exact_quaternions())
    def test_antipodal(self, p):
        q = Quaternion.from_parts(p.re, -p.im)
        w = similarity_witness(p, q)
        assert conjugate_by(p, w) == q

    @given(float_quaternions(), float_quaternions())
    def test_substitution_float(self, p, s):
        if norm_sq(s) < 1e-6:
            return
        q = conjugate_by(p, s)
        w = similarity_witness(p, q)
        assert conjugate_by(p, w).close(q, scale=math.sqrt(norm_sq(p)))

    @pytest.mark.parametrize(
        "p, s",
        [
            (Quaternion(0.0, 0.0, 0.0, 1.0), Quaternion(0.0, 0.0, 0.125, 1e-10)),
            (Quaternion(0.0, 0.5, 0.0, 0.0), Quaternion(0.0, 0.125, 0.0, 1e-10)),
            (Quaternion(0.0, 0.0, 1.1125369292536007e-308, 0.0), Quaternion(0.0, 0.0, 0.0, 1.0)),
        ],
    )
    def test_float_ill_conditioned(self, p, s):
        # nearly antipodal, nearly equal, and subnormal vector parts
        q = conjugate_by(p, s)
        w = similarity_witness(p, q)
        assert conjugate_by(p, w).close(q, scale=math.sqrt(norm_sq(p)))

    @given(exact_quaternions(), exact_quaternions())
    def test_lemma1_witness(self, a, b):
        s = lemma1_witness(a, b)
        assert conjugate_by(mul(a, b), s) == mul(b, a)


class TestLemmas:
    @given(exact_quaternions(), exact_quaternions())
    def test_pair_products_similar(self, a, b):
        assert is_similar(mul(a, b), mul(b, a))

    @given(st.lists(exact_quaternions(), min_size=2, max_size=6), st.integers(0, 5))
    def test_rotations_similar(self, qs, k):
        n = len(qs)
        sigma = Permutation.rotation(n, k % n)
        assert is_similar(multiproduct(qs), multiproduct(qs, sigma))

    @given(st.lists(exact_quaternions(), min_size=2, max_size=5), st.integers(0, 4), rationals)
    def test_rotation_preserves_shifted_norm(self, qs, k, t):
        n = len(qs)
        p = multiproduct(qs)
        q = multiproduct(qs, Permutation.rotation(n, k % n))
        assert norm_sq(q - t) == norm_sq(p - t)

    @given(st.lists(exact_quaternions(), min_size=2, max_size=4))
    def test_all_products_same_norm(self, qs):
        norms = {norm_sq(multiproduct(qs, s)) for s in all_permutations(len(qs))}
        assert len(norms) == 1


class TestTriple:
    def test_re_difference_examples(self):
        assert triple_re_difference(I, J, K) == -2
        assert triple_det(I, J, K) == 1
        assert triple_re_difference(I, I, J) == 0

    @given(exact_quaternions(), exact_quaternions(), exact_quaternions())
    def test_squared_relation(self, a, b, c):
        d = triple_det(a, b, c)
        assert triple_re_difference(a, b, c) ** 2 == 4 * d * d

    @given(exact_quaternions(), exact_quaternions(), exact_quaternions())
    def test_signed_relation_is_minus_two(self, a, b, c):
        # empirical sign: the difference is -2 det, not +2 det
        assert triple_re_difference(a, b, c) == -2 * triple_det(a, b, c)

    def test_criterion_examples(self):
        assert not triple_similar_criterion(I, J, K)
        assert triple_similar_criterion(I, I, J)

    @given(exact_quaternions(), exact_quaternions(), rationals, rationals, rationals)
    def test_constructed_dependent(self, a, b, alpha, beta, c0):
        c = Quaternion.from_parts(c0, a.im.scale(alpha) + b.im.scale(beta))
        assert triple_similar_criterion(a, b, c)
        assert is_similar(mul(mul(a, b), c), mul(mul(a, c), b))

    @given(exact_quaternions(), exact_quaternions(), exact_quaternions())
    def test_criterion_matches_similarity(self, a, b, c):
        assert triple_similar_criterion(a, b, c) == is_similar(mul(mul(a, b), c), mul(mul(a, c), b))


class TestQuadruple:
    def test_symbolic_identity(self):
        """The closed form equals re(abcd) - re(adcb) as a polynomial identity."""
        syms = [sympy.symbols(f"{n}0:4") for n in "abcd"]
        qs = [sympy.algebras.Quaternion(*s) for s in syms]
        a, b, c, d = qs
        direct = sympy.expand((a * b * c * d).a - (a * d * c * b).a)
        A, B, C, D = (sympy.Matrix(s[1:]) for s in syms)
        a0, b0, c0, d0 = (s[0] for s in syms)
        formula = -2 * ((a0 * B + b0 * A).dot(C.cross(D)) + A.cross(B).dot(c0 * D + d0 * C))
        assert sympy.expand(direct - formula) == 0

    def test_equal_operands(self):
        q = Quaternion(1, 2, -3, 4)
        assert quad_re_difference_formula(q, q, q, q) == 0
        assert quad_re_difference(q, q, q, q) == 0

    def test_formula_matches_direct_random(self):
        rng = random.Random(11)
        for _ in range(50):
            qs = random_tuple(rng, Mode.EXACT, 4)
            assert quad_re_difference_formula(*qs) == quad_re_difference(*qs)

    def test_planar_direct_difference_vanishes(self):
        rng = random.Random(12)
        for _ in range(30):
            qs = planar_quadruple(rng, Mode.EXACT)
            assert span_dimension([q.im for q in qs]) <= 2
            assert quad_re_difference(*qs) == 0

    def test_acbd_pair_is_a_different_quantity(self):
        rng = random.Random(13)
        qs = random_tuple(rng, Mode.EXACT, 4)
        assert quad_re_difference_acbd(*qs) != quad_re_difference_formula(*qs)

    def test_dependence_examples(self):
        coeffs = dependence_coefficients(I, J, K, I + J + K)
        assert coeffs.as_tuple() == (1, 1, 1, -1)
        assert coeffs.spanning
        coeffs = dependence_coefficients(I, I, J, K)
        assert coeffs.as_tuple() == (1, -1, 0, 0)

    def test_dependence_flags_low_span(self):
        coeffs = dependence_coefficients(I, 2 * I, J, I + J)
        assert coeffs.null_dim == 2
        assert not coeffs.spanning
        assert coeffs.residual(I, 2 * I, J, I + J).is_zero()

    @given(exact_quaternions(), exact_quaternions(), exact_quaternions(), exact_quaternions())
    def test_dependence_substitution_and_sympy(self, a, b, c, d):
        coeffs = dependence_coefficients(a, b, c, d)
        assert coeffs.residual(a, b, c, d).is_zero()
        assert any(x != 0 for x in coeffs.as_tuple())
        assert next(x for x in coeffs.as_tuple() if x != 0) == 1
        m = sympy.Matrix([[sympy.Rational(q.im.x), sympy.Rational(q.im.y), sympy.Rational(q.im.z)] for q in (a, b, c, d)]).T
        assert coeffs.null_dim == len(m.nullspace())

    def test_nullspace_against_sympy(self):
        rng = random.Random(5)
        for _ in range(20):
            rows = [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(5)] for _ in range(3)]
            basis = rational_nullspace(rows)
            ref = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows]).nullspace()
            assert len(basis) == len(ref)
            for vec in basis:
                assert all(sum(r[i] * vec[i] for i in range(5)) == 0 for r in rows)

    def test_criterion_precondition(self):
        bad = DependenceCoefficients(Fraction(1), Fraction(0), Fraction(0), Fraction(0))
        with pytest.raises(PreconditionError):
            quad_criterion(I, J, K, I + J, bad)

    def test_criterion_identical_operands(self):
        q = Quaternion(2, 1, 1, 0)
        coeffs = dependence_coefficients(q, q, q, q)
        crit = quad_criterion(q, q, q, q, coeffs)
        assert is_similar(multiproduct((q, q, q, q)), multiproduct((q, q, q, q), Permutation((1, 4, 3, 2))))
        assert crit == q.re * coeffs.alpha - q.re * coeffs.beta

    def test_pure_quadruples(self):
        rng = random.Random(14)
        for _ in range(30):
            qs = pure_tuple(rng, Mode.EXACT, 4)
            a, b, c, d = qs
            coeffs = dependence_coefficients(*qs)
            assert quad_criterion(a, b, c, d, coeffs) == 0
            assert is_similar(multiproduct(qs), multiproduct((a, d, c, b)))

    def test_criterion_equivalent_on_spanning(self):
        rng = random.Random(15)
        seen_zero = 0
        for trial in range(60):
            qs = pure_tuple(rng, Mode.EXACT, 4) if trial % 4 == 0 else random_tuple(rng, Mode.EXACT, 4)
            coeffs = dependence_coefficients(*qs)
            if not coeffs.spanning:
                continue
            crit = quad_criterion(*qs, coeffs)
            a, b, c, d = qs
            seen_zero += crit == 0
            assert (crit == 0) == is_similar(multiproduct(qs), multiproduct((a, d, c, b)))
        assert seen_zero > 0


class TestPartition:
    def test_pair_one_class(self):
        a, b = Quaternion(1, 2, 0, 1), Quaternion(0, 1, 3, -1)
        part = enumerate_class_partition((a, b))
        assert part.class_count == 1 and part.sizes == [2]

    def test_generic_triple_two_classes(self):
        a, b, c = Quaternion(1, 2, 0, 1), Quaternion(0, 1, 3, -1), Quaternion(2, -1, 1, 1)
        assert triple_det(a, b, c) != 0
        part = enumerate_class_partition((a, b, c))
        assert part.sizes == [3, 3]
        for cls in part.classes:
            perms = cls.permutations()
            # each class is closed under rotation
            for sigma in perms:
                assert all(sigma.compose(Permutation.rotation(3, k)) in perms for k in range(3))

    def test_dependent_triple_one_class(self):
        a, b = Quaternion(1, 2, 0, 1), Quaternion(0, 1, 3, -1)
        c = Quaternion.from_parts(Fraction(5), a.im + b.im)
        part = enumerate_class_partition((a, b, c))
        assert triple_det(a, b, c) == 0
        assert part.sizes == [6]

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_invariants(self, n):
        rng = random.Random(100 + n)
        for _ in range(5):
            qs = random_tuple(rng, Mode.EXACT, n)
            part = enumerate_class_partition(qs)
            members = [s for c in part.classes for s in c.permutations()]
            assert len(members) == math.factorial(n) == len(set(members))
            keys = [c.key for c in part.classes]
            assert len(set(keys)) == len(keys)
            assert part.class_count <= math.factorial(n - 1)
            for c in part.classes:
                for sigma, prod in c.members:
                    assert prod == multiproduct(qs, sigma)
            assert sum(len(g) for eq in part.equality_classes for g in eq) == math.factorial(n)

    def test_zero_operand(self):
        part = enumerate_class_partition((I, Quaternion.zero(), J))
        assert part.class_count == 1 and part.sizes == [6]

    def test_equality_classes_detect_true_equality(self):
        # commuting operands: every product is literally equal
        part = enumerate_class_partition((1 + I, 2 - I, Quaternion(3, 0, 0, 0)))
        assert part.class_count == 1
        assert len(part.equality_classes[0]) == 1

    def test_size_limit(self):
        with pytest.raises(SizeLimitError):
            enumerate_class_partition([I] * 9)
        with pytest.raises(SizeLimitError):
            enumerate_class_partition([I] * 4, max_n=3)

    def test_float_partition_heuristic(self):
        rng = random.Random(1)
        qs = random_tuple(rng, Mode.FLOAT, 3)
        part = enumerate_class_partition(qs)
        assert part.heuristic
        assert part.equality_classes is None
        assert part.sizes == [3, 3]

    def test_mixed_modes(self):
        with pytest.raises(ModeError):
            enumerate_class_partition((I, J.to_mode(Mode.FLOAT)))

    def test_dependent_triples_from_sampler(self):
        rng = random.Random(2)
        for _ in range(10):
            a, b, c = dependent_triple(rng, Mode.EXACT)
            assert enumerate_class_partition((a, b, c)).class_count == 1
