"""Tests for the oscillator action, pairings, and derived operators."""

import random
from fractions import Fraction

import pytest

from dzeta.constructions import (WeightData, build_Q, build_Qtilde, frak_Q,
                                 random_invertible, random_orthogonal,
                                 random_symmetric)
from dzeta.gaussian import SchwartzPolyGaussian
from dzeta.polyalg import MatrixPolynomial, RationalMatrix
from dzeta.scalar import ExactScalar, QI
from dzeta.weil import (Embedded, Fourier, GaussianFunction, MVWTwist,
                        Parabolic, SiegelInverse, SymplecticWord,
                        act_lie_raising, act_word, apply_orthogonal,
                        build_P0, epsilon_sign, jinv_word, pairing,
                        section_value, word_from_matrix)


def _rand_word(rng, m, depth=3):
    gens = []
    for _ in range(depth):
        c = rng.randrange(3)
        if c == 0:
            gens.append(Parabolic(random_invertible(rng, m, bound=3)))
        elif c == 1:
            gens.append(Parabolic(RationalMatrix.identity(m),
                                  random_symmetric(rng, m, bound=3)))
        else:
            gens.append(Fourier())
    return SymplecticWord(m, gens)


def _rand_fn(rng, m, k):
    P = MatrixPolynomial.one()
    for _ in range(2):
        v = MatrixPolynomial.variable("X", rng.randint(1, m),
                                      rng.randint(1, 2 * k))
        P = P + v * QI(rng.randint(-3, 3))
    return GaussianFunction(P, RationalMatrix.identity(m), m, k)


def _same(f, g):
    return (f.P - g.P).is_zero() and f.A.data == g.A.data


# ---------------------------------------------------------------------------
# words and matrices
# ---------------------------------------------------------------------------

def test_words_are_symplectic():
    rng = random.Random(1)
    for m in (1, 2):
        eye = RationalMatrix.identity(m)
        z = RationalMatrix.zeros(m, m)
        J = RationalMatrix.from_blocks([[z, eye], [-eye, z]])
        for _ in range(5):
            g = _rand_word(rng, m).matrix()
            assert (g.transpose() * J * g).data == J.data


def test_word_inverse():
    rng = random.Random(2)
    for _ in range(5):
        m = rng.choice([1, 2])
        w = _rand_word(rng, m)
        assert (w.inverse().matrix() * w.matrix()).data == \
            RationalMatrix.identity(2 * m).data


def test_jinv_word_matrix():
    g = jinv_word(1).matrix()
    assert g.data == [[QI(0), QI(-1)], [QI(1), QI(0)]]


# ---------------------------------------------------------------------------
# the action
# ---------------------------------------------------------------------------

def test_identity_word_fixes_everything():
    rng = random.Random(3)
    fn = _rand_fn(rng, 2, 2)
    assert _same(act_word(SymplecticWord.identity(2), fn), fn)


def test_action_group_law():
    rng = random.Random(4)
    checked = 0
    while checked < 10:
        m = rng.choice([1, 2])
        k = rng.choice([1, 2, 3])
        w1, w2 = _rand_word(rng, m), _rand_word(rng, m)
        fn = _rand_fn(rng, m, k)
        assert _same(act_word(w1 * w2, fn), act_word(w1, act_word(w2, fn)))
        checked += 1


def test_word_from_matrix_action():
    # the canonical word of a matrix acts like any word with that matrix
    rng = random.Random(5)
    checked = 0
    while checked < 8:
        m = rng.choice([1, 2])
        w = _rand_word(rng, m)
        g = w.matrix()
        d = g.submatrix(list(range(m, 2 * m)), list(range(m, 2 * m)))
        if not d.det():
            continue
        fn = _rand_fn(rng, m, rng.choice([1, 2]))
        assert _same(act_word(word_from_matrix(g, m), fn), act_word(w, fn))
        checked += 1


def test_fourier_on_plain_gaussian():
    # the transform multiplies the self-dual Gaussian by i^(mk)
    for m in (1, 2):
        for k in (1, 2, 3):
            fn = GaussianFunction(MatrixPolynomial.one(),
                                  RationalMatrix.identity(m), m, k)
            out = act_word(SymplecticWord(m, [Fourier()]), fn)
            want = MatrixPolynomial.one() * ExactScalar.i_power(m * k)
            assert (out.P - want).is_zero()
            assert out.A.data == fn.A.data


def test_inversion_scalar_on_lowest_weight():
    # (0,-1;1,0) scales phi_Q by i^(-sum t)
    for n, k, t in [(1, 2, (2,)), (1, 2, (3,)), (2, 3, (4, 3))]:
        w = WeightData(n, k, t)
        fn = GaussianFunction.from_schwartz(
            SchwartzPolyGaussian(build_Q(w), 1, n, k))
        out = act_word(jinv_word(n), fn)
        want = fn.P * ExactScalar.i_power(-sum(t))
        assert (out.P - want).is_zero()
        assert out.A.data == fn.A.data


def test_orthogonal_action_commutes_with_words():
    rng = random.Random(6)
    for _ in range(5):
        m = rng.choice([1, 2])
        k = 2
        gamma = random_orthogonal(rng, 2 * k, bound=3)
        w = _rand_word(rng, m)
        fn = _rand_fn(rng, m, k)
        assert _same(apply_orthogonal(act_word(w, fn), gamma),
                     act_word(w, apply_orthogonal(fn, gamma)))


# ---------------------------------------------------------------------------
# pairings
# ---------------------------------------------------------------------------

def test_pairing_of_plain_gaussians():
    for m, k in [(1, 1), (1, 2), (2, 2)]:
        fn = GaussianFunction(MatrixPolynomial.one(),
                              RationalMatrix.identity(m), m, k)
        assert pairing(fn, fn) == \
            ExactScalar.i_power(-m * k) * ExactScalar.two_pow(-2 * m * k)


def test_pairing_twist_invariance():
    # pairing(act(w) f1, act(twist of w) f2) = pairing(f1, f2)
    rng = random.Random(7)
    checked = 0
    while checked < 5:
        m = 2
        k = rng.choice([1, 2])
        w = _rand_word(rng, m, 2)
        tw = SymplecticWord(m, [MVWTwist(w)])
        f1, f2 = _rand_fn(rng, m, k), _rand_fn(rng, m, k)
        base = pairing(f1, f2)
        if base.is_zero():
            continue
        checked += 1
        assert pairing(act_word(w, f1), act_word(tw, f2)) == base


def test_section_at_block_lower_unipotent():
    # the section of phi_Q tensor phi_Qtilde at (1,0;-C,1) equals
    # i^(nk) times the pairing of the two factors
    for n, k, t in [(1, 2, (2,)), (1, 2, (3,)), (1, 3, (3,)), (2, 3, (3, 3))]:
        w = WeightData(n, k, t)
        Q, Qt = build_Q(w), build_Qtilde(w)
        ren = {(b, r, c): ("X2", r, c)
               for mono in Qt.terms for (b, r, c), _e in mono}
        fn = GaussianFunction.from_two_block(Q * Qt.rename(ren), n, k)
        word = SymplecticWord(2 * n, [SiegelInverse()])
        got = section_value(word, fn)
        phi1 = GaussianFunction.from_schwartz(SchwartzPolyGaussian(Q, 1, n, k))
        phi2 = GaussianFunction.from_schwartz(
            SchwartzPolyGaussian(Qt, 1, n, k))
        assert got == pairing(phi1, phi2) * ExactScalar.i_power(n * k)


def test_section_of_plain_gaussian_is_two_power():
    for n, k in [(1, 2), (1, 3), (2, 2)]:
        fn = GaussianFunction(MatrixPolynomial.one(),
                              RationalMatrix.identity(2 * n), 2 * n, k)
        word = SymplecticWord(2 * n, [SiegelInverse()])
        assert section_value(word, fn) == ExactScalar.two_pow(-2 * n * k)


# ---------------------------------------------------------------------------
# the sign character
# ---------------------------------------------------------------------------

def test_epsilon_examples():
    assert epsilon_sign(RationalMatrix.identity(2), 1) == 1
    assert epsilon_sign(jinv_word(1).matrix(), 1) == -1
    assert epsilon_sign(Parabolic(RationalMatrix([[QI(-3)]])).matrix(1),
                        1) == -1
    a = RationalMatrix([[QI(2), QI(1)], [QI(0), QI(-1)]])
    assert epsilon_sign(Parabolic(a).matrix(2), 2) == -1
    assert epsilon_sign(Parabolic(a * a).matrix(2), 2) == 1


# ---------------------------------------------------------------------------
# the raising operator and the lowest-weight vector
# ---------------------------------------------------------------------------

def test_raising_gaussian_is_quadratic_multiplication():
    # on the plain Gaussian the operator is 2 pi i tr(sigma x t(x))
    m, k = 2, 1
    fn = GaussianFunction(MatrixPolynomial.one(),
                          RationalMatrix.identity(m), m, k)
    sigma = RationalMatrix([[QI(0), QI(1)], [QI(1), QI(0)]])
    out = act_lie_raising(fn, sigma)
    quad = MatrixPolynomial.zero()
    for c in range(1, 2 * k + 1):
        quad = quad + MatrixPolynomial.variable("X", 1, c) \
            * MatrixPolynomial.variable("X", 2, c) * QI(2)
    want = quad * ExactScalar([((2, 2), QI(0, 1))])  # 2 pi i
    assert (out.P - want).is_zero()
    assert out.A.data == fn.A.data


def test_raising_linear_and_commuting():
    rng = random.Random(8)
    m, k = 2, 1
    fn = GaussianFunction(MatrixPolynomial.variable("X", 1, 1),
                          RationalMatrix.identity(m), m, k)
    s1 = random_symmetric(rng, m, bound=3)
    s2 = random_symmetric(rng, m, bound=3)
    both = act_lie_raising(fn, s1 + s2).P
    assert (both - act_lie_raising(fn, s1).P
            - act_lie_raising(fn, s2).P).is_zero()
    r12 = act_lie_raising(act_lie_raising(fn, s1), s2).P
    r21 = act_lie_raising(act_lie_raising(fn, s2), s1).P
    assert (r12 - r21).is_zero()


def test_raising_leading_term():
    # output minus 2 pi i tr(sigma x t(x)) P has degree at most deg P
    m, k = 2, 1
    P = MatrixPolynomial.variable("X", 1, 1) ** 2
    fn = GaussianFunction(P, RationalMatrix.identity(m), m, k)
    sigma = RationalMatrix.identity(m)
    quad = MatrixPolynomial.zero()
    for r in range(1, m + 1):
        for c in range(1, 2 * k + 1):
            quad = quad + MatrixPolynomial.variable("X", r, c) ** 2
    lead = quad * P * ExactScalar([((2, 2), QI(0, 1))])
    rest = act_lie_raising(fn, sigma).P - lead
    assert all(sum(e for _, e in mono) <= 2 for mono in rest.terms)


def test_lowest_weight_vector_leading_term():
    # the raised polynomial is Q(x1 t(x2)) plus lower total degree
    for n, k, t in [(1, 2, (3,)), (1, 3, (4,))]:
        w = WeightData(n, k, t)
        P0 = build_P0(w)
        M = [[sum((MatrixPolynomial.variable("X1", i + 1, c)
                   * MatrixPolynomial.variable("X2", j + 1, c)
                   for c in range(1, 2 * k + 1)), MatrixPolynomial.zero())
              for j in range(n)] for i in range(n)]
        lead = frak_Q(w, M)
        top = 2 * (sum(t) - n * k)
        rest = P0 - lead
        assert all(sum(e for _, e in mono) < top for mono in rest.terms)
