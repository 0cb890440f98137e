import random
from fractions import Fraction

import pytest

from dzeta.scalar import ES_ONE, ExactScalar, QI
from dzeta.polyalg import (MatrixPolynomial, RationalMatrix, delta_ij,
                           solve_linear_exact, substitute_linear)
from dzeta.constructions import (WeightData, build_I, build_P_hol,
                                 build_P_prime, build_Q, build_Qtilde,
                                 diagonal_restriction, evaluation_point,
                                 frak_Q, harmonic_projection,
                                 random_fraction, random_orthogonal,
                                 random_unitriangular, sphere_generators)


def var(block, r, c):
    return MatrixPolynomial.variable(block, r, c)


# -- weight data ------------------------------------------------------------

def test_weight_validation_messages():
    with pytest.raises(ValueError, match="t_n >= k"):
        WeightData(1, 2, (1,))
    with pytest.raises(ValueError, match="k >= n\\+1"):
        WeightData(2, 2, (3, 3))
    with pytest.raises(ValueError, match="t_1 >= t_2"):
        WeightData(2, 3, (3, 4))
    with pytest.raises(ValueError, match="entries in t"):
        WeightData(2, 3, (4,))


def test_weight_depth():
    assert WeightData(1, 2, (2,)).depth == 0
    assert WeightData(2, 3, (5, 4)).depth == 3


# -- determinant products ---------------------------------------------------

def test_frak_Q_zero_exponents():
    w = WeightData(1, 2, (2,))
    M = [[var("X1", 1, 1)]]
    assert frak_Q(w, M).terms == MatrixPolynomial.one().terms


def test_frak_Q_single_minor():
    w = WeightData(1, 2, (3,))
    M = [[var("X1", 1, 1)]]
    assert frak_Q(w, M).terms == var("X1", 1, 1).terms


def test_frak_Q_n2_top_minor_only():
    w = WeightData(2, 3, (4, 3))
    M = [[var("X1", i, j) for j in (1, 2)] for i in (1, 2)]
    assert frak_Q(w, M).terms == var("X1", 1, 1).terms


def test_build_Q_examples():
    assert build_Q(WeightData(1, 2, (2,))).terms == \
        MatrixPolynomial.one().terms
    Q = build_Q(WeightData(1, 2, (3,)))
    expect = var("X1", 1, 1) + var("X1", 1, 3) * ExactScalar.i()
    assert Q.terms == expect.terms
    Qt = build_Qtilde(WeightData(1, 2, (3,)))
    expect = var("X2", 1, 1) - var("X2", 1, 3) * ExactScalar.i()
    assert Qt.terms == expect.terms


def test_build_I_examples():
    assert build_I(WeightData(1, 2, (2,))).terms == \
        MatrixPolynomial.one().terms
    w = WeightData(1, 2, (3,))
    diag = diagonal_restriction(build_I(w), w)
    expect = var("X1", 1, 1) ** 2 + var("X1", 1, 3) ** 2
    assert diag.terms == expect.terms


def test_build_P_prime_example():
    w = WeightData(1, 2, (3,))
    P = build_P_prime(w)
    expect = MatrixPolynomial.zero()
    for r in range(1, 5):
        expect = expect + var("X1", 1, r) * var("X2", 1, r)
    assert P.terms == expect.terms


def test_build_P_hol_product_and_degree():
    w = WeightData(2, 3, (4, 3))
    P = build_P_hol(w)
    assert P.terms == (build_Q(w) * build_Qtilde(w)).terms
    assert P.degree() == 2 * w.sum_t - 2 * w.n * w.k


def test_P_prime_orthogonal_invariance():
    rng = random.Random(5)
    w = WeightData(1, 2, (4,))
    P = build_P_prime(w)
    for _ in range(3):
        g = random_orthogonal(rng, 4, bound=4)
        assert substitute_linear(P, "right", g, ["X1", "X2"]).terms == P.terms


# -- evaluation point -------------------------------------------------------

def test_evaluation_point_values():
    for w in (WeightData(1, 2, (2,)), WeightData(1, 2, (4,)),
              WeightData(2, 3, (4, 3))):
        point = evaluation_point(w)
        assert build_P_hol(w).evaluate(point) == ES_ONE
        assert build_I(w).evaluate(point) == ES_ONE
        # x t(x) vanishes on each block there
        for block in ("X1", "X2"):
            for i in range(1, w.n + 1):
                for j in range(i, w.n + 1):
                    s = MatrixPolynomial.zero()
                    for r in range(1, 2 * w.k + 1):
                        s = s + var(block, i, r) * var(block, j, r)
                    assert s.evaluate(point) == ExactScalar.zero()


def test_P_prime_at_point_is_two_power():
    # value 2^(-depth), the normalizing constant of the projection
    for w in (WeightData(1, 2, (3,)), WeightData(1, 2, (4,)),
              WeightData(2, 3, (4, 4))):
        assert build_P_prime(w).evaluate(evaluation_point(w)) == \
            ExactScalar.two_pow(-2 * w.depth)


# -- symmetry properties ----------------------------------------------------

def test_Q_unipotent_invariance():
    rng = random.Random(9)
    w = WeightData(2, 3, (5, 4))
    Q = build_Q(w)
    for _ in range(5):
        u = random_unitriangular(rng, 2, bound=6).transpose()
        assert substitute_linear(Q, "left", u, ["X1"]).terms == Q.terms


def test_Q_torus_character():
    rng = random.Random(10)
    w = WeightData(2, 3, (5, 4))
    Q = build_Q(w)
    for _ in range(5):
        d = [random_fraction(rng, 6, nonzero=True) for _ in range(2)]
        a = RationalMatrix.diag(d)
        char = ES_ONE
        for j in range(2):
            char = char * ExactScalar.from_rational(d[j]) ** (w.t[j] - w.k)
        assert substitute_linear(Q, "left", a, ["X1"]).terms == \
            (Q * char).terms


def test_I_invariance():
    rng = random.Random(11)
    w = WeightData(2, 3, (4, 4))
    I = build_I(w)
    for _ in range(5):
        lo = random_unitriangular(rng, 2, bound=4).transpose()
        up = random_unitriangular(rng, 2, bound=4)
        a = lo * RationalMatrix.diag(
            [random_fraction(rng, 4, nonzero=True) for _ in range(2)]) * up
        moved = substitute_linear(
            substitute_linear(I, "left", a, ["X1"]),
            "left", a.inv().transpose(), ["X2"])
        assert moved.terms == I.terms


# -- harmonic projection ----------------------------------------------------

def test_projection_trivial_case():
    hp = harmonic_projection(WeightData(1, 2, (2,)))
    assert hp.P_holinv.terms == MatrixPolynomial.one().terms
    assert hp.constant == ES_ONE
    assert not hp.remainder.terms


def test_projection_defining_conditions():
    w = WeightData(1, 2, (3,))
    hp = harmonic_projection(w)
    P = hp.P_holinv
    for block in ("X1", "X2"):
        assert not delta_ij(P, 1, 1, block, 4).terms
    assert P.evaluate(evaluation_point(w)) == ES_ONE
    assert (P * hp.constant + hp.remainder).terms == build_P_prime(w).terms


def test_projection_remainder_ideal_membership():
    # independent re-solve: express the remainder in the basis of
    # (sphere generator) x (free monomial) products of the right bidegree
    w = WeightData(1, 2, (4,))
    hp = harmonic_projection(w)
    R = hp.remainder
    assert R.terms
    d = w.depth
    basis = []
    for block, other in (("X1", "X2"), ("X2", "X1")):
        for g in sphere_generators(w, block):
            for m1 in _monos(block, w, d - 2):
                for m2 in _monos(other, w, d):
                    basis.append(g * m1 * m2)
    cols = len(basis)
    row_index = {}
    rows = []
    rhs = []
    for j, q in enumerate(basis):
        for mono, c in q.terms.items():
            if mono not in row_index:
                row_index[mono] = len(rows)
                rows.append({})
                rhs.append(QI(0))
            rows[row_index[mono]][j] = \
                rows[row_index[mono]].get(j, QI(0)) + c.as_qi()
    for mono, c in R.terms.items():
        if mono not in row_index:
            row_index[mono] = len(rows)
            rows.append({})
            rhs.append(QI(0))
        rhs[row_index[mono]] = c.as_qi()
    sol = solve_linear_exact(rows, rhs, cols)
    assert sol.consistent


def _monos(block, w, deg):
    if deg < 0:
        return []
    vars_ = [var(block, r, c) for r in range(1, w.n + 1)
             for c in range(1, 2 * w.k + 1)]
    out = [MatrixPolynomial.one()]
    for _ in range(deg):
        out = [m * v for m in out for v in vars_]
    seen = {}
    for m in out:
        seen[tuple(sorted(m.terms))] = m
    return list(seen.values())


def test_projection_orthogonal_invariance():
    rng = random.Random(23)
    w = WeightData(1, 2, (4,))
    P = harmonic_projection(w).P_holinv
    for _ in range(3):
        g = random_orthogonal(rng, 4, bound=3)
        assert substitute_linear(P, "right", g, ["X1", "X2"]).terms == P.terms
