"""Weight data and the determinant-product polynomial constructions.

The central object is the polynomial Q_{k,t} in the entries of an n x n
matrix: the product of powers of leading principal minors

    Q_{k,t}(M) = prod_{j<n} (det_j M)^(t_j - t_{j+1}) * (det M)^(t_n - k).

Note the last exponent is t_n - k (nonnegative under the standing
assumption t_n >= k).  Applied to holomorphic or antiholomorphic
coordinates z = u + iv of a real 2n x 2k matrix variable it produces the
highest-weight polynomials Q, Qtilde, the two-sided kernel I(x1, x2), and
the invariant pairs P_hol, P_prime.
"""

from __future__ import annotations

import os
from fractions import Fraction
from itertools import combinations_with_replacement

from .polyalg import (MatrixPolynomial, RationalMatrix, cayley_orthogonal,
                      delta_ij, leading_minor, solve_linear_exact)
from .scalar import ES_ONE, ExactScalar, QI


class SizeBudgetError(RuntimeError):
    """Raised when a symbolic computation exceeds the monomial budget."""


def monomial_budget():
    return int(os.environ.get("ZETA_BUDGET_MONOMIALS", "500000"))


class WeightData:
    """Scalar weight k and vector weight t = (t_1 >= ... >= t_n >= k)."""

    __slots__ = ("n", "k", "t")

    def __init__(self, n, k, t):
        t = tuple(int(x) for x in t)
        n = int(n)
        k = int(k)
        if n < 1:
            raise ValueError("weight data violates n >= 1 (n=%d)" % n)
        if k < n + 1:
            raise ValueError("weight data violates k >= n+1 (n=%d, k=%d)"
                             % (n, k))
        if len(t) != n:
            raise ValueError("weight data needs n=%d entries in t, got %d"
                             % (n, len(t)))
        for i in range(n - 1):
            if t[i] < t[i + 1]:
                raise ValueError("weight data violates t_%d >= t_%d (t=%s)"
                                 % (i + 1, i + 2, t))
        if t[-1] < k:
            raise ValueError("weight data violates t_n >= k (t=%s, k=%d)"
                             % (t, k))
        self.n, self.k, self.t = n, k, t

    @property
    def sum_t(self):
        return sum(self.t)

    @property
    def depth(self):
        """Total minor degree sum(t_j) - n*k of Q_{k,t}."""
        return self.sum_t - self.n * self.k

    def __repr__(self):
        return "WeightData(n=%d, k=%d, t=%s)" % (self.n, self.k, self.t)

    def case_id(self):
        return "n%d-k%d-t%s" % (self.n, self.k,
                                ".".join(str(x) for x in self.t))


def frak_Q(w, M):
    """Q_{k,t} applied to an n x n matrix M of polynomials."""
    n = w.n
    out = MatrixPolynomial.one()
    for j in range(1, n):
        e = w.t[j - 1] - w.t[j]
        if e:
            out = out * leading_minor(M, j) ** e
    e = w.t[n - 1] - w.k
    if e:
        out = out * leading_minor(M, n) ** e
    return out


def z_entry(block, r, c, k, conj=False):
    """Holomorphic coordinate z_{rc} = x_{rc} + i x_{r,k+c} (conj: - i)."""
    sign = -1 if conj else 1
    return (MatrixPolynomial.variable(block, r, c)
            + MatrixPolynomial.variable(block, r, k + c)
            * ExactScalar.from_qi(QI(0, sign)))


def z_matrix(w, block, conj=False):
    """The n x n matrix of the first n holomorphic coordinate columns."""
    return [[z_entry(block, i, j, w.k, conj) for j in range(1, w.n + 1)]
            for i in range(1, w.n + 1)]


def build_Q(w, block="X1"):
    """Highest-weight polynomial Q(x) = Q_{k,t}(z(x) upper-left block)."""
    return frak_Q(w, z_matrix(w, block))


def build_Qtilde(w, block="X2"):
    """Conjugate partner Qtilde(x) = Q_{k,t}(zbar(x) upper-left block)."""
    return frak_Q(w, z_matrix(w, block, conj=True))


def build_I(w):
    """Two-variable kernel I(x1,x2) = Q_{k,t}((t z(x1) zbar(x2))_{n x n})."""
    z1 = [[z_entry("X1", r, c, w.k) for c in range(1, w.n + 1)]
          for r in range(1, w.n + 1)]
    z2 = [[z_entry("X2", r, c, w.k, conj=True) for c in range(1, w.n + 1)]
          for r in range(1, w.n + 1)]
    M = [[sum((z1[r][i] * z2[r][j] for r in range(w.n)),
              MatrixPolynomial.zero())
          for j in range(w.n)] for i in range(w.n)]
    return frak_Q(w, M)


def build_P_hol(w):
    """P_hol(x1,x2) = Q(x1) * Qtilde(x2)."""
    return build_Q(w, "X1") * build_Qtilde(w, "X2")


def build_P_prime(w):
    """P'(x1,x2) = Q_{k,t}(x1 t(x2))."""
    M = [[sum((MatrixPolynomial.variable("X1", i, r)
               * MatrixPolynomial.variable("X2", j, r)
               for r in range(1, 2 * w.k + 1)), MatrixPolynomial.zero())
          for j in range(1, w.n + 1)] for i in range(1, w.n + 1)]
    return frak_Q(w, M)


def diagonal_restriction(P, w):
    """Set x1 = x2 = x (a single block named X1)."""
    var_map = {}
    for r in range(1, w.n + 1):
        for c in range(1, 2 * w.k + 1):
            var_map[("X2", r, c)] = ("X1", r, c)
    return P.rename(var_map)


def evaluation_point(w):
    """The distinguished complex point where Q, Qtilde and I evaluate to 1.

    Returns a dict mapping every (block, row, col) variable of the two
    blocks to a Gaussian rational value.  At this point the holomorphic
    coordinates of block 1 and the antiholomorphic coordinates of block 2
    are both (1_n 0), and x1 t(x1) = x2 t(x2) = 0.
    """
    half = Fraction(1, 2)
    assign = {}
    for r in range(1, w.n + 1):
        for c in range(1, 2 * w.k + 1):
            assign[("X1", r, c)] = QI(0)
            assign[("X2", r, c)] = QI(0)
        assign[("X1", r, r)] = QI(half)
        assign[("X1", r, w.k + r)] = QI(0, -half)
        assign[("X2", r, r)] = QI(half)
        assign[("X2", r, w.k + r)] = QI(0, half)
    return assign


def sphere_generators(w, block):
    """Entries (a <= b) of x t(x) on one block, as polynomials."""
    gens = []
    for a in range(1, w.n + 1):
        for b in range(a, w.n + 1):
            g = sum((MatrixPolynomial.variable(block, a, r)
                     * MatrixPolynomial.variable(block, b, r)
                     for r in range(1, 2 * w.k + 1)), MatrixPolynomial.zero())
            gens.append(g)
    return gens


def _monomials(variables, degree):
    for combo in combinations_with_replacement(variables, degree):
        d = {}
        for v in combo:
            d[v] = d.get(v, 0) + 1
        yield tuple(sorted(d.items()))


class HarmonicProjection:
    """Decomposition P' = C * P_holinv + (ideal of x t(x) entries)."""

    def __init__(self, P_holinv, constant, remainder):
        self.P_holinv = P_holinv
        self.constant = constant
        self.remainder = remainder


def harmonic_projection(w):
    """Split P' into its pluri-harmonic part and an x t(x)-ideal remainder.

    The harmonic part is normalized to take the value 1 at the evaluation
    point; the proportionality constant C then satisfies
    P' = C * P_holinv + remainder with the remainder in the ideal
    generated by the entries of x1 t(x1) and x2 t(x2).
    """
    d = w.depth
    P_prime = build_P_prime(w)
    if d == 0:
        one = MatrixPolynomial.one()
        return HarmonicProjection(one, ES_ONE, MatrixPolynomial.zero())
    if d == 1:
        # degree one in each block, so already pluri-harmonic
        constant = P_prime.evaluate(evaluation_point(w))
        return HarmonicProjection(P_prime * constant.inverse(), constant,
                                  MatrixPolynomial.zero())

    vars1 = [("X1", r, c) for r in range(1, w.n + 1)
             for c in range(1, 2 * w.k + 1)]
    vars2 = [("X2", r, c) for r in range(1, w.n + 1)
             for c in range(1, 2 * w.k + 1)]

    # ansatz: P = P' - sum c_u * gen_u * mu_u with gen from one block and
    # the complementary degrees filled from free monomials of both blocks
    unknown_polys = []
    for g in sphere_generators(w, "X1"):
        for m1 in _monomials(vars1, d - 2):
            for m2 in _monomials(vars2, d):
                unknown_polys.append(
                    g * MatrixPolynomial({m1: ES_ONE}, _raw=True)
                    * MatrixPolynomial({m2: ES_ONE}, _raw=True))
    for g in sphere_generators(w, "X2"):
        for m1 in _monomials(vars1, d):
            for m2 in _monomials(vars2, d - 2):
                unknown_polys.append(
                    g * MatrixPolynomial({m1: ES_ONE}, _raw=True)
                    * MatrixPolynomial({m2: ES_ONE}, _raw=True))

    conditions = []  # pairs (block, (i, j))
    for block in ("X1", "X2"):
        for i in range(1, w.n + 1):
            for j in range(i, w.n + 1):
                conditions.append((block, i, j))

    # linear system: sum_u c_u * Delta(q_u) = Delta(P') for each condition
    row_index = {}
    rows_by_mono = {}
    rhs_by_mono = {}

    def mono_rows(cond_idx, poly, col=None, rhs=False):
        for mono, coeff in poly.terms.items():
            key = (cond_idx, mono)
            if key not in row_index:
                row_index[key] = len(row_index)
                rows_by_mono[row_index[key]] = {}
                rhs_by_mono[row_index[key]] = QI(0)
            ridx = row_index[key]
            val = coeff.as_qi()
            if rhs:
                rhs_by_mono[ridx] = rhs_by_mono[ridx] + val
            else:
                rows_by_mono[ridx][col] = rows_by_mono[ridx].get(
                    col, QI(0)) + val

    budget = monomial_budget()
    est = 0
    for ci, (block, i, j) in enumerate(conditions):
        ncols = 2 * w.k
        dp = delta_ij(P_prime, i, j, block, ncols)
        mono_rows(ci, dp, rhs=True)
        for u, q in enumerate(unknown_polys):
            dq = delta_ij(q, i, j, block, ncols)
            est += len(dq.terms)
            if est > budget:
                raise SizeBudgetError(
                    "harmonic projection for %s exceeds the monomial budget"
                    % w.case_id())
            mono_rows(ci, dq, col=u)

    nrows = len(row_index)
    rows = [rows_by_mono[i] for i in range(nrows)]
    rhs = [rhs_by_mono[i] for i in range(nrows)]
    sol = solve_linear_exact(rows, rhs, len(unknown_polys))
    if not sol.consistent:
        raise RuntimeError("harmonic projection system is inconsistent "
                           "for %s" % w.case_id())

    remainder = MatrixPolynomial.zero()
    for c, q in zip(sol.particular, unknown_polys):
        if c:
            remainder = remainder + q * ExactScalar.from_qi(c)
    P = P_prime - remainder
    constant = P.evaluate(evaluation_point(w))
    if constant.is_zero():
        raise RuntimeError("harmonic part of P' vanishes at the evaluation "
                           "point for %s" % w.case_id())
    P_holinv = P * constant.inverse()
    return HarmonicProjection(P_holinv, constant, remainder)


# ---------------------------------------------------------------------------
# seeded random rational matrices for identity testing
# ---------------------------------------------------------------------------

def random_fraction(rng, bound=10 ** 4, nonzero=False):
    while True:
        f = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if f or not nonzero:
            return f


def random_matrix(rng, rows, cols, bound=12):
    return RationalMatrix([[random_fraction(rng, bound) for _ in range(cols)]
                           for _ in range(rows)])


def random_invertible(rng, n, bound=12):
    while True:
        m = random_matrix(rng, n, n, bound)
        if m.det():
            return m


def random_symmetric(rng, n, bound=12):
    m = random_matrix(rng, n, n, bound)
    return m + m.transpose()


def random_unitriangular(rng, n, bound=12):
    data = [[Fraction(1) if i == j else
             (random_fraction(rng, bound) if j > i else Fraction(0))
             for j in range(n)] for i in range(n)]
    return RationalMatrix(data)


def random_orthogonal(rng, n, bound=12):
    """Special orthogonal rational matrix via the Cayley transform."""
    data = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            f = random_fraction(rng, bound)
            data[i][j] = f
            data[j][i] = -f
    return cayley_orthogonal(RationalMatrix(data))
