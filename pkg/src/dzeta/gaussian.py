"""Exact Gaussian integrals and Fourier transforms of P(x) * Gaussian.

All integrals reduce per monomial to the one-dimensional moments

    int x^(2m) e^(-c pi x^2) dx = (2m-1)!! / (2 c pi)^m * c^(-1/2),

and all transforms act variable by variable through the Hermite-style
recursion for the transform of x^m e^(-pi x^2).  Matrix variables always
have an even number 2k of columns, so a quadratic form A enters the
answers only through integer powers of row scalings and det(A): every
value stays inside Q(i)[sqrt2^(+-1), sqrt pi^(+-1)].

Complex symmetric scale matrices A with positive definite real part are
supported through exact congruence diagonalization over Q(i); the
resulting formulas are the holomorphic continuation of the positive
definite real case.
"""

from __future__ import annotations

from fractions import Fraction

from .polyalg import MatrixPolynomial, RationalMatrix, substitute_linear
from .scalar import (ES_ONE, ExactScalar, QI, double_factorial)

_SRC = "_S"  # reserved block name for Fourier source variables


class SchwartzPolyGaussian:
    """Schwartz function P(x) * exp(-c pi tr(x t(x))) on m x 2k matrices."""

    __slots__ = ("P", "c", "m", "k", "block")

    def __init__(self, P, c, m, k, block="X1"):
        self.P = MatrixPolynomial.coerce(P)
        self.c = Fraction(c)
        if self.c <= 0:
            raise ValueError("Gaussian scale must be positive, got %s" % c)
        self.m = int(m)
        self.k = int(k)
        self.block = block

    def __repr__(self):
        return "SchwartzPolyGaussian(m=%d, k=%d, c=%s, %d poly terms)" % (
            self.m, self.k, self.c, len(self.P.terms))


def gaussian_moment(P, c, shape):
    """Integral of P(x) e^(-c pi tr(x t(x))) over all declared variables.

    shape maps block names to (rows, cols); every variable of P must lie
    inside a declared block.
    """
    c = Fraction(c)
    if c <= 0:
        raise ValueError("Gaussian scale must be positive, got %s" % c)
    nvars = sum(r * cc for r, cc in shape.values())
    if nvars % 2:
        raise ValueError("odd total variable count; columns must be even")
    base = ExactScalar.from_qi(QI(c) ** (-(nvars // 2)))
    total = ExactScalar.zero()
    for mono, coeff in P.terms.items():
        val = coeff
        ok = True
        for (b, r, cc), e in mono:
            if b not in shape or r > shape[b][0] or cc > shape[b][1]:
                raise ValueError("variable %r outside declared shape"
                                 % ((b, r, cc),))
            if e % 2:
                ok = False
                break
            m = e // 2
            val = val * Fraction(double_factorial(2 * m - 1)) \
                * ExactScalar.from_qi(QI(2 * c) ** (-m)) \
                * ExactScalar.pi_pow(-2 * m)
        if ok:
            total = total + val
    return total * base


def congruence_diagonalize(A):
    """L, D with t(L) A L = D diagonal, exactly over Q(i).

    A must be symmetric.  Returns (L, diag entries list).
    """
    n = A.rows
    if not A.is_symmetric():
        raise ValueError("congruence diagonalization needs a symmetric matrix")
    M = [row[:] for row in A.data]
    L = [[QI(1) if i == j else QI(0) for j in range(n)] for i in range(n)]

    def col_op(dst, src, f):
        # column dst += f * column src (and same row op on M)
        for i in range(n):
            M[i][dst] = M[i][dst] + f * M[i][src]
        for i in range(n):
            M[dst][i] = M[dst][i] + f * M[src][i]
        for i in range(n):
            L[i][dst] = L[i][dst] + f * L[i][src]

    def col_swap(i, j):
        for r in range(n):
            M[r][i], M[r][j] = M[r][j], M[r][i]
        for r in range(n):
            M[i][r], M[j][r] = M[j][r], M[i][r]
        for r in range(n):
            L[r][i], L[r][j] = L[r][j], L[r][i]

    for i in range(n):
        if not M[i][i]:
            j = next((j for j in range(i + 1, n) if M[j][j]), None)
            if j is not None:
                col_swap(i, j)
            else:
                j = next((j for j in range(i + 1, n) if M[i][j]), None)
                if j is None:
                    raise ValueError("singular quadratic form")
                col_op(i, j, QI(1))
        piv = M[i][i]
        inv = piv.inv()
        for j in range(i + 1, n):
            if M[i][j]:
                col_op(j, i, -(M[i][j] * inv))
    return RationalMatrix(L), [M[i][i] for i in range(n)]


def moment_sym(P, A, k, block="X1"):
    """Integral of P(x) e^(-pi tr(A x t(x))) for symmetric A over Q(i).

    x runs over real m x 2k matrices, m = A.rows.  Exact analytic
    continuation from positive definite real A.
    """
    m = A.rows
    L, diag = congruence_diagonalize(A)
    Psub = substitute_linear(P, "left", L, blocks=[block]) if m else P
    detL = L.det() if m else QI(1)
    base = ExactScalar.from_qi(detL ** (2 * k))
    for dr in diag:
        base = base * ExactScalar.from_qi(dr ** (-k))
    total = ExactScalar.zero()
    for mono, coeff in Psub.terms.items():
        val = coeff
        ok = True
        for (b, r, cc), e in mono:
            if b != block:
                raise ValueError("unexpected block %r in moment" % (b,))
            if e % 2:
                ok = False
                break
            mm = e // 2
            val = val * Fraction(double_factorial(2 * mm - 1)) \
                * ExactScalar.from_qi((QI(2) * diag[r - 1]) ** (-mm)) \
                * ExactScalar.pi_pow(-2 * mm)
        if ok:
            total = total + val
    return total * base


# ---------------------------------------------------------------------------
# Fourier transforms
# ---------------------------------------------------------------------------

_hermite_cache = {}


def _hermite_image(m):
    """Coefficients of p_m with FT(x^m e^(-pi x^2)) = p_m(x) e^(-pi x^2).

    Recursion p_{m+1} = (1/(2 pi i)) (p_m' - 2 pi x p_m), p_0 = 1; the
    transform kernel is e^(2 pi i x y).
    """
    if m in _hermite_cache:
        return _hermite_cache[m]
    if m == 0:
        out = [ES_ONE]
    else:
        p = _hermite_image(m - 1)
        inv2pii = ExactScalar([((-2, -2), QI(0, Fraction(-1)))])  # 1/(2 pi i)
        twopi = ExactScalar([((2, 2), QI(1))])
        out = [ExactScalar.zero()] * (m + 1)
        for d in range(m):
            # derivative of x^(d+1) term contributes to degree d
            if d + 1 < len(p) and p[d + 1]:
                out[d] = out[d] + inv2pii * p[d + 1] * (d + 1)
        for d, c in enumerate(p):
            if c:
                out[d + 1] = out[d + 1] - inv2pii * twopi * c
    _hermite_cache[m] = out
    return out


def fourier_gaussian(phi, sign=1):
    """Fourier transform of a scale-1 Schwartz pair, kernel e(sign 2pi i x.y).

    Returns the transformed SchwartzPolyGaussian, again at scale 1, without
    any representation-theoretic prefactor.
    """
    if phi.c != 1:
        raise ValueError("fourier_gaussian requires scale c = 1")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    out = MatrixPolynomial.zero()
    for mono, coeff in phi.P.terms.items():
        term = MatrixPolynomial.constant(coeff)
        for v, e in mono:
            img = _hermite_image(e)
            vp = MatrixPolynomial.zero()
            xv = MatrixPolynomial.variable(*v)
            for d, c in enumerate(img):
                if c:
                    vp = vp + (xv ** d) * c
            term = term * vp
        out = out + term
    if sign == -1:
        flipped = {}
        for mono, coeff in out.terms.items():
            deg = sum(e for _, e in mono)
            flipped[mono] = coeff if deg % 2 == 0 else -coeff
        out = MatrixPolynomial(flipped, _raw=True)
    return SchwartzPolyGaussian(out, 1, phi.m, phi.k, phi.block)


_INV_2PI = ExactScalar([((-2, -2), QI(1))])  # 1/(2 pi)


def partial_fourier(P, A, j, k, block):
    """Integrate the last j rows against the kernel e(2 pi i tr t(x_b) y).

    Input function is P(x) e^(-pi tr(A x t(x))) on m x 2k matrices; the
    last j rows are transformed.  Returns (P_new, A_new, factor) where
    factor = det(A22)^(-k) and the i^(jk) normalization is left to the
    caller.
    """
    m = A.rows
    t = m - j
    if j < 1 or j > m:
        raise ValueError("row count out of range")
    idx_t = list(range(t))
    idx_s = list(range(t, m))
    A22 = A.submatrix(idx_s, idx_s)
    C = A22.inv()

    def lower_var(r_local, c):
        # (C s)_{r_local, c} as a polynomial in the source block
        out = MatrixPolynomial.zero()
        for r2 in range(1, j + 1):
            cf = C[r_local - 1, r2 - 1]
            if cf:
                out = out + MatrixPolynomial.variable(_SRC, r2, c) * cf
        return out

    lower_cache = {}
    transformed = MatrixPolynomial.zero()
    for mono, coeff in P.terms.items():
        spect = []
        ops = []
        for (b, r, c), e in mono:
            if b != block:
                raise ValueError("unexpected block %r" % (b,))
            if r <= t:
                spect.append(((b, r, c), e))
            else:
                ops.append((r - t, c, e))
        R = MatrixPolynomial.one()
        for r_local, c, e in ops:
            key = (r_local, c)
            if key not in lower_cache:
                lower_cache[key] = lower_var(r_local, c)
            lv = lower_cache[key]
            for _ in range(e):
                R = R.diff((_SRC, r_local, c)) * _INV_2PI + lv * R
        term = R * MatrixPolynomial({tuple(spect): coeff}, _raw=True)
        transformed = transformed + term

    # substitute s = i x_low - A21 u
    A21 = A.submatrix(idx_s, idx_t)
    mapping = {}
    cols = sorted({c for monos in transformed.terms
                   for (b, _r, c), _e in monos if b == _SRC})
    for r_local in range(1, j + 1):
        for c in cols:
            img = MatrixPolynomial.variable(block, t + r_local, c) \
                * ExactScalar.i()
            for r2 in range(1, t + 1):
                cf = A21[r_local - 1, r2 - 1]
                if cf:
                    img = img - MatrixPolynomial.variable(block, r2, c) * cf
            mapping[(_SRC, r_local, c)] = img
    P_new = transformed.substitute(mapping)

    # new quadratic form on (spectator rows, transformed rows)
    if t:
        A11 = A.submatrix(idx_t, idx_t)
        A12 = A.submatrix(idx_t, idx_s)
        TT = A11 - A12 * C * A21
        TS = A12 * C * QI(0, 1)
        ST = C * A21 * QI(0, 1)
        A_new = RationalMatrix.from_blocks([[TT, TS], [ST, C]])
    else:
        A_new = C
    factor = ExactScalar.from_qi(A22.det() ** (-k))
    return P_new, A_new, factor
