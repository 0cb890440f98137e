"""Dimension formulas, Gamma factors and the closed-form value.

Everything is exact: dimensions are integers from Weyl-type product
formulas, Gamma factors are ExactScalars through the half-integer Gamma
function, and the final closed form is assembled from powers of i, 2, pi
and a product of integer Gamma values.
"""

from __future__ import annotations

from fractions import Fraction

from .scalar import ES_ONE, ExactScalar, QI, gamma_exact


def dim_gl(n, t):
    """Dimension of the GL(n) representation of highest weight t."""
    t = tuple(t)
    if len(t) != n:
        raise ValueError("weight length mismatch")
    num = 1
    den = 1
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            num *= t[i - 1] - t[j - 1] + j - i
            den *= j - i
    q = Fraction(num, den)
    if q.denominator != 1:
        raise ArithmeticError("non-integral GL dimension")
    return int(q)


def dim_so(k, a):
    """Dimension of the SO(2k) representation of highest weight a.

    a has k entries (a_1 >= ... >= a_{k-1} >= |a_k|).
    """
    a = tuple(a)
    if len(a) != k:
        raise ValueError("weight length mismatch")
    q = Fraction(1)
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            q *= Fraction((a[i - 1] - a[j - 1] - i + j)
                          * (a[i - 1] + a[j - 1] + 2 * k - i - j),
                          (j - i) * (2 * k - i - j))
    if q.denominator != 1:
        raise ArithmeticError("non-integral SO dimension")
    return int(q)


def dim_lambda(w):
    """Dimension of the O(2k) representation with padded weight t - k."""
    a = tuple(tj - w.k for tj in w.t) + (0,) * (w.k - w.n)
    return dim_so(w.k, a)


def dim_lambda_display1(w):
    """First rewritten product expression for dim_lambda."""
    n, k, t = w.n, w.k, w.t
    out = ES_ONE
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out = out * Fraction((t[i - 1] - t[j - 1] - i + j)
                                 * (t[i - 1] + t[j - 1] - i - j))
    den = 1
    for i in range(1, n + 1):
        for j in range(i + 1, k + 1):
            den *= (j - i) * (2 * k - i - j)
    out = out * Fraction(1, den)
    for j in range(1, n + 1):
        out = out * Fraction(t[j - 1] - j) \
            * gamma_exact(t[j - 1] - j + k - n) \
            * gamma_exact(t[j - 1] - j - k + n + 1).inverse()
    return out


def dim_lambda_display2(w):
    """Second rewritten expression, through the Siegel Gamma factor."""
    n, k, t = w.n, w.k, w.t
    out = ES_ONE
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out = out * Fraction((t[i - 1] - t[j - 1] - i + j)
                                 * (t[i - 1] + t[j - 1] - i - j))
    denom = ExactScalar.two_pow(2 * (2 * n * k - n * (n + 2))) \
        * ExactScalar.pi_pow(-2 * n * n) * siegel_gamma(2 * n, Fraction(k))
    out = out * denom.inverse()
    for j in range(1, n + 1):
        out = out * Fraction(t[j - 1] - j) \
            * gamma_exact(t[j - 1] - j + k - n) \
            * gamma_exact(t[j - 1] - j - k + n + 1).inverse()
    return out


def siegel_gamma(m, s):
    """Gamma_m(s) = pi^(m(m-1)/4) prod_j Gamma(s - (j-1)/2)."""
    s = Fraction(s)
    out = ExactScalar.pi_pow(m * (m - 1) // 2)
    for j in range(1, m + 1):
        out = out * gamma_exact(s - Fraction(j - 1, 2))
    return out


def formal_degree(w):
    """Formal degree of the holomorphic discrete series of weight t."""
    n, t = w.n, w.t
    out = ExactScalar.two_pow(-2 * n * n) \
        * ExactScalar.pi_pow(-(n * n + n))
    for j in range(1, n + 1):
        out = out * gamma_exact(j).inverse()
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out = out * Fraction((t[i - 1] - t[j - 1] - i + j)
                                 * (t[i - 1] + t[j - 1] - i - j))
    for j in range(1, n + 1):
        out = out * Fraction(t[j - 1] - j)
    return out


class ZetaResult:
    """Closed-form value of the archimedean doubling integral."""

    def __init__(self, value, prefactor, gamma_product, dim):
        self.value = value
        self.prefactor = prefactor
        self.gamma_product = gamma_product
        self.dim = dim


def zeta_closed_form(w):
    """The closed form

    i^(-|t|+nk) 2^(-2|t|-nk+2n^2+2n) pi^(-|t|+nk+(3n^2+n)/2)
        / (Gamma_{2n}(k) dim t) * prod_j Gamma(t_j - j + k - n).
    """
    n, k = w.n, w.k
    st = w.sum_t
    pre = ExactScalar.i_power(-st + n * k) \
        * ExactScalar.two_pow(2 * (-2 * st - n * k + 2 * n * n + 2 * n)) \
        * ExactScalar.pi_pow(2 * (-st + n * k) + 3 * n * n + n)
    gp = ES_ONE
    for j in range(1, n + 1):
        gp = gp * gamma_exact(w.t[j - 1] - j + k - n)
    dim = dim_gl(n, w.t)
    # the denominator is a single pi-power times a rational, so invertible
    denom = siegel_gamma(2 * n, Fraction(k)) * Fraction(dim)
    value = pre * gp * denom.inverse()
    return ZetaResult(value, pre, gp, dim)


def gamma_complex(s):
    """Gamma_C(s) = 2 (2 pi)^(-s) Gamma(s) for a positive integer s."""
    if s < 1:
        raise ValueError("Gamma_C pole or nonpositive argument at s=%s" % s)
    return ExactScalar.from_rational(2) * ExactScalar.two_pow(-2 * s) \
        * ExactScalar.pi_pow(-2 * s) * gamma_exact(s)


def gamma_real(s):
    """Gamma_R(s) = pi^(-s/2) Gamma(s/2); s a positive integer."""
    if s < 1:
        raise ValueError("Gamma_R pole at s=%s" % s)
    return ExactScalar.pi_pow(-s) * gamma_exact(Fraction(s, 2))


def tate_gamma(s, eps):
    """Local gamma factor of |.|^s sgn^eps over the reals.

    gamma(s) = i^(-eps) Gamma_R(1 - s + eps) / Gamma_R(s + eps) with
    eps in {0, 1}.  Poles of either factor raise a domain error.
    """
    eps %= 2
    return ExactScalar.i_power(-eps) * gamma_real(1 - s + eps) \
        * gamma_real(s + eps).inverse()


def euler_factor(w, s, side):
    """Modified archimedean Euler factor at integer s.

    side "-": prod_j e(-(s + t_j - j) pi i / 2) Gamma_C(s + t_j - j).
    side "+": the same product divided by the Tate gamma factor of
    sgn^k at s.
    """
    if side not in ("+", "-"):
        raise ValueError("side must be '+' or '-'")
    s = int(s)
    out = ES_ONE
    for j in range(1, w.n + 1):
        arg = s + w.t[j - 1] - j
        out = out * ExactScalar.i_power(-arg) * gamma_complex(arg)
    if side == "+":
        out = out * tate_gamma(s, w.k).inverse()
    return out
