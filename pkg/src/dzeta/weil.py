"""Oscillator representation on polynomial-Gaussian functions, exactly.

Group elements are words in three primitive generators acting on
functions P(x) e^(-pi tr(A x t(x))) of real m x 2k matrices:

  Parabolic(a, b):  (det a)^k e^(pi i tr(b x t(x))) phi(t(a) x)
  Fourier:          i^(-mk) times the full Fourier transform
  PartialFourier(j): i^(-jk) times the transform in the last j rows

Derived generators (doubling embeddings of a pair of smaller words, the
inverse Siegel translate, and the twist by the outer conjugation that
swaps the two factors) are rewritten into primitive words, so a single
evaluation path covers every operator needed by the zeta integral.

The class of functions with complex symmetric A (positive definite real
part) is closed under all of these, and every action is exact over
Q(i)[sqrt2^(+-1), sqrt pi^(+-1)].
"""

from __future__ import annotations

from fractions import Fraction

from .gaussian import SchwartzPolyGaussian, moment_sym, partial_fourier
from .polyalg import (MatrixPolynomial, RationalMatrix, substitute_linear)
from .scalar import ES_ONE, ExactScalar, QI

_BLK = "X"


# ---------------------------------------------------------------------------
# generators and words
# ---------------------------------------------------------------------------

class Parabolic:
    """Block upper-triangular generator (1,b;0,1)(a,0;0,t(a)^-1)."""

    def __init__(self, a, b=None):
        self.a = a
        self.b = b if b is not None else RationalMatrix.zeros(a.rows, a.rows)
        if not self.b.is_symmetric():
            raise ValueError("parabolic generator needs symmetric b")
        if not (self.a.is_real() and self.b.is_real()):
            raise ValueError("parabolic generator needs real rational blocks")

    def size(self):
        return self.a.rows

    def matrix(self, m):
        at = self.a.inv().transpose()
        return RationalMatrix.from_blocks(
            [[self.a, self.b * at],
             [RationalMatrix.zeros(m, m), at]])


class Fourier:
    """The element (0,1;-1,0)."""

    def matrix(self, m):
        eye = RationalMatrix.identity(m)
        z = RationalMatrix.zeros(m, m)
        return RationalMatrix.from_blocks([[z, eye], [-eye, z]])


class PartialFourier:
    """The element w_j transforming the last j rows."""

    def __init__(self, j):
        self.j = j

    def matrix(self, m):
        j = self.j
        d1 = RationalMatrix.diag([1] * (m - j) + [0] * j)
        d2 = RationalMatrix.diag([0] * (m - j) + [1] * j)
        return RationalMatrix.from_blocks([[d1, d2], [-d2, d1]])


class Embedded:
    """The doubling image iota(g1, g2) of two words of half the size."""

    def __init__(self, w1, w2):
        if w1.m != w2.m:
            raise ValueError("embedded words must act in equal size")
        self.w1 = w1
        self.w2 = w2

    def matrix(self, m):
        n = m // 2
        g1 = _split_blocks(self.w1.matrix(), n)
        g2 = _split_blocks(self.w2.matrix(), n)
        z = RationalMatrix.zeros(n, n)

        def d(x, y):
            return RationalMatrix.from_blocks([[x, z], [z, y]])

        return RationalMatrix.from_blocks(
            [[d(g1[0], g2[0]), d(g1[1], g2[1])],
             [d(g1[2], g2[2]), d(g1[3], g2[3])]])


class SiegelInverse:
    """The element (1,0;-C,1) with C the block swap of the two factors."""

    def matrix(self, m):
        eye = RationalMatrix.identity(m)
        return RationalMatrix.from_blocks(
            [[eye, RationalMatrix.zeros(m, m)], [-_swap(m), eye]])


class MVWTwist:
    """Conjugation of a word by the swap of the two n-row groups."""

    def __init__(self, w):
        self.w = w

    def matrix(self, m):
        s = _swap(m)
        z = RationalMatrix.zeros(m, m)
        sig = RationalMatrix.from_blocks([[s, z], [z, s]])
        return sig * self.w.matrix() * sig


def _swap(m):
    """Permutation matrix exchanging rows (1..n) and (n+1..2n), m = 2n."""
    n = m // 2
    if 2 * n != m:
        raise ValueError("swap needs an even size")
    eye = RationalMatrix.identity(n)
    z = RationalMatrix.zeros(n, n)
    return RationalMatrix.from_blocks([[z, eye], [eye, z]])


def _split_blocks(g, n):
    idx1 = list(range(n))
    idx2 = list(range(n, 2 * n))
    return (g.submatrix(idx1, idx1), g.submatrix(idx1, idx2),
            g.submatrix(idx2, idx1), g.submatrix(idx2, idx2))


class SymplecticWord:
    """A word of generators of Sp(2m) acting on m-row functions."""

    def __init__(self, m, gens):
        self.m = m
        self.gens = list(gens)

    @staticmethod
    def identity(m):
        return SymplecticWord(m, [])

    def __mul__(self, other):
        if self.m != other.m:
            raise ValueError("word size mismatch")
        return SymplecticWord(self.m, self.gens + other.gens)

    def matrix(self):
        out = RationalMatrix.identity(2 * self.m)
        for g in self.gens:
            out = out * g.matrix(self.m)
        return out

    def primitives(self):
        out = []
        for g in self.gens:
            out.extend(_expand(g, self.m))
        return out

    def inverse(self):
        gens = []
        for g in reversed(self.primitives()):
            gens.extend(_invert_primitive(g, self.m))
        return SymplecticWord(self.m, gens)


def _expand(g, m):
    if isinstance(g, (Parabolic, Fourier, PartialFourier)):
        return [g]
    if isinstance(g, SiegelInverse):
        eye = RationalMatrix.identity(m)
        return [Parabolic(-eye), Fourier(), Parabolic(eye, _swap(m)),
                Fourier()]
    if isinstance(g, MVWTwist):
        out = []
        for p in g.w.primitives():
            out.extend(_mvw_primitive(p, m))
        return out
    if isinstance(g, Embedded):
        n = m // 2
        out = []
        for p in g.w1.primitives():
            out.extend(_embed_first(p, n))
        for p in g.w2.primitives():
            out.extend(_embed_second(p, n))
        return out
    raise TypeError("unknown generator %r" % (g,))


def _embed_first(g, n):
    eye = RationalMatrix.identity(n)
    z = RationalMatrix.zeros(n, n)
    if isinstance(g, Parabolic):
        a = RationalMatrix.from_blocks([[g.a, z], [z, eye]])
        b = RationalMatrix.from_blocks([[g.b, z], [z, z]])
        return [Parabolic(a, b)]
    if isinstance(g, Fourier):
        s = _swap(2 * n)
        return [Parabolic(s), PartialFourier(n), Parabolic(s)]
    raise TypeError("cannot embed generator %r" % (g,))


def _embed_second(g, n):
    eye = RationalMatrix.identity(n)
    z = RationalMatrix.zeros(n, n)
    if isinstance(g, Parabolic):
        a = RationalMatrix.from_blocks([[eye, z], [z, g.a]])
        b = RationalMatrix.from_blocks([[z, z], [z, g.b]])
        return [Parabolic(a, b)]
    if isinstance(g, Fourier):
        return [PartialFourier(n)]
    raise TypeError("cannot embed generator %r" % (g,))


def _mvw_primitive(g, m):
    eye = RationalMatrix.identity(m)
    if isinstance(g, Parabolic):
        return [Parabolic(-eye), Fourier(), Parabolic(eye, -g.b), Fourier(),
                Parabolic(g.a.inv().transpose())]
    if isinstance(g, Fourier):
        return [Parabolic(-eye), Fourier()]
    raise TypeError("cannot twist generator %r" % (g,))


def _invert_primitive(g, m):
    eye = RationalMatrix.identity(m)
    if isinstance(g, Parabolic):
        return [Parabolic(g.a.inv()), Parabolic(eye, -g.b)]
    if isinstance(g, Fourier):
        return [Parabolic(-eye), Fourier()]
    if isinstance(g, PartialFourier):
        a = RationalMatrix.diag([1] * (m - g.j) + [-1] * g.j)
        return [Parabolic(a), PartialFourier(g.j)]
    raise TypeError("cannot invert generator %r" % (g,))


def jinv_word(m):
    """The element (0,-1;1,0) as a word."""
    return SymplecticWord(m, [Parabolic(-RationalMatrix.identity(m)),
                              Fourier()])


def word_from_matrix(g, m):
    """Canonical word for a symplectic matrix with invertible d block."""
    a, b, c, d = _split_blocks(g, m)
    if not d.det():
        raise ValueError("word_from_matrix needs an invertible d block")
    dinv = d.inv()
    eye = RationalMatrix.identity(m)
    gens = [Parabolic(eye, b * dinv), Parabolic(dinv.transpose()),
            Parabolic(-eye), Fourier(), Parabolic(eye, -(dinv * c)),
            Fourier()]
    return SymplecticWord(m, gens)


# ---------------------------------------------------------------------------
# the function class and the action
# ---------------------------------------------------------------------------

class GaussianFunction:
    """P(x) e^(-pi tr(A x t(x))) with P over the working block."""

    __slots__ = ("P", "A", "m", "k")

    def __init__(self, P, A, m, k):
        self.P = P
        self.A = A
        self.m = m
        self.k = k

    @staticmethod
    def from_schwartz(phi):
        P = phi.P
        if phi.block != _BLK:
            var_map = {}
            for mono in P.terms:
                for (b, r, c), _e in mono:
                    var_map[(b, r, c)] = (_BLK, r, c)
            P = P.rename(var_map)
        A = RationalMatrix.scalar(phi.m, QI(phi.c))
        return GaussianFunction(P, A, phi.m, phi.k)

    @staticmethod
    def from_two_block(P, n, k, c=1):
        """Stack blocks X1 (rows 1..n) and X2 (rows n+1..2n)."""
        var_map = {}
        for mono in P.terms:
            for (b, r, cc), _e in mono:
                if b == "X1":
                    var_map[(b, r, cc)] = (_BLK, r, cc)
                elif b == "X2":
                    var_map[(b, r, cc)] = (_BLK, n + r, cc)
                else:
                    raise ValueError("unexpected block %r" % (b,))
        return GaussianFunction(P.rename(var_map),
                                RationalMatrix.scalar(2 * n, QI(c)), 2 * n, k)

    def unstack(self, n):
        var_map = {}
        for mono in self.P.terms:
            for (b, r, c), _e in mono:
                var_map[(b, r, c)] = ("X1", r, c) if r <= n \
                    else ("X2", r - n, c)
        return self.P.rename(var_map)

    def value_at_zero(self):
        return self.P.constant_term()

    def __repr__(self):
        return "GaussianFunction(m=%d, k=%d, %d poly terms)" % (
            self.m, self.k, len(self.P.terms))


def _apply_parabolic(fn, g):
    a, b = g.a, g.b
    P = substitute_linear(fn.P, "left_transpose", a, blocks=[_BLK])
    det = a.det()
    P = P * ExactScalar.from_qi(det ** fn.k)
    A = a * fn.A * a.transpose() + b * QI(0, -1)
    return GaussianFunction(P, A, fn.m, fn.k)


def _apply_transform(fn, j):
    P, A, factor = partial_fourier(fn.P, fn.A, j, fn.k, _BLK)
    factor = factor * ExactScalar.i_power(j * fn.k)
    return GaussianFunction(P * factor, A, fn.m, fn.k)


def apply_orthogonal(fn, gamma):
    """Right translation phi(x gamma) by an orthogonal 2k x 2k matrix."""
    P = substitute_linear(fn.P, "right", gamma, blocks=[_BLK])
    return GaussianFunction(P, fn.A, fn.m, fn.k)


def act_word(word, fn):
    """Apply the oscillator action of a word to a GaussianFunction."""
    if word.m != fn.m:
        raise ValueError("word acts on %d rows, function has %d"
                         % (word.m, fn.m))
    out = fn
    for g in reversed(word.primitives()):
        if isinstance(g, Parabolic):
            out = _apply_parabolic(out, g)
        elif isinstance(g, Fourier):
            out = _apply_transform(out, out.m)
        elif isinstance(g, PartialFourier):
            out = _apply_transform(out, g.j)
        else:
            raise TypeError("unexpected primitive %r" % (g,))
    return out


def act_group(word, gamma, phi):
    """Full dual-pair action: right-translate by gamma, then act by word."""
    fn = phi if isinstance(phi, GaussianFunction) \
        else GaussianFunction.from_schwartz(phi)
    if gamma is not None:
        fn = apply_orthogonal(fn, gamma)
    return act_word(word, fn)


# ---------------------------------------------------------------------------
# the raising operator
# ---------------------------------------------------------------------------

_TWO_PI = ExactScalar([((2, 2), QI(1))])
_PI_I_HALF = ExactScalar([((-2, 2), QI(0, 1))])       # pi i / 2
_I_OVER_8PI = ExactScalar([((-6, -2), QI(0, 1))])     # i / (8 pi)


def _ax_poly(A, r, c):
    out = MatrixPolynomial.zero()
    for s in range(1, A.rows + 1):
        cf = A[r - 1, s - 1]
        if cf:
            out = out + MatrixPolynomial.variable(_BLK, s, c) * cf
    return out


def _class_diff(P, A, var, ax_cache):
    """Derivative of P e^(-pi tr(A x t(x))) divided by the Gaussian."""
    r, c = var[1], var[2]
    key = (r, c)
    if key not in ax_cache:
        ax_cache[key] = _ax_poly(A, r, c)
    return P.diff(var) - ax_cache[key] * P * _TWO_PI


def act_lie_raising(fn, sigma):
    """Derived action of the raising element built from symmetric sigma.

    The element is c (0,sigma;0,0) c^(-1) with c the Cayley element, i.e.
    (1/2) (-i sigma, sigma; sigma, i sigma); its derived action on the
    class is polynomial multiplication by (pi i/2) tr(sigma x t(x)) plus
    first and second order derivative terms, and preserves the class.
    """
    m, k, A = fn.m, fn.k, fn.A
    if sigma.rows != m or not sigma.is_symmetric():
        raise ValueError("sigma must be a symmetric m x m matrix")
    cols = max(fn.P.max_col(_BLK), 2 * k)
    ax_cache = {}

    # multiplication part: (pi i / 2) tr(sigma x t(x))
    quad = MatrixPolynomial.zero()
    for r in range(1, m + 1):
        for s in range(1, m + 1):
            cf = sigma[r - 1, s - 1]
            if not cf:
                continue
            for c in range(1, cols + 1):
                quad = quad + (MatrixPolynomial.variable(_BLK, r, c)
                               * MatrixPolynomial.variable(_BLK, s, c)) * cf
    out = quad * fn.P * _PI_I_HALF

    # linear part from alpha = -i sigma / 2
    tr_sigma = QI(0)
    for r in range(m):
        tr_sigma = tr_sigma + sigma[r, r]
    out = out + fn.P * ExactScalar.from_qi(
        QI(0, Fraction(-1, 2)) * tr_sigma * k)
    half_mi = QI(0, Fraction(-1, 2))
    first = {}
    for r in range(1, m + 1):
        for c in range(1, cols + 1):
            first[(r, c)] = _class_diff(fn.P, A, (_BLK, r, c), ax_cache)
    for r in range(1, m + 1):
        for s in range(1, m + 1):
            cf = sigma[r - 1, s - 1]
            if not cf:
                continue
            for c in range(1, cols + 1):
                out = out + MatrixPolynomial.variable(_BLK, s, c) \
                    * first[(r, c)] * (half_mi * cf)

    # second order part from gamma = sigma / 2: (i/(8 pi)) tr(sigma Delta)
    for r in range(1, m + 1):
        for s in range(1, m + 1):
            cf = sigma[r - 1, s - 1]
            if not cf:
                continue
            for c in range(1, cols + 1):
                second = _class_diff(first[(s, c)], A, (_BLK, r, c), ax_cache)
                out = out + second * (_I_OVER_8PI * cf)
    return GaussianFunction(out, A, m, k)


# ---------------------------------------------------------------------------
# derived objects of the doubling integral
# ---------------------------------------------------------------------------

def build_P0(w):
    """Polynomial of the lowest-weight vector built by iterated raising.

    Q_{k,t} is evaluated on the commuting raised entries (1/(4 pi i))
    times the raising operators for sigma_{ij} = E_{i,n+j} + E_{n+j,i},
    applied to the two-block Gaussian.  The result has leading term
    Q_{k,t}(x1 t(x2)) plus terms of lower total degree.
    """
    from .constructions import frak_Q  # local import to avoid a cycle
    n, k = w.n, w.k
    m = 2 * n
    M = [[MatrixPolynomial.variable("M", i, j) for j in range(1, n + 1)]
         for i in range(1, n + 1)]
    q_poly = frak_Q(w, M)
    scale = ExactScalar([((-4, -2), QI(0, Fraction(-1)))])  # 1/(4 pi i)

    sigmas = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            data = [[Fraction(0)] * m for _ in range(m)]
            data[i - 1][n + j - 1] = Fraction(1)
            data[n + j - 1][i - 1] = Fraction(1)
            sigmas[(i, j)] = RationalMatrix(data)

    base = GaussianFunction(MatrixPolynomial.one(),
                            RationalMatrix.identity(m), m, k)
    memo = {(): base.P}

    def apply_ops(ops):
        if ops in memo:
            return memo[ops]
        head, rest = ops[0], ops[1:]
        prev = apply_ops(rest)
        fn = GaussianFunction(prev, base.A, m, k)
        out = act_lie_raising(fn, sigmas[head]).P * scale
        memo[ops] = out
        return out

    total = MatrixPolynomial.zero()
    for mono, coeff in q_poly.terms.items():
        ops = []
        for (_b, i, j), e in mono:
            ops.extend([(i, j)] * e)
        ops = tuple(sorted(ops, reverse=True))
        total = total + apply_ops(ops) * coeff
    return GaussianFunction(total, base.A, m, k).unstack(n)


def pairing(phi1, phi2):
    """L^2 pairing int phi1 . (action of (0,-1;1,0) on phi2) dx."""
    f1 = phi1 if isinstance(phi1, GaussianFunction) \
        else GaussianFunction.from_schwartz(phi1)
    f2 = phi2 if isinstance(phi2, GaussianFunction) \
        else GaussianFunction.from_schwartz(phi2)
    if f1.m != f2.m or f1.k != f2.k:
        raise ValueError("pairing shape mismatch")
    g2 = act_word(jinv_word(f2.m), f2)
    return moment_sym(f1.P * g2.P, f1.A + g2.A, f1.k, _BLK)


def matrix_coefficient(word, phi):
    """Diagonal matrix coefficient of the doubled action at a group word.

    phi is a two-block GaussianFunction (2n rows); word acts in the first
    factor of the dual pair, the fixed element (0,-1;1,0) in the second,
    and the result is integrated over the diagonal x1 = x2.
    """
    fn = phi if isinstance(phi, GaussianFunction) \
        else GaussianFunction.from_schwartz(phi)
    m = fn.m
    n = m // 2
    doubled = SymplecticWord(m, [Embedded(word, SymplecticWord.identity(n))])
    fn = act_word(doubled, fn)
    fn = act_word(SymplecticWord(
        m, [Embedded(SymplecticWord.identity(n), jinv_word(n))]), fn)
    var_map = {}
    for mono in fn.P.terms:
        for (b, r, c), _e in mono:
            if r > n:
                var_map[(b, r, c)] = (b, r - n, c)
    P_diag = fn.P.rename(var_map)
    idx1 = list(range(n))
    idx2 = list(range(n, m))
    A = fn.A
    A_diag = (A.submatrix(idx1, idx1) + A.submatrix(idx1, idx2)
              + A.submatrix(idx2, idx1) + A.submatrix(idx2, idx2))
    return moment_sym(P_diag, A_diag, fn.k, _BLK)


def section_value(word, phi):
    """Value at the identity coset: (action of word on phi)(0)."""
    fn = phi if isinstance(phi, GaussianFunction) \
        else GaussianFunction.from_schwartz(phi)
    return act_word(word, fn).value_at_zero()


# ---------------------------------------------------------------------------
# the sign character of the plus part
# ---------------------------------------------------------------------------

def _sign(q):
    if not q.is_rational():
        raise ValueError("sign of non-real value")
    return 1 if q.re > 0 else (-1 if q.re < 0 else 0)


def _rank_factor(c):
    """c = U V with U of full column rank and V of full row rank."""
    m = c.rows
    work = [row[:] for row in c.data]
    e = [[QI(1) if i == j else QI(0) for j in range(m)] for i in range(m)]
    r = 0
    for col in range(m):
        piv = next((i for i in range(r, m) if work[i][col]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        e[r], e[piv] = e[piv], e[r]
        inv = work[r][col].inv()
        work[r] = [x * inv for x in work[r]]
        e[r] = [x * inv for x in e[r]]
        for i in range(m):
            if i != r and work[i][col]:
                f = work[i][col]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
                e[i] = [a - f * b for a, b in zip(e[i], e[r])]
        r += 1
    V = RationalMatrix(work[:r]) if r else None
    einv = RationalMatrix(e).inv()
    U = einv.submatrix(list(range(m)), list(range(r))) if r else None
    return U, V, r


def _complete_rows(V, m):
    """Extend the rows of V to an invertible m x m matrix (V rows last)."""
    rows = [] if V is None else [row[:] for row in V.data]
    chosen = []
    for i in range(m):
        cand = [QI(1) if j == i else QI(0) for j in range(m)]
        trial = RationalMatrix(chosen + [cand] + rows) if rows or chosen \
            else RationalMatrix([cand])
        if trial.rank() == len(chosen) + len(rows) + 1:
            chosen.append(cand)
        if len(chosen) + len(rows) == m:
            break
    return RationalMatrix(chosen + rows)


def epsilon_sign(g, m):
    """Sign character from the normal form p1 w_j p2 of a symplectic matrix.

    Returns sgn(det(a1 a2)) for any decomposition into parabolic elements
    around the partial transform element of rank j = rank(c).
    """
    a, b, c, d = _split_blocks(g, m)
    if not c.rank():
        return _sign(a.det())
    U, V, j = _rank_factor(c)
    a2 = _complete_rows(V, m)
    # columns of t(a1)^(-1): a completion then -U in the last j slots
    neg_u_cols = [[-U[i, jj] for jj in range(j)] for i in range(m)]
    cols = []
    for i in range(m):
        cand = [QI(1) if r == i else QI(0) for r in range(m)]
        trial_cols = cols + [cand] + [list(col) for col in zip(*neg_u_cols)]
        trial = RationalMatrix(trial_cols).transpose()
        if trial.rank() == len(cols) + 1 + j:
            cols.append(cand)
        if len(cols) + j == m:
            break
    a1_it = RationalMatrix(cols + [list(col) for col in
                                   zip(*neg_u_cols)]).transpose()
    return _sign(a1_it.det()) * _sign(a2.det())
