"""Sparse multivariate polynomials over ExactScalar and exact linear algebra.

Variables are entries of named matrix blocks: a variable id is a tuple
(block, row, col) with 1-based row/col.  A monomial is a sorted tuple of
(variable, exponent) pairs, and a polynomial is a dict from monomials to
ExactScalar coefficients with zero coefficients dropped.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .scalar import ES_ONE, ExactScalar, QI, QI_ONE, QI_ZERO


# ---------------------------------------------------------------------------
# matrices over the Gaussian rationals
# ---------------------------------------------------------------------------

class RationalMatrix:
    """Dense matrix with QI entries and exact field arithmetic."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        self.data = [[QI.coerce(x) for x in row] for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        for row in self.data:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")

    @staticmethod
    def identity(n):
        return RationalMatrix([[1 if i == j else 0 for j in range(n)]
                               for i in range(n)])

    @staticmethod
    def zeros(r, c):
        return RationalMatrix([[0] * c for _ in range(r)])

    @staticmethod
    def diag(entries):
        n = len(entries)
        return RationalMatrix([[entries[i] if i == j else 0
                                for j in range(n)] for i in range(n)])

    @staticmethod
    def scalar(n, c):
        return RationalMatrix.diag([c] * n)

    @staticmethod
    def from_blocks(blocks):
        """Assemble from a 2d list of matrices."""
        out = []
        for brow in blocks:
            height = brow[0].rows
            rows = [[] for _ in range(height)]
            for b in brow:
                if b.rows != height:
                    raise ValueError("block height mismatch")
                for i in range(height):
                    rows[i].extend(b.data[i])
            out.extend(rows)
        return RationalMatrix(out)

    def __getitem__(self, rc):
        return self.data[rc[0]][rc[1]]

    def __eq__(self, other):
        return (isinstance(other, RationalMatrix) and self.data == other.data)

    def __neg__(self):
        return RationalMatrix([[-x for x in row] for row in self.data])

    def __add__(self, other):
        return RationalMatrix([[a + b for a, b in zip(r1, r2)]
                               for r1, r2 in zip(self.data, other.data)])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch in matrix product")
            ot = other.transpose()
            return RationalMatrix(
                [[_dot(r, c) for c in ot.data] for r in self.data])
        c = QI.coerce(other)
        return RationalMatrix([[x * c for x in row] for row in self.data])

    __rmul__ = __mul__

    def transpose(self):
        return RationalMatrix([[self.data[i][j] for i in range(self.rows)]
                               for j in range(self.cols)])

    def conj(self):
        return RationalMatrix([[x.conj() for x in row] for row in self.data])

    def submatrix(self, row_idx, col_idx):
        return RationalMatrix([[self.data[i][j] for j in col_idx]
                               for i in row_idx])

    def is_symmetric(self):
        return self == self.transpose()

    def is_real(self):
        return all(x.is_rational() for row in self.data for x in row)

    def det(self):
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        m = [row[:] for row in self.data]
        n = self.rows
        out = QI_ONE
        for col in range(n):
            piv = next((r for r in range(col, n) if m[r][col]), None)
            if piv is None:
                return QI_ZERO
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                out = -out
            out = out * m[col][col]
            inv = m[col][col].inv()
            for r in range(col + 1, n):
                if m[r][col]:
                    f = m[r][col] * inv
                    m[r] = [a - f * b for a, b in zip(m[r], m[col])]
        return out

    def inv(self):
        if self.rows != self.cols:
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        m = [row[:] + [QI_ONE if i == j else QI_ZERO for j in range(n)]
             for i, row in enumerate(self.data)]
        for col in range(n):
            piv = next((r for r in range(col, n) if m[r][col]), None)
            if piv is None:
                raise ValueError("singular matrix")
            m[col], m[piv] = m[piv], m[col]
            inv = m[col][col].inv()
            m[col] = [x * inv for x in m[col]]
            for r in range(n):
                if r != col and m[r][col]:
                    f = m[r][col]
                    m[r] = [a - f * b for a, b in zip(m[r], m[col])]
        return RationalMatrix([row[n:] for row in m])

    def rank(self):
        m = [row[:] for row in self.data]
        r = 0
        for col in range(self.cols):
            piv = next((i for i in range(r, self.rows) if m[i][col]), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = m[r][col].inv()
            m[r] = [x * inv for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][col]:
                    f = m[i][col]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            r += 1
        return r

    def __repr__(self):
        return "RationalMatrix(%r)" % (
            [[x.render() for x in row] for row in self.data],)


def _dot(r, c):
    out = QI_ZERO
    for a, b in zip(r, c):
        if a and b:
            out = out + a * b
    return out


def cayley_orthogonal(skew):
    """Rational orthogonal matrix (I - S)(I + S)^(-1) from antisymmetric S."""
    n = skew.rows
    if skew.transpose() != -skew:
        raise ValueError("cayley_orthogonal needs an antisymmetric matrix")
    eye = RationalMatrix.identity(n)
    return (eye - skew) * (eye + skew).inv()


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

def _mono_mul(m1, m2):
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


class MatrixPolynomial:
    """Polynomial in matrix-entry variables with ExactScalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None, _raw=False):
        if terms is None:
            self.terms = {}
        elif _raw:
            self.terms = terms
        else:
            acc = {}
            for mono, c in (terms.items() if isinstance(terms, dict)
                            else terms):
                c = ExactScalar.coerce(c)
                if mono in acc:
                    c = acc[mono] + c
                if c:
                    acc[mono] = c
                elif mono in acc:
                    del acc[mono]
            self.terms = acc

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero():
        return MatrixPolynomial()

    @staticmethod
    def constant(c):
        c = ExactScalar.coerce(c)
        return MatrixPolynomial({(): c} if c else {}, _raw=True)

    @staticmethod
    def one():
        return MatrixPolynomial.constant(1)

    @staticmethod
    def variable(block, row, col):
        return MatrixPolynomial({(((block, row, col), 1),): ES_ONE}, _raw=True)

    @staticmethod
    def coerce(x):
        if isinstance(x, MatrixPolynomial):
            return x
        return MatrixPolynomial.constant(ExactScalar.coerce(x))

    # -- predicates and views -------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        try:
            other = MatrixPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e for _, e in m) for m in self.terms)

    def block_degree(self, block):
        if not self.terms:
            return -1
        return max(sum(e for v, e in m if v[0] == block) for m in self.terms)

    def blocks(self):
        out = set()
        for m in self.terms:
            for (b, _, _), _e in m:
                out.add(b)
        return out

    def max_col(self, block):
        out = 0
        for m in self.terms:
            for (b, _r, c), _e in m:
                if b == block and c > out:
                    out = c
        return out

    def constant_term(self):
        return self.terms.get((), ExactScalar.zero())

    def leading_part(self, deg=None):
        """Homogeneous part of top (or given) total degree."""
        if not self.terms:
            return MatrixPolynomial.zero()
        if deg is None:
            deg = self.degree()
        return MatrixPolynomial(
            {m: c for m, c in self.terms.items()
             if sum(e for _, e in m) == deg}, _raw=True)

    # -- arithmetic -----------------------------------------------------

    def __neg__(self):
        return MatrixPolynomial({m: -c for m, c in self.terms.items()},
                                _raw=True)

    def __add__(self, other):
        other = MatrixPolynomial.coerce(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            if m in acc:
                s = acc[m] + c
                if s:
                    acc[m] = s
                else:
                    del acc[m]
            else:
                acc[m] = c
        return MatrixPolynomial(acc, _raw=True)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-MatrixPolynomial.coerce(other))

    def __rsub__(self, other):
        return MatrixPolynomial.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QI, ExactScalar)):
            c0 = ExactScalar.coerce(other)
            if not c0:
                return MatrixPolynomial.zero()
            return MatrixPolynomial({m: c * c0 for m, c in self.terms.items()})
        other = MatrixPolynomial.coerce(other)
        acc = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                c = c1 * c2
                if m in acc:
                    c = acc[m] + c
                if c:
                    acc[m] = c
                elif m in acc:
                    del acc[m]
        return MatrixPolynomial(acc, _raw=True)

    __rmul__ = __mul__

    def __pow__(self, e):
        out = MatrixPolynomial.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def conjugate(self):
        return MatrixPolynomial(
            {m: c.conjugate() for m, c in self.terms.items()}, _raw=True)

    # -- calculus and substitution --------------------------------------

    def diff(self, var):
        acc = {}
        for mono, c in self.terms.items():
            for idx, (v, e) in enumerate(mono):
                if v == var:
                    if e == 1:
                        new = mono[:idx] + mono[idx + 1:]
                    else:
                        new = mono[:idx] + ((v, e - 1),) + mono[idx + 1:]
                    cc = c * e
                    if new in acc:
                        cc = acc[new] + cc
                    if cc:
                        acc[new] = cc
                    elif new in acc:
                        del acc[new]
                    break
        return MatrixPolynomial(acc, _raw=True)

    def substitute(self, mapping):
        """Replace each variable in `mapping` by a polynomial image.

        Variables absent from the mapping are kept as themselves.
        """
        pow_cache = {}

        def var_power(v, e):
            key = (v, e)
            if key not in pow_cache:
                pow_cache[key] = MatrixPolynomial.coerce(mapping[v]) ** e
            return pow_cache[key]

        part_cache = {}

        def part_image(part):
            if part not in part_cache:
                term = MatrixPolynomial.one()
                for v, e in part:
                    term = term * var_power(v, e)
                part_cache[part] = term
            return part_cache[part]

        acc = {}
        for mono, c in self.terms.items():
            touched = tuple((v, e) for v, e in mono if v in mapping)
            kept = tuple((v, e) for v, e in mono if v not in mapping)
            for m2, c2 in part_image(touched).terms.items():
                m = _mono_mul(kept, m2) if kept else m2
                cc = c * c2
                if m in acc:
                    cc = acc[m] + cc
                if cc:
                    acc[m] = cc
                elif m in acc:
                    del acc[m]
        return MatrixPolynomial(acc, _raw=True)

    def rename(self, var_map):
        """Bijective variable renaming (monomial rewrite, no expansion)."""
        acc = {}
        for mono, c in self.terms.items():
            d = {}
            for v, e in mono:
                w = var_map.get(v, v)
                d[w] = d.get(w, 0) + e
            m = tuple(sorted(d.items()))
            if m in acc:
                s = acc[m] + c
                if s:
                    acc[m] = s
                else:
                    del acc[m]
            else:
                acc[m] = c
        return MatrixPolynomial(acc, _raw=True)

    def evaluate(self, assign):
        """Evaluate at a point; assign maps variable ids to QI/ExactScalar."""
        out = ExactScalar.zero()
        for mono, c in self.terms.items():
            val = c
            for v, e in mono:
                if v not in assign:
                    raise KeyError("no value for variable %r" % (v,))
                val = val * (ExactScalar.coerce(assign[v]) ** e)
            out = out + val
        return out

    def render(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in sorted(self.terms.items()):
            vs = ["%s[%d,%d]%s" % (b, r, cc, "" if e == 1 else "^%d" % e)
                  for (b, r, cc), e in mono]
            parts.append("(%s)%s" % (c.render(),
                                     "*" + "*".join(vs) if vs else ""))
        return " + ".join(parts)

    def __repr__(self):
        n = len(self.terms)
        return "MatrixPolynomial<%d terms, degree %d>" % (n, self.degree())


def substitute_linear(P, action, a, blocks=None):
    """Apply a linear change of variables x -> a.x on matrix blocks.

    action is one of:
      "left_transpose": x  ->  t(a) x   (so (a.P)(x) = P(t(a) x))
      "left":           x  ->  a x
      "right":          x  ->  x a
    `a` is a RationalMatrix; `blocks` limits which blocks transform
    (default: every block occurring in P).
    """
    if blocks is None:
        blocks = sorted(P.blocks())
    mapping = {}
    for block in blocks:
        if action in ("left", "left_transpose"):
            rows = a.rows
            cols = P.max_col(block)
            for r in range(1, rows + 1):
                for c in range(1, cols + 1):
                    img = MatrixPolynomial.zero()
                    for s in range(1, rows + 1):
                        coef = a[s - 1, r - 1] if action == "left_transpose" \
                            else a[r - 1, s - 1]
                        if coef:
                            img = img + MatrixPolynomial.variable(
                                block, s, c) * coef
                    mapping[(block, r, c)] = img
        elif action == "right":
            cols = a.rows
            rows = set(r for m in P.terms for (b, r, _c), _e in m
                       if b == block)
            for r in rows:
                for c in range(1, cols + 1):
                    img = MatrixPolynomial.zero()
                    for s in range(1, cols + 1):
                        coef = a[s - 1, c - 1]
                        if coef:
                            img = img + MatrixPolynomial.variable(
                                block, r, s) * coef
                    mapping[(block, r, c)] = img
        else:
            raise ValueError("unknown action %r" % (action,))
    return P.substitute(mapping)


def delta_ij(P, i, j, block, ncols=None):
    """Pluri-harmonic Laplacian sum_r d^2/dx[i,r] dx[j,r] on one block."""
    if ncols is None:
        ncols = P.max_col(block)
    out = MatrixPolynomial.zero()
    for r in range(1, ncols + 1):
        out = out + P.diff((block, i, r)).diff((block, j, r))
    return out


def poly_matrix_det(M):
    """Determinant of a small square matrix of polynomials (Leibniz)."""
    n = len(M)
    out = MatrixPolynomial.zero()
    for perm in permutations(range(n)):
        sign = _perm_sign(perm)
        term = MatrixPolynomial.one()
        for i in range(n):
            term = term * M[i][perm[i]]
        out = out + (term if sign > 0 else -term)
    return out


def leading_minor(M, j):
    """Determinant of the upper-left j x j corner of a polynomial matrix."""
    return poly_matrix_det([row[:j] for row in M[:j]])


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        ln = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            ln += 1
        if ln % 2 == 0:
            sign = -sign
    return sign


# ---------------------------------------------------------------------------
# exact linear solving
# ---------------------------------------------------------------------------

class LinearSolution:
    """Result of an exact linear solve A x = b over the Gaussian rationals."""

    def __init__(self, consistent, particular, nullspace, rank,
                 failing_row=None):
        self.consistent = consistent
        self.particular = particular
        self.nullspace = nullspace
        self.rank = rank
        self.failing_row = failing_row


def solve_linear_exact(rows, rhs, ncols):
    """Solve a sparse linear system exactly.

    rows: list of dicts {col_index: QI}; rhs: list of QI.  Returns a
    LinearSolution with a particular solution and nullspace basis, or an
    inconsistency certificate (index of a failing row).
    """
    work = [(dict(r), QI.coerce(b), idx)
            for idx, (r, b) in enumerate(zip(rows, rhs))]
    pivots = []  # (col, row dict, rhs)
    pivot_cols = set()
    for r, b, idx in work:
        r = dict(r)
        for col, prow, pb in pivots:
            if col in r:
                f = r.pop(col)
                for c2, v in prow.items():
                    if c2 == col:
                        continue
                    nv = r.get(c2, QI_ZERO) - f * v
                    if nv:
                        r[c2] = nv
                    elif c2 in r:
                        del r[c2]
                b = b - f * pb
        if not r:
            if b:
                return LinearSolution(False, None, None, len(pivots),
                                      failing_row=idx)
            continue
        col = min(r)
        inv = r[col].inv()
        r = {c: v * inv for c, v in r.items()}
        b = b * inv
        pivots.append((col, r, b))
        pivot_cols.add(col)
    # back substitution: eliminate pivot columns from earlier rows
    for i in range(len(pivots) - 1, -1, -1):
        col, row, b = pivots[i]
        for j in range(i):
            cj, rj, bj = pivots[j]
            if col in rj:
                f = rj.pop(col)
                for c2, v in row.items():
                    if c2 == col:
                        continue
                    nv = rj.get(c2, QI_ZERO) - f * v
                    if nv:
                        rj[c2] = nv
                    elif c2 in rj:
                        del rj[c2]
                pivots[j] = (cj, rj, bj - f * b)
    particular = [QI_ZERO] * ncols
    for col, row, b in pivots:
        particular[col] = b
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    nullspace = []
    for fc in free_cols:
        vec = [QI_ZERO] * ncols
        vec[fc] = QI_ONE
        for col, row, _b in pivots:
            vec[col] = -row.get(fc, QI_ZERO)
        nullspace.append(vec)
    return LinearSolution(True, particular, nullspace, len(pivots))
