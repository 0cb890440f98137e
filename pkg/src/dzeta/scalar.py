"""Exact scalars in Q(i) extended by half-integer powers of 2 and pi.

Every quantity produced by the integral formulas in this package lives in
the ring Q(i)[2^(1/2), 2^(-1/2), pi^(1/2), pi^(-1/2)].  A scalar is stored
as a finite sum of terms

    (p/q + r/s*i) * 2^(a/2) * pi^(b/2)

with integer half-exponents a, b.  The representation is canonical: the
Gaussian-rational coefficient of each term is 2-free (the full power of 2
is pushed into the 2^(a/2) factor) and zero coefficients are dropped, so
equality of values is equality of term dictionaries.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath


def _v2(f):
    """2-adic valuation of a nonzero Fraction."""
    n, d = f.numerator, f.denominator
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    while d % 2 == 0:
        d //= 2
        v -= 1
    return v


class QI:
    """A Gaussian rational re + im*i with Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    @staticmethod
    def coerce(x):
        if isinstance(x, QI):
            return x
        if isinstance(x, (int, Fraction)):
            return QI(x)
        raise TypeError("cannot coerce %r to QI" % (x,))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = QI.coerce(other)
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __add__(self, other):
        other = QI.coerce(other)
        return QI(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = QI.coerce(other)
        return QI(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return QI.coerce(other) - self

    def __mul__(self, other):
        other = QI.coerce(other)
        return QI(self.re * other.re - self.im * other.im,
                  self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def conj(self):
        return QI(self.re, -self.im)

    def norm2(self):
        return self.re * self.re + self.im * self.im

    def inv(self):
        n = self.norm2()
        if not n:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return QI(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * QI.coerce(other).inv()

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        out = QI(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def is_rational(self):
        return not self.im

    def two_valuation(self):
        """min 2-adic valuation of the nonzero components; None if zero."""
        vals = [_v2(c) for c in (self.re, self.im) if c]
        return min(vals) if vals else None

    def scale2(self, v):
        """Multiply by 2^v for an integer v."""
        f = Fraction(2) ** v
        return QI(self.re * f, self.im * f)

    def __repr__(self):
        return "QI(%s, %s)" % (self.re, self.im)

    def render(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return "%s*i" % (self.im,)
        sep = "+" if self.im > 0 else "-"
        return "(%s %s %s*i)" % (self.re, sep, abs(self.im))


QI_ZERO = QI(0)
QI_ONE = QI(1)
QI_I = QI(0, 1)


def _normalize(items):
    """Merge (exponent, coefficient) pairs into canonical form.

    Exponent keys are (e2, epi) pairs of half-integer counts.  Since
    2^(e2/2) is rational for even e2, two terms are linearly dependent
    whenever their e2 differ by an even amount, so terms are merged by
    (parity of e2, epi) and the full power of 2 is then extracted from
    the coefficient, which makes the representation unique.
    """
    groups = {}
    for (e2, epi), c in items:
        if not c:
            continue
        key = (e2 & 1, epi)
        if key in groups:
            e0, c0 = groups[key]
            e = min(e0, e2)
            s = c0.scale2((e0 - e) // 2) + c.scale2((e2 - e) // 2)
            if s:
                groups[key] = (e, s)
            else:
                del groups[key]
        else:
            groups[key] = (e2, c)
    acc = {}
    for (_par, epi), (e2, c) in groups.items():
        v = c.two_valuation()
        if v:
            c = c.scale2(-v)
            e2 += 2 * v
        acc[(e2, epi)] = c
    return acc


class ExactScalar:
    """Element of Q(i)[2^(±1/2), pi^(±1/2)] in canonical form."""

    __slots__ = ("terms",)

    def __init__(self, terms=None, _raw=False):
        if terms is None:
            self.terms = {}
        elif _raw:
            self.terms = terms
        else:
            self.terms = _normalize(terms.items() if isinstance(terms, dict)
                                    else terms)

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero():
        return ExactScalar()

    @staticmethod
    def one():
        return ExactScalar([((0, 0), QI_ONE)])

    @staticmethod
    def from_qi(c):
        return ExactScalar([((0, 0), QI.coerce(c))])

    @staticmethod
    def from_rational(p, q=1):
        return ExactScalar([((0, 0), QI(Fraction(p, q)))])

    @staticmethod
    def i():
        return ExactScalar([((0, 0), QI_I)])

    @staticmethod
    def i_power(e):
        e %= 4
        return ExactScalar([((0, 0), (QI_I ** e))])

    @staticmethod
    def two_pow(halves):
        """2^(halves/2)."""
        return ExactScalar([((halves, 0), QI_ONE)])

    @staticmethod
    def pi_pow(halves):
        """pi^(halves/2)."""
        return ExactScalar([((0, halves), QI_ONE)])

    @staticmethod
    def coerce(x):
        if isinstance(x, ExactScalar):
            return x
        if isinstance(x, (int, Fraction, QI)):
            return ExactScalar.from_qi(QI.coerce(x))
        raise TypeError("cannot coerce %r to ExactScalar" % (x,))

    # -- predicates -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        try:
            other = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((k, v) for k, v in self.terms.items()))

    def is_gaussian_rational(self):
        return all(epi == 0 and e2 % 2 == 0 for (e2, epi) in self.terms)

    def as_qi(self):
        """The value as a Gaussian rational; error if irrational."""
        if not self.is_gaussian_rational():
            raise ValueError("scalar is not a Gaussian rational: %s"
                             % self.render())
        out = QI_ZERO
        for (e2, _), c in self.terms.items():
            out = out + c.scale2(e2 // 2)
        return out

    # -- ring operations ------------------------------------------------

    def __add__(self, other):
        other = ExactScalar.coerce(other)
        if len(self.terms) == 1 and len(other.terms) == 1:
            (ka, ac), = self.terms.items()
            (kb, bc), = other.terms.items()
            if ka == kb:
                c = ac + bc
                if not c:
                    return ExactScalar()
                v = c.two_valuation()
                if v:
                    c = c.scale2(-v)
                return ExactScalar({(ka[0] + 2 * v, ka[1]): c}, _raw=True)
        items = list(self.terms.items()) + list(other.terms.items())
        return ExactScalar(items)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar({k: -v for k, v in self.terms.items()}, _raw=True)

    def __sub__(self, other):
        return self + (-ExactScalar.coerce(other))

    def __rsub__(self, other):
        return ExactScalar.coerce(other) - self

    def __mul__(self, other):
        other = ExactScalar.coerce(other)
        if len(self.terms) == 1 and len(other.terms) == 1:
            ((a2, api), ac), = self.terms.items()
            ((b2, bpi), bc), = other.terms.items()
            c = ac * bc
            if not c:
                return ExactScalar()
            v = c.two_valuation()
            if v:
                c = c.scale2(-v)
            return ExactScalar({(a2 + b2 + 2 * v, api + bpi): c}, _raw=True)
        items = []
        for (a2, api), ac in self.terms.items():
            for (b2, bpi), bc in other.terms.items():
                items.append(((a2 + b2, api + bpi), ac * bc))
        return ExactScalar(items)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        out = ExactScalar.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def conjugate(self):
        return ExactScalar({k: v.conj() for k, v in self.terms.items()},
                           _raw=True)

    def inverse(self):
        """Inverse of a single-term scalar (monomial in sqrt2, sqrt pi)."""
        if len(self.terms) != 1:
            raise ValueError("inverse only defined for single-term scalars, "
                             "got %s" % self.render())
        ((e2, epi), c), = self.terms.items()
        return ExactScalar([((-e2, -epi), c.inv())])

    def __truediv__(self, other):
        return self * ExactScalar.coerce(other).inverse()

    # -- output ---------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items())

    def render(self):
        if not self.terms:
            return "0"
        parts = []
        for (e2, epi), c in self.sorted_terms():
            factors = [c.render()]
            if e2:
                factors.append("2^(%s)" % _fmt_half(e2))
            if epi:
                factors.append("pi^(%s)" % _fmt_half(epi))
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return "ExactScalar<%s>" % self.render()

    def to_mpc(self, precision=30):
        """Complex floating approximation at `precision` significant digits."""
        with mpmath.workdps(precision + 15):
            total = mpmath.mpc(0)
            for (e2, epi), c in self.terms.items():
                mag = mpmath.power(2, mpmath.mpf(e2) / 2) * \
                    mpmath.power(mpmath.pi, mpmath.mpf(epi) / 2)
                coeff = mpmath.mpc(_to_mpf(c.re), _to_mpf(c.im))
                total += coeff * mag
            return +total

    def to_decimal(self, precision=30):
        """Deterministic decimal rendering 're+imj' style string."""
        if not self.terms:
            return "0"
        val = self.to_mpc(precision)
        with mpmath.workdps(precision):
            re = mpmath.nstr(+val.real, precision, strip_zeros=False)
            im = mpmath.nstr(+val.imag, precision, strip_zeros=False)
        if all(c.im == 0 for c in self.terms.values()):
            return re
        return "%s %s %sj" % (re, "+" if not im.startswith("-") else "-",
                              im.lstrip("-"))


def _to_mpf(f):
    return mpmath.mpf(f.numerator) / f.denominator


def _fmt_half(h):
    return str(h // 2) if h % 2 == 0 else "%d/2" % h


ES_ZERO = ExactScalar.zero()
ES_ONE = ExactScalar.one()
ES_I = ExactScalar.i()


def double_factorial(n):
    """(n)!! for n >= -1."""
    if n < -1:
        raise ValueError("double factorial undefined for %d" % n)
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def gamma_exact(a):
    """Gamma(a) for positive integer or half-integer a, as an ExactScalar.

    Gamma(m) = (m-1)! and Gamma(m + 1/2) carries a single sqrt(pi).
    """
    a = Fraction(a)
    if a <= 0:
        raise ValueError("gamma_exact requires a positive argument, got %s" % a)
    if a.denominator == 1:
        out = 1
        for j in range(2, a.numerator):
            out *= j
        return ExactScalar.from_rational(out)
    if a.denominator == 2:
        # walk down to Gamma(1/2) = sqrt(pi)
        coeff = Fraction(1)
        x = a
        while x > Fraction(1, 2):
            x -= 1
            coeff *= x
        return ExactScalar([((0, 1), QI(coeff))])
    raise ValueError("gamma_exact only supports integer and half-integer "
                     "arguments, got %s" % a)
