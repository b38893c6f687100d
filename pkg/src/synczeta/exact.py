"""Exact arithmetic: integer/rational polynomials, truncated power series,
rational functions, linear recurrences, Pade reconstruction and a few
integer matrix routines.

Polynomials are plain tuples of coefficients in ascending degree order
(constant term first) with trailing zeros stripped; the zero polynomial is
the empty tuple.  Coefficients are ``int`` or ``Fraction``.  Nothing in this
module touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Optional, Sequence

from .errors import ConstantTermNonzero, NeedMoreTerms, NotMonic, ShapeMismatch

DEFAULT_ORDER = 64
VERIFY_MARGIN = 8


# ---------------------------------------------------------------------------
# integers
# ---------------------------------------------------------------------------

def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of ``n >= 1`` by trial division, as (p, k) pairs."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == [(n, 1)]


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    f = factorize(n)
    if any(k > 1 for _, k in f):
        return 0
    return -1 if len(f) % 2 else 1


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _canon(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

def poly_trim(p: Sequence) -> tuple:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(_canon(c) for c in p)


def degree(p: Sequence) -> int:
    """Degree of a trimmed polynomial; -1 for the zero polynomial."""
    return len(poly_trim(p)) - 1


def poly_add(a: Sequence, b: Sequence) -> tuple:
    n = max(len(a), len(b))
    return poly_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def poly_scale(a: Sequence, c) -> tuple:
    return poly_trim([c * x for x in a])


def poly_sub(a: Sequence, b: Sequence) -> tuple:
    return poly_add(a, poly_scale(b, -1))


def poly_mul(a: Sequence, b: Sequence) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return poly_trim(out)


def poly_pow(a: Sequence, k: int) -> tuple:
    out: tuple = (1,)
    for _ in range(k):
        out = poly_mul(out, a)
    return out


def poly_divmod(a: Sequence, b: Sequence) -> tuple[tuple, tuple]:
    """Euclidean division over the rationals."""
    a, b = poly_trim(a), poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(x) for x in a]
    db = len(b) - 1
    lead = Fraction(b[-1])
    quot = [Fraction(0)] * max(len(a) - db, 0)
    for i in range(len(a) - 1 - db, -1, -1):
        c = rem[i + db] / lead
        quot[i] = c
        if c:
            for j, y in enumerate(b):
                rem[i + j] -= c * y
    return poly_trim(quot), poly_trim(rem[:db])


def poly_divides(d: Sequence, a: Sequence) -> bool:
    return not poly_divmod(a, d)[1]


def poly_exact_div(a: Sequence, b: Sequence) -> tuple:
    q, r = poly_divmod(a, b)
    if r:
        raise ArithmeticError("polynomial division is not exact")
    return q


def poly_monic(a: Sequence) -> tuple:
    a = poly_trim(a)
    return poly_scale(a, Fraction(1) / Fraction(a[-1])) if a else ()


def poly_gcd(a: Sequence, b: Sequence) -> tuple:
    """Monic gcd over the rationals (``()`` if both are zero)."""
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return poly_monic(a)


def poly_primitive(a: Sequence) -> tuple:
    """Integer multiple of ``a`` with coprime coefficients and positive lead."""
    a = poly_trim(a)
    if not a:
        return ()
    den = reduce(lcm, (Fraction(x).denominator for x in a), 1)
    ints = [int(Fraction(x) * den) for x in a]
    g = reduce(gcd, ints, 0)
    if ints[-1] < 0:
        g = -g
    return tuple(x // g for x in ints)


def poly_eval(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_deriv(p: Sequence) -> tuple:
    return poly_trim([i * c for i, c in enumerate(p)][1:])


def poly_reverse(p: Sequence) -> tuple:
    """``z**deg(p) * p(1/z)``; maps 1 - lam*z to z - lam."""
    p = poly_trim(p)
    return poly_trim(p[::-1])


def squarefree_decomposition(p: Sequence) -> list[tuple[tuple, int]]:
    """Yun's algorithm: p = c * prod f_i**i with primitive squarefree f_i."""
    p = poly_trim(p)
    if len(p) <= 1:
        return []
    out = []
    a = poly_monic(p)
    b = poly_deriv(a)
    c = poly_gcd(a, b)
    w = poly_exact_div(a, c)
    y = poly_exact_div(b, c)
    z = poly_sub(y, poly_deriv(w))
    i = 1
    while degree(w) > 0:
        g = poly_gcd(w, z)
        if degree(g) > 0:
            out.append((poly_primitive(g), i))
        w = poly_exact_div(w, g)
        y = poly_exact_div(z, g)
        z = poly_sub(y, poly_deriv(w))
        i += 1
    return out


def squarefree_part(p: Sequence) -> tuple:
    return poly_primitive(reduce(poly_mul, (f for f, _ in squarefree_decomposition(p)), (1,)))


# ---------------------------------------------------------------------------
# power series
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PowerSeries:
    """Truncated series c_0 + c_1 z + ... + c_N z^N, exact through order N."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("a power series carries at least its constant term")

    @classmethod
    def zero(cls, order: int) -> "PowerSeries":
        return cls((0,) * (order + 1))

    @classmethod
    def from_poly(cls, p: Sequence, order: int) -> "PowerSeries":
        return cls(tuple(p[i] if i < len(p) else 0 for i in range(order + 1)))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def _pair(self, other):
        n = min(self.order, other.order)
        return self.coeffs[: n + 1], other.coeffs[: n + 1]

    def __add__(self, other):
        a, b = self._pair(other)
        return PowerSeries(tuple(x + y for x, y in zip(a, b)))

    def __sub__(self, other):
        a, b = self._pair(other)
        return PowerSeries(tuple(x - y for x, y in zip(a, b)))

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return PowerSeries(tuple(other * x for x in self.coeffs))
        a, b = self._pair(other)
        n = len(a)
        out = [Fraction(0)] * n
        for i, x in enumerate(a):
            if x:
                for j in range(n - i):
                    out[i + j] += x * b[j]
        return PowerSeries(tuple(out))

    __rmul__ = __mul__

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise NeedMoreTerms(order + 1, len(self.coeffs))
        return PowerSeries(self.coeffs[: order + 1])

    def derivative(self) -> "PowerSeries":
        """Derivative; loses one order of precision."""
        if self.order == 0:
            return PowerSeries((0,))
        return PowerSeries(tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    def integral(self) -> "PowerSeries":
        """Antiderivative with zero constant; gains one order."""
        return PowerSeries((0,) + tuple(c / (i + 1) for i, c in enumerate(self.coeffs)))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)


def series_exp(s: PowerSeries) -> PowerSeries:
    """exp(s) for s(0) = 0, via n f_n = sum_k k s_k f_{n-k}."""
    if s[0] != 0:
        raise ConstantTermNonzero("series_exp needs a zero constant term")
    n_max = s.order
    f = [Fraction(1)] + [Fraction(0)] * n_max
    ks = [k * s[k] for k in range(n_max + 1)]
    for n in range(1, n_max + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            if ks[k]:
                acc += ks[k] * f[n - k]
        f[n] = acc / n
    return PowerSeries(tuple(f))


def series_log(s: PowerSeries) -> PowerSeries:
    """log(s) for s(0) = 1; inverse of :func:`series_exp`."""
    if s[0] != 1:
        raise ValueError("series_log needs constant term 1")
    n_max = s.order
    g = [Fraction(0)] * (n_max + 1)
    for n in range(1, n_max + 1):
        acc = n * s[n]
        for k in range(1, n):
            if g[k]:
                acc -= k * g[k] * s[n - k]
        g[n] = acc / n
    return PowerSeries(tuple(g))


def series_pow(s: PowerSeries, a) -> PowerSeries:
    """s**a for s(0) = 1 and rational exponent a (from s f' = a s' f)."""
    if s[0] != 1:
        raise ValueError("series_pow needs constant term 1")
    a = Fraction(a)
    n_max = s.order
    f = [Fraction(1)] + [Fraction(0)] * n_max
    for n in range(1, n_max + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            if s[k]:
                acc += (a * k - (n - k)) * s[k] * f[n - k]
        f[n] = acc / n
    return PowerSeries(tuple(f))


def log_series_from_counts(counts: Sequence[int], order: int) -> PowerSeries:
    """sum_{n<=order} c_n z^n / n with counts[0] = c_1."""
    if len(counts) < order:
        raise NeedMoreTerms(order, len(counts))
    return PowerSeries((0,) + tuple(Fraction(counts[n - 1], n) for n in range(1, order + 1)))


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalFunction:
    """numerator/denominator with coprime integer polynomials.

    Build through :meth:`make`, which cancels the polynomial gcd, clears
    denominators, makes the joint content 1 and the denominator's constant
    term positive.  When the expansion has integer coefficients this is the
    form with ``den(0) == 1``.
    """

    num: tuple
    den: tuple

    @classmethod
    def make(cls, num: Sequence, den: Sequence) -> "RationalFunction":
        num, den = poly_trim(num), poly_trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if den[0] == 0:
            raise ValueError("denominator vanishes at 0; no power series expansion")
        g = poly_gcd(num, den) if num else (1,)
        if degree(g) > 0:
            num, den = poly_exact_div(num, g), poly_exact_div(den, g)
        if not num:
            return cls((), (1,))
        scale = reduce(lcm, (Fraction(x).denominator for x in num + den), 1)
        ni = [int(Fraction(x) * scale) for x in num]
        di = [int(Fraction(x) * scale) for x in den]
        c = reduce(gcd, ni + di, 0)
        if di[0] < 0:
            c = -c
        return cls(tuple(x // c for x in ni), tuple(x // c for x in di))

    @classmethod
    def constant(cls, c=1) -> "RationalFunction":
        return cls.make((c,), (1,))

    def expand(self, order: int = DEFAULT_ORDER) -> PowerSeries:
        d0 = Fraction(self.den[0])
        f = [Fraction(0)] * (order + 1)
        for n in range(order + 1):
            acc = Fraction(self.num[n]) if n < len(self.num) else Fraction(0)
            for k in range(1, min(n, len(self.den) - 1) + 1):
                acc -= self.den[k] * f[n - k]
            f[n] = acc / d0
        return PowerSeries(tuple(f))

    def __call__(self, x):
        d = poly_eval(self.den, x)
        n = poly_eval(self.num, x)
        if isinstance(d, int) and isinstance(n, int):
            return Fraction(n, d)
        return n / d

    def __mul__(self, other):
        return RationalFunction.make(poly_mul(self.num, other.num), poly_mul(self.den, other.den))

    def __truediv__(self, other):
        return RationalFunction.make(poly_mul(self.num, other.den), poly_mul(self.den, other.num))

    def __pow__(self, k: int):
        if k < 0:
            return RationalFunction.make(poly_pow(self.den, -k), poly_pow(self.num, -k))
        return RationalFunction.make(poly_pow(self.num, k), poly_pow(self.den, k))

    def same_function(self, other) -> bool:
        return poly_mul(self.num, other.den) == poly_mul(other.num, self.den)

    def __str__(self):
        return f"({_poly_str(self.num)}) / ({_poly_str(self.den)})"


def _poly_str(p) -> str:
    if not p:
        return "0"
    terms = []
    for i, c in enumerate(p):
        if c == 0:
            continue
        terms.append(str(c) if i == 0 else f"{c}*z" if i == 1 else f"{c}*z^{i}")
    return " + ".join(terms)


# ---------------------------------------------------------------------------
# exact linear algebra over Q
# ---------------------------------------------------------------------------

def solve_linear(a: Sequence[Sequence], b: Sequence) -> Optional[list]:
    """Some solution of a x = b over Q (free variables set to 0), or None."""
    rows = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    ncols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    if any(row[-1] != 0 for row in rows[r:]):
        return None
    x = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        x[col] = rows[i][-1]
    return x


def find_recurrence(values: Sequence, max_order: int, margin: int = VERIFY_MARGIN) -> Optional[tuple]:
    """Characteristic polynomial of the shortest linear recurrence.

    Runs Berlekamp-Massey over Q on all supplied values, so the recurrence
    reproduces every value including the ``margin`` extra ones.  The result
    is an integer polynomial (ascending coefficients, positive leading
    coefficient, content 1); ``(1,)`` for the zero sequence.  Returns None when
    no recurrence of order <= max_order fits.
    """
    need = 2 * max_order + margin
    if len(values) < need:
        raise NeedMoreTerms(need, len(values))
    seq = [Fraction(v) for v in values]
    conn = [Fraction(1)]
    prev = [Fraction(1)]
    length, shift, last_d = 0, 1, Fraction(1)
    for n, v in enumerate(seq):
        d = v + sum(conn[i] * seq[n - i] for i in range(1, min(length, len(conn) - 1) + 1))
        if d == 0:
            shift += 1
            continue
        coef = d / last_d
        upd = conn + [Fraction(0)] * max(0, len(prev) + shift - len(conn))
        for i, x in enumerate(prev):
            upd[i + shift] -= coef * x
        if 2 * length <= n:
            prev, conn = conn, upd
            length, last_d, shift = n + 1 - length, d, 1
        else:
            conn = upd
            shift += 1
    if length > max_order:
        return None
    conn = conn + [Fraction(0)] * (length + 1 - len(conn))
    return poly_primitive(conn[: length + 1][::-1])


def pade_reconstruct(s: PowerSeries, deg_num: int, deg_den: int,
                     margin: int = VERIFY_MARGIN) -> Optional[RationalFunction]:
    """Rational function of the given degree bounds matching all of ``s``.

    The candidate comes from the (deg_num, deg_den) Pade equations; it is
    accepted only if it reproduces every coefficient through ``s.order``.
    """
    need = deg_num + deg_den + margin
    if s.order < need:
        raise NeedMoreTerms(need + 1, len(s))
    m, n = deg_den, deg_num

    def c(i):
        return s[i] if i >= 0 else 0

    if m:
        a = [[c(k - j) for j in range(1, m + 1)] for k in range(n + 1, n + m + 1)]
        b = [-c(k) for k in range(n + 1, n + m + 1)]
        sol = solve_linear(a, b)
        if sol is None:
            return None
        q = [Fraction(1)] + sol
    else:
        q = [Fraction(1)]
    qs = [sum(q[j] * c(k - j) for j in range(min(k, m) + 1)) for k in range(s.order + 1)]
    if any(qs[k] != 0 for k in range(n + 1, s.order + 1)):
        return None
    return RationalFunction.make(qs[: n + 1], q)


# ---------------------------------------------------------------------------
# matrices (tuples of row tuples)
# ---------------------------------------------------------------------------

def as_matrix(m) -> tuple:
    rows = tuple(tuple(r) for r in m)
    if any(len(r) != len(rows) for r in rows):
        raise ShapeMismatch("matrix is not square")
    return rows


def identity(n: int) -> tuple:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_mul(a, b) -> tuple:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def mat_add(a, b) -> tuple:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_sub(a, b) -> tuple:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_scale(a, c) -> tuple:
    return tuple(tuple(c * x for x in r) for r in a)


def trace(a) -> int:
    return sum(a[i][i] for i in range(len(a)))


def mat_powers(a, n_max: int):
    """Yield a, a^2, ..., a^n_max by repeated exact multiplication."""
    p = a
    for _ in range(n_max):
        yield p
        p = mat_mul(p, a)


def det(a) -> int:
    """Exact determinant: Bareiss for integers, elimination for rationals."""
    n = len(a)
    if n == 0:
        return 1
    if not all(isinstance(x, int) for r in a for x in r):
        m = [[Fraction(x) for x in r] for r in a]
        out = Fraction(1)
        for k in range(n):
            piv = next((i for i in range(k, n) if m[i][k] != 0), None)
            if piv is None:
                return 0
            if piv != k:
                m[k], m[piv] = m[piv], m[k]
                out = -out
            out *= m[k][k]
            for i in range(k + 1, n):
                f = m[i][k] / m[k][k]
                if f:
                    m[i] = [x - f * y for x, y in zip(m[i], m[k])]
        return _canon(out)
    m = [list(r) for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def charpoly(a) -> tuple:
    """det(zI - a) by Faddeev-LeVerrier, ascending coefficients, monic."""
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = tuple(tuple(0 for _ in range(n)) for _ in range(n))
    for k in range(1, n + 1):
        m = mat_add(mat_mul(a, m), mat_scale(identity(n), coeffs[n - k + 1]))
        coeffs[n - k] = -Fraction(trace(mat_mul(a, m))) / k
    return tuple(_canon(c) for c in coeffs)


def det_one_minus_z(a) -> tuple:
    """det(I - a z) as an ascending polynomial (reversed characteristic poly)."""
    cp = charpoly(a)
    return poly_trim(cp[::-1])


def companion(p: Sequence) -> tuple:
    """Integer matrix with characteristic polynomial ``p`` (monic, ascending).

    Ones on the subdiagonal and the negated low coefficients in the last
    column.
    """
    p = poly_trim(p)
    if len(p) < 2:
        raise NotMonic("companion needs degree >= 1")
    if p[-1] != 1:
        raise NotMonic(f"leading coefficient is {p[-1]}, not 1")
    n = len(p) - 1
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        if i > 0:
            rows[i][i - 1] = 1
        rows[i][n - 1] = -p[i]
    return tuple(tuple(r) for r in rows)


def exterior_power(a, k: int) -> tuple:
    """k-th exterior power: matrix of k x k minors in lexicographic order."""
    from itertools import combinations

    n = len(a)
    if k == 0:
        return ((1,),)
    idx = list(combinations(range(n), k))
    return tuple(
        tuple(det([[a[i][j] for j in cols] for i in rows]) for cols in idx)
        for rows in idx
    )
