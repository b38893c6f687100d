"""p-adic valuations and norms of rationals, p-adic logarithm norms, the
constant C in 1/n <= C |xi^n - 1|_p, and the rational / natural-boundary
decision for rank-one S-integer pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import log

from .errors import NotTame, RootOfUnity, ZeroHasInfiniteOrd


def _int_ord(n: int, p: int) -> int:
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def ord_p(q, p: int) -> int:
    """Exponent of p in the nonzero rational q."""
    q = Fraction(q)
    if q == 0:
        raise ZeroHasInfiniteOrd("ord_p(0) is infinite")
    return _int_ord(q.numerator, p) - _int_ord(q.denominator, p)


def padic_norm(q, p: int) -> Fraction:
    """|q|_p = p^(-ord_p q), with |0|_p = 0."""
    q = Fraction(q)
    if q == 0:
        return Fraction(0)
    return Fraction(p) ** -ord_p(q, p)


@dataclass(frozen=True)
class PadicValuation:
    prime: int
    ord: float  # math.inf for zero

    @classmethod
    def of(cls, q, p: int) -> "PadicValuation":
        q = Fraction(q)
        return cls(p, float("inf") if q == 0 else ord_p(q, p))

    @property
    def norm_log(self) -> float:
        """log_p |q|_p, i.e. -ord."""
        return -self.ord

    @property
    def norm(self) -> Fraction:
        return Fraction(0) if self.ord == float("inf") else Fraction(self.prime) ** -int(self.ord)


def _check_unit(xi: Fraction, p: int) -> None:
    if xi in (1, -1):
        raise RootOfUnity(f"{xi} is a root of unity")
    if xi == 0 or ord_p(xi, p) != 0:
        raise ValueError(f"|{xi}|_{p} must equal 1")


def log_exponent(xi, p: int) -> int:
    """Smallest e >= 1 with |xi^e - 1|_p < p^(-1/(p-1)).

    For odd p this is the multiplicative order of xi mod p; for p = 2 it is
    1 or 2 (xi^2 = 1 mod 8 for every odd xi).
    """
    xi = Fraction(xi)
    _check_unit(xi, p)
    need = 2 if p == 2 else 1
    e, y = 1, xi
    while y == 1 or ord_p(y - 1, p) < need:
        e += 1
        y *= xi
    return e


def padic_log_norm(xi, p: int) -> Fraction:
    """|log_p xi|_p for a rational p-adic unit xi other than +-1.

    With y = xi^e - 1 inside the disc |y|_p < p^(-1/(p-1)) the first term of
    log(1 + y) strictly dominates every later one, so |log xi^e|_p = |y|_p
    exactly; then log xi = log(xi^e) / e.
    """
    xi = Fraction(xi)
    e = log_exponent(xi, p)
    return padic_norm(xi ** e - 1, p) / padic_norm(e, p)


def lemma_constant(xi, p: int, degree: int = 1) -> Fraction:
    """C = max(1, M*/|log_p xi|_p), M* = max_{1<=m<=k/ln p} m p^(-(m-1)/k).

    Only rational xi (k = 1) are supported, where M* is attained at m = 1
    for every prime and equals 1.
    """
    if degree != 1:
        raise NotImplementedError("only rational xi (degree 1) are supported")
    xi = Fraction(xi)
    m_star = max(m * Fraction(p) ** -(m - 1) for m in range(1, max(1, int(degree / log(p))) + 1))
    return max(Fraction(1), m_star / padic_log_norm(xi, p))


@dataclass(frozen=True)
class BoundaryVerdict:
    verdict: str  # "Rational" or "NaturalBoundary"
    witnesses: tuple = ()  # (p, reason) pairs

    def __post_init__(self):
        if self.verdict == "NaturalBoundary" and not self.witnesses:
            raise ValueError("a natural boundary verdict needs a witness prime")


def boundary_decide(model) -> BoundaryVerdict:
    """Decide rational vs natural boundary for an S-integer pair (a, b, S).

    The zeta function has a natural boundary exactly when some p in S sees
    a and b with the same p-adic norm (and a/b is not +-1).
    """
    a, b = model.a, model.b
    if abs(a) == abs(b):
        raise NotTame(2 if a == -b else 1, "pair with |a| = |b| is not synchronously tame")
    ratio = Fraction(a, b)
    witnesses = []
    for p in model.primes:
        if ord_p(a, p) == ord_p(b, p) and ratio not in (1, -1):
            witnesses.append((p, f"|{a}|_{p} = |{b}|_{p} = {padic_norm(a, p)}"))
    if witnesses:
        return BoundaryVerdict("NaturalBoundary", tuple(witnesses))
    return BoundaryVerdict("Rational")


def growth_exact_s_integer(model) -> Fraction:
    """Exact growth rate of an S-integer pair with |a| != |b|.

    Product over p in S of max(|a|_p, |b|_p) where the norms differ and
    |b|_p where they agree, times max(|a|, |b|).
    """
    a, b = model.a, model.b
    if abs(a) == abs(b):
        raise NotTame(1, "pair with |a| = |b| is not synchronously tame")
    out = Fraction(max(abs(a), abs(b)))
    for p in model.primes:
        na, nb = padic_norm(a, p), padic_norm(b, p)
        out *= max(na, nb) if na != nb else nb
    return out
