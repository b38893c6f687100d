"""Dynamical models and their exact synchronization counts.

A count c_n is the number of points x with alpha^n(x) = beta^n(x).  Each
model kind below knows how to produce c_1..c_N exactly; an infinite count
(non-tame index) is stored as ``None`` rather than raised, so the model
layer can still describe non-tame pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence, Union

from . import exact
from .errors import (
    HorizonTooSmall,
    InconsistentSignedSystem,
    InvalidInput,
    NonIntegralCount,
    NotBijective,
    NotTame,
    NotZeroOne,
    ShapeMismatch,
)
from .padic import ord_p


# ---------------------------------------------------------------------------
# model kinds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteMaps:
    """Two self-maps of {0, ..., m-1} given as image arrays."""

    sigma1: tuple
    sigma2: tuple

    def __post_init__(self):
        s1, s2 = tuple(self.sigma1), tuple(self.sigma2)
        object.__setattr__(self, "sigma1", s1)
        object.__setattr__(self, "sigma2", s2)
        m = len(s1)
        if len(s2) != m:
            raise ShapeMismatch("sigma1 and sigma2 act on sets of different size")
        for s in (s1, s2):
            if any(not isinstance(x, int) or not 0 <= x < m for x in s):
                raise InvalidInput("map images must lie in {0..m-1}")

    @property
    def size(self) -> int:
        return len(self.sigma1)

    @property
    def bijective(self) -> bool:
        return all(len(set(s)) == len(s) for s in (self.sigma1, self.sigma2))

    @property
    def commuting(self) -> bool:
        s1, s2 = self.sigma1, self.sigma2
        return all(s1[s2[x]] == s2[s1[x]] for x in range(self.size))


@dataclass(frozen=True)
class CirclePower:
    """z -> z^d_alpha and z -> z^d_beta on the unit circle."""

    d_alpha: int
    d_beta: int


@dataclass(frozen=True)
class ToralPair:
    """Two endomorphisms of the d-torus given by integer matrices."""

    A: tuple
    B: tuple

    def __post_init__(self):
        a, b = exact.as_matrix(self.A), exact.as_matrix(self.B)
        if len(a) != len(b) or not a:
            raise ShapeMismatch("A and B must be square of the same positive size")
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "B", b)


@dataclass(frozen=True)
class SIntegerPair:
    """Multiplication by a and b on the dual of Z[1/S] (a solenoid)."""

    a: int
    b: int
    primes: tuple = ()

    def __post_init__(self):
        ps = tuple(sorted(self.primes))
        if self.a == 0 or self.b == 0:
            raise InvalidInput("a and b must be nonzero")
        if len(set(ps)) != len(ps):
            raise InvalidInput("primes in S must be distinct")
        if any(not exact.is_prime(p) for p in ps):
            raise InvalidInput("S must contain primes only")
        object.__setattr__(self, "primes", ps)


@dataclass(frozen=True)
class Subshift:
    """Subshift of finite type with 0/1 transition matrix A."""

    A: tuple

    def __post_init__(self):
        a = exact.as_matrix(self.A)
        if any(x not in (0, 1) for r in a for x in r):
            raise NotZeroOne("transition matrix entries must be 0 or 1")
        object.__setattr__(self, "A", a)


@dataclass(frozen=True)
class SignedSubshiftSystem:
    """Finitely many subshifts with signs, as (A_i, eps_i) pairs."""

    parts: tuple

    def __post_init__(self):
        parts = tuple((Subshift(a).A, int(e)) for a, e in self.parts)
        if any(e not in (-1, 1) for _, e in parts):
            raise InvalidInput("signs must be +1 or -1")
        object.__setattr__(self, "parts", parts)


@dataclass(frozen=True)
class HomologyData:
    """Induced maps on rational homology, as (degree k, matrix h_k) pairs."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(sorted((int(k), exact.as_matrix(m)) for k, m in self.parts))
        if len({k for k, _ in parts}) != len(parts):
            raise InvalidInput("one matrix per homology degree")
        object.__setattr__(self, "parts", parts)


DynModel = Union[FiniteMaps, CirclePower, ToralPair, SIntegerPair, Subshift,
                 SignedSubshiftSystem, HomologyData]


def torus_homology(f) -> HomologyData:
    """Homology data of the toral endomorphism F: h_k is the k-th exterior power."""
    f = exact.as_matrix(f)
    return HomologyData(tuple((k, exact.exterior_power(f, k)) for k in range(len(f) + 1)))


# ---------------------------------------------------------------------------
# count sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CountSequence:
    """c_1..c_N; ``counts[n-1]`` is c_n, or None where the count is infinite."""

    model: Optional[DynModel]
    counts: tuple
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "counts", tuple(self.counts))
        if self.model is not None and any(c is not None and c < 0 for c in self.counts):
            raise InvalidInput("synchronization counts cannot be negative")

    @classmethod
    def from_values(cls, values: Sequence[int]) -> "CountSequence":
        """A bare sequence with no model behind it (signs unrestricted)."""
        return cls(None, tuple(int(v) for v in values))

    @property
    def n_max(self) -> int:
        return len(self.counts)

    @property
    def tame_flags(self) -> tuple:
        return tuple(c is not None for c in self.counts)

    @property
    def tame(self) -> bool:
        return all(self.tame_flags)

    def require_tame(self, upto: Optional[int] = None) -> list:
        upto = self.n_max if upto is None else upto
        if upto > self.n_max:
            raise HorizonTooSmall(upto, self.n_max)
        for n, c in enumerate(self.counts[:upto], start=1):
            if c is None:
                raise NotTame(n)
        return list(self.counts[:upto])

    def __getitem__(self, n: int):
        """c_n, 1-based."""
        if n < 1:
            raise IndexError("counts are indexed from n = 1")
        return self.counts[n - 1]


def _iterate_maps(s1, s2, n_max):
    p1, p2 = s1, s2
    for _ in range(n_max):
        yield sum(1 for x, y in zip(p1, p2) if x == y)
        p1 = tuple(s1[x] for x in p1)
        p2 = tuple(s2[x] for x in p2)


def counts_finite_maps(sigma1, sigma2, n_max: int) -> CountSequence:
    model = sigma1 if isinstance(sigma1, FiniteMaps) else FiniteMaps(sigma1, sigma2)
    counts = tuple(_iterate_maps(model.sigma1, model.sigma2, n_max))
    return CountSequence(model, counts, {"commuting": model.commuting, "bijective": model.bijective})


def counts_circle_power(d_alpha: int, d_beta: int, n_max: int) -> CountSequence:
    out = []
    for n in range(1, n_max + 1):
        x = d_alpha ** n - d_beta ** n
        out.append(abs(x) if x else None)
    return CountSequence(CirclePower(d_alpha, d_beta), tuple(out))


def counts_toral(A, B, n_max: int) -> CountSequence:
    model = ToralPair(A, B)
    out = []
    for an, bn in zip(exact.mat_powers(model.A, n_max), exact.mat_powers(model.B, n_max)):
        d = exact.det(exact.mat_sub(an, bn))
        out.append(abs(d) if d else None)
    return CountSequence(model, tuple(out))


def smith_diagonal(m) -> list[int]:
    """Elementary divisors of an integer matrix (nonnegative, in order)."""
    a = [list(r) for r in m]
    rows, cols = len(a), len(a[0]) if a else 0
    diag = []
    for t in range(min(rows, cols)):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
            if not entries:
                return diag + [0] * (min(rows, cols) - t)
            _, i, j = min(entries)
            a[t], a[i] = a[i], a[t]
            for r in a:
                r[t], r[j] = r[j], r[t]
            piv = a[t][t]
            for i in range(t + 1, rows):
                q = a[i][t] // piv
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
            for j in range(t + 1, cols):
                q = a[t][j] // piv
                if q:
                    for r in a:
                        r[j] -= q * r[t]
            if any(a[i][t] for i in range(t + 1, rows)) or any(a[t][j] for j in range(t + 1, cols)):
                continue
            bad = next((i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % piv), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        diag.append(abs(a[t][t]))
    return diag


def counts_toral_oracle(A, B, n: int) -> int:
    """#(Z^d / (A^n - B^n) Z^d) via the Smith normal form."""
    model = ToralPair(A, B)
    an = exact.identity(len(model.A))
    bn = an
    for _ in range(n):
        an = exact.mat_mul(an, model.A)
        bn = exact.mat_mul(bn, model.B)
    d = smith_diagonal(exact.mat_sub(an, bn))
    if 0 in d:
        raise NotTame(n)
    out = 1
    for x in d:
        out *= x
    return out


def counts_s_integer(a: int, b: int, primes: Sequence[int], n_max: int) -> CountSequence:
    """|a^n - b^n| times the p-adic norms of a^n - b^n over p in S."""
    model = SIntegerPair(a, b, tuple(primes))
    out = []
    for n in range(1, n_max + 1):
        x = a ** n - b ** n
        if x == 0:
            out.append(None)
            continue
        c = Fraction(abs(x))
        for p in model.primes:
            c /= Fraction(p) ** ord_p(x, p)
        if c.denominator != 1:
            raise NonIntegralCount(f"count {c} at n={n} is not an integer")
        out.append(int(c))
    return CountSequence(model, tuple(out))


def counts_subshift(A, n_max: int) -> CountSequence:
    model = Subshift(A)
    return CountSequence(model, tuple(exact.trace(p) for p in exact.mat_powers(model.A, n_max)))


def counts_signed_system(parts, n_max: int) -> CountSequence:
    model = parts if isinstance(parts, SignedSubshiftSystem) else SignedSubshiftSystem(tuple(parts))
    totals = [0] * n_max
    for a, eps in model.parts:
        for i, p in enumerate(exact.mat_powers(a, n_max)):
            totals[i] += eps * exact.trace(p)
    for n, c in enumerate(totals, start=1):
        if c < 0:
            raise InconsistentSignedSystem(n, c)
    return CountSequence(model, tuple(totals))


def lefschetz_counts(h, n_max: int) -> list[int]:
    """Signed Lefschetz numbers L(h^n) = sum_k (-1)^k tr(h_k^n)."""
    model = h if isinstance(h, HomologyData) else HomologyData(tuple(h))
    totals = [0] * n_max
    for k, m in model.parts:
        sign = -1 if k % 2 else 1
        for i, p in enumerate(exact.mat_powers(m, n_max)):
            totals[i] += sign * exact.trace(p)
    return totals


def generate_counts(model: DynModel, n_max: int) -> CountSequence:
    """Dispatch on the model kind."""
    if isinstance(model, FiniteMaps):
        return counts_finite_maps(model, None, n_max)
    if isinstance(model, CirclePower):
        return counts_circle_power(model.d_alpha, model.d_beta, n_max)
    if isinstance(model, ToralPair):
        return counts_toral(model.A, model.B, n_max)
    if isinstance(model, SIntegerPair):
        return counts_s_integer(model.a, model.b, model.primes, n_max)
    if isinstance(model, Subshift):
        return counts_subshift(model.A, n_max)
    if isinstance(model, SignedSubshiftSystem):
        return counts_signed_system(model, n_max)
    if isinstance(model, HomologyData):
        raise InvalidInput("homology data yields signed Lefschetz numbers; use lefschetz_counts")
    raise InvalidInput(f"unknown model kind {type(model).__name__}")


# ---------------------------------------------------------------------------
# eventual periodicity of finite-map counts
# ---------------------------------------------------------------------------

def _tail_and_cycle(s) -> tuple[int, int]:
    """(max tail length, lcm of cycle lengths) of a self-map of a finite set."""
    tail, period = 0, 1
    for x in range(len(s)):
        seen = {}
        y, k = x, 0
        while y not in seen:
            seen[y] = k
            y = s[y]
            k += 1
        tail = max(tail, seen[y])
        period = lcm(period, k - seen[y])
    return tail, period


def period_bound(model: FiniteMaps) -> tuple[int, int]:
    """(N0, L) such that c_{n+L} = c_n for every n >= N0 (proved, not sampled)."""
    t1, l1 = _tail_and_cycle(model.sigma1)
    t2, l2 = _tail_and_cycle(model.sigma2)
    return max(t1, t2, 1), lcm(l1, l2)


def detect_eventual_period(c: CountSequence, max_horizon: int = 100_000) -> tuple[int, int]:
    """Minimal preperiod n0 >= 1 and minimal period L of a finite-map sequence.

    The horizon comes from the maps' tail lengths and cycle structure, so
    the answer is exact.  Counts are recomputed if ``c`` is too short.
    """
    model = c.model
    if not isinstance(model, FiniteMaps):
        raise InvalidInput("eventual period detection needs a FiniteMaps model")
    n0_bound, big_l = period_bound(model)
    horizon = n0_bound + 2 * big_l
    if horizon > max_horizon:
        raise HorizonTooSmall(horizon, max_horizon)
    vals = list(c.counts) if c.n_max >= horizon else list(_iterate_maps(model.sigma1, model.sigma2, horizon))
    end = n0_bound + big_l - 1  # last index of the certified window

    def cn(n):
        return vals[n - 1]

    for period in exact.divisors(big_l):
        if all(cn(n + period) == cn(n) for n in range(n0_bound, end + 1)):
            n0 = n0_bound
            while n0 > 1 and cn(n0 - 1 + period) == cn(n0 - 1):
                n0 -= 1
            return n0, period
    raise AssertionError("unreachable: L itself is an eventual period")
