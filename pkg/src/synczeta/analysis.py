"""Growth rates, Gauss/Euler congruences, the asymptotic trichotomy of
c_n / lambda_max^n, entropy cross-check for toral pairs, Lefschetz zeta
functions and torsion special values.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import exact
from .errors import (HorizonTooSmall, HypothesisViolated, InvalidInput, NotCommuting,
                     NotHyperbolic, RequiresRationalZeta, TorsionUndefined)
from .exact import RationalFunction
from .models import CountSequence, HomologyData, counts_toral
from .spectral import SpectralData, aberth_roots, is_real_root, roots_with_multiplicity, spectral_from_rational
from .zeta import DEFAULT_MAX_DEG, reconstruct_zeta

HYPERBOLIC_TOL = 1e-6
UNIT_ROOT_TOL = 1e-9
ROOT_OF_UNITY_BOUND = 360


# ---------------------------------------------------------------------------
# growth
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GrowthReport:
    upper: float
    lower: float
    window: tuple
    exact: Optional[Fraction] = None
    zeros: tuple = ()  # indices in the window with c_n = 0
    degenerate: bool = False


def _root(cn: int, n: int) -> float:
    return math.exp(math.log(cn) / n)


def growth_estimate(c: CountSequence, exact_value=None) -> GrowthReport:
    """max and min of c_n^(1/n) over the last half of the available range."""
    counts = c.require_tame()
    if not counts:
        raise HorizonTooSmall(1, 0)
    n_max = len(counts)
    n_min = n_max // 2 + 1
    roots, zeros = [], []
    for n in range(n_min, n_max + 1):
        cn = abs(counts[n - 1])
        if cn == 0:
            zeros.append(n)
        else:
            roots.append(_root(cn, n))
    ex = None if exact_value is None else Fraction(exact_value)
    if not roots:
        return GrowthReport(0.0, 0.0, (n_min, n_max), ex, tuple(zeros), degenerate=True)
    return GrowthReport(max(roots), min(roots), (n_min, n_max), ex, tuple(zeros))


def _triangular_diagonal(m) -> list:
    m = [[Fraction(x) for x in row] for row in m]
    d = len(m)
    if any(len(row) != d for row in m):
        raise InvalidInput("matrix must be square")
    upper = all(m[i][j] == 0 for i in range(d) for j in range(i))
    lower = all(m[i][j] == 0 for i in range(d) for j in range(i + 1, d))
    if not (upper or lower):
        raise InvalidInput("exact toral growth needs triangular matrices")
    return [m[i][i] for i in range(d)]


def growth_exact_toral(A, B) -> Fraction:
    """prod_i max(|xi_i|, |eta_i|) from the diagonals of triangular A and B."""
    xs, ys = _triangular_diagonal(A), _triangular_diagonal(B)
    if len(xs) != len(ys):
        raise InvalidInput("A and B must have the same size")
    out = Fraction(1)
    for x, y in zip(xs, ys):
        if abs(x) == abs(y):
            raise HypothesisViolated(f"eigenvalues {x} and {y} have equal modulus")
        out *= max(abs(x), abs(y))
    return out


# ---------------------------------------------------------------------------
# congruences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CongruenceReport:
    n_max: int
    failures: tuple  # (n, sum mod n)
    euler_failures: tuple = ()  # (p, r, residue)

    @property
    def ok(self) -> bool:
        return not self.failures and not self.euler_failures


def dold_sum(counts, n: int) -> int:
    return sum(exact.mobius(n // d) * counts[d - 1] for d in exact.divisors(n))


def euler_congruence_check(c, p: int, r_max: int) -> list[int]:
    """(c_{p^r} - c_{p^(r-1)}) mod p^r for r = 1..r_max."""
    if not exact.is_prime(p):
        raise InvalidInput(f"{p} is not prime")
    counts = c.require_tame() if isinstance(c, CountSequence) else list(c)
    if p ** r_max > len(counts):
        raise HorizonTooSmall(p ** r_max, len(counts))
    return [(counts[p ** r - 1] - counts[p ** (r - 1) - 1]) % p ** r for r in range(1, r_max + 1)]


def gauss_congruence_check(c, n_max: Optional[int] = None) -> CongruenceReport:
    counts = c.require_tame(n_max) if isinstance(c, CountSequence) else list(c)[:n_max]
    n_max = len(counts)
    failures = []
    for n in range(1, n_max + 1):
        residue = dold_sum(counts, n) % n
        if residue:
            failures.append((n, residue))
    euler = []
    for p in range(2, n_max + 1):
        if not exact.is_prime(p):
            continue
        r_max = int(math.log(n_max, p) + 1e-9)
        while p ** (r_max + 1) <= n_max:
            r_max += 1
        for r, res in enumerate(euler_congruence_check(counts, p, r_max), start=1):
            if res:
                euler.append((p, r, res))
    return CongruenceReport(n_max, tuple(failures), tuple(euler))


# ---------------------------------------------------------------------------
# trichotomy
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TrichotomyVerdict:
    case: str  # AllZero, PeriodicLimitSet, IntervalCandidate
    spectral: SpectralData
    period: Optional[int] = None
    values: tuple = ()
    bound: Optional[int] = None
    certificate: dict = field(default_factory=dict)


def first_cyclotomic_multiple(poly, bound: int = ROOT_OF_UNITY_BOUND) -> Optional[int]:
    """Smallest k <= bound with poly | z^k - 1 over Q, else None."""
    for k in range(1, bound + 1):
        if exact.poly_divides(poly, (-1,) + (0,) * (k - 1) + (1,)):
            return k
    return None


def shares_root_with_unity(poly, bound: int = ROOT_OF_UNITY_BOUND) -> Optional[int]:
    """Smallest k <= bound with gcd(poly, z^k - 1) nontrivial, else None."""
    for k in range(1, bound + 1):
        if exact.degree(exact.poly_gcd(poly, (-1,) + (0,) * (k - 1) + (1,))) > 0:
            return k
    return None


def normalized_ratio_poly(quadratic) -> tuple:
    """For roots lam, conj(lam) of z^2 - a z + b: the polynomial of lam / conj(lam).

    w + 1/w = (a^2 - 2b) / b, so w is a root of b w^2 - (a^2 - 2b) w + b.
    """
    b, minus_a, lead = (Fraction(x) for x in quadratic)
    a, b = -minus_a / lead, b / lead
    return exact.poly_primitive((b, -(a * a - 2 * b), b))


def exact_conjugate_quadratic(lam: complex, factor) -> Optional[tuple]:
    """z^2 - 2 Re(lam) z + |lam|^2 with rational coefficients, if it divides factor exactly."""
    a = Fraction(2 * lam.real).limit_denominator(10 ** 6)
    b = Fraction(abs(lam) ** 2).limit_denominator(10 ** 6)
    quad = (b, -a, 1)
    return exact.poly_primitive(quad) if exact.poly_divides(quad, factor) else None


def _unit_order(eps: complex, bound: int) -> Optional[int]:
    w = 1 + 0j
    for k in range(1, bound + 1):
        w *= eps
        if abs(w - 1) <= UNIT_ROOT_TOL:
            return k
    return None


def trichotomy_classify(c: CountSequence, max_deg: int = DEFAULT_MAX_DEG,
                        bound: int = ROOT_OF_UNITY_BOUND, report=None) -> TrichotomyVerdict:
    report = report or reconstruct_zeta(c, max_deg)
    if report.rational is None:
        raise RequiresRationalZeta("no rational form for the zeta function")
    sd = spectral_from_rational(report.rational)
    counts = c.require_tame()
    if all(x == 0 for x in counts) or not sd.pairs:
        return TrichotomyVerdict("AllZero", sd)
    lam_max = sd.lambda_max
    orders, certificate = [], {"bound": bound, "factors": []}
    for i in sd.dominant_indices:
        chi, lam = sd.pairs[i]
        quad = None if is_real_root(lam) else exact_conjugate_quadratic(lam, sd.factors[i])
        if quad is not None and lam.imag > 0:
            ratio = normalized_ratio_poly(quad)
            certificate["factors"].append({
                "factor": quad,
                "ratio_poly": ratio,
                "ratio_root_of_unity_order": shares_root_with_unity(ratio, bound),
                "factor_divides_unity_order": first_cyclotomic_multiple(quad, bound),
            })
        orders.append(_unit_order(lam / lam_max, bound))
    if any(o is None for o in orders):
        return TrichotomyVerdict("IntervalCandidate", sd, bound=bound, certificate=certificate)
    q = math.lcm(*orders)
    values = []
    for j in range(q):
        v = sum(sd.pairs[i][0] * (sd.pairs[i][1] / lam_max) ** j for i in sd.dominant_indices)
        values.append(v.real)
    return TrichotomyVerdict("PeriodicLimitSet", sd, period=q, values=tuple(values), certificate=certificate)


# ---------------------------------------------------------------------------
# entropy
# ---------------------------------------------------------------------------

def _eigenvalues(m) -> list[complex]:
    out = []
    for z, mult, _ in roots_with_multiplicity(exact.charpoly(m)):
        out.extend([z] * mult)
    return out


def _check_hyperbolic(eigs) -> None:
    for z in eigs:
        if abs(abs(z) - 1) <= HYPERBOLIC_TOL:
            raise NotHyperbolic(f"eigenvalue {z:.6g} lies on the unit circle")


def entropy_cross_check(A, B, n: int = 64, rel_tol: float = 0.05) -> tuple[float, float, bool]:
    """(s_infty, exp_h, agree) comparing count growth with exp h(B^-1 A)."""
    A, B = exact.as_matrix(A), exact.as_matrix(B)
    if exact.mat_mul(A, B) != exact.mat_mul(B, A):
        raise NotCommuting("A and B do not commute")
    if abs(exact.det(B)) != 1:
        raise HypothesisViolated("B must be unimodular")
    counts = counts_toral(A, B, n)
    counts.require_tame()
    d = len(A)
    cols = [exact.solve_linear(B, [A[i][j] for i in range(d)]) for j in range(d)]
    C = tuple(tuple(int(cols[j][i]) for j in range(d)) for i in range(d))
    eigs = _eigenvalues(C)
    _check_hyperbolic(eigs)
    exp_h = math.prod(max(1.0, abs(z)) for z in eigs)
    s_infty = growth_estimate(counts).upper
    return s_infty, exp_h, abs(s_infty - exp_h) <= rel_tol * exp_h


# ---------------------------------------------------------------------------
# Lefschetz zeta and torsion
# ---------------------------------------------------------------------------

def lefschetz_zeta(h: HomologyData) -> RationalFunction:
    """prod_k det(I - h_k z)^((-1)^(k+1))."""
    num, den = (1,), (1,)
    for k, m in h.parts:
        factor = exact.det_one_minus_z(m)
        if k % 2:
            num = exact.poly_mul(num, factor)
        else:
            den = exact.poly_mul(den, factor)
    return RationalFunction.make(num, den)


def sign_counts(F) -> tuple[int, int]:
    """(#real eigenvalues < -1, #real eigenvalues of modulus > 1), with multiplicity."""
    eigs = _eigenvalues(exact.as_matrix(F))
    _check_hyperbolic(eigs)
    real = [z.real for z in eigs if is_real_root(z)]
    return sum(1 for x in real if x < -1), sum(1 for x in real if abs(x) > 1)


def nilpotent_sign_relation(F, n_max: int = 24) -> tuple[int, int, bool]:
    """(p, r, check) where check is |det(I - F^n)| == (-1)^(r + p n) det(I - F^n)."""
    F = exact.as_matrix(F)
    p, r = sign_counts(F)
    ident = exact.identity(len(F))
    ok = True
    for n, fn in enumerate(exact.mat_powers(F, n_max), start=1):
        L = exact.det(exact.mat_sub(ident, fn))
        ok = ok and abs(L) == (-1) ** (r + p * n) * L
    return p, r, ok


@dataclass(frozen=True)
class TorsionReport:
    lefschetz_zeta: RationalFunction
    p: Optional[int]
    r: Optional[int]
    tau_values: tuple  # (lam, float value, exact Fraction or None)


def torsion_special_value(h: HomologyData, lam) -> tuple[float, Optional[Fraction]]:
    """|L_h(lam)|^-1 for lam on the unit circle; exact when lam = +-1."""
    f = lefschetz_zeta(h)
    if lam in (1, -1) and not isinstance(lam, complex):
        num, den = exact.poly_eval(f.num, int(lam)), exact.poly_eval(f.den, int(lam))
        if num == 0 or den == 0:
            raise TorsionUndefined(f"L_h has a zero or pole at {lam}")
        value = abs(Fraction(den, num))
        return float(value), value
    lam = complex(lam)
    num, den = exact.poly_eval(f.num, lam), exact.poly_eval(f.den, lam)
    if abs(num) <= 1e-12 or abs(den) <= 1e-12:
        raise TorsionUndefined(f"L_h has a zero or pole at {lam}")
    return abs(den) / abs(num), None


def unit_circle_point(turn) -> complex:
    """exp(2 pi i t), snapped to exact values at quarter turns."""
    t = Fraction(turn) % 1
    snaps = {Fraction(0): 1, Fraction(1, 4): 1j, Fraction(1, 2): -1, Fraction(3, 4): -1j}
    return snaps[t] if t in snaps else cmath.exp(2j * math.pi * float(t))


def torsion_report(h: HomologyData, samples=(-1,)) -> TorsionReport:
    f = lefschetz_zeta(h)
    p = r = None
    degree_one = [m for k, m in h.parts if k == 1]
    if degree_one:
        try:
            p, r = sign_counts(degree_one[0])
        except NotHyperbolic:
            pass
    taus = []
    for lam in samples:
        value, ex = torsion_special_value(h, lam)
        taus.append((lam, value, ex))
    return TorsionReport(f, p, r, tuple(taus))


__all__ = [
    "GrowthReport", "growth_estimate", "growth_exact_toral", "CongruenceReport",
    "gauss_congruence_check", "euler_congruence_check", "dold_sum", "TrichotomyVerdict",
    "trichotomy_classify", "first_cyclotomic_multiple", "shares_root_with_unity",
    "normalized_ratio_poly", "exact_conjugate_quadratic", "entropy_cross_check", "lefschetz_zeta", "sign_counts",
    "nilpotent_sign_relation", "TorsionReport", "torsion_special_value", "torsion_report",
    "unit_circle_point", "aberth_roots",
]
