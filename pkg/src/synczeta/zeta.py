"""Zeta functions exp(sum c_n z^n / n) of synchronization count sequences.

Rationality is always decided by exact Padé reconstruction followed by
re-expansion through the full series order.  Finite-set models also get
closed forms: the orbit product for commuting bijections and the residue
decomposition of the rational logarithmic derivative for arbitrary maps.
"""

from __future__ import annotations

import cmath
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from . import exact
from .errors import HorizonTooSmall, InvalidInput, NotBijective, NotCommuting
from .exact import PowerSeries, RationalFunction
from .models import CountSequence, FiniteMaps, SIntegerPair, counts_finite_maps, detect_eventual_period
from .padic import boundary_decide

DEFAULT_MAX_DEG = 12
RESIDUE_TOL = 1e-9
RATIONAL_DENOM_BOUND = 10 ** 6

VERDICTS = ("Rational", "AlgebraicCandidate", "NaturalBoundary", "Unclassified")


@dataclass(frozen=True)
class CycleProduct:
    """prod over orbit lengths l of (1 - z^l)^(-multiplicity)."""

    cycles: tuple  # sorted (orbit_length, multiplicity)

    @property
    def orbit_count(self) -> int:
        return sum(m for _, m in self.cycles)

    @property
    def periodic_points(self) -> int:
        return sum(l * m for l, m in self.cycles)

    def rational(self) -> RationalFunction:
        den = (1,)
        for length, mult in self.cycles:
            den = exact.poly_mul(den, exact.poly_pow((1,) + (0,) * (length - 1) + (-1,), mult))
        return RationalFunction.make((1,), den)


@dataclass(frozen=True)
class ResidueData:
    """Partial-fraction data of S'/S = Q(z) + R(z)/(1 - z^L).

    ``residues[k]`` is the residue at omega^k, omega = exp(2 pi i / L), and
    S(z) = exp(int Q) * prod_k (1 - omega^-k z)^C_k.
    """

    period: int
    preperiod: int
    residues: tuple  # complex C_k, k = 0..L-1
    A: tuple  # Re C_k
    B: tuple  # None where omega^k is real
    P: tuple
    Q: tuple
    R: tuple
    A_exact: Optional[tuple] = None  # Fractions when every C_k is (numerically) rational
    verdict: str = "Unclassified"
    rational: Optional[RationalFunction] = None

    def omega(self, k: int) -> complex:
        return cmath.exp(2j * math.pi * k / self.period)

    def partial_fractions(self, z: complex) -> complex:
        """sum_k C_k / (z - omega^k); equals -R(z)/(z^L - 1)."""
        return sum(c / (z - self.omega(k)) for k, c in enumerate(self.residues))

    def exact_series(self, order: int) -> PowerSeries:
        """Exact expansion of the closed form, grouping residues by root order."""
        if self.A_exact is None:
            raise ValueError("residues are not all rational; no exact expansion")
        out = exact.series_exp(PowerSeries.from_poly(self.Q, order - 1).integral()) if self.Q \
            else PowerSeries.from_poly((1,), order)
        for d, a in _order_exponents(self.period, self.A_exact).items():
            if a:
                base = PowerSeries.from_poly(exact.poly_reverse(cyclotomic(d)), order)
                out = out * exact.series_pow(base, a)
        return out


Form = Union[RationalFunction, CycleProduct, ResidueData, None]


@dataclass(frozen=True)
class ZetaReport:
    series: PowerSeries
    form_kind: str  # RationalForm, CycleProduct, ResidueForm, SeriesOnly
    form: Form
    verdict: str
    witnesses: tuple = ()
    rational: Optional[RationalFunction] = field(default=None)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict}")


# ---------------------------------------------------------------------------
# series and reconstruction
# ---------------------------------------------------------------------------

def zeta_series(c: CountSequence, order: Optional[int] = None) -> PowerSeries:
    order = c.n_max if order is None else order
    counts = c.require_tame(order)
    return exact.series_exp(exact.log_series_from_counts(counts, order))


def _degree_pairs(max_deg: int, order: int):
    for total in range(2 * max_deg + 1):
        if total + exact.VERIFY_MARGIN > order:
            return
        for m in range(max(0, total - max_deg), min(total, max_deg) + 1):
            yield total - m, m


def find_rational_form(s: PowerSeries, max_deg: int = DEFAULT_MAX_DEG) -> Optional[RationalFunction]:
    """Lowest-degree rational function matching s through its full order."""
    for n, m in _degree_pairs(max_deg, s.order):
        f = exact.pade_reconstruct(s, n, m)
        if f is not None:
            return f
    return None


def reconstruct_zeta(c: CountSequence, max_deg: int = DEFAULT_MAX_DEG,
                     order: Optional[int] = None) -> ZetaReport:
    s = zeta_series(c, order)
    f = find_rational_form(s, max_deg)
    if f is None:
        return ZetaReport(s, "SeriesOnly", None, "Unclassified")
    if f.expand(s.order) != s:
        raise AssertionError("rational form failed re-expansion")
    return ZetaReport(s, "RationalForm", f, "Rational", rational=f)


# ---------------------------------------------------------------------------
# finite sets
# ---------------------------------------------------------------------------

def orbit_lengths(perm) -> list[int]:
    seen, out = set(), []
    for x in range(len(perm)):
        if x in seen:
            continue
        k, y = 0, x
        while y not in seen:
            seen.add(y)
            y = perm[y]
            k += 1
        out.append(k)
    return out


def permutation_cycle_zeta(sigma1, sigma2=None, order: int = exact.DEFAULT_ORDER) -> ZetaReport:
    """Orbit product of sigma2^-1 sigma1 for commuting bijections, cross-checked."""
    model = sigma1 if isinstance(sigma1, FiniteMaps) else FiniteMaps(sigma1, sigma2)
    if not model.bijective:
        raise NotBijective("both maps must be bijections")
    if not model.commuting:
        raise NotCommuting("the bijections do not commute")
    inv2 = [0] * model.size
    for x, y in enumerate(model.sigma2):
        inv2[y] = x
    tau = [inv2[model.sigma1[x]] for x in range(model.size)]
    cp = CycleProduct(tuple(sorted(Counter(orbit_lengths(tau)).items())))
    f = cp.rational()
    s = zeta_series(counts_finite_maps(model, None, order), order)
    if f.expand(order) != s:
        raise AssertionError("cycle product disagrees with the count series")
    return ZetaReport(s, "CycleProduct", cp, "Rational", rational=f)


def functional_equation_check(form) -> tuple[int, int, bool]:
    """(p, q, holds) for S(1/z) = (-1)^p z^q S(z), checked as a polynomial identity."""
    if isinstance(form, ZetaReport):
        form = form.form
    if not isinstance(form, CycleProduct):
        raise InvalidInput("functional equation check needs a cycle product")
    p, q = form.orbit_count, form.periodic_points
    f = form.rational()
    return p, q, rational_functional_equation(f, (-1) ** p, q)


def rational_functional_equation(f: RationalFunction, sign: int, q: int) -> bool:
    """Does f(1/z) == sign * z^q * f(z) hold identically?"""
    # f(1/z) = z^(deg den - deg num) rev(num) / rev(den)
    shift = exact.degree(f.den) - exact.degree(f.num) - q
    lhs = exact.poly_mul(exact.poly_reverse(f.num), f.den)
    rhs = exact.poly_scale(exact.poly_mul(f.num, exact.poly_reverse(f.den)), sign)
    pad = (0,) * abs(shift)
    if shift >= 0:
        lhs = exact.poly_mul(pad + (1,), lhs)
    else:
        rhs = exact.poly_mul(pad + (1,), rhs)
    return lhs == rhs


def _period_of(c: CountSequence, n0, period):
    if n0 is None or period is None:
        if not isinstance(c.model, FiniteMaps):
            raise InvalidInput("pass n0 and L explicitly for sequences without a finite-map model")
        n0, period = detect_eventual_period(c)
    return n0, period


def _numerator_coeffs(counts, n0: int, period: int) -> tuple:
    def cn(k):
        return counts[k - 1] if k >= 1 else 0
    return exact.poly_trim(tuple(cn(k) - cn(k - period) for k in range(1, n0 + period)))


def log_derivative_form(c: CountSequence, n0: Optional[int] = None,
                        period: Optional[int] = None) -> RationalFunction:
    """sum c_n z^(n-1) as P(z)/(1 - z^L), reduced and verified on all known counts."""
    n0, period = _period_of(c, n0, period)
    need = n0 + period - 1
    if c.n_max < need:
        raise HorizonTooSmall(need, c.n_max)
    counts = c.require_tame()
    f = RationalFunction.make(_numerator_coeffs(counts, n0, period), (1,) + (0,) * (period - 1) + (-1,))
    if list(f.expand(c.n_max - 1).coeffs) != [Fraction(x) for x in counts]:
        raise HorizonTooSmall(need + period, c.n_max)
    return f


def cyclotomic(d: int) -> tuple:
    """Phi_d as an ascending integer polynomial."""
    p = (-1,) + (0,) * (d - 1) + (1,)
    for e in exact.divisors(d):
        if e < d:
            p = exact.poly_exact_div(p, cyclotomic(e))
    return p


def _order_exponents(period: int, values) -> dict:
    """Residues grouped by the order d of omega^k; they must agree within a group."""
    out = {}
    for k, a in enumerate(values):
        d = period // math.gcd(k, period)
        if d in out and out[d] != a:
            raise ValueError("residues differ within a Galois orbit")
        out[d] = a
    return out


def residue_decomposition(c: CountSequence, n0: Optional[int] = None,
                          period: Optional[int] = None) -> ResidueData:
    n0, period = _period_of(c, n0, period)
    need = n0 + period - 1
    if c.n_max < need:
        raise HorizonTooSmall(need, c.n_max)
    counts = c.require_tame(need)
    P = _numerator_coeffs(counts, n0, period)
    Q, R = exact.poly_divmod(P, (1,) + (0,) * (period - 1) + (-1,))
    residues, A, B = [], [], []
    for k in range(period):
        w = cmath.exp(2j * math.pi * k / period)
        ck = -complex(exact.poly_eval(R, w)) / (period * w ** (period - 1))
        residues.append(ck)
        A.append(ck.real)
        re_w = w.real
        if abs(abs(re_w) - 1) < 1e-12:
            B.append(None)
        else:
            B.append((ck.real * re_w - (ck * w.conjugate()).real) / math.sqrt(1 - re_w * re_w))

    scale = max([1.0] + [abs(x) for x in residues])
    real = all(abs(x.imag) <= RESIDUE_TOL * scale for x in residues)
    a_exact, verdict, rational = None, "Unclassified", None
    if real:
        approx = [Fraction(x.real).limit_denominator(RATIONAL_DENOM_BOUND) for x in residues]
        if all(abs(float(a) - x.real) <= RESIDUE_TOL * scale for a, x in zip(approx, residues)):
            try:
                _order_exponents(period, approx)
                a_exact = tuple(approx)
            except ValueError:
                a_exact = None
    if a_exact is not None and not Q:
        if all(a.denominator == 1 for a in a_exact):
            verdict = "Rational"
            num, den = (1,), (1,)
            for d, a in _order_exponents(period, a_exact).items():
                base = exact.poly_reverse(cyclotomic(d))
                if a > 0:
                    num = exact.poly_mul(num, exact.poly_pow(base, int(a)))
                elif a < 0:
                    den = exact.poly_mul(den, exact.poly_pow(base, int(-a)))
            rational = RationalFunction.make(num, den)
        else:
            verdict = "AlgebraicCandidate"
    return ResidueData(period, n0, tuple(residues), tuple(A), tuple(B), P, Q, R,
                       a_exact, verdict, rational)


def residue_report(c: CountSequence, order: Optional[int] = None) -> ZetaReport:
    rd = residue_decomposition(c)
    s = zeta_series(c, order)
    if rd.A_exact is not None and rd.exact_series(s.order) != s:
        raise AssertionError("residue closed form disagrees with the count series")
    return ZetaReport(s, "ResidueForm", rd, rd.verdict, rational=rd.rational)


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def zeta_report(c: CountSequence, max_deg: int = DEFAULT_MAX_DEG,
                order: Optional[int] = None) -> ZetaReport:
    """Best available form: orbit product, residue form, or Padé reconstruction."""
    model = c.model
    if isinstance(model, FiniteMaps):
        if model.bijective and model.commuting:
            return permutation_cycle_zeta(model, order=order or c.n_max)
        return residue_report(c, order)
    return reconstruct_zeta(c, max_deg, order)


def classify(c: CountSequence, max_deg: int = DEFAULT_MAX_DEG,
             order: Optional[int] = None) -> ZetaReport:
    report = reconstruct_zeta(c, max_deg, order)
    if report.verdict == "Rational":
        return report
    model = c.model
    if isinstance(model, SIntegerPair):
        bv = boundary_decide(model)
        if bv.verdict == "NaturalBoundary":
            return ZetaReport(report.series, "SeriesOnly", None, "NaturalBoundary", bv.witnesses)
    if isinstance(model, FiniteMaps):
        rr = residue_report(c, order)
        if rr.verdict in ("Rational", "AlgebraicCandidate"):
            return rr
    return report
