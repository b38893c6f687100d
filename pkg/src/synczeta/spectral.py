"""Spectral data of rational zeta functions.

A rational zeta function prod (1 - lam_i z)^(-chi_i) corresponds to counts
c_n = sum chi_i lam_i^n.  Multiplicities are read off exactly (squarefree
decomposition of the reversed numerator and denominator); only the
positions of the lam_i are numeric.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exact
from .errors import NotNormalized

ROOT_TOL = 1e-12
MAX_ITER = 200
TIE_TOL = 1e-9


def aberth_roots(p: Sequence, tol: float = ROOT_TOL, max_iter: int = MAX_ITER) -> list[complex]:
    """All complex roots of a polynomial by Aberth-Ehrlich iteration.

    Intended for squarefree input; multiple roots converge only linearly.
    """
    p = exact.poly_trim(p)
    n = len(p) - 1
    if n < 1:
        return []
    lead = complex(Fraction(p[-1]))
    coeffs = [complex(Fraction(c)) / lead for c in p]
    if n == 1:
        return [-coeffs[0]]
    dcoeffs = [i * c for i, c in enumerate(coeffs)][1:]
    # Fujiwara bound on the root moduli
    radius = 2 * max(abs(coeffs[n - k]) ** (1.0 / k) for k in range(1, n + 1))
    radius = max(radius, 1e-3)
    zs = [radius / 2 * cmath.exp(1j * (2 * math.pi * k / n + 0.4)) for k in range(n)]

    def horner(cs, z):
        acc = 0j
        for c in reversed(cs):
            acc = acc * z + c
        return acc

    for _ in range(max_iter):
        worst = 0.0
        for k in range(n):
            z = zs[k]
            pz = horner(coeffs, z)
            if pz == 0:
                continue
            ratio = pz / horner(dcoeffs, z)
            repulse = sum(1 / (z - zs[j]) for j in range(n) if j != k and z != zs[j])
            step = ratio / (1 - ratio * repulse)
            zs[k] = z - step
            worst = max(worst, abs(step) / max(1.0, abs(zs[k])))
        if worst <= tol:
            break
    # two Newton polishing steps against the exact coefficients
    for _ in range(2):
        for k in range(n):
            d = horner(dcoeffs, zs[k])
            if d != 0:
                zs[k] -= horner(coeffs, zs[k]) / d
    return zs


def roots_with_multiplicity(p: Sequence) -> list[tuple[complex, int, tuple]]:
    """(root, exact multiplicity, squarefree factor) for every distinct root."""
    out = []
    for factor, mult in exact.squarefree_decomposition(p):
        for z in aberth_roots(factor):
            out.append((z, mult, factor))
    return out


def is_real_root(z: complex, tol: float = 1e-7) -> bool:
    return abs(z.imag) <= tol * max(1.0, abs(z))


@dataclass(frozen=True)
class SpectralData:
    """Pairs (chi_i, lam_i) with c_n = sum chi_i lam_i^n."""

    pairs: tuple  # (chi, lam) with lam complex
    recurrence_poly: tuple  # exact, squarefree, roots are the lam_i
    lambda_max: float
    dominant_indices: tuple
    factors: tuple = ()  # squarefree factor (exact) each pair's lam is a root of

    def value(self, n: int) -> complex:
        return sum(chi * lam ** n for chi, lam in self.pairs)


def spectral_from_rational(f) -> SpectralData:
    """Spectral pairs of a zeta-normalized rational function (f(0) = 1)."""
    if not f.num or f.num[0] != f.den[0]:
        raise NotNormalized("zeta function must take the value 1 at z = 0")
    pairs, factors = [], []
    for poly, sign in ((f.den, 1), (f.num, -1)):
        for lam, mult, factor in roots_with_multiplicity(exact.poly_reverse(poly)):
            pairs.append((sign * mult, lam))
            factors.append(factor)
    rec = exact.poly_mul(exact.squarefree_part(exact.poly_reverse(f.num)) or (1,),
                         exact.squarefree_part(exact.poly_reverse(f.den)) or (1,))
    lam_max = max((abs(lam) for _, lam in pairs), default=0.0)
    dominant = tuple(i for i, (_, lam) in enumerate(pairs)
                     if lam_max > 0 and abs(lam) >= lam_max * (1 - TIE_TOL))
    return SpectralData(tuple(pairs), exact.poly_primitive(rec) or (1,), lam_max, dominant, tuple(factors))


def verify_spectral(sd: SpectralData, c, tol: float = 1e-6) -> bool:
    """Does sum chi lam^n reproduce every available count within tol * lam_max^n?"""
    counts = c.counts if hasattr(c, "counts") else tuple(c)
    scale = max(1.0, sd.lambda_max)
    for n, cn in enumerate(counts, start=1):
        if cn is None:
            return False
        if abs(sd.value(n) - cn) > tol * scale ** n:
            return False
    return True
