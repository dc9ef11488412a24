"""Machine checks of the factorization identities behind the diagonal-only counts.

For a witness pair x, y (a genuine solution with no value shared between the
two sides) the difference polynomial

    F(t) = prod(t + x_i) - prod(t + y_i)

has degree at most k-1 and vanishes at theta, so the minimal polynomial m of
theta divides it exactly: F = m * Psi with Psi an integer polynomial (m is
primitive, so Gauss's lemma applies).  Evaluating at t = -y_j turns the
factorization into k integer identities

    prod_i (x_i - y_j) = rho_j * m(-y_j),      rho_j = Psi(-y_j),

and taking norms of the defining equation gives

    prod_i m(-x_i) = prod_i m(-y_i).

This module verifies all of these exactly on concrete witnesses, measures
the normalised coefficient ratios |F_j| / X^(k-j) and |Psi_m| / X^(k-d-m)
whose suprema play the role of the implicit constants, and fits growth
exponents of non-diagonal counts from count reports.
"""

from __future__ import annotations

import dataclasses
import math
from fractions import Fraction
from typing import Optional, Sequence

from .counting import CountReport, SolutionPair
from .polynomials import MinimalPolynomial, Poly, norm_factor, shift_product_poly
from .shifts import Shift


class NotASolutionError(ValueError):
    """The pair does not satisfy the shifted-product equation for this shift."""


class NonIntegralQuotientError(RuntimeError):
    """m divides F but the quotient is not integral; impossible for primitive m."""


class PreconditionViolationError(ValueError):
    """A witness-level precondition (full cancellation, k > d) does not hold."""


class InsufficientDataError(ValueError):
    """Too few or ill-ordered count reports for an exponent fit."""


def product_difference(x: Sequence[int], y: Sequence[int]) -> Poly:
    """F(t) = prod(t + x_i) - prod(t + y_i); the monic leading terms cancel."""
    if len(x) != len(y) or len(x) < 1:
        raise ValueError("need two tuples of equal length k >= 1")
    return shift_product_poly(x) - shift_product_poly(y)


def factor_out_minpoly(f: Poly, m: MinimalPolynomial) -> Poly:
    """Exact quotient Psi with f = m * Psi, raising if m does not divide f.

    A nonzero remainder means the pair that produced f is not a solution for
    this shift.  A divisible f with non-integer quotient cannot happen for a
    primitive m and integral f; it is reported as an invariant violation.
    """
    if not f:
        raise ValueError("the difference polynomial must be nonzero")
    quotient, remainder = divmod(f, m.poly)
    if remainder:
        raise NotASolutionError(
            f"{m.poly} does not divide {f} (remainder {remainder})"
        )
    if not quotient.is_integral:
        raise NonIntegralQuotientError(
            f"non-integral quotient {quotient} despite primitive {m.poly}"
        )
    return quotient


def norm_identity_check(pair: SolutionPair, m: MinimalPolynomial) -> bool:
    """Whether prod m(-x_i) = prod m(-y_i); false signals a non-solution."""
    lhs = math.prod(norm_factor(v, m) for v in pair.x)
    rhs = math.prod(norm_factor(v, m) for v in pair.y)
    return lhs == rhs


@dataclasses.dataclass(frozen=True)
class WitnessReport:
    """All verification results for one fully-cancelled witness pair."""

    pair: SolutionPair
    minpoly: MinimalPolynomial
    x_cap: int
    f: Poly
    psi: Poly
    rho: tuple[int, ...]
    f_coeff_ratios: tuple[Fraction, ...]
    psi_coeff_ratios: tuple[Fraction, ...]
    norm_identity_ok: bool
    lemma_ok: tuple[bool, ...]

    @property
    def k(self) -> int:
        return self.pair.k

    @property
    def d(self) -> int:
        return self.minpoly.degree

    @property
    def psi_degree_ok(self) -> bool:
        return self.psi.degree <= self.k - 1 - self.d

    @property
    def all_ok(self) -> bool:
        return all(self.lemma_ok) and self.norm_identity_ok and self.psi_degree_ok

    @property
    def max_f_ratio(self) -> Fraction:
        return max(self.f_coeff_ratios)

    @property
    def max_psi_ratio(self) -> Fraction:
        return max(self.psi_coeff_ratios)

    def to_json_dict(self) -> dict:
        return {
            "x": list(self.pair.x),
            "y": list(self.pair.y),
            "F_coeffs": [int(c) for c in self.f.coeffs],
            "psi_coeffs": [int(c) for c in self.psi.coeffs],
            "rho": list(self.rho),
            "C_a": str(self.max_f_ratio),
            "C_b": str(self.max_psi_ratio),
            "norm_ok": self.norm_identity_ok,
            "lemma_ok": list(self.lemma_ok),
        }


def verify_witness(pair: SolutionPair, m: MinimalPolynomial, X: int) -> WitnessReport:
    """Check every factorization identity on a fully-cancelled witness.

    Preconditions: no value occurs on both sides (cancel first), entries lie
    in [1, X], and k > d (a genuine fully-cancelled solution always has
    k > d, since degree-d shifts admit no non-diagonal solutions at k <= d).
    Raises NotASolutionError when the pair does not solve the equation.
    """
    k = pair.k
    d = m.degree
    if k == 0 or pair.is_diagonal:
        raise PreconditionViolationError("pair is diagonal after cancellation")
    shared = set(pair.x) & set(pair.y)
    if shared:
        raise PreconditionViolationError(
            f"values {sorted(shared)} appear on both sides; cancel first"
        )
    if k <= d:
        raise PreconditionViolationError(
            f"k={k} must exceed the minimal-polynomial degree d={d}"
        )
    if X < max(pair.x + pair.y):
        raise ValueError(f"X={X} is below the largest witness entry")

    f = product_difference(pair.x, pair.y)
    psi = factor_out_minpoly(f, m)
    rho = tuple(int(psi.evaluate(-yj)) for yj in pair.y)
    lemma_ok = []
    for yj, rho_j in zip(pair.y, rho):
        lhs = math.prod(xi - yj for xi in pair.x)
        m_at = norm_factor(yj, m)
        lemma_ok.append(lhs == rho_j * m_at and rho_j != 0 and m_at != 0)
    f_ratios = tuple(
        Fraction(abs(int(f.coeff(j))), X ** (k - j)) for j in range(k)
    )
    psi_ratios = tuple(
        Fraction(abs(int(psi.coeff(j))), X ** (k - d - j)) for j in range(k - d)
    )
    return WitnessReport(
        pair=pair,
        minpoly=m,
        x_cap=X,
        f=f,
        psi=psi,
        rho=rho,
        f_coeff_ratios=f_ratios,
        psi_coeff_ratios=psi_ratios,
        norm_identity_ok=norm_identity_check(pair, m),
        lemma_ok=tuple(lemma_ok),
    )


def measure_bound_constants(
    reports: Sequence[WitnessReport],
) -> tuple[Fraction, Fraction]:
    """Empirical constants (C_a, C_b): the largest normalised coefficient ratios.

    C_a bounds |F_j| / X^(k-j) and C_b bounds |Psi_m| / X^(k-d-m) over the
    whole witness corpus; reports measured at different X contribute their
    own ratios, so the result is the max of the per-X values.
    """
    if not reports:
        raise ValueError("need at least one witness report")
    c_a = max(r.max_f_ratio for r in reports)
    c_b = max(r.max_psi_ratio for r in reports)
    return c_a, c_b


def rho_bound_holds(report: WitnessReport, c_bound: Fraction) -> bool:
    """Whether every |rho_j| <= k * C * X^(k-d) for the given constant C."""
    limit = report.k * c_bound * report.x_cap ** (report.k - report.d)
    return all(abs(r) <= limit for r in report.rho)


@dataclasses.dataclass(frozen=True)
class ExponentFit:
    """Least-squares growth exponent of non-diagonal counts, or a zero marker."""

    alpha: Optional[float]
    zero_count: bool
    n_points: int


def fit_growth_exponent(reports: Sequence[CountReport]) -> ExponentFit:
    """Slope of log(nondiagonal) against log(X) over count reports.

    Needs >= 3 reports at strictly increasing X with identical (k, shift).
    If any report has a zero non-diagonal count there is nothing to fit on a
    log scale and the zero-count marker is returned instead.
    """
    if len(reports) < 3:
        raise InsufficientDataError("need at least three count reports")
    ks = {r.k for r in reports}
    shifts = {r.shift for r in reports}
    if len(ks) != 1 or len(shifts) != 1:
        raise ValueError("reports must share one (k, shift)")
    xs = [r.X for r in reports]
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise InsufficientDataError("X values must be strictly increasing")
    if any(r.nondiagonal == 0 for r in reports):
        return ExponentFit(alpha=None, zero_count=True, n_points=len(reports))
    us = [math.log(r.X) for r in reports]
    vs = [math.log(r.nondiagonal) for r in reports]
    u_mean = sum(us) / len(us)
    v_mean = sum(vs) / len(vs)
    num = sum((u - u_mean) * (v - v_mean) for u, v in zip(us, vs))
    den = sum((u - u_mean) ** 2 for u in us)
    return ExponentFit(alpha=num / den, zero_count=False, n_points=len(reports))


def reference_exponent(k: int, shift: Shift) -> Optional[int]:
    """The k - d + 1 growth scale the non-diagonal count is compared against.

    Degree d is read from the shift's minimal polynomial (1 for rationals);
    transcendental shifts admit no non-diagonal solutions at all, so there is
    no reference exponent.
    """
    from .shifts import Algebraic, Rational

    if isinstance(shift, Algebraic):
        return k - shift.degree + 1
    if isinstance(shift, Rational):
        return k  # d = 1
    return None
