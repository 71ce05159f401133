"""Explicit eigenvector and fixed-point families of the pushforward operator.

Everything here is built from the lacunary series g(lambda, z) = sum of
lambda^p z^(2^p): the eigenvector families f_m / h_m, the trajectory-based
fixed-point candidates, the binary-subset series, and the two rival
constructions of the quadratic fixed point FP2 (only one of which actually
has zero residual; the verification suite identifies it).
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction

from .coeffs import Coeff, as_coeff
from .collatz import collatz_step
from .operators import apply_T
from .report import VerificationReport, exact_report, float_report
from .series import SparseSeries, compose_power, multiply


def lacunary_g(lam, n_max: int) -> SparseSeries:
    """sum over 2^p <= n_max of lambda^p z^(2^p), watermark n_max."""
    lam = as_coeff(lam)
    coeffs = {}
    p = 0
    e = 1
    while e <= n_max:
        c = lam**p
        if not c.is_zero:
            coeffs[e] = c
        p += 1
        e *= 2
    return SparseSeries(coeffs, n_max)


def build_f_m(lam, m: int, n_max: int) -> SparseSeries:
    """f_m = g(lambda, z^m), truncated and watermarked at n_max."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    return compose_power(lacunary_g(lam, n_max // m), m).truncate(n_max)


def build_h_m(lam, m: int, n_max: int) -> SparseSeries:
    """h_m = f_{6m+4} - f_{2m+1}; an exact eigenvector for every lambda."""
    return build_f_m(lam, 6 * m + 4, n_max) - build_f_m(lam, 2 * m + 1, n_max)


def trajectory_candidate(m: int, k_steps: int, n_max: int) -> SparseSeries:
    """f_m(1, z) plus the first k_steps trajectory monomials z^(T^k(m)).

    Residual law: applying the pushforward and subtracting leaves exactly
    z^(T^(k_steps+1)(m)) on the watermark.
    """
    if k_steps < 0:
        raise ValueError("k_steps must be nonnegative")
    x = build_f_m(1, m, n_max)
    t = m
    for _ in range(k_steps):
        t = collatz_step(t)
        x = x + SparseSeries.monomial(t, 1, n_max)
    return x


def build_psi_subset(l: int, m: int, order: int, n_max: int) -> SparseSeries:
    """Subset series: sum of z^(l + m*s) over s with exactly ``order`` binary ones.

    Built by direct enumeration of the k-element subsets of powers of two
    (s runs over integers with popcount == order), which is unambiguous.
    Order 0 gives the bare monomial z^l.
    """
    if order < 0:
        raise ValueError("subset order must be nonnegative")
    if m < 1:
        raise ValueError("progression step m must be positive")
    if order == 0:
        coeffs = {l: 1} if l <= n_max else {}
        return SparseSeries(coeffs, n_max)
    coeffs = {}
    smallest = (1 << order) - 1
    s_max = (n_max - l) // m if n_max >= l else -1
    for s in range(smallest, s_max + 1):
        if s.bit_count() == order:
            coeffs[l + m * s] = 1
    return SparseSeries(coeffs, n_max)


class Fp2Variant(str, Enum):
    """The two constructions of the quadratic fixed point."""

    CLOSED_FORM = "closed-form"  # g^2/2 + z - g + correction sum
    TELESCOPED = "telescoped"    # subset series + lacunary subtraction


def _correction_scales(n_max: int) -> list[int]:
    """The progression steps 3^k, k >= 1, that fit under the truncation."""
    out = []
    e = 3
    while e <= n_max:
        out.append(e)
        e *= 3
    return out


def build_fp2(variant: Fp2Variant, n_max: int) -> SparseSeries:
    if n_max < 3:
        raise ValueError("n_max must be at least 3")
    variant = Fp2Variant(variant)
    one = 1
    if variant is Fp2Variant.CLOSED_FORM:
        g = lacunary_g(one, n_max)
        zz = SparseSeries({1: 1, 2: 1}, n_max)
        half = Coeff(Fraction(1, 2))
        total = multiply(g, g).scale(half) + SparseSeries.monomial(1, 1, n_max) - g
        for step in _correction_scales(n_max):
            total = total + multiply(zz, build_f_m(one, step, n_max))
            total = total - build_f_m(one, 1 + step, n_max)
            total = total - build_f_m(one, 2 + step, n_max)
        return total.truncate(n_max)
    total = build_psi_subset(0, 1, 2, n_max)
    for step in _correction_scales(n_max):
        total = total + build_psi_subset(1, step, 1, n_max)
        total = total + build_psi_subset(2, step, 1, n_max)
        total = total - build_f_m(one, 1 + step, n_max)
        total = total - build_f_m(one, 2 + step, n_max)
    return total.truncate(n_max)


def fp2_comparison_degree(n_max: int) -> int:
    """Exponent bound for FP2 residual checks: below the first excluded tail.

    The k-sum stops at the largest 3^M <= n_max; the construction's exact
    residual is a subset series supported at and beyond 2 + 3^(M+1), so
    comparisons run on exponents < 3^(M+1) (and inside the watermark).
    """
    scales = _correction_scales(n_max)
    if not scales:
        raise ValueError("n_max too small for any correction scale")
    return min(n_max // 2, 3 * scales[-1] - 1)


def fp2_residual(variant: Fp2Variant, n_max: int) -> tuple[SparseSeries, int]:
    x = build_fp2(variant, n_max)
    return apply_T(x) - x, fp2_comparison_degree(n_max)


def identify_fp2_variant(n_max: int) -> tuple[Fp2Variant | None, dict]:
    """Which construction has zero residual below the tail cutoff.

    Returns (variant, details); variant is None unless exactly one of the
    two qualifies.
    """
    details = {}
    zero_variants = []
    for variant in Fp2Variant:
        residual, through = fp2_residual(variant, n_max)
        is_zero = residual.is_zero_through(through)
        details[variant.value] = {
            "zero_residual": is_zero,
            "max_abs": residual.max_abs_through(through),
            "through": through,
        }
        if is_zero:
            zero_variants.append(variant)
    chosen = zero_variants[0] if len(zero_variants) == 1 else None
    return chosen, details


def verify_fixed_point(x: SparseSeries, lam, tol: float = 1e-12) -> VerificationReport:
    """Residual report for apply_T(x) = lambda * x on the output watermark.

    EXACT inputs must leave an exactly-zero residual; FLOAT inputs are held
    to ``tol``.
    """
    lam = as_coeff(lam)
    through = x.valid_degree // 2
    if through < 1:
        raise ValueError(
            f"watermark {x.valid_degree} is insufficient for one application"
        )
    residual = apply_T(x) - x.scale(lam)
    exact = x.is_exact and lam.exact
    parameters = {"lambda": str(lam), "degree": x.valid_degree}
    if exact:
        return exact_report(
            "fixedpoint",
            parameters,
            is_zero=residual.is_zero_through(through),
            max_abs=residual.max_abs_through(through),
            degrees_checked=f"0..{through}",
            witness=_first_nonzero(residual, through),
        )
    return float_report(
        "fixedpoint",
        parameters,
        max_abs=residual.max_abs_through(through),
        tolerance=tol,
        degrees_checked=f"0..{through}",
        witness=_first_nonzero(residual, through),
    )


def _first_nonzero(residual: SparseSeries, through: int) -> dict | None:
    for n, c in residual.items():
        if n <= through:
            return {"exponent": n, "got": str(c), "want": "0"}
    return None
