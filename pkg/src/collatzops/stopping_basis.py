"""Stopping-time graded series: indicator slices, characteristic functions,
the near-shift matrix of the pullback operator, and the q-series bound."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coeffs import ONE, Coeff, as_coeff
from .collatz import default_cap, sigma_sweep, total_stopping_time
from .operators import apply_F, f_valid_law
from .report import VerificationReport, exact_report
from .series import SparseSeries


class UnresolvedStoppingTime(ValueError):
    """Raised when a construction needs stopping times the cap cannot resolve."""

    def __init__(self, values, cap):
        self.values = sorted(values)
        self.cap = cap
        preview = ", ".join(map(str, self.values[:10]))
        if len(self.values) > 10:
            preview += ", ..."
        super().__init__(
            f"stopping time unresolved under cap {cap} for n in [{preview}]"
        )


def _sigma_values(n_max: int, cap: int | None):
    cap = default_cap() if cap is None else cap
    sigma = sigma_sweep(n_max, cap)
    unresolved = [n for n, s in enumerate(sigma) if s < 0]
    if unresolved:
        raise UnresolvedStoppingTime(unresolved, cap)
    return sigma


@dataclass(frozen=True)
class PolBasisSlice:
    """Indicator series of integers with a fixed total stopping time."""

    k: int
    series: SparseSeries


def build_pol_k(k: int, n_max: int, cap: int | None = None) -> PolBasisSlice:
    """Indicator of {n in [1, n_max] : sigma(n) = k}, watermark n_max."""
    if k < 0:
        raise ValueError("slice index k must be nonnegative")
    sigma = _sigma_values(n_max, cap)
    coeffs = {n: 1 for n in range(1, n_max + 1) if sigma[n] == k}
    return PolBasisSlice(k, SparseSeries(coeffs, n_max))


def _indicator_le(sigma, k: int, n_max: int) -> SparseSeries:
    return SparseSeries(
        {n: 1 for n in range(1, n_max + 1) if 0 <= sigma[n] <= k}, n_max
    )


@dataclass(frozen=True)
class CharParams:
    """Parameters of the weighted progression sum over k + l*m.

    Conventions: lambda^infinity would be 0 for |lambda| < 1 and 1 for
    lambda = 1, but unresolved stopping times are rejected outright rather
    than zeroed; 0^0 = 1 so lambda = 0 keeps exactly the sigma = 0 terms.
    ``reduced`` replaces z^(l*m+k) by z^m and drops the beta damping.
    """

    k: int
    l: int
    lam: Coeff
    beta: Fraction = Fraction(1)
    reduced: bool = False

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("k must be nonnegative")
        if self.l < 1:
            raise ValueError("l must be a positive integer")
        if not (0 < self.beta <= 1):
            raise ValueError("beta must lie in (0, 1]")
        lam = as_coeff(self.lam)
        object.__setattr__(self, "lam", lam)
        if float(lam.abs2()) > 1 + 1e-12:
            raise ValueError("lambda must satisfy |lambda| <= 1")


def build_char(params: CharParams, n_max: int, cap: int | None = None) -> SparseSeries:
    """Characteristic function of the stopping time over a progression."""
    cap = default_cap() if cap is None else cap
    lam = params.lam
    beta = params.beta
    coeffs: dict[int, Coeff] = {}
    unresolved = []
    m = 0
    while True:
        source = params.l * m + params.k
        exponent = m if params.reduced else source
        if (params.reduced and m > n_max) or (not params.reduced and source > n_max):
            break
        st = total_stopping_time(source, cap)
        if not st.is_resolved:
            unresolved.append(source)
            m += 1
            continue
        c = lam**st.value
        if not params.reduced:
            c = c * Coeff(beta**m)
        if not c.is_zero:
            coeffs[exponent] = coeffs.get(exponent, Coeff(0)) + c
        m += 1
    if unresolved:
        raise UnresolvedStoppingTime(unresolved, cap)
    return SparseSeries(coeffs, n_max)


def check_matrix_representation(
    k_max: int, n_max: int, cap: int | None = None
) -> VerificationReport:
    """Row-by-row check that the pullback acts as the near-shift matrix.

    Row k: apply_F(Pol_k) = Pol_{k+1} + (Pol_0 when k = 1), verified on the
    pullback's authoritative watermark.
    """
    through = f_valid_law(n_max)
    sigma = _sigma_values(n_max, cap)
    rows_checked = []
    witness = None
    max_abs = 0.0
    for k in range(k_max + 1):
        pol_k = SparseSeries(
            {n: 1 for n in range(1, n_max + 1) if sigma[n] == k}, n_max
        )
        lhs = apply_F(pol_k)
        rhs = SparseSeries(
            {n: 1 for n in range(1, through + 1) if sigma[n] == k + 1}, through
        )
        if k == 1:
            rhs = rhs + SparseSeries(
                {n: 1 for n in range(1, through + 1) if sigma[n] == 0}, through
            )
        diff = lhs - rhs
        if not diff.is_zero_through(through):
            max_abs = max(max_abs, diff.max_abs_through(through))
            if witness is None:
                bad = min(n for n in diff.coeffs if n <= through)
                witness = {
                    "row": k,
                    "exponent": bad,
                    "got": str(lhs.coefficient(bad)),
                    "want": str(rhs.coefficient(bad)),
                }
        rows_checked.append(k)
    return exact_report(
        "polbasis",
        {"k_max": k_max, "degree": n_max},
        is_zero=witness is None,
        max_abs=max_abs,
        degrees_checked=f"0..{through} per row",
        witness=witness,
        info={"rows": rows_checked},
    )


def check_basis_iteration(
    n_iter_max: int, n_max: int, cap: int | None = None
) -> VerificationReport:
    """Iterating the pullback on z + z^2 sweeps out the stopping-time slices.

    After n applications the result equals the indicator of
    {m >= 1 : sigma(m) <= n + 1} on the composed watermark.  (The row k = 1
    anomaly feeds Pol_0 back every step, which is what keeps the early
    slices present.)
    """
    first_watermark = f_valid_law(n_max)
    sigma = _sigma_values(first_watermark, cap)
    f = SparseSeries({1: 1, 2: 1}, n_max)
    witness = None
    max_abs = 0.0
    through = first_watermark
    for n in range(1, n_iter_max + 1):
        f = apply_F(f)
        through = f.valid_degree
        expected = _indicator_le(sigma, n + 1, through)
        diff = f - expected
        if not diff.is_zero_through(through) and witness is None:
            bad = min(e for e in diff.coeffs if e <= through)
            max_abs = diff.max_abs_through(through)
            witness = {
                "iteration": n,
                "exponent": bad,
                "got": str(f.coefficient(bad)),
                "want": str(expected.coefficient(bad)),
            }
    return exact_report(
        "polbasis",
        {"iterations": n_iter_max, "degree": n_max},
        is_zero=witness is None,
        max_abs=max_abs,
        degrees_checked=f"0..{through} at the final iterate",
        witness=witness,
        info={"identity": "F^n(z+z^2) = indicator of sigma <= n+1"},
    )


def check_functional_equation(
    lam, n_max: int, cap: int | None = None
) -> VerificationReport:
    """Residual of F(gtilde - 1) = (gtilde - 1)/lambda + (lambda - 1/lambda) z."""
    lam = as_coeff(lam)
    if lam.is_zero:
        raise ZeroDivisionError("the functional equation needs lambda != 0")
    params = CharParams(k=0, l=1, lam=lam, reduced=True)
    gtilde = build_char(params, n_max, cap)
    h = gtilde - SparseSeries.monomial(0, 1, n_max)
    lhs = apply_F(h)
    through = lhs.valid_degree
    inv = ONE / lam
    rhs = h.scale(inv) + SparseSeries.monomial(1, lam - inv, n_max)
    diff = lhs - rhs
    witness = None
    if not diff.is_zero_through(through):
        bad = min(n for n in diff.coeffs if n <= through)
        witness = {
            "exponent": bad,
            "got": str(lhs.coefficient(bad)),
            "want": str(rhs.coefficient(bad)),
        }
    return exact_report(
        "funceq",
        {"lambda": str(lam), "degree": n_max},
        is_zero=witness is None,
        max_abs=diff.max_abs_through(through),
        degrees_checked=f"0..{through}",
        witness=witness,
    )


def q_series_bound(q: Fraction) -> Fraction:
    """(2-q) q / (1-2q), the closed-form bound for the q-sum."""
    q = Fraction(q)
    return (2 - q) * q / (1 - 2 * q)


def _histogram_sum(histogram: dict[int, int], q: Fraction) -> Fraction:
    return sum((count * q**s for s, count in histogram.items()), Fraction(0))


def check_q_inequality(
    q, n_max: int, cap: int | None = None, checkpoints=(), sigma=None
) -> VerificationReport:
    """Exact partial sums of q^sigma(n) for n in [2, n_max] against the bound.

    Sums are taken over a stopping-time histogram, so the exact arithmetic
    touches one q-power per distinct sigma value rather than one per n.
    A precomputed ``sigma`` sweep may be passed in to share work.
    """
    q = Fraction(q)
    if not (0 < q < Fraction(1, 2)):
        raise ValueError("q must lie in (0, 1/2)")
    if sigma is None:
        sigma = _sigma_values(n_max, cap)
    elif len(sigma) < n_max + 1 or any(sigma[n] < 0 for n in range(2, n_max + 1)):
        raise ValueError("provided sigma sweep is too short or unresolved")
    histogram: dict[int, int] = {}
    checkpoint_sums = {}
    pending = sorted(set(checkpoints))
    for n in range(2, n_max + 1):
        s = sigma[n]
        histogram[s] = histogram.get(s, 0) + 1
        while pending and n == pending[0]:
            checkpoint_sums[n] = _histogram_sum(histogram, q)
            pending.pop(0)
    partial = _histogram_sum(histogram, q)
    bound = q_series_bound(q)
    ok = partial <= bound
    info = {
        "partial_sum": str(partial),
        "partial_sum_float": float(partial),
        "bound": str(bound),
        "bound_float": float(bound),
        "max_sigma": max(histogram) if histogram else 0,
    }
    if checkpoint_sums:
        info["checkpoints"] = {str(k): float(v) for k, v in checkpoint_sums.items()}
    return exact_report(
        "inequality",
        {"q": str(q), "n_max": n_max},
        is_zero=ok,
        max_abs=float(partial - bound) if not ok else 0.0,
        degrees_checked=f"2..{n_max}",
        witness=None if ok else {"partial_sum": str(partial), "bound": str(bound)},
        info=info,
    )
