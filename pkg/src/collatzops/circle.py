"""The pushforward operator on the unit circle, acting on trigonometric
polynomials by moving Fourier frequencies along the Collatz map.

The frequency action e_n -> e_(T(n)) is exact; the half-angle evaluation
formula from the circle realization serves as an independent pointwise
oracle.  This module works in FLOAT mode throughout (roots of unity are
irrational) with fixed tolerances.
"""

from __future__ import annotations

import cmath
import json

from .collatz import collatz_step
from .report import VerificationReport, exact_report, float_report

POINTWISE_TOL = 1e-10
MEAN_TOL = 1e-10


class TrigPoly:
    """Two-sided trigonometric polynomial sum of c_n e^(2 pi i n phi)."""

    __slots__ = ("coeffs", "band_limit")

    def __init__(self, coeffs=(), band_limit: int | None = None):
        store: dict[int, complex] = {}
        items = coeffs.items() if hasattr(coeffs, "items") else coeffs
        for n, c in items:
            if not isinstance(n, int):
                raise TypeError(f"frequency {n!r} is not an integer")
            c = complex(c)
            if c != 0:
                store[n] = store.get(n, 0j) + c
                if store[n] == 0:
                    del store[n]
        width = max((abs(n) for n in store), default=0)
        if band_limit is None:
            band_limit = width
        elif band_limit < width:
            raise ValueError(f"band_limit {band_limit} below support width {width}")
        self.coeffs = store
        self.band_limit = band_limit

    def coefficient(self, n: int) -> complex:
        return self.coeffs.get(n, 0j)

    def items(self):
        return sorted(self.coeffs.items())

    def mean(self) -> complex:
        """Integral over the circle = the frequency-0 coefficient."""
        return self.coefficient(0)

    def __eq__(self, other):
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        return f"TrigPoly({dict(self.items())!r}, band_limit={self.band_limit})"


def evaluate_angle(f: TrigPoly, phi: float) -> complex:
    """Value at the angle phi (in turns, so phi in [0, 1) covers the circle)."""
    return sum(c * cmath.exp(2j * cmath.pi * n * phi) for n, c in f.coeffs.items())


def circle_apply_T(f: TrigPoly) -> TrigPoly:
    """Frequency pushforward e_n -> e_(T(n)); colliding targets sum."""
    out: dict[int, complex] = {}
    for n, c in f.coeffs.items():
        t = collatz_step(n)
        out[t] = out.get(t, 0j) + c
    return TrigPoly(out)


def circle_apply_L(f: TrigPoly) -> TrigPoly:
    """Transfer operator: even frequencies halve, odd frequencies vanish."""
    return TrigPoly({n // 2: c for n, c in f.coeffs.items() if n % 2 == 0})


def circle_apply_B(f: TrigPoly) -> TrigPoly:
    """e^(2 pi i phi) f(3 phi): frequency n goes to 3n + 1."""
    return TrigPoly({3 * n + 1: c for n, c in f.coeffs.items()})


def pointwise_T(f, phi: float) -> complex:
    """The half-angle evaluation formula for the circle pushforward.

    Accepts a TrigPoly or any 1-periodic callable; used as the oracle the
    frequency-side implementation is validated against.
    """
    if isinstance(f, TrigPoly):
        g = lambda x: evaluate_angle(f, x)
    else:
        g = f
    half = 0.5 * (g(phi / 2) + g((phi + 1) / 2))
    twist = 0.5 * cmath.exp(1j * cmath.pi * phi) * (g(3 * phi / 2) - g((3 * phi + 1) / 2))
    return half + twist


def check_pointwise_agreement(
    f: TrigPoly, n_angles: int = 256, tol: float = POINTWISE_TOL
) -> VerificationReport:
    """Frequency pushforward vs the evaluation formula on a uniform grid."""
    image = circle_apply_T(f)
    worst = 0.0
    witness = None
    for j in range(n_angles):
        phi = j / n_angles
        gap = abs(evaluate_angle(image, phi) - pointwise_T(f, phi))
        if gap > worst:
            worst = gap
            witness = {"angle": phi, "gap": gap}
    return float_report(
        "measure",
        {"check": "pointwise agreement", "band_limit": f.band_limit,
         "angles": n_angles},
        max_abs=worst,
        tolerance=tol,
        degrees_checked=f"|frequency| <= {f.band_limit}",
        witness=witness if worst > tol else None,
    )


def check_mean_invariance(f, grid_size: int | None = None) -> VerificationReport:
    """Mean of the pushforward equals the mean of the input.

    For a TrigPoly the comparison is exact (both equal the frequency-0
    coefficient).  For a 1-periodic callable the means are computed by
    uniform quadrature on ``grid_size`` points and held to MEAN_TOL;
    sampled inputs are assumed band-limited below the grid.
    """
    if isinstance(f, TrigPoly):
        if grid_size is not None:
            if grid_size & (grid_size - 1) or grid_size < 4 * max(f.band_limit, 1):
                raise ValueError(
                    "grid_size must be a power of two at least 4x the band limit"
                )
        before = f.mean()
        after = circle_apply_T(f).mean()
        return exact_report(
            "measure",
            {"check": "mean invariance", "band_limit": f.band_limit},
            is_zero=before == after,
            max_abs=abs(after - before),
            degrees_checked=f"|frequency| <= {f.band_limit}",
            witness=None if before == after else
            {"mean_before": str(before), "mean_after": str(after)},
            info={"mean": repr(before)},
        )
    if grid_size is None or grid_size < 4:
        raise ValueError("sampled inputs need an explicit grid_size >= 4")
    before = sum(f(j / grid_size) for j in range(grid_size)) / grid_size
    after = sum(pointwise_T(f, j / grid_size) for j in range(grid_size)) / grid_size
    gap = abs(after - before)
    return float_report(
        "measure",
        {"check": "mean invariance (quadrature)", "grid_size": grid_size},
        max_abs=gap,
        tolerance=MEAN_TOL,
        degrees_checked=f"grid 0..{grid_size - 1}",
        witness=None if gap <= MEAN_TOL else
        {"mean_before": repr(before), "mean_after": repr(after)},
    )


def trigpoly_to_payload(f: TrigPoly) -> dict:
    return {
        "band_limit": f.band_limit,
        "coeffs": [[n, c.real, c.imag] for n, c in f.items()],
    }


def trigpoly_from_payload(payload: dict) -> TrigPoly:
    coeffs = {int(n): complex(re, im) for n, re, im in payload["coeffs"]}
    return TrigPoly(coeffs, int(payload["band_limit"]))


def save_trigpoly(f: TrigPoly, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(trigpoly_to_payload(f), fh, sort_keys=True)
        fh.write("\n")


def load_trigpoly(path) -> TrigPoly:
    with open(path, encoding="utf-8") as fh:
        return trigpoly_from_payload(json.load(fh))
