"""The coefficient-index operators T, F, L, B, S on sparse series.

All five act by moving or pulling coefficients along the reduced Collatz
map.  Each application shrinks (or stretches) the authoritative watermark
by the operator's own law; collisions under the pushforward T are summed,
matching linearity.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

from .coeffs import ZERO, Coeff
from .collatz import collatz_step
from .series import SparseSeries

QUOTIENT_CUTOFF = 2  # span{1, z, z^2} is the trivial invariant subspace


def t_valid_law(n: int) -> int:
    return n // 2


def f_valid_law(n: int) -> int:
    return max(0, (2 * n - 1) // 3)


def l_valid_law(n: int) -> int:
    return n // 2


def b_valid_law(n: int) -> int:
    return 3 * n + 1


def s_inv_valid_law(n: int) -> int:
    return 2 * n + 1


def project_quotient(f: SparseSeries) -> SparseSeries:
    """Project out exponents <= 2 (the quotient modulo span{1, z, z^2})."""
    return SparseSeries(
        {n: c for n, c in f.coeffs.items() if n > QUOTIENT_CUTOFF}, f.valid_degree
    )


def apply_T(f: SparseSeries) -> SparseSeries:
    """Pushforward: coefficient at n moves to exponent T(n); collisions sum."""
    out: dict[int, Coeff] = {}
    for n, c in f.coeffs.items():
        t = collatz_step(n)
        s = out.get(t, ZERO) + c
        if s.is_zero:
            out.pop(t, None)
        else:
            out[t] = s
    return SparseSeries(out, t_valid_law(f.valid_degree))


def apply_F(g: SparseSeries) -> SparseSeries:
    """Pullback: output coefficient at m is the input coefficient at T(m).

    Sparse form: a coefficient at n lands at 2n always, and additionally at
    (2n-1)/3 when n = 2 mod 3.  The two target families never collide.
    """
    out: dict[int, Coeff] = {}
    for n, c in g.coeffs.items():
        out[2 * n] = c
        if n % 3 == 2:
            out[(2 * n - 1) // 3] = c
    return SparseSeries(out, f_valid_law(g.valid_degree))


def apply_L(f: SparseSeries) -> SparseSeries:
    """Half of the even part: coefficient at 2n moves to n, odd exponents die."""
    out = {n // 2: c for n, c in f.coeffs.items() if n % 2 == 0}
    return SparseSeries(out, l_valid_law(f.valid_degree))


def apply_B(f: SparseSeries) -> SparseSeries:
    """z * f(z^3): exponent n goes to 3n+1."""
    return SparseSeries(
        {3 * n + 1: c for n, c in f.coeffs.items()}, b_valid_law(f.valid_degree)
    )


def apply_S_inv(g: SparseSeries) -> SparseSeries:
    """The right inverse g -> g(z^2); apply_T recovers the input."""
    return SparseSeries(
        {2 * n: c for n, c in g.coeffs.items()}, s_inv_valid_law(g.valid_degree)
    )


@dataclass(frozen=True)
class OperatorKind:
    """Tag for one of the five operators, with an optional quotient flag."""

    tag: str
    quotient: bool = False

    _APPLY = {
        "T": apply_T,
        "F": apply_F,
        "L": apply_L,
        "B": apply_B,
        "Sinv": apply_S_inv,
    }
    _LAW = {
        "T": t_valid_law,
        "F": f_valid_law,
        "L": l_valid_law,
        "B": b_valid_law,
        "Sinv": s_inv_valid_law,
    }

    def __post_init__(self):
        if self.tag not in self._APPLY:
            raise ValueError(f"unknown operator tag {self.tag!r}")
        if self.quotient and self.tag != "T":
            raise ValueError("the quotient flag applies to the T operator only")

    def apply(self, f: SparseSeries) -> SparseSeries:
        out = self._APPLY[self.tag](f)
        if self.quotient:
            out = project_quotient(out)
        return out

    def valid_law(self, n: int) -> int:
        return self._LAW[self.tag](n)


T_OP = OperatorKind("T")
F_OP = OperatorKind("F")
L_OP = OperatorKind("L")
B_OP = OperatorKind("B")
S_INV = OperatorKind("Sinv")
T_OP_QUOTIENT = OperatorKind("T", quotient=True)


def apply_operator(kind: OperatorKind, f: SparseSeries) -> SparseSeries:
    return kind.apply(f)


def operator_power(
    kind: OperatorKind,
    n: int,
    f: SparseSeries,
    min_out_degree: int | None = None,
) -> SparseSeries:
    """n-fold application with the watermark law composed n times.

    When ``min_out_degree`` is given, the reachable output watermark is
    checked before any work and a ValueError raised if unattainable.
    """
    if n < 0:
        raise ValueError("operator power must be nonnegative")
    if min_out_degree is not None:
        reach = f.valid_degree
        for _ in range(n):
            reach = kind.valid_law(reach)
        if reach < min_out_degree:
            raise ValueError(
                f"input watermark {f.valid_degree} only reaches output degree "
                f"{reach} after {n} applications; {min_out_degree} requested"
            )
    for _ in range(n):
        f = kind.apply(f)
    return f


# -- complex-exponent monomial action -----------------------------------------------

PRUNE_TOL = 1e-15
MERGE_TOL = 1e-12


@dataclass(frozen=True)
class GenTerm:
    amplitude: complex
    exponent: complex


class GenMonomialSum:
    """Finite sum of c * z^alpha terms with complex exponents alpha.

    Terms are kept normalized: amplitudes below PRUNE_TOL are dropped and
    exponents within MERGE_TOL of each other are merged.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        self.terms = _normalize_terms(terms)

    @classmethod
    def monomial(cls, alpha, amplitude=1.0):
        return cls([GenTerm(complex(amplitude), complex(alpha))])

    def l2_amplitude(self) -> float:
        return sum(abs(t.amplitude) ** 2 for t in self.terms)

    def exponent_spread(self) -> tuple[float, float, float]:
        """(min Re, max Re, max |Im|) over exponents; zeros when empty."""
        if not self.terms:
            return (0.0, 0.0, 0.0)
        res = [t.exponent.real for t in self.terms]
        ims = [abs(t.exponent.imag) for t in self.terms]
        return (min(res), max(res), max(ims))

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __repr__(self):
        return f"GenMonomialSum({self.terms!r})"


def _normalize_terms(terms) -> tuple[GenTerm, ...]:
    pending = sorted(
        (t for t in terms if abs(t.amplitude) >= PRUNE_TOL),
        key=lambda t: (t.exponent.real, t.exponent.imag),
    )
    merged: list[GenTerm] = []
    for t in pending:
        if merged and abs(merged[-1].exponent - t.exponent) <= MERGE_TOL:
            amp = merged[-1].amplitude + t.amplitude
            merged[-1] = GenTerm(amp, merged[-1].exponent)
        else:
            merged.append(t)
    return tuple(t for t in merged if abs(t.amplitude) >= PRUNE_TOL)


def split_genmonomial(x: GenMonomialSum) -> list[GenTerm]:
    """Raw two-branch split of every term, before pruning and merging.

    z^a maps to z^(a/2) (1+e^(a pi i))/2 + z^((3a+1)/2) (1-e^(a pi i))/2.
    For real a each split conserves l2 amplitude mass exactly (the two
    branch weights behave like probability amplitudes); merging colliding
    exponents afterwards does not, because merged amplitudes interfere.
    """
    out = []
    for t in x.terms:
        phase = cmath.exp(t.exponent * cmath.pi * 1j)
        out.append(GenTerm(t.amplitude * (1 + phase) / 2, t.exponent / 2))
        out.append(GenTerm(t.amplitude * (1 - phase) / 2, (3 * t.exponent + 1) / 2))
    return out


def apply_T_genmonomial(x: GenMonomialSum) -> GenMonomialSum:
    """One pushforward step: split, prune tiny amplitudes, merge exponents."""
    return GenMonomialSum(split_genmonomial(x))
