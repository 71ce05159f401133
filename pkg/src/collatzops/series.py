"""Sparse truncated power series with authoritative-prefix watermarks.

A :class:`SparseSeries` stores finitely many nonzero coefficients together
with a ``valid_degree`` watermark: every exponent up to the watermark is an
exact coefficient of the underlying (possibly infinite) series, while stored
entries above it are advisory only.  Operator applications and products
shrink the watermark by operation-specific laws so that identity checks
always know which coefficients they may trust.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .coeffs import ZERO, Coeff, as_coeff, coeff_from_strings, coeff_to_strings


class SparseSeries:
    """Truncated formal power series with nonnegative integer exponents."""

    __slots__ = ("coeffs", "valid_degree")

    def __init__(self, coeffs=(), valid_degree: int = 0):
        if isinstance(valid_degree, bool) or not isinstance(valid_degree, int):
            raise TypeError("valid_degree must be an integer")
        if valid_degree < 0:
            raise ValueError("valid_degree must be nonnegative")
        store: dict[int, Coeff] = {}
        items = coeffs.items() if hasattr(coeffs, "items") else coeffs
        for exponent, value in items:
            if isinstance(exponent, bool) or not isinstance(exponent, int):
                raise TypeError(f"exponent {exponent!r} is not an integer")
            if exponent < 0:
                raise ValueError(f"negative exponent {exponent}")
            c = as_coeff(value)
            if exponent in store:
                c = store[exponent] + c
            if c.is_zero:
                store.pop(exponent, None)
            else:
                store[exponent] = c
        self.coeffs = store
        self.valid_degree = valid_degree

    @classmethod
    def zero(cls, valid_degree: int = 0):
        return cls((), valid_degree)

    @classmethod
    def monomial(cls, exponent: int, value=1, valid_degree: int | None = None):
        if valid_degree is None:
            valid_degree = exponent
        return cls({exponent: value}, valid_degree)

    # -- inspection -------------------------------------------------------------

    def coefficient(self, exponent: int) -> Coeff:
        return self.coeffs.get(exponent, ZERO)

    def items(self):
        return sorted(self.coeffs.items())

    @property
    def exponents(self):
        return tuple(sorted(self.coeffs))

    @property
    def max_exponent(self):
        return max(self.coeffs) if self.coeffs else None

    @property
    def min_exponent(self):
        return min(self.coeffs) if self.coeffs else None

    @property
    def is_exact(self) -> bool:
        return all(c.exact for c in self.coeffs.values())

    def is_zero_through(self, degree: int | None = None) -> bool:
        degree = self.valid_degree if degree is None else degree
        return all(n > degree for n in self.coeffs)

    def max_abs_through(self, degree: int | None = None) -> float:
        """Largest coefficient magnitude on the authoritative prefix."""
        degree = self.valid_degree if degree is None else degree
        return max((abs(c) for n, c in self.coeffs.items() if n <= degree), default=0.0)

    def agrees_with(self, other: "SparseSeries", through: int) -> bool:
        for n in set(self.coeffs) | set(other.coeffs):
            if n <= through and self.coefficient(n) != other.coefficient(n):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, SparseSeries):
            return NotImplemented
        return self.coeffs == other.coeffs and self.valid_degree == other.valid_degree

    def __repr__(self):
        inner = ", ".join(f"{n}: {c}" for n, c in self.items())
        return f"SparseSeries({{{inner}}}, valid_degree={self.valid_degree})"

    # -- ring operations ----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, SparseSeries):
            return NotImplemented
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            s = out.get(n, ZERO) + c
            if s.is_zero:
                out.pop(n, None)
            else:
                out[n] = s
        return SparseSeries(out, min(self.valid_degree, other.valid_degree))

    def __sub__(self, other):
        if not isinstance(other, SparseSeries):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return SparseSeries({n: -c for n, c in self.coeffs.items()}, self.valid_degree)

    def scale(self, value) -> "SparseSeries":
        c = as_coeff(value)
        return SparseSeries({n: c * v for n, v in self.coeffs.items()}, self.valid_degree)

    def __mul__(self, other):
        if isinstance(other, SparseSeries):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def truncate(self, degree: int) -> "SparseSeries":
        return SparseSeries(
            {n: c for n, c in self.coeffs.items() if n <= degree},
            min(self.valid_degree, degree),
        )


def add(a: SparseSeries, b: SparseSeries) -> SparseSeries:
    return a + b


def scale(a: SparseSeries, value) -> SparseSeries:
    return a.scale(value)


def _known_valuation(f: SparseSeries) -> int:
    """Least exponent with a known nonzero coefficient (watermark+1 if none)."""
    known = [n for n in f.coeffs if n <= f.valid_degree]
    return min(known) if known else f.valid_degree + 1


def multiply(a: SparseSeries, b) -> SparseSeries:
    """Product of two series (or of a series and a scalar).

    The result watermark follows the convolution rule: a coefficient at n
    is trusted only when no unknown coefficient beyond either operand's
    watermark can contribute to it.
    """
    if not isinstance(b, SparseSeries):
        return a.scale(b)
    out: dict[int, Coeff] = {}
    for n, c in a.coeffs.items():
        for m, d in b.coeffs.items():
            k = n + m
            s = out.get(k, ZERO) + c * d
            if s.is_zero:
                out.pop(k, None)
            else:
                out[k] = s
    valid = min(
        a.valid_degree + _known_valuation(b),
        b.valid_degree + _known_valuation(a),
        a.valid_degree + b.valid_degree + 1,
    )
    return SparseSeries(out, valid)


def compose_power(f: SparseSeries, m: int) -> SparseSeries:
    """Substitute z -> z^m, sending each exponent n to m*n.

    Exponents strictly between multiples of m are known zero, so the
    watermark extends to m*valid_degree + (m-1).
    """
    if m < 1:
        raise ValueError("composition power must be a positive integer")
    return SparseSeries(
        {m * n: c for n, c in f.coeffs.items()},
        m * f.valid_degree + (m - 1),
    )


def even_part(f: SparseSeries) -> SparseSeries:
    return SparseSeries({n: c for n, c in f.coeffs.items() if n % 2 == 0}, f.valid_degree)


def odd_part(f: SparseSeries) -> SparseSeries:
    return SparseSeries({n: c for n, c in f.coeffs.items() if n % 2 == 1}, f.valid_degree)


def hardy_inner(f: SparseSeries, g: SparseSeries) -> Coeff:
    """Coefficient pairing sum(f_n * conj(g_n)).

    Both operands must be authoritative wherever the other has support,
    otherwise the pairing is indeterminate and a ValueError is raised.
    """
    if g.max_exponent is not None and f.valid_degree < g.max_exponent:
        raise ValueError(
            f"left operand authoritative only to {f.valid_degree}, "
            f"right has support up to {g.max_exponent}"
        )
    if f.max_exponent is not None and g.valid_degree < f.max_exponent:
        raise ValueError(
            f"right operand authoritative only to {g.valid_degree}, "
            f"left has support up to {f.max_exponent}"
        )
    total = ZERO
    for n, c in f.coeffs.items():
        d = g.coeffs.get(n)
        if d is not None:
            total = total + c * d.conj()
    return total


def _require_support_within_watermark(f: SparseSeries, what: str):
    if f.max_exponent is not None and f.max_exponent > f.valid_degree:
        raise ValueError(
            f"{what} needs the series authoritative over its support "
            f"(support up to {f.max_exponent}, watermark {f.valid_degree})"
        )


def hardy_norm_sq(f: SparseSeries):
    """Squared Hardy norm: sum of squared coefficient moduli.

    Exact (Fraction) when every coefficient is exact, float otherwise.
    """
    _require_support_within_watermark(f, "hardy_norm_sq")
    total = Fraction(0) if f.is_exact else 0.0
    for c in f.coeffs.values():
        total += c.abs2()
    return total


def bergman_norm_sq(f: SparseSeries, quotient_cutoff: int | None = None):
    """Squared Bergman norm, returned as a multiple of pi.

    The weight at exponent n is pi/(n+1); pi is kept symbolic so EXACT
    inputs give an exact rational multiple (e.g. ``Fraction(1, 4)`` for z^3).
    With ``quotient_cutoff`` set, exponents <= cutoff are projected out
    (the quotient modulo span{1, ..., z^cutoff}).
    """
    _require_support_within_watermark(f, "bergman_norm_sq")
    total = Fraction(0) if f.is_exact else 0.0
    for n, c in f.coeffs.items():
        if quotient_cutoff is not None and n <= quotient_cutoff:
            continue
        if f.is_exact:
            total += c.abs2() * Fraction(1, n + 1)
        else:
            total += float(c.abs2()) / (n + 1)
    return total


def evaluate(f: SparseSeries, z0: complex, with_remainder_bound: bool = False):
    """Partial sum of f at a point strictly inside the unit disk.

    With ``with_remainder_bound`` a crude tail estimate
    |z0|^(valid_degree+1)/(1-|z0|) * max|coeff| is returned alongside.
    """
    z0 = complex(z0)
    r = abs(z0)
    if r >= 1:
        raise ValueError("evaluation point must satisfy |z0| < 1")
    value = 0j
    for n, c in f.coeffs.items():
        value += c.to_complex() * z0**n
    if not with_remainder_bound:
        return value
    peak = max((abs(c) for c in f.coeffs.values()), default=0.0)
    bound = r ** (f.valid_degree + 1) / (1 - r) * peak
    return value, bound


# -- bivariate series ------------------------------------------------------------


class BiSeries:
    """Truncated bivariate series in (z, w), authoritative on a rectangle."""

    __slots__ = ("coeffs", "valid_degree_z", "valid_degree_w")

    def __init__(self, coeffs=(), valid_degree_z: int = 0, valid_degree_w: int = 0):
        if valid_degree_z < 0 or valid_degree_w < 0:
            raise ValueError("watermarks must be nonnegative")
        store: dict[tuple[int, int], Coeff] = {}
        items = coeffs.items() if hasattr(coeffs, "items") else coeffs
        for key, value in items:
            n, m = key
            if n < 0 or m < 0:
                raise ValueError(f"negative exponent pair {key!r}")
            c = as_coeff(value)
            if (n, m) in store:
                c = store[(n, m)] + c
            if c.is_zero:
                store.pop((n, m), None)
            else:
                store[(n, m)] = c
        self.coeffs = store
        self.valid_degree_z = valid_degree_z
        self.valid_degree_w = valid_degree_w

    @classmethod
    def from_layers(cls, layers: dict[int, SparseSeries], valid_degree_z: int, valid_degree_w: int):
        coeffs = {}
        for m, layer in layers.items():
            for n, c in layer.coeffs.items():
                coeffs[(n, m)] = c
        return cls(coeffs, valid_degree_z, valid_degree_w)

    def coefficient(self, n: int, m: int) -> Coeff:
        return self.coeffs.get((n, m), ZERO)

    def layer(self, m: int) -> SparseSeries:
        """The z-series multiplying w^m."""
        return SparseSeries(
            {n: c for (n, mm), c in self.coeffs.items() if mm == m},
            self.valid_degree_z,
        )

    @property
    def is_exact(self) -> bool:
        return all(c.exact for c in self.coeffs.values())

    def __sub__(self, other):
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            s = out.get(key, ZERO) - c
            if s.is_zero:
                out.pop(key, None)
            else:
                out[key] = s
        return BiSeries(
            out,
            min(self.valid_degree_z, other.valid_degree_z),
            min(self.valid_degree_w, other.valid_degree_w),
        )

    def w_shift(self) -> "BiSeries":
        """Multiply by w: every layer moves up one w-power."""
        return BiSeries(
            {(n, m + 1): c for (n, m), c in self.coeffs.items()},
            self.valid_degree_z,
            self.valid_degree_w + 1,
        )

    def max_abs_on(self, nz: int, nw: int) -> float:
        return max(
            (abs(c) for (n, m), c in self.coeffs.items() if n <= nz and m <= nw),
            default=0.0,
        )

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        return (
            self.coeffs == other.coeffs
            and self.valid_degree_z == other.valid_degree_z
            and self.valid_degree_w == other.valid_degree_w
        )

    def __repr__(self):
        return (
            f"BiSeries(<{len(self.coeffs)} cells>, "
            f"valid_degree_z={self.valid_degree_z}, valid_degree_w={self.valid_degree_w})"
        )


# -- file formats ------------------------------------------------------------------
#
# Series files are JSON documents.  EXACT coefficients serialize real and
# imaginary parts as "p/q" strings (bit-exact round trip); FLOAT ones as
# JSON numbers.


def _mode_of(values) -> str:
    return "exact" if all(c.exact for c in values) else "float"


def series_to_payload(f: SparseSeries) -> dict:
    mode = _mode_of(f.coeffs.values())
    rows = []
    for n, c in f.items():
        if mode == "exact":
            re_s, im_s = coeff_to_strings(c)
            rows.append([n, re_s, im_s])
        else:
            rows.append([n, float(c.re), float(c.im)])
    return {"mode": mode, "valid_degree": f.valid_degree, "coeffs": rows}


def series_from_payload(payload: dict) -> SparseSeries:
    mode = payload["mode"]
    if mode not in ("exact", "float"):
        raise ValueError(f"unknown series mode {mode!r}")
    coeffs = {}
    for row in payload["coeffs"]:
        n, re_v, im_v = row
        if mode == "exact":
            coeffs[int(n)] = coeff_from_strings(re_v, im_v)
        else:
            coeffs[int(n)] = Coeff(float(re_v), float(im_v))
    return SparseSeries(coeffs, int(payload["valid_degree"]))


def save_series(f: SparseSeries, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(series_to_payload(f), fh, sort_keys=True)
        fh.write("\n")


def load_series(path) -> SparseSeries:
    with open(path, encoding="utf-8") as fh:
        return series_from_payload(json.load(fh))


def biseries_to_payload(f: BiSeries) -> dict:
    mode = _mode_of(f.coeffs.values())
    rows = []
    for (n, m), c in sorted(f.coeffs.items()):
        if mode == "exact":
            re_s, im_s = coeff_to_strings(c)
            rows.append([n, m, re_s, im_s])
        else:
            rows.append([n, m, float(c.re), float(c.im)])
    return {
        "mode": mode,
        "valid_degree_z": f.valid_degree_z,
        "valid_degree_w": f.valid_degree_w,
        "coeffs": rows,
    }


def biseries_from_payload(payload: dict) -> BiSeries:
    mode = payload["mode"]
    if mode not in ("exact", "float"):
        raise ValueError(f"unknown series mode {mode!r}")
    coeffs = {}
    for n, m, re_v, im_v in payload["coeffs"]:
        if mode == "exact":
            coeffs[(int(n), int(m))] = coeff_from_strings(re_v, im_v)
        else:
            coeffs[(int(n), int(m))] = Coeff(float(re_v), float(im_v))
    return BiSeries(coeffs, int(payload["valid_degree_z"]), int(payload["valid_degree_w"]))


def save_biseries(f: BiSeries, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(biseries_to_payload(f), fh, sort_keys=True)
        fh.write("\n")


def load_biseries(path) -> BiSeries:
    with open(path, encoding="utf-8") as fh:
        return biseries_from_payload(json.load(fh))
