"""Symbolic rewriting of weighted arithmetic-progression series.

Two families of symbols are closed under the pushforward operator:

* G terms — stopping-time-weighted, beta-damped progressions
  sum over m of lambda^sigma(l*m+k) beta^m z^(l*m+k);
* Psi terms — progressions restricted to indices that are sums of a fixed
  number of distinct powers of two.

``rewrite_T`` applies the four-parity case table once; ``expand`` turns a
symbol into honest coefficients; ``oracle_compare`` plays the two paths
against each other.  The printed G rewrite fails exactly at source
exponents 0 and 1 (where sigma(n) = 1 + sigma(T(n)) breaks down), so the
comparator excludes those two cells and quantifies the discrepancy instead
of hiding it.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .coeffs import ONE, Coeff, as_coeff
from .collatz import collatz_step, default_cap, total_stopping_time
from .fixed_points import build_psi_subset
from .operators import apply_T
from .report import VerificationReport, compare_series_report, exact_report
from .series import SparseSeries
from .stopping_basis import UnresolvedStoppingTime


@dataclass(frozen=True)
class GTerm:
    """scalar * g_{k,l} with weight lambda and damping beta."""

    scalar: Coeff
    k: int
    l: int
    lam: Coeff
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "scalar", as_coeff(self.scalar))
        object.__setattr__(self, "lam", as_coeff(self.lam))
        object.__setattr__(self, "beta", Fraction(self.beta))
        if self.k < 0:
            raise ValueError("k must be nonnegative")
        if self.l < 1:
            raise ValueError("l must be a positive integer")
        if not (0 < self.beta <= 1):
            raise ValueError("beta must lie in (0, 1]")

    def key(self):
        return ("g", self.k, self.l, self.lam, self.beta)


@dataclass(frozen=True)
class PsiTerm:
    """scalar * Psi^order_{l,m}; order counts binary ones in the index set.

    Order-0 terms are bare monomials z^l, so their step parameter is
    canonicalized to 1 and plays no further role.
    """

    scalar: Coeff
    l: int
    m: int
    order: int

    def __post_init__(self):
        object.__setattr__(self, "scalar", as_coeff(self.scalar))
        if self.l < 0:
            raise ValueError("l must be nonnegative")
        if self.m < 1:
            raise ValueError("m must be a positive integer")
        if self.order < 0:
            raise ValueError("subset order must be nonnegative")
        if self.order == 0:
            object.__setattr__(self, "m", 1)

    def key(self):
        return ("psi", self.l, self.m, self.order)


ProgressionTerm = GTerm | PsiTerm


class TermSum:
    """Finite sum of progression terms, merged on identical parameters."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        merged: dict[tuple, ProgressionTerm] = {}
        for t in terms:
            key = t.key()
            if key in merged:
                merged[key] = replace(merged[key], scalar=merged[key].scalar + t.scalar)
            else:
                merged[key] = t
        self.terms = tuple(
            t for t in (merged[k] for k in sorted(merged, key=repr))
            if not t.scalar.is_zero
        )

    def __add__(self, other):
        return TermSum(self.terms + other.terms)

    def __sub__(self, other):
        return TermSum(
            self.terms + tuple(replace(t, scalar=-t.scalar) for t in other.terms)
        )

    def __eq__(self, other):
        if not isinstance(other, TermSum):
            return NotImplemented
        return self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __repr__(self):
        return f"TermSum({list(self.terms)!r})"


def rewrite_T(term: ProgressionTerm) -> TermSum:
    """One application of the pushforward via the parity case table."""
    if isinstance(term, GTerm):
        s, k, l, lam, beta = term.scalar, term.k, term.l, term.lam, term.beta
        s = s * lam
        if k % 2 == 0 and l % 2 == 0:
            out = [GTerm(s, k // 2, l // 2, lam, beta)]
        elif k % 2 == 1 and l % 2 == 0:
            out = [GTerm(s, (3 * k + 1) // 2, 3 * l // 2, lam, beta)]
        elif k % 2 == 0 and l % 2 == 1:
            out = [
                GTerm(s * Coeff(beta), (3 * (k + l) + 1) // 2, 3 * l, lam, beta**2),
                GTerm(s, k // 2, l, lam, beta**2),
            ]
        else:
            out = [
                GTerm(s * Coeff(beta), (k + l) // 2, l, lam, beta**2),
                GTerm(s, (3 * k + 1) // 2, 3 * l, lam, beta**2),
            ]
        return TermSum(out)
    if term.order == 0:
        return TermSum([PsiTerm(term.scalar, collatz_step(term.l), 1, 0)])
    s, l, m, order = term.scalar, term.l, term.m, term.order
    if l % 2 == 0 and m % 2 == 0:
        out = [PsiTerm(s, l // 2, m // 2, order)]
    elif l % 2 == 1 and m % 2 == 0:
        out = [PsiTerm(s, (3 * l + 1) // 2, 3 * m // 2, order)]
    elif l % 2 == 0 and m % 2 == 1:
        out = [
            PsiTerm(s, l // 2, m, order),
            PsiTerm(s, (3 * (l + m) + 1) // 2, 3 * m, order - 1),
        ]
    else:
        out = [
            PsiTerm(s, (3 * l + 1) // 2, 3 * m, order),
            PsiTerm(s, (l + m) // 2, m, order - 1),
        ]
    return TermSum(out)


def rewrite_sum(terms: TermSum) -> TermSum:
    out = TermSum()
    for t in terms:
        out = out + rewrite_T(t)
    return out


def expand(term: ProgressionTerm, n_max: int, cap: int | None = None) -> SparseSeries:
    """Exact truncated coefficients of a symbol, watermark n_max."""
    if isinstance(term, PsiTerm):
        return build_psi_subset(term.l, term.m, term.order, n_max).scale(term.scalar)
    cap = default_cap() if cap is None else cap
    coeffs: dict[int, Coeff] = {}
    unresolved = []
    m = 0
    while True:
        e = term.l * m + term.k
        if e > n_max:
            break
        st = total_stopping_time(e, cap)
        if not st.is_resolved:
            unresolved.append(e)
        else:
            c = term.scalar * term.lam**st.value * Coeff(term.beta**m)
            if not c.is_zero:
                coeffs[e] = coeffs.get(e, Coeff(0)) + c
        m += 1
    if unresolved:
        raise UnresolvedStoppingTime(unresolved, cap)
    return SparseSeries(coeffs, n_max)


def expand_sum(terms: TermSum, n_max: int, cap: int | None = None) -> SparseSeries:
    total = SparseSeries.zero(n_max)
    for t in terms:
        total = total + expand(t, n_max, cap)
    return total


def _boundary_sources(term: ProgressionTerm) -> set[int]:
    """Source exponents in {0, 1} covered by a G progression.

    Only G terms misbehave there (their weights use the stopping-time
    recursion); Psi rewrites are exact exponent bookkeeping.
    """
    if not isinstance(term, GTerm):
        return set()
    hit = set()
    for source in (0, 1):
        if source >= term.k and (source - term.k) % term.l == 0:
            hit.add(source)
    return hit


def oracle_compare(
    term: ProgressionTerm, n_max: int, cap: int | None = None
) -> VerificationReport:
    """expand-then-apply vs rewrite-then-expand, coefficientwise.

    Cells fed by source exponents 0 or 1 are excluded from the comparison
    and reported with both values instead (the printed case table is wrong
    exactly there).
    """
    through = n_max // 2
    direct = apply_T(expand(term, n_max, cap))
    rewritten = expand_sum(rewrite_T(term), through, cap)
    excluded = sorted(collatz_step(s) for s in _boundary_sources(term))
    kind = "g" if isinstance(term, GTerm) else "psi"
    return compare_series_report(
        "progressions",
        {"kind": kind, "term": repr(term.key()), "degree": n_max},
        direct,
        rewritten,
        through,
        exclude=excluded,
        info={"excluded_sources": sorted(_boundary_sources(term))},
    )


def decay_experiment(
    start: GTerm, steps: int, expand_degree: int | None = None,
    cap: int | None = None,
) -> VerificationReport:
    """Iterate the rewrite on a G symbol and track the contraction bound.

    Reports the unmerged term count (doubles whenever l is odd), the
    largest scalar against lambda^steps, and the sup-norm proxy
    sum|scalar| / (1 - beta), which must stay below (2 lambda)^steps /
    (1 - beta) throughout.  Requires real rational lambda in (0, 1/2] and
    beta in (0, 1); at lambda = 1/2 the bound is flat and certifies no decay.
    """
    if steps < 0 or steps > 20:
        raise ValueError("steps must lie in 0..20 (term count doubles per split)")
    lam, beta = start.lam, start.beta
    if not (lam.exact and lam.is_real and 0 < lam.re <= Fraction(1, 2)):
        raise ValueError("decay experiment needs rational lambda in (0, 1/2]")
    if not (0 < beta < 1):
        raise ValueError("decay experiment needs beta in (0, 1)")
    if not (start.scalar.exact and start.scalar.is_real):
        raise ValueError("decay experiment tracks real rational scalars only")
    damping = 1 - beta
    terms: list[GTerm] = [start]
    history = []
    witness = None
    for step in range(1, steps + 1):
        terms = [t for old in terms for t in rewrite_T(old)]
        total = sum((abs(t.scalar.re) for t in terms), Fraction(0))
        proxy = total / damping
        bound = (2 * lam.re) ** step / damping
        peak = max(abs(t.scalar.re) for t in terms)
        history.append(
            {
                "step": step,
                "terms": len(terms),
                "proxy": float(proxy),
                "bound": float(bound),
                "max_scalar": float(peak),
            }
        )
        if (proxy > bound or peak > lam.re**step) and witness is None:
            witness = {"step": step, "proxy": str(proxy), "bound": str(bound)}
    info = {
        "history": history,
        "monotone_decreasing": all(
            history[i]["proxy"] <= history[i - 1]["proxy"]
            for i in range(1, len(history))
        ),
        "decay_certified": bool(history) and lam.re < Fraction(1, 2),
    }
    if expand_degree is not None and terms:
        final = expand_sum(TermSum(terms), expand_degree, cap)
        info["final_max_coefficient"] = final.max_abs_through(expand_degree)
    return exact_report(
        "progressions",
        {"check": "decay", "lambda": str(lam), "beta": str(beta), "steps": steps},
        is_zero=witness is None,
        max_abs=0.0 if witness is None else 1.0,
        degrees_checked=f"steps 1..{steps}",
        witness=witness,
        info=info,
    )


def telescoping_check(m_cutoff: int) -> VerificationReport:
    """The finite telescoping identity behind the quadratic fixed point.

    Rewriting Psi^2_{0,1} + sum over k <= M of (Psi^1_{1,3^k} + Psi^1_{2,3^k})
    and subtracting the input must leave exactly Psi^1_{2,3^(M+1)} plus the
    trajectory monomials z^T(1+3^k), z^T(2+3^k).  Checked symbolically.
    """
    if m_cutoff < 1:
        raise ValueError("m_cutoff must be at least 1")
    base = [PsiTerm(ONE, 0, 1, 2)]
    for k in range(1, m_cutoff + 1):
        base.append(PsiTerm(ONE, 1, 3**k, 1))
        base.append(PsiTerm(ONE, 2, 3**k, 1))
    series_sum = TermSum(base)
    image = rewrite_sum(series_sum)
    diff = image - series_sum
    expected_terms = [PsiTerm(ONE, 2, 3 ** (m_cutoff + 1), 1)]
    for k in range(1, m_cutoff + 1):
        expected_terms.append(PsiTerm(ONE, collatz_step(1 + 3**k), 1, 0))
        expected_terms.append(PsiTerm(ONE, collatz_step(2 + 3**k), 1, 0))
    expected = TermSum(expected_terms)
    ok = diff == expected
    witness = None
    if not ok:
        witness = {
            "got": repr([t.key() for t in diff]),
            "want": repr([t.key() for t in expected]),
        }
    return exact_report(
        "progressions",
        {"check": "telescoping", "M": m_cutoff},
        is_zero=ok,
        max_abs=0.0 if ok else 1.0,
        degrees_checked=f"symbolic, k 1..{m_cutoff}",
        witness=witness,
    )


# -- term files ---------------------------------------------------------------------


def term_to_payload(term: ProgressionTerm) -> dict:
    from .coeffs import coeff_to_strings

    re_s, im_s = coeff_to_strings(term.scalar)
    if isinstance(term, GTerm):
        lam_re, lam_im = coeff_to_strings(term.lam)
        return {
            "kind": "g",
            "scalar": [re_s, im_s],
            "k": term.k,
            "l": term.l,
            "lambda": [lam_re, lam_im],
            "beta": str(term.beta),
        }
    return {
        "kind": "psi",
        "scalar": [re_s, im_s],
        "l": term.l,
        "m": term.m,
        "order": term.order,
    }


def term_from_payload(payload: dict) -> ProgressionTerm:
    from .coeffs import coeff_from_strings

    scalar = coeff_from_strings(*payload["scalar"])
    if payload["kind"] == "g":
        return GTerm(
            scalar,
            int(payload["k"]),
            int(payload["l"]),
            coeff_from_strings(*payload["lambda"]),
            Fraction(payload["beta"]),
        )
    if payload["kind"] == "psi":
        return PsiTerm(scalar, int(payload["l"]), int(payload["m"]), int(payload["order"]))
    raise ValueError(f"unknown term kind {payload['kind']!r}")


def save_terms(terms, path):
    import json

    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"terms": [term_to_payload(t) for t in terms]}, fh, sort_keys=True)
        fh.write("\n")


def load_terms(path) -> TermSum:
    import json

    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    return TermSum(term_from_payload(t) for t in payload["terms"])
