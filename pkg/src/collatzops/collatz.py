"""Integer dynamics of the reduced Collatz map T on all of Z.

T(n) = (3n+1)/2 for odd n and n/2 for even n.  Total stopping times are
memoized for nonnegative inputs; an iteration cap turns the open
conjecture into an explicit UNRESOLVED outcome instead of a silent loop.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

DEFAULT_CAP = 100_000
CAP_ENV_VAR = "COLLATZOPS_CAP"


def default_cap() -> int:
    """Iteration cap, overridable through the COLLATZOPS_CAP environment variable."""
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None:
        return DEFAULT_CAP
    cap = int(raw)
    if cap <= 0:
        raise ValueError(f"{CAP_ENV_VAR} must be a positive integer, got {raw!r}")
    return cap


def collatz_step(n: int) -> int:
    """One application of T; defined for every integer."""
    if n % 2:
        return (3 * n + 1) // 2
    return n // 2


def collatz_iterate(n: int, m: int) -> int:
    """T^m(n)."""
    if m < 0:
        raise ValueError("iteration count must be nonnegative")
    for _ in range(m):
        n = collatz_step(n)
    return n


def orbit_prefix(n: int, length: int) -> list[int]:
    """[n, T(n), ..., T^length(n)]."""
    out = [n]
    for _ in range(length):
        n = collatz_step(n)
        out.append(n)
    return out


@dataclass(frozen=True)
class StoppingTime:
    """Total stopping time, or UNRESOLVED(cap) when the cap was exhausted."""

    value: int | None
    cap: int | None = None

    @classmethod
    def resolved(cls, value: int) -> "StoppingTime":
        return cls(value=value, cap=None)

    @classmethod
    def unresolved(cls, cap: int) -> "StoppingTime":
        return cls(value=None, cap=cap)

    @property
    def is_resolved(self) -> bool:
        return self.value is not None

    def __str__(self):
        if self.is_resolved:
            return str(self.value)
        return f"UNRESOLVED(cap={self.cap})"


# Memo of exact stopping times, keyed on nonnegative n only.  Entries are
# deterministic, so concurrent last-write-wins inserts are harmless under
# the interpreter's atomic dict operations.
_SIGMA_MEMO: dict[int, int] = {0: 0, 1: 0}


def clear_memo():
    _SIGMA_MEMO.clear()
    _SIGMA_MEMO.update({0: 0, 1: 0})


def total_stopping_time(n: int, cap: int | None = None) -> StoppingTime:
    """Least k <= cap with T^k(n) = 1 (with sigma(0) := 0), else UNRESOLVED.

    Exact values discovered along the way are memoized even when they
    exceed the cap, so a later call with a larger cap resolves instantly.
    """
    if n < 0:
        raise ValueError("total stopping time is defined for nonnegative n")
    cap = default_cap() if cap is None else cap
    if cap <= 0:
        raise ValueError("cap must be a positive integer")
    path = []
    t = n
    while t not in _SIGMA_MEMO:
        if len(path) > cap:
            return StoppingTime.unresolved(cap)
        path.append(t)
        t = collatz_step(t)
    base = _SIGMA_MEMO[t]
    for i, v in enumerate(reversed(path), start=1):
        _SIGMA_MEMO[v] = base + i
    total = base + len(path)
    if total > cap:
        return StoppingTime.unresolved(cap)
    return StoppingTime.resolved(total)


def sigma_sweep(n_max: int, cap: int | None = None) -> list[int]:
    """Stopping times for 0..n_max as a list; -1 marks UNRESOLVED under cap.

    Uses the descend-until-smaller recurrence, so the sweep is linear in
    practice and avoids a per-value dictionary.
    """
    cap = default_cap() if cap is None else cap
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    sigma = [0] * (n_max + 1)
    for n in range(2, n_max + 1):
        t = n
        steps = 0
        while t >= n:
            if steps >= cap:
                break
            if t % 2:
                t = (3 * t + 1) // 2
            else:
                t //= 2
            steps += 1
        if t >= n or sigma[t] < 0:
            sigma[n] = -1
            continue
        total = steps + sigma[t]
        sigma[n] = total if total <= cap else -1
    return sigma


def inverse_step(n: int) -> set[int]:
    """The set-valued right inverse of T: {2n}, plus (2n-1)/3 when n = 2 mod 3."""
    preimages = {2 * n}
    if n % 3 == 2:
        preimages.add((2 * n - 1) // 3)
    return preimages


@dataclass(frozen=True)
class CycleReport:
    """A T-cycle in canonical order (smallest member first)."""

    members: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.members)


def detect_cycle(n: int, cap: int | None = None) -> CycleReport | None:
    """Follow T from n for up to cap steps; report the cycle hit, if any."""
    cap = default_cap() if cap is None else cap
    seen = {n: 0}
    seq = [n]
    t = n
    for _ in range(cap):
        t = collatz_step(t)
        if t in seen:
            cycle = seq[seen[t] :]
            pivot = cycle.index(min(cycle))
            return CycleReport(tuple(cycle[pivot:] + cycle[:pivot]))
        seen[t] = len(seq)
        seq.append(t)
    return None
