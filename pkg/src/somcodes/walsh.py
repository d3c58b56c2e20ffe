"""Exact Walsh transforms W_f(b) = sum_x zeta^(f(x) - Tr(b x)) and spectral classification.

A spectrum is stored as a ``(q, p)`` integer table of value counts:
``counts[b, a] = #{x : f(x) - Tr(b x) = a}``.  Row ``b`` read as a
:class:`~somcodes.cyclotomic.CycInt` is exactly ``W_f(b)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .cyclotomic import CycInt, sqrt_pstar_power
from .errors import NotWeaklyRegularError
from .galois import FieldCtx


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    ctx: FieldCtx
    counts: np.ndarray

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def q(self) -> int:
        return self.ctx.q

    def __getitem__(self, beta) -> CycInt:
        b = beta.index if hasattr(beta, "index") else int(beta)
        return CycInt(self.p, self.counts[b])

    @property
    def signed(self) -> np.ndarray:
        """Integer view c0 - c1; for p = 2 this is the usual +-1 Walsh value."""
        return self.counts[:, 0] - self.counts[:, 1]

    def values(self) -> list[CycInt]:
        return [CycInt(self.p, row) for row in self.counts]

    def to_csv(self) -> str:
        header = "beta_index," + ",".join(f"c{a}" for a in range(self.p))
        lines = [header]
        for b, row in enumerate(self.counts.tolist()):
            lines.append(f"{b}," + ",".join(map(str, row)))
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# transforms


def dual_coordinates(ctx: FieldCtx) -> np.ndarray:
    """u(b) = sum_i Tr(b x^i) p^i, so that Tr(b x) = <digits(x), digits(u(b))>."""
    allb = np.arange(ctx.q, dtype=np.int64)
    u = np.zeros(ctx.q, dtype=np.int64)
    for i, e in enumerate(ctx.basis):
        u += ctx.trace(ctx.mul(allb, e)) * ctx.p**i
    return u


def _butterflies(table: np.ndarray, p: int, n: int, sign: int) -> np.ndarray:
    """Radix-p transform along every digit axis of a (q, p) coordinate table.

    Output[u][a] = sum_x table[x][a + sign * <x, u>]: for sign = +1 this
    multiplies by zeta^(-<x,u>), for sign = -1 by zeta^(+<x,u>).
    """
    arr = table.reshape((p,) * n + (p,))
    for axis in range(n):
        moved = np.moveaxis(arr, axis, 0)
        out = np.zeros_like(moved)
        for u in range(p):
            for x in range(p):
                out[u] += np.roll(moved[x], -sign * x * u, axis=-1)
        arr = np.moveaxis(out, 0, axis)
    return np.ascontiguousarray(arr).reshape(table.shape)


def _fwht(a: np.ndarray) -> np.ndarray:
    a = a.copy()
    h = 1
    q = a.size
    while h < q:
        a = a.reshape(-1, 2, h)
        x, y = a[:, 0, :].copy(), a[:, 1, :].copy()
        a[:, 0, :] = x + y
        a[:, 1, :] = x - y
        a = a.reshape(q)
        h *= 2
    return a


def walsh_transform(f) -> WalshSpectrum:
    """Fast exact transform of a table-backed function."""
    ctx = f.ctx
    p, q = ctx.p, ctx.q
    u = dual_coordinates(ctx)
    if p == 2:
        signs = 1 - 2 * np.asarray(f.values, dtype=np.int64)
        h = _fwht(signs)
        w = h[u]
        counts = np.stack([(q + w) // 2, (q - w) // 2], axis=1)
    else:
        table = np.zeros((q, p), dtype=np.int64)
        table[np.arange(q), f.values] = 1
        h = _butterflies(table, p, ctx.n, +1)
        counts = h[u]
    counts = np.ascontiguousarray(counts)
    counts.setflags(write=False)
    return WalshSpectrum(ctx, counts)


def walsh_transform_naive(f) -> WalshSpectrum:
    """O(q^2) reference: tally f(x) - Tr(b x) for every pair (b, x)."""
    ctx = f.ctx
    p, q = ctx.p, ctx.q
    x = np.arange(q, dtype=np.int64)
    counts = np.zeros((q, p), dtype=np.int64)
    for b in range(q):
        diff = (f.values - ctx.trace(ctx.mul(b, x))) % p
        counts[b] = np.bincount(diff, minlength=p)
    return WalshSpectrum(ctx, counts)


def inverse_transform(spec: WalshSpectrum) -> np.ndarray:
    """Recover f from its spectrum via sum_b W(b) zeta^(Tr(b x)) = q zeta^(f(x))."""
    ctx = spec.ctx
    p, q = ctx.p, ctx.q
    u = dual_coordinates(ctx)
    table = np.zeros((q, p), dtype=np.int64)
    table[u] = spec.counts
    r = _butterflies(table, p, ctx.n, -1)
    norm = r - r[:, -1:]  # normalise so the last coordinate is zero
    hit = norm == q
    # when f(x) = p - 1 the normalised vector is (-q, ..., -q, 0)
    out = np.where(hit.any(axis=1), hit.argmax(axis=1), p - 1)
    bad = ~(hit.sum(axis=1) == 1) & ~((norm[:, :-1] == -q).all(axis=1))
    if bad.any():
        raise ValueError("spectrum is not the transform of a p-ary function")
    return out.astype(np.int64)


# ---------------------------------------------------------------------------
# squared magnitudes


def _autocorr(counts: np.ndarray) -> np.ndarray:
    """Coordinates of W * sigma_{-1}(W) for every row: r[d] = sum_a c[a] c[a - d]."""
    p = counts.shape[-1]
    out = np.empty_like(counts)
    for d in range(p):
        out[..., d] = (counts * np.roll(counts, d, axis=-1)).sum(axis=-1)
    return out


def squared_magnitudes(spec: WalshSpectrum) -> tuple[np.ndarray, np.ndarray]:
    """(|W(b)|^2, rational mask).

    |W|^2 lies in the real subfield and is a rational integer only for
    special functions (plateaued ones among them); entries where it is not
    are reported through the mask and their value slot holds -1.
    """
    r = _autocorr(spec.counts)
    rational = (r[:, 1:] == r[:, 1:2]).all(axis=1)
    return np.where(rational, r[:, 0] - r[:, 1], -1), rational


def parseval_ok(spec: WalshSpectrum) -> bool:
    """sum_b W(b) sigma_{-1}(W(b)) = q^2 exactly."""
    total = _autocorr(spec.counts).sum(axis=0)
    if not (total[1:] == total[1]).all():
        return False
    return int(total[0] - total[1]) == spec.q**2


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True, eq=False)
class PlateauedProfile:
    n: int
    p: int
    s: Optional[int]
    epsilon: Optional[int]
    weakly_regular: bool
    balanced: bool
    support: np.ndarray
    dual: Optional[np.ndarray]

    @property
    def plateaued(self) -> bool:
        return self.s is not None

    @property
    def bent(self) -> bool:
        return self.s == 0

    def summary(self) -> dict:
        return {
            "s": self.s,
            "epsilon": self.epsilon,
            "weakly_regular": self.weakly_regular,
            "balanced": self.balanced,
            "support_size": int(self.support.size),
        }


def _ilog(v: int, p: int) -> Optional[int]:
    e = 0
    while v > 1 and v % p == 0:
        v //= p
        e += 1
    return e if v == 1 else None


def classify(spec: WalshSpectrum) -> PlateauedProfile:
    ctx = spec.ctx
    p, n = ctx.p, ctx.n
    mags, rational = squared_magnitudes(spec)
    support = np.flatnonzero(mags)
    balanced = bool((spec.counts[0] == spec.counts[0, 0]).all())
    amps = set(mags[support].tolist())
    s = None
    if rational.all() and len(amps) == 1:
        e = _ilog(amps.pop(), p)
        if e is not None and e >= n:
            s = e - n
    if s is None:
        return PlateauedProfile(n, p, None, None, False, balanced, support, None)

    rows = spec.counts[support]
    if p == 2:
        # W = 2^((n+s)/2) (-1)^{f*}; the sign is carried entirely by the dual
        w = rows[:, 0] - rows[:, 1]
        dual = np.zeros(spec.q, dtype=np.int64)
        dual[support] = (w < 0).astype(np.int64)
        return PlateauedProfile(n, p, s, 1, True, balanced, support, dual)

    # W(b) = eps * sqrt(p*)^(n+s) * zeta^c : look every normalised row up
    base = sqrt_pstar_power(p, n + s)
    table = {}
    for eps in (1, -1):
        for c in range(p):
            table[(base * eps).times_zeta(c).normalized().coords] = (eps, c)
    norm = rows - rows[:, -1:]
    found = [table.get(tuple(r)) for r in norm.tolist()]
    if any(v is None for v in found):
        return PlateauedProfile(n, p, s, None, False, balanced, support, None)
    eps_set = {v[0] for v in found}
    if len(eps_set) != 1:
        return PlateauedProfile(n, p, s, None, False, balanced, support, None)
    dual = np.zeros(spec.q, dtype=np.int64)
    dual[support] = [v[1] for v in found]
    return PlateauedProfile(n, p, s, eps_set.pop(), True, balanced, support, dual)


def dual_value_counts(profile: PlateauedProfile) -> dict[int, int]:
    """N(z) = #{b in the support : f*(b) = z}."""
    if not profile.weakly_regular or profile.dual is None:
        raise NotWeaklyRegularError("profile is not weakly regular")
    c = Counter(profile.dual[profile.support].tolist())
    return {z: c.get(z, 0) for z in range(profile.p)}


def expected_dual_counts(profile: PlateauedProfile) -> dict[int, int]:
    """Closed-form dual preimage counts for a weakly regular plateaued function (odd p)."""
    from .galois import legendre

    if not profile.weakly_regular or profile.epsilon is None:
        raise NotWeaklyRegularError("profile is not weakly regular")
    p, n, s, eps = profile.p, profile.n, profile.s, profile.epsilon
    e1 = legendre(-1, p)
    r = n - s
    out = {}
    if r % 2 == 0:
        sgn = eps * e1 ** (n + r // 2)
        out[0] = p ** (r - 1) + sgn * p ** ((r - 2) // 2) * (p - 1)
        for z in range(1, p):
            out[z] = p ** (r - 1) - sgn * p ** ((r - 2) // 2)
    else:
        sgn = eps * e1 ** (n + (r - 1) // 2)
        out[0] = p ** (r - 1)
        for z in range(1, p):
            out[z] = p ** (r - 1) + legendre(z, p) * sgn * p ** ((r - 1) // 2)
    return out


def dual_counts_report(profile: PlateauedProfile) -> dict:
    got = dual_value_counts(profile)
    want = expected_dual_counts(profile)
    return {"counts": got, "expected": want, "match": got == want}


def value_multiset(spec: WalshSpectrum) -> Counter:
    """Multiset of Walsh values keyed by normalised coordinates (p = 2: integers)."""
    if spec.p == 2:
        return Counter(spec.signed.tolist())
    norm = spec.counts - spec.counts[:, -1:]
    return Counter(map(tuple, norm.tolist()))


__all__ = [
    "WalshSpectrum",
    "PlateauedProfile",
    "walsh_transform",
    "walsh_transform_naive",
    "inverse_transform",
    "squared_magnitudes",
    "parseval_ok",
    "classify",
    "dual_value_counts",
    "expected_dual_counts",
    "dual_counts_report",
    "value_multiset",
    "dual_coordinates",
]
