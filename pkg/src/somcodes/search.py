"""Seeded enumerative searches for the parameter sets the constructions assume.

Three task families:

* ``TripleLambda``: lambda triples in GF(2^m) with a prescribed t-vector weight
  and a full-rank inverse set.
* ``WPair``: pairs (w1, w2) meeting the trace conditions of the singly-even
  construction for fixed lambdas.
* ``PlateauedQuadratic``: quadratic forms that are weakly regular s-plateaued
  (and unbalanced when required).

Candidates are drawn in a canonical order (lexicographic for seed 0, a seeded
sample otherwise), split into chunks, evaluated possibly in parallel, and
merged back in candidate order, so the output never depends on the thread
count.  Every hit is re-validated from its descriptor before it is emitted.
"""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Optional

import numpy as np

from .errors import CodesError, DependentLambdasError, ExhaustedBudgetError
from .galois import FieldCtx, format_field_spec
from .pfunc import (
    compute_t_vector,
    inverse_identity_holds,
    inverse_set_rank,
    parse_descriptor,
    parse_element,
    quadratic_form,
    singly_even_function,
    w_condition_mask,
    w_pair_check,
)
from .presets import default_field
from .walsh import classify, walsh_transform

WORK_CAP = 1 << 28
CHUNK = 256


@dataclass(frozen=True)
class TripleLambda:
    m: int
    target_wt: int
    l1: Optional[str] = None  # fix the first lambda


@dataclass(frozen=True)
class WPair:
    m: int
    l1: str
    l2: str
    w1: Optional[str] = None  # fix the first w


@dataclass(frozen=True)
class PlateauedQuadratic:
    p: int
    n: int
    s_target: int
    require_unbalanced: bool = True
    fixed: dict = field(default_factory=dict)  # coefficient position -> element literal


@dataclass(frozen=True)
class SearchTask:
    family: object
    budget: int = 100_000
    seed: int = 0
    limit: Optional[int] = None  # stop after this many certified sets
    threads: int = 1


@dataclass
class SearchResult:
    task: SearchTask
    results: list
    scanned: int
    space: int

    @property
    def exhausted(self) -> bool:
        """True when the budget ran out before the candidate space did."""
        return self.scanned < self.space and (self.task.limit is None or len(self.results) < self.task.limit)

    def raise_if_empty(self):
        if not self.results:
            raise ExhaustedBudgetError(f"no certified set among {self.scanned} candidates")

    def summary(self) -> dict:
        return {
            "found": len(self.results),
            "scanned": self.scanned,
            "space": self.space,
            "exhausted_budget": self.exhausted,
        }


def _fmt(ctx: FieldCtx, x: int) -> str:
    return "0" if x == 0 else f"g^{ctx.log_of(x)}"


# ---------------------------------------------------------------------------
# candidate streams


def _sample_stream(space: int, budget: int, seed: int, decode: Callable[[int], object]) -> list:
    """First ``budget`` candidates: lexicographic for seed 0, seeded distinct sample otherwise."""
    take = min(space, budget)
    if seed == 0:
        return [decode(i) for i in range(take)]
    rng = np.random.default_rng(seed)
    if space <= 4 * take or space <= 1 << 22:
        idx = rng.permutation(space)[:take]
    else:
        seen, idx = set(), []
        while len(idx) < take:
            for v in rng.integers(0, space, size=take).tolist():
                if v not in seen:
                    seen.add(v)
                    idx.append(v)
                    if len(idx) == take:
                        break
    return [decode(int(i)) for i in idx]


def _unrank_combination(r: int, n: int, k: int) -> tuple:
    """The r-th k-subset of range(n) in lexicographic order."""
    out, x = [], 0
    for left in range(k, 0, -1):
        while comb(n - x - 1, left - 1) <= r:
            r -= comb(n - x - 1, left - 1)
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


# ---------------------------------------------------------------------------
# predicates (each returns a certificate dict or None)


def _triple_setup(fam: TripleLambda):
    if fam.m < 3:
        raise CodesError("TripleLambda needs m >= 3")
    if fam.target_wt not in (3, 4):
        raise CodesError("target_wt must be 3 or 4")
    ctx = default_field(2, 2 * fam.m)
    step = 2**fam.m + 1
    nsub = 2**fam.m - 1
    if fam.l1 is None:
        space = comb(nsub, 3)
        decode = lambda i: _unrank_combination(i, nsub, 3)
    else:
        e = ctx.log_of(parse_element(ctx, fam.l1))
        if e % step:
            raise CodesError(f"l1 = {fam.l1} is not in GF(2^{fam.m})")
        k1 = e // step
        rest = [k for k in range(nsub) if k != k1]
        space = comb(len(rest), 2)
        decode = lambda i: (k1,) + tuple(rest[j] for j in _unrank_combination(i, len(rest), 2))

    def check(ks):
        lams = [int(ctx.g(step * k).index) for k in ks]
        try:
            t = compute_t_vector(ctx, *lams)
        except DependentLambdasError:
            return None
        if t[0] != 1 or sum(t) != fam.target_wt:
            return None
        rank = inverse_set_rank(ctx, *lams)
        if rank != sum(t) + 3:
            return None
        names = [_fmt(ctx, l) for l in lams]
        return {
            "family": "triple",
            "field": format_field_spec(ctx),
            "m": fam.m,
            "l1": names[0],
            "l2": names[1],
            "l3": names[2],
            "t": list(t),
            "rank": rank,
            "descriptor": f"tripleprod:l1={names[0]},l2={names[1]},l3={names[2]}",
        }

    return ctx, space, decode, check


def _wpair_setup(fam: WPair):
    ctx = default_field(2, 2 * fam.m)
    l1, l2 = parse_element(ctx, fam.l1), parse_element(ctx, fam.l2)
    if inverse_identity_holds(ctx, l1, l2):
        raise CodesError("(l1 + l2)^-1 = l1^-1 + l2^-1 holds; no singly-even function exists")
    mask = w_condition_mask(ctx, l1, l2)
    # admissible w in exponent order
    good = [int(ctx.g(k).index) for k in range(ctx.q - 1)]
    good = [w for w in good if mask[w]]
    if fam.w1 is None:
        space = comb(len(good), 2)
        decode = lambda i: tuple(good[j] for j in _unrank_combination(i, len(good), 2))
    else:
        w1 = parse_element(ctx, fam.w1)
        rest = [w for w in good if w != w1]
        space = len(rest)
        decode = lambda i: (w1, rest[i])

    def check(ws):
        w1, w2 = ws
        if w1 == w2 or not w_pair_check(ctx, l1, l2, w1, w2):
            return None
        names = [_fmt(ctx, x) for x in (l1, l2, w1, w2)]
        return {
            "family": "wpair",
            "field": format_field_spec(ctx),
            "m": fam.m,
            "l1": names[0],
            "l2": names[1],
            "w1": names[2],
            "w2": names[3],
            "descriptor": "singlyeven:" + ",".join(f"{k}={v}" for k, v in zip(("l1", "l2", "w1", "w2"), names)),
            "beta_domain": f"V:{names[2]},{names[3]}",
        }

    return ctx, space, decode, check


def _quad_setup(fam: PlateauedQuadratic):
    if fam.p == 2:
        raise CodesError("PlateauedQuadratic needs odd p")
    ctx = default_field(fam.p, fam.n)
    q = ctx.q
    npos = fam.n // 2 + 1
    fixed = {int(i): parse_element(ctx, v) for i, v in fam.fixed.items()}
    if any(not 0 <= i < npos for i in fixed):
        raise CodesError(f"fixed positions must lie in 0..{npos - 1}")
    free = [i for i in range(npos) if i not in fixed]
    # choice 0 is the zero coefficient, choice j >= 1 is g^(j-1)
    elems = [0] + [int(ctx.g(k).index) for k in range(q - 1)]
    space = q ** len(free)

    def decode(i):
        coeffs = dict(fixed)
        for pos in reversed(free):
            i, r = divmod(i, q)
            coeffs[pos] = elems[r]
        return tuple(coeffs[j] for j in range(npos))

    def check(cs):
        if not any(cs):
            return None
        f = quadratic_form(ctx, [(c, i) for i, c in enumerate(cs)])
        prof = classify(walsh_transform(f))
        if prof.s != fam.s_target or not prof.weakly_regular:
            return None
        if fam.require_unbalanced and prof.balanced:
            return None
        return {
            "family": "quad",
            "field": format_field_spec(ctx),
            "p": fam.p,
            "n": fam.n,
            "coeffs": [_fmt(ctx, c) if c >= ctx.p else str(c) for c in cs],
            "s": prof.s,
            "epsilon": prof.epsilon,
            "balanced": prof.balanced,
            "support_size": int(prof.support.size),
            "descriptor": f.descriptor,
        }

    return ctx, space, decode, check


_SETUP = {TripleLambda: _triple_setup, WPair: _wpair_setup, PlateauedQuadratic: _quad_setup}


# ---------------------------------------------------------------------------
# independent re-check


def recheck(cert: dict) -> bool:
    """Re-validate a certificate starting from its descriptor only."""
    from .galois import parse_field_spec

    ctx = parse_field_spec(cert["field"])
    f = parse_descriptor(ctx, cert["descriptor"])
    fam = cert["family"]
    if fam == "triple":
        ls = [f.params[k] for k in ("l1", "l2", "l3")]
        t = compute_t_vector(ctx, *ls)
        return list(t) == cert["t"] and t[0] == 1 and inverse_set_rank(ctx, *ls) == sum(t) + 3
    if fam == "wpair":
        # the constructor rejects inadmissible pairs
        g = singly_even_function(ctx, f.params["l1"], f.params["l2"], f.params["w1"], f.params["w2"])
        return bool((g.values == f.values).all())
    if fam == "quad":
        prof = classify(walsh_transform(f))
        return (
            prof.s == cert["s"]
            and prof.weakly_regular
            and prof.epsilon == cert["epsilon"]
            and prof.balanced == cert["balanced"]
        )
    raise CodesError(f"unknown certificate family {fam!r}")


# ---------------------------------------------------------------------------
# driver


def run(task: SearchTask) -> SearchResult:
    if not 1 <= task.budget <= WORK_CAP:
        raise CodesError(f"budget must lie in 1..{WORK_CAP}")
    try:
        setup = _SETUP[type(task.family)]
    except KeyError:
        raise CodesError(f"unknown search family {type(task.family).__name__}") from None
    _, space, decode, check = setup(task.family)
    cands = _sample_stream(space, task.budget, task.seed, decode)
    chunks = [cands[i : i + CHUNK] for i in range(0, len(cands), CHUNK)]
    evaluate = lambda chunk: [c for c in map(check, chunk) if c is not None]

    threads = max(1, int(task.threads))
    results, scanned = [], 0
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        # process a wave of chunks at a time and merge in canonical order
        for start in range(0, len(chunks), threads):
            wave = chunks[start : start + threads]
            outs = pool.map(evaluate, wave) if pool else map(evaluate, wave)
            for chunk, hits in zip(wave, outs):
                if task.limit is not None and len(results) >= task.limit:
                    break
                results.extend(hits)
                scanned += len(chunk)
            if task.limit is not None and len(results) >= task.limit:
                break
    finally:
        if pool:
            pool.shutdown()
    if task.limit is not None:
        results = results[: task.limit]
    for cert in results:
        if not recheck(cert):
            raise AssertionError(f"certificate failed its re-check: {cert}")
        cert["rechecked"] = True
    return SearchResult(task, results, scanned, space)


def t_vector_census(m: int) -> Counter:
    """t-vectors of every independent lambda triple (unordered) in GF(2^m)."""
    ctx = default_field(2, 2 * m)
    step = 2**m + 1
    lams = [int(ctx.g(step * k).index) for k in range(2**m - 1)]
    out = Counter()
    for trip in itertools.combinations(lams, 3):
        try:
            out[compute_t_vector(ctx, *trip)] += 1
        except DependentLambdasError:
            continue
    return out

