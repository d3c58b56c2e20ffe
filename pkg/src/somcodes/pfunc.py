"""Constructors for the p-ary function families used to build codes.

Every function is materialised as a full value table indexed by element
index.  The descriptor grammar accepted by :func:`parse_descriptor`::

    tripleprod:l1=g^129,l2=g^258,l3=g^516
    singlyeven:l1=g^257,l2=g^514,w1=g^3084,w2=g^42148
    monobent:l=g^k
    ftee:t=1
    quad:1@0,g^23@1,g^4@2          Tr(sum c_i x^(p^i + 1))
    fa:a=1;quad:...                f + a f^(p-1) of a plateaued base
    linear:w=g^5                   Tr(w x)
    table:0,1,1,0,...              explicit values

Element literals are ``g^k`` (power of the primitive element) or a plain
integer element index; for GF(p) constants the index equals the value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import (
    BalancedBaseError,
    CharacteristicTwoError,
    DependentLambdasError,
    DescriptorError,
    InverseIdentityHoldsError,
    LambdaOutsideSubfieldError,
    NotWeaklyRegularError,
    OddDegreeError,
    WConditionError,
    ZeroParameterError,
)
from .galois import FieldCtx, FqElem, fp_rank, subfield_trace


@dataclass(frozen=True, eq=False)
class PAryFunction:
    """A map GF(p^n) -> GF(p) stored as a value table."""

    ctx: FieldCtx
    values: np.ndarray
    family: str = "table"
    params: dict = field(default_factory=dict)
    descriptor: str = ""

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=np.int64)
        if v.shape != (self.ctx.q,):
            raise ValueError(f"value table must have length {self.ctx.q}")
        if v.min() < 0 or v.max() >= self.ctx.p:
            raise ValueError("function values must lie in 0..p-1")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def n(self) -> int:
        return self.ctx.n

    def __call__(self, x) -> int:
        idx = x.index if isinstance(x, FqElem) else int(x)
        return int(self.values[idx])

    def __repr__(self):
        return f"PAryFunction({self.descriptor or self.family}, p={self.p}, n={self.n})"


# ---------------------------------------------------------------------------
# helpers


def _idx(x) -> int:
    return x.index if isinstance(x, FqElem) else int(x)


def _half_degree(ctx: FieldCtx) -> int:
    if ctx.n % 2:
        raise OddDegreeError(f"n = {ctx.n} must be even")
    return ctx.n // 2


def _norm_power(ctx: FieldCtx) -> np.ndarray:
    """x^(p^m + 1) for every x; values lie in GF(p^m)."""
    m = _half_degree(ctx)
    return ctx.pow(np.arange(ctx.q, dtype=np.int64), ctx.p**m + 1)


def _check_subfield_lambda(ctx: FieldCtx, lam, m: int) -> int:
    lam = _idx(lam)
    if lam == 0:
        raise ZeroParameterError("lambda must be nonzero")
    if not bool(ctx.in_subfield(lam, m)):
        raise LambdaOutsideSubfieldError(f"{ctx.elem(lam)!r} is not in GF({ctx.p}^{m})")
    return lam


def _subtrace_of_products(ctx: FieldCtx, mu: int, y: np.ndarray) -> np.ndarray:
    """Tr_1^m(mu * y) for y in GF(p^m)."""
    return subfield_trace(ctx, ctx.n // 2, ctx.mul(mu, y))


def _fmt(ctx: FieldCtx, x) -> str:
    x = _idx(x)
    return "0" if x == 0 else f"g^{ctx.log_of(x)}"


# ---------------------------------------------------------------------------
# families


def monomial_bent(ctx: FieldCtx, lam) -> PAryFunction:
    """g_lambda(x) = Tr_1^m(lambda x^(p^m+1)) over GF(p^(2m))."""
    m = _half_degree(ctx)
    lam = _check_subfield_lambda(ctx, lam, m)
    vals = _subtrace_of_products(ctx, lam, _norm_power(ctx))
    return PAryFunction(ctx, vals, "monobent", {"l": lam}, f"monobent:l={_fmt(ctx, lam)}")


def _check_independent(ctx: FieldCtx, lams: Sequence[int]):
    if any(l == 0 for l in lams) or fp_rank(list(lams), ctx) != len(lams):
        raise DependentLambdasError("lambdas must be GF(p)-linearly independent")


def triple_product(ctx: FieldCtx, l1, l2, l3) -> PAryFunction:
    """f = g_l1 * g_l2 * g_l3 over GF(2^(2m))."""
    if ctx.p != 2:
        raise DescriptorError("the triple product is a Boolean construction (p = 2)")
    m = _half_degree(ctx)
    if ctx.n < 6:
        raise OddDegreeError("the triple product needs n = 2m >= 6")
    lams = [_check_subfield_lambda(ctx, l, m) for l in (l1, l2, l3)]
    _check_independent(ctx, lams)
    y = _norm_power(ctx)
    vals = np.ones(ctx.q, dtype=np.int64)
    for lam in lams:
        vals &= _subtrace_of_products(ctx, lam, y)
    desc = "tripleprod:" + ",".join(f"l{i + 1}={_fmt(ctx, l)}" for i, l in enumerate(lams))
    return PAryFunction(ctx, vals, "tripleprod", {"l1": lams[0], "l2": lams[1], "l3": lams[2]}, desc)


def _inverse_set(ctx: FieldCtx, l1: int, l2: int, l3: int) -> list[tuple[int, int]]:
    """[(lhs, rhs)] for t1..t4: (sum)^-1 vs sum of inverses."""
    inv = lambda a: int(ctx.inv(a))
    add = lambda a, b: int(ctx.add(a, b))
    lam = [l1, l2, l3]
    out = [(inv(add(add(l1, l2), l3)), add(add(inv(l1), inv(l2)), inv(l3)))]
    # index order t_{j1 + j2 - 1}: (1,2) -> t2, (1,3) -> t3, (2,3) -> t4
    for j1, j2 in ((0, 1), (0, 2), (1, 2)):
        out.append((inv(add(lam[j1], lam[j2])), add(inv(lam[j1]), inv(lam[j2]))))
    return out


def compute_t_vector(ctx: FieldCtx, l1, l2, l3) -> tuple[int, int, int, int]:
    """(t1, t2, t3, t4); a bit is 0 exactly when its inverse identity holds."""
    lams = [_idx(l) for l in (l1, l2, l3)]
    _check_independent(ctx, lams)
    return tuple(int(a != b) for a, b in _inverse_set(ctx, *lams))


def inverse_set(ctx: FieldCtx, l1, l2, l3) -> list[int]:
    """The seven inverses l_i^-1, (l_j1 + l_j2)^-1, (l1 + l2 + l3)^-1."""
    lams = [_idx(l) for l in (l1, l2, l3)]
    _check_independent(ctx, lams)
    pairs = _inverse_set(ctx, *lams)
    return [int(ctx.inv(l)) for l in lams] + [pairs[k][0] for k in (1, 2, 3)] + [pairs[0][0]]


def inverse_set_rank(ctx: FieldCtx, l1, l2, l3) -> int:
    return fp_rank(inverse_set(ctx, l1, l2, l3), ctx)


def inverse_set_rank_ok(ctx: FieldCtx, l1, l2, l3) -> bool:
    """True when the inverse set has GF(2)-rank wt(t) + 3."""
    return inverse_set_rank(ctx, l1, l2, l3) == sum(compute_t_vector(ctx, l1, l2, l3)) + 3


def w_condition_mus(ctx: FieldCtx, l1, l2) -> list[int]:
    """The seven multipliers mu whose traces Tr_1^m(mu w^(2^m+1)) must vanish."""
    l1, l2 = _idx(l1), _idx(l2)
    l3 = int(ctx.add(l1, l2))
    inv = lambda a: int(ctx.inv(a))
    i1, i2, i3 = inv(l1), inv(l2), inv(l3)
    mus = [l1, l2, l3]
    for a, b in ((i1, i2), (i1, i3), (i2, i3)):
        s = int(ctx.add(a, b))
        if s == 0:
            raise DependentLambdasError("degenerate lambdas: inverse sum vanishes")
        mus.append(inv(s))
    s = int(ctx.add(ctx.add(i1, i2), i3))
    if s == 0:
        raise DependentLambdasError("degenerate lambdas: inverse sum vanishes")
    mus.append(inv(s))
    return mus


def w_condition_mask(ctx: FieldCtx, l1, l2, candidates: Optional[np.ndarray] = None) -> np.ndarray:
    """Vectorised w-condition over ``candidates`` (default: the whole field)."""
    _half_degree(ctx)
    if candidates is None:
        candidates = np.arange(ctx.q, dtype=np.int64)
    y = ctx.pow(np.asarray(candidates, dtype=np.int64), ctx.p ** (ctx.n // 2) + 1)
    ok = np.ones(y.shape, dtype=bool)
    for mu in w_condition_mus(ctx, l1, l2):
        ok &= _subtrace_of_products(ctx, mu, y) == 0
    return ok


def w_condition_check(ctx: FieldCtx, l1, l2, w) -> bool:
    return bool(w_condition_mask(ctx, l1, l2, np.array([_idx(w)]))[0])


def w_pair_check(ctx: FieldCtx, l1, l2, w1, w2) -> bool:
    """Conditions for w1, w2 and w3 = w1 + w2."""
    w1, w2 = _idx(w1), _idx(w2)
    cand = np.array([w1, w2, int(ctx.add(w1, w2))])
    return bool(w_condition_mask(ctx, l1, l2, cand).all())


def inverse_identity_holds(ctx: FieldCtx, l1, l2) -> bool:
    l1, l2 = _idx(l1), _idx(l2)
    lhs = int(ctx.inv(ctx.add(l1, l2)))
    rhs = int(ctx.add(ctx.inv(l1), ctx.inv(l2)))
    return lhs == rhs


def singly_even_function(ctx: FieldCtx, l1, l2, w1, w2) -> PAryFunction:
    """g_l1 * g_l2 with the values at w1 and w2 flipped."""
    if ctx.p != 2:
        raise DescriptorError("the singly-even construction is Boolean (p = 2)")
    m = _half_degree(ctx)
    if ctx.n < 6:
        raise OddDegreeError("the singly-even construction needs n = 2m >= 6")
    l1 = _check_subfield_lambda(ctx, l1, m)
    l2 = _check_subfield_lambda(ctx, l2, m)
    _check_independent(ctx, [l1, l2])
    if inverse_identity_holds(ctx, l1, l2):
        raise InverseIdentityHoldsError("(l1 + l2)^-1 = l1^-1 + l2^-1 holds")
    w1, w2 = _idx(w1), _idx(w2)
    if w1 == 0 or w2 == 0 or w1 == w2:
        raise WConditionError("w1, w2 must be distinct and nonzero")
    if not w_pair_check(ctx, l1, l2, w1, w2):
        raise WConditionError("w1, w2, w1 + w2 violate the trace conditions")
    y = _norm_power(ctx)
    vals = _subtrace_of_products(ctx, l1, y) & _subtrace_of_products(ctx, l2, y)
    vals = vals.copy()
    vals[w1] ^= 1
    vals[w2] ^= 1
    desc = "singlyeven:" + ",".join(
        f"{k}={_fmt(ctx, v)}" for k, v in (("l1", l1), ("l2", l2), ("w1", w1), ("w2", w2))
    )
    return PAryFunction(ctx, vals, "singlyeven", {"l1": l1, "l2": l2, "w1": w1, "w2": w2}, desc)


def f_t_function(ctx: FieldCtx, t: int) -> PAryFunction:
    """f_t(0) = t and f_t(x) = x^((q-1)/2) in {1, -1} otherwise."""
    p = ctx.p
    if p == 2:
        raise CharacteristicTwoError("f_t needs odd p")
    t %= p
    if t == 0:
        raise ZeroParameterError("t must be nonzero")
    lg = ctx.log_table
    vals = np.where(lg % 2 == 0, 1, p - 1).astype(np.int64)
    vals[0] = t
    return PAryFunction(ctx, vals, "ftee", {"t": t}, f"ftee:t={t}")


def quadratic_form(ctx: FieldCtx, coeffs: Sequence[tuple]) -> PAryFunction:
    """Tr(sum c_i x^(p^i + 1)) for a list of (c_i, i)."""
    if ctx.p == 2:
        raise CharacteristicTwoError("quadratic forms here are for odd p")
    terms = [(_idx(c), int(i)) for c, i in coeffs]
    if not terms or all(c == 0 for c, _ in terms):
        raise ZeroParameterError("at least one coefficient must be nonzero")
    x = np.arange(ctx.q, dtype=np.int64)
    acc = np.zeros(ctx.q, dtype=np.int64)
    for c, i in terms:
        if c:
            acc = ctx.add(acc, ctx.mul(c, ctx.pow(x, ctx.p**i + 1)))
    vals = ctx.trace(acc)
    desc = "quad:" + ",".join(f"{_fmt(ctx, c) if c >= ctx.p else c}@{i}" for c, i in terms)
    return PAryFunction(ctx, vals, "quad", {"terms": terms}, desc)


def f_a_from_plateaued(f: PAryFunction, a: int, profile=None) -> PAryFunction:
    """f_a = f + a f^(p-1); the base must be unbalanced weakly regular plateaued."""
    from .walsh import classify, walsh_transform

    p = f.p
    if p == 2:
        raise CharacteristicTwoError("f_a needs odd p")
    a %= p
    if a == 0:
        raise ZeroParameterError("a must be nonzero")
    if profile is None:
        profile = classify(walsh_transform(f))
    if profile.s is None or not profile.weakly_regular:
        raise NotWeaklyRegularError("base function is not weakly regular plateaued")
    if profile.balanced:
        raise BalancedBaseError("base function is balanced")
    vals = np.where(f.values == 0, 0, (f.values + a) % p)
    return PAryFunction(
        f.ctx, vals, "fa", {"a": a, "base": f}, f"fa:a={a};{f.descriptor}"
    )


def linear_function(ctx: FieldCtx, w) -> PAryFunction:
    w = _idx(w)
    vals = ctx.trace(ctx.mul(w, np.arange(ctx.q, dtype=np.int64)))
    return PAryFunction(ctx, vals, "linear", {"w": w}, f"linear:w={_fmt(ctx, w)}")


def from_table(ctx: FieldCtx, values: Sequence[int]) -> PAryFunction:
    vals = np.asarray(values, dtype=np.int64)
    if vals.shape != (ctx.q,):
        raise DescriptorError(f"table needs exactly {ctx.q} values, got {vals.size}")
    if vals.min() < 0 or vals.max() >= ctx.p:
        raise DescriptorError("table values must lie in 0..p-1")
    return PAryFunction(ctx, vals, "table", {}, "table:" + ",".join(map(str, vals.tolist())))


# ---------------------------------------------------------------------------
# descriptor parsing


def parse_element(ctx: FieldCtx, text: str) -> int:
    t = text.strip()
    try:
        if t.startswith("g^"):
            return int(ctx.g(int(t[2:])).index)
        if t == "g":
            return int(ctx.g(1).index)
        v = int(t)
    except ValueError:
        raise DescriptorError(f"bad element literal {text!r}") from None
    if not 0 <= v < ctx.q:
        raise DescriptorError(f"element index {v} outside GF({ctx.p}^{ctx.n})")
    return v


def _kv(body: str, keys: Sequence[str], family: str) -> dict:
    out = {}
    for part in filter(None, (s.strip() for s in body.split(","))):
        if "=" not in part:
            raise DescriptorError(f"{family}: expected key=value, got {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    missing = [k for k in keys if k not in out]
    extra = [k for k in out if k not in keys]
    if missing or extra:
        raise DescriptorError(f"{family}: expected keys {list(keys)}, got {sorted(out)}")
    return out


def parse_descriptor(ctx: FieldCtx, text: str) -> PAryFunction:
    text = text.strip()
    if ":" not in text:
        raise DescriptorError(f"descriptor {text!r} has no 'family:' prefix")
    family, body = text.split(":", 1)
    family = family.strip()
    el = lambda s: parse_element(ctx, s)
    if family == "tripleprod":
        kv = _kv(body, ("l1", "l2", "l3"), family)
        return triple_product(ctx, el(kv["l1"]), el(kv["l2"]), el(kv["l3"]))
    if family == "singlyeven":
        kv = _kv(body, ("l1", "l2", "w1", "w2"), family)
        return singly_even_function(ctx, *(el(kv[k]) for k in ("l1", "l2", "w1", "w2")))
    if family == "monobent":
        return monomial_bent(ctx, el(_kv(body, ("l",), family)["l"]))
    if family == "linear":
        return linear_function(ctx, el(_kv(body, ("w",), family)["w"]))
    if family == "ftee":
        kv = _kv(body, ("t",), family)
        try:
            return f_t_function(ctx, int(kv["t"]))
        except ValueError:
            raise DescriptorError(f"ftee: bad t {kv['t']!r}") from None
    if family == "quad":
        terms = []
        for part in filter(None, (s.strip() for s in body.split(","))):
            if "@" not in part:
                raise DescriptorError(f"quad: expected coeff@i, got {part!r}")
            c, i = part.split("@", 1)
            try:
                i = int(i)
            except ValueError:
                raise DescriptorError(f"quad: bad exponent index {i!r}") from None
            if not 0 <= i < ctx.n:
                raise DescriptorError(f"quad: exponent index {i} outside 0..{ctx.n - 1}")
            terms.append((el(c), i))
        return quadratic_form(ctx, terms)
    if family == "fa":
        if ";" not in body:
            raise DescriptorError("fa: expected 'fa:a=<a>;<base descriptor>'")
        head, base = body.split(";", 1)
        kv = _kv(head, ("a",), family)
        try:
            a = int(kv["a"])
        except ValueError:
            raise DescriptorError(f"fa: bad a {kv['a']!r}") from None
        return f_a_from_plateaued(parse_descriptor(ctx, base), a)
    if family == "table":
        try:
            vals = [int(v) for v in body.split(",") if v.strip()]
        except ValueError:
            raise DescriptorError("table: values must be integers") from None
        return from_table(ctx, vals)
    raise DescriptorError(f"unknown function family {family!r}")
