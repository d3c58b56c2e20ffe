"""Arithmetic in GF(p) and GF(p^n) backed by log/antilog tables.

Elements are addressed by an integer index: the mixed-radix encoding
``sum(c_i * p**i)`` of their coefficient vector in the polynomial basis
``1, x, ..., x^(n-1)``.  In particular the prime subfield GF(p) occupies
indices ``0..p-1`` with index == value, and ``x`` itself has index ``p``.

All bulk operations on :class:`FieldCtx` accept scalars or numpy integer
arrays of indices and are vectorised.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    CharacteristicTwoError,
    DependentConstraintsError,
    FieldTooLargeError,
    MixedContextError,
    NonDivisorError,
    NonPrimitiveError,
    ReducibleModulusError,
    CodesError,
)

MAX_FIELD_SIZE = 1 << 24


# ---------------------------------------------------------------------------
# small integer helpers


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def legendre(a: int, p: int) -> int:
    """Quadratic character eta_0 on GF(p), with eta_0(0) = 0."""
    if p == 2:
        raise CharacteristicTwoError("quadratic character needs odd p")
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


# ---------------------------------------------------------------------------
# dense polynomials over GF(p), coefficient lists low -> high


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        shift = len(a) - 1 - dm
        c = (a[-1] * inv_lead) % p
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_powmod(a: list[int], e: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(a, m, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), m, p)
        base = _poly_mod(_poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def _poly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _trim(out)


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Distinct-degree test: gcd(f, x^(p^k) - x) = 1 for 1 <= k <= n/2."""
    f = _trim([c % p for c in modulus])
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    h = [0, 1]
    for _ in range(n // 2):
        h = _poly_powmod(h, p, f, p)
        if len(_poly_gcd(f, _poly_sub(h, [0, 1], p), p)) > 1:
            return False
    return True


# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FqElem:
    """A single field element; a thin wrapper over an index."""

    ctx: "FieldCtx"
    index: int

    @property
    def coeffs(self) -> list[int]:
        return self.ctx.coeffs(self.index)

    def _other(self, other) -> int:
        if isinstance(other, FqElem):
            if other.ctx is not self.ctx:
                raise MixedContextError("elements from different fields")
            return other.index
        return int(other) % self.ctx.p

    def __add__(self, other):
        return FqElem(self.ctx, int(self.ctx.add(self.index, self._other(other))))

    __radd__ = __add__

    def __sub__(self, other):
        return FqElem(self.ctx, int(self.ctx.sub(self.index, self._other(other))))

    def __neg__(self):
        return FqElem(self.ctx, int(self.ctx.neg(self.index)))

    def __mul__(self, other):
        return FqElem(self.ctx, int(self.ctx.mul(self.index, self._other(other))))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return FqElem(self.ctx, int(self.ctx.mul(self.index, self.ctx.inv(o))))

    def __pow__(self, e: int):
        return FqElem(self.ctx, int(self.ctx.pow(self.index, e)))

    def inverse(self) -> "FqElem":
        return FqElem(self.ctx, int(self.ctx.inv(self.index)))

    def __eq__(self, other):
        if isinstance(other, FqElem):
            return self.ctx is other.ctx and self.index == other.index
        if isinstance(other, int):
            return self.index == other
        return NotImplemented

    def __hash__(self):
        return hash((id(self.ctx), self.index))

    def __bool__(self):
        return self.index != 0

    def __int__(self):
        return self.index

    def __index__(self):
        return self.index

    def __repr__(self):
        if self.index == 0:
            return "0"
        return f"g^{self.ctx.log_of(self.index)}"


def _idx(x) -> int:
    return x.index if isinstance(x, FqElem) else int(x)


class FieldCtx:
    """GF(p^n) with a fixed polynomial basis and a primitive element.

    Construction verifies that the modulus is irreducible and that the
    primitive element really generates the multiplicative group.
    """

    def __init__(self, p: int, n: int, modulus: Sequence[int], primitive=None):
        if not is_prime(p):
            raise CodesError(f"p={p} is not prime")
        if n < 1:
            raise CodesError("extension degree must be >= 1")
        q = p**n
        if q > MAX_FIELD_SIZE:
            raise FieldTooLargeError(f"p^n = {q} exceeds 2^24")
        mod = [int(c) % p for c in modulus]
        if len(_trim(list(mod))) != n + 1 or mod[n] != 1:
            raise CodesError(f"modulus must be monic of degree {n}")
        mod = mod[: n + 1]
        if not is_irreducible(mod, p):
            raise ReducibleModulusError(f"modulus {mod} is reducible over GF({p})")
        self.p = p
        self.n = n
        self.q = q
        self.modulus = tuple(mod)
        self._pow_p = [p**i for i in range(n + 1)]

        if primitive is None:
            gen = self._smallest_generator()
        else:
            gen = _idx(primitive)
            if not 0 < gen < q or not self._has_full_order(gen):
                raise NonPrimitiveError(f"element #{gen} is not primitive")
        self.gen = gen
        self._build_tables()

    # -- construction helpers ------------------------------------------------

    def _poly_of(self, idx: int) -> list[int]:
        return _trim(self.coeffs(idx))

    def _has_full_order(self, idx: int) -> bool:
        if self.q == 2:
            return idx == 1
        g = self._poly_of(idx)
        for r in prime_factors(self.q - 1):
            if _poly_powmod(g, (self.q - 1) // r, list(self.modulus), self.p) == [1]:
                return False
        return True

    def _smallest_generator(self) -> int:
        for idx in range(1, self.q):
            if self._has_full_order(idx):
                return idx
        raise NonPrimitiveError("no generator found")  # unreachable for a field

    def _times_x(self, a: np.ndarray) -> np.ndarray:
        """Multiply every element of ``a`` by x (vectorised shift-and-reduce)."""
        p, n = self.p, self.n
        if p == 2:
            hi = (a >> (n - 1)) & 1
            red = sum(1 << i for i in range(n) if self.modulus[i])
            return ((a << 1) & (self.q - 1)) ^ (hi * red)
        top = a // self._pow_p[n - 1]
        shifted = (a % self._pow_p[n - 1]) * p
        # x^n = -sum(m_i x^i)
        out = shifted
        for i in range(n):
            c = (-self.modulus[i]) % p
            if c:
                digit = (out // self._pow_p[i]) % p
                new = (digit + top * c) % p
                out = out + (new - digit) * self._pow_p[i]
        return out

    def _build_tables(self):
        q = self.q
        allx = np.arange(q, dtype=np.int64)
        # multiplication-by-g permutation: g*y = sum_i g_i x^i y
        gcoef = self.coeffs(self.gen)
        cur = allx
        times_g = np.zeros(q, dtype=np.int64)
        for i in range(self.n):
            if gcoef[i]:
                times_g = self.add(times_g, self.scalar_mul(gcoef[i], cur))
            cur = self._times_x(cur)
        exp = np.empty(q - 1, dtype=np.int64)
        e = 1
        tg = times_g.tolist()
        for k in range(q - 1):
            exp[k] = e
            e = tg[e]
        if e != 1:
            raise NonPrimitiveError("generator order check failed while building tables")
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(q - 1, dtype=np.int64)
        self.exp_table = exp
        self.log_table = log
        # absolute trace of every element
        tr = np.zeros(q, dtype=np.int64)
        for i in range(self.n):
            tr = self.add(tr, self.pow(allx, self._pow_p[i]))
        if tr.max() >= self.p:
            raise CodesError("trace table left the prime field")
        self.trace_table = tr

    # -- element bookkeeping -------------------------------------------------

    def __repr__(self):
        return f"FieldCtx(p={self.p}, n={self.n}, modulus={list(self.modulus)}, gen=#{self.gen})"

    def coeffs(self, idx: int) -> list[int]:
        out = []
        for _ in range(self.n):
            idx, r = divmod(int(idx), self.p)
            out.append(r)
        return out

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.n:
            raise CodesError("too many coefficients")
        return sum((int(c) % self.p) * self._pow_p[i] for i, c in enumerate(coeffs))

    def elem(self, idx) -> FqElem:
        idx = _idx(idx)
        if not 0 <= idx < self.q:
            raise CodesError(f"index {idx} outside field of size {self.q}")
        return FqElem(self, idx)

    def g(self, k: int) -> FqElem:
        """The element gen^k."""
        return FqElem(self, int(self.exp_table[k % (self.q - 1)]))

    def log_of(self, idx) -> int:
        idx = _idx(idx)
        if idx == 0:
            raise CodesError("log of zero")
        return int(self.log_table[idx])

    def digits(self, a) -> np.ndarray:
        """Coefficient vectors of an index array: shape a.shape + (n,)."""
        a = np.asarray(a, dtype=np.int64)
        return np.stack([(a // self._pow_p[i]) % self.p for i in range(self.n)], axis=-1)

    # -- vectorised arithmetic -----------------------------------------------

    def add(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for w in self._pow_p[: self.n]:
            out += (((a // w) + (b // w)) % self.p) * w
        return out

    def scalar_mul(self, c: int, a):
        """Multiply by an element of the prime field."""
        c %= self.p
        a = np.asarray(a, dtype=np.int64)
        if c == 0:
            return np.zeros_like(a)
        if c == 1:
            return a.copy()
        out = np.zeros_like(a)
        for w in self._pow_p[: self.n]:
            out += (((a // w) * c) % self.p) * w
        return out

    def neg(self, a):
        return self.scalar_mul(self.p - 1, a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la, lb = self.log_table[a], self.log_table[b]
        out = self.exp_table[(la + lb) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def pow(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        if e < 0:
            a = self.inv(a)
            e = -e
        ee = e % (self.q - 1)
        out = self.exp_table[(self.log_table[a] * ee) % (self.q - 1)]
        return np.where(a == 0, 0, out)

    def inv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self.exp_table[(-self.log_table[a]) % (self.q - 1)]

    def frobenius(self, a, k: int = 1):
        return self.pow(a, self.p**k)

    def trace(self, a):
        """Absolute trace Tr_1^n, values in GF(p) as integers 0..p-1."""
        return self.trace_table[np.asarray(a, dtype=np.int64)]

    def in_subfield(self, a, k: int):
        a = np.asarray(a, dtype=np.int64)
        return self.frobenius(a, k) == a

    @cached_property
    def basis(self) -> list[int]:
        return [self._pow_p[i] for i in range(self.n)]

    def span(self, basis: Sequence[int]) -> np.ndarray:
        """All GF(p)-combinations of ``basis`` in coefficient-lexicographic order."""
        out = np.zeros(1, dtype=np.int64)
        for b in basis:
            b = _idx(b)
            out = np.concatenate([self.add(out, self.scalar_mul(c, b)) for c in range(self.p)])
        return out


# ---------------------------------------------------------------------------
# module-level operations


def build_field(p: int, n: int, modulus: Sequence[int], primitive=None) -> FieldCtx:
    return FieldCtx(p, n, modulus, primitive)


def trace_to_subfield(ctx: FieldCtx, k: int, x):
    """Tr_k^n(x) = x + x^(p^k) + ... + x^(p^(n-k)), result as an index of GF(p^n)."""
    if k < 1 or ctx.n % k:
        raise NonDivisorError(f"{k} does not divide {ctx.n}")
    x = np.asarray(_idx(x) if isinstance(x, FqElem) else x, dtype=np.int64)
    out = np.zeros_like(x)
    for i in range(ctx.n // k):
        out = ctx.add(out, ctx.frobenius(x, i * k))
    return out


def subfield_trace(ctx: FieldCtx, m: int, y):
    """Tr_1^m(y) for y in the subfield GF(p^m); returns values 0..p-1."""
    if m < 1 or ctx.n % m:
        raise NonDivisorError(f"{m} does not divide {ctx.n}")
    y = np.asarray(y, dtype=np.int64)
    out = np.zeros_like(y)
    for i in range(m):
        out = ctx.add(out, ctx.frobenius(y, i))
    if np.any(out >= ctx.p):
        raise CodesError("argument of the subfield trace is not in GF(p^m)")
    return out


def quad_char(ctx: FieldCtx, x):
    """Quadratic character eta on GF(q): +1 on nonzero squares, -1 on non-squares, 0 at 0."""
    if ctx.p == 2:
        raise CharacteristicTwoError("quadratic character is undefined for p = 2")
    x = np.asarray(_idx(x) if isinstance(x, FqElem) else x, dtype=np.int64)
    lg = ctx.log_table[x]
    return np.where(x == 0, 0, np.where(lg % 2 == 0, 1, -1))


def rank_mod_p(rows: Iterable[Sequence[int]], p: int) -> int:
    return len(row_reduce(rows, p)[1])


def row_reduce(rows: Iterable[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over GF(p); pivots chosen at the lowest column first."""
    m = [[int(c) % p for c in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][col], p - 2, p)
        m[r] = [(v * inv) % p for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                c = m[i][col]
                m[i] = [(a - c * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace_mod_p(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of {v : M v = 0}, one vector per free column, in increasing column order."""
    red, pivots = row_reduce(rows, p) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[fc]) % p
        basis.append(v)
    return basis


def fp_rank(vectors: Sequence[FqElem], ctx: Optional[FieldCtx] = None) -> int:
    """GF(p)-rank of field elements viewed as coefficient vectors."""
    vectors = list(vectors)
    if not vectors:
        return 0
    if ctx is None:
        if not isinstance(vectors[0], FqElem):
            raise CodesError("pass ctx when ranking raw indices")
        ctx = vectors[0].ctx
    for v in vectors:
        if isinstance(v, FqElem) and v.ctx is not ctx:
            raise MixedContextError("vectors from different fields")
    return rank_mod_p([ctx.coeffs(_idx(v)) for v in vectors], ctx.p)


def trace_kernel_subspace(ctx: FieldCtx, constraints: Sequence) -> list[int]:
    """Basis of {d : Tr(w d) = 0 for every w in constraints}."""
    cons = [_idx(w) for w in constraints]
    if not cons:
        raise CodesError("need at least one constraint")
    if fp_rank(cons, ctx) != len(cons):
        raise DependentConstraintsError("constraints are GF(p)-dependent")
    # row j: the linear form d -> Tr(w_j d) on the polynomial basis
    rows = [[int(ctx.trace(ctx.mul(w, b))) for b in ctx.basis] for w in cons]
    return [ctx.from_coeffs(v) for v in nullspace_mod_p(rows, ctx.n, ctx.p)]


# ---------------------------------------------------------------------------
# field spec text: "p=2 n=14 mod=1,0,0,1,0,1,0,0,0,0,0,0,0,0,1"


def parse_field_spec(text: str) -> FieldCtx:
    from .presets import FIELD_PRESETS

    text = text.strip()
    if text in FIELD_PRESETS:
        return FIELD_PRESETS[text]()
    kv = {}
    for tok in text.split():
        if "=" not in tok:
            raise CodesError(f"bad field token {tok!r}; expected key=value")
        k, v = tok.split("=", 1)
        kv[k] = v
    try:
        p = int(kv["p"])
        n = int(kv["n"])
        mod = [int(c) for c in kv["mod"].split(",")] if "mod" in kv else None
        prim = int(kv["prim"]) if "prim" in kv else None
    except (KeyError, ValueError) as exc:
        raise CodesError(f"field spec needs p=, n= and optionally mod=, prim= ({exc})") from None
    if mod is None:
        from .presets import default_field

        if not is_prime(p) or n < 1:
            raise CodesError(f"bad field GF({p}^{n})")
        return default_field(p, n)
    return get_field(p, n, tuple(mod), prim)


def format_field_spec(ctx: FieldCtx) -> str:
    return f"p={ctx.p} n={ctx.n} mod={','.join(str(c) for c in ctx.modulus)}"


_FIELD_CACHE: dict = {}


def get_field(p: int, n: int, modulus: tuple, primitive: Optional[int] = None) -> FieldCtx:
    """Cached constructor; contexts are immutable so sharing is safe."""
    key = (p, n, tuple(modulus), primitive)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = FieldCtx(p, n, modulus, primitive)
    return _FIELD_CACHE[key]
