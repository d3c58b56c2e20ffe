"""Linear codes from p-ary functions: weights, self-orthogonality, minimality, bounds.

Three constructions over the coordinate set x in GF(p^n) (index order):

* ``punctured``: c = (a f(x) - Tr(b x)) for x != 0, length p^n - 1
* ``full``:      the same word including x = 0, length p^n
* ``augmented``: c = (a f(x) - Tr(b x) - c) for all x, length p^n

``b`` ranges over the whole field or over a GF(p)-subspace given by a basis.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from .cyclotomic import check_orbit_divisible, orbit_trace, orbit_trace_counts
from .errors import (
    AffineFunctionError,
    BetaOutsideDomainError,
    CodesError,
    ConstantForNonAugmentedError,
    DegenerateCodeError,
    NonRationalOrbitSumError,
    TooLargeForEnumerationError,
    WrongCharacteristicError,
)
from .galois import FieldCtx, fp_rank
from .walsh import WalshSpectrum, walsh_transform

KINDS = ("punctured", "full", "augmented")
ENUM_WORK_CAP = 1 << 34
EXACT_MINIMALITY_REPS = 4096


@dataclass(frozen=True, eq=False)
class CodeSpec:
    f: object  # PAryFunction
    kind: str = "punctured"
    beta_basis: Optional[tuple] = None  # None means the whole field

    def __post_init__(self):
        if self.kind not in KINDS:
            raise CodesError(f"kind must be one of {KINDS}")
        if self.beta_basis is not None:
            basis = tuple(int(b) for b in self.beta_basis)
            if self.kind == "augmented":
                raise CodesError("the augmented construction needs the full beta domain")
            if fp_rank(basis, self.ctx) != len(basis):
                raise CodesError("subspace basis vectors are dependent")
            object.__setattr__(self, "beta_basis", basis)

    @property
    def ctx(self) -> FieldCtx:
        return self.f.ctx

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def length(self) -> int:
        return self.ctx.q - 1 if self.kind == "punctured" else self.ctx.q

    @property
    def domain_basis(self) -> list[int]:
        return list(self.beta_basis) if self.beta_basis is not None else list(self.ctx.basis)

    def betas(self) -> np.ndarray:
        """The beta domain in a fixed order (whole field: index order)."""
        if self.beta_basis is None:
            return np.arange(self.ctx.q, dtype=np.int64)
        return self.ctx.span(self.beta_basis)

    def in_domain(self, beta: int) -> bool:
        if self.beta_basis is None:
            return 0 <= beta < self.ctx.q
        basis = self.beta_basis
        return fp_rank(list(basis) + [beta], self.ctx) == len(basis)

    @property
    def nominal_dim(self) -> int:
        return 1 + len(self.domain_basis) + (1 if self.kind == "augmented" else 0)

    def describe(self) -> str:
        dom = "full" if self.beta_basis is None else f"subspace(dim {len(self.beta_basis)})"
        return f"{self.kind} code of {self.f.descriptor or self.f.family}, beta in {dom}"


# ---------------------------------------------------------------------------
# weight distributions


@dataclass(frozen=True)
class WeightDistribution:
    length: int
    p: int
    weights: tuple  # ((w, mult), ...) sorted by w

    def __post_init__(self):
        total = sum(m for _, m in self.weights)
        k = _ilog(total, self.p)
        if k is None:
            raise CodesError(f"codeword count {total} is not a power of {self.p}")
        if dict(self.weights).get(0) != 1:
            raise DegenerateCodeError("the zero weight must occur exactly once")

    @classmethod
    def from_counter(cls, length: int, p: int, counter) -> "WeightDistribution":
        return cls(length, p, tuple(sorted((int(w), int(m)) for w, m in counter.items() if m)))

    @property
    def total(self) -> int:
        return sum(m for _, m in self.weights)

    @property
    def k(self) -> int:
        return _ilog(self.total, self.p)

    @property
    def nonzero(self) -> list[tuple[int, int]]:
        return [(w, m) for w, m in self.weights if w]

    @property
    def d(self) -> int:
        nz = self.nonzero
        return nz[0][0] if nz else 0

    @property
    def w_min(self) -> int:
        return self.d

    @property
    def w_max(self) -> int:
        nz = self.nonzero
        return nz[-1][0] if nz else 0

    @property
    def params(self) -> tuple[int, int, int]:
        return (self.length, self.k, self.d)

    def as_dict(self) -> dict[int, int]:
        return dict(self.weights)

    def enumerator(self) -> str:
        parts = []
        for w, m in self.weights:
            if w == 0:
                parts.append(str(m))
            else:
                parts.append(("" if m == 1 else str(m)) + f"z^{w}")
        return " + ".join(parts)

    def to_csv(self) -> str:
        return "weight,multiplicity\n" + "".join(f"{w},{m}\n" for w, m in self.weights)


def _ilog(v: int, p: int) -> Optional[int]:
    e = 0
    while v > 1 and v % p == 0:
        v //= p
        e += 1
    return e if v == 1 else None


def generator_rows(spec: CodeSpec) -> np.ndarray:
    """Rows f, Tr(g_i x) for the domain basis, and the all-one row for augmented."""
    ctx = spec.ctx
    x = np.arange(ctx.q, dtype=np.int64)
    rows = [np.asarray(spec.f.values, dtype=np.int64)]
    for g in spec.domain_basis:
        rows.append(ctx.trace(ctx.mul(g, x)))
    if spec.kind == "augmented":
        rows.append(np.ones(ctx.q, dtype=np.int64))
    m = np.stack(rows)
    return m[:, 1:] if spec.kind == "punctured" else m


def rank_rows(rows: np.ndarray, p: int) -> int:
    """Rank over GF(p) of an integer matrix (numpy elimination, rows are few)."""
    m = np.asarray(rows, dtype=np.int64) % p
    r = 0
    nrows, ncols = m.shape
    for col in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(m[r:, col])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = (m[r] * pow(int(m[r, col]), p - 2, p)) % p
        others = np.flatnonzero(m[:, col])
        others = others[others != r]
        if others.size:
            m[others] = (m[others] - np.outer(m[others, col], m[r])) % p
        r += 1
    return r


def code_dimension(spec: CodeSpec) -> int:
    return rank_rows(generator_rows(spec), spec.p)


def check_not_affine(spec: CodeSpec, spectrum: WalshSpectrum):
    """Reject f = Tr(w x): then some Walsh row is concentrated on value 0."""
    if (spectrum.counts[:, 0] == spectrum.ctx.q).any():
        raise AffineFunctionError("f coincides with a linear function Tr(w x)")


def codeword(spec: CodeSpec, alpha: int, beta: int, c: Optional[int] = None) -> np.ndarray:
    ctx = spec.ctx
    p = ctx.p
    beta = int(getattr(beta, "index", beta))
    if c is not None and spec.kind != "augmented":
        raise ConstantForNonAugmentedError("the constant c is only used by the augmented code")
    if not spec.in_domain(beta):
        raise BetaOutsideDomainError(f"beta #{beta} is outside the beta domain")
    x = np.arange(ctx.q, dtype=np.int64)
    word = (alpha * spec.f.values - ctx.trace(ctx.mul(beta, x)) - (c or 0)) % p
    return word[1:] if spec.kind == "punctured" else word


def _hamming(word: np.ndarray) -> int:
    return int(np.count_nonzero(word))


def weight_analytic(spec: CodeSpec, spectrum: WalshSpectrum, alpha: int, beta: int, c: int = 0) -> int:
    """Weight of c_{alpha,beta[,c]} from one Walsh value via its Galois orbit sum."""
    ctx = spec.ctx
    p, q = ctx.p, ctx.q
    alpha %= p
    c %= p
    beta = int(getattr(beta, "index", beta))
    if alpha == 0:
        if beta == 0:
            w = q if c else 0
        else:
            w = q - q // p
        return w - (1 if spec.kind == "punctured" and c else 0)
    ainv = pow(alpha, p - 2, p)
    b = int(ctx.scalar_mul(ainv, beta))
    # N0 = #{x : f(x) - Tr(b x) = c / alpha} = (q + sum_z sigma_z(W(b) zeta^{-c/alpha})) / p
    u = spectrum[b].times_zeta(-ainv * c)
    zeros = check_orbit_divisible(orbit_trace(u) + q, p)
    w = q - zeros
    if spec.kind == "punctured" and (alpha * int(spec.f.values[0])) % p:
        w -= 1
    return w


def _raw_weight_counter(spec: CodeSpec, spectrum: WalshSpectrum) -> Counter:
    """Weights of c_{alpha,beta,c} over every parameter tuple (with repetitions)."""
    ctx = spec.ctx
    p, q = ctx.p, ctx.q
    betas = spec.betas()
    cs = range(p) if spec.kind == "augmented" else (0,)
    punct = spec.kind == "punctured"
    f0 = int(spec.f.values[0])
    tally: Counter = Counter()
    nb = betas.size
    for c in cs:
        # alpha = 0
        zero_beta = int(np.count_nonzero(betas == 0))
        tally[q if c else 0] += zero_beta
        tally[q - q // p] += nb - zero_beta
        for alpha in range(1, p):
            ainv = pow(alpha, p - 2, p)
            b = ctx.scalar_mul(ainv, betas)
            shift = (ainv * c) % p
            tr = orbit_trace_counts(spectrum.counts[b], shift)
            if np.any((tr + q) % p):
                raise NonRationalOrbitSumError("orbit sum not divisible by p")
            w = q - (tr + q) // p
            if punct and (alpha * f0) % p:
                w = w - 1
            vals, cnt = np.unique(w, return_counts=True)
            for v, k in zip(vals.tolist(), cnt.tolist()):
                tally[v] += k
    return tally


def weight_distribution(spec: CodeSpec, spectrum: Optional[WalshSpectrum] = None) -> WeightDistribution:
    if spectrum is None:
        spectrum = walsh_transform(spec.f)
    check_not_affine(spec, spectrum)
    tally = _raw_weight_counter(spec, spectrum)
    k = code_dimension(spec)
    rep = spec.p ** (spec.nominal_dim - k)
    if rep > 1:
        for w in list(tally):
            if tally[w] % rep:
                raise DegenerateCodeError("repeated codewords are not evenly distributed")
            tally[w] //= rep
    return WeightDistribution.from_counter(spec.length, spec.p, tally)


def enumerate_codewords(spec: CodeSpec) -> Iterator[np.ndarray]:
    """Every codeword exactly once, ordered by (alpha, beta, c) then deduplicated."""
    return iter(all_codewords(spec))


def all_codewords(spec: CodeSpec) -> np.ndarray:
    """Matrix of distinct codewords (one row each) in first-occurrence order."""
    p = spec.p
    if p ** spec.nominal_dim * spec.length > ENUM_WORK_CAP:
        raise TooLargeForEnumerationError("code too large for explicit enumeration")
    g = generator_rows(spec) % p
    nd = g.shape[0]
    coef = np.stack(np.unravel_index(np.arange(p**nd), (p,) * nd), axis=1)
    words = (coef @ g) % p
    _, first = np.unique(words, axis=0, return_index=True)
    return words[np.sort(first)]


def enumerated_distribution(spec: CodeSpec) -> WeightDistribution:
    words = all_codewords(spec)
    w = np.count_nonzero(words, axis=1)
    vals, cnt = np.unique(w, return_counts=True)
    return WeightDistribution.from_counter(spec.length, spec.p, dict(zip(vals.tolist(), cnt.tolist())))


# ---------------------------------------------------------------------------
# self-orthogonality


def self_orthogonal_direct(spec: CodeSpec) -> bool:
    """All pairwise dot products of generator rows vanish mod p."""
    g = generator_rows(spec) % spec.p
    gram = (g @ g.T) % spec.p
    return bool((gram == 0).all())


def so_criterion_binary(spectrum: WalshSpectrum, betas: Optional[np.ndarray] = None) -> bool:
    """W(b) + W(0) and W(b) - W(0) both divisible by 8 for every b in the domain."""
    if spectrum.p != 2:
        raise WrongCharacteristicError("the mod-8 criterion is for p = 2")
    w = spectrum.signed
    if betas is not None:
        w = w[betas]
    w0 = int(spectrum.signed[0])
    return bool((((w + w0) % 8) == 0).all() and (((w - w0) % 8) == 0).all())


def so_criterion_odd(spectrum: WalshSpectrum, variant: str = "full") -> bool:
    """sum_a c_a a^2 = 0 (and sum_a c_a a = 0 for augmented) mod p for every row."""
    p = spectrum.p
    if p <= 3:
        raise WrongCharacteristicError("the count-sum criterion needs p > 3")
    a = np.arange(p, dtype=np.int64)
    s2 = (spectrum.counts @ (a * a)) % p
    ok = (s2 == 0).all()
    if variant == "augmented":
        s1 = (spectrum.counts @ a) % p
        ok = ok and (s1 == 0).all()
    elif variant != "full":
        raise CodesError("variant must be 'full' or 'augmented'")
    return bool(ok)


def so_criterion_ternary(dist: WeightDistribution) -> bool:
    if dist.p != 3:
        raise WrongCharacteristicError("the divisibility criterion is for p = 3")
    return all(w % 3 == 0 for w, _ in dist.weights)


# ---------------------------------------------------------------------------
# minimality


def _projective_reps(words: np.ndarray, p: int) -> np.ndarray:
    """Nonzero words whose first nonzero coordinate is 1 (one per scalar class)."""
    nz = words.any(axis=1)
    words = words[nz]
    first = (words != 0).argmax(axis=1)
    lead = words[np.arange(len(words)), first]
    return words[lead == 1]


def find_covering_pair(spec: CodeSpec, threads: int = 1) -> Optional[tuple[np.ndarray, np.ndarray]]:
    """First pair (a, b) of independent codewords with supp(b) inside supp(a), or None.

    Blocks are scanned in canonical order, so the witness does not depend on
    the thread count.
    """
    reps = _projective_reps(all_codewords(spec), spec.p)
    if len(reps) > 4 * EXACT_MINIMALITY_REPS:
        raise TooLargeForEnumerationError("too many codewords for the exact pair scan")
    supp = np.packbits(reps != 0, axis=1).view(np.uint8)
    pad = (-supp.shape[1]) % 8
    if pad:
        supp = np.concatenate([supp, np.zeros((len(supp), pad), dtype=np.uint8)], axis=1)
    supp = supp.view(np.uint64)
    wts = np.bitwise_count(supp).sum(axis=1)

    def scan(block: range):
        for i in block:
            # words j with wt_j <= wt_i and supp_j inside supp_i
            cand = np.flatnonzero(wts <= wts[i])
            cand = cand[cand != i]
            if cand.size == 0:
                continue
            outside = np.bitwise_count(supp[cand] & ~supp[i]).sum(axis=1)
            hit = np.flatnonzero(outside == 0)
            if hit.size:
                return i, int(cand[hit[0]])
        return None

    n = len(reps)
    threads = max(1, int(threads))
    step = max(1, -(-n // (threads * 4)))
    blocks = [range(s, min(n, s + step)) for s in range(0, n, step)]
    if threads == 1:
        found = next((r for r in map(scan, blocks) if r is not None), None)
    else:
        with ThreadPoolExecutor(threads) as ex:
            found = next((r for r in ex.map(scan, blocks) if r is not None), None)
    if found is None:
        return None
    return reps[found[0]], reps[found[1]]


def covering_witness(a: np.ndarray, b: np.ndarray, p: int) -> dict:
    """Weights of a covering pair plus both sides of the pair-sum identity."""
    wa, wb = _hamming(a), _hamming(b)
    pair_sum = sum(_hamming((a + z * b) % p) for z in range(1, p))
    return {
        "covering_weight": wa,
        "covered_weight": wb,
        "pair_sum": pair_sum,
        "identity_rhs": (p - 1) * wa - wb,
    }


def minimality_exact(spec: CodeSpec, threads: int = 1) -> bool:
    """No two independent codewords a, b with supp(b) inside supp(a).

    Equivalent to sum_z wt(a + z b) != (p-1) wt(a) - wt(b) for all such pairs.
    """
    return find_covering_pair(spec, threads) is None


def minimality_binary_walsh(spectrum: WalshSpectrum, betas: Optional[np.ndarray] = None) -> bool:
    """No h != l in the domain with W(h) + W(l) = 2^n or W(h) - W(l) = 2^n."""
    if spectrum.p != 2:
        raise WrongCharacteristicError("the Walsh minimality test is for p = 2")
    q = spectrum.q
    if (np.abs(spectrum.signed) == q).any():
        # the test presumes dimension n + 1, which fails for affine f
        raise AffineFunctionError("the Walsh minimality test needs a non-affine f")
    if int(spectrum.signed.sum()) != q:
        # sum_b W(b) = q (-1)^f(0); the punctured coordinate must carry f(0) = 0
        raise CodesError("the Walsh minimality test needs f(0) = 0")
    w = spectrum.signed if betas is None else spectrum.signed[betas]
    cnt = Counter(w.tolist())
    for v, m in cnt.items():
        other = q - v
        if other in cnt and (other != v or m > 1):
            return False
        other = v - q
        if other in cnt:  # other != v since q > 0
            return False
    return True


def ab_condition(dist: WeightDistribution) -> str:
    """'satisfies' when w_min/w_max > (p-1)/p, 'boundary' on equality, else 'violates'."""
    if dist.w_max == 0:
        raise DegenerateCodeError("no nonzero codeword")
    r = Fraction(dist.w_min, dist.w_max)
    t = Fraction(dist.p - 1, dist.p)
    if r > t:
        return "satisfies"
    return "boundary" if r == t else "violates"


# ---------------------------------------------------------------------------
# bounds and divisibility


def griesmer_sum(k: int, d: int, p: int) -> int:
    return sum(-(-d // p**i) for i in range(k))


def bounds_check(dist: WeightDistribution) -> dict:
    if dist.k < 1 or dist.d == 0:
        raise DegenerateCodeError("bounds need k >= 1 and d >= 1")
    n, k, d = dist.params
    g = griesmer_sum(k, d, dist.p)
    return {
        "griesmer_sum": g,
        "griesmer_met": n == g,
        "griesmer_optimal": griesmer_sum(k, d + 1, dist.p) > n,
        "singleton_defect": n - k + 1 - d,
    }


def divisibility(dist: WeightDistribution) -> tuple[int, str]:
    g = 0
    for w, _ in dist.nonzero:
        g = math.gcd(g, w)
    if dist.p != 2:
        return g, "n/a"
    if g % 4 == 0:
        return g, "doubly-even"
    if g % 2 == 0:
        return g, "singly-even"
    return g, "odd"


# ---------------------------------------------------------------------------
# orchestration


@dataclass
class AnalysisReport:
    length: int
    k: int
    d: int
    distribution: WeightDistribution
    so_direct: bool
    so_criterion: Optional[bool]
    so_criterion_name: str
    minimal: Optional[bool]
    minimal_method: str
    ab: str
    ab_violating: bool
    divisibility: int
    parity: str
    griesmer: dict
    singleton_defect: int
    assumptions: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def params(self) -> list[int]:
        return [self.length, self.k, self.d]

    def to_json(self) -> dict:
        out = {
            "params": self.params,
            "length": self.length,
            "weights": [[w, m] for w, m in self.distribution.weights],
            "self_orthogonal": {
                "direct": self.so_direct,
                "criterion": self.so_criterion,
                "criterion_name": self.so_criterion_name,
            },
            "minimal": {"verdict": self.minimal, "method": self.minimal_method},
            "ab": self.ab,
            "ab_violating": self.ab_violating,
            "divisibility": self.divisibility,
            "parity": self.parity,
            "griesmer": self.griesmer,
            "singleton_defect": self.singleton_defect,
            "assumptions": list(self.assumptions),
        }
        out.update(self.extra)
        return out


def _so_criterion(spec: CodeSpec, spectrum: WalshSpectrum, dist: WeightDistribution):
    p = spec.p
    if p == 2:
        if spec.kind == "augmented":
            return None, "n/a"
        if spec.kind == "punctured" and spec.f.values[0] != 0:
            return None, "n/a"
        return so_criterion_binary(spectrum, spec.betas()), "binary-walsh-mod8"
    if p == 3:
        return so_criterion_ternary(dist), "ternary-weight-divisibility"
    if spec.beta_basis is not None or (spec.kind == "punctured" and spec.f.values[0] != 0):
        return None, "n/a"
    variant = "augmented" if spec.kind == "augmented" else "full"
    return so_criterion_odd(spectrum, variant), f"odd-count-sums-{variant}"


def choose_minimality_method(spec: CodeSpec, dist: WeightDistribution) -> str:
    reps = (dist.total - 1) // (spec.p - 1)
    if reps <= EXACT_MINIMALITY_REPS:
        return "exact"
    if spec.p == 2 and spec.kind == "punctured" and spec.f.values[0] == 0:
        return "walsh"
    return "ab"


def analyze(
    spec: CodeSpec,
    spectrum: Optional[WalshSpectrum] = None,
    minimality: str = "auto",
    threads: int = 1,
) -> AnalysisReport:
    if spectrum is None:
        spectrum = walsh_transform(spec.f)
    dist = weight_distribution(spec, spectrum)
    so_direct = self_orthogonal_direct(spec)
    so_crit, so_name = _so_criterion(spec, spectrum, dist)
    ab = ab_condition(dist)
    method = choose_minimality_method(spec, dist) if minimality == "auto" else minimality
    extra = {}
    if method == "exact":
        pair = find_covering_pair(spec, threads=threads)
        minimal = pair is None
        if pair is not None:
            extra["minimality_witness"] = covering_witness(pair[0], pair[1], spec.p)
    elif method == "walsh":
        minimal = minimality_binary_walsh(spectrum, spec.betas())
    elif method == "ab":
        minimal = True if ab == "satisfies" else None
    else:
        raise CodesError(f"unknown minimality method {method!r}")
    delta, parity = divisibility(dist)
    bounds = bounds_check(dist)
    assumptions = []
    if spec.f.family == "fa":
        assumptions.append("dual of the base function assumed in class RF (not verified)")
    if method == "walsh" and spec.beta_basis is not None:
        assumptions.append("Walsh minimality test applied with h, l restricted to the subspace")
    if method == "ab" and minimal is None:
        assumptions.append("minimality undetermined: AB condition fails and code too large to scan")
    return AnalysisReport(
        length=dist.length,
        k=dist.k,
        d=dist.d,
        distribution=dist,
        so_direct=so_direct,
        so_criterion=so_crit,
        so_criterion_name=so_name,
        minimal=minimal,
        minimal_method=method,
        ab=ab,
        ab_violating=bool(minimal) and ab != "satisfies",
        divisibility=delta,
        parity=parity,
        griesmer={
            "sum": bounds["griesmer_sum"],
            "met": bounds["griesmer_met"],
            "optimal": bounds["griesmer_optimal"],
        },
        singleton_defect=bounds["singleton_defect"],
        assumptions=assumptions,
        extra=extra,
    )
