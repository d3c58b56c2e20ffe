"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line.

Run it alone with ``python tests/test_acceptance.py`` or as part of
``pytest``; either way the verdicts are printed at the end of the session.
"""

import sys
import time
from contextlib import contextmanager

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from somcodes.codes import (
    CodeSpec,
    analyze,
    code_dimension,
    minimality_binary_walsh,
    minimality_exact,
    self_orthogonal_direct,
    so_criterion_binary,
    so_criterion_odd,
    weight_distribution,
)
from somcodes.cyclotomic import CycInt, from_counts, galois_sigma, gauss_sum, p_star, sqrt_pstar_power
from somcodes.galois import legendre, parse_field_spec, quad_char, trace_kernel_subspace
from somcodes.pfunc import f_a_from_plateaued, from_table, parse_descriptor
from somcodes.presets import default_field, evaluate_preset, get_preset
from somcodes.search import PlateauedQuadratic, SearchTask, TripleLambda, WPair, run
from somcodes.theory import diff, predict
from somcodes.walsh import parseval_ok, walsh_transform, walsh_transform_naive

RESULTS = {}

CRITERIA = {
    1: "ex-3.1a [16383, 15, 2064]",
    2: "ex-3.1b [4095, 13, 520]",
    3: "ex-3.2 [65535, 15, 16450] on V",
    4: "ex-4.1a / ex-4.1b f_t codes",
    5: "ex-4.2a / ex-4.2b f_a codes",
    6: "criterion equivalence suites",
    7: "exact-arithmetic identities",
    8: "theory-diff sweep over searched instances",
}


@contextmanager
def criterion(num):
    notes = []
    t0 = time.perf_counter()
    try:
        yield notes
    except BaseException as exc:
        if isinstance(exc, pytest.skip.Exception):
            raise
        msg = str(exc).strip().splitlines()[0] if str(exc).strip() else type(exc).__name__
        RESULTS[num] = ("FAIL", time.perf_counter() - t0, [msg] + notes)
        raise
    RESULTS[num] = ("PASS", time.perf_counter() - t0, notes)


def summary_lines():
    lines = []
    for num in sorted(RESULTS):
        status, secs, notes = RESULTS[num]
        detail = "; ".join(notes)
        line = f"{status} criterion {num}: {CRITERIA[num]} ({secs:.1f} s)"
        lines.append(line + (f" - {detail}" if detail else ""))
    return lines


def _check_preset(name):
    out = evaluate_preset(get_preset(name))
    bad = [f"{c['check']}: expected {c['expected']}, computed {c['computed']}" for c in out["checks"] if not c["ok"]]
    assert not bad, f"{name}: " + "; ".join(bad)
    return out


def _timed(fn, limit, label):
    t0 = time.perf_counter()
    out = fn()
    secs = time.perf_counter() - t0
    assert secs < limit, f"{label} took {secs:.1f} s, target {limit} s"
    return out


# ---------------------------------------------------------------------------
# criteria 1-5: worked examples


def test_criterion_1():
    with criterion(1):
        out = _timed(lambda: _check_preset("ex-3.1a"), 10, "ex-3.1a")
        rep = out["report"]
        assert rep["params"] == [16383, 15, 2064]
        assert rep["self_orthogonal"]["direct"] and rep["self_orthogonal"]["criterion"]
        assert rep["self_orthogonal"]["criterion_name"] == "binary-walsh-mod8"
        assert rep["minimal"] == {"verdict": True, "method": "walsh"}
        assert rep["ab"] == "violates" and 2064 / 8304 < 1 / 2


def test_criterion_2():
    with criterion(2):
        out = _timed(lambda: _check_preset("ex-3.1b"), 5, "ex-3.1b")
        assert out["report"]["params"] == [4095, 13, 520]


def test_criterion_3():
    with criterion(3):
        out = _timed(lambda: _check_preset("ex-3.2"), 30, "ex-3.2")
        rep = out["report"]
        assert rep["params"] == [65535, 15, 16450]
        assert rep["parity"] == "singly-even"
        assert rep["self_orthogonal"]["criterion"] is True
        assert out["beta_domain"] == "V:g^3084,g^42148"


def test_criterion_4():
    with criterion(4) as notes:
        a = _timed(lambda: _check_preset("ex-4.1a"), 2, "ex-4.1a")
        assert a["report"]["weights"] == [[0, 1], [54, 240], [81, 2]]
        assert a["report"]["params"] == [81, 5, 54]
        assert a["report"]["griesmer"]["met"]
        assert a["errata"]["stated_params"] == [243, 6, 54]
        notes.append("ex-4.1a errata emitted, stated [243, 6, 54] corrected to [81, 5, 54]")
        b = _timed(lambda: _check_preset("ex-4.1b"), 2, "ex-4.1b")
        assert b["report"]["params"] == [243, 6, 153]


def test_criterion_5():
    with criterion(5) as notes:
        a = _timed(lambda: _check_preset("ex-4.2a"), 10, "ex-4.2a")
        assert a["base_profile"]["s"] == 1 and a["base_profile"]["support_size"] == 81
        notes.append("ex-4.2a base function has epsilon = -1")
        out = evaluate_preset(get_preset("ex-4.2b"))
        rep = out["report"]
        # everything except minimality is checked first so the failure is specific
        assert rep["params"] == [242, 6, 54]
        assert rep["weights"] == [[0, 1], [54, 2], [135, 16], [162, 698], [189, 12]]
        assert out["base_profile"]["s"] == 2 and out["base_profile"]["support_size"] == 27
        assert rep["self_orthogonal"]["direct"] and rep["self_orthogonal"]["criterion"]
        assert rep["ab"] == "violates"
        if not rep["minimal"]["verdict"]:
            w = rep["minimality_witness"]
            notes.append(
                f"covering pair of weights {w['covering_weight']} and {w['covered_weight']}, "
                f"pair sum {w['pair_sum']} = {w['identity_rhs']}"
            )
        assert rep["minimal"]["verdict"], "ex-4.2b is not minimal: the exact pair scan finds a covering pair"


# ---------------------------------------------------------------------------
# criterion 6: property-based equivalences


def _binary_table(draw):
    n = draw(st.integers(3, 6))
    ctx = default_field(2, n)
    vals = draw(st.lists(st.integers(0, 1), min_size=ctx.q, max_size=ctx.q))
    return from_table(ctx, vals)


def _non_affine_full_rank(spec, spectrum):
    if (np.abs(spectrum.signed) == spectrum.q).any():
        return False
    return code_dimension(spec) == spec.nominal_dim


def test_criterion_6():
    with criterion(6) as notes:
        counts = {"a": 0, "b": 0, "c": 0}

        @settings(max_examples=400, database=None)
        @given(st.data())
        def suite_a(data):
            f = _binary_table(data.draw)
            kind = data.draw(st.sampled_from(["full", "punctured"]))
            if kind == "punctured" and f.values[0]:
                f = from_table(f.ctx, f.values ^ 1)
            spec, spectrum = CodeSpec(f, kind), walsh_transform(f)
            if not _non_affine_full_rank(spec, spectrum):
                return
            counts["a"] += 1
            assert so_criterion_binary(spectrum) == self_orthogonal_direct(spec)

        @settings(max_examples=300, database=None)
        @given(st.sampled_from([(5, 2), (7, 1)]), st.data())
        def suite_b(pn, data):
            ctx = default_field(*pn)
            vals = data.draw(st.lists(st.integers(0, ctx.p - 1), min_size=ctx.q, max_size=ctx.q))
            f = from_table(ctx, vals)
            spectrum = walsh_transform(f)
            for kind, variant in (("full", "full"), ("augmented", "augmented")):
                assert so_criterion_odd(spectrum, variant) == self_orthogonal_direct(CodeSpec(f, kind))
            counts["b"] += 1

        @settings(max_examples=300, database=None)
        @given(st.data())
        def suite_c(data):
            f = _binary_table(data.draw)
            if f.values[0]:
                f = from_table(f.ctx, f.values ^ 1)
            spec, spectrum = CodeSpec(f, "punctured"), walsh_transform(f)
            if not _non_affine_full_rank(spec, spectrum):
                return
            counts["c"] += 1
            assert minimality_binary_walsh(spectrum) == minimality_exact(spec)

        suite_a()
        suite_b()
        suite_c()
        notes.append(f"checked {counts['a']} / {counts['b']} / {counts['c']} functions, no disagreement")
        assert counts["a"] >= 200 and counts["b"] >= 200 and counts["c"] >= 100, f"too few examples: {counts}"


# ---------------------------------------------------------------------------
# criterion 7: exact identities


def test_criterion_7():
    with criterion(7) as notes:
        for p in (3, 5, 7, 11):
            g = gauss_sum(p)
            assert g * g == CycInt.integer(p, p_star(p))
            for a in range(1, p):
                assert galois_sigma(a, g) == g * legendre(a, p)
        for p, n in ((3, 2), (3, 3), (5, 2)):
            ctx = default_field(p, n)
            x = np.arange(1, ctx.q)
            eta = quad_char(ctx, x)
            for r in range(1, ctx.q):
                coords = np.zeros(p, dtype=np.int64)
                np.add.at(coords, ctx.trace(ctx.mul(r, x)), eta)
                want = sqrt_pstar_power(p, n) * ((-1) ** (n - 1) * int(quad_char(ctx, r)))
                assert from_counts(coords) == want

        fields = [(p, n) for p in (2, 3, 5, 7) for n in range(1, 9) if 2 < p**n <= 243]
        count = {"n": 0}

        @settings(max_examples=520, database=None)
        @given(st.sampled_from(fields), st.data())
        def transforms(pn, data):
            ctx = default_field(*pn)
            vals = data.draw(st.lists(st.integers(0, ctx.p - 1), min_size=ctx.q, max_size=ctx.q))
            f = from_table(ctx, vals)
            fast = walsh_transform(f)
            assert (fast.counts == walsh_transform_naive(f).counts).all()
            assert parseval_ok(fast)
            count["n"] += 1

        transforms()
        assert count["n"] >= 500
        for name in ("ex-3.1a", "ex-3.1b", "ex-3.2", "ex-4.1a", "ex-4.1b", "ex-4.2a", "ex-4.2b"):
            pre = get_preset(name)
            assert parseval_ok(walsh_transform(parse_descriptor(pre.ctx(), pre.descriptor)))
        notes.append(f"fast = naive and Parseval on {count['n']} random functions and every preset")


# ---------------------------------------------------------------------------
# criterion 8: theory-diff sweep


def _first(task):
    res = run(task)
    res.raise_if_empty()
    return res.results[0]


def _binary_instance(cert, tid, m, subspace=False):
    ctx = parse_field_spec(cert["field"])
    f = parse_descriptor(ctx, cert["descriptor"])
    basis = trace_kernel_subspace(ctx, [f.params["w1"], f.params["w2"]]) if subspace else None
    dist = analyze(CodeSpec(f, "punctured", basis)).distribution
    pred = predict(tid, m=m)
    assert pred.total == pred.expected_total
    d = diff(pred, dist)
    assert d["match"], f"{tid} m={m}: {d['first_mismatch']}"
    return f"{tid} m={m}"


def test_criterion_8():
    with criterion(8) as notes:
        done = []
        done.append(_binary_instance(_first(SearchTask(TripleLambda(7, 4), budget=5000, limit=1)), "T_lt1_case1", 7))
        done.append(_binary_instance(_first(SearchTask(TripleLambda(6, 3), budget=5000, limit=1)), "T_lt1_case2", 6))
        # no admissible w pair exists for m <= 5
        cert = _first(SearchTask(WPair(6, "g^0", "g^585"), budget=5000, limit=1))
        done.append(_binary_instance(cert, "T_ltt1", 6, subspace=True))

        for p, n in ((3, 3), (3, 4), (3, 5), (5, 1), (5, 2), (7, 1), (7, 2)):
            tid = "T_ccwwl_1mod4" if p**n % 4 == 1 else "T_ccwwl_3mod4"
            pred = predict(tid, p=p, n=n)
            assert pred.total == pred.expected_total
            for t in range(1, p):
                dist = weight_distribution(CodeSpec(parse_descriptor(default_field(p, n), f"ftee:t={t}"), "full"))
                assert diff(pred, dist)["match"], f"{tid} p={p} n={n} t={t}"
            done.append(f"{tid} p={p} n={n}")

        for p, n, s in ((3, 5, 1), (3, 6, 2), (3, 4, 1), (3, 5, 2), (3, 6, 1), (5, 4, 1)):
            cert = _first(SearchTask(PlateauedQuadratic(p, n, s), budget=5000, limit=1))
            ctx = parse_field_spec(cert["field"])
            base = parse_descriptor(ctx, cert["descriptor"])
            tid = "T_ccww_even" if (n + s) % 2 == 0 else "T_ccww_odd"
            for a in range(1, p):
                pred = predict(tid, p=p, n=n, s=s, eps=cert["epsilon"], a=a)
                assert pred.total == pred.expected_total
                dist = weight_distribution(CodeSpec(f_a_from_plateaued(base, a), "punctured"))
                d = diff(pred, dist)
                assert d["match"], f"{tid} p={p} n={n} s={s} a={a}: {d['first_mismatch']}"
            done.append(f"{tid} p={p} n={n} s={s}")

        tables = {item.split()[0] for item in done}
        assert len(tables) == 7, f"tables covered: {sorted(tables)}"
        notes.append(f"{len(done)} instances over all 7 tables")
        notes.append("odd-1 rows 5 and 6 use the corrected form; the printed form fails for non-residue a when p > 3")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
