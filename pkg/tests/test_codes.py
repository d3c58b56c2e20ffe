import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from somcodes.codes import (
    CodeSpec,
    WeightDistribution,
    ab_condition,
    all_codewords,
    analyze,
    bounds_check,
    code_dimension,
    codeword,
    covering_witness,
    divisibility,
    enumerated_distribution,
    find_covering_pair,
    griesmer_sum,
    minimality_binary_walsh,
    minimality_exact,
    self_orthogonal_direct,
    so_criterion_binary,
    so_criterion_odd,
    so_criterion_ternary,
    weight_analytic,
    weight_distribution,
)
from somcodes.errors import (
    AffineFunctionError,
    BetaOutsideDomainError,
    CodesError,
    ConstantForNonAugmentedError,
    DegenerateCodeError,
    WrongCharacteristicError,
)
from somcodes.galois import trace_kernel_subspace
from somcodes.pfunc import from_table, linear_function, parse_descriptor
from somcodes.presets import FIELD_PRESETS, default_field
from somcodes.walsh import walsh_transform

FIELDS = [(2, 3), (2, 4), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1)]


def not_affine(f):
    return not (walsh_transform(f).counts[:, 0] == f.ctx.q).any() and not (
        f.ctx.p == 2 and (np.abs(walsh_transform(f).signed) == f.ctx.q).any()
    )


@st.composite
def tables(draw, fields=FIELDS):
    p, n = draw(st.sampled_from(fields))
    ctx = default_field(p, n)
    vals = draw(st.lists(st.integers(0, p - 1), min_size=ctx.q, max_size=ctx.q))
    return from_table(ctx, vals)


@settings(max_examples=80)
@given(tables(), st.sampled_from(["punctured", "full", "augmented"]))
def test_analytic_matches_enumeration(f, kind):
    assume(not_affine(f))
    spec = CodeSpec(f, kind)
    try:
        enum = enumerated_distribution(spec)
    except DegenerateCodeError:
        return
    assert weight_distribution(spec).weights == enum.weights


@settings(max_examples=40)
@given(tables([(3, 3), (5, 2), (2, 4)]), st.data())
def test_single_weights(f, data):
    assume(not_affine(f))
    spectrum = walsh_transform(f)
    p, q = f.ctx.p, f.ctx.q
    alpha = data.draw(st.integers(0, p - 1))
    beta = data.draw(st.integers(0, q - 1))
    c = data.draw(st.integers(0, p - 1))
    for kind in ("punctured", "full"):
        spec = CodeSpec(f, kind)
        assert weight_analytic(spec, spectrum, alpha, beta) == np.count_nonzero(codeword(spec, alpha, beta))
    spec = CodeSpec(f, "augmented")
    assert weight_analytic(spec, spectrum, alpha, beta, c) == np.count_nonzero(codeword(spec, alpha, beta, c))


@settings(max_examples=80)
@given(tables([(2, 3), (2, 4), (2, 5)]), st.sampled_from(["punctured", "full"]))
def test_binary_so_criterion(f, kind):
    assume(not_affine(f))
    if kind == "punctured":
        assume(f.values[0] == 0)
    spec = CodeSpec(f, kind)
    assume(code_dimension(spec) == spec.nominal_dim)
    assert so_criterion_binary(walsh_transform(f)) == self_orthogonal_direct(spec)


@settings(max_examples=80)
@given(tables([(5, 1), (5, 2), (7, 1), (7, 2)]), st.sampled_from(["full", "augmented"]))
def test_odd_so_criterion(f, kind):
    spec = CodeSpec(f, kind)
    variant = "augmented" if kind == "augmented" else "full"
    assert so_criterion_odd(walsh_transform(f), variant) == self_orthogonal_direct(spec)


@settings(max_examples=50)
@given(tables([(3, 2), (3, 3)]), st.sampled_from(["punctured", "full", "augmented"]))
def test_ternary_so_criterion(f, kind):
    assume(not_affine(f))
    spec = CodeSpec(f, kind)
    assert so_criterion_ternary(weight_distribution(spec)) == self_orthogonal_direct(spec)


@settings(max_examples=60)
@given(tables([(2, 3), (2, 4), (2, 5)]))
def test_binary_walsh_minimality(f):
    assume(not_affine(f) and f.values[0] == 0)
    spec = CodeSpec(f, "punctured")
    assume(code_dimension(spec) == spec.nominal_dim)
    assert minimality_binary_walsh(walsh_transform(f)) == minimality_exact(spec)


def test_walsh_minimality_rejects_affine():
    ctx = default_field(2, 4)
    with pytest.raises(AffineFunctionError):
        minimality_binary_walsh(walsh_transform(from_table(ctx, [0] * 16)))
    with pytest.raises(CodesError):
        minimality_binary_walsh(walsh_transform(from_table(ctx, [1] + [0] * 10 + [1, 0, 1, 1, 1])))
    with pytest.raises(WrongCharacteristicError):
        minimality_binary_walsh(walsh_transform(parse_descriptor(default_field(3, 2), "ftee:t=1")))


def test_affine_is_rejected(gf3_5):
    with pytest.raises(AffineFunctionError):
        weight_distribution(CodeSpec(linear_function(gf3_5, 5), "full"))


def test_covering_pair_of_nonminimal_example(gf3_5):
    f = parse_descriptor(gf3_5, "fa:a=1;quad:g@0,1@1,2@2")
    spec = CodeSpec(f, "punctured")
    a, b = find_covering_pair(spec)
    assert set(np.flatnonzero(b)) <= set(np.flatnonzero(a))
    w = covering_witness(a, b, 3)
    assert w == {"covering_weight": 162, "covered_weight": 135, "pair_sum": 189, "identity_rhs": 189}
    assert find_covering_pair(spec, threads=4)[0].tolist() == a.tolist()


def test_minimal_example_has_no_pair(gf3_5):
    spec = CodeSpec(parse_descriptor(gf3_5, "fa:a=1;quad:1@0,g^23@1,g^4@2"), "punctured")
    assert minimality_exact(spec)


def test_griesmer():
    assert griesmer_sum(5, 54, 3) == 54 + 18 + 6 + 2 + 1
    dist = WeightDistribution(81, 3, ((0, 1), (54, 240), (81, 2)))
    b = bounds_check(dist)
    assert b["griesmer_met"] and b["griesmer_optimal"]
    assert b["singleton_defect"] == 81 - 5 + 1 - 54


def test_ab_and_divisibility():
    d = WeightDistribution(7, 2, ((0, 1), (4, 7)))
    assert ab_condition(d) == "satisfies"
    assert divisibility(d) == (4, "doubly-even")
    d = WeightDistribution(10, 2, ((0, 1), (2, 1), (6, 2)))
    assert ab_condition(d) == "violates"
    assert divisibility(d) == (2, "singly-even")
    d = WeightDistribution(4, 2, ((0, 1), (1, 1), (2, 2)))
    assert ab_condition(d) == "boundary"
    assert divisibility(d) == (1, "odd")
    assert divisibility(WeightDistribution(4, 3, ((0, 1), (3, 2)))) == (3, "n/a")


def test_distribution_validation():
    with pytest.raises(CodesError):
        WeightDistribution(4, 2, ((0, 1), (2, 2)))
    with pytest.raises(DegenerateCodeError):
        WeightDistribution(4, 2, ((0, 2), (2, 2)))
    with pytest.raises(DegenerateCodeError):
        ab_condition(WeightDistribution(4, 2, ((0, 1),)))
    d = WeightDistribution(81, 3, ((0, 1), (54, 240), (81, 2)))
    assert d.enumerator() == "1 + 240z^54 + 2z^81"
    assert d.to_csv().splitlines()[1] == "0,1"


def test_codeword_errors(gf3_5):
    f = parse_descriptor(gf3_5, "ftee:t=1")
    with pytest.raises(ConstantForNonAugmentedError):
        codeword(CodeSpec(f, "full"), 1, 0, c=1)
    basis = trace_kernel_subspace(gf3_5, [1])
    spec = CodeSpec(f, "full", basis)
    outside = next(b for b in range(gf3_5.q) if not spec.in_domain(b))
    with pytest.raises(BetaOutsideDomainError):
        codeword(spec, 1, outside)
    with pytest.raises(CodesError):
        CodeSpec(f, "sideways")
    with pytest.raises(CodesError):
        CodeSpec(f, "augmented", basis)
    with pytest.raises(CodesError):
        CodeSpec(f, "full", [1, 1])


def test_subspace_code(gf3_5):
    f = parse_descriptor(gf3_5, "ftee:t=1")
    basis = trace_kernel_subspace(gf3_5, [1])
    spec = CodeSpec(f, "full", basis)
    assert len(spec.betas()) == 81
    assert weight_distribution(spec).weights == enumerated_distribution(spec).weights
    assert code_dimension(spec) == 5


def test_enumeration_dedups():
    ctx = default_field(2, 3)
    words = all_codewords(CodeSpec(from_table(ctx, [0, 0, 0, 1, 0, 1, 1, 1]), "full"))
    assert len({w.tobytes() for w in words}) == len(words)


def test_analyze_report_fields(gf3_5):
    rep = analyze(CodeSpec(parse_descriptor(gf3_5, "ftee:t=1"), "full"))
    js = rep.to_json()
    assert js["params"] == [243, 6, 153]
    assert js["self_orthogonal"] == {
        "direct": True,
        "criterion": True,
        "criterion_name": "ternary-weight-divisibility",
    }
    assert js["minimal"]["method"] == "exact"
    assert js["parity"] == "n/a"
    rep = analyze(CodeSpec(parse_descriptor(gf3_5, "ftee:t=1"), "full"), minimality="ab")
    assert rep.minimal_method == "ab"
    with pytest.raises(CodesError):
        analyze(CodeSpec(parse_descriptor(gf3_5, "ftee:t=1"), "full"), minimality="guess")


def test_binary_example_walsh_path():
    ctx = FIELD_PRESETS["GF2^12"]()
    f = parse_descriptor(ctx, "tripleprod:l1=g^65,l2=g^1365,l3=g^0")
    rep = analyze(CodeSpec(f, "punctured"))
    assert rep.minimal_method == "walsh" and rep.minimal
    assert rep.params == [4095, 13, 520]
    assert rep.so_criterion and rep.so_direct
    assert rep.parity == "doubly-even"
