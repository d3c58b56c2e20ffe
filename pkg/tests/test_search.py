import pytest

from somcodes.errors import CodesError, ExhaustedBudgetError
from somcodes.search import (
    PlateauedQuadratic,
    SearchTask,
    TripleLambda,
    WPair,
    _unrank_combination,
    recheck,
    run,
    t_vector_census,
)
from itertools import combinations


def test_wpair_finds_example_partner():
    fam = WPair(8, "g^257", "g^514", w1="g^3084")
    res = run(SearchTask(fam, budget=1 << 16))
    assert "g^42148" in [c["w2"] for c in res.results]
    assert all(c["rechecked"] for c in res.results)
    assert res.results[0]["beta_domain"].startswith("V:g^3084,")


def test_quad_finds_example_coefficient():
    fam = PlateauedQuadratic(3, 5, 1, fixed={0: "1", 1: "g^23"})
    res = run(SearchTask(fam, budget=1000))
    assert not res.exhausted
    coeffs = [c["coeffs"][2] for c in res.results]
    assert "g^4" in coeffs
    hit = next(c for c in res.results if c["coeffs"][2] == "g^4")
    assert hit["epsilon"] == -1 and hit["support_size"] == 81 and not hit["balanced"]


def test_triple_search_m6():
    res = run(SearchTask(TripleLambda(6, 3), budget=2000, limit=3))
    assert len(res.results) == 3
    for c in res.results:
        assert c["t"][0] == 1 and sum(c["t"]) == 3 and c["rank"] == 6
        assert recheck(c)


@pytest.mark.parametrize(
    "fam,budget",
    [
        (TripleLambda(6, 3), 1500),
        (WPair(6, "g^65", "g^1365"), 3000),
        (PlateauedQuadratic(3, 4, 1), 2000),
    ],
)
def test_thread_count_does_not_change_output(fam, budget):
    for seed in (0, 7):
        one = run(SearchTask(fam, budget=budget, seed=seed, threads=1))
        many = run(SearchTask(fam, budget=budget, seed=seed, threads=4))
        assert one.results == many.results
        assert one.scanned == many.scanned


def test_seeded_sampling_is_reproducible():
    fam = PlateauedQuadratic(3, 4, 1)
    a = run(SearchTask(fam, budget=500, seed=3))
    b = run(SearchTask(fam, budget=500, seed=3))
    c = run(SearchTask(fam, budget=500, seed=4))
    assert a.results == b.results
    assert a.results != c.results


def test_limit_and_summary():
    res = run(SearchTask(PlateauedQuadratic(3, 4, 1), budget=6561, limit=2))
    assert len(res.results) == 2
    assert res.summary()["found"] == 2
    assert not res.exhausted


def test_empty_search_raises():
    # none of the first few candidates is 3-plateaued
    res = run(SearchTask(PlateauedQuadratic(3, 4, 3), budget=5))
    assert res.results == [] and res.exhausted and res.scanned == 5
    with pytest.raises(ExhaustedBudgetError):
        res.raise_if_empty()


def test_budget_and_family_errors():
    with pytest.raises(CodesError):
        run(SearchTask(TripleLambda(6, 3), budget=0))
    with pytest.raises(CodesError):
        run(SearchTask(object(), budget=10))
    with pytest.raises(CodesError):
        run(SearchTask(TripleLambda(6, 5), budget=10))
    with pytest.raises(CodesError):
        run(SearchTask(TripleLambda(6, 3, l1="g^1"), budget=10))
    with pytest.raises(CodesError):
        run(SearchTask(PlateauedQuadratic(2, 4, 0), budget=10))
    with pytest.raises(CodesError):
        run(SearchTask(PlateauedQuadratic(3, 4, 1, fixed={7: "1"}), budget=10))


def test_inverse_identity_rejected():
    with pytest.raises(CodesError):
        run(SearchTask(WPair(4, "g^0", "g^85"), budget=10))


@pytest.mark.parametrize("m", [4, 5])
def test_census_leading_component(m):
    census = t_vector_census(m)
    assert census
    for t in census:
        assert t[0] == 1 and sum(t) >= 3


def test_unrank_combination():
    assert [_unrank_combination(r, 6, 3) for r in range(20)] == list(combinations(range(6), 3))


@pytest.mark.parametrize("m", [4, 5])
def test_no_admissible_w_below_m6(m):
    res = run(SearchTask(WPair(m, "g^0", f"g^{2**m + 1}"), budget=100))
    assert res.space == 0 and res.results == []
