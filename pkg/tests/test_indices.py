from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from altindex.domain import INDICATORS, ScholarRecord, WeightTable
from altindex.indices import ScholarIndices, alt_index, h_index, scholar_index_table

from helpers import dataset, pub
from oracles import brute_force_index


@pytest.mark.parametrize("cites, expected", [([], 0), ([10, 10, 10], 3), ([3, 0, 6, 1, 5], 3)])
def test_h_index_examples(cites, expected):
    assert brute_force_index(cites) == expected
    assert h_index(cites) == expected


@pytest.mark.parametrize("scores, expected", [([], 0), ([0.0, 0.0, 0.0], 0), ([4.5, 2.0, 0.5], 2)])
def test_alt_index_examples(scores, expected):
    assert brute_force_index(scores) == expected
    assert alt_index(scores) == expected


def test_fractional_score_counts_toward_lower_threshold():
    assert alt_index([Fraction(5, 2), Fraction(5, 2)]) == 2
    assert alt_index([Fraction(5, 2)] * 3) == 2


def test_scholar_index_table():
    w = WeightTable.default()
    # scores: 4.5, 2.0, 0.5, 0, 0
    pubs = [
        pub("P1", cites=3, twitter_mention=4, mendeley_reader=1),
        pub("P2", cites=0, blog_mention=2),
        pub("P3", cites=6, facebook_like=1),
        pub("P4", cites=1),
        pub("P5", cites=5),
    ]
    ds = dataset(pubs, scholars=[ScholarRecord("S1"), ScholarRecord("S2")])
    rows = {r.scholar_id: r for r in scholar_index_table(ds, w)}
    assert rows["S1"] == ScholarIndices("S1", 3, 2, 5)
    assert rows["S2"] == ScholarIndices("S2", 0, 0, 0)


values = st.lists(st.integers(0, 100), max_size=50)
scores = st.lists(st.fractions(min_value=0, max_value=100, max_denominator=4), max_size=50)


@given(values)
def test_h_index_matches_oracle(cites):
    assert h_index(cites) == brute_force_index(cites)


@given(scores)
def test_alt_index_matches_oracle(s):
    assert alt_index(s) == brute_force_index(s)


@given(values, st.integers(0, 100))
def test_appending_never_decreases(cites, extra):
    assert h_index(cites + [extra]) >= h_index(cites)


@given(values.filter(bool), st.data())
def test_raising_one_count_never_decreases(cites, data):
    i = data.draw(st.integers(0, len(cites) - 1))
    bumped = list(cites)
    bumped[i] += data.draw(st.integers(1, 20))
    assert h_index(bumped) >= h_index(cites)


@given(scores)
def test_bound(s):
    top = int(max(s)) if s else 0
    assert alt_index(s) <= min(len(s), top)


@given(st.sampled_from(INDICATORS), st.lists(st.integers(0, 60), max_size=30))
def test_single_unit_weight_alt_equals_h(kind, counts):
    w = WeightTable({k: int(k is kind) for k in INDICATORS})
    ds = dataset([pub(f"P{i}", **{kind.value: n}) for i, n in enumerate(counts)],
                 scholars=[ScholarRecord("S1")])
    (row,) = scholar_index_table(ds, w)
    assert row.alt_index == h_index(counts)
