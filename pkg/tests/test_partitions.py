from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from symcirc.partitions import (
    EMPTY_DIAGRAM,
    YoungDiagram,
    branching,
    charge_dim,
    check_branching_facts,
    check_monotonicity,
    content_sum,
    count_diagrams,
    diagram,
    dimension_gap,
    enumerate_diagrams,
    locality_ratio,
    multiplicity_dim,
)


@st.composite
def diagram_strategy(draw, max_n=12):
    n = draw(st.integers(min_value=1, max_value=max_n))
    rows = []
    remaining, cap = n, n
    while remaining:
        r = draw(st.integers(min_value=1, max_value=min(cap, remaining)))
        rows.append(r)
        cap = r
        remaining -= r
    return YoungDiagram(tuple(rows))


def test_diagram_validation():
    with pytest.raises(ValueError):
        YoungDiagram((1, 2))
    with pytest.raises(ValueError):
        YoungDiagram((2, 0))
    assert diagram(3, 1).n == 4
    assert diagram(3, 1) == YoungDiagram((3, 1))


def test_transpose():
    assert diagram(3, 1).transpose() == diagram(2, 1, 1)
    assert diagram(2, 2).transpose() == diagram(2, 2)
    assert EMPTY_DIAGRAM.transpose() == EMPTY_DIAGRAM


def test_enumerate_pinned_sets():
    assert [s.rows for s in enumerate_diagrams(3, 3)] == [(3,), (2, 1), (1, 1, 1)]
    assert [s.rows for s in enumerate_diagrams(3, 2)] == [(3,), (2, 1)]
    assert enumerate_diagrams(0, 5) == [EMPTY_DIAGRAM]
    assert [s.rows for s in enumerate_diagrams(4, 4)] == [
        (4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1),
    ]


def test_enumerate_descending_lex():
    shapes = enumerate_diagrams(7, 7)
    assert shapes == sorted(shapes, key=lambda s: s.rows, reverse=True)


def test_count_pinned():
    assert count_diagrams(4, 3) == 4
    assert all(count_diagrams(k, 1) == 1 for k in range(0, 30))
    # Fig. 2 caption: 8.3e6 at d = 3 after subtracting the three k=3 sectors
    v = count_diagrams(10000, 3) - 3
    assert float(f"{v:.1e}") == 8.3e6


@given(st.integers(min_value=0, max_value=40), st.integers(min_value=1, max_value=8))
@settings(max_examples=60, deadline=None)
def test_count_matches_enumeration(n, d):
    assert count_diagrams(n, d) == len(enumerate_diagrams(n, d))


def test_count_matches_enumeration_at_fifty():
    for d in (3, 6, 50):
        assert count_diagrams(50, d) == len(enumerate_diagrams(50, d))


def test_branching_pinned():
    assert {c.rows for c in branching(diagram(3, 1)).children} == {(2, 1), (3,)}
    assert [c.rows for c in branching(diagram(2, 2)).children] == [(2, 1)]
    assert branching(diagram(1)).children == (EMPTY_DIAGRAM,)


@given(diagram_strategy())
@settings(max_examples=80, deadline=None)
def test_branching_properties(shape):
    bs = branching(shape)
    assert len(set(bs.children)) == len(bs.children)
    for child in bs.children:
        assert child.n == shape.n - 1
        assert shape.contains(child)


def test_multiplicity_dims_pinned():
    assert multiplicity_dim(diagram(2, 1)) == 2
    assert multiplicity_dim(diagram(3, 1)) == 3
    assert multiplicity_dim(diagram(2, 1, 1)) == 3
    for n in range(4, 12):
        assert multiplicity_dim(diagram(n - 2, 2)) == n * (n - 3) // 2


@given(diagram_strategy())
@settings(max_examples=80, deadline=None)
def test_multiplicity_branching_recursion(shape):
    assert multiplicity_dim(shape) == sum(
        multiplicity_dim(c) for c in branching(shape).children
    )


def test_charge_dims_pinned():
    for d in range(2, 9):
        assert charge_dim(diagram(3), d) == d * (d + 1) * (d + 2) // 6
        assert charge_dim(diagram(2, 1), d) == 2 * (d + 1) * d * (d - 1) // 6
        assert charge_dim(diagram(1, 1, 1), d) == d * (d - 1) * (d - 2) // 6
    assert charge_dim(diagram(2, 1), 3) == 8
    assert charge_dim(diagram(1, 1, 1), 2) == 0


@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("n", range(0, 9))
def test_schur_weyl_dimension_identity(n, d):
    total = sum(
        charge_dim(s, d) * multiplicity_dim(s) for s in enumerate_diagrams(n, d)
    )
    assert total == d**n


def test_content_sum():
    for n in range(1, 10):
        assert content_sum(diagram(n)) == n * (n - 1) // 2
    for n in range(3, 10):
        assert content_sum(diagram(n - 1, 1)) == (n - 1) * (n - 2) // 2 - 1
        assert content_sum(diagram(n - 1, 1)) == n * (n - 3) // 2
    assert content_sum(diagram(1, 1, 1)) == -3


def test_gap_pinned():
    assert dimension_gap(4, 3, 3) == 1
    assert dimension_gap(4, 3, 4) == 2
    assert dimension_gap(7, 7, 5) == 0


def test_gap_rejects_small_k():
    with pytest.raises(ValueError, match="semi-universality"):
        dimension_gap(5, 2, 3)
    with pytest.raises(ValueError, match="semi-universality"):
        locality_ratio(5, 2, 3)
    with pytest.raises(ValueError):
        dimension_gap(3, 4, 3)


def test_ratio():
    assert locality_ratio(10, 10, 4) == 1
    r = locality_ratio(10000, 100, 3)
    assert isinstance(r, Fraction)
    assert 0 < r < 1
    exact = Fraction(count_diagrams(100, 3) - 3, count_diagrams(10000, 3) - 3)
    assert r == exact


def test_monotonicity():
    assert check_monotonicity(3, 200).ok
    assert check_monotonicity(10, 50).ok
    rep = check_monotonicity(2, 20)
    assert rep.ok
    assert rep.plateau_at == tuple(k for k in range(2, 21) if k % 2 == 1)


def test_branching_facts():
    assert check_branching_facts(4, 4).ok
    assert check_branching_facts(5, 3).ok
    rep = check_branching_facts(3, 4)
    assert diagram(2, 2) in rep.fact2_failures
    assert not rep.ok


def test_asymptotic_count():
    # count(k,d) ~ k^(d-1) / (d! (d-1)!) with O(1/k) relative error
    for d in range(2, 6):
        for k in (1000, 10000):
            approx = k ** (d - 1) / (factorial(d) * factorial(d - 1))
            rel = abs(count_diagrams(k, d) - approx) / approx
            assert rel <= 60.0 / k, (d, k, rel)
