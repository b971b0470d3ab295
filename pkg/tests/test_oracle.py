import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quottaut.errors import OracleBoundsError
from quottaut.gradedspace import GradedDim, ext_power, sym_power
from quottaut.oracle import (
    GradedBasis,
    enumerate_ext,
    enumerate_sym,
    equivalence_sweep,
    sweep_bases,
)


def B(*elements):
    return GradedBasis(tuple(elements))


def test_enumerate_sym_examples():
    assert enumerate_sym(B(("x", 0)), 3) == GradedDim({0: 1})
    assert enumerate_sym(B(("x", 0), ("theta", 1)), 2) == GradedDim({0: 1, 1: 1})
    assert enumerate_sym(B(("theta", 1), ("eta", 1)), 2) == GradedDim({2: 1})


def test_enumerate_ext_examples():
    assert enumerate_ext(B(("x", 0), ("y", 0)), 2) == GradedDim({0: 1})
    assert enumerate_ext(B(("theta", 1)), 3) == GradedDim({3: 1})
    for basis in (B(), B(("x", 0)), B(("a", -2), ("b", 3))):
        assert enumerate_ext(basis, 0) == GradedDim({0: 1})
        assert enumerate_sym(basis, 0) == GradedDim({0: 1})


def test_labels_must_be_distinct():
    with pytest.raises(ValueError):
        B(("x", 0), ("x", 1))


def test_bounds_guard():
    big = GradedBasis.from_degrees([0] * 13)
    with pytest.raises(OracleBoundsError):
        enumerate_sym(big, 1)
    with pytest.raises(OracleBoundsError):
        enumerate_ext(B(("x", 0)), 13)
    with pytest.raises(ValueError):
        enumerate_sym(B(("x", 0)), -1)


def test_dims_bridge():
    basis = B(("a", 0), ("b", 1), ("c", 1), ("d", -2))
    assert basis.dims() == GradedDim({-2: 1, 0: 1, 1: 2})
    assert GradedBasis.from_dims(basis.dims()).dims() == basis.dims()


@given(st.lists(st.integers(-2, 3), max_size=5), st.integers(0, 4), st.randoms())
def test_permutation_and_label_invariance(degrees, k, rnd):
    shuffled = list(degrees)
    rnd.shuffle(shuffled)
    a = GradedBasis.from_degrees(degrees, prefix="u")
    b = GradedBasis.from_degrees(shuffled, prefix="v")
    assert enumerate_sym(a, k) == enumerate_sym(b, k)
    assert enumerate_ext(a, k) == enumerate_ext(b, k)


@given(st.lists(st.sampled_from([-1, 1, 3]), max_size=5), st.integers(0, 8))
def test_all_odd_sym_caps(degrees, k):
    basis = GradedBasis.from_degrees(degrees)
    if k > len(degrees):
        assert enumerate_sym(basis, k) == GradedDim()


def test_even_element_makes_sym_series_unbounded():
    basis = B(("x", 0), ("theta", 1))
    assert all(enumerate_sym(basis, k).total >= 1 for k in range(10))


def test_exhaustive_small_sweep_matches_series():
    checks, mismatches = equivalence_sweep(max_dim=3, max_k=4)
    assert checks == 2 * 5 * sum(1 for _ in sweep_bases(3))
    assert mismatches == []


def test_sweep_order_starts_with_degree_one():
    combos = list(itertools.islice(sweep_bases(2), 3))
    assert combos == [(), (0,), (1,)]


def test_mutated_series_is_caught(monkeypatch):
    from quottaut import gradedspace

    # wedge with the odd rule flipped: odd classes become exterior
    def bad_ext(a, k):
        return gradedspace._power_coefficient(a, k, geometric_parity=2)

    monkeypatch.setattr(gradedspace, "ext_power", bad_ext)
    _, mismatches = equivalence_sweep(max_dim=2, max_k=3)
    first = mismatches[0]
    assert (first.op, first.degrees, first.k) == ("ext_power", (1,), 2)
    assert sym_power(GradedDim({1: 1}), 2) == GradedDim()
    assert ext_power(GradedDim({1: 1}), 2) == GradedDim({2: 1})
