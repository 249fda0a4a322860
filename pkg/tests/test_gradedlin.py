import pytest
import sympy
from flint import fmpq, fmpq_mat
from hypothesis import given, settings
from hypothesis import strategies as st

from soergel_ext.gradedlin import (
    CutoffError,
    FreenessFailure,
    HilbertData,
    free_generators,
    free_hilbert,
    nullspace,
    rank,
    solve,
)

mats = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)))


def to_fmpq(rows):
    return fmpq_mat(len(rows), len(rows[0]), [fmpq(x) for row in rows for x in row])


@settings(max_examples=80, deadline=None)
@given(mats)
def test_rank_matches_sympy(rows):
    assert rank(to_fmpq(rows)) == sympy.Matrix(rows).rank()


@settings(max_examples=80, deadline=None)
@given(mats)
def test_nullspace_is_a_kernel_basis(rows):
    M = to_fmpq(rows)
    basis = nullspace(M)
    assert len(basis) == M.ncols() - rank(M)
    for v in basis:
        col = fmpq_mat(len(v), 1, v)
        assert M * col == fmpq_mat(M.nrows(), 1)


@settings(max_examples=80, deadline=None)
@given(mats, st.data())
def test_solve_finds_preimages(rows, data):
    M = to_fmpq(rows)
    x = data.draw(st.lists(st.integers(-3, 3), min_size=M.ncols(), max_size=M.ncols()))
    b = M * fmpq_mat(len(x), 1, [fmpq(v) for v in x])
    sol = solve(M, [b[i, 0] for i in range(b.nrows())])
    assert sol is not None
    assert M * fmpq_mat(len(sol), 1, sol) == b


def test_solve_detects_inconsistency():
    M = to_fmpq([[1, 1], [2, 2]])
    assert solve(M, [fmpq(1), fmpq(3)]) is None


def test_free_hilbert_rank_two():
    h = free_hilbert(2, [0], 10)
    assert [h[d] for d in range(0, 8, 2)] == [1, 2, 3, 4]
    assert h[1] == 0


def test_free_generators_recovers_shifts():
    h = free_hilbert(2, [-3, -1, -1, 5], 24, top=20)
    assert free_generators(h, 2) == [-3, -1, -1, 5]


def test_free_generators_rejects_torsion():
    h = HilbertData(10, {0: 1}, 10)
    assert isinstance(free_generators(h, 2), FreenessFailure)


def test_free_generators_refuses_edge_data():
    h = free_hilbert(2, [-10], 10)
    assert isinstance(free_generators(h, 2), FreenessFailure)


def test_hilbert_window_is_enforced():
    h = free_hilbert(1, [0], 4)
    with pytest.raises(CutoffError):
        h[6]
