import numpy as np
from hypothesis import given, settings, strategies as st

from oplaxcat.linalg import F2, F3, PrimeField, rank_oracle


@st.composite
def matrix(draw, field):
    r = draw(st.integers(min_value=0, max_value=6))
    c = draw(st.integers(min_value=0, max_value=6))
    entries = draw(st.lists(
        st.integers(min_value=0, max_value=field.p - 1),
        min_size=r * c, max_size=r * c))
    return field.mat(entries, (r, c))


@given(matrix(F2))
@settings(max_examples=60, deadline=None)
def test_rank_matches_oracle_f2(a):
    assert F2.rank(a) == rank_oracle(F2, a)


@given(matrix(F3))
@settings(max_examples=60, deadline=None)
def test_rank_matches_oracle_f3(a):
    assert F3.rank(a) == rank_oracle(F3, a)


@given(matrix(F3))
@settings(max_examples=60, deadline=None)
def test_rank_nullity(a):
    k = F3.kernel(a)
    assert F3.rank(a) + k.shape[1] == a.shape[1]
    if k.shape[1]:
        assert not np.any(F3.matmul(a, k))
    assert F3.rank(k) == k.shape[1]


@given(matrix(F3))
@settings(max_examples=60, deadline=None)
def test_cokernel_projection(a):
    q, d = F3.cokernel(a)
    assert d == a.shape[0] - F3.rank(a)
    assert q.shape == (d, a.shape[0])
    if a.shape[1] and d:
        assert not np.any(F3.matmul(q, a))
    assert F3.rank(q) == d


def test_rref_known():
    a = F2.mat([[1, 1, 0], [1, 0, 1], [0, 1, 1]])
    red, pivots = F2.rref(a)
    assert pivots == [0, 1]
    assert np.array_equal(red, F2.mat([[1, 0, 1], [0, 1, 1], [0, 0, 0]]))


def test_solve_consistent_and_not():
    a = F3.mat([[1, 2], [2, 2]])
    b = F3.mat([[1], [1]])
    x = F3.solve(a, b)
    assert x is not None and np.array_equal(F3.matmul(a, x), b)
    sing = F3.mat([[1, 2], [2, 1], [0, 0]])
    assert F3.solve(sing, F3.mat([[0], [0], [1]])) is None


def test_section_round_trip():
    q = F2.mat([[1, 0, 1], [0, 1, 1]])
    s = F2.section(q)
    assert np.array_equal(F2.matmul(q, s), F2.eye(2))


@given(matrix(F2), matrix(F2))
@settings(max_examples=40, deadline=None)
def test_subspace_dimension_formula(a, b):
    if a.shape[0] != b.shape[0]:
        b = F2.zeros(a.shape[0], b.shape[1])
    u = F2.column_space(a)
    w = F2.column_space(b)
    inter = F2.intersect(u, w)
    total = F2.sum_of_subspaces(u, w)
    assert u.shape[1] + w.shape[1] == inter.shape[1] + total.shape[1]
    assert F2.contains(u, inter) and F2.contains(w, inter)
    assert F2.contains(total, u) and F2.contains(total, w)


def test_tensor_shapes_and_values():
    a = F2.mat([[1, 1], [0, 1]])
    b = F2.mat([[1], [1]])
    t = F2.tensor(a, b)
    assert t.shape == (4, 2)
    # tensor of identities is an identity
    assert np.array_equal(F3.tensor(F3.eye(2), F3.eye(3)), F3.eye(6))


def test_kernel_known_value():
    # over F_2: x + y + z = 0 has a 2-dim kernel
    a = F2.mat([[1, 1, 1]])
    k = F2.kernel(a)
    assert k.shape == (3, 2)
    assert not np.any(F2.matmul(a, k))


def test_prime_field_rejects_composite():
    import pytest
    with pytest.raises(ValueError):
        PrimeField(6)


def test_equal_subspaces():
    u = F2.mat([[1, 0], [0, 1], [0, 0]])
    w = F2.mat([[1, 1], [1, 0], [0, 0]])
    assert F2.equal_subspaces(u, w)
    assert not F2.equal_subspaces(u, F2.mat([[1], [0], [0]]))
