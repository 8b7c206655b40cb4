from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from loopbrauer.linalg import bareiss_echelon, in_span, joint_kernel, nullspace, rank

entries = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_cols).flatmap(lambda c: st.lists(
        st.lists(entries, min_size=c, max_size=c), min_size=1, max_size=max_rows))


def _sym(rows):
    return sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in r] for r in rows])


@given(matrices())
def test_rank_and_nullspace_match_sympy(A):
    S = _sym(A)
    assert rank(A) == S.rank()
    N = nullspace(A, len(A[0]))
    assert len(N) == len(S.nullspace())
    for v in N:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)
    assert rank(N) == len(N) if N else True


@given(st.lists(matrices(4, 4).filter(lambda m: len(m[0]) == 4), min_size=1, max_size=3))
def test_joint_kernel_matches_stacked_nullspace(mats):
    K = joint_kernel(mats, 4)
    stacked = [row for M in mats for row in M]
    assert len(K) == len(_sym(stacked).nullspace())
    for v in K:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in stacked)
        assert all(x.denominator == 1 for x in v)


def test_small_cases():
    E, piv = bareiss_echelon([[2, 4], [1, 2]])
    assert piv == [0]
    assert nullspace([[1, 1]], 2) == [[Fraction(-1), Fraction(1)]]
    assert len(nullspace([], 3)) == 3
    assert in_span([[1, 0], [0, 1]], [3, 4])
    assert not in_span([[1, 1]], [1, 0])
    assert joint_kernel([], 2) == [[1, 0], [0, 1]]
