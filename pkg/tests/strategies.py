"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from cusp_atlas.qform import DiagonalForm

nonzero_ints = lambda bound: st.integers(-bound, bound).filter(bool)  # noqa: E731

nonzero_rationals = st.builds(
    Fraction, st.integers(-60, 60).filter(bool), st.integers(1, 12)
)


def diagonal_forms(min_rank=1, max_rank=6, bound=50):
    return st.lists(nonzero_ints(bound), min_size=min_rank, max_size=max_rank).map(
        lambda cs: DiagonalForm(tuple(cs))
    )


@st.composite
def signature_41_forms(draw, bound=30):
    pos = draw(st.lists(st.integers(1, bound), min_size=4, max_size=4))
    neg = draw(st.integers(1, bound))
    return DiagonalForm(tuple(pos) + (-neg,))


@st.composite
def invertible_matrices(draw, n, bound=5):
    from cusp_atlas import linalg

    rows = draw(
        st.lists(
            st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=n, max_size=n
        ).filter(lambda m: linalg.det(m) != 0)
    )
    return linalg.as_matrix(rows)
