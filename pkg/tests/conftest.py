from hypothesis import strategies as st

from quottaut.gradedspace import GradedDim


@st.composite
def graded_dims(draw, max_total: int = 6, lo: int = -3, hi: int = 3):
    degrees = draw(st.lists(st.integers(lo, hi), max_size=max_total))
    out: dict[int, int] = {}
    for d in degrees:
        out[d] = out.get(d, 0) + 1
    return GradedDim(out)
