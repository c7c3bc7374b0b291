"""
Hypothesis strategies shared by the app test modules.
"""

import math

from hypothesis import strategies as st

from extension.params import validate_extension

phases = st.floats(min_value=-math.pi / 2, max_value=math.pi / 2, exclude_min=True,
                   allow_nan=False)


def _magnitude(lo, hi):
    return st.tuples(st.floats(min_value=lo, max_value=hi), st.sampled_from([1.0, -1.0])).map(
        lambda pair: pair[0] * pair[1]
    )


@st.composite
def extension_params(draw, bound=10.0, phi=phases):
    """Random valid extension parameters, solving the constraint for one entry."""
    small = st.floats(min_value=-3.0, max_value=3.0)
    if draw(st.booleans()):
        alpha = draw(_magnitude(0.5, bound))
        beta, delta = draw(small), draw(small)
        gamma = (1.0 + beta * delta) / alpha
    else:
        beta = draw(_magnitude(0.5, bound))
        alpha, gamma = draw(small), draw(small)
        delta = (alpha * gamma - 1.0) / beta
    return validate_extension(alpha, beta, gamma, delta, draw(phi))


momenta = st.floats(min_value=-2.0, max_value=2.0).map(lambda e: 10.0 ** e)
