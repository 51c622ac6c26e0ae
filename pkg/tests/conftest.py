from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ellsurf.algebra import Polynomial

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_fractions = st.builds(
    Fraction,
    st.integers(min_value=-20, max_value=20),
    st.integers(min_value=1, max_value=6),
)


def polynomials(max_degree=6, nonzero=False):
    strat = st.lists(small_fractions, min_size=0, max_size=max_degree + 1).map(Polynomial)
    if nonzero:
        strat = strat.filter(lambda p: not p.is_zero())
    return strat


def nonzero_rationals():
    return small_fractions.filter(lambda x: x != 0)
