from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def rationals(bound=6, max_den=4):
    return st.builds(
        Fraction, st.integers(-bound, bound), st.integers(1, max_den)
    )


def points(dim, bound=6, max_den=4):
    return st.tuples(*[rationals(bound, max_den)] * dim)


def lattice(dim, bound=3):
    return st.tuples(*[st.integers(-bound, bound).map(Fraction)] * dim)
