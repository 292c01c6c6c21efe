from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile("default", deadline=None, derandomize=True, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def rational_angles(max_denominator: int = 60):
    """Exact angles p/q in [0, 1)."""
    return st.integers(1, max_denominator).flatmap(
        lambda q: st.integers(0, q - 1).map(lambda p: Fraction(p, q)))


float_angles = st.floats(0.0, 1.0, allow_nan=False, exclude_max=True)
