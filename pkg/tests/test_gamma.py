import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypgap import GammaPoleError, gamma_real


def test_known_values():
    assert gamma_real(1.0) == pytest.approx(1.0, rel=1e-14)
    assert gamma_real(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    assert gamma_real(1.5) == pytest.approx(0.5 * math.sqrt(math.pi), rel=1e-14)
    assert gamma_real(4.0) == pytest.approx(6.0, rel=1e-13)


def test_relative_accuracy_on_0_10():
    # stdlib gamma is the independent reference
    x = 0.01
    while x <= 10.0:
        assert abs(gamma_real(x) - math.gamma(x)) <= 1e-12 * abs(math.gamma(x)), x
        x += 0.0311


def test_negative_noninteger_arguments():
    for x in (-0.5, -1.5, -0.75, -2.25):
        assert gamma_real(x) == pytest.approx(math.gamma(x), rel=1e-12)


@pytest.mark.parametrize("x", [0.0, -1.0, -2.0, -7.0])
def test_poles_raise(x):
    with pytest.raises(GammaPoleError):
        gamma_real(x)


@settings(max_examples=60, deadline=None, derandomize=True)
@given(st.floats(min_value=0.05, max_value=9.0))
def test_recurrence_identity(x):
    # Gamma(x+1) = x Gamma(x)
    assert gamma_real(x + 1.0) == pytest.approx(x * gamma_real(x), rel=1e-12)
