import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypgap import SeriesConvergenceError, hyp_series


def mp_reference(L, c, z, dps=30):
    """Independent oracle: mpmath hyp2f1 with the complex degree restored."""
    with mp.workdps(dps):
        ell = (-1 + mp.sqrt(1 - 4 * mp.mpf(L))) / 2
        v = mp.hyp2f1(-ell, ell + 1, mp.mpf(c), mp.mpf(z))
        return float(v.real if isinstance(v, mp.mpc) else v)


def test_z_zero_gives_one():
    for L in (-3.0, 0.0, 2.0, 17.5):
        assert hyp_series(L, 1.3, 0.0) == 1.0


def test_L_zero_truncates_to_one():
    # k(k+1) + L vanishes at k = 0, killing every later term
    assert hyp_series(0.0, 1.5, -0.3) == 1.0
    assert hyp_series(0.0, 0.7, 0.55) == 1.0


def test_frozen_values():
    # frozen from the 30-digit mpmath oracle above
    assert hyp_series(2.0, 1.5, -0.25) == pytest.approx(0.7226940250341640, rel=1e-14)
    assert hyp_series(10.0, 0.75, -0.4) == pytest.approx(-0.5065541106516164, rel=1e-13)
    assert hyp_series(-3.5, 1.25, 0.35) == pytest.approx(0.14691850556670572, rel=1e-13)


def test_first_partial_sum_structure():
    # t1 = z * L / c, so a two-term cutoff of (L=2, c=1.5, z=-0.25) is 2/3;
    # the full sum must sit between the alternating partial sums
    full = hyp_series(2.0, 1.5, -0.25)
    assert 2.0 / 3.0 < full < 1.0


def test_invalid_arguments():
    with pytest.raises(SeriesConvergenceError):
        hyp_series(2.0, 1.5, 1.0)
    with pytest.raises(SeriesConvergenceError):
        hyp_series(2.0, 1.5, -1.2)
    with pytest.raises(ValueError):
        hyp_series(2.0, 0.0, 0.5)
    with pytest.raises(ValueError):
        hyp_series(2.0, -3.0, 0.5)


@settings(max_examples=25, deadline=None, derandomize=True)
@given(
    st.floats(min_value=-20.0, max_value=40.0),
    st.floats(min_value=0.25, max_value=3.0),
    st.floats(min_value=-0.6, max_value=0.6),
)
def test_matches_complex_degree_oracle(L, c, z):
    assert hyp_series(L, c, z) == pytest.approx(mp_reference(L, c, z), rel=1e-11, abs=1e-13)
