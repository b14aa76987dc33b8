import math

import numpy as np
import pytest

from ricci_hessian_lib import StateZ
from ricci_hessian_lib.exceptions import ResampleError
from ricci_hessian_lib.profiles import ProfileParams
from ricci_hessian_lib.series import sample_grid, taylor_extend
from ricci_hessian_lib.geometry import (
    christoffel_symbols,
    curvature_oracle_full,
    reconstruct_coords,
    resample_chart,
    ricci_shortcut,
    verify_ricci_hessian,
)


def _resampled(field, n):
    chart = reconstruct_coords(field)
    return chart.with_resampled(resample_chart(chart, n))


@pytest.fixture
def flat_chart(flat_field):
    return _resampled(flat_field, 9)


@pytest.fixture
def cigar_chart(make_transnormal_field, cigar_profile):
    field = make_transnormal_field(
        cigar_profile, 33, 33, tau_range=(0.0, 0.2)
    )
    return _resampled(field, 65)


def test_flat_chart_is_a_soliton(flat_chart, cigar_profile):
    report = verify_ricci_hessian(
        flat_chart, cigar_profile, with_curvature_oracle=True
    )
    assert report.rh_residual_max < 1e-10
    assert report.sigma_check_max < 1e-10
    assert report.theta.mean == pytest.approx(0.0, abs=1e-10)
    assert report.kappa.mean == pytest.approx(-1.0)
    assert report.kappa.max_deviation < 1e-10
    assert report.mixed_partial_max < 1e-10
    assert report.oracle_mismatch < 1e-10
    assert report.zero_fraction == 1.0
    assert report.min_q == 1.0
    assert report.min_pi == 1.0
    assert report.all_finite


def test_transnormal_chart(cigar_chart, cigar_profile):
    report = verify_ricci_hessian(cigar_chart, cigar_profile)
    assert report.rh_residual_max < 1e-2
    assert report.sigma_check_max < 1e-2
    assert report.theta.mean == pytest.approx(0.0, abs=1e-2)
    assert report.kappa.mean == pytest.approx(-1.0, abs=1e-2)
    assert report.mixed_partial_max < 1e-2
    assert report.smoke_residual < 1e-2
    assert report.zero_fraction == 0.0
    assert report.min_abs_q_lam < 1e-10
    assert report.oracle_mismatch is None


def test_curvature_oracle_matches_shortcut(cigar_chart):
    ricci = curvature_oracle_full(cigar_chart)
    shortcut = ricci_shortcut(cigar_chart)
    assert ricci.shape == (65, 65, 4, 4)
    interior = (slice(2, -2), slice(2, -2))
    scale = np.max(np.abs(shortcut[interior]))
    assert scale > 1.0
    np.testing.assert_allclose(
        ricci[interior], shortcut[interior], atol=1e-2 * scale
    )


def test_christoffel_symbols_vanish_on_flat_chart(flat_chart):
    gamma = christoffel_symbols(flat_chart.resampled)
    assert gamma.shape == (9, 9, 4, 4, 4)
    np.testing.assert_allclose(gamma, 0.0, atol=1e-10)


def test_report_outputs(flat_chart, cigar_profile):
    report = verify_ricci_hessian(flat_chart, cigar_profile)
    summary = report.to_dict()
    assert summary["oracle_mismatch"] is None
    assert summary["positivity"] == {"min_q": 1.0, "min_pi": 1.0}
    assert set(summary["closedness"]) == {"x", "u", "phi"}
    frames = report.to_frames()
    assert set(frames) == {
        "R1",
        "R2",
        "R3",
        "sigma",
        "s",
        "Y",
        "theta",
        "kappa",
    }
    assert len(frames["R1"]) == 81


def test_verification_needs_resampling(flat_field, cigar_profile):
    with pytest.raises(ResampleError):
        verify_ricci_hessian(reconstruct_coords(flat_field), cigar_profile)
    with pytest.raises(ResampleError):
        ricci_shortcut(reconstruct_coords(flat_field))


@pytest.mark.parametrize(
    "profile, tau_star",
    [
        (ProfileParams("tanh", theta=4.0, kappa=-1.0), 0.0),
        (ProfileParams("cot", theta=-1.0, kappa=0.3), math.pi / 2),
    ],
)
def test_kappa_across_a_zero_of_alpha(profile, tau_star):
    expansion = taylor_extend(
        StateZ(1.5, 0.2, 1.0, 0.0), profile, tau_star, 0.3, 0.2, 12
    )
    field = sample_grid(
        expansion,
        np.linspace(tau_star - 0.1, tau_star + 0.1, 33),
        np.linspace(-0.1, 0.1, 33),
    )
    report = verify_ricci_hessian(_resampled(field, 33), profile)
    assert report.all_finite
    assert np.all(np.isfinite(report.kappa_field))
    assert report.kappa.mean == pytest.approx(profile.kappa, abs=1e-2)
    assert report.kappa.relative_deviation < 1e-2
