import numpy as np
import pytest

from ricci_hessian_lib.exceptions import ConfigError, DegenerateStudyError
from ricci_hessian_lib.geometry import geometry_convergence_study


def test_second_order_convergence(sheared_cigar_fields, cigar_profile):
    table = geometry_convergence_study(
        sheared_cigar_fields, cigar_profile, [33, 65]
    )
    assert table["n_lam"].tolist() == [33, 65]
    assert table["h"].iloc[1] < table["h"].iloc[0]
    assert table["loop"].max() < 1e-10
    assert np.isnan(table["order_rh_residual"].iloc[0])
    assert table["order_rh_residual"].iloc[1] > 1.5
    assert table["rh_residual"].iloc[1] < table["rh_residual"].iloc[0]
    assert "order_oracle_mismatch" not in table.columns


def test_study_with_oracle(sheared_cigar_fields, cigar_profile):
    table = geometry_convergence_study(
        sheared_cigar_fields,
        cigar_profile,
        [17, 33],
        with_curvature_oracle=True,
    )
    assert table["oracle_mismatch"].notna().all()
    assert "order_oracle_mismatch" in table.columns


def test_mismatched_levels(sheared_cigar_fields, cigar_profile):
    with pytest.raises(ConfigError):
        geometry_convergence_study(sheared_cigar_fields, cigar_profile, [33])


def test_single_level(sheared_cigar_fields, cigar_profile):
    with pytest.raises(DegenerateStudyError):
        geometry_convergence_study(
            sheared_cigar_fields[:1], cigar_profile, [33]
        )
