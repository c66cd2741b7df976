import math
from fractions import Fraction

import numpy as np
import pytest

from hrtlab import (
    Configuration,
    GridSpec,
    LatticeBasis,
    PhasePoint,
    ResidualCurve,
    WrappedShiftError,
    completeness_probe,
    cyclic_membership_residual,
    density_success_rate,
    density_witness_table,
    make_gaussian,
    make_scalar,
    nu_point,
    orbit_residual,
    residual_curve,
    semigroup_witness,
    tf_shift,
    write_curve_csv,
    write_probe_csv,
)

COVOL4 = LatticeBasis(PhasePoint(2, 0), PhasePoint(0, 2))
IRRATIONAL = Configuration(COVOL4, make_scalar(0, 1, 2), make_scalar(0, 1, 3))
RATIONAL = Configuration(COVOL4, make_scalar(Fraction(1, 2)), make_scalar(Fraction(3, 4)))


# --------------------------------------------------------------------------
# Kronecker witness search


def test_witness_fixture():
    w = semigroup_witness(IRRATIONAL, PhasePoint(0.3, 0.7), 0.05, 20_000)
    assert (w.n, w.m1, w.m2) == (1193, -1687, -2066)
    assert w.error == pytest.approx(0.030011161905975702, rel=1e-9)


def test_witness_is_first_hit():
    # n = 1193 is the smallest step count that lands within eps
    assert semigroup_witness(IRRATIONAL, PhasePoint(0.3, 0.7), 0.05, 1192) is None


def test_witness_error_is_recomputable():
    target = PhasePoint(0.3, 0.7)
    w = semigroup_witness(IRRATIONAL, target, 0.05, 20_000)
    assert w.recompute_error(IRRATIONAL, target) == pytest.approx(w.error, abs=1e-12)


def test_witness_satisfies_claimed_bound():
    target = PhasePoint(0.3, 0.7)
    w = semigroup_witness(IRRATIONAL, target, 0.05, 20_000)
    nu = nu_point(IRRATIONAL)
    approx = PhasePoint(
        w.n * nu.x + w.m1 * 2.0,
        w.n * nu.omega + w.m2 * 2.0,
    )
    assert (approx - target).norm() == pytest.approx(w.error, abs=1e-12)
    assert w.error < 0.05


def test_rational_orbit_misses_generic_target():
    # the orbit lies on the refined lattice mesh; a generic target stays far
    assert semigroup_witness(RATIONAL, PhasePoint(0.3, 0.7), 1e-3, 20_000) is None


def test_witness_validates_arguments():
    with pytest.raises(ValueError):
        semigroup_witness(IRRATIONAL, PhasePoint(0, 0), -0.1, 100)
    with pytest.raises(ValueError):
        semigroup_witness(IRRATIONAL, PhasePoint(0, 0), 0.1, -5)


def test_witness_table_deterministic():
    t1 = density_witness_table(IRRATIONAL, 0.05, 5_000, num_targets=16, seed=9)
    t2 = density_witness_table(IRRATIONAL, 0.05, 5_000, num_targets=16, seed=9)
    assert len(t1) == 16
    assert [(p.x, p.omega) for p, _ in t1] == [(p.x, p.omega) for p, _ in t2]
    assert [w and (w.n, w.m1, w.m2) for _, w in t1] == [
        w and (w.n, w.m1, w.m2) for _, w in t2
    ]


def test_witness_table_targets_live_in_fundamental_domain():
    table = density_witness_table(IRRATIONAL, 0.05, 1_000, num_targets=32, seed=2)
    inv = np.linalg.inv(np.array([[2.0, 0.0], [0.0, 2.0]]))
    for target, _ in table:
        u, v = inv @ np.array([target.x, target.omega])
        assert 0.0 <= u < 1.0
        assert 0.0 <= v < 1.0


def test_density_rate_contrast():
    irr = density_success_rate(IRRATIONAL, 0.01, 20_000, num_targets=200, seed=42)
    rat = density_success_rate(RATIONAL, 0.01, 20_000, num_targets=200, seed=42)
    assert irr == pytest.approx(0.88)
    assert rat == 0.0


# --------------------------------------------------------------------------
# Truncated-orbit residuals


def test_family_member_has_negligible_residual(gaussian):
    member = tf_shift(gaussian, PhasePoint(2.0, 0.0))
    res = orbit_residual(gaussian, COVOL4, member, 4)
    assert res <= 1e-8


def test_dense_lattice_approximates_deep_hole(gaussian):
    basis = LatticeBasis(PhasePoint(0.5, 0), PhasePoint(0, 0.5))
    deep = tf_shift(gaussian, PhasePoint(0.25, 0.25))
    res = orbit_residual(gaussian, basis, deep, 6)
    assert res < 1e-6


def test_independent_nu_stays_far_from_span(gaussian):
    res = cyclic_membership_residual(gaussian, IRRATIONAL, 4)
    assert res == pytest.approx(0.9733372635012424, rel=1e-6)


def test_on_lattice_nu_is_inside_span(gaussian):
    config = Configuration(COVOL4, make_scalar(1), make_scalar(1))
    res = cyclic_membership_residual(gaussian, config, 4)
    assert res <= 1e-8


def test_orbit_residual_rejects_wrapped_family(gaussian):
    basis = LatticeBasis(PhasePoint(5, 0), PhasePoint(0, 5))
    probe = tf_shift(gaussian, PhasePoint(0.5, 0.5))
    with pytest.raises(WrappedShiftError):
        orbit_residual(gaussian, basis, probe, 4)


def test_orbit_residual_accepts_wrapped_probe(gaussian):
    # only the *family* must be clean; the probe may be any nonzero signal
    probe = tf_shift(gaussian, PhasePoint(15.9, 0.0))
    res = orbit_residual(gaussian, COVOL4, probe, 2)
    assert 0.0 <= res <= 1.0 + 1e-9


def test_completeness_probe_fixture(default_grid):
    rows = completeness_probe([0.8, 1.2], 6, default_grid)
    assert [row.alpha for row in rows] == [0.8, 1.2]
    assert rows[0].covol == pytest.approx(0.64)
    assert rows[1].covol == pytest.approx(1.44)
    assert rows[0].residual == pytest.approx(1.0255085537833157e-08, rel=1e-6)
    assert rows[1].residual == pytest.approx(0.7139912148627096, rel=1e-9)
    assert rows[1].residual >= 10 * rows[0].residual


def test_probe_residuals_decrease_with_radius(default_grid):
    small = completeness_probe([0.8], 2, default_grid)[0].residual
    large = completeness_probe([0.8], 6, default_grid)[0].residual
    assert large <= small


# --------------------------------------------------------------------------
# Residual curves


def test_residual_curve_entries(gaussian):
    basis = LatticeBasis(PhasePoint(0.5, 0), PhasePoint(0, 0.5))
    deep = tf_shift(gaussian, PhasePoint(0.25, 0.25))
    curve = residual_curve(gaussian, basis, deep, [2, 3, 4])
    assert [r for r, _, _ in curve.entries] == [2, 3, 4]
    assert [n for _, _, n in curve.entries] == [25, 49, 81]
    values = [v for _, v, _ in curve.entries]
    assert values == sorted(values, reverse=True)


def test_residual_curve_rejects_unordered_radii():
    with pytest.raises(ValueError):
        ResidualCurve(
            basis=COVOL4,
            probe_descr="probe",
            entries=((4, 0.5, 81), (2, 0.7, 25)),
        )


def test_residual_curve_rejects_non_monotone():
    with pytest.raises(ValueError):
        ResidualCurve(
            basis=COVOL4,
            probe_descr="probe",
            entries=((2, 0.5, 25), (4, 0.5 + 1e-6, 81)),
        )


def test_residual_curve_allows_slack_sized_jitter():
    curve = ResidualCurve(
        basis=COVOL4,
        probe_descr="probe",
        entries=((2, 0.5, 25), (4, 0.5 + 1e-11, 81)),
    )
    assert len(curve.entries) == 2


# --------------------------------------------------------------------------
# Delimited outputs


def test_write_probe_csv(tmp_path, default_grid):
    rows = completeness_probe([0.8, 1.2], 3, default_grid)
    path = tmp_path / "probe.csv"
    write_probe_csv(path, rows, 3)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "alpha,covol,R,residual"
    assert len(lines) == 3
    alpha, covol, radius, residual = lines[1].split(",")
    assert float(alpha) == 0.8
    assert int(radius) == 3
    assert float(residual) == rows[0].residual


def test_write_curve_csv(tmp_path, gaussian):
    basis = LatticeBasis(PhasePoint(1.2, 0), PhasePoint(0, 1.2))
    probe = tf_shift(gaussian, PhasePoint(0.6, 0.6))
    curve = residual_curve(gaussian, basis, probe, [2, 4])
    path = tmp_path / "curve.csv"
    write_curve_csv(path, curve, alpha=1.2)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "alpha,covol,R,residual"
    assert len(lines) == 3
    first = lines[1].split(",")
    assert float(first[0]) == 1.2
    assert float(first[1]) == pytest.approx(1.44)
    assert int(first[2]) == 2
