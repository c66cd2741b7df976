import math

import pytest

from hrtlab import (
    Configuration,
    DegenerateBasisError,
    LatticeBasis,
    LatticePoint,
    PhasePoint,
    covolume,
    enumerate_lattice,
    lattice_point_coords,
    make_scalar,
    nu_point,
    symplectic_form,
)


def test_phase_point_arithmetic():
    z = PhasePoint(1.5, -2.0)
    w = PhasePoint(0.5, 3.0)
    assert z + w == PhasePoint(2.0, 1.0)
    assert z - w == PhasePoint(1.0, -5.0)
    assert -z == PhasePoint(-1.5, 2.0)
    assert z.scale(2.0) == PhasePoint(3.0, -4.0)


def test_phase_point_norm():
    assert PhasePoint(3.0, 4.0).norm() == 5.0
    assert PhasePoint(0.0, 0.0).norm() == 0.0


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_phase_point_rejects_non_finite(bad):
    with pytest.raises(ValueError):
        PhasePoint(bad, 0.0)
    with pytest.raises(ValueError):
        PhasePoint(0.0, bad)


def test_phase_point_coerces_to_builtin_float():
    import numpy as np

    p = PhasePoint(np.float64(1.5), np.int64(2))
    assert type(p.x) is float and type(p.omega) is float
    assert repr(p) == "PhasePoint(x=1.5, omega=2.0)"


def test_symplectic_form_canonical_pair():
    assert symplectic_form(PhasePoint(1, 0), PhasePoint(0, 1)) == 1.0


def test_symplectic_form_antisymmetric():
    z = PhasePoint(1.2, -0.7)
    w = PhasePoint(-2.1, 0.4)
    assert symplectic_form(z, w) == -symplectic_form(w, z)
    assert symplectic_form(z, z) == 0.0


def test_symplectic_form_bilinear():
    z = PhasePoint(1.0, 2.0)
    w = PhasePoint(3.0, -1.0)
    v = PhasePoint(-0.5, 0.25)
    lhs = symplectic_form(z + v, w)
    rhs = symplectic_form(z, w) + symplectic_form(v, w)
    assert lhs == pytest.approx(rhs, abs=1e-15)


def test_covolume_square_lattice():
    basis = LatticeBasis(PhasePoint(2, 0), PhasePoint(0, 2))
    assert covolume(basis) == 4.0


def test_covolume_is_orientation_free():
    basis = LatticeBasis(PhasePoint(0, 2), PhasePoint(2, 0))
    assert covolume(basis) == 4.0


def test_covolume_skew_basis():
    basis = LatticeBasis(PhasePoint(1.0, 0.0), PhasePoint(0.5, 1.5))
    assert covolume(basis) == pytest.approx(1.5)


def test_degenerate_basis_rejected():
    with pytest.raises(DegenerateBasisError):
        LatticeBasis(PhasePoint(1, 2), PhasePoint(2, 4))
    with pytest.raises(DegenerateBasisError):
        LatticeBasis(PhasePoint(0, 0), PhasePoint(1, 0))


def test_lattice_point_coords():
    basis = LatticeBasis(PhasePoint(2, 0), PhasePoint(0, 2))
    p = lattice_point_coords(basis, LatticePoint(3, -2))
    assert p == PhasePoint(6.0, -4.0)


def test_lattice_point_coords_skew():
    basis = LatticeBasis(PhasePoint(1.0, 0.5), PhasePoint(-0.25, 2.0))
    p = lattice_point_coords(basis, LatticePoint(2, 3))
    assert p.x == pytest.approx(2 * 1.0 + 3 * -0.25)
    assert p.omega == pytest.approx(2 * 0.5 + 3 * 2.0)


def test_enumerate_lattice_count_and_order():
    basis = LatticeBasis(PhasePoint(1, 0), PhasePoint(0, 1))
    pts = enumerate_lattice(basis, 2)
    assert len(pts) == 25
    # row-major: m1 outer, m2 inner, both from -R to R
    expected_heads = [(-2, -2), (-2, -1), (-2, 0)]
    got_heads = [(lp.m1, lp.m2) for lp, _ in pts[:3]]
    assert got_heads == expected_heads
    assert (pts[-1][0].m1, pts[-1][0].m2) == (2, 2)


def test_enumerate_lattice_matches_coords():
    basis = LatticeBasis(PhasePoint(1.5, 0.25), PhasePoint(-0.5, 2.0))
    for lp, p in enumerate_lattice(basis, 2):
        assert p == lattice_point_coords(basis, lp)


def test_enumerate_lattice_radius_zero():
    basis = LatticeBasis(PhasePoint(1, 0), PhasePoint(0, 1))
    pts = enumerate_lattice(basis, 0)
    assert len(pts) == 1
    assert pts[0][1] == PhasePoint(0.0, 0.0)


def test_enumerate_lattice_negative_radius():
    basis = LatticeBasis(PhasePoint(1, 0), PhasePoint(0, 1))
    with pytest.raises(ValueError):
        enumerate_lattice(basis, -1)


def test_nu_point_combines_scalars():
    basis = LatticeBasis(PhasePoint(2, 0), PhasePoint(0, 2))
    config = Configuration(basis, make_scalar(0, 1, 2), make_scalar(0, 1, 3))
    nu = nu_point(config)
    assert nu.x == pytest.approx(2 * math.sqrt(2), rel=1e-15)
    assert nu.omega == pytest.approx(2 * math.sqrt(3), rel=1e-15)


def test_nu_point_rational_scalars():
    basis = LatticeBasis(PhasePoint(1, 0), PhasePoint(0, 1))
    config = Configuration(basis, make_scalar(1, 0, 0), make_scalar(1, 0, 0))
    assert nu_point(config) == PhasePoint(1.0, 1.0)
