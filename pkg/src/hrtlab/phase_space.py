"""Phase-space points, the standard symplectic form, and lattice plumbing.

Phase space is R^2 with coordinates (x, omega): a time shift in seconds and
a frequency shift in Hz.  The standard symplectic form is

    sigma((x, omega), (y, eta)) = x*eta - y*omega

and the covolume of the lattice L0 = Z*a + Z*b is |sigma(a, b)|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "PhasePoint",
    "LatticeBasis",
    "LatticePoint",
    "DegenerateBasisError",
    "symplectic_form",
    "covolume",
    "lattice_point_coords",
    "enumerate_lattice",
    "nu_point",
]


class DegenerateBasisError(ValueError):
    """The basis pair is linearly dependent: sigma(a, b) = 0."""


@dataclass(frozen=True)
class PhasePoint:
    """A point (x, omega) of phase space; both coordinates must be finite."""

    x: float
    omega: float

    def __post_init__(self) -> None:
        # Coerce to builtin floats so reprs and serialized forms never depend
        # on the caller's numeric type (numpy scalars repr differently).
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "omega", float(self.omega))
        if not (math.isfinite(self.x) and math.isfinite(self.omega)):
            raise ValueError(
                f"phase-space coordinates must be finite, got ({self.x}, {self.omega})"
            )

    def __add__(self, other: "PhasePoint") -> "PhasePoint":
        return PhasePoint(self.x + other.x, self.omega + other.omega)

    def __sub__(self, other: "PhasePoint") -> "PhasePoint":
        return PhasePoint(self.x - other.x, self.omega - other.omega)

    def __neg__(self) -> "PhasePoint":
        return PhasePoint(-self.x, -self.omega)

    def scale(self, c: float) -> "PhasePoint":
        return PhasePoint(c * self.x, c * self.omega)

    def norm(self) -> float:
        """Euclidean norm on phase space."""
        return math.hypot(self.x, self.omega)


@dataclass(frozen=True)
class LatticeBasis:
    """Basis pair (a, b) of L0 = Z*a + Z*b; rejects sigma(a, b) = 0 at construction."""

    a: PhasePoint
    b: PhasePoint

    def __post_init__(self) -> None:
        if symplectic_form(self.a, self.b) == 0.0:
            raise DegenerateBasisError(
                f"degenerate basis: sigma(a, b) = 0 for a={self.a}, b={self.b}"
            )


@dataclass(frozen=True)
class LatticePoint:
    """Integer coefficients (m1, m2) of the lattice point m1*a + m2*b."""

    m1: int
    m2: int


def symplectic_form(z: PhasePoint, w: PhasePoint) -> float:
    """sigma(z, w) = z.x*w.omega - w.x*z.omega; antisymmetric and bilinear."""
    return z.x * w.omega - w.x * z.omega


def covolume(basis: LatticeBasis) -> float:
    """Covolume |sigma(a, b)| of the lattice; positive for every constructible basis."""
    return abs(symplectic_form(basis.a, basis.b))


def lattice_point_coords(basis: LatticeBasis, p: LatticePoint) -> PhasePoint:
    """Phase-space coordinates of m1*a + m2*b."""
    return PhasePoint(
        p.m1 * basis.a.x + p.m2 * basis.b.x,
        p.m1 * basis.a.omega + p.m2 * basis.b.omega,
    )


def enumerate_lattice(
    basis: LatticeBasis, coeff_radius: int
) -> list[tuple[LatticePoint, PhasePoint]]:
    """All lattice points with |m1| <= R and |m2| <= R: (2R+1)^2 entries.

    The order is fixed (row-major by m1, then m2) so Gram matrices and
    least-squares systems built on the enumeration are reproducible
    bit-for-bit across runs.
    """
    if coeff_radius < 0:
        raise ValueError("coeff_radius must be >= 0")
    out: list[tuple[LatticePoint, PhasePoint]] = []
    radius = int(coeff_radius)
    for m1 in range(-radius, radius + 1):
        for m2 in range(-radius, radius + 1):
            p = LatticePoint(m1, m2)
            out.append((p, lattice_point_coords(basis, p)))
    return out


def nu_point(config) -> PhasePoint:
    """Floating-point evaluation of nu = r*a + s*b.

    `config` is any object with a `basis` and exact scalars `r`, `s`
    convertible via float() (see exact_scalars.Configuration).
    """
    r = float(config.r)
    s = float(config.s)
    a, b = config.basis.a, config.basis.b
    return PhasePoint(r * a.x + s * b.x, r * a.omega + s * b.omega)
