"""Dynamical evidence: Kronecker density witnesses for the forward semigroup
L0 + N*nu, truncated-orbit projection residuals, and the covolume-1
completeness contrast.

Caveat (also stamped into report footers): truncated-orbit residuals are
numerical evidence, not proofs.  A small residual never proves membership in
the closed span of the infinite orbit, and a large one never disproves it.
Nothing here tests irreducibility of the underlying shift representation —
that step has no finite-dimensional surrogate and is deliberately left
untested rather than approximated.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .exact_scalars import Configuration
from .phase_space import (
    LatticeBasis,
    LatticePoint,
    PhasePoint,
    covolume,
    enumerate_lattice,
    lattice_point_coords,
    nu_point,
)
from .signal_kernel import (
    QUALITY_WRAPPED,
    DiscretizedSignal,
    GridSpec,
    ZeroSignalError,
    make_gaussian,
    norm,
    tf_shift,
)

__all__ = [
    "DensityWitness",
    "ResidualCurve",
    "ProbeEntry",
    "WrappedShiftError",
    "REGULARIZATION_SCALE",
    "semigroup_witness",
    "density_witness_table",
    "density_success_rate",
    "orbit_residual",
    "completeness_probe",
    "cyclic_membership_residual",
    "residual_curve",
    "write_probe_csv",
    "write_curve_csv",
]

#: Tikhonov scale: the Gram normal equations are solved with ridge
#: lam = REGULARIZATION_SCALE * trace(G), reported alongside every residual.
REGULARIZATION_SCALE = 1e-12

#: Residual curves may rise by at most this much between radii.
MONOTONE_SLACK = 1e-10

_WITNESS_BLOCK = 4096


class WrappedShiftError(RuntimeError):
    """A truncated-orbit family member wrapped the periodic window."""


@dataclass(frozen=True)
class DensityWitness:
    """A semigroup point m1*a + m2*b + n*nu within eps of the target (n >= 0)."""

    n: int
    m1: int
    m2: int
    error: float

    def recompute_error(self, config: Configuration, target: PhasePoint) -> float:
        """Re-derive the stated error from the fields; used to audit witnesses."""
        nu = nu_point(config)
        pt = lattice_point_coords(config.basis, LatticePoint(self.m1, self.m2))
        return math.hypot(
            pt.x + self.n * nu.x - target.x,
            pt.omega + self.n * nu.omega - target.omega,
        )


def semigroup_witness(
    config: Configuration, target: PhasePoint, eps: float, n_max: int
) -> Optional[DensityWitness]:
    """Smallest n in 0..n_max with dist(target - n*nu, L0) < eps, or None.

    For each n the candidate lattice point is the coefficient-wise nearest
    one: inverse-basis coordinates rounded to the nearest integer, ties to
    even.  Forward semigroup only — n is never negative.  The scan runs in
    fixed-size blocks with deterministic first-hit resolution (smallest n
    wins regardless of evaluation order).
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    a, b = config.basis.a, config.basis.b
    basis_mat = np.array([[a.x, b.x], [a.omega, b.omega]])
    basis_inv = np.linalg.inv(basis_mat)
    nu = nu_point(config)
    nu_vec = np.array([nu.x, nu.omega])
    target_vec = np.array([target.x, target.omega])
    for start in range(0, n_max + 1, _WITNESS_BLOCK):
        ns = np.arange(start, min(start + _WITNESS_BLOCK, n_max + 1))
        delta = target_vec[:, None] - nu_vec[:, None] * ns[None, :]
        coeffs = np.rint(basis_inv @ delta)  # np.rint rounds ties to even
        err_vec = delta - basis_mat @ coeffs
        err = np.hypot(err_vec[0], err_vec[1])
        hits = np.nonzero(err < eps)[0]
        if hits.size:
            k = int(hits[0])
            return DensityWitness(
                int(ns[k]), int(coeffs[0, k]), int(coeffs[1, k]), float(err[k])
            )
    return None


def density_witness_table(
    config: Configuration, eps: float, n_max: int, num_targets: int, seed: int
) -> list[tuple[PhasePoint, Optional[DensityWitness]]]:
    """Witness search over uniform targets in one fundamental domain of L0.

    Targets are u*a + v*b with u, v drawn uniformly from [0, 1) by a
    dedicated generator, so the table is deterministic per seed.
    """
    if num_targets < 1:
        raise ValueError("num_targets must be >= 1")
    rng = np.random.default_rng(seed)
    uv = rng.random((num_targets, 2))
    a, b = config.basis.a, config.basis.b
    out = []
    for u, v in uv:
        t = PhasePoint(u * a.x + v * b.x, u * a.omega + v * b.omega)
        out.append((t, semigroup_witness(config, t, eps, n_max)))
    return out


def density_success_rate(
    config: Configuration, eps: float, n_max: int, num_targets: int, seed: int
) -> float:
    """Fraction of sampled fundamental-domain targets admitting a witness."""
    table = density_witness_table(config, eps, n_max, num_targets, seed)
    return sum(w is not None for _, w in table) / len(table)


def orbit_residual(
    f: DiscretizedSignal,
    basis: LatticeBasis,
    probe: DiscretizedSignal,
    coeff_radius: int,
) -> float:
    """Relative residual of projecting `probe` onto span{tf_shift(f, l)},
    l over the coefficient box |m1|, |m2| <= coeff_radius.

    The span coefficients come from the Tikhonov-regularized Gram normal
    equations (G + lam*I) y = rhs with lam = REGULARIZATION_SCALE*trace(G);
    the residual is then measured on the explicitly assembled combination,
    never inferred from the normal-equation identity (which loses accuracy
    exactly when the residual is small).

    Raises WrappedShiftError if any family member wraps the window: the
    truncation radius is too large for the grid.
    """
    probe_norm = norm(probe)
    if probe_norm == 0.0:
        raise ZeroSignalError("probe must be nonzero")
    rows = []
    for _, point in enumerate_lattice(basis, coeff_radius):
        shifted = tf_shift(f, point)
        if shifted.quality == QUALITY_WRAPPED:
            raise WrappedShiftError(
                f"family member at ({point.x:g}, {point.omega:g}) wraps the window; "
                "shrink coeff_radius or enlarge the grid period"
            )
        rows.append(shifted.samples)
    family = np.array(rows)
    step = f.grid.step
    gram = family @ family.conj().T * step
    gram = 0.5 * (gram + gram.conj().T)
    # rhs = conj(b) with b_i = inner(probe, f_i); solving (G + lam) y = rhs
    # and conjugating y gives the least-squares coefficients under the
    # conjugate-linear-in-second-slot inner product convention.
    rhs = family @ probe.samples.conj() * step
    lam = REGULARIZATION_SCALE * float(np.trace(gram).real)
    ridge = gram + lam * np.eye(gram.shape[0])
    coeffs = np.conj(np.linalg.solve(ridge, rhs))
    residual = probe.samples - coeffs @ family
    resid_norm = math.sqrt(max(float(np.sum(np.abs(residual) ** 2)) * step, 0.0))
    return resid_norm / probe_norm


class ProbeEntry(NamedTuple):
    alpha: float
    covol: float
    residual: float


def completeness_probe(
    alpha_list: Sequence[float], coeff_radius: int, grid: GridSpec
) -> list[ProbeEntry]:
    """Deep-hole residuals across the covolume-1 boundary.

    For each alpha: square lattice alpha*Z x alpha*Z, window f = Gaussian,
    probe = tf_shift(f, (alpha/2, alpha/2)) — the deep hole, farthest point
    of the fundamental domain from the lattice, which maximizes the
    covolume contrast.  Same radius and grid for every alpha.
    """
    window = make_gaussian(grid)
    out = []
    for alpha in alpha_list:
        if not alpha > 0:
            raise ValueError("alpha must be positive")
        a = float(alpha)
        basis = LatticeBasis(PhasePoint(a, 0.0), PhasePoint(0.0, a))
        probe = tf_shift(window, PhasePoint(a / 2.0, a / 2.0))
        res = orbit_residual(window, basis, probe, coeff_radius)
        out.append(ProbeEntry(a, a * a, res))
    return out


def cyclic_membership_residual(
    f: DiscretizedSignal, config: Configuration, coeff_radius: int
) -> float:
    """orbit_residual with probe = tf_shift(f, nu).

    A residual bounded away from zero is evidence that the off-lattice
    shift stays outside the truncated lattice span; a residual near zero
    (e.g. for nu in L0, or for dense sub-critical lattices) is the
    complementary control.
    """
    probe = tf_shift(f, nu_point(config))
    return orbit_residual(f, config.basis, probe, coeff_radius)


@dataclass(frozen=True)
class ResidualCurve:
    """Residuals of one probe against nested truncated orbits.

    entries hold (coeff_radius, residual, family_size) with strictly
    increasing radii; construction validates that the residual is
    nonincreasing within MONOTONE_SLACK (a larger span can only
    approximate better).
    """

    basis: LatticeBasis
    probe_descr: str
    entries: tuple[tuple[int, float, int], ...]

    def __post_init__(self) -> None:
        cleaned = tuple(
            (int(radius), float(res), int(size)) for radius, res, size in self.entries
        )
        for (r1, v1, _), (r2, v2, _) in zip(cleaned, cleaned[1:]):
            if r2 <= r1:
                raise ValueError("curve radii must be strictly increasing")
            if v2 > v1 + MONOTONE_SLACK:
                raise ValueError(
                    f"residual curve not monotone: R={r1} gives {v1}, R={r2} gives {v2}"
                )
        object.__setattr__(self, "entries", cleaned)


def residual_curve(
    f: DiscretizedSignal,
    basis: LatticeBasis,
    probe: DiscretizedSignal,
    radii: Sequence[int],
    probe_descr: str = "probe",
) -> ResidualCurve:
    """Evaluate orbit_residual over increasing radii and package the curve."""
    entries = []
    for radius in radii:
        res = orbit_residual(f, basis, probe, radius)
        entries.append((int(radius), res, (2 * int(radius) + 1) ** 2))
    return ResidualCurve(basis, probe_descr, tuple(entries))


def write_probe_csv(path, rows: Sequence[ProbeEntry], coeff_radius: int) -> None:
    """CSV with columns alpha, covol, R, residual — one row per alpha."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["alpha", "covol", "R", "residual"])
        for row in rows:
            writer.writerow(
                [repr(row.alpha), repr(row.covol), int(coeff_radius), repr(row.residual)]
            )


def write_curve_csv(path, curve: ResidualCurve, alpha: Optional[float] = None) -> None:
    """CSV with columns alpha, covol, R, residual — one row per radius.

    alpha is only meaningful for square lattices; blank when not given.
    """
    cov = covolume(curve.basis)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["alpha", "covol", "R", "residual"])
        for radius, res, _ in curve.entries:
            writer.writerow(
                ["" if alpha is None else repr(float(alpha)), repr(cov), radius, repr(res)]
            )
