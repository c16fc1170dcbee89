"""Two-mode variational treatment of the Gross-Pitaevskii energy.

The trial orbital is ``u psi0 + v psi1`` with ``u**2 + v**2 = 1``; its energy
per particle is

    E = u^2 e0 + v^2 e1 + (etaN/2) (chi40 u^4 + chi04 v^4 + 6 chi22 u^2 v^2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .modes import DomainError, ModeBasis
from .optimize import grid_then_golden

SYMMETRIC = "symmetric"
ASYMMETRIC = "asymmetric"
BRANCH_TOL = 1e-8

# value of the bifurcation from the full spatial GPE solution, kept for reports
EXACT_SPATIAL_BIFURCATION = -2.07


@dataclass(frozen=True)
class VariationalResult:
    etaN: float
    u: float
    v: float
    energyPerParticle: float
    branch: str

    @property
    def mirror(self) -> "VariationalResult":
        """The degenerate partner with ``v -> -v`` (same energy)."""
        return VariationalResult(self.etaN, self.u, -self.v, self.energyPerParticle, self.branch)


def variational_energy(basis: ModeBasis, etaN: float, u: float, v: float | None = None) -> float:
    """Energy per particle of the trial orbital.

    ``v`` defaults to ``+sqrt(1 - u**2)``. Only ``v**2`` enters, so the two
    mirror solutions give identical floats.
    """
    if not 0.0 <= u <= 1.0:
        raise DomainError("u must lie in [0, 1]")
    u2 = u * u
    v2 = 1.0 - u2 if v is None else v * v
    quartic = basis.chi40 * u2 * u2 + basis.chi04 * v2 * v2 + 6.0 * basis.chi22 * u2 * v2
    return u2 * basis.e0 + v2 * basis.e1 + 0.5 * etaN * quartic


def _energy_of_s(basis, etaN, s):
    # same energy in terms of s = u^2; exactly quadratic in s
    t = 1.0 - s
    quartic = basis.chi40 * s * s + basis.chi04 * t * t + 6.0 * basis.chi22 * s * t
    return s * basis.e0 + t * basis.e1 + 0.5 * etaN * quartic


def _refine_s(basis, etaN, s):
    """Newton step on dE/ds; exact for the quadratic, guarded to stay in [0, 1]."""
    c40, c04, c22 = basis.chi40, basis.chi04, basis.chi22
    grad = basis.e0 - basis.e1 + etaN * (c40 * s - c04 * (1.0 - s) + 3.0 * c22 * (1.0 - 2.0 * s))
    curv = etaN * (c40 + c04 - 6.0 * c22)
    if curv <= 0:
        return s
    s_new = min(max(s - grad / curv, 0.0), 1.0)
    return s_new if _energy_of_s(basis, etaN, s_new) <= _energy_of_s(basis, etaN, s) else s


def minimize_energy(basis: ModeBasis, etaN: float) -> VariationalResult:
    """Global minimum of :func:`variational_energy` over ``u`` in [0, 1].

    A 1001-point scan picks the basin, golden-section search narrows it and
    a Newton step in ``u**2`` polishes the stationary point. ``v`` is taken
    non-negative; see :attr:`VariationalResult.mirror` for the partner.
    """
    etaN = float(etaN)
    u, _ = grid_then_golden(lambda x: variational_energy(basis, etaN, x), 0.0, 1.0)
    s = _refine_s(basis, etaN, u * u)
    u, v = math.sqrt(s), math.sqrt(1.0 - s)
    branch = SYMMETRIC if abs(v) < BRANCH_TOL else ASYMMETRIC
    return VariationalResult(etaN, u, v, variational_energy(basis, etaN, u, v), branch)


def bifurcation_closed_form(basis: ModeBasis) -> float:
    """Coupling at which dE/d(u^2) vanishes at u = 1."""
    return (basis.e1 - basis.e0) / (basis.chi40 - 3.0 * basis.chi22)


def bifurcation_by_bisection(basis: ModeBasis, tol: float = 1e-12) -> float:
    """Locate the symmetric/asymmetric boundary from the minimiser's branch label."""
    hi = 0.0
    lo = -1.0
    while minimize_energy(basis, lo).branch == SYMMETRIC:
        hi, lo = lo, 2.0 * lo
        if lo < -1e6:
            raise RuntimeError("no symmetry-breaking bifurcation found")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if minimize_energy(basis, mid).branch == SYMMETRIC:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def bifurcation_point(basis: ModeBasis, agreement: float = 1e-6) -> float:
    """Critical ``etaN`` below which the symmetric state is no longer the minimum.

    Computed by bisection on the minimiser and by the stationarity
    condition; a disagreement beyond ``agreement`` raises ``RuntimeError``.
    """
    swept = bifurcation_by_bisection(basis)
    closed = bifurcation_closed_form(basis)
    if abs(swept - closed) > agreement:
        raise RuntimeError(f"bifurcation estimates disagree: {swept} vs {closed}")
    return swept
