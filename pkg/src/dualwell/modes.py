"""Single-particle modes of the box-delta double well.

The well is an infinite box on ``|x| < 1`` with a delta barrier of strength
``gamma`` at the origin. Lengths are in units of the half-width and energies
in units of hbar^2 / (2 m a^2). The two lowest states are

    psi0(x) = A (sin k|x| + (2k/gamma) cos kx),   tan k = -2k/gamma
    psi1(x) = sin(pi x)

with energies ``e0 = k**2`` and ``e1 = pi**2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from types import MappingProxyType
from typing import Mapping

import numpy as np
from scipy.optimize import brentq

from .quadrature import integrate

__all__ = [
    "DomainError",
    "ModeBasis",
    "mode_basis",
    "solve_wavenumber",
    "eval_modes",
    "chi_integral",
]

CHI_KEYS = ((4, 0), (0, 4), (2, 2))
_QUAD_TOL = 1e-13


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


def _root_function(k, gamma):
    # tan k + 2k/gamma multiplied through by gamma*cos k; continuous on [pi/2, pi]
    return gamma * math.sin(k) + 2.0 * k * math.cos(k)


def solve_wavenumber(gamma: float) -> float:
    """Ground-state wave number ``k`` in ``(pi/2, pi)`` for barrier ``gamma``.

    The root of ``tan k = -2k/gamma`` is found on the cleared form
    ``gamma sin k + 2k cos k = 0``, which changes sign exactly once on
    ``[pi/2, pi]`` (``+gamma`` at the left end, ``-2 pi`` at the right).
    """
    gamma = float(gamma)
    if not gamma > 0 or not math.isfinite(gamma):
        raise DomainError("gamma must be positive")
    k = brentq(_root_function, 0.5 * math.pi, math.pi, args=(gamma,),
               xtol=1e-16, rtol=4 * np.finfo(float).eps, maxiter=500)
    # polish to the float with the smallest cleared residual
    candidates = [k]
    for direction in (0.0, 4.0):
        x = k
        for _ in range(2):
            x = math.nextafter(x, direction)
            candidates.append(x)
    return min(candidates, key=lambda x: abs(_root_function(x, gamma)))


def _psi0_unnormalised(x, k, gamma):
    return np.sin(k * np.abs(x)) + (2.0 * k / gamma) * np.cos(k * x)


def _psi1(x):
    return np.sin(np.pi * x)


@dataclass(frozen=True)
class ModeBasis:
    """Two-mode basis constants for one barrier strength.

    Build with :func:`mode_basis`; the fields are derived and should not be
    supplied by hand.
    """

    gamma: float
    k: float
    normA: float
    e0: float
    e1: float
    chi: Mapping[tuple[int, int], float] = field(repr=False)

    @property
    def chi40(self) -> float:
        return self.chi[(4, 0)]

    @property
    def chi04(self) -> float:
        return self.chi[(0, 4)]

    @property
    def chi22(self) -> float:
        return self.chi[(2, 2)]

    def psi0(self, x):
        return self.normA * _psi0_unnormalised(x, self.k, self.gamma)

    def psi1(self, x):
        return _psi1(x)

    def as_dict(self) -> dict:
        return {
            "gamma": self.gamma,
            "k": self.k,
            "A": self.normA,
            "e0": self.e0,
            "e1": self.e1,
            "chi40": self.chi40,
            "chi04": self.chi04,
            "chi22": self.chi22,
        }


def _integrate_symmetric(f, tol=_QUAD_TOL):
    # panels split at the barrier, where psi0 has its kink
    return integrate(f, (-1.0, 0.0, 1.0), tol=tol)


@lru_cache(maxsize=64)
def mode_basis(gamma: float = 10.0) -> ModeBasis:
    """Construct (and cache) the :class:`ModeBasis` for ``gamma``."""
    k = solve_wavenumber(gamma)
    norm2 = _integrate_symmetric(lambda x: _psi0_unnormalised(x, k, gamma) ** 2)
    normA = 1.0 / math.sqrt(norm2)
    partial = ModeBasis(float(gamma), k, normA, k * k, math.pi ** 2, {})
    chi = {nm: chi_integral(partial, *nm) for nm in CHI_KEYS}
    return ModeBasis(float(gamma), k, normA, k * k, math.pi ** 2, MappingProxyType(chi))


def eval_modes(basis: ModeBasis, x):
    """Return ``(psi0(x), psi1(x))``; ``x`` may be scalar or array in [-1, 1]."""
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > 1.0):
        raise DomainError("x must lie in [-1, 1]")
    p0, p1 = basis.psi0(xa), basis.psi1(xa)
    if xa.ndim == 0:
        return float(p0), float(p1)
    return p0, p1


def chi_integral(basis: ModeBasis, n: int, m: int, tol: float = _QUAD_TOL) -> float:
    """Overlap ``int_{-1}^{1} psi0**n psi1**m dx``.

    psi0 is even and psi1 odd, so odd ``m`` gives an odd integrand and the
    integral is returned as exactly zero.
    """
    n, m = int(n), int(m)
    if n < 0 or m < 0 or n + m < 2:
        raise DomainError("need non-negative n, m with n + m >= 2")
    if m % 2:
        return 0.0
    # even integrand: twice the integral over [0, 1]
    return 2.0 * integrate(lambda x: basis.psi0(x) ** n * basis.psi1(x) ** m,
                           (0.0, 1.0), tol=0.5 * tol)
