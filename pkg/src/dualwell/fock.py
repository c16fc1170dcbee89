"""Two-mode Fock Hamiltonian in the occupation basis ``|n, N-n>``.

``n`` counts quanta in the symmetric mode psi0. The interaction splits into a
diagonal part H0 and a pair-tunnelling part H' that moves two particles
between the modes, so even-``n`` and odd-``n`` sectors never mix and each is
a symmetric tridiagonal matrix in steps of two.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import brentq

from .gpe import minimize_energy
from .modes import DomainError, ModeBasis

EVEN, ODD, MIXED = "even", "odd", "mixed"
DEGENERACY_TOL = 1e-8


def _check_n(N):
    if int(N) != N or N < 1:
        raise DomainError("N must be a positive integer")
    return int(N)


def diagonal_energy(basis: ModeBasis, N: int, etaN: float, n0):
    """Diagonal energy per particle ``H0/N`` of ``|n0, N-n0>``.

    ``n0`` may be an integer or an integer array.
    """
    N = _check_n(N)
    n0 = np.asarray(n0)
    if np.any(n0 < 0) or np.any(n0 > N):
        raise DomainError("n0 must lie in 0..N")
    n0 = n0.astype(float)
    n1 = N - n0
    pair = (basis.chi40 * n0 * (n0 - 1.0) + basis.chi04 * n1 * (n1 - 1.0)
            + 4.0 * basis.chi22 * n0 * n1)
    value = basis.e0 * n0 / N + basis.e1 * n1 / N + 0.5 * etaN * pair / N ** 2
    return float(value) if value.ndim == 0 else value


def _ladder_factor(N, n0):
    # <n0+2, N-n0-2| a0^dag^2 a1^2 |n0, N-n0>
    return np.sqrt((n0 + 1.0) * (n0 + 2.0) * (N - n0) * (N - n0 - 1.0))


def tunneling_element(basis: ModeBasis, N: int, etaN: float, n0):
    """Matrix element of H' between ``|n0, N-n0>`` and ``|n0+2, N-n0-2>``."""
    N = _check_n(N)
    n0 = np.asarray(n0)
    if np.any(n0 < 0) or np.any(n0 > N - 2):
        raise DomainError("n0 must lie in 0..N-2")
    value = 0.5 * etaN * basis.chi22 / N * _ladder_factor(N, n0.astype(float))
    return float(value) if value.ndim == 0 else value


@dataclass(frozen=True)
class FockVector:
    N: int
    coeffs: np.ndarray = field(repr=False)
    parity: str
    energyPerParticle: float

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        if c.shape != (self.N + 1,):
            raise DomainError("coefficient vector must have N + 1 entries")

    @property
    def n(self) -> np.ndarray:
        return np.arange(self.N + 1)


def classify_parity(coeffs, atol: float = 1e-14) -> str:
    c = np.asarray(coeffs)
    if np.all(np.abs(c[1::2]) <= atol):
        return EVEN
    if np.all(np.abs(c[0::2]) <= atol):
        return ODD
    return MIXED


def fix_gauge(coeffs) -> np.ndarray:
    """Flip the global sign so the largest-magnitude coefficient is positive."""
    c = np.asarray(coeffs, dtype=float)
    return -c if c[int(np.argmax(np.abs(c)))] < 0 else c.copy()


def make_vector(coeffs, energy: float = math.nan, parity: str | None = None) -> FockVector:
    c = np.asarray(coeffs, dtype=float)
    return FockVector(len(c) - 1, c, parity or classify_parity(c), energy)


@dataclass(frozen=True)
class FockHamiltonian:
    """Per-particle Hamiltonian ``H/N``: diagonal ``H0/N`` and pair couplings ``H'/N``."""

    N: int
    etaN: float
    diag: np.ndarray = field(repr=False)
    offdiag: np.ndarray = field(repr=False)
    basisConstants: ModeBasis = field(repr=False)

    def dense(self) -> np.ndarray:
        H = np.diag(self.diag.astype(float))
        idx = np.arange(self.N - 1)
        H[idx, idx + 2] = self.offdiag
        H[idx + 2, idx] = self.offdiag
        return H

    def block(self, parity: str) -> tuple[np.ndarray, np.ndarray]:
        """Diagonal and sub-diagonal of one parity sector (steps of two in ``n``)."""
        start = 0 if parity == EVEN else 1
        return self.diag[start::2], self.offdiag[start::2]

    def apply(self, coeffs) -> np.ndarray:
        c = np.asarray(coeffs, dtype=float)
        out = self.diag * c
        out[2:] += self.offdiag * c[:-2]
        out[:-2] += self.offdiag * c[2:]
        return out

    def expectation(self, coeffs) -> float:
        """``<c|H|c> / <c|c>`` per particle."""
        c = np.asarray(coeffs, dtype=float)
        return float(c @ self.apply(c) / (c @ c))


def build_hamiltonian(basis: ModeBasis, N: int, etaN: float) -> FockHamiltonian:
    N = _check_n(N)
    diag = diagonal_energy(basis, N, etaN, np.arange(N + 1))
    off = tunneling_element(basis, N, etaN, np.arange(N - 1)) / N if N >= 2 else np.zeros(0)
    return FockHamiltonian(N, float(etaN), np.atleast_1d(diag), np.atleast_1d(off), basis)


@dataclass(frozen=True)
class Diagonalization:
    groundPair: tuple[FockVector, FockVector]
    spectrum: np.ndarray = field(repr=False)
    gap: float

    @property
    def ground(self) -> FockVector:
        return min(self.groundPair, key=lambda s: s.energyPerParticle)

    @property
    def degenerate(self) -> bool:
        return self.gap / abs(self.ground.energyPerParticle) < DEGENERACY_TOL


def _solve_block(H: FockHamiltonian, parity: str):
    d, e = H.block(parity)
    if len(d) == 1:
        return d.copy(), np.ones((1, 1))
    return eigh_tridiagonal(d, e)


def diagonalize(basis: ModeBasis, N: int, etaN: float) -> Diagonalization:
    """Exact ground states of the even and odd sectors.

    ``groundPair`` is ``(even, odd)``; each vector is gauge-fixed so its
    largest coefficient is positive. ``gap`` is the raw even/odd splitting
    per particle.
    """
    N = _check_n(N)
    if N < 2:
        raise DomainError("N must be at least 2")
    H = build_hamiltonian(basis, N, etaN)
    pair = []
    spectra = []
    for parity, start in ((EVEN, 0), (ODD, 1)):
        w, V = _solve_block(H, parity)
        spectra.append(w)
        c = np.zeros(N + 1)
        c[start::2] = V[:, 0]
        c /= np.linalg.norm(c)
        pair.append(FockVector(N, fix_gauge(c), parity, float(w[0])))
    spectrum = np.sort(np.concatenate(spectra))
    gap = abs(pair[0].energyPerParticle - pair[1].energyPerParticle)
    return Diagonalization((pair[0], pair[1]), spectrum, gap)


def energy_curves(basis: ModeBasis, N: int, etaN_grid) -> dict[str, np.ndarray]:
    """Energy-per-particle curves over a grid of couplings.

    Columns: ``etaN``, ``E_symmetric`` (all particles in psi0),
    ``E_diagonal_dual`` (best single occupation state), ``E_exact`` (full
    diagonalisation), ``E_gpe`` (two-mode variational GPE) and
    ``gap_even_odd``.
    """
    grid = np.asarray(etaN_grid, dtype=float)
    if grid.size == 0:
        raise DomainError("etaN grid is empty")
    n0 = np.arange(N + 1)
    cols = {k: np.empty(grid.size) for k in
            ("E_symmetric", "E_diagonal_dual", "E_exact", "E_gpe", "gap_even_odd")}
    for i, eta in enumerate(grid):
        diag = diagonal_energy(basis, N, eta, n0)
        res = diagonalize(basis, N, eta)
        cols["E_symmetric"][i] = diag[N]
        cols["E_diagonal_dual"][i] = diag.min()
        cols["E_exact"][i] = res.ground.energyPerParticle
        cols["E_gpe"][i] = minimize_energy(basis, eta).energyPerParticle
        cols["gap_even_odd"][i] = res.gap
    return {"etaN": grid, **cols}


def diagonal_crossover(basis: ModeBasis, N: int) -> float:
    """Largest ``etaN < 0`` below which some ``|n0 < N>`` undercuts ``|N, 0>``.

    The difference ``H0(n0) - H0(N)`` is affine in ``etaN``, so every
    occupation has a single threshold and the crossover is the one closest
    to zero.
    """
    N = _check_n(N)
    n0 = np.arange(N)
    offset = diagonal_energy(basis, N, 0.0, n0) - diagonal_energy(basis, N, 0.0, N)
    slope = diagonal_energy(basis, N, 1.0, n0) - diagonal_energy(basis, N, 1.0, N) - offset
    ok = (slope > 0) & (offset > 0)
    if not np.any(ok):
        raise RuntimeError("no diagonal crossover for attractive coupling")
    return float(np.max(-offset[ok] / slope[ok]))


def mean_field_symmetric_energy(basis: ModeBasis, etaN: float) -> float:
    """``e0 + etaN chi40 / 2``: the symmetric line without the 1/N self-pair term."""
    return basis.e0 + 0.5 * etaN * basis.chi40


def exact_crossover(basis: ModeBasis, N: int, start: float = -0.05,
                    stop: float = -20.0, step: float = -0.01) -> float:
    """Coupling at which the exact ground energy drops below the symmetric line.

    For any nonzero coupling the exact energy sits below ``H0(N)/N`` by a
    small quantum-fluctuation shift of order 1/N, so the comparison is made
    against :func:`mean_field_symmetric_energy`, i.e. the exact curve has to
    drop by more than the finite-N self-pair correction
    ``|etaN| chi40 / (2N)``. The first sign change below ``start`` is
    refined with Brent's method.
    """
    def excess(eta):
        return diagonalize(basis, N, eta).ground.energyPerParticle - mean_field_symmetric_energy(basis, eta)

    prev_eta, prev = start, excess(start)
    if prev <= 0:
        raise RuntimeError("exact energy already below the symmetric line at the scan start")
    eta = start + step
    while eta >= stop:
        cur = excess(eta)
        if cur <= 0:
            return brentq(excess, eta, prev_eta, xtol=1e-12)
        prev_eta, prev = eta, cur
        eta += step
    raise RuntimeError("no crossover found in scan range")
