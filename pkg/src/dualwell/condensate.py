"""One-body density matrices, degenerate-pair rotation and phase-state fits."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln

from .fock import FockVector, build_hamiltonian, make_vector
from .modes import DomainError, ModeBasis
from .optimize import golden_section, grid_then_golden

ORTHOGONALITY_TOL = 1e-8


class PreconditionError(ValueError):
    """Inputs violate a documented precondition."""


def _coeffs(state) -> np.ndarray:
    return np.asarray(state.coeffs if isinstance(state, FockVector) else state, dtype=float)


# ---------------------------------------------------------------- ladder maps

def annihilate0(coeffs) -> np.ndarray:
    """Coefficients of ``a0 |state>`` in the (N-1)-particle basis."""
    c = np.asarray(coeffs, dtype=float)
    n = np.arange(len(c))
    return (np.sqrt(n) * c)[1:]


def annihilate1(coeffs) -> np.ndarray:
    """Coefficients of ``a1 |state>`` in the (N-1)-particle basis."""
    c = np.asarray(coeffs, dtype=float)
    N = len(c) - 1
    n = np.arange(N + 1)
    return (np.sqrt(N - n) * c)[:-1]


# ---------------------------------------------------------------------- OBDM

@dataclass(frozen=True)
class Obdm:
    """``rho[i, j] = <a_i^dag a_j>`` for a two-mode state."""

    m00: float
    m01: float
    m10: float
    m11: float
    eigenvalues: tuple[float, float]
    naturalOrbitalAngle: float

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.m00, self.m01], [self.m10, self.m11]])

    @property
    def trace(self) -> float:
        return self.m00 + self.m11

    @property
    def condensate_fraction(self) -> float:
        return self.eigenvalues[0] / self.trace


def obdm(state) -> Obdm:
    """One-body density matrix of a real coefficient vector ``C_n``."""
    c = _coeffs(state)
    N = len(c) - 1
    n = np.arange(N + 1, dtype=float)
    p = c * c
    m00 = float(np.sum(p * n))
    m11 = float(np.sum(p * (N - n)))
    # <a0^dag a1> = sum_n C_{n+1} C_n sqrt((n+1)(N-n)); real coefficients make it symmetric
    hop = np.sqrt((n[:-1] + 1.0) * (N - n[:-1]))
    m01 = float(np.sum(c[1:] * c[:-1] * hop))
    m10 = float(np.sum(c[:-1] * c[1:] * np.sqrt(n[1:] * (N - n[1:] + 1.0))))
    w, V = np.linalg.eigh(np.array([[m00, m01], [m10, m11]]))
    lead = V[:, 1]
    angle = math.atan2(lead[1], lead[0])
    if angle <= -math.pi / 2:
        angle += math.pi
    elif angle > math.pi / 2:
        angle -= math.pi
    return Obdm(m00, m01, m10, m11, (float(w[1]), float(w[0])), angle)


def leading_occupation(coeffs) -> float:
    return obdm(coeffs).eigenvalues[0]


# ------------------------------------------------------------------ rotation

@dataclass(frozen=True)
class Rotation:
    theta: float
    psi1: FockVector
    psi2: FockVector


def rotate_pair(a, b, theta):
    """``(a cos t + b sin t, a sin t - b cos t)``."""
    ct, st = math.cos(theta), math.sin(theta)
    return ct * a + st * b, st * a - ct * b


def optimize_rotation(phiA, phiB, step: float = 1e-3) -> Rotation:
    """Rotate a degenerate pair to maximise the leading OBDM eigenvalue of ``psi1``.

    ``theta`` is searched on ``[0, pi)``: a coarse grid, then golden-section
    refinement around the best grid point. When several grid points tie
    (the objective has equal maxima for the two mirror states) the smallest
    angle wins.
    """
    a, b = _coeffs(phiA), _coeffs(phiB)
    if a.shape != b.shape:
        raise PreconditionError("states have different particle numbers")
    if abs(a @ b) > ORTHOGONALITY_TOL:
        raise PreconditionError("input states are not orthogonal")
    energy = getattr(phiA, "energyPerParticle", math.nan)

    def occupation(theta):
        return leading_occupation(rotate_pair(a, b, theta)[0])

    grid = np.arange(0.0, math.pi, step)
    values = np.array([occupation(t) for t in grid])
    # every local grid maximum is refined before comparing; objective is pi-periodic
    local = np.flatnonzero((values >= np.roll(values, 1)) & (values >= np.roll(values, -1)))
    refined = []
    for i in local:
        t, f = golden_section(lambda t: -occupation(t), grid[i] - step, grid[i] + step, tol=1e-12)
        refined.append((t % math.pi, -f))
    top = max(f for _, f in refined)
    theta = min(t for t, f in refined if f >= top - 1e-9 * max(1.0, abs(top)))
    p1, p2 = rotate_pair(a, b, theta)
    return Rotation(theta, make_vector(p1, energy), make_vector(p2, energy))


# -------------------------------------------------------------- phase states

def _phase_coefficients(alpha: float, beta: float, N: int) -> np.ndarray:
    """``sqrt(N! / (n! (N-n)!)) alpha**n beta**(N-n)`` via log-factorials."""
    n = np.arange(N + 1)
    log_binom = 0.5 * (gammaln(N + 1) - gammaln(n + 1) - gammaln(N - n + 1))
    la = math.log(abs(alpha)) if alpha else -np.inf
    lb = math.log(abs(beta)) if beta else -np.inf
    with np.errstate(invalid="ignore"):
        # 0 * log(0) terms are exact zeros of the exponent
        exponent = log_binom + np.where(n > 0, n * la, 0.0) + np.where(N - n > 0, (N - n) * lb, 0.0)
    sign = np.where((n % 2 == 1) & (alpha < 0), -1.0, 1.0) * np.where(((N - n) % 2 == 1) & (beta < 0), -1.0, 1.0)
    return sign * np.exp(exponent)


@dataclass(frozen=True)
class PhaseState:
    """``(N!)^{-1/2} (u a0^dag + sign v a1^dag)^N |0>``."""

    u: float
    v: float
    sign: int
    N: int
    coeffs: np.ndarray = field(repr=False)

    def as_vector(self) -> FockVector:
        return make_vector(self.coeffs)


def _check_u(u):
    if not 0.0 <= u <= 1.0:
        raise DomainError("u must lie in [0, 1]")


def phase_state(u: float, sign: int | str, N: int) -> PhaseState:
    _check_u(u)
    s = {"+": 1, "-": -1}.get(sign, sign) if isinstance(sign, str) else int(sign)
    if s not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    v = math.sqrt(max(0.0, 1.0 - u * u))
    return PhaseState(float(u), v, s, int(N), _phase_coefficients(u, s * v, int(N)))


def xi3_state(u: float, N: int) -> np.ndarray:
    """Coefficients of ``(N!)^{-1/2} (v a0^dag - u a1^dag)^N |0>``, orthogonal to xi+."""
    _check_u(u)
    v = math.sqrt(max(0.0, 1.0 - u * u))
    return _phase_coefficients(v, -u, int(N))


def phase_overlap(u: float, N: int) -> float:
    """``<xi+|xi-> = (u^2 - v^2)^N``."""
    return (2.0 * u * u - 1.0) ** N


# ----------------------------------------------------------------- phase fit

@dataclass(frozen=True)
class PhaseFit:
    u: float
    residual: float
    u_obdm: float
    flagged: bool
    template: np.ndarray = field(repr=False)


def _support_template(u, N, support):
    d = phase_state(u, +1, N).coeffs
    if support is None:
        return d
    t = np.zeros_like(d)
    t[support] = d[support]
    norm = np.linalg.norm(t)
    return t / norm if norm > 0 else t


def fit_phase_state(state, lo: float = 0.5, hi: float = 1.0) -> PhaseFit:
    """Least-squares fit of ``|C_n|`` by binomial phase-state magnitudes ``D_n(u)``.

    For a pure-parity input the template is restricted to the same parity
    sector and renormalised. Also returns the estimate ``sqrt(<a0^dag a0>/N)``.
    """
    c = np.abs(_coeffs(state))
    N = len(c) - 1
    parity = state.parity if isinstance(state, FockVector) else make_vector(c).parity
    support = {"even": slice(0, None, 2), "odd": slice(1, None, 2)}.get(parity)

    def cost(u):
        return float(np.sum((c - _support_template(u, N, support)) ** 2))

    u, res = grid_then_golden(cost, lo, hi, points=501, tol=1e-13)
    probe = [cost(x) for x in np.linspace(lo, hi, 11)]
    flat = max(probe) - min(probe) < 1e-12
    at_edge = min(u - lo, hi - u) < 1e-9 and res > 1e-12
    u_obdm = math.sqrt(max(obdm(_coeffs(state)).m00, 0.0) / N)
    return PhaseFit(u, res, u_obdm, flat or at_edge, _support_template(u, N, support))


# --------------------------------------------------------- reference energies

def reference_energies(basis: ModeBasis, N: int, etaN: float, u: float) -> dict[str, float]:
    """Energies per particle of the xi+/xi- phase states and of xi3."""
    H = build_hamiltonian(basis, N, etaN)
    plus = phase_state(u, +1, N).coeffs
    minus = phase_state(u, -1, N).coeffs
    e_plus = H.expectation(plus)
    e_minus = H.expectation(minus)
    return {
        "E_xi_plus": e_plus,
        "E_xi_minus": e_minus,
        "E_xi3": H.expectation(xi3_state(u, N)),
    }
