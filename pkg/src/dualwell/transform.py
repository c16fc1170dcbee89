"""Change of two-mode basis to the localised pair ``a+- = (a0 +- a1)/sqrt(2)``.

``A[m, n] = <n|m>`` between the occupation state ``|n, N-n>`` of
``{a0, a1}`` and ``|m, N-m>`` of ``{a+, a-}``, where ``m`` counts quanta in
``a+`` (the right-well orbital). The matrix is real, symmetric and
orthogonal, so it is its own inverse.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .fock import FockVector, make_vector
from .modes import DomainError

DEFAULT_PEAK_WEIGHT = 0.25
DEFAULT_PEAK_SEP = 0.5


@dataclass(frozen=True)
class TransformMatrix:
    N: int
    entries: np.ndarray = field(repr=False)


def _signed_sum(N: int, m: int, n: int) -> int:
    """``sum_k (-1)^(N-n-m+k) C(m, k) C(N-m, n-k)`` over the admissible ``k``."""
    total = 0
    for k in range(max(0, n + m - N), min(n, m) + 1):
        term = math.comb(m, k) * math.comb(N - m, n - k)
        total += -term if (N - n - m + k) % 2 else term
    return total


@lru_cache(maxsize=16)
def _transform_entries(N: int) -> np.ndarray:
    fact = [math.factorial(i) for i in range(N + 1)]
    scale = 2 ** N
    A = np.empty((N + 1, N + 1))
    for m in range(N + 1):
        for n in range(m, N + 1):
            p = _signed_sum(N, m, n)
            # A_mn^2 = p^2 n!(N-n)! / (m!(N-m)! 2^N) is rational; one rounding at the end
            sq = Fraction(p * p * fact[n] * fact[N - n], fact[m] * fact[N - m] * scale)
            value = math.copysign(math.sqrt(sq), p) if p else 0.0
            A[m, n] = A[n, m] = value
    A.setflags(write=False)
    return A


def build_transform(N: int) -> TransformMatrix:
    """Matrix ``A_mn`` for ``N`` particles (cached per ``N``).

    Entries are the closed-form sum over ``k``; the alternating sum is done
    in exact integers before the single square root.
    """
    if int(N) != N or N < 1:
        raise DomainError("N must be a positive integer")
    return TransformMatrix(int(N), _transform_entries(int(N)))


def to_plusminus_basis(state, T: TransformMatrix) -> FockVector:
    """``B_m = sum_n A_mn C_n``."""
    c = np.asarray(state.coeffs if isinstance(state, FockVector) else state, dtype=float)
    if c.shape != (T.N + 1,):
        raise DomainError(f"state has {len(c) - 1} particles, transform has {T.N}")
    return make_vector(T.entries @ c, getattr(state, "energyPerParticle", math.nan))


@dataclass(frozen=True)
class CatReport:
    peakPositions: list[int]
    peakWeights: list[float]
    isCat: bool

    def as_dict(self) -> dict:
        return {"peakPositions": list(self.peakPositions),
                "peakWeights": list(self.peakWeights),
                "isCat": self.isCat}


def _smooth(p: np.ndarray) -> np.ndarray:
    # three-point binomial filter; reflecting ends keep the total weight
    padded = np.concatenate(([p[0]], p, [p[-1]]))
    return 0.25 * padded[:-2] + 0.5 * padded[1:-1] + 0.25 * padded[2:]


def detect_cat(state, peak_weight: float = DEFAULT_PEAK_WEIGHT,
               peak_sep: float = DEFAULT_PEAK_SEP, floor: float = 1e-6) -> CatReport:
    """Find the separated peaks of ``|B_m|^2`` for a state in the ``{a+, a-}`` basis.

    Local maxima of the smoothed profile above ``floor`` times its maximum are
    peaks; each peak's weight is the raw probability of its basin (between
    neighbouring minima). A cat needs exactly two peaks, each holding at least
    ``peak_weight`` and at least ``peak_sep * N`` apart.
    """
    b = np.asarray(state.coeffs if isinstance(state, FockVector) else state, dtype=float)
    prob = b * b
    N = len(b) - 1
    s = _smooth(prob)
    cut = floor * s.max()
    padded = np.concatenate(([-np.inf], s, [-np.inf]))
    # plateau-safe: rising into the point, not rising out of it
    is_max = (padded[1:-1] > padded[:-2]) & (padded[1:-1] >= padded[2:]) & (s >= cut)
    peaks = [int(i) for i in np.flatnonzero(is_max)]
    # basin j covers (edges[j], edges[j+1]]; edges sit on the minima between peaks
    edges = [-1] + [a + int(np.argmin(s[a:b + 1])) for a, b in zip(peaks[:-1], peaks[1:])] + [N]
    weights = [float(prob[lo + 1:hi + 1].sum()) for lo, hi in zip(edges[:-1], edges[1:])]
    big = [(p, w) for p, w in zip(peaks, weights) if w >= peak_weight]
    is_cat = len(big) == 2 and abs(big[1][0] - big[0][0]) >= peak_sep * N
    return CatReport(peaks, weights, bool(is_cat))
