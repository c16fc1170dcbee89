"""Independent reference computations used only by the tests."""
import itertools
import math

import warnings

import numpy as np
from scipy.integrate import IntegrationWarning, quad


def bisect_root(f, lo, hi, iters=200):
    flo = f(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def wavenumber(gamma):
    # tan k + 2k/gamma is increasing on (pi/2, pi) and changes sign once
    return bisect_root(lambda k: math.tan(k) + 2 * k / gamma, math.pi / 2 + 1e-12, math.pi - 1e-15)


def modes(gamma):
    """(psi0, psi1) built from scratch with scipy quad normalisation."""
    k = wavenumber(gamma)
    raw = lambda x: math.sin(k * abs(x)) + 2 * k / gamma * math.cos(k * x)
    norm = quad(lambda x: raw(x) ** 2, -1, 0, epsabs=1e-14)[0] + quad(lambda x: raw(x) ** 2, 0, 1, epsabs=1e-14)[0]
    A = 1 / math.sqrt(norm)
    return (lambda x: A * raw(x)), (lambda x: math.sin(math.pi * x))


def quad_sym(f):
    # vanishing odd integrands cannot meet a relative tolerance; the absolute one still holds
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        return (quad(f, -1, 0, epsabs=1e-14, epsrel=1e-14, limit=200)[0]
                + quad(f, 0, 1, epsabs=1e-14, epsrel=1e-14, limit=200)[0])


def ladder(dim):
    """Annihilation operator truncated to occupations 0..dim-1."""
    return np.diag(np.sqrt(np.arange(1, dim)), 1)


def fock_hamiltonian_from_field(gamma, N, etaN):
    """Two-mode H/N in |n0, N-n0> built from the field-operator expansion.

    H = sum_i e_i a_i^dag a_i + (eta/2) sum_ijkl chi_ijkl a_i^dag a_j^dag a_k a_l
    with eta = etaN / N and chi_ijkl the quadrature of psi_i psi_j psi_k psi_l.
    Independent of the closed-form matrix elements used by the package.
    """
    psi = modes(gamma)
    k = wavenumber(gamma)
    e = (k * k, math.pi ** 2)
    dim = N + 1
    a = ladder(dim)
    eye = np.eye(dim)
    ops = [np.kron(a, eye), np.kron(eye, a)]
    H = sum(e[i] * ops[i].T @ ops[i] for i in range(2))
    eta = etaN / N
    for i, j, kk, l in itertools.product(range(2), repeat=4):
        chi = quad_sym(lambda x: psi[i](x) * psi[j](x) * psi[kk](x) * psi[l](x))
        if abs(chi) < 1e-13:
            continue
        H = H + 0.5 * eta * chi * ops[i].T @ ops[j].T @ ops[kk] @ ops[l]
    # |n0, n1> sits at index n0 * dim + n1; keep n1 = N - n0
    idx = [n0 * dim + (N - n0) for n0 in range(N + 1)]
    return H[np.ix_(idx, idx)] / N


def plusminus_hamiltonian_from_field(gamma, N, etaN):
    """Same Hamiltonian written in the {a+, a-} occupation basis |m, N-m>."""
    psi0, psi1 = modes(gamma)
    psi = [lambda x: (psi0(x) + psi1(x)) / math.sqrt(2), lambda x: (psi0(x) - psi1(x)) / math.sqrt(2)]
    k = wavenumber(gamma)
    e0, e1 = k * k, math.pi ** 2
    dim = N + 1
    a = ladder(dim)
    eye = np.eye(dim)
    ops = [np.kron(a, eye), np.kron(eye, a)]
    # one-body part: h_pq = <psi_p|h|psi_q> with h diagonal in {psi0, psi1}
    h = 0.5 * np.array([[e0 + e1, e0 - e1], [e0 - e1, e0 + e1]])
    H = sum(h[p, q] * ops[p].T @ ops[q] for p in range(2) for q in range(2))
    eta = etaN / N
    for i, j, kk, l in itertools.product(range(2), repeat=4):
        chi = quad_sym(lambda x: psi[i](x) * psi[j](x) * psi[kk](x) * psi[l](x))
        H = H + 0.5 * eta * chi * ops[i].T @ ops[j].T @ ops[kk] @ ops[l]
    idx = [m * dim + (N - m) for m in range(N + 1)]
    return H[np.ix_(idx, idx)] / N


def transform_by_expansion(N):
    """<n|m> by expanding (a+^dag)^m (a-^dag)^(N-m)|0> into a0/a1 monomials."""
    A = np.zeros((N + 1, N + 1))
    for m in range(N + 1):
        # polynomial in x = a0^dag, y = a1^dag; poly[j] is the coefficient of x^j y^(N-j)
        poly = [1]
        for _ in range(m):          # multiply by (x + y)
            poly = [(poly[j - 1] if j else 0) + (poly[j] if j < len(poly) else 0) for j in range(len(poly) + 1)]
        for _ in range(N - m):      # multiply by (x - y)
            poly = [(poly[j - 1] if j else 0) - (poly[j] if j < len(poly) else 0) for j in range(len(poly) + 1)]
        for n in range(N + 1):
            # x^n y^(N-n)|0> = sqrt(n!(N-n)!) |n, N-n>; normalisation of |m, N-m>
            A[m, n] = poly[n] * math.sqrt(math.factorial(n) * math.factorial(N - n)
                                          / (math.factorial(m) * math.factorial(N - m) * 2 ** N))
    return A
