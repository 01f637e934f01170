"""Numerical models used as independent checks of the exact arithmetic."""

import cmath
from functools import lru_cache

import numpy as np

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)


def evaluate(x):
    """Image of a field element under √r -> principal complex square root."""
    total = 0j
    for mask, c in x.coeffs.items():
        term = complex(c)
        for i, r in enumerate(x.field.radicands):
            if mask >> i & 1:
                term *= cmath.sqrt(r)
        total += term
    return total


def _kron(mats):
    out = np.eye(1, dtype=complex)
    for m in mats:
        out = np.kron(out, m)
    return out


@lru_cache(maxsize=None)
def gammas(n):
    """n pairwise anticommuting matrices squaring to 1, faithful on Cl_n(C)."""
    m = n + (n % 2)
    k = m // 2
    out = []
    for j in range(k):
        for P in (X, Y):
            out.append(_kron([Z] * j + [P] + [I2] * (k - j - 1)))
    return tuple(out[:n])


def clifford_matrix(x):
    """Matrix of a CliffordElement with e_i -> √a_i γ_i."""
    g = gammas(x.n)
    dim = g[0].shape[0]
    out = np.zeros((dim, dim), dtype=complex)
    for s, c in x.coeffs.items():
        term = evaluate(c) * np.eye(dim, dtype=complex)
        for i in range(x.n):
            if s >> i & 1:
                term = term @ (cmath.sqrt(complex(x.form[i])) * g[i])
        out += term
    return out
