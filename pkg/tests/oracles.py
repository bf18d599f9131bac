"""Independent reference implementations used to cross-check the package.

Everything here is deliberately naive: dense matrices, brute-force
enumeration, textbook Gram-Schmidt.  None of it imports the modules under
test except for plain data containers.
"""

import itertools

import numpy as np
import scipy.linalg

_I2 = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def dense_gammas(n):
    """Jordan-Wigner matrices gamma_0..gamma_(n-1) with gamma^2 = 1.

    gamma_(2k) = Z..Z X I..I, gamma_(2k+1) = Z..Z Y I..I on n/2 qubits.
    """
    assert n % 2 == 0
    out = []
    for j in range(n):
        k = j // 2
        factors = [_Z] * k + [_X if j % 2 == 0 else _Y] + [_I2] * (n // 2 - k - 1)
        m = factors[0]
        for f in factors[1:]:
            m = np.kron(m, f)
        out.append(m)
    return out


def dense_string(gammas, mask):
    """Ascending-ordered product of the gammas selected by the bitmask."""
    dim = gammas[0].shape[0]
    m = np.eye(dim, dtype=complex)
    j = 0
    while mask:
        if mask & 1:
            m = m @ gammas[j]
        mask >>= 1
        j += 1
    return m


def dense_inner(a, b):
    """Normalized trace inner product Tr[A^dag B]/Tr[1]."""
    return complex(np.trace(a.conj().T @ b)) / a.shape[0]


def dense_operator(gammas, terms):
    """Dense matrix of a {mask: amplitude} operator."""
    dim = gammas[0].shape[0]
    m = np.zeros((dim, dim), dtype=complex)
    for mask, val in terms.items():
        m += val * dense_string(gammas, mask)
    return m


def dense_dissipator(gammas, mu, op):
    """Literal Lindblad dissipator with jump operators sqrt(mu) psi_k.

    L_D O = -i sum_k [ -+ L_k^dag O L_k - {L_k^dag L_k, O}/2 ], minus branch
    for fermionic (odd) O; psi = gamma/sqrt(2).
    """
    dim = op.shape[0]
    out = np.zeros((dim, dim), dtype=complex)
    for g in gammas:
        sandwich = g @ op @ g / 2.0
        anti = op / 2.0  # {psi_k^dag psi_k, O}/2 with psi^dag psi = 1/2
        out += -1j * mu * (-sandwich - anti)
    return out


def dense_dissipator_bosonic(gammas, mu, op):
    for_even = np.zeros_like(op)
    for g in gammas:
        for_even += -1j * mu * (g @ op @ g / 2.0 - op / 2.0)
    return for_even


def brute_linear_extensions(enc):
    """Count vertex labelings where every parent label precedes its children.

    Converts the nested-tuple tree to a parent array and checks all n!
    permutations; only usable for small trees.
    """
    parent = []

    def build(e, p):
        idx = len(parent)
        parent.append(p)
        for c in e:
            build(c, idx)

    build(enc, -1)
    n = len(parent)
    count = 0
    for perm in itertools.permutations(range(n)):
        if all(p == -1 or perm[p] < perm[v] for v, p in enumerate(parent)):
            count += 1
    return count


def gram_schmidt_hessenberg(mat, v0, n_max):
    """Textbook Arnoldi on a dense matrix; returns (h, basis columns)."""
    v0 = v0 / np.linalg.norm(v0)
    basis = [v0]
    h = np.zeros((n_max + 1, n_max + 1), dtype=complex)
    for k in range(1, n_max + 1):
        w = mat @ basis[k - 1]
        for j, v in enumerate(basis):
            h[j, k - 1] = np.vdot(v, w)
            w = w - h[j, k - 1] * v
        for j, v in enumerate(basis):  # second pass
            c = np.vdot(v, w)
            h[j, k - 1] += c
            w = w - c * v
        beta = np.linalg.norm(w)
        if beta < 1e-12:
            return h, np.stack(basis, axis=1)
        h[k, k - 1] = beta
        basis.append(w / beta)
    w = mat @ basis[n_max]
    for j, v in enumerate(basis):
        h[j, n_max] = np.vdot(v, w)
    return h, np.stack(basis, axis=1)


def chain_evolution_expm(a, b, t):
    """Chain amplitudes phi(t) = expm(tM) e_0 with M the chain generator."""
    m = len(a)
    mat = np.zeros((m, m), dtype=complex)
    for i in range(m):
        mat[i, i] = 1j * a[i]
    for i in range(m - 1):
        mat[i, i + 1] = -b[i]
        mat[i + 1, i] = b[i]
    e0 = np.zeros(m, dtype=complex)
    e0[0] = 1.0
    return scipy.linalg.expm(t * mat) @ e0


def direct_k_and_variance(phi):
    """Mean and connected variance of n under weights |phi_n|^2 (normalized)."""
    w = np.abs(np.asarray(phi)) ** 2
    z = w.sum()
    ns = np.arange(len(w))
    k = (ns * w).sum() / z
    var = ((ns - k) ** 2 * w).sum() / z
    return k, var
