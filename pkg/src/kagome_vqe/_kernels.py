"""Compiled inner loops for two-qubit Heisenberg gates and Hamiltonian sums.

Every pair term h = XX + YY + ZZ acts on the four amplitudes sharing all bits
except k and l: |00> and |11> with eigenvalue +1, and on (|01>, |10>) as
[[-1, 2], [2, -1]].
"""

import numpy as np
from numba import njit


@njit(cache=True, inline="always")
def _base(idx, lo, hi):
    i = ((idx >> lo) << (lo + 1)) | (idx & ((1 << lo) - 1))
    return ((i >> hi) << (hi + 1)) | (i & ((1 << hi) - 1))


@njit(cache=True)
def heis_gate(psi, k, l, theta):
    lo, hi = (k, l) if k < l else (l, k)
    mk, ml = 1 << k, 1 << l
    ph = np.exp(-1j * theta)
    eph = np.exp(1j * theta)
    u = eph * np.cos(2.0 * theta)
    v = -1j * eph * np.sin(2.0 * theta)
    for idx in range(psi.shape[0] >> 2):
        i = _base(idx, lo, hi)
        psi[i] *= ph
        psi[i | mk | ml] *= ph
        a = psi[i | mk]
        b = psi[i | ml]
        psi[i | mk] = u * a + v * b
        psi[i | ml] = v * a + u * b


@njit(cache=True)
def swap_gate(psi, k, l):
    lo, hi = (k, l) if k < l else (l, k)
    mk, ml = 1 << k, 1 << l
    for idx in range(psi.shape[0] >> 2):
        i = _base(idx, lo, hi)
        a = psi[i | mk]
        psi[i | mk] = psi[i | ml]
        psi[i | ml] = a


@njit(cache=True)
def pair_inner(lam, psi, k, l):
    """<lam| h_kl |psi>."""
    lo, hi = (k, l) if k < l else (l, k)
    mk, ml = 1 << k, 1 << l
    acc = 0.0 + 0.0j
    for idx in range(psi.shape[0] >> 2):
        i = _base(idx, lo, hi)
        a = psi[i | mk]
        b = psi[i | ml]
        acc += np.conj(lam[i]) * psi[i]
        acc += np.conj(lam[i | mk | ml]) * psi[i | mk | ml]
        acc += np.conj(lam[i | mk]) * (2.0 * b - a)
        acc += np.conj(lam[i | ml]) * (2.0 * a - b)
    return acc


@njit(cache=True)
def ham_apply(psi, edges, out):
    """out = sum_e h_e psi (out is overwritten)."""
    out[:] = 0.0
    for e in range(edges.shape[0]):
        k, l = edges[e, 0], edges[e, 1]
        lo, hi = (k, l) if k < l else (l, k)
        mk, ml = 1 << k, 1 << l
        for idx in range(psi.shape[0] >> 2):
            i = _base(idx, lo, hi)
            a = psi[i | mk]
            b = psi[i | ml]
            out[i] += psi[i]
            out[i | mk | ml] += psi[i | mk | ml]
            out[i | mk] += 2.0 * b - a
            out[i | ml] += 2.0 * a - b


@njit(cache=True)
def run_circuit(psi, pairs, angles):
    for g in range(pairs.shape[0]):
        heis_gate(psi, pairs[g, 0], pairs[g, 1], angles[g])


@njit(cache=True)
def energy_and_gate_grads(psi, pairs, angles, edges, grads):
    """Energy of the evolved state and d<H>/d(angle) for every gate.

    ``psi`` is the initial state and is overwritten with the final state's
    backward-swept copy; callers pass a scratch copy. Adjoint method: one
    forward sweep, then a backward sweep carrying psi and lam = H psi.
    """
    run_circuit(psi, pairs, angles)
    lam = np.empty_like(psi)
    ham_apply(psi, edges, lam)
    energy = 0.0
    for i in range(psi.shape[0]):
        energy += (np.conj(psi[i]) * lam[i]).real
    for g in range(pairs.shape[0] - 1, -1, -1):
        k, l = pairs[g, 0], pairs[g, 1]
        grads[g] = 2.0 * pair_inner(lam, psi, k, l).imag
        heis_gate(psi, k, l, -angles[g])
        heis_gate(lam, k, l, -angles[g])
    return energy


@njit(cache=True)
def expectation(psi, edges):
    """<psi| sum_e h_e |psi> without forming H psi."""
    acc = 0.0
    for e in range(edges.shape[0]):
        acc += pair_inner(psi, psi, edges[e, 0], edges[e, 1]).real
    return acc


@njit(cache=True)
def sector_ham_apply(v, basis, rank, edges, out):
    """H v in a fixed-popcount basis; ``rank`` maps full index -> position."""
    out[:] = 0.0
    for p in range(basis.shape[0]):
        s = basis[p]
        x = v[p]
        diag = 0.0
        for e in range(edges.shape[0]):
            mk = np.int64(1) << edges[e, 0]
            ml = np.int64(1) << edges[e, 1]
            bk = (s & mk) != 0
            bl = (s & ml) != 0
            if bk == bl:
                diag += 1.0
            else:
                diag -= 1.0
                out[rank[s ^ (mk | ml)]] += 2.0 * x
        out[p] += diag * x


@njit(cache=True)
def popcount_basis(n, ones):
    """All n-bit integers with ``ones`` set bits, ascending."""
    count = 0
    for s in range(1 << n):
        c = 0
        t = s
        while t:
            t &= t - 1
            c += 1
        if c == ones:
            count += 1
    out = np.empty(count, dtype=np.int64)
    j = 0
    for s in range(1 << n):
        c = 0
        t = s
        while t:
            t &= t - 1
            c += 1
        if c == ones:
            out[j] = s
            j += 1
    return out
