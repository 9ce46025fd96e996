"""Pure numpy implementations of the hot loops.

Semantics match ``_kernels.pyx`` exactly; the compiled module is preferred
when it imports.
"""

from __future__ import annotations

import numpy as np


def _stencil(x, lo, h, n, order):
    """Start indices and Lagrange weights of the nearest-centred stencil."""
    t = (x - lo) / h
    inside = (t >= -1e-9) & (t <= n - 1 + 1e-9)
    start = np.clip(np.rint(t).astype(np.int64) - order // 2, 0, n - 1 - order)
    tau = t - start
    w = np.empty(x.shape + (order + 1,))
    for k in range(order + 1):
        acc = np.ones_like(tau)
        for m in range(order + 1):
            if m != k:
                acc *= (tau - m) / (k - m)
        w[..., k] = acc
    w[~inside] = 0.0
    start[~inside] = 0
    return start, w


def dilate_rows(values, rows, factors, lo, h, order):
    """``out[i, j] = interp(values[i], factors[i] * beta_j)`` for ``i`` in ``rows``.

    Rows not listed stay zero.
    """
    values = np.ascontiguousarray(values, dtype=complex)
    nv, nb = values.shape
    out = np.zeros((nv, nb), dtype=complex)
    if len(rows) == 0:
        return out
    rows = np.asarray(rows, dtype=np.int64)
    beta = lo + np.arange(nb) * h
    x = np.asarray(factors, dtype=float)[:, None] * beta[None, :]
    start, w = _stencil(x, lo, h, nb, order)
    idx = start[..., None] + np.arange(order + 1)
    gathered = np.take_along_axis(values[rows][:, None, :], idx.reshape(len(rows), 1, -1), axis=2)
    gathered = gathered.reshape(len(rows), nb, order + 1)
    out[rows] = np.einsum("ijs,ijs->ij", gathered, w)
    return out


def twisted_conv(a, b, a_rows, b_rows, v, scale, lo, h, order):
    """Sum over nodes u_i of ``a[i, j] * b~(w_k - u_i, exp(-scale*u_i) beta_j)``.

    The v-grid is symmetric with odd length, so ``w_k - u_i`` is again a
    node and only the beta argument needs interpolation.  The caller applies
    the quadrature weight and the ``(2 pi)^-1/2`` normalisation.
    """
    a = np.ascontiguousarray(a, dtype=complex)
    b = np.ascontiguousarray(b, dtype=complex)
    nv, nb = a.shape
    c0 = (nv - 1) // 2
    out = np.zeros((nv, nb), dtype=complex)
    b_rows = np.asarray(b_rows, dtype=np.int64)
    if len(b_rows) == 0:
        return out
    m_lo, m_hi = int(b_rows.min()), int(b_rows.max())
    bsub = b[m_lo : m_hi + 1]
    beta = lo + np.arange(nb) * h
    for i in a_rows:
        i = int(i)
        start, w = _stencil(np.exp(-scale * v[i]) * beta, lo, h, nb, order)
        g = np.zeros((bsub.shape[0], nb), dtype=complex)
        for s in range(order + 1):
            g += bsub[:, start + s] * w[None, :, s]
        k_lo = i + m_lo - c0
        k_hi = i + m_hi - c0
        src_lo = max(0, -k_lo)
        src_hi = (m_hi - m_lo) - max(0, k_hi - (nv - 1))
        if src_hi < src_lo:
            continue
        out[k_lo + src_lo : k_lo + src_hi + 1] += a[i][None, :] * g[src_lo : src_hi + 1]
    return out


def twisted_phase_sum(F, G, a, b, ca, cb):
    """Discrete twisted convolution on a 2-D lattice of frequencies.

    ``out[p, q] = sum_{r, s} F[r, s] * G[p - r + ca, q - s + cb]
    * exp(i (a_p b_s - a_r b_q) / 2)`` where ``(ca, cb)`` index the zero
    frequency and G is taken as zero when its index leaves the lattice.
    """
    F = np.ascontiguousarray(F, dtype=complex)
    G = np.ascontiguousarray(G, dtype=complex)
    na, nb = F.shape
    out = np.zeros((na, nb), dtype=complex)
    nzr = np.nonzero(np.any(F != 0, axis=1))[0]
    ea = np.exp(0.5j * np.outer(a, b))  # ea[p, s] = e^{i a_p b_s / 2}
    for r in nzr:
        for s in np.nonzero(F[r])[0]:
            f = F[r, s]
            p_lo = max(0, r - ca)
            p_hi = min(na - 1, r - ca + na - 1)
            q_lo = max(0, s - cb)
            q_hi = min(nb - 1, s - cb + nb - 1)
            gblk = G[p_lo - r + ca : p_hi - r + ca + 1, q_lo - s + cb : q_hi - s + cb + 1]
            phase = ea[p_lo : p_hi + 1, s][:, None] * np.conj(ea[r, q_lo : q_hi + 1])[None, :]
            out[p_lo : p_hi + 1, q_lo : q_hi + 1] += f * gblk * phase
    return out
