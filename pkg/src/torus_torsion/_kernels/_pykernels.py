"""Fallback kernels: plain Python for single tests, numpy for batches.

Same signatures and results as the compiled module.
"""

import numpy as np

_CHUNK_CELLS = 1 << 22


def divides_reduced(residues, coeffs, m, shifts, signs):
    acc = {}
    for r, c in zip(residues.tolist(), coeffs.tolist()):
        for sh, sg in zip(shifts.tolist(), signs.tolist()):
            idx = (r + sh) % m
            acc[idx] = acc.get(idx, 0) + sg * c
    return not any(acc.values())


def vanishing_mask(exps, coeffs, m, shifts, signs, points):
    P = len(points)
    out = np.empty(P, dtype=bool)
    if P == 0:
        return out
    weights = (signs[:, None] * coeffs[None, :]).ravel()  # subset-major, then term
    step = max(1, _CHUNK_CELLS // max(m, 1))
    for lo in range(0, P, step):
        pts = points[lo : lo + step]
        res = (pts @ exps.T) % m  # (chunk, nt)
        idx = (res[:, None, :] + shifts[None, :, None]) % m  # (chunk, nsub, nt)
        flat = idx.reshape(len(pts), -1) + (np.arange(len(pts)) * m)[:, None]
        buf = np.zeros(len(pts) * m, dtype=np.int64)
        np.add.at(buf, flat.ravel(), np.tile(weights, len(pts)))
        out[lo : lo + len(pts)] = ~buf.reshape(len(pts), m).any(axis=1)
    return out
