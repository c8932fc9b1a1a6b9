"""Low-level two-qubit gate application on flat state vectors.

States are complex vectors of length 2**n viewed as rank-n tensors with
axis 0 the most significant bit.  A numba kernel is used when available
(single pass, in place); otherwise a reshape/tensordot fallback runs the
same update out of place.
"""

import numpy as np

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is optional
    _HAVE_NUMBA = False


def _apply_numpy(psi, gate, n, ax_a, ax_b):
    t = psi.reshape((2,) * n)
    t = np.moveaxis(t, (ax_a, ax_b), (0, 1))
    shape = t.shape
    out = (gate @ t.reshape(4, -1)).reshape(shape)
    out = np.moveaxis(out, (0, 1), (ax_a, ax_b))
    return np.ascontiguousarray(out).ravel()


if _HAVE_NUMBA:

    @njit(cache=True)
    def _apply_inplace(psi, g, sa, sb, size):  # pragma: no cover - jitted
        s_hi = sa if sa > sb else sb
        s_lo = sb if sa > sb else sa
        n_outer = size // (2 * s_hi)
        n_mid = s_hi // (2 * s_lo)
        for x in range(n_outer):
            bh = 2 * s_hi * x
            for y in range(n_mid):
                bm = bh + 2 * s_lo * y
                for z in range(s_lo):
                    i = bm + z
                    a0 = psi[i]
                    a1 = psi[i + sb]
                    a2 = psi[i + sa]
                    a3 = psi[i + sa + sb]
                    psi[i] = g[0, 0] * a0 + g[0, 1] * a1 + g[0, 2] * a2 + g[0, 3] * a3
                    psi[i + sb] = g[1, 0] * a0 + g[1, 1] * a1 + g[1, 2] * a2 + g[1, 3] * a3
                    psi[i + sa] = g[2, 0] * a0 + g[2, 1] * a1 + g[2, 2] * a2 + g[2, 3] * a3
                    psi[i + sa + sb] = g[3, 0] * a0 + g[3, 1] * a1 + g[3, 2] * a2 + g[3, 3] * a3


def apply_two_qubit(psi, gate, n, ax_a, ax_b, inplace=False):
    """Apply a 4x4 gate to axes (ax_a, ax_b) of a 2**n state vector.

    The gate row/column index is (bit at ax_a, bit at ax_b) in binary,
    matching the two-site gate convention where the first site is the
    more significant index.
    """
    if ax_a == ax_b:
        raise ValueError("gate axes must differ")
    psi = np.ascontiguousarray(psi, dtype=np.complex128).ravel()
    gate = np.ascontiguousarray(gate, dtype=np.complex128)
    if _HAVE_NUMBA:
        out = psi if inplace else psi.copy()
        sa = 1 << (n - 1 - ax_a)
        sb = 1 << (n - 1 - ax_b)
        _apply_inplace(out, gate, sa, sb, out.size)
        return out
    return _apply_numpy(psi, gate, n, ax_a, ax_b)
