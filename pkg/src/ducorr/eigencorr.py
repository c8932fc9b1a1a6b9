"""Exact diagonalization of U_F and brute-force quartet eigenstate
correlations, in time and frequency domain.

The quartet correlation F^XY(t) sums e^{-it theta_abgl} V^X (V^Y)* over
all eigenstate four-tuples.  ``f_xy_quartet`` evaluates the sum exactly
by factorizing over the four eigenstate indices; ``f_xy_quartet_direct``
materializes every V coefficient first and is kept as the slow debug
route for tiny chains.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .circuits import FloquetOperator, haar_unitary
from .errors import BudgetError, ConfigurationError, DiagnosticError
from .subsystems import SubsystemSpec

#: default cap on the chain size for quartet sums (2^{4L} terms implied)
QUARTET_BUDGET_SITES = 6


@dataclass(frozen=True)
class EigenData:
    """Eigenphases (ascending, in (-pi, pi]) and eigenvector columns of U_F,
    with U_F |a> = e^{-i theta_a} |a>."""

    L: int
    phases: np.ndarray
    vectors: np.ndarray


def diagonalize(op, residual_tol=1e-8):
    """Full spectral decomposition of the (normal) Floquet operator.

    A complex Schur decomposition supplies orthonormal eigenvectors even
    across numerically degenerate eigenphases.  Raises DiagnosticError
    when the reconstruction residual exceeds ``residual_tol``.
    """
    u = op.matrix if isinstance(op, FloquetOperator) else np.asarray(op)
    L = op.L if isinstance(op, FloquetOperator) else int(round(math.log2(u.shape[0])))
    tmat, z = scipy.linalg.schur(u, output="complex")
    w = np.diagonal(tmat).copy()
    theta = -np.angle(w)
    theta[theta <= -np.pi] += 2 * np.pi
    order = np.argsort(theta, kind="stable")
    theta = theta[order]
    z = z[:, order]
    w = w[order]
    defect = float(np.max(np.abs(u @ z - z * w[None, :])))
    if defect > residual_tol:
        raise DiagnosticError(f"eigendecomposition residual {defect:.3e} > {residual_tol:.1e}")
    return EigenData(L=L, phases=theta, vectors=z)


def reconstruction_defect(op, eig):
    """Max-norm of sum_a e^{-i theta_a}|a><a| - U_F."""
    w = np.exp(-1j * eig.phases)
    rebuilt = (eig.vectors * w[None, :]) @ eig.vectors.conj().T
    u = op.matrix if isinstance(op, FloquetOperator) else np.asarray(op)
    return float(np.max(np.abs(rebuilt - u)))


def rerandomize_degenerate_blocks(eig, rng, tol=1e-10):
    """Mix eigenvectors inside degenerate phase blocks by random unitaries.

    Any orthonormal basis choice within a degenerate block is gauge; the
    quartet correlations must be invariant under this operation.
    """
    vectors = eig.vectors.copy()
    phases = eig.phases
    start = 0
    for stop in range(1, len(phases) + 1):
        if stop == len(phases) or phases[stop] - phases[start] > tol:
            if stop - start > 1:
                q = haar_unitary(stop - start, rng)
                vectors[:, start:stop] = vectors[:, start:stop] @ q
            start = stop
    return EigenData(L=eig.L, phases=phases, vectors=vectors)


def _reshaped_vectors(eig, spec):
    """All eigenvectors as (d_X, d_Xbar, n_eig) with the spec sites in front."""
    L = eig.L
    dim = 2 ** L
    axes = [s - 1 for s in spec.sites]
    arr = eig.vectors.reshape((2,) * L + (dim,))
    arr = np.moveaxis(arr, axes, range(len(axes)))
    return np.ascontiguousarray(arr).reshape(2 ** len(axes), -1, dim)


def _reshape_one(eig, spec, idx):
    L = eig.L
    axes = [s - 1 for s in spec.sites]
    v = eig.vectors[:, idx].reshape((2,) * L)
    v = np.moveaxis(v, axes, range(len(axes)))
    return np.ascontiguousarray(v).reshape(2 ** len(axes), -1)


def quartet_v(eig, alpha, beta, gamma, lam, x):
    """Subsystem overlap V^X of one eigenstate quartet.

    Equals the quadruple sum over (i_X, i_Xbar, j_X, j_Xbar) of
    a b* c* d amplitude products; evaluated as Tr[A B^dag D C^dag] on the
    reshaped eigenvectors.
    """
    n = 2 ** eig.L
    for idx in (alpha, beta, gamma, lam):
        if not 0 <= idx < n:
            raise IndexError(f"eigenstate index {idx} outside 0..{n - 1}")
    a = _reshape_one(eig, x, alpha)
    b = _reshape_one(eig, x, beta)
    c = _reshape_one(eig, x, gamma)
    d = _reshape_one(eig, x, lam)
    return complex(np.trace(a @ b.conj().T @ d @ c.conj().T))


def quartet_phase(eig, alpha, beta, gamma, lam):
    """theta_a - theta_b - theta_g + theta_l (unreduced)."""
    th = eig.phases
    return float(th[alpha] - th[beta] - th[gamma] + th[lam])


def _check_budget(L, budget_sites):
    if L > budget_sites:
        raise BudgetError(
            f"quartet sum over 2^(4L) = 2^{4 * L} four-tuples at L={L} exceeds the "
            f"budget of L <= {budget_sites}"
        )


def f_xy_quartet(eig, x, y, t, budget_sites=QUARTET_BUDGET_SITES):
    """Full quartet sum F^XY(t) for X on the input layer, Y on the output
    layer; exact, factorized over the four eigenstate indices.

    With the amplitude layout used here (row = output configuration) the
    output-layer subsystem occupies the unconjugated V slot, so the sum
    evaluated is sum e^{-i t th_abgl} V^Y (V^X)*.  It collapses to
    sum |Z|^2 over Z[i,k,j,l] = sum_a phase_a B_a[i,:] conj(A_a[k,:])
    paired over complement indices, manifestly real and non-negative,
    and equals the operator-state purity route exactly:
    F^XY = q^{2L} Tr[rho_{X u Y}^2].
    """
    _check_budget(eig.L, budget_sites)
    phase = np.exp(-1j * t * eig.phases)
    vx = _reshaped_vectors(eig, x)
    vy = _reshaped_vectors(eig, y)
    w = np.einsum("xan,kcn,n->xakc", vy, vx.conj(), phase, optimize=True)
    z1 = np.einsum("xakc,jalc->xkjl", w, w.conj(), optimize=True)
    return float(np.sum(np.abs(z1) ** 2))


def quartet_v_table(eig, spec):
    """All V^X coefficients as a (n, n, n, n) array (tiny chains only)."""
    _check_budget(eig.L, 4)
    v = _reshaped_vectors(eig, spec)
    # P[a, b] = A_a B_b^dag, then V_abgl = Tr[P[a,b] P[l,g]]
    p = np.einsum("ixn,jxm->nmij", v, v.conj(), optimize=True)
    return np.einsum("abij,lgji->abgl", p, p, optimize=True)


def f_xy_quartet_direct(eig, x, y, t):
    """Debug route: materialize every V^X, V^Y and sum the quartets
    (same layer convention as f_xy_quartet)."""
    _check_budget(eig.L, 4)
    vx = quartet_v_table(eig, x)
    vy = quartet_v_table(eig, y)
    th = eig.phases
    ph = th[:, None, None, None] - th[None, :, None, None] - th[None, None, :, None] + th[None, None, None, :]
    total = np.sum(np.exp(-1j * t * ph) * vy * vx.conj())
    return float(total.real)


def f_spectral(series, window=None):
    """Finite-series spectrum of F(t): unitary DFT at omega_k = 2 pi k / T.

    This is the finite-T regularization of the quartet delta-comb in
    frequency space; Parseval holds exactly for the rectangular window.
    Returns (omega, complex amplitudes) with omega sorted in (-pi, pi].
    """
    f = np.asarray(series, dtype=np.complex128).ravel()
    if f.size == 0:
        raise ConfigurationError("empty series")
    if f.size < 4:
        raise ConfigurationError(f"need at least 4 samples, got {f.size}")
    n = f.size
    if window in (None, "rect"):
        tapered = f
    elif window == "hann":
        tapered = f * np.hanning(n)
    else:
        raise ConfigurationError(f"unknown window {window!r}")
    amps = np.fft.fft(tapered) / math.sqrt(n)
    k = np.arange(n)
    omega = 2 * np.pi * np.where(k <= n // 2, k, k - n) / n
    order = np.argsort(omega, kind="stable")
    return omega[order], amps[order]


def f_spectral_quartet(eig, x, y, n_bins=64):
    """Debug route: histogram the quartet weights over phase differences.

    Returns (bin centers on (-pi, pi], summed real weights).  Only the
    principal branch of theta_abgl is kept, so this matches the DFT view
    at Floquet-integer times.
    """
    _check_budget(eig.L, 4)
    vx = quartet_v_table(eig, x)
    vy = quartet_v_table(eig, y)
    th = eig.phases
    ph = th[:, None, None, None] - th[None, :, None, None] - th[None, None, :, None] + th[None, None, None, :]
    ph = np.mod(ph + np.pi, 2 * np.pi) - np.pi
    weights = (vy * vx.conj()).real
    edges = np.linspace(-np.pi, np.pi, n_bins + 1)
    hist, _ = np.histogram(ph.ravel(), bins=edges, weights=weights.ravel())
    centers = 0.5 * (edges[:-1] + edges[1:])
    return centers, hist
