"""Operator-to-state map and Renyi-2 operator entanglement of U_t.

The doubled state of U_t = U_F^t is the normalized vector of its matrix
entries; purities of arbitrary spatiotemporal subsystems follow from
reshaping the amplitudes into a (subsystem) x (rest) matrix.  This is
the cheap, exact route to the four-eigenstate correlation F^XY.
"""

import math
from dataclasses import dataclass

import numpy as np

from .circuits import FloquetOperator, apply_period
from .errors import ConfigurationError
from .subsystems import SubsystemSpec, collect_axes

LN2 = math.log(2.0)


@dataclass(frozen=True)
class DoubledState:
    """Normalized operator state of U_F^t on 2L qubits."""

    L: int
    t: int
    amplitudes: np.ndarray

    @property
    def tensor(self):
        return self.amplitudes.reshape((2,) * (2 * self.L))


def doubled_state(op, t, evolve_threshold=10):
    """Operator state of U_F^t, index = (output config, input config).

    For small chains the matrix power is taken directly; for larger ones
    the vectorized identity is evolved gate by gate, which is much
    cheaper than dense matrix products.
    """
    if t < 0:
        raise ConfigurationError("t must be >= 0")
    L = op.L
    dim = 2 ** L
    if L <= evolve_threshold:
        u_t = np.linalg.matrix_power(op.matrix, t)
        psi = u_t.ravel() / 2 ** (L / 2)
        return DoubledState(L=L, t=t, amplitudes=np.ascontiguousarray(psi))
    psi = np.eye(dim, dtype=np.complex128).ravel() / 2 ** (L / 2)
    for _ in range(t):
        psi = apply_period(psi, op, 2 * L, axis_offset=0)
    return DoubledState(L=L, t=t, amplitudes=psi)


def evolve_one_period(state, op):
    """Doubled state at t+1 from the state at t (output layer evolves)."""
    psi = apply_period(state.amplitudes, op, 2 * state.L, axis_offset=0)
    return DoubledState(L=state.L, t=state.t + 1, amplitudes=psi)


def purity(state, subsystem):
    """Tr[rho_A^2] for the reduced state on the given spec(s).

    The amplitudes are reshaped into a matrix M with the subsystem axes
    as rows; the Gram matrix is formed on the smaller side and the
    purity is its squared Frobenius norm.
    """
    n = 2 * state.L
    axes = collect_axes(subsystem, state.L)
    k = len(axes)
    if k == 0 or k == n:
        nrm = float(np.vdot(state.amplitudes, state.amplitudes).real)
        return nrm * nrm
    t = np.moveaxis(state.tensor, axes, range(k))
    m = np.ascontiguousarray(t).reshape(2 ** k, 2 ** (n - k))
    if m.shape[0] <= m.shape[1]:
        g = m @ m.conj().T
    else:
        g = m.conj().T @ m
    return float(np.vdot(g, g).real)


def renyi2(state, subsystem):
    """Second Renyi entropy -ln Tr[rho_A^2]."""
    return -math.log(purity(state, subsystem))


def opmi(state, x, y):
    """Renyi-2 operator mutual information between opposite-layer specs.

    The single-layer entropies are fixed by unitarity at |X| ln 2 and
    |Y| ln 2, so only the joint purity is computed.
    """
    if x.layer == y.layer:
        raise ConfigurationError("X and Y must live on opposite layers")
    return (len(x) + len(y)) * LN2 - renyi2(state, [x, y])


def f_from_purity(state, x, y):
    """F^XY via exp[I2] = q^{|X|+|Y|-2L} F^XY; pass Ybar as y for F^XYbar."""
    L = state.L
    scale = 2.0 ** (2 * L - len(x) - len(y))
    return scale * math.exp(opmi(state, x, y))


def delta_opmi_xybar(op, t, x, y):
    """I2^{X Ybar}(U_t) - I2^{X Ybar}(U_0) with Ybar the output-layer
    complement of y."""
    ybar = y.complement(op.L)
    s_t = doubled_state(op, t)
    s_0 = doubled_state(op, 0)
    return opmi(s_t, x, ybar) - opmi(s_0, x, ybar)


def reduced_density(state, subsystem):
    """Dense reduced density matrix on the spec(s); small subsystems only."""
    n = 2 * state.L
    axes = collect_axes(subsystem, state.L)
    k = len(axes)
    if k > 12:
        raise ConfigurationError(f"dense RDM on {k} qubits is too large")
    t = np.moveaxis(state.tensor, axes, range(k))
    m = np.ascontiguousarray(t).reshape(2 ** k, 2 ** (n - k))
    return m @ m.conj().T


def partial_trace(rho, keep, n_qubits):
    """Trace out all but the listed qubit positions of a 2^n density matrix."""
    t = rho.reshape((2,) * (2 * n_qubits))
    n = n_qubits
    for q in sorted((q for q in range(n_qubits) if q not in keep), reverse=True):
        t = np.trace(t, axis1=q, axis2=q + n)
        n -= 1
    d = 2 ** len(keep)
    return t.reshape(d, d)


def purity_of_rdm(rho):
    return float(np.vdot(rho, rho).real)
