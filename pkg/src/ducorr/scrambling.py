"""Pauli-basis-averaged two-point correlators and OTOCs.

Both averages are tied to operator mutual informations by exact
identities (per circuit instance, not just on average):

    C_XY(t) = exp[I2^XY] / q^{2(|X|+|Y|)}
    D_XY(t) = exp[I2^XYbar] / q^{2|X|}

with <A> = Tr A / 2^L and the unnormalized Pauli-string basis; the
routines verify these identities against the purity route by default.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetError, DiagnosticError
from .opent import doubled_state, opmi
from .subsystems import SubsystemSpec, input_sites, output_sites

_PAULI = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


@dataclass(frozen=True)
class PauliString:
    """Pauli letters on an ordered site support (time-slice operator;
    the layer tag of the support is irrelevant here)."""

    support: SubsystemSpec
    letters: str

    def __post_init__(self):
        if len(self.letters) != len(self.support.sites):
            raise ValueError("one letter per support site required")
        if any(c not in _PAULI for c in self.letters):
            raise ValueError(f"letters must be in I,X,Y,Z: {self.letters}")

    def matrix(self, L):
        """Dense 2^L operator (small chains only)."""
        ops = {s: _PAULI[c] for s, c in zip(self.support.sites, self.letters)}
        out = np.array([[1.0 + 0j]])
        for site in range(1, L + 1):
            out = np.kron(out, ops.get(site, _PAULI["I"]))
        return out


def pauli_strings(support):
    """All 4^|support| Pauli strings on a support, identity included."""
    for letters in itertools.product("IXYZ", repeat=len(support.sites)):
        yield PauliString(support, "".join(letters))


def _apply_axis(op2, arr, axis):
    arr = np.moveaxis(arr, axis, 0)
    shape = arr.shape
    out = (op2 @ arr.reshape(2, -1)).reshape(shape)
    return np.moveaxis(out, 0, axis)


def apply_string_rows(p, mat, L):
    """P @ M for a dense 2^L matrix M, applied site by site."""
    t = mat.reshape((2,) * L + (mat.shape[1],))
    for site, c in zip(p.support.sites, p.letters):
        if c != "I":
            t = _apply_axis(_PAULI[c], t, site - 1)
    return t.reshape(mat.shape)


def apply_string_cols(p, mat, L):
    """M @ P, via (P^T M^T)^T with the site-wise row application."""
    t = mat.T.reshape((2,) * L + (mat.shape[0],))
    for site, c in zip(p.support.sites, p.letters):
        if c != "I":
            t = _apply_axis(_PAULI[c].T, t, site - 1)
    return t.reshape(mat.shape[::-1]).T


def heisenberg(op, t, obs):
    """Heisenberg evolution U_t^dag O U_t with U_t = U_F^t."""
    u_t = np.linalg.matrix_power(op.matrix, t)
    return u_t.conj().T @ obs @ u_t


def _as_spec(sites, layer_builder):
    if isinstance(sites, SubsystemSpec):
        return sites
    return layer_builder(np.atleast_1d(sites))


def _check_pair_budget(x, y, budget):
    n = 4 ** (len(x) + len(y))
    if n > budget:
        raise BudgetError(f"{n} Pauli pairs exceed the enumeration budget {budget}")


def two_point_avg(op, t, x, y, verify=True, tol=1e-10, budget=65536):
    """Basis-averaged squared two-point function C_XY(t).

    Sums |<O_Y(t) O_X>|^2 over complete Pauli bases on X and Y
    (identity included) with normalization q^{-2(|X|+|Y|)}.
    """
    x = _as_spec(x, input_sites)
    y = _as_spec(y, output_sites)
    _check_pair_budget(x, y, budget)
    L = op.L
    dim = 2 ** L
    u_t = np.linalg.matrix_power(op.matrix, t)
    total = 0.0
    for q in pauli_strings(y):
        w = apply_string_rows(q, u_t, L)  # Q U_t
        for p in pauli_strings(x):
            wp = apply_string_cols(p, w, L)  # Q U_t P
            val = np.vdot(u_t, wp) / dim  # Tr[U_t^dag Q U_t P] / 2^L
            total += abs(val) ** 2
    c_xy = total / 4.0 ** (len(x) + len(y))
    if verify:
        expected = math.exp(opmi(doubled_state(op, t), x, y)) / 4.0 ** (len(x) + len(y))
        if abs(c_xy - expected) > tol:
            raise DiagnosticError(
                f"two-point identity violated: {c_xy!r} vs purity route {expected!r}"
            )
    return c_xy


def otoc_avg(op, t, x, y, verify=True, tol=1e-10, budget=65536):
    """Basis-averaged OTOC D_XY(t) = q^{-2(|X|+|Y|)} sum <(O_Y(t) O_X)^2>."""
    x = _as_spec(x, input_sites)
    y = _as_spec(y, output_sites)
    _check_pair_budget(x, y, budget)
    L = op.L
    dim = 2 ** L
    u_t = np.linalg.matrix_power(op.matrix, t)
    total = 0.0
    for q in pauli_strings(y):
        if all(c == "I" for c in q.letters):
            q_t = None  # identity evolves trivially
        else:
            q_t = u_t.conj().T @ apply_string_rows(q, u_t, L)
        for p in pauli_strings(x):
            if q_t is None:
                m = None
            else:
                m = apply_string_cols(p, q_t, L)  # Q(t) P
            if m is None:
                # <(P)^2> = <1> = 1 for every Pauli P
                total += 1.0
            else:
                val = np.sum(m * m.T) / dim  # Tr[(Q(t) P)^2] / 2^L
                total += val.real
    d_xy = total / 4.0 ** (len(x) + len(y))
    if verify:
        ybar = y.complement(L)
        expected = math.exp(opmi(doubled_state(op, t), x, ybar)) / 4.0 ** len(x)
        if abs(d_xy - expected) > tol:
            raise DiagnosticError(
                f"OTOC identity violated: {d_xy!r} vs purity route {expected!r}"
            )
    return d_xy
