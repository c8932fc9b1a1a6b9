"""Dual-unitary two-qubit gates and the brickwork Floquet operator.

Conventions used throughout the package:

* two-qubit gate matrices are 4x4 with row = (output at site a, output at
  site b) and column = (input at site a, input at site b), site a being
  the more significant bit;
* chain basis states index site 1 as the most significant bit;
* sites are 1-based, bonds are labelled by their left site, bond b acts
  on sites (b, b+1) with bond L wrapping to (L, 1);
* one Floquet period applies the odd-bond layer first, then the
  even-bond layer.  (Which layer acts first is a pure labelling choice
  for averaged quantities; it fixes which site parities sit on tight
  lightcone rays for single instances.)
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError
from ._kernels import apply_two_qubit

UNITARITY_TOL = 1e-10


@dataclass(frozen=True)
class DUGateParams:
    """Parameters of a dressed dual-unitary gate: coupling, global phase
    and the four single-qubit dressings."""

    j: float
    phi: float
    u_plus: np.ndarray
    u_minus: np.ndarray
    v_plus: np.ndarray
    v_minus: np.ndarray


@dataclass(frozen=True)
class TwoQubitGate:
    matrix: np.ndarray

    @property
    def tensor(self):
        """View as (out_a, out_b, in_a, in_b)."""
        return self.matrix.reshape(2, 2, 2, 2)


@dataclass(frozen=True)
class FloquetOperator:
    """Brickwork one-period unitary on L sites with its bond gates.

    ``gates[0:L//2]`` act on odd bonds (1,2), (3,4), ...; the remaining
    gates act on even bonds (2,3), ..., (L,1).  ``params`` keeps the
    sampled gate parameters when the circuit was drawn randomly.
    """

    L: int
    gates: tuple
    matrix: np.ndarray
    params: tuple = field(default=None, repr=False)

    @property
    def dim(self):
        return 2 ** self.L


def build_core_gate(j):
    """Two-qubit gate exp[-i ((pi/4)(XX + YY) + j ZZ)].

    The XX+YY rotation sits exactly at the dual-unitary point (it fully
    swaps the single-excitation block up to a phase); the coupling j is
    the ZZ phase, the convention under which the decay parameter of the
    averaged circuit is (2 - cos 4j)/3.
    """
    th = float(j)
    d = np.exp(-1j * th)
    o = -1j * np.exp(1j * th)
    m = np.array(
        [
            [d, 0, 0, 0],
            [0, 0, o, 0],
            [0, o, 0, 0],
            [0, 0, 0, d],
        ],
        dtype=np.complex128,
    )
    return TwoQubitGate(m)


def unitarity_defect(matrix):
    """Max-norm of M M^dag - 1."""
    m = np.asarray(matrix)
    eye = np.eye(m.shape[0])
    return float(np.max(np.abs(m @ m.conj().T - eye)))


def check_unitarity(gate):
    """Unitarity defect of a two-qubit gate (0 for exactly unitary)."""
    m = gate.matrix if isinstance(gate, TwoQubitGate) else gate
    return unitarity_defect(m)


def compose_gate(params):
    """Dress the core gate: e^{i phi} (u+ x u-) U[j] (v+ x v-)."""
    for name in ("u_plus", "u_minus", "v_plus", "v_minus"):
        m = getattr(params, name)
        if unitarity_defect(m) > UNITARITY_TOL:
            raise ValueError(f"{name} is not unitary (defect {unitarity_defect(m):.2e})")
    core = build_core_gate(params.j).matrix
    m = (
        np.exp(1j * params.phi)
        * np.kron(params.u_plus, params.u_minus)
        @ core
        @ np.kron(params.v_plus, params.v_minus)
    )
    return TwoQubitGate(m)


def dual_transpose(gate):
    """Space-time swapped gate: exchange one output leg with one input leg.

    In tensor form (out_a, out_b, in_a, in_b) -> (out_a, in_a, out_b, in_b),
    i.e. the second output index trades places with the first input index.
    The result is unitary exactly when the gate is dual-unitary.
    """
    t = gate.tensor
    return TwoQubitGate(np.ascontiguousarray(t.transpose(0, 2, 1, 3)).reshape(4, 4))


def dual_unitarity_defect(gate):
    return check_unitarity(dual_transpose(gate))


def haar_unitary(dim, rng):
    """Haar-distributed unitary via QR of a complex Gaussian matrix with
    the R diagonal phase fixed."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def sample_du_gate(j, rng):
    """Draw gate parameters with Haar single-qubit dressings.

    Dressings are sampled on U(2); all averaged quantities in this
    package only see the gate through two conjugate copies, so the extra
    global phases relative to SU(2) drop out (they can be absorbed in
    phi, which is drawn uniformly anyway).
    """
    return DUGateParams(
        j=float(j),
        phi=float(rng.uniform(0.0, 2.0 * np.pi)),
        u_plus=haar_unitary(2, rng),
        u_minus=haar_unitary(2, rng),
        v_plus=haar_unitary(2, rng),
        v_minus=haar_unitary(2, rng),
    )


def odd_bonds(L):
    return [(2 * k + 1, 2 * k + 2) for k in range(L // 2)]


def even_bonds(L):
    return [(2 * k + 2, 2 * k + 3) for k in range(L // 2 - 1)] + [(L, 1)]


def _rotl_indices(L):
    """Index permutation of the left cyclic site shift |s1 s2 .. sL> -> |s2 .. sL s1>."""
    i = np.arange(2 ** L, dtype=np.int64)
    mask = (1 << L) - 1
    return ((i << 1) & mask) | (i >> (L - 1))


def assemble_brickwork(gates, L):
    """Dense one-period operator from L bond gates (odd bonds then even).

    The odd layer is a plain Kronecker chain.  The even layer is the
    Kronecker chain of its gates conjugated by the cyclic site shift,
    which also takes care of the wrapping bond (L, 1).
    """
    if L % 2 or L < 4:
        raise ConfigurationError(f"L must be even and >= 4, got {L}")
    if len(gates) != L:
        raise ConfigurationError(f"need L={L} gates, got {len(gates)}")
    mats = [g.matrix if isinstance(g, TwoQubitGate) else np.asarray(g) for g in gates]
    w_odd = mats[0]
    for m in mats[1 : L // 2]:
        w_odd = np.kron(w_odd, m)
    k_even = mats[L // 2]
    for m in mats[L // 2 + 1 :]:
        k_even = np.kron(k_even, m)
    rot = _rotl_indices(L)
    w_even = k_even[np.ix_(rot, rot)]
    # odd layer acts first
    return w_even @ w_odd


def build_floquet(j, L, rng, max_sites=14):
    """Sample one independent dressed gate per bond and assemble U_F.

    The same gate is reused at every period (Floquet); determinism is
    inherited from the caller's seeded generator.
    """
    if L % 2 or L < 4:
        raise ConfigurationError(f"L must be even and >= 4, got {L}")
    if L > max_sites:
        raise ConfigurationError(
            f"L={L} exceeds the dense budget of {max_sites} sites (2^{L} amplitudes)"
        )
    params = tuple(sample_du_gate(j, rng) for _ in range(L))
    gates = tuple(compose_gate(p) for p in params)
    matrix = assemble_brickwork(gates, L)
    return FloquetOperator(L=L, gates=gates, matrix=matrix, params=params)


def apply_period(psi, op, n_axes, axis_offset=0):
    """Apply one Floquet period to the site axes of a flat state.

    ``psi`` is a 2**n_axes vector; the circuit acts on axes
    ``axis_offset .. axis_offset + L - 1``.  Used to evolve doubled
    states cheaply (gate by gate) instead of multiplying dense 2^L
    matrices.
    """
    L = op.L
    out = np.ascontiguousarray(psi, dtype=np.complex128).ravel().copy()
    for (a, b), g in zip(odd_bonds(L) + even_bonds(L), op.gates):
        out = apply_two_qubit(
            out, g.matrix, n_axes, axis_offset + a - 1, axis_offset + b - 1, inplace=True
        )
    return out
