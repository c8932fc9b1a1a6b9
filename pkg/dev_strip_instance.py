"""Per-instance validation of the F^XYbar strip reduction (no averaging)."""
import numpy as np

from ducorr import circuits, opent, replica
from ducorr.subsystems import input_sites, output_sites

PAIR, CROSS = replica.PAIR, replica.CROSS


def four_copy(w):
    m = np.kron(np.kron(np.kron(w, w.conj()), w), w.conj())
    t = m.reshape((2,) * 16)
    perm = [0, 2, 4, 6, 1, 3, 5, 7]
    t = t.transpose(perm + [8 + p for p in perm])
    return np.ascontiguousarray(t).reshape(16, 16, 16, 16)  # [lo, ro, li, ri]


def bond_gate(op, b):
    L = op.L
    if b % 2 == 1:
        return op.gates[(b - 1) // 2].matrix
    return op.gates[L // 2 + (b - 2) // 2].matrix if b < L else op.gates[L - 1].matrix


def instance_column(w4, width, caps, external_order):
    """Same wiring as replica.build_column but per instance (no twirl)."""
    legs = [(k, i) for k in ("lout", "rout", "lin", "rin") for i in range(width)]
    externals = [leg for leg in legs if leg not in caps]
    assert sorted(external_order) == sorted(externals)
    letters = iter("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ")
    lab = {leg: next(letters) for leg in legs}
    operands, subs = [], []
    for i in range(width):
        operands.append(w4)
        subs.append(lab[("lout", i)] + lab[("rout", i)] + lab[("lin", i)] + lab[("rin", i)])
    for leg, vec in caps.items():
        operands.append(np.asarray(vec, dtype=float))
        subs.append(lab[leg])
    out = "".join(lab[leg] for leg in external_order)
    return np.einsum(",".join(subs) + "->" + out, *operands, optimize=("greedy", 2 ** 25))


def main_left(w):
    out = []
    for i in range(w):
        out.append(("lin", i))
        if i < w - 1:
            out.append(("lout", i))
    return out


def main_right(w):
    out = []
    for i in range(w):
        out.append(("rout", i))
        if i + 1 < w:
            out.append(("rin", i + 1))
    return out


def strip_fxybar(op, t, d, i_x=1):
    L = op.L
    m = -d + 1  # width
    n_cols = 2 * (t - (-d))
    i_y = (i_x + 2 * t + 2 * d - 1) % L + 1
    # left tip chain: widths 1..m-1 at bonds i_x - (m-1) .. i_x - 1
    vec = None
    for w in range(1, m):
        b = (i_x - (m - w) - 1) % L + 1
        w4 = four_copy(bond_gate(op, b))
        caps = {("lin", 0): PAIR, ("lout", w - 1): CROSS}
        inner = []
        for i in range(w - 1):
            inner += [("lout", i), ("lin", i + 1)]
        ext = []
        for i in range(w):
            ext += [("rin", i), ("rout", i)]
        col = instance_column(w4, w, caps, inner + ext)
        if vec is None:
            vec = col.reshape(16 ** len(ext))
        else:
            vec = vec @ col.reshape(16 ** len(inner), 16 ** len(ext))
    cap_left = np.kron(CROSS, vec) if vec is not None else CROSS.copy()

    # right tip chain: widths m-1 .. 1 at bonds i_y .. i_y + m - 2
    vec = None
    for w in range(1, m):
        b = (i_y + (m - 1 - w) - 1) % L + 1
        w4 = four_copy(bond_gate(op, b))
        caps = {("rin", 0): PAIR, ("rout", w - 1): CROSS}
        inner = []
        for i in range(w - 1):
            inner += [("rout", i), ("rin", i + 1)]
        ext = []
        for i in range(w):
            ext += [("lin", i), ("lout", i)]
        col = instance_column(w4, w, caps, inner + ext)
        if vec is None:
            vec = col.reshape(16 ** len(ext))
        else:
            vec = vec @ col.reshape(16 ** len(inner), 16 ** len(ext))
    cap_right = np.kron(vec, PAIR) if vec is not None else PAIR.copy()

    # main columns at bonds i_x .. i_y - 1
    v = cap_left.astype(complex)
    for k in range(n_cols):
        b = (i_x + k - 1) % L + 1
        w4 = four_copy(bond_gate(op, b))
        caps = {("rin", 0): PAIR, ("lout", m - 1): CROSS}
        col = instance_column(w4, m, caps, main_right(m) + main_left(m))
        n = 16 ** (2 * m - 1)
        v = col.reshape(n, n) @ v
    core = np.dot(cap_right, v)
    return 2.0 ** (L - 2 * t - 1) * core


L = 10
op = circuits.build_floquet(0.5, L, np.random.default_rng(9))
for (t, d) in [(2, -1), (3, -1)]:
    x, y = input_sites([1]), output_sites([(1 + 2 * t + 2 * d - 1) % L + 1])
    s = opent.doubled_state(op, t)
    brute = opent.f_from_purity(s, x, y.complement(L))
    pred = strip_fxybar(op, t, d)
    print(f"t={t} d={d}: brute {brute:.8f}  strip {pred:.8f}  ratio {pred / brute:.8f}")
