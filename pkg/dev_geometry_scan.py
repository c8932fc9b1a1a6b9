import math

import numpy as np

from ducorr import circuits, opent
from ducorr.errors import ConfigurationError
from ducorr.subsystems import input_sites, output_sites

L = 10
op = circuits.build_floquet(0.6, L, np.random.default_rng(21))
states = {t: opent.doubled_state(op, t) for t in (0, 1, 2)}


def modsite(s):
    return (s - 1) % L + 1


def build(i_x, t, d, nx):
    total = L - 2 * (t + d) + 1
    ny = total - nx
    if nx < 1 or ny < 1:
        raise ConfigurationError("size")
    i_y = modsite(i_x + 2 * (t + d))
    xs = tuple(modsite(i_x - nx + 1 + k) for k in range(nx))
    ys = tuple(modsite(i_y + k) for k in range(ny))
    if set(xs) & set(ys):
        raise ConfigurationError("overlap")
    return input_sites(xs), output_sites(ys)


cells = [(1, 0), (2, 0), (1, -1), (1, 1), (2, 1), (1, 2)]
for i_x in (1, 2):
    for nxpar in (0, 1):
        ok15, ok16 = [], []
        for (t, d) in cells:
            total = L - 2 * (t + d) + 1
            nx = total // 2
            if nx % 2 != nxpar:
                nx += 1
            try:
                x, y = build(i_x, t, d, nx)
            except ConfigurationError:
                ok15.append("-")
                ok16.append("-")
                continue
            if d > 0:
                v = math.exp(opent.opmi(states[t], x, y))
                ok15.append("Y" if abs(v - 1) < 1e-9 else f"n({v:.3f})")
            else:
                ok15.append(".")
            ybar = y.complement(L)
            delta = opent.opmi(states[t], x, ybar) - opent.opmi(states[0], x, ybar)
            got, want = math.exp(delta), (2.0 ** (2 * d - 2) if d <= 0 else 1.0)
            ok16.append("Y" if abs(got / want - 1) < 1e-9 else f"n({got / want:.3f})")
        print(f"i_x={i_x} nx%2={nxpar}: Eq15 {ok15}")
        print(f"              Eq16 {ok16}")
