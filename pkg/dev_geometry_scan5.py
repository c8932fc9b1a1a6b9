import math

import numpy as np

from ducorr import circuits, opent
from ducorr.errors import ConfigurationError
from ducorr.subsystems import input_sites, output_sites

L = 12


def modsite(s):
    return (s - 1) % L + 1


def build(i_x, t, d, nx, g):
    total = L - 2 * (t + d) + 1 - g
    ny = total - nx
    if nx < 1 or ny < 1:
        raise ConfigurationError("size")
    i_y = modsite(i_x + 2 * (t + d))
    xs = tuple(modsite(i_x - nx + 1 + k) for k in range(nx))
    ys = tuple(modsite(i_y + k) for k in range(ny))
    if len(set(xs)) != nx or len(set(ys)) != ny:
        raise ConfigurationError("wrap")
    return input_sites(xs), output_sites(ys)


op = circuits.build_floquet(0.7, L, np.random.default_rng(5))
states = {t: opent.doubled_state(op, t) for t in (0, 1, 2)}

# boundary cases t = |d|: (1,-1) and (2,-2)
for (t, d) in [(1, -1), (2, -2), (2, -1)]:
    want = 2.0 ** (2 * d - 2)
    print(f"### (t={t}, d={d}), want exp(Delta) = {want}")
    for g in range(1, 8):
        total = L - 2 * (t + d) + 1 - g
        row = []
        for nx in range(1, max(total, 1)):
            try:
                x, y = build(1, t, d, nx, g)
            except ConfigurationError:
                row.append("-")
                continue
            ybar = y.complement(L)
            delta = opent.opmi(states[t], x, ybar) - opent.opmi(states[0], x, ybar)
            got = math.exp(delta)
            row.append("Y" if abs(got / want - 1) < 1e-9 else "n")
        print(f"  g={g} total={total}: nx=1..: {''.join(row)}")
