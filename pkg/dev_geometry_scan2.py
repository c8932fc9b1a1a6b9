import math

import numpy as np

from ducorr import circuits, opent
from ducorr.errors import ConfigurationError
from ducorr.subsystems import input_sites, output_sites

L = 10


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


ops = [circuits.build_floquet(0.6, L, np.random.default_rng(s)) for s in (21, 77)]
cells = [(1, 0), (2, 0), (1, -1), (1, 1), (2, 1), (1, 2)]

for i_x in (1, 2):
    print(f"### i_x = {i_x}")
    for (t, d) in cells:
        total = L - 2 * (t + d) + 1
        line15, line16 = [], []
        for nx in range(1, total):
            try:
                x, y = build(i_x, t, d, nx)
            except ConfigurationError:
                line15.append("-")
                line16.append("-")
                continue
            ok15 = ok16 = True
            for op in ops:
                st = opent.doubled_state(op, t)
                s0 = opent.doubled_state(op, 0)
                if d > 0:
                    v = math.exp(opent.opmi(st, x, y))
                    ok15 &= abs(v - 1) < 1e-9
                ybar = y.complement(L)
                delta = opent.opmi(st, x, ybar) - opent.opmi(s0, x, ybar)
                want = 2.0 ** (2 * d - 2) if d <= 0 else 1.0
                ok16 &= abs(math.exp(delta) / want - 1) < 1e-9
            line15.append("Y" if ok15 else ("." if d <= 0 else "n"))
            line16.append("Y" if ok16 else "n")
        print(f"  (t={t}, d={d}) total={total}: eq15[nx=1..] {''.join(line15)}   eq16 {''.join(line16)}")
