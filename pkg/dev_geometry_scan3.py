import math

import numpy as np

from ducorr import circuits, opent
from ducorr.errors import ConfigurationError
from ducorr.subsystems import input_sites, output_sites

L = 10


def modsite(s):
    return (s - 1) % L + 1


def build(i_x, t, d, nx, far_gap):
    total = L - 2 * (t + d) + 1 - far_gap
    ny = total - nx
    if nx < 1 or ny < 1:
        raise ConfigurationError("size")
    i_y = modsite(i_x + 2 * (t + d))
    xs = tuple(modsite(i_x - nx + 1 + k) for k in range(nx))
    ys = tuple(modsite(i_y + k) for k in range(ny))
    if len(set(xs)) != nx or len(set(ys)) != ny:
        raise ConfigurationError("wrap")
    return input_sites(xs), output_sites(ys)


ops = [circuits.build_floquet(0.6, L, np.random.default_rng(s)) for s in (21, 77)]
states = {}
for k, op in enumerate(ops):
    for t in (0, 1, 2):
        states[k, t] = opent.doubled_state(op, t)

cells = [(1, 0), (2, 0), (2, -1), (1, 1), (2, 1), (1, 2)]
for far_gap in (0, 1, 2):
    print(f"##### far_gap = {far_gap}")
    for i_x in (1, 2):
        for (t, d) in cells:
            total = L - 2 * (t + d) + 1 - far_gap
            line15, line16 = [], []
            for nx in range(1, max(total, 1)):
                try:
                    x, y = build(i_x, t, d, nx, far_gap)
                except ConfigurationError:
                    line15.append("-")
                    line16.append("-")
                    continue
                ok15 = ok16 = True
                for k in range(len(ops)):
                    if d > 0:
                        v = math.exp(opent.opmi(states[k, t], x, y))
                        ok15 &= abs(v - 1) < 1e-9
                    ybar = y.complement(L)
                    delta = opent.opmi(states[k, t], x, ybar) - opent.opmi(states[k, 0], x, ybar)
                    want = 2.0 ** (2 * d - 2) if d <= 0 else 1.0
                    ok16 &= abs(math.exp(delta) / want - 1) < 1e-9
                line15.append("Y" if ok15 else ("." if d <= 0 else "n"))
                line16.append("Y" if ok16 else "n")
            print(
                f"  i_x={i_x} (t={t},d={d}) total={total}: "
                f"eq15[nx=1..] {''.join(line15)}   eq16 {''.join(line16)}"
            )
