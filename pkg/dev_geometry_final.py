"""Final verification of the frozen macro placement rule."""
import math
import sys

import numpy as np

from ducorr import circuits, opent
from ducorr.errors import ConfigurationError
from ducorr.subsystems import input_sites, output_sites

L = int(sys.argv[1]) if len(sys.argv) > 1 else 10


def modsite(s):
    return (s - 1) % L + 1


def macro_rule(t, d, i_x=1):
    marginal = d <= 0 and t == -d
    if marginal:
        g = 1
        total = L - 2 * (t + d) + 1 - g
        nx = total // 2 - 1
        if nx % 2:
            nx -= 1
    else:
        g = 2 * t - 1
        total = L - 2 * (t + d) + 1 - g
        nx = total // 2
        if nx % 2 == 0:
            nx += 1
    ny = total - nx
    if nx < 1 or ny < 1 or total < 2:
        raise ConfigurationError("no room")
    i_y = modsite(i_x + 2 * (t + d))
    xs = tuple(modsite(i_x - nx + 1 + k) for k in range(nx))
    ys = tuple(modsite(i_y + k) for k in range(ny))
    if len(set(xs)) != nx or len(set(ys)) != ny:
        raise ConfigurationError("wrap")
    return input_sites(xs), output_sites(ys)


cells16 = [(1, 0), (2, 0), (1, -1), (2, -1), (2, -2), (1, 1), (2, 1)]
cells15 = [(1, 1), (2, 1), (1, 2)]

bad = 0
for J in (0.35, 0.8):
    for seed in (3, 55, 101):
        op = circuits.build_floquet(J, L, np.random.default_rng(seed))
        states = {t: opent.doubled_state(op, t) for t in (0, 1, 2)}
        out16, out15 = [], []
        for (t, d) in cells16:
            try:
                x, y = macro_rule(t, d)
            except ConfigurationError:
                out16.append(f"(t{t},d{d}):-")
                continue
            ybar = y.complement(L)
            delta = opent.opmi(states[t], x, ybar) - opent.opmi(states[0], x, ybar)
            want = 2.0 ** (2 * d - 2) if d <= 0 else 1.0
            err = abs(math.exp(delta) / want - 1)
            ok = err < 1e-9
            bad += not ok
            out16.append(f"(t{t},d{d}):{'Y' if ok else f'{err:.1e}'}")
        for (t, d) in cells15:
            try:
                x, y = macro_rule(t, d)
            except ConfigurationError:
                out15.append(f"(t{t},d{d}):-")
                continue
            err = abs(math.exp(opent.opmi(states[t], x, y)) - 1)
            ok = err < 1e-9
            bad += not ok
            out15.append(f"(t{t},d{d}):{'Y' if ok else f'{err:.1e}'}")
        print(f"L={L} J={J} seed={seed}: eq16 {' '.join(out16)} | eq15 {' '.join(out15)}")
print("FAILURES:", bad)
