import math
import sys

import numpy as np

from ducorr import circuits, opent
from ducorr.errors import ConfigurationError
from ducorr.subsystems import input_sites, output_sites

L = int(sys.argv[1]) if len(sys.argv) > 1 else 10


def modsite(s):
    return (s - 1) % L + 1


def build(i_x, t, d, nx_choice="half"):
    """Candidate rule: odd i_x, far gap 2t-1, odd |X| and |Y|."""
    g = 2 * t - 1
    total = L - 2 * (t + d) + 1 - g
    if total < 2:
        raise ConfigurationError("no room")
    nx = total // 2
    if nx % 2 == 0:
        nx += 1 if nx_choice == "half" else -1
    ny = total - nx
    if nx < 1 or ny < 1 or ny % 2 == 0:
        raise ConfigurationError("bad split")
    i_y = modsite(i_x + 2 * (t + d))
    xs = tuple(modsite(i_x - nx + 1 + k) for k in range(nx))
    ys = tuple(modsite(i_y + k) for k in range(ny))
    if len(set(xs)) != nx or len(set(ys)) != ny:
        raise ConfigurationError("wrap")
    return input_sites(xs), output_sites(ys)


cells16 = [(1, 0), (2, 0), (1, -1), (2, -1), (1, 1), (2, 1)]
cells15 = [(1, 1), (2, 1), (1, 2)]

for J in (0.4, 0.9):
    for seed in (3, 55):
        op = circuits.build_floquet(J, L, np.random.default_rng(seed))
        states = {t: opent.doubled_state(op, t) for t in (0, 1, 2)}
        res16, res15 = [], []
        for (t, d) in cells16:
            try:
                x, y = build(1, t, d)
            except ConfigurationError:
                res16.append(f"(t{t},d{d}):-")
                continue
            ybar = y.complement(L)
            delta = opent.opmi(states[t], x, ybar) - opent.opmi(states[0], x, ybar)
            want = 2.0 ** (2 * d - 2) if d <= 0 else 1.0
            err = abs(math.exp(delta) / want - 1)
            res16.append(f"(t{t},d{d}):{'Y' if err < 1e-9 else f'{err:.1e}'}")
        for (t, d) in cells15:
            try:
                x, y = build(1, t, d)
            except ConfigurationError:
                res15.append(f"(t{t},d{d}):-")
                continue
            v = math.exp(opent.opmi(states[t], x, y))
            err = abs(v - 1)
            res15.append(f"(t{t},d{d}):{'Y' if err < 1e-9 else f'{err:.1e}'}")
        print(f"L={L} J={J} seed={seed}")
        print("  eq16:", " ".join(res16))
        print("  eq15 d>0:", " ".join(res15))
