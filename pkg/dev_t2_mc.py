import numpy as np

from ducorr import circuits, opent, replica
from ducorr.subsystems import input_sites, output_sites

J = 0.5
L = 10

t2 = replica.build_t2(J, -1)

# converged boundary moments
f = t2.boundary_moments(400).real
for n in (100, 200, 399):
    print(f"f_{n}/2^{n} = {f[n] / 2.0 ** n:.8f}")

# transfer predictions for <F^XYbar(t)>, d=-1
for t in (1, 2, 3):
    n_apps = 2 * (t - 1)
    pred = 2.0 ** (L - 2 * t - 1) * f[n_apps]
    print(f"t={t}: transfer prediction {pred:.4f}  /2^L = {pred / 2 ** L:.6f}")

# MC ensemble of brute-force F^XYbar
rng = np.random.default_rng(123)
n_samp = 400
d = -1
for t in (1, 2, 3):
    i_y = (1 + 2 * t + 2 * d - 1) % L + 1
    x, y = input_sites([1]), output_sites([i_y])
    vals = np.empty(n_samp)
    for k in range(n_samp):
        op = circuits.build_floquet(J, L, np.random.default_rng(hash((123, k)) % 2 ** 63))
        s = opent.doubled_state(op, t)
        vals[k] = opent.f_from_purity(s, x, y.complement(L))
    mean, se = vals.mean(), vals.std(ddof=1) / np.sqrt(n_samp)
    print(f"t={t}: MC <F> = {mean:.4f} +- {se:.4f}   /2^L = {mean / 2 ** L:.6f} +- {se / 2 ** L:.6f}")
