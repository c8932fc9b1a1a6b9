import numpy as np

from ducorr import circuits, replica


def four_copy(w):
    m = np.kron(np.kron(np.kron(w, w.conj()), w), w.conj())
    t = m.reshape((2,) * 16)
    perm = [0, 2, 4, 6, 1, 3, 5, 7]
    t = t.transpose(perm + [8 + p for p in perm])
    return np.ascontiguousarray(t).reshape(16, 16, 16, 16)


J = 0.5
rng = np.random.default_rng(1)
prng = np.random.default_rng(7)
a = prng.standard_normal(4096)
b = prng.standard_normal(4096)
A = a.reshape(16, 16, 16)
B = b.reshape(16, 16, 16)

# legs: lo0=a ro0=b li0=c ri0=d ; lo1=e ro1=f li1=g ri1=h
# caps: ri0 -> PAIR, lo1 -> CROSS ; A[ro0, ri1, ro1] ; B[li0, lo0, li1]
expr = "abcd,efgh,d,e,bhf,cag->"
N = 20000
vals = np.empty(N)
for k in range(N):
    w = circuits.compose_gate(circuits.sample_du_gate(J, rng)).matrix
    w4 = four_copy(w)
    vals[k] = np.real(
        np.einsum(expr, w4, w4, replica.PAIR, replica.CROSS, A, B, optimize=True)
    )
mc = vals.mean()
se = vals.std(ddof=1) / np.sqrt(N)

t2 = replica.build_t2(J, -1)
pred = (a @ (t2.matrix @ b)).real
print(f"probe: MC {mc:.6f} +- {se:.6f}   averaged column {pred:.6f}   z = {(mc - pred) / se:.2f}")
