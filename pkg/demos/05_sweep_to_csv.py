# Produce the machine-readable relaxation sweep, library-only.
#
# Same rows the `graphsplit sweep` command emits: for each theta, the
# iterations to tolerance plus predicted and measured linear rates. Seeded
# start vector and subspaces make the output reproducible bit for bit.

from graphsplit import build, pair, preset, product, random_subspace, theta_sweep
from graphsplit._rng import SplitMix64

n, d = 4, 3
spaces = product([random_subspace(d, 2, seed) for seed in (11, 12, 13, 14)])
op = build(pair(preset("ring", n)), spaces)

v0 = SplitMix64(99).normals(op.size)
thetas = [i / 10.0 for i in range(2, 19, 2)]
records = theta_sweep(op, thetas, v0, eps=1e-8)

print("theta,k_stop,rho1_predicted,rho1_measured")
for rec in records:
    measured = "" if rec.rho1_measured is None else f"{rec.rho1_measured:.12g}"
    print(f"{rec.theta:.12g},{rec.k_stop},{rec.rho1_predicted:.12g},{measured}")
