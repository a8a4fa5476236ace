# The preset graph families and their matrix companions.
#
# Every algorithmic graph orients its edges forward (i < j), which is what
# later lets the operator be applied by a single substitution sweep. The
# Laplacian of a connected spanning subgraph factors as Z Z^T with Z of
# full column rank n-1; for trees the oriented incidence matrix is itself
# such a factor.

import numpy as np

from graphsplit import graphs

n = 5
for name in graphs.PRESETS:
    g = graphs.preset(name, n)
    adj, deg, lap, b = graphs.matrices(g)
    z = graphs.laplacian_factor(g)
    recon = np.linalg.norm(z @ z.T - lap)
    print(f"{name:14s} edges={list(g.edges)}")
    print(f"{'':14s} degrees={[int(k) for k in g.degrees()]}  ||ZZ^T - Lap|| = {recon:.2e}")

print("\nchain on 4 nodes, full detail:")
g = graphs.preset("sequential", 4)
adj, deg, lap, b = graphs.matrices(g)
print("adjacency:\n", adj)
print("update matrix B = Deg - 2 Adj^T (lower triangular):\n", b)
print("Laplacian (= (B + B^T)/2):\n", lap)
print("kernel direction (should be constant):", np.ravel(np.linalg.svd(lap)[2][-1]))

e = graphs.incidence(g)
print("tree incidence factor:\n", e)
print("incidence reconstruction error:", np.linalg.norm(e @ e.T - lap))
