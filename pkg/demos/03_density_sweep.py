"""
Sliding the tangency point
==========================

Inflate one horoball and shrink the others. Total horoball volume is convex
in the offset, so the best packing sits at an endpoint.
"""

# %%
import numpy as np
from horopack import density

for s in density.density_sweep(4, 11):
    print(f"{s.x:.4f}  {s.delta:.6f}")

# %%
# the classical and inflated endpoints, and the ratio between them
for n in range(2, 9):
    rep = density.density_report(n)
    print(n, f"{rep.classical:.6f}", f"{rep.generalized:.6f}", f"{rep.ratio:.6f}", rep.optimal.value)

# %%
# the inflated ball wins once q_n passes log(n)/(n-1), from n = 4 on
n = np.arange(2, 13)
gap = [density.geometric_constants(k).q - density.tangency_threshold(k) for k in n]
print(np.round(gap, 5))
