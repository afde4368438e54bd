"""
Volume of the ideal regular simplex
===================================

The volume comes from a slowly convergent positive series. Terms decay like
k^(-(n+1)/2), so the tail is fitted rather than summed.
"""

# %%
import math
import numpy as np
from horopack import volume

t = volume.milnor_terms(3, 2000)
print(t[:4])
print("decay exponent", math.log(t[2000] / t[1000]) / math.log(2))

# %%
# plain partial sums crawl toward the answer
oracle = volume.ideal_tetrahedron_volume_oracle()
for k in (10, 100, 1000, 2000):
    print(k, oracle - t[: k + 1].sum())

# %%
vol, state = volume.ideal_regular_simplex_volume(3)
print(vol, oracle, abs(vol - oracle), state.uncertainty, state.terms_used)

# %%
for n in range(3, 9):
    vol, state = volume.ideal_regular_simplex_volume(n)
    print(n, f"{vol:.10f}", f"{state.uncertainty:.1e}", state.terms_used)
