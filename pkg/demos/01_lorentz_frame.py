"""
The ideal regular simplex in the Lorentz model
==============================================

Build the frame, check where its vertices live and measure the in-radius
and the distance from the incenter to an edge.
"""

# %%
import math
import numpy as np
from horopack import lorentz

frame = lorentz.build_regular_ideal_simplex(4)
for v in frame.vertices:
    print(np.round(v.coords, 4), lorentz.classify_point(v).name)

# %%
# every vertex sits on the absolute, the incenter is interior
print(lorentz.classify_point(frame.incenter).name)

# %%
n = frame.dim
rho = lorentz.distance(frame.center, frame.incenter)
s = lorentz.distance_to_hyperplane(frame.incenter, frame.edge_pole())
print("cosh rho", math.cosh(rho), "expected", n / math.sqrt((n - 1) * (n + 1)))
print("sinh s  ", math.sinh(s), "expected", (n - 1) / math.sqrt((n + 1) * (n - 1)))

# %%
# the foot of the perpendicular lies on the facet
u = frame.facet_pole(0)
foot = lorentz.foot_of_perpendicular(frame.incenter, u)
print(lorentz.bilinear_form(foot, u))
