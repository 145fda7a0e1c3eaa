# %% [markdown]
# # The 28 bitangents
#
# Each bitangent `a x + b y + z = 0` restricts the quartic to a perfect square.
# We find all of them for `y^3 z = x^4 - x z^3`, then look at the closed forms.

# %%
import numpy as np

from quartics import make_curve
from quartics.bitangent import c9_u_radicals, find_bitangents, tangency_points

curve = make_curve("C9")
recs = find_bitangents(curve)
print(len(recs), "bitangents")

# %%
a_values = np.array([complex(rec.line.a) for rec in recs if rec.line.c == 1 and rec.line.a != 0])
print("distinct a^3 values:", np.unique(np.round(a_values**3, 8)))
print("radical roots u:", np.round(c9_u_radicals(), 8))

# %% [markdown]
# The line at infinity touches the curve once, with multiplicity two.

# %%
top = next(rec for rec in recs if rec.exact)
print(top.line.coords, tangency_points(curve, top))

# %%
worst = max(rec.residual for rec in recs)
print(f"largest square residual {worst:.2e}")
