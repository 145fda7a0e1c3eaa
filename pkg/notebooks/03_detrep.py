# %% [markdown]
# # Symmetric determinantal representation
#
# Write `x(x-y)(x-ry)(x-(1-r)y) - y z^3 = det(x I + y B + z C)` with
# `B = diag(0, -1, -r, r - 1)` and `C` complex symmetric.

# %%
from fractions import Fraction

import numpy as np

from quartics.detrep import residual_system, solve_c6
from quartics.parser import format_poly

for eq in residual_system():
    print(format_poly(eq))

# %%
sol = solve_c6(Fraction(1, 8))
np.set_printoptions(precision=4, suppress=True)
print(sol.C.to_complex())
print("branch", sol.branch, "residual", f"{sol.residual:.2e}")

# %% [markdown]
# The residual is measured by expanding the 4x4 determinant exactly in
# x, y, z and comparing coefficients with the curve.

# %%
for r in (Fraction(1, 3), Fraction(2, 5), Fraction(5, 9)):
    print(r, f"{solve_c6(r).residual:.2e}")
