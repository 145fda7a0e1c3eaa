# %% [markdown]
# # Dixmier invariants of cyclic quartics
#
# The family `y^3 = x(x-1)(x-r)(x-s)` carries an order-3 automorphism.  Here we
# compute its invariants symbolically in `r, s` and watch most of them vanish.

# %%
from fractions import Fraction

from quartics import dixmier_invariants, format_poly, make_curve
from quartics.dixmier import c6_relation_residual, cleared_c6_invariants
from quartics.polyring import variables

c3 = make_curve("C3")
print(format_poly(c3.poly))

# %%
inv = dixmier_invariants(c3)
for name, value in inv.as_dict().items():
    text = format_poly(value)
    print(f"{name}: {len(value)} terms  {text[:70]}{'...' if len(text) > 70 else ''}")

# %% [markdown]
# Only I9 and I18 survive.  Setting `s = 1 - r` lands on a one-parameter
# subfamily where I9 and I18 satisfy a single polynomial relation.

# %%
c6 = inv.substitute({"s": 1 - variables("r")[0]})
X, Y = cleared_c6_invariants(c6.I9, c6.I18)
print("I9 on the subfamily:", format_poly(c6.I9))
print("relation vanishes:", c6_relation_residual(X, Y).is_zero())

# %% [markdown]
# Numeric specialization is just substitution.

# %%
at = inv.substitute({"r": Fraction(2), "s": Fraction(3)})
print({k: format_poly(v) for k, v in at.as_dict().items()})
