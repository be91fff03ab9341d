"""Deciding separability from the eigenvalues alone.

Run with ``python demos/01_spectral_check.py``.
"""

# %% [markdown]
# A qubit-qudit state is separable for every choice of eigenbasis exactly when
# its sorted eigenvalues satisfy l1 <= l(2n-1) + 2 sqrt(l(2n-2) l(2n)).
# The state below sits right on the boundary of that region.

# %%
import numpy as np

from sepspec import abs_sep_condition, gurvits_barnum_ball, spectrum_of
from sepspec.states import BipartiteDensityMatrix, is_ppt

rho = BipartiteDensityMatrix(
    np.array([[1, 0, 0, 0], [0, 3, 2, 0], [0, 2, 3, 0], [0, 0, 0, 4]]) / 11, 2, 2
)
spec = spectrum_of(rho)
print("eigenvalues * 11:", np.round(spec.values * 11, 12))

report = abs_sep_condition(spec)
print(f"lhs={report.lhs:.6f} rhs={report.rhs:.6f} margin={report.margin:.2e} holds={report.holds}")

# %% [markdown]
# The purity ball around I/N is a weaker sufficient test. This state is
# outside it even though the spectral condition holds.

# %%
ball = gurvits_barnum_ball(spec)
print(f"purity={ball.lhs:.4f} radius={ball.rhs:.4f} inside ball: {ball.holds}")
print("PPT in the given basis:", is_ppt(rho))

# %% [markdown]
# Moving weight from the second eigenvalue to the first pushes the spectrum
# out of the region, and the report flips.

# %%
for eps in (0.0, 0.01, 0.05):
    lam = spec.values.copy()
    lam[0] += eps
    lam[1] -= eps
    print(f"eps={eps:.2f} margin={abs_sep_condition(lam).margin:+.4f}")
