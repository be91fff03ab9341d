"""The block gap and the overlap difference along the rotation family.

Run with ``python demos/04_rotation_scan.py``. Writes ``rotation_scan.csv``
to the working directory for plotting.
"""

# %% [markdown]
# Rotating by t = 1 swaps the diagonal blocks, so the gap h takes the same
# value at both ends. The overlap difference f changes sign between them,
# which forces a zero crossing, and the gap is non-positive there.
#
# The boundary state used here has h > 0 at t = 0, so the rotation matters.

# %%
import numpy as np

from sepspec.decomposer import scan
from sepspec.io import write_scan_csv
from sepspec.states import BipartiteDensityMatrix

rho = BipartiteDensityMatrix(
    np.array([[1, 0, 0, 0], [0, 3, 2, 0], [0, 2, 3, 0], [0, 0, 0, 4]]) / 11, 2, 2
)
rows = scan(rho, grid=201)

t, h, f = (np.array([r[i] for r in rows]) for i in (0, 1, 2))
print(f"h(0) = {h[0]:.6e}, h(1) = {h[-1]:.6e}")
print(f"f(0) = {f[0]:+.6f}, f(1) = {f[-1]:+.6f}")
crossings = np.flatnonzero(np.sign(f[:-1]) != np.sign(f[1:]))
for k in crossings:
    print(f"f changes sign in [{t[k]:.3f}, {t[k + 1]:.3f}], h there = {min(h[k], h[k + 1]):.3e}")
print(f"min h = {h.min():.3e} at t = {t[np.argmin(h)]:.3f}")

# %%
with open("rotation_scan.csv", "w", newline="") as fh:
    write_scan_csv(rows, fh)
print("wrote rotation_scan.csv")
