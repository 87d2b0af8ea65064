"""Hypersurfaces in space forms from their second fundamental tensor.

The curvature comes from the Gauss equation alone, so every quantity is
algebraic in H. The script tabulates the Weyl-vanishing test against
quasi-umbilicity and then evaluates the hypersurface identities on a
two-eigenvalue example.
"""

from __future__ import annotations

from collections import Counter

import numpy as np

from curvlab import hypersurface as hs

# %% C = 0 versus rank(H - alpha g) = 1 over seeded samples
table = hs.theorem_71_table(200, seed=0)
agree = Counter((r["kind"], r["quasi_umbilical"], r["weyl_vanishes"]) for r in table if not r["umbilical"])
for (kind, qu, wv), count in sorted(agree.items()):
    print(f"{kind:16s} quasi-umbilical={qu!s:5s} weyl-vanishes={wv!s:5s} x{count}")

# %% a two-eigenvalue hypersurface of the round 4-sphere
hd = hs.make_hypersurface(np.diag([0.0, 0.0, 1.3, 1.3]), eps=1, ambient_kappa=20.0, name="00aa")
out = hs.check_hyp_identities(hd)
print("\nverdict", out["verdict"], "in U_H", out["in_UH"])
for row in out["rows"]:
    res = "-" if row["residual"] is None else f"{row['residual']:.1e}"
    print(f"{row['check']:20s} {res:>9s}  {row['skipped'] or ''}")

# %% the pseudosymmetry function equals -(n-2) kt / (n(n+1))
n = hd.n
rep = hs.hyper_sample(hd).report
print("\nL fitted", rep.pseudo["L"].value, "expected", -(n - 2) * hd.ambient_kappa / (n * (n + 1)))
