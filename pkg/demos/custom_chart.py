"""Define a metric in a chart file and run the classifier and checks on it.

Chart files declare coordinates, parameters, metric components as
expressions and a sampling box; derivatives come from hyper-dual numbers,
so no symbolic algebra is involved.
"""

from __future__ import annotations

import tempfile
from pathlib import Path

from curvlab.cli import main

CHART = """\
name = twisted-product
coords = t, r, u, v
param a = 0.4
g[t,t] = -(1 + a*r**2)
g[r,r] = 1
g[u,u] = exp(2*a*t) * (1 + r**2)
g[v,v] = exp(2*a*t) * (1 + r**2)
range t = -1, 1
range r = 0.2, 2
"""

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "twisted.chart"
    path.write_text(CHART)
    # %% classification at five points
    main(["report", "--chart-file", str(path), "--points", "5"])
    # %% the algebraic identities that hold at every point
    main(["verify", "--chart-file", str(path), "--points", "5", "--only", "kn", "--only", "q", "--only", "weyl"])
