"""Regenerates lp_corpus.json with scipy's HiGHS as the reference solver."""
import json

import numpy as np
from scipy.optimize import linprog

rng = np.random.default_rng(20240611)
cases = []
for case in range(60):
    m, n = 20, 40
    A = rng.uniform(-1, 1, (m, n))
    b = rng.uniform(-1, 2, m) if case % 5 else rng.uniform(-6, -2, m)
    c = rng.uniform(-1, 1, n)
    lo, hi = [], []
    for j in range(n):
        kind = rng.choice(4, p=[0.1, 0.4, 0.1, 0.4])
        if kind == 0:
            lo.append(0.0); hi.append(None)
        elif kind == 1:
            a = rng.uniform(-2, 0); lo.append(a); hi.append(a + rng.uniform(0.5, 3))
        elif kind == 2:
            lo.append(None); hi.append(rng.uniform(0, 2))
        else:
            lo.append(-3.0); hi.append(3.0)
    res = linprog(c, A_ub=A, b_ub=b, bounds=list(zip(lo, hi)), method="highs")
    status = {0: "optimal", 2: "infeasible", 3: "unbounded"}[res.status]
    entry = {
        "c": c.tolist(), "A": A.tolist(), "b": b.tolist(),
        "lower": [("-inf" if v is None else v) for v in lo],
        "upper": [("inf" if v is None else v) for v in hi],
        "status": status,
    }
    if status == "optimal":
        entry["objective"] = float(res.fun)
        entry["x"] = res.x.tolist()
        entry["row_duals"] = res.ineqlin.marginals.tolist()
        entry["lower_duals"] = res.lower.marginals.tolist()
        entry["upper_duals"] = res.upper.marginals.tolist()
    cases.append(entry)

with open("lp_corpus.json", "w") as f:
    json.dump({"generator": "scipy.optimize.linprog(method='highs')", "cases": cases}, f)
print({s: sum(c["status"] == s for c in cases) for s in ("optimal", "infeasible", "unbounded")})
