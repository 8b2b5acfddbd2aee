"""Extract first-order coefficients from exact-engine sweeps.

A sweep over eps = 0.1, 0.2, 0.3 is cheap; fitting leading * (1 + c eps)
on it shows how strongly the linear fit is pulled by the eps^2 term when
eps is not small.  The same fit through the CLI is

    cylplate compute --a-sweep 0.1,0.2,0.3 --r 1 --methods exact --out sweep.csv
    cylplate fit --input sweep.csv

    python demos/fit_first_order.py
"""
from cylplate.cli import RunSpec, compute_rows, fit_correction

spec = RunSpec(a=(0.1, 0.2, 0.3), r=1.0, methods=("exact",))
rows = compute_rows(spec)
for quadratic in (False, True):
    res = fit_correction(rows, quantity="energy", quadratic=quadratic)
    label = "c + d eps" if quadratic else "c only"
    print(f"{label:10s} c = {res.c:.4f} +/- {res.stderr:.4f}")
print("target 7/36 =", round(7 / 36, 4))
