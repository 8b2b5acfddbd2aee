"""PFA force across the three temperature regimes.

At fixed a = 0.01, r = 1 the temperature sweeps through rT < 1 (zero-T
like), aT < 1 < rT (medium) and aT > 1 (classical).  The closed-form
asymptotic force of each regime is printed next to the numerical PFA
integral.

    python demos/thermal_regimes.py
"""
from cylplate import asymptotics as asy
from cylplate.pfa import PfaOrder, pfa_asymptotic, pfa_force
from cylplate.geometry import CylinderPlate

print(f"{'T':>8} {'regime':>7} {'PFA numeric':>14} {'closed form':>14} {'ratio':>8}")
for T in (0.1, 0.5, 5.0, 20.0, 50.0, 300.0, 1000.0):
    s = CylinderPlate(0.01, 1.0, 1.0, T)
    regime = asy.regime_diagnostics(s)["regime"]
    closed = pfa_asymptotic(s, regime, asy.Quantity.FORCE, PfaOrder.WITH_THERMAL).value
    num = pfa_force(s)
    print(f"{T:8g} {regime.value:>7} {num:14.6e} {closed:14.6e} {num / closed:8.4f}")

# near the regime boundaries (rT ~ 1, aT ~ 1) neither expansion is accurate
