"""
Comparisons: no Hilbert term, and two pulses
============================================

Dropping the Hilbert term (beta = 0) leaves the Ostrovsky equation.  Its
waves are larger at the same speed.  With beta < 0 a bound pair of pulses
also exists, though it is reached only from a seed that already has two
bumps.
"""
from __future__ import annotations

from rotwave import Custom, Grid, ModelParams, NegativeSech, SolverConfig, compare_ostrovsky, solve
from rotwave.analysis import count_deep_minima

grid = Grid(128.0, 4096)
params = ModelParams(alpha=0.0, beta=1.0, gamma=1.0, delta=1.0)
for c in (0.1, 0.5, 0.9):
    _, _, rec = compare_ostrovsky(params, c, grid)
    print(f"c = {c}: beta = 1 gives [{rec.u_min:8.4f}, {rec.u_max:7.4f}],"
          f"  beta = 0 gives [{rec.u_min_ostrovsky:8.4f}, {rec.u_max_ostrovsky:7.4f}]")

# %%
pair = ModelParams(alpha=0.0, beta=-1.0, gamma=1.0, delta=1.0)
single, rep = solve(pair, 1.1, grid, SolverConfig(initial_guess=NegativeSech()))
print(f"\nsech seed: {rep.termination_reason.value}, deep minima = {count_deep_minima(single.values)},"
      f" u_min = {single.u_min:.4f}")

seed = NegativeSech(4.0, 1.0)(grid.x - 4.56) + NegativeSech(4.0, 1.0)(grid.x + 4.56)
cfg = SolverConfig(initial_guess=Custom(seed, center=0.0), relaxation=1.0, max_iter=4000, tol_residual=1e-8)
double, rep = solve(pair, 1.1, grid, cfg)
print(f"two-bump seed: {rep.termination_reason.value} after {rep.iterations} iterations,"
      f" deep minima = {count_deep_minima(double.values)}, residual {double.residual:.1e}")
