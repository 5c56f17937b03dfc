"""
Where can solitary waves live?
==============================

Sufficient conditions for existence depend on the sign of beta and on how
the speed sits relative to the linear phase velocities.
"""
from __future__ import annotations

import numpy as np

from rotwave import ModelParams, classify_existence, linear_dispersion_m, phase_velocity
from rotwave.analysis import c_star, discriminants, z_plus

for beta, c in [(-1.0, -0.5), (-1.0, 1.5), (2.0, -1.5), (1.0, 0.5), (1.0, 2.0)]:
    v = classify_existence(ModelParams(beta=beta), c)
    print(f"beta = {beta:+.1f}, c = {c:+.2f}:  case {v.matched_case.value:<4}  admissible = {v.admissible}")

# The two speed thresholds.  As beta shrinks to zero z+ approaches c*.
print(f"\nc* = {c_star(1.0, 1.0)}")
for b in (1.0, 0.1, 1e-3, 1e-6):
    print(f"z+(beta = {b:g}) = {z_plus(b, 1.0, 1.0):.8f}")

# %%
# Phase velocity tables for two parameter sets.  A = 4 delta - beta and
# B = beta^3 - gamma A^2 decide whether the phase velocity has an
# interior maximum that a wave speed could resonate with.
k = np.array([0.25, 0.5, 1.0, 1.5, 2.0, 3.0])
for beta in (2.0, 1.0):
    p = ModelParams(alpha=0.5, beta=beta, gamma=0.5, delta=1.0)
    A, B = discriminants(p)
    print(f"\nalpha = gamma = 1/2, beta = {beta}, delta = 1:  A = {A:g}, B = {B:g}")
    print("   k      m(k)    c_p(k)")
    for kk, m, cp in zip(k, linear_dispersion_m(p, k), phase_velocity(p, k)):
        print(f"{kk:5.2f} {m:9.4f} {cp:9.4f}")
