"""
A certified breaking wave
=========================

A narrow Gaussian with a weak linear term satisfies the breaking certificate.
The certificate predicts an upper bound on the breaking time and a Riccati
envelope that the steepest slope must stay below.  The run stops when the
front can no longer be resolved, well before the predicted bound.
"""

import numpy as np

from gchwave import breaking_certificate
from gchwave.harness.presets import scenario
from gchwave.harness.runner import run

cfg = scenario("steep-breaking")
grid, params = cfg.grid_spec(), cfg.model_params()

# the certificate only needs the initial data
cert = breaking_certificate(0.5 * np.exp(-(grid.x / 0.4) ** 2), params, grid)
print(f"certificate holds: {cert.holds}")
print(f"  y0 = {cert.y0:.4f} at x = {cert.x_star:.4f}")
print(f"  lhs {cert.lhs:.4f} < rhs {cert.rhs:.4f}, eps = {cert.eps:.4f}")
print(f"  breaking no later than t = {cert.t_bound:.3f}")

# halving the amplitude loses the certificate
weak = breaking_certificate(0.25 * np.exp(-(grid.x / 0.4) ** 2), params, grid)
print(f"half amplitude: holds = {weak.holds}")

res = run(cfg)
r = res.report
print(f"\nrun: {r['classification']} ({r['run']['message']}) at t = {r['run']['t_stop']:.3f}")

# slope against the envelope 1/y >= 1/y0 + eps t / 4
t, y = res.trajectory.series["t"], res.trajectory.series["min_ux"]
for i in np.linspace(0, len(t) - 1, 6).astype(int):
    env = 1.0 / (1.0 / cert.y0 + cert.eps * t[i] / 4)
    print(f"t = {t[i]:6.3f}   min u_x = {y[i]:8.4f}   envelope {env:8.4f}")
