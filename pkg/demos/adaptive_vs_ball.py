"""
Adaptive stopping versus a fixed-budget ball solver
===================================================

The adaptive solver reads how far to sample off the decay of the data
itself.  The ball solver needs an a-priori norm radius and always pays
for the worst input of that norm, even when the actual input is much
nicer.
"""

import numpy as np

from adaptlin import (ConeParams, Partition, Problem, SingularSpectrum,
                      adaptive_algorithm, ball_algorithm, random_cone_member,
                      true_error)

# A concrete problem: lam_i = 1/i^2, blocks doubling at 1, 2, 4, 8, ...
problem = Problem(SingularSpectrum.algebraic(1.0, 2.0),
                  Partition.doubling(1),
                  ConeParams(2.0, 0.5))

# Draw an input whose block norms decay steadily by construction.
rng = np.random.default_rng(42)
f = random_cone_member(problem, rng, blocks=12)
rho = f.norm()
print(f"input norm          {rho:.6f}")

print(f"{'epsilon':>10} {'adaptive cost':>14} {'ball cost':>10} "
      f"{'adaptive error':>15} {'bound':>10}")
for epsilon in (0.3, 0.1, 0.03, 0.01, 0.003):
    adaptive = adaptive_algorithm(problem, f, epsilon)
    ball = ball_algorithm(problem, f, epsilon, rho)
    err = true_error(problem, f, adaptive)
    print(f"{epsilon:>10} {adaptive.cost:>14} {ball.cost:>10} "
          f"{err:>15.3e} {adaptive.error_bound:>10.3e}")

# The certified bound is always at or below the tolerance, and the true
# error sits below the bound whenever the input belongs to the cone.
