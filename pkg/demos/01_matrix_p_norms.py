"""Operator norms of matrices acting between finite ell^p spaces.

For p in {1, 2, inf} the operator norm has a closed form (max column sum,
largest singular value, max row sum).  For every other exponent there is
no formula, so the package runs a dual power iteration from many random
starts and returns the best certified lower bound together with the unit
vector that attains it.
"""

import numpy as np

from lpalg import adjoint, as_exponent, pnorm_estimate, pnorm_exact, vector_pnorm

rng = np.random.default_rng(2024)
a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))

print("matrix: 4 x 4 complex, seeded")
print()

print("closed forms")
for p in (1, 2, np.inf):
    print(f"  ||a||_{p:<3} = {pnorm_exact(a, p):.12f}")
print()

print("estimates (dual power iteration, certified by a witness vector)")
for p in (1.25, 1.5, 2.5, 3.0):
    est = pnorm_estimate(a, p, rng=np.random.default_rng(7))
    attained = vector_pnorm(a @ est.witness, p)
    print(f"  ||a||_{p:<4} = {est.value:.12f}   witness attains {attained:.12f}"
          f"   converged={est.converged}")
print()

# The norm of the adjoint with respect to the conjugate exponent q
# (1/p + 1/q = 1) equals the norm of a: estimating both sides gives a
# strong consistency check on the iteration.
print("duality: ||a||_p == ||a*||_q")
for p in (1.5, 3.0):
    q = as_exponent(p).q
    lhs = pnorm_estimate(a, p, rng=np.random.default_rng(11)).value
    rhs = pnorm_estimate(adjoint(a), q, rng=np.random.default_rng(13)).value
    print(f"  p={p}: {lhs:.12f} vs q={q:.3f}: {rhs:.12f}   gap {abs(lhs - rhs):.2e}")
