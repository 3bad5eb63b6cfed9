"""Covariant representations of a group acting on a matrix algebra.

The regular covariant representation puts an algebra element on the
diagonal, twisted fiberwise by the action, and represents group elements
by translations.  The covariance relation v(t) pi(a) v(t)^-1 = pi(t.a)
holds to machine precision, the integrated form turns twisted convolution
into matrix multiplication, and compressing to the diagonal recovers the
identity coefficient exactly.
"""

import numpy as np

from lpalg import (
    CcElement,
    ConcreteAlgebra,
    CovariantRep,
    compress_identity_check,
    conditional_expectation,
    cyclic_coordinate_rotation,
    cyclic_group,
    random_cc_element,
    reduced_norm,
    twisted_convolve,
)

n = 6
carrier = cyclic_group(n)
action = cyclic_coordinate_rotation(n, 1)
rep = CovariantRep(ConcreteAlgebra(n), action, p=1.5)
rng = np.random.default_rng(5)

print(f"carrier: cyclic group of order {n}, action: coordinate rotation, p = 1.5")
print(f"represented on dimension {rep.dimension}")
print()

a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
devs = []
for t in range(n):
    vt = rep.v(t)
    lhs = vt @ rep.pi(a) @ vt.conj().T
    rhs = rep.pi(action.apply(t, a))
    devs.append(np.abs(lhs - rhs).max())
print(f"covariance deviation over all group elements: {max(devs):.3e}")

f = random_cc_element(rng, carrier, n)
g = random_cc_element(rng, carrier, n)
prod = rep.integrated(twisted_convolve(f, g, action))
direct = rep.integrated(f) @ rep.integrated(g)
print(f"integrated form is multiplicative: deviation {np.abs(prod - direct).max():.3e}")

check = compress_identity_check(rep, f)
print(f"diagonal compression recovers the identity coefficient:"
      f" deviation {check['max_abs_diff']:.3e}")
assert np.array_equal(conditional_expectation(f), f.coeff(0))

two_point = CcElement(carrier, {0: np.eye(n, dtype=complex),
                                1: np.eye(n, dtype=complex)})
est = reduced_norm(two_point, rep)
print(f"reduced norm of delta_0 + delta_1 (identity fibers): {est.value:.12f}")
