"""A smooth canonical field that is not the derivative of anything.

The field H(m, x) = (phi(x) - <phi, m>) <psi, m> is as regular as one could
ask and integrates to zero against every measure, yet no function on measure
space has it as a derivative. The obstruction is a symmetry every genuine
derivative obeys:

    dH_x(m, y) - H(m, x) = dH_y(m, x) - H(m, y).

Integrating H anyway produces an antiderivative whose closed form is a
symmetrized blend of phi and psi, visibly different from H. The report
quantifies all three gaps.
"""

import math

from wasserstein_calculus import (
    antiderivative,
    counterexample_closed_antiderivative,
    counterexample_field,
    counterexample_report,
    cos_fn,
    dirac,
    sin_fn,
    symmetry_residual,
)

phi, psi = sin_fn(), cos_fn()
H = counterexample_field(phi, psi)

print("== the symmetry defect at a pinned point ==")
r = symmetry_residual(H, dirac(0.0), math.pi / 2.0, math.pi)
print(f"residual at (delta_0, pi/2, pi) = {r:+.12f}   (closed form: -2)")

print("\n== quadrature matches the closed-form antiderivative ==")
F_quad = antiderivative(H, quad_order=32)
F_closed = counterexample_closed_antiderivative(phi, psi)
for point in (0.5, 1.0, 2.0):
    m = dirac(point)
    print(
        f"  delta_{point}: quadrature {F_quad(m):+.12f}   closed {F_closed(m):+.12f}"
    )

print("\n== but the derivative of F is NOT H ==")
report = counterexample_report(phi, psi, K=math.pi, samples=100, seed=0)
print(f"  quadrature vs closed antiderivative: {report['quadrature_vs_closed_max']:.3e}")
print(f"  built derivative vs closed derivative: {report['built_derivative_vs_closed_max']:.3e}")
print(f"  closed derivative vs the field H:      {report['closed_derivative_vs_field_max']:.3f}")
print(f"  symmetry residual max:                 {report['symmetry_max']:.3f}")
print(f"  verdict: {report['verdict']}")
