"""
Exact algebra behind the model
==============================

Every identity is checked on polynomials with rational coefficients, so a
pass means the residual is the zero polynomial, not a small number.
"""

from gchwave.symbolic import dubrovin, run
from gchwave.symbolic.jet import J, euler_op, total_x

# the jet calculus in two lines: D_x and the variational derivative
u0, u1 = J("u", 0), J("u", 1)
print("D_x(u u_x) =", total_x(u0 * u1))
print("E(u^3/2 + u u_x^2/2) =", euler_op(u0**3 / 2 + u0 * u1**2 / 2, "u"))

# the dispersionless limit fixes the leading density
f, _ = dubrovin.solve_order0()
print("\nleading density f(v) =", f)

# the next order admits a deformation only when beta = gamma = 0
_, left = dubrovin.solve_order2()
forced, _ = dubrovin.forced_parameters(left)
print("forced parameter values:", forced)

verdicts, timing = run(["all"])
print()
for v in verdicts:
    print(f"{v.identity:17s} {v.check:26s} {'PASS' if v.passed else 'FAIL'}")
print(f"\n{sum(v.passed for v in verdicts)}/{len(verdicts)} identities hold exactly")
