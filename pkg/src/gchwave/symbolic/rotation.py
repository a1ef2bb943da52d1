"""Coefficient map from the rotation model onto the four-parameter family.

The rotation model is written with free symbols for its four combined
coefficients: c, r = beta0/beta_f, w1 = omega1/alpha_f^2, w2 = omega2/alpha_f^3.
"""
from __future__ import annotations

from fractions import Fraction

from .hamiltonian import equation_rhs, momentum
from .jet import J, JetPoly, P, total_x

ROT_C, ROT_R, ROT_W1, ROT_W2 = P("rot_c"), P("rot_r"), P("rot_w1"), P("rot_w2")

COEFFICIENT_MAP = {
    "alpha": -ROT_C,
    "Gamma": ROT_R,
    "beta": -ROT_W1,
    "gamma": -ROT_W2,
}


def rotation_rhs() -> JetPoly:
    """m_t solved from the rotation model."""
    u, u1, u3 = J("u", 0), J("u", 1), J("u", 3)
    m = momentum()
    return (-u * total_x(m) - 2 * u1 * m - ROT_C * u1 + ROT_R * u3
            - ROT_W1 * u**2 * u1 - ROT_W2 * u**3 * u1)


def gch_rhs() -> JetPoly:
    """m_t = -(u + Gamma) m_x - 2 u_x m + D h(u)."""
    u, u1 = J("u", 0), J("u", 1)
    m = momentum()
    h = ((P("alpha") + P("Gamma")) * u + Fraction(1, 3) * P("beta") * u**3
         + Fraction(1, 4) * P("gamma") * u**4)
    return -(u + P("Gamma")) * total_x(m) - 2 * u1 * m + total_x(h)


def mapping_residual() -> JetPoly:
    return rotation_rhs() - equation_rhs().subs(COEFFICIENT_MAP)


def flux_form_residual() -> JetPoly:
    return gch_rhs() - equation_rhs()
