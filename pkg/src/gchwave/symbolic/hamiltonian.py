"""Two Hamiltonian representations of the equation, checked as jet identities.

Representation one uses B1 = D(1 - D^2).  Since delta/delta m = Lambda^{-2}
delta/delta u, B1 delta H2/delta m collapses to D delta H2/delta u, so the
check is local.  Representation two applies B2 to delta H1/delta m = u; its
nonlocal pieces D^{-1}(u u_x) and D^{-1}(u^{3/2} u_x) are closed by exact
antidifferentiation, the second on the algebra of w with u = w^2.
"""
from __future__ import annotations

from fractions import Fraction

from .jet import J, JetPoly, P, euler_op, integrate_x, total_x, total_x_n

ALPHA, BETA, GAMMA, GAMMA_BIG = P("alpha"), P("beta"), P("gamma"), P("Gamma")


def _u(k: int, base: str = "u") -> JetPoly:
    return J(base, k)


def momentum(base: str = "u") -> JetPoly:
    return _u(0, base) - _u(2, base)


def equation_rhs(base: str = "u") -> JetPoly:
    """m_t as a differential polynomial in u."""
    u, u1, u3 = _u(0, base), _u(1, base), _u(3, base)
    m = momentum(base)
    return (-u * total_x(m) - 2 * u1 * m + ALPHA * u1 + BETA * u**2 * u1
            + GAMMA * u**3 * u1 + GAMMA_BIG * u3)


def h2_density() -> JetPoly:
    u, u1 = _u(0), _u(1)
    return (Fraction(1, 2) * u**3 + Fraction(1, 2) * u * u1**2 - Fraction(1, 2) * ALPHA * u**2
            - Fraction(1, 12) * BETA * u**4 - Fraction(1, 20) * GAMMA * u**5
            + Fraction(1, 2) * GAMMA_BIG * u1**2)


def displayed_h2() -> JetPoly:
    """The second functional's expression as displayed, read as delta H2/delta u."""
    u, u1, u2 = _u(0), _u(1), _u(2)
    return (Fraction(3, 2) * u**2 - u * u2 - Fraction(1, 2) * u1**2 - ALPHA * u
            - Fraction(1, 3) * BETA * u**3 - Fraction(1, 4) * GAMMA * u**4 - GAMMA_BIG * u2)


def h1_density() -> JetPoly:
    return Fraction(1, 2) * (_u(0) ** 2 + _u(1) ** 2)


def residual_first() -> dict:
    """{'density': E(h2) - displayed, 'flow': -D(displayed) - m_t}."""
    disp = displayed_h2()
    return {"density": euler_op(h2_density(), "u") - disp,
            "flow": -total_x(disp) - equation_rhs()}


def b2_local(f: JetPoly, base: str = "u") -> JetPoly:
    """D(m f) + m D f - alpha D f - Gamma D^3 f."""
    m = momentum(base)
    return total_x(m * f) + m * total_x(f) - ALPHA * total_x(f) - GAMMA_BIG * total_x_n(f, 3)


def residual_second_integer() -> JetPoly:
    """-B2 u - m_t with gamma = 0, on the integer-power algebra."""
    u, u1 = _u(0), _u(1)
    inner = integrate_x(u * u1, "u")
    b2u = b2_local(u) - Fraction(2, 3) * BETA * total_x(u * inner)
    return (-b2u - equation_rhs()).subs({"gamma": JetPoly.const(0)})


def w_substitution(max_order: int = 3) -> dict:
    """u_k -> D^k(w^2)."""
    out, cur = {}, J("w", 0) ** 2
    for k in range(max_order + 1):
        out[J("u", k).variables().pop()] = cur
        cur = total_x(cur)
    return out


def gamma_closure() -> JetPoly:
    """D^{-1}(u^{3/2} u_x) on the w-algebra, where u^{3/2} = w^3."""
    w = J("w", 0)
    u1 = w_substitution(1)["u_1"]
    return integrate_x(w**3 * u1, "w")


def residual_second_gamma() -> JetPoly:
    """gamma part of -B2 u - m_t, on the w-algebra."""
    w = J("w", 0)
    lhs = Fraction(5, 8) * GAMMA * total_x(w**3 * gamma_closure())
    rhs = GAMMA * (_u(0) ** 3 * _u(1)).subs(w_substitution(1))
    return lhs - rhs


def residual_second_full() -> JetPoly:
    """Whole -B2 u - m_t on the w-algebra."""
    sub = w_substitution(3)
    u = sub["u_0"]
    w = J("w", 0)
    inner_beta = integrate_x(u * sub["u_1"], "w")
    b2u = (b2_local(_u(0)).subs(sub) - Fraction(2, 3) * BETA * total_x(u * inner_beta)
           - Fraction(5, 8) * GAMMA * total_x(w**3 * gamma_closure()))
    return -b2u - equation_rhs().subs(sub)


def hamiltonian_pair_residual() -> dict:
    """Named residuals; every value is the zero polynomial when the pair holds."""
    first = residual_first()
    return {
        "first_density": first["density"],
        "first_flow": first["flow"],
        "second_integer": residual_second_integer(),
        "second_gamma": residual_second_gamma(),
        "second_full": residual_second_full(),
    }
