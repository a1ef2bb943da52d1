"""Structure equations of the pseudo-spherical triplet in comoving coordinates.

In (tau, chi) = (t, x - Gamma t) the triplet is written with n = v - v_chichi
kept as its own jet base so that D_tau only ever meets n.  Residuals are
reported with n expanded back into v-jets and eta^2 rewritten as
2 + 2b + alpha + Gamma.
"""
from __future__ import annotations

from dataclasses import dataclass

from .jet import J, JetPoly, OneForm, P, TwoForm, exterior_d, jet, total_x, wedge

ALPHA, GAMMA_BIG, B, ETA = P("alpha"), P("Gamma"), P("b"), P("eta")
TAU_BASES = {"n": "ntau"}


def eta_squared() -> JetPoly:
    return 2 + 2 * B + ALPHA + GAMMA_BIG


def triplet(sign: int = 1):
    """theta_1, theta_2, theta_3 for the upper (+1) or lower (-1) sign choice."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    s = sign
    n, v, v1 = J("n", 0), J("v", 0), J("v", 1)
    th1 = OneForm(n + B, -((v + GAMMA_BIG) * n + (B + 1) * v + B * (GAMMA_BIG + 1) - s * ETA * v1))
    th2 = OneForm(ETA, -(ETA * (1 + v + GAMMA_BIG) - s * v1))
    th3 = OneForm(s * (n + B + 1),
                  ETA * v1 - s * ((v + GAMMA_BIG) * (n + 1) + (v + 1) * (B + 1) + GAMMA_BIG * B))
    return th1, th2, th3


@dataclass(frozen=True)
class PdeRule:
    """n_tau rewritten as a differential polynomial in v."""

    rhs: JetPoly

    @classmethod
    def family(cls) -> "PdeRule":
        """n_tau = -v n_chi - 2 v_chi n + alpha v_chi + Gamma v_chichichi."""
        n, n1 = J("n", 0), J("n", 1)
        v, v1, v3 = J("v", 0), J("v", 1), J("v", 3)
        return cls(expand_n(-v * n1 - 2 * v1 * n + ALPHA * v1 + GAMMA_BIG * v3))

    def apply(self, p: JetPoly) -> JetPoly:
        top = max((int(x.rsplit("_", 1)[1]) for x in p.variables() if x.startswith("ntau_")),
                  default=-1)
        mapping, cur = {}, self.rhs
        for k in range(top + 1):
            mapping[jet("ntau", k)] = cur
            cur = total_x(cur)
        return p.subs(mapping)

    def lhs_minus_rhs(self) -> JetPoly:
        return J("ntau", 0) - self.rhs


def expand_n(p: JetPoly) -> JetPoly:
    """Replace n_k by v_k - v_{k+2}."""
    top = max((int(x.rsplit("_", 1)[1]) for x in p.variables() if x.startswith("n_")), default=-1)
    return p.subs({jet("n", k): J("v", k) - J("v", k + 2) for k in range(top + 1)})


def normalize(p: JetPoly) -> JetPoly:
    return expand_n(p).reduce_power("eta", 2, eta_squared())


def structure_residuals(sign: int = 1) -> dict:
    """Raw residuals d theta_i - (prescribed wedge), as dchi^dtau coefficients."""
    th1, th2, th3 = triplet(sign)
    d = lambda w: exterior_d(w, TAU_BASES)
    raw = {
        "d1": d(th1) - wedge(th3, th2),
        "d2": d(th2) - wedge(th1, th3),
        "d3": d(th3) - wedge(th1, th2),
    }
    return {k: normalize(w.C) for k, w in raw.items()}


def pss_residuals(sign: int = 1, rule: PdeRule | None = None) -> dict:
    """{name: (raw, reduced)} for the three structure equations."""
    rule = rule or PdeRule.family()
    raw = structure_residuals(sign)
    return {k: (r, normalize(rule.apply(r))) for k, r in raw.items()}


def gamma_zero_triplet(sign: int = 1):
    """The triplet with Gamma = 0, in the original (t, x) form with m = u - u_xx."""
    sub = {"Gamma": JetPoly.const(0)}
    return tuple(OneForm(w.A.subs(sub), w.B.subs(sub)) for w in triplet(sign))
