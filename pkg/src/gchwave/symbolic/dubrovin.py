"""Small-dispersion expansion and the deformed-Hamiltonian matching conditions.

The rescaled equation

    (1 - eps^2 D^2) u_t = -(3/2 u u_x + alpha u_x + beta u^2 u_x + gamma u^3 u_x)
                          + eps^2 (u_x u_xx + u u_xxx / 2 - Gamma u_xxx)

is rewritten for v = (1 - eps^2 D^2)^{1/2} u, giving v_t = S^{-1} M(S^{-1} v)
with S^{-1} = (1 - eps^2 D^2)^{-1/2}.  (The time orientation is the one in
which the leading term is -(F00 + H0), matching the Hamiltonian form
v_t = -D_x delta H_f / delta v.)  Each order in eps is then compared with the
flow of the deformed density h_f.
"""
from __future__ import annotations

from fractions import Fraction

from .jet import (J, JetPoly, P, euler_op, fn, integrate_x, partial, solve_linear,
                  total_x, total_x_n)

EPS = "eps"
ALPHA, BETA, GAMMA, GAMMA_BIG = P("alpha"), P("beta"), P("gamma"), P("Gamma")
V = J("v", 0)


def helmholtz_power_coeffs(exponent: Fraction, order: int) -> list:
    """Coefficients a_k with (1 - eps^2 D^2)^exponent = sum a_k eps^{2k} D^{2k}.

    Binomial series of (1 - x)^exponent: a_k = (-1)^k binom(exponent, k).
    """
    exponent = Fraction(exponent)
    out, a = [], Fraction(1)
    for k in range(order // 2 + 1):
        out.append(a)
        a = a * (k - exponent) / (k + 1)
    return out


def apply_series(coeffs, p: JetPoly, order: int = 4) -> JetPoly:
    e = P(EPS)
    out = JetPoly()
    for k, a in enumerate(coeffs):
        if 2 * k > order:
            break
        out = out + a * e ** (2 * k) * total_x_n(p.truncate(EPS, order - 2 * k), 2 * k)
    return out.truncate(EPS, order)


def eps_coeff(p: JetPoly, k: int) -> JetPoly:
    return p.coeff(EPS, k)


def _params(beta=None, gamma=None):
    b = BETA if beta is None else JetPoly.const(beta)
    g = GAMMA if gamma is None else JetPoly.const(gamma)
    return b, g


def expand_to_v(order: int = 4, beta=None, gamma=None) -> JetPoly:
    """Right-hand side of v_t through eps^order (order in {0, 2, 4})."""
    if order not in (0, 2, 4):
        raise ValueError("supported truncation orders are 0, 2 and 4")
    beta_, gamma_ = _params(beta, gamma)
    e = P(EPS)
    sinv = helmholtz_power_coeffs(Fraction(-1, 2), order)
    u = apply_series(sinv, V, order)
    u1 = total_x(u)
    u2 = total_x(u1)
    u3 = total_x(u2)
    trunc = lambda p: p.truncate(EPS, order)
    lead = Fraction(3, 2) * u * u1 + ALPHA * u1 + beta_ * trunc(u * u * u1) \
        + gamma_ * trunc(trunc(u * u * u) * u1)
    disp = e**2 * (u1 * u2 + Fraction(1, 2) * u * u3 - GAMMA_BIG * u3)
    m = trunc(-lead + trunc(disp))
    return apply_series(sinv, m, order)


# -- the named pieces of the expansion, with the eps^4 pieces recomputed --

def named_terms(beta=None, gamma=None) -> dict:
    """F00, F01, F10, F11, F02, H0, H1 as printed; H2 from the expansion itself."""
    beta_, gamma_ = _params(beta, gamma)
    v = [J("v", k) for k in range(6)]
    F00 = Fraction(3, 2) * v[0] * v[1]
    F01 = Fraction(3, 4) * (v[0] * v[3] + v[1] * v[2])
    F10 = Fraction(1, 2) * (v[0] * v[3] + 2 * v[1] * v[2])
    F11 = Fraction(1, 4) * (v[0] * v[5] + 2 * v[1] * v[4] + 3 * v[2] * v[3])
    F02 = Fraction(3, 16) * (3 * v[0] * v[5] + 3 * v[1] * v[4] + 2 * v[2] * v[3])
    H0 = ALPHA * v[1] + beta_ * v[0] ** 2 * v[1] + gamma_ * v[0] ** 3 * v[1]
    H1 = (GAMMA_BIG * v[3] + ALPHA / 2 * v[3]
          + beta_ / 2 * (v[0] ** 2 * v[3] + 2 * v[0] * v[1] * v[2])
          + gamma_ / 2 * (3 * v[0] ** 2 * v[1] * v[2] + v[0] ** 3 * v[3]))
    return dict(F00=F00, F01=F01, F10=F10, F11=F11, F02=F02, H0=H0, H1=H1)


def printed_h2(beta=None, gamma=None) -> JetPoly:
    """H2 exactly as printed (its beta and gamma parts disagree with the expansion)."""
    beta_, gamma_ = _params(beta, gamma)
    v = [J("v", k) for k in range(6)]
    return ((GAMMA_BIG / 2 + Fraction(3, 8) * ALPHA) * v[5]
            + beta_ / 8 * (3 * v[0] ** 3 * v[5] + 4 * v[0] * v[2] * v[3]
                           + 6 * v[0] * v[1] * v[4] + 2 * v[1] * v[2] ** 2)
            + gamma_ / 8 * (3 * v[0] ** 3 * v[5] + 9 * v[0] ** 2 * v[1] * v[4]
                            + 3 * v[0] * v[1] * v[2] ** 2))


def derived_h2(beta=None, gamma=None) -> JetPoly:
    """H2 as forced by the eps^4 coefficient of u^k u_x under u = S^{-1} v."""
    beta_, gamma_ = _params(beta, gamma)
    sinv = helmholtz_power_coeffs(Fraction(-1, 2), 4)
    u = apply_series(sinv, V, 4)
    u1, u3 = total_x(u), total_x_n(u, 3)
    part = (ALPHA * u1 + GAMMA_BIG * P(EPS) ** 2 * u3 + beta_ * u * u * u1
            + gamma_ * u * u * u * u1).truncate(EPS, 4)
    return eps_coeff(part, 4)


def bracket(order: int, beta=None, gamma=None, h2: JetPoly | None = None) -> JetPoly:
    """The bracket multiplying -eps^order in the v_t expansion."""
    t = named_terms(beta, gamma)
    D2 = lambda p: total_x_n(p, 2)
    if order == 0:
        return t["F00"] + t["H0"]
    if order == 2:
        return t["F01"] - t["F10"] + t["H1"] + D2(t["F00"] + t["H0"]) / 2
    if order == 4:
        h2 = derived_h2(beta, gamma) if h2 is None else h2
        return (t["F02"] - t["F11"] + h2 + D2(t["F01"] - t["F10"] + t["H1"]) / 2
                + Fraction(3, 8) * total_x_n(t["F00"] + t["H0"], 4))
    raise ValueError("order must be 0, 2 or 4")


# -- the deformed Hamiltonian density ------------------------------------------

def dv(p: JetPoly, k: int = 1) -> JetPoly:
    """k-th derivative with respect to the field value v_0 (chain rule on symbols)."""
    for _ in range(k):
        p = partial(p, "v_0")
    return p


def deformed_density(f: JetPoly, c: JetPoly, p: JetPoly, s: JetPoly) -> JetPoly:
    """h_f through eps^4; f, c, p, s are functions of v_0 (polynomials or symbols)."""
    v1, v2 = J("v", 1), J("v", 2)
    e2 = P(EPS) ** 2
    f3, f4, f5, f6 = (dv(f, k) for k in (3, 4, 5, 6))
    c1, c2 = dv(c, 1), dv(c, 2)
    quartic = (-(c * c2 / 1152 * f4 + c * c1 / 1152 * f5 + c * c / 3456 * f6)
               + dv(p, 1) / 6 * f4 + p / 6 * f5 - s * f3)
    return (f - e2 * c / 24 * f3 * v1**2
            + e2 * e2 * ((p * f3 + c * c / 480 * f4) * v2**2 + quartic * v1**4))


def hamiltonian_flow(h: JetPoly) -> JetPoly:
    """v_t = -D_x delta H / delta v."""
    return -total_x(euler_op(h, "v"))


def dubrovin_residuals(f, c, p, s, beta=None, gamma=None) -> dict:
    """{0, 2, 4: eps^k coefficient of (expansion - Hamiltonian flow)}."""
    diff = expand_to_v(4, beta, gamma) - hamiltonian_flow(deformed_density(f, c, p, s))
    diff = diff.truncate(EPS, 4)
    return {k: eps_coeff(diff, k) for k in (0, 2, 4)}


# -- solving modes ----------------------------------------------------------------

def _ansatz(name: str, degree: int, lowest: int = 0):
    unknowns = [f"{name}[{k}]" for k in range(lowest, degree + 1)]
    poly = sum((P(u) * V**k for u, k in zip(unknowns, range(lowest, degree + 1))), JetPoly())
    return poly, unknowns


def _jet_vars(var: str) -> bool:
    return var.startswith("v_")


def _coefficient_equations(res: JetPoly) -> list:
    return list(res.collect(_jet_vars).values())


def solve_order0(beta=None, gamma=None):
    """Polynomial f (no constant or linear part) matching the eps^0 flow."""
    f, unknowns = _ansatz("f", 5, lowest=2)
    zero = JetPoly()
    res = dubrovin_residuals(f, zero, zero, zero, beta, gamma)[0]
    sol, left = solve_linear(_coefficient_equations(res), unknowns)
    return f.subs(sol), left


def expected_f(beta=None, gamma=None) -> JetPoly:
    beta_, gamma_ = _params(beta, gamma)
    return V**3 / 4 + ALPHA / 2 * V**2 + beta_ / 12 * V**4 + gamma_ / 20 * V**5


def order2_system(beta=None, gamma=None):
    """The integrated eps^2 matching condition with c left as a free function.

    Returns (coefficient of v_2, coefficient of v_1^2), each a polynomial in
    v_0, c(v) and c'(v) that must vanish.
    """
    f = expected_f(beta, gamma)
    c = P(fn("c"))
    zero = JetPoly()
    flow2 = eps_coeff(expand_to_v(2, beta, gamma), 2)
    h2 = eps_coeff(deformed_density(f, c, zero, zero), 2)
    # -D_x E(h) = flow  <=>  E(h) + D_x^{-1} flow = 0
    integrated = euler_op(h2, "v") + integrate_x(flow2)
    return integrated.coeff("v_2", 1).coeff("v_1", 0), integrated.coeff("v_1", 2).coeff("v_2", 0)


def c_v2_condition(beta=None, gamma=None) -> JetPoly:
    """(gamma/4 v^2 + beta/6 v + 1/8) c - (gamma v^3 + beta v^2 + v + Gamma + alpha)."""
    beta_, gamma_ = _params(beta, gamma)
    c = P(fn("c"))
    return ((gamma_ / 4 * V**2 + beta_ / 6 * V + Fraction(1, 8)) * c
            - (gamma_ * V**3 + beta_ * V**2 + V + GAMMA_BIG + ALPHA))


def c_v1sq_condition(beta=None, gamma=None) -> JetPoly:
    """v_1^2 condition: one half of the v-derivative of the v_2 condition."""
    beta_, gamma_ = _params(beta, gamma)
    c, c1 = P(fn("c")), P(fn("c", 1))
    return ((Fraction(1, 16) + beta_ / 12 * V + gamma_ / 8 * V**2) * c1
            + (beta_ / 12 + gamma_ / 4 * V) * c
            - (Fraction(1, 2) + beta_ * V + Fraction(3, 2) * gamma_ * V**2))


def solve_order2(degree: int = 3, beta=None, gamma=None):
    """Polynomial ansatz for c; returns (solution, consistency conditions)."""
    f = expected_f(beta, gamma)
    c, unknowns = _ansatz("c", degree)
    zero = JetPoly()
    res = dubrovin_residuals(f, c, zero, zero, beta, gamma)[2]
    sol, left = solve_linear(_coefficient_equations(res), unknowns)
    return c.subs(sol), left


def _univariate(p: JetPoly, var: str) -> list:
    """Rational coefficient list (lowest power first) of a polynomial in one variable."""
    out = [Fraction(0)] * (p.degree(var) + 1)
    for k in range(len(out)):
        out[k] = p.coeff(var, k).const_value()
    return out


def _poly_gcd(a: list, b: list) -> list:
    def trim(x):
        while x and x[-1] == 0:
            x = x[:-1]
        return x
    a, b = trim(a), trim(b)
    while b:
        r = list(a)
        while len(r) >= len(b) and r:
            q = r[-1] / b[-1]
            shift = len(r) - len(b)
            for i, c in enumerate(b):
                r[shift + i] -= q * c
            r = trim(r[:-1] if r[-1] == 0 else r)
        a, b = b, r
    return a


def _weighted_exclusion(coeffs, t1: str, t2: str):
    """If every condition is weighted-homogeneous under t2 ~ t1^w, test t1 != 0.

    Substituting t2 = lam * t1^w turns each condition into t1^k q(lam); t1 != 0
    then needs a common root of all q, so a constant gcd forces t1 = 0.
    Returns True when t1 = 0 is forced.
    """
    for w in range(1, 5):
        qs = []
        for x in coeffs:
            mons = [dict(m) for m in x.terms]
            if len({m.get(t1, 0) + w * m.get(t2, 0) for m in mons}) != 1:
                break
            lam = JetPoly({(("lam", m.get(t2, 0)),) if m.get(t2, 0) else (): c
                           for m, c in zip(mons, x.terms.values())})
            qs.append(_univariate(lam, "lam"))
        else:
            g = qs[0]
            for q in qs[1:]:
                g = _poly_gcd(g, q)
            return len(g) == 1
    return False


def forced_parameters(conditions, generic=("alpha", "Gamma"), targets=("beta", "gamma")):
    """Values of `targets` forced by conditions holding identically in `generic`.

    Each condition is split by monomials in the generic parameters; every
    coefficient must vanish.  A nonzero constant coefficient makes the system
    inconsistent (returned as None).  A coefficient k * t^j in a single
    target forces t = 0; failing that, a weighted-homogeneous pair of targets
    is tested for nonzero solutions.  Forced zeros are substituted and the
    search repeated.  Returns (forced, remaining coefficient polynomials).
    """
    forced: dict = {}
    polys = [c for c in conditions if not c.is_zero()]
    while True:
        coeffs = []
        for c in polys:
            coeffs += [x for x in c.collect(set(generic)).values() if not x.is_zero()]
        if any(x.is_const() for x in coeffs):
            return None, coeffs
        live = [t for t in targets if t not in forced]
        hit = None
        for x in coeffs:
            if len(x) == 1:
                (mono, _), = x.terms.items()
                vars_ = {v for v, _ in mono}
                if len(vars_) == 1 and vars_ <= set(live):
                    hit = vars_.pop()
                    break
        if hit is None and len(live) == 2 and coeffs:
            for t1, t2 in (live, live[::-1]):
                if _weighted_exclusion(coeffs, t1, t2):
                    hit = t1
                    break
        if hit is None:
            return forced, coeffs
        forced[hit] = 0
        polys = [c.subs({hit: JetPoly.const(0)}) for c in polys]
        polys = [c for c in polys if not c.is_zero()]


def solve_order4():
    """With beta = gamma = 0 and c = 8(v + alpha + Gamma): solve for p, s (degree 2)."""
    f = expected_f(0, 0)
    c = 8 * (V + ALPHA + GAMMA_BIG)
    p, pu = _ansatz("p", 2)
    s, su = _ansatz("s", 2)
    res = dubrovin_residuals(f, c, p, s, 0, 0)[4]
    sol, left = solve_linear(_coefficient_equations(res), pu + su)
    return p.subs(sol), s.subs(sol), left


def deformation_solution():
    """(f, c, p, s) for beta = gamma = 0."""
    return (expected_f(0, 0), 8 * (V + ALPHA + GAMMA_BIG), (V + ALPHA + GAMMA_BIG) / 3, JetPoly())
