"""Named identity checks with machine-readable verdicts."""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass

from . import dubrovin, hamiltonian, pss, rotation
from .jet import JetPoly


@dataclass(frozen=True)
class Verdict:
    identity: str
    check: str
    terms: int
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


def _zero(identity: str, check: str, poly: JetPoly) -> Verdict:
    return Verdict(identity, check, len(poly), poly.is_zero(), "" if poly.is_zero() else repr(poly))


def verify_pss() -> list:
    out = []
    rule = pss.PdeRule.family()
    for sign in (1, -1):
        res = pss.pss_residuals(sign, rule)
        for name, (_, reduced) in res.items():
            out.append(_zero("pss", f"{name}[{sign:+d}]", reduced))
        pde = pss.expand_n(rule.lhs_minus_rhs())
        raw3 = res["d3"][0]
        out.append(_zero("pss", f"raw_d3_vs_pde[{sign:+d}]", raw3 + sign * pde))
    return out


def verify_dubrovin() -> list:
    out = []
    f, left0 = dubrovin.solve_order0()
    out.append(_zero("dubrovin", "f_order0", f - dubrovin.expected_f()))
    out.append(Verdict("dubrovin", "f_order0_consistent", len(left0), not left0))
    v2, v1sq = dubrovin.order2_system()
    out.append(_zero("dubrovin", "c_v2_condition", v2 - dubrovin.c_v2_condition()))
    out.append(_zero("dubrovin", "c_v1sq_condition", v1sq - dubrovin.c_v1sq_condition()))
    _, left2 = dubrovin.solve_order2()
    forced, rest = dubrovin.forced_parameters(left2)
    ok = forced == {"beta": 0, "gamma": 0} and not rest
    out.append(Verdict("dubrovin", "forced_beta_gamma_zero", len(left2), ok, repr(forced)))
    p, s, left4 = dubrovin.solve_order4()
    f0, c0, p0, s0 = dubrovin.deformation_solution()
    out.append(_zero("dubrovin", "p_order4", p - p0))
    out.append(_zero("dubrovin", "s_order4", s - s0))
    for k, r in dubrovin.dubrovin_residuals(f0, c0, p0, s0, 0, 0).items():
        out.append(_zero("dubrovin", f"residual_eps{k}", r))
    return out


def verify_hamiltonian_pair() -> list:
    return [_zero("hamiltonian-pair", k, v) for k, v in hamiltonian.hamiltonian_pair_residual().items()]


def verify_rotation() -> list:
    return [_zero("rotation", "coefficient_map", rotation.mapping_residual()),
            _zero("rotation", "flux_form", rotation.flux_form_residual())]


IDENTITIES = {
    "pss": verify_pss,
    "dubrovin": verify_dubrovin,
    "hamiltonian-pair": verify_hamiltonian_pair,
    "rotation": verify_rotation,
}


def run(names=("all",)) -> tuple:
    """(verdicts, seconds per identity).  Unknown names raise KeyError."""
    names = list(IDENTITIES) if "all" in names else list(names)
    for n in names:
        if n not in IDENTITIES:
            raise KeyError(n)
    verdicts, timing = [], {}
    for n in names:
        t0 = time.perf_counter()
        verdicts += IDENTITIES[n]()
        timing[n] = time.perf_counter() - t0
    return verdicts, timing
