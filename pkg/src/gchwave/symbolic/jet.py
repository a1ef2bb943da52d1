"""Differential polynomials with exact rational coefficients.

Variables are plain strings of three kinds:

* jet variables ``"v_k"``: the k-th x-derivative of the field ``v``;
* function symbols ``"c^k(v)"``: the k-th derivative of an unspecified
  function c evaluated at v_0 (so d/dx c^k(v) = c^{k+1}(v) v_1);
* everything else is a constant parameter (alpha, eta, eps, ...).

A polynomial is a mapping from monomials to Fractions.  A monomial is a
sorted tuple of (variable, exponent) pairs.  Zero coefficients are never
stored, so the zero polynomial has an empty mapping and equality is exact.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

MAX_JET_ORDER = 8

_JET = re.compile(r"^([A-Za-z]\w*?)_(\d+)$")
_FUN = re.compile(r"^([A-Za-z]\w*)\^(\d+)\(([A-Za-z]\w*)\)$")


class JetOrderError(ValueError):
    """A total derivative would create a jet variable beyond MAX_JET_ORDER."""


def jet(base: str, k: int) -> str:
    return f"{base}_{k}"


def fn(name: str, k: int = 0, base: str = "v") -> str:
    return f"{name}^{k}({base})"


def parse_jet(var: str):
    m = _JET.match(var)
    return (m.group(1), int(m.group(2))) if m else None


def parse_fn(var: str):
    m = _FUN.match(var)
    return (m.group(1), int(m.group(2)), m.group(3)) if m else None


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _coerce(x) -> "JetPoly":
    if isinstance(x, JetPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return JetPoly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} in exact arithmetic")


class JetPoly:
    """Immutable polynomial in jet variables, function symbols and parameters."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple, Fraction] | None = None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                key = tuple(sorted((v, e) for v, e in mono if e))
                clean[key] = clean.get(key, 0) + c
        self._terms = {k: c for k, c in clean.items() if c}

    # -- construction -----------------------------------------------------
    @classmethod
    def const(cls, c) -> "JetPoly":
        return cls({(): Fraction(c)})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "JetPoly":
        return cls({((name, power),): Fraction(1)})

    @classmethod
    def zero(cls) -> "JetPoly":
        return cls()

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_const(self) -> bool:
        return all(not m for m in self._terms)

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise ValueError("polynomial is not constant")
        return self._terms.get((), Fraction(0))

    def variables(self) -> set:
        return {v for m in self._terms for v, _ in m}

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return JetPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return JetPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return JetPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, JetPoly):
            other = other.const_value()
        return self * Fraction(1, 1) * (Fraction(1) / Fraction(other))

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomial")
        out = JetPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # -- structure --------------------------------------------------------
    def degree(self, var: str) -> int:
        return max((dict(m).get(var, 0) for m in self._terms), default=0)

    def coeff(self, var: str, k: int) -> "JetPoly":
        """Coefficient of var**k, viewing self as a polynomial in var."""
        out = {}
        for m, c in self._terms.items():
            d = dict(m)
            if d.get(var, 0) == k:
                d.pop(var, None)
                out[tuple(sorted(d.items()))] = c
        return JetPoly(out)

    def collect(self, keep) -> dict:
        """Split into {monomial in `keep` variables: coefficient polynomial}.

        `keep` is a predicate on variable names (or a set of names).
        """
        pred = keep if callable(keep) else (lambda v, s=set(keep): v in s)
        groups: dict = {}
        for m, c in self._terms.items():
            key = tuple((v, e) for v, e in m if pred(v))
            rest = tuple((v, e) for v, e in m if not pred(v))
            groups.setdefault(key, {})[rest] = c
        return {k: JetPoly(v) for k, v in groups.items()}

    def diff(self, var: str) -> "JetPoly":
        out: dict = {}
        for m, c in self._terms.items():
            d = dict(m)
            e = d.get(var, 0)
            if not e:
                continue
            if e == 1:
                del d[var]
            else:
                d[var] = e - 1
            key = tuple(sorted(d.items()))
            out[key] = out.get(key, 0) + c * e
        return JetPoly(out)

    def subs(self, mapping: Mapping[str, "JetPoly"]) -> "JetPoly":
        """Simultaneous substitution of variables by polynomials."""
        mapping = {k: _coerce(v) for k, v in mapping.items()}
        cache: dict = {}
        out = JetPoly()
        for m, c in self._terms.items():
            term = JetPoly.const(c)
            keep = []
            for v, e in m:
                if v in mapping:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = mapping[v] ** e
                    term = term * cache[key]
                else:
                    keep.append((v, e))
            out = out + term * JetPoly({tuple(keep): 1})
        return out

    def truncate(self, var: str, order: int) -> "JetPoly":
        """Drop every term whose power of var exceeds order."""
        return JetPoly({m: c for m, c in self._terms.items() if dict(m).get(var, 0) <= order})

    def reduce_power(self, var: str, k: int, repl: "JetPoly") -> "JetPoly":
        """Rewrite var**k -> repl until var appears with exponent < k."""
        repl = _coerce(repl)
        p = self
        while p.degree(var) >= k:
            out = JetPoly()
            for m, c in p._terms.items():
                d = dict(m)
                e = d.get(var, 0)
                if e >= k:
                    d[var] = e - k
                    out = out + JetPoly({tuple(sorted(d.items())): c}) * repl
                else:
                    out = out + JetPoly({m: c})
            p = out
        return p

    def max_jet_order(self, base: str | None = None) -> int:
        best = -1
        for v in self.variables():
            j = parse_jet(v)
            if j and (base is None or j[0] == base):
                best = max(best, j[1])
        return best

    def evaluate(self, values: Mapping[str, object]):
        """Numeric value; values may be floats or numpy arrays."""
        total = 0
        for m, c in self._terms.items():
            t = float(c)
            for v, e in m:
                t = t * values[v] ** e
            total = total + t
        return total

    # -- display ----------------------------------------------------------
    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms, key=lambda m: (sum(e for _, e in m), m)):
            c = self._terms[m]
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def P(x) -> JetPoly:
    """Shorthand: a variable name or a rational constant as a JetPoly."""
    return JetPoly.var(x) if isinstance(x, str) else JetPoly.const(x)


def J(base: str, k: int) -> JetPoly:
    return JetPoly.var(jet(base, k))


def _next(var: str, max_order: int):
    j = parse_jet(var)
    if j:
        base, k = j
        if k + 1 > max_order:
            raise JetOrderError(f"total derivative of {var} exceeds jet order {max_order}")
        return JetPoly.var(jet(base, k + 1))
    f = parse_fn(var)
    if f:
        name, k, base = f
        return JetPoly.var(fn(name, k + 1, base)) * J(base, 1)
    return None


def total_x(p: JetPoly, max_order: int = MAX_JET_ORDER) -> JetPoly:
    """D_x p = sum over jet and function variables of dp/dvar * D_x var."""
    out = JetPoly()
    for var in p.variables():
        nxt = _next(var, max_order)
        if nxt is not None:
            out = out + p.diff(var) * nxt
    return out


def total_x_n(p: JetPoly, n: int) -> JetPoly:
    for _ in range(n):
        p = total_x(p)
    return p


def total_t(p: JetPoly, tau_bases: Mapping[str, str]) -> JetPoly:
    """Time total derivative with D_t(base_k) = tau_bases[base]_k.

    Jet variables whose base is not listed are treated as time-independent
    only if absent; meeting one raises, since its time derivative is unknown.
    """
    out = JetPoly()
    for var in p.variables():
        j = parse_jet(var)
        if j is None:
            if parse_fn(var):
                raise ValueError(f"time derivative of function symbol {var} is not defined")
            continue
        base, k = j
        if base not in tau_bases:
            raise ValueError(f"no time derivative declared for {base}")
        out = out + p.diff(var) * J(tau_bases[base], k)
    return out


def partial(p: JetPoly, var: str) -> JetPoly:
    """d/d(var), with function symbols of var's base following the chain rule at order 0."""
    out = p.diff(var)
    j = parse_jet(var)
    if j and j[1] == 0:
        for w in p.variables():
            f = parse_fn(w)
            if f and f[2] == j[0]:
                out = out + p.diff(w) * JetPoly.var(fn(f[0], f[1] + 1, f[2]))
    return out


def euler_op(density: JetPoly, base: str = "v") -> JetPoly:
    """Variational derivative sum_k (-1)^k D^k (d density / d base_k)."""
    top = density.max_jet_order(base)
    out = JetPoly()
    for k in range(max(top, 0) + 1):
        term = total_x_n(partial(density, jet(base, k)), k)
        out = out + (term if k % 2 == 0 else -term)
    return out


def integrate_x(p: JetPoly, base: str = "v") -> JetPoly:
    """Q with D_x Q = p, for p an exact x-derivative (constants of integration 0).

    Peels off the highest jet: an exact derivative is linear in its top jet
    v_N with coefficient dQ/dv_{N-1}.  Raises ValueError when p is not exact.
    """
    q = JetPoly()
    rest = p
    for _ in range(1000):
        if rest.is_zero():
            return q
        top = rest.max_jet_order(base)
        if top < 1:
            raise ValueError("polynomial is not an exact x-derivative")
        vN, vM = jet(base, top), jet(base, top - 1)
        if rest.degree(vN) != 1:
            raise ValueError("polynomial is not an exact x-derivative")
        g = rest.coeff(vN, 1)
        piece = _antiderivative(g, vM, base)
        q = q + piece
        rest = rest - total_x(piece)
    raise ValueError("integration did not terminate")


def _antiderivative(g: JetPoly, var: str, base: str) -> JetPoly:
    if any(parse_fn(v) and parse_fn(v)[2] == base for v in g.variables()):
        raise ValueError("cannot integrate a function symbol in closed form")
    out = {}
    for m, c in g.terms.items():
        d = dict(m)
        e = d.get(var, 0) + 1
        d[var] = e
        out[tuple(sorted(d.items()))] = c / e
    return JetPoly(out)


# -- differential forms in (chi, tau) ----------------------------------------

@dataclass(frozen=True)
class OneForm:
    """A dchi + B dtau."""

    A: JetPoly
    B: JetPoly


@dataclass(frozen=True)
class TwoForm:
    """C dchi ^ dtau."""

    C: JetPoly

    def __sub__(self, other: "TwoForm") -> "TwoForm":
        return TwoForm(self.C - other.C)


def wedge(a: OneForm, b: OneForm) -> TwoForm:
    return TwoForm(a.A * b.B - a.B * b.A)


def exterior_d(w: OneForm, tau_bases: Mapping[str, str]) -> TwoForm:
    """d(A dchi + B dtau) = (D_chi B - D_tau A) dchi ^ dtau."""
    return TwoForm(total_x(w.B) - total_t(w.A, tau_bases))


# -- linear solving with constant pivots --------------------------------------

def solve_linear(equations: Iterable[JetPoly], unknowns: Iterable[str]):
    """Eliminate unknowns appearing linearly with nonzero rational pivots.

    Returns (solution, leftover) where solution maps each eliminated unknown
    to a polynomial free of unknowns, and leftover holds the nonzero
    equations that no longer contain any unknown (consistency conditions).
    Unknowns that could not be pinned down are absent from the solution.
    """
    unknowns = list(unknowns)
    eqs = [e for e in equations if not e.is_zero()]
    sol: dict = {}
    progress = True
    while progress:
        progress = False
        for i, e in enumerate(eqs):
            for u in unknowns:
                if u in sol or e.degree(u) != 1:
                    continue
                piv = e.coeff(u, 1)
                if not piv.is_const():
                    continue
                rest = e - piv * JetPoly.var(u)
                val = -rest * (Fraction(1) / piv.const_value())
                if u in val.variables():
                    continue
                sol = {k: v.subs({u: val}) for k, v in sol.items()}
                sol[u] = val
                eqs = [x.subs({u: val}) for j, x in enumerate(eqs) if j != i]
                eqs = [x for x in eqs if not x.is_zero()]
                progress = True
                break
            if progress:
                break
    leftover = [e for e in eqs if not (set(unknowns) & e.variables())]
    return sol, leftover
