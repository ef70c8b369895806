"""Sparse multivariate polynomials and the truncated-exponential identities.

Polynomials live over the integers (``modulus=None``) or over F_p.  A set of
*nilpotent* variables can be declared; any monomial whose exponent in one of
them reaches ``p`` is dropped, which realizes the quotient by ``(x^p, y^p)``.
"""
from __future__ import annotations

import math
from functools import lru_cache

from .localfield import as_prime, gen_binom


class MultiPoly:
    """Sparse polynomial in named variables.

    ``terms`` maps exponent tuples (aligned with ``vars``) to nonzero
    coefficients.  ``nilpotent`` lists variable indices truncated at degree
    ``p``; it is only meaningful over F_p.
    """

    __slots__ = ("vars", "terms", "modulus", "nilpotent")

    def __init__(self, vars, terms=None, modulus=None, nilpotent=()):
        self.vars = tuple(vars)
        self.modulus = modulus
        self.nilpotent = tuple(sorted(set(nilpotent)))
        if self.nilpotent and modulus is None:
            raise ValueError("nilpotent variables require a prime modulus")
        self.terms = self._clean(terms or {})

    def _clean(self, terms):
        m = self.modulus
        out = {}
        for e, c in terms.items():
            if m is not None:
                c %= m
            if not c or self._killed(e):
                continue
            out[e] = c
        return out

    def _killed(self, e):
        p = self.modulus
        for i in self.nilpotent:
            if e[i] >= p:
                return True
        return False

    # -- constructors -------------------------------------------------------

    def _like(self, terms):
        return MultiPoly(self.vars, terms, self.modulus, self.nilpotent)

    @classmethod
    def constant(cls, c, vars, modulus=None, nilpotent=()):
        return cls(vars, {(0,) * len(vars): c}, modulus, nilpotent)

    @classmethod
    def variable(cls, name, vars, modulus=None, nilpotent=()):
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls(vars, {tuple(e): 1}, modulus, nilpotent)

    def const(self, c):
        return self._like({(0,) * len(self.vars): c})

    def var(self, name):
        e = [0] * len(self.vars)
        e[self.vars.index(name)] = 1
        return self._like({tuple(e): 1})

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if isinstance(other, int):
            return self.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if other.vars != self.vars or other.modulus != self.modulus or other.nilpotent != self.nilpotent:
            raise ValueError("polynomials live in different rings")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return self._like(t)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        m = self.modulus
        nil = self.nilpotent
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if nil and any(e[i] >= m for i in nil):
                    continue
                out[e] = out.get(e, 0) + c1 * c2
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        r = self.const(1)
        b = self
        while k:
            if k & 1:
                r = r * b
            k >>= 1
            if k:
                b = b * b
        return r

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (self.vars, self.modulus, self.nilpotent, self.terms) == (
            other.vars, other.modulus, other.nilpotent, other.terms)

    def __hash__(self):
        return hash((self.vars, self.modulus, self.nilpotent, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    # -- ring changes -------------------------------------------------------

    def reduce_mod(self, p: int, nilpotent=()) -> MultiPoly:
        """Image in F_p[vars], optionally modulo the p-th powers of ``nilpotent``."""
        idx = [self.vars.index(v) if isinstance(v, str) else v for v in nilpotent]
        return MultiPoly(self.vars, self.terms, p, idx)

    def with_vars(self, vars) -> MultiPoly:
        """Embed into a ring with a superset of the variables."""
        vars = tuple(vars)
        pos = [vars.index(v) for v in self.vars]
        nil = [vars.index(self.vars[i]) for i in self.nilpotent]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for i, k in zip(pos, e):
                ne[i] = k
            out[tuple(ne)] = c
        return MultiPoly(vars, out, self.modulus, nil)

    def substitute(self, name: str, value) -> MultiPoly:
        """Replace variable ``name`` by a polynomial (or int) in the same ring."""
        value = self._check(value)
        i = self.vars.index(name)
        out = self.const(0)
        powers = {}
        for e, c in self.terms.items():
            k = e[i]
            if k not in powers:
                powers[k] = value**k
            rest = e[:i] + (0,) + e[i + 1:]
            out = out + self._like({rest: c}) * powers[k]
        return out

    def total_degrees(self):
        return sorted({sum(e) for e in self.terms})

    def has_constant_term(self) -> bool:
        return (0,) * len(self.vars) in self.terms

    def __repr__(self):
        return f"MultiPoly({format_poly(self)})"

    def __str__(self):
        return format_poly(self)


def _grlex_key(e):
    return (sum(e), e)


def format_poly(f: MultiPoly) -> str:
    """Graded-lex printing in the declared variable order, low degree first."""
    if not f.terms:
        return "0"
    parts = []
    for e in sorted(f.terms, key=lambda e: (sum(e), tuple(-x for x in e))):
        c = f.terms[e]
        mono = "*".join(
            v if k == 1 else f"{v}^{k}" for v, k in zip(f.vars, e) if k)
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# binomials and truncated exponentials


def binom_poly(e: MultiPoly, m: int) -> MultiPoly:
    """C(e, m) = e(e-1)...(e-m+1)/m! for a polynomial e over F_p, m < p."""
    p = e.modulus
    if p is None or m >= p or m < 0:
        raise ValueError("symbolic binomial needs F_p coefficients and 0 <= m < p")
    r = e.const(1)
    for k in range(m):
        r = r * (e - k)
    return r * pow(math.factorial(m) % p, -1, p)


def trunc_exp_symbolic(u: MultiPoly, e) -> MultiPoly:
    """u^[e] = sum_{m<p} C(e, m) (u-1)^m in the quotient ring of ``u``.

    ``e`` is a variable name of the ring, a polynomial in the ring, or a
    :class:`~hopforge.localfield.LocalScalar` constant (coefficients via
    ``gen_binom``, which then must be constants in F_p).
    """
    p = u.modulus
    if p is None or not u.nilpotent:
        raise ValueError("truncated exponential needs a quotient ring over F_p")
    w = u - 1
    if w.has_constant_term():
        raise ValueError("u - 1 has a constant term; not nilpotent")
    for ex in w.terms:
        if not any(ex[i] for i in u.nilpotent):
            raise ValueError("u - 1 has a monomial free of nilpotent variables")
    if isinstance(e, str):
        e = u.var(e)
    elif isinstance(e, int):
        e = u.const(e)
    if isinstance(e, MultiPoly):
        coeffs = [binom_poly(e, m) for m in range(p)]
    else:
        coeffs = []
        for m in range(p):
            c = gen_binom(e, m).constant_value()
            if c is None:
                raise ValueError("scalar exponent must lie in F_p inside a polynomial ring over F_p")
            coeffs.append(u.const(c))
    out = u.const(0)
    wm = u.const(1)
    for m in range(p):
        if m:
            wm = wm * w
            if wm.is_zero():
                break
        out = out + coeffs[m] * wm
    return out


# ---------------------------------------------------------------------------
# the carry polynomial and identity checks


@lru_cache(maxsize=None)
def q_polynomial_integer(p: int) -> MultiPoly:
    """((x+y+xy)^p - x^p - y^p - (xy)^p) / p over the integers."""
    vars = ("x", "y")
    x = MultiPoly.variable("x", vars)
    y = MultiPoly.variable("y", vars)
    f = (x + y + x * y) ** p - x**p - y**p - (x * y) ** p
    out = {}
    for e, c in f.terms.items():
        q, r = divmod(c, p)
        if r:
            raise ArithmeticError(f"coefficient {c} of {e} not divisible by {p}")
        out[e] = q
    return MultiPoly(vars, out)


def q_polynomial(cfg) -> MultiPoly:
    p = as_prime(cfg)
    return q_polynomial_integer(p).reduce_mod(p)


def wp_poly(z: MultiPoly) -> MultiPoly:
    return z ** z.modulus - z


def verify_identity_basic(cfg) -> bool:
    """(1+x+y+xy)^[z] == (1+x)^[z] (1+y)^[z] (1 + wp(z) Q(x,y)) mod (x^p, y^p)."""
    p = as_prime(cfg)
    ring = dict(vars=("x", "y", "z"), modulus=p, nilpotent=(0, 1))
    one = MultiPoly.constant(1, **ring)
    x = MultiPoly.variable("x", **ring)
    y = MultiPoly.variable("y", **ring)
    z = MultiPoly.variable("z", **ring)
    q = q_polynomial(p).with_vars(ring["vars"]).reduce_mod(p, ("x", "y"))
    lhs = trunc_exp_symbolic(one + x + y + x * y, z)
    rhs = trunc_exp_symbolic(one + x, z) * trunc_exp_symbolic(one + y, z) * (one + wp_poly(z) * q)
    return lhs == rhs


def identity_iterated_sides(p: int) -> tuple[MultiPoly, MultiPoly]:
    ring = dict(vars=("x", "y", "z", "a"), modulus=p, nilpotent=(0, 1))
    one = MultiPoly.constant(1, **ring)
    x = MultiPoly.variable("x", **ring)
    y = MultiPoly.variable("y", **ring)
    z = MultiPoly.variable("z", **ring)
    a = MultiPoly.variable("a", **ring)
    q = q_polynomial(p).with_vars(ring["vars"]).reduce_mod(p, ("x", "y"))
    lhs = trunc_exp_symbolic(trunc_exp_symbolic(one + x + y + x * y, z), a)
    d = trunc_exp_symbolic(one + x, z) * trunc_exp_symbolic(one + y, z)
    rhs = trunc_exp_symbolic(d, a) * (one + wp_poly(z) * a * q)
    return lhs, rhs


def verify_identity_iterated(cfg) -> bool:
    """((1+x+y+xy)^[z])^[a] == ((1+x)^[z](1+y)^[z])^[a] (1 + wp(z) a Q(x,y))."""
    lhs, rhs = identity_iterated_sides(as_prime(cfg))
    return lhs == rhs


def verify_q_square(cfg) -> bool:
    """Every monomial of Q^2 has x- or y-exponent at least p."""
    p = as_prime(cfg)
    q = q_polynomial(p)
    sq = q * q
    return all(e[0] >= p or e[1] >= p for e in sq.terms)


IDENTITIES = {
    "truncated_exp_product": verify_identity_basic,
    "truncated_exp_iterated": verify_identity_iterated,
    "carry_square_vanishes": verify_q_square,
}


def run_identities(cfg) -> dict[str, bool]:
    return {name: fn(cfg) for name, fn in IDENTITIES.items()}
