"""The group ring K[C_p^n], its dual, and the pairing between them.

Both sides are dense vectors of length p^n indexed by exponent tuples
``a = (a_1, ..., a_n)`` in lexicographic order (``a_1`` most significant).
A group-algebra element stores the coefficient of ``g^a``; a dual element
stores its value on ``g^a`` (point-mass coordinates).
"""
from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import NamedTuple

from .localfield import LocalScalar, as_prime, gen_binom, one, scalar_parse, zero, format_scalar

GROUP = "group"
DUAL = "dual"


class ShapeMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# index tables, cached per (p, n)


@lru_cache(maxsize=None)
def exponents(p: int, n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(itertools.product(range(p), repeat=n))


def index(a, p: int) -> int:
    i = 0
    for x in a:
        i = i * p + x % p
    return i


@lru_cache(maxsize=None)
def add_table(p: int, n: int) -> tuple[tuple[int, ...], ...]:
    ex = exponents(p, n)
    return tuple(
        tuple(index([(x + y) % p for x, y in zip(a, b)], p) for b in ex) for a in ex)


@lru_cache(maxsize=None)
def neg_table(p: int, n: int) -> tuple[int, ...]:
    return tuple(index([(-x) % p for x in a], p) for a in exponents(p, n))


# ---------------------------------------------------------------------------
# dense linear algebra over F_p (small integer matrices)


def fp_inverse(m, p: int):
    """Gauss-Jordan inverse of a square integer matrix mod p."""
    n = len(m)
    a = [[x % p for x in row] + [int(i == j) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular mod p")
        a[col], a[piv] = a[piv], a[col]
        inv = pow(a[col][col], -1, p)
        a[col] = [x * inv % p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


@lru_cache(maxsize=None)
def gminus1_matrix(p: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Column j = coefficients of prod_i (g_i - 1)^{j_i} in the group basis."""
    ex = exponents(p, n)

    def c(j, a):
        if a > j:
            return 0
        return math.comb(j, a) * (-1) ** (j - a)

    return tuple(
        tuple(math.prod(c(ji, ai) for ji, ai in zip(j, a)) % p for j in ex) for a in ex)


@lru_cache(maxsize=None)
def gminus1_dual_basis(p: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Row j = values of the functional dual to (g-1)^j.

    Obtained by inverting the transposed basis-change matrix over F_p.
    """
    v = gminus1_matrix(p, n)
    vt = [list(col) for col in zip(*v)]
    inv = fp_inverse(vt, p)
    # f_j solves V^T f = e_j, so f_j is column j of inv
    return tuple(tuple(inv[a][j] for a in range(len(inv))) for j in range(len(inv)))


# ---------------------------------------------------------------------------
# elements


class _Element:
    __slots__ = ("p", "n", "coeffs")
    ambient = ""

    def __init__(self, p: int, n: int, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != p**n:
            raise ShapeMismatch(f"expected {p**n} coefficients, got {len(coeffs)}")
        self.p = p
        self.n = n
        self.coeffs = coeffs

    @classmethod
    def zero(cls, p, n):
        z = zero(p)
        return cls(p, n, (z,) * p**n)

    @classmethod
    def from_dict(cls, p, n, d):
        c = [zero(p)] * p**n
        for a, v in d.items():
            if isinstance(v, int):
                v = LocalScalar.from_int(p, v)
            c[index(a, p)] = v
        return cls(p, n, c)

    def _same(self, other):
        if not isinstance(other, type(self)):
            raise ShapeMismatch(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.p != self.p or other.n != self.n:
            raise ShapeMismatch(f"rank/prime mismatch: (p={self.p}, n={self.n}) vs (p={other.p}, n={other.n})")

    def __add__(self, other):
        if isinstance(other, (int, LocalScalar)):
            other = self.unit() * other
        self._same(other)
        return type(self)(self.p, self.n, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return type(self)(self.p, self.n, [-a for a in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, LocalScalar)):
            other = self.unit() * other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> _Element:
        if isinstance(s, int):
            s = LocalScalar.from_int(self.p, s)
        return type(self)(self.p, self.n, [a * s for a in self.coeffs])

    def __rmul__(self, other):
        if isinstance(other, (int, LocalScalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        r = self.unit()
        b = self
        while k:
            if k & 1:
                r = r * b
            k >>= 1
            if k:
                b = b * b
        return r

    def __eq__(self, other):
        if not isinstance(other, _Element):
            return NotImplemented
        return type(self) is type(other) and (self.p, self.n, self.coeffs) == (other.p, other.n, other.coeffs)

    def __hash__(self):
        return hash((type(self).__name__, self.p, self.n, self.coeffs))

    def is_zero(self):
        return not any(self.coeffs)

    def support(self):
        ex = exponents(self.p, self.n)
        return {ex[i]: c for i, c in enumerate(self.coeffs) if c}

    def to_json(self) -> dict:
        return element_to_json(self)

    def __repr__(self):
        terms = ", ".join(f"{a}: {c}" for a, c in self.support().items())
        return f"{type(self).__name__}(p={self.p}, n={self.n}, {{{terms}}})"


class GroupAlgebraElement(_Element):
    """Element of K[C_p^n]; ``coeffs[index(a)]`` is the coefficient of g^a."""

    __slots__ = ()
    ambient = GROUP

    def unit(self):
        return group_element(self.p, (0,) * self.n)

    def __mul__(self, other):
        if isinstance(other, (int, LocalScalar)):
            return self.scale(other)
        self._same(other)
        p, n = self.p, self.n
        add = add_table(p, n)
        out = [None] * p**n
        right = [(j, c) for j, c in enumerate(other.coeffs) if c]
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            row = add[i]
            for j, b in right:
                k = row[j]
                v = a * b
                out[k] = v if out[k] is None else out[k] + v
        z = zero(p)
        return GroupAlgebraElement(p, n, [z if v is None else v for v in out])

    def counit(self) -> LocalScalar:
        s = zero(self.p)
        for c in self.coeffs:
            if c:
                s = s + c
        return s

    def antipode(self) -> GroupAlgebraElement:
        neg = neg_table(self.p, self.n)
        out = [None] * len(self.coeffs)
        for i, c in enumerate(self.coeffs):
            out[neg[i]] = c
        return GroupAlgebraElement(self.p, self.n, out)

    def delta(self) -> TensorElement:
        z = zero(self.p)
        size = len(self.coeffs)
        rows = []
        for i, c in enumerate(self.coeffs):
            row = [z] * size
            row[i] = c
            rows.append(tuple(row))
        return TensorElement(self.p, self.n, rows, GROUP)

    def trace(self) -> LocalScalar:
        """Trace of left multiplication on K[C_p^n].

        Every g^a with a != 0 acts without fixed points, so the trace is p^n
        times the identity coefficient, which vanishes in characteristic p.
        """
        return zero(self.p)


class DualElement(_Element):
    """Element of (K[C_p^n])^*; ``coeffs[index(a)]`` is its value on g^a."""

    __slots__ = ()
    ambient = DUAL

    def unit(self):
        return DualElement(self.p, self.n, (one(self.p),) * self.p**self.n)

    def __mul__(self, other):
        if isinstance(other, (int, LocalScalar)):
            return self.scale(other)
        self._same(other)
        return DualElement(self.p, self.n, [a * b for a, b in zip(self.coeffs, other.coeffs)])

    def counit(self) -> LocalScalar:
        return self.coeffs[0]

    def antipode(self) -> DualElement:
        neg = neg_table(self.p, self.n)
        return DualElement(self.p, self.n, [self.coeffs[neg[i]] for i in range(len(self.coeffs))])

    def delta(self) -> TensorElement:
        add = add_table(self.p, self.n)
        c = self.coeffs
        return TensorElement(self.p, self.n, [tuple(c[k] for k in row) for row in add], DUAL)

    def trace(self) -> LocalScalar:
        """Trace of multiplication: the dual is a product of copies of K."""
        s = zero(self.p)
        for c in self.coeffs:
            if c:
                s = s + c
        return s


class TensorElement:
    """Dense element of A (x) A as a p^n x p^n matrix of scalars.

    For the group side ``rows[i][j]`` is the coefficient of g^a_i (x) g^a_j; for
    the dual side it is the value on the pair (g^a_i, g^a_j).
    """

    __slots__ = ("p", "n", "rows", "side")

    def __init__(self, p, n, rows, side):
        self.p = p
        self.n = n
        self.rows = tuple(tuple(r) for r in rows)
        self.side = side

    @classmethod
    def pure(cls, u: _Element, v: _Element) -> TensorElement:
        u._same(v)
        return cls(u.p, u.n, [tuple(a * b for b in v.coeffs) for a in u.coeffs], u.ambient)

    def __add__(self, other):
        if (other.p, other.n, other.side) != (self.p, self.n, self.side):
            raise ShapeMismatch("tensor shape mismatch")
        return TensorElement(self.p, self.n,
                             [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                             self.side)

    def __mul__(self, other):
        """Product in A (x) A, componentwise in each tensor factor."""
        if (other.p, other.n, other.side) != (self.p, self.n, self.side):
            raise ShapeMismatch("tensor shape mismatch")
        if self.side == DUAL:
            return TensorElement(self.p, self.n,
                                 [[a * b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                                 DUAL)
        add = add_table(self.p, self.n)
        size = len(self.rows)
        out = [[zero(self.p)] * size for _ in range(size)]
        lhs = [(i, j, c) for i, r in enumerate(self.rows) for j, c in enumerate(r) if c]
        rhs = [(i, j, c) for i, r in enumerate(other.rows) for j, c in enumerate(r) if c]
        for i1, j1, c1 in lhs:
            for i2, j2, c2 in rhs:
                i, j = add[i1][i2], add[j1][j2]
                out[i][j] = out[i][j] + c1 * c2
        return TensorElement(self.p, self.n, out, GROUP)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self.p, self.n, self.side, self.rows) == (other.p, other.n, other.side, other.rows)

    def __hash__(self):
        return hash((self.p, self.n, self.side, self.rows))


# ---------------------------------------------------------------------------
# constructors


def group_element(p: int, a) -> GroupAlgebraElement:
    """The basis element g^a."""
    p = as_prime(p)
    n = len(a)
    c = [zero(p)] * p**n
    c[index(a, p)] = one(p)
    return GroupAlgebraElement(p, n, c)


def generator(p: int, n: int, i: int) -> GroupAlgebraElement:
    """g_i, 1-based."""
    a = [0] * n
    a[i - 1] = 1
    return group_element(p, a)


def point_mass(p: int, a) -> DualElement:
    p = as_prime(p)
    n = len(a)
    c = [zero(p)] * p**n
    c[index(a, p)] = one(p)
    return DualElement(p, n, c)


def dual_unit(p: int, n: int) -> DualElement:
    return DualElement(p, n, (one(p),) * p**n)


def gminus1_monomial(p: int, j) -> GroupAlgebraElement:
    """prod_i (g_i - 1)^{j_i}."""
    n = len(j)
    v = gminus1_matrix(p, n)
    col = index(j, p)
    return GroupAlgebraElement(p, n, [LocalScalar.from_int(p, row[col]) for row in v])


def xi(p: int, e) -> DualElement:
    """The xi-functional for a unit exponent tuple ``e``.

    Defined by <xi_e, prod (g_i - 1)^{j_i}> = [j == e]; computed by inverting
    the (g-1)-basis change matrix over F_p.
    """
    p = as_prime(p)
    e = tuple(e)
    if sorted(e) != [0] * (len(e) - 1) + [1]:
        raise ValueError(f"xi needs a standard unit tuple, got {e}")
    row = gminus1_dual_basis(p, len(e))[index(e, p)]
    return DualElement(p, len(e), [LocalScalar.from_int(p, x) for x in row])


def xi_i(p: int, n: int, i: int) -> DualElement:
    """xi for the i-th generator (1-based)."""
    e = [0] * n
    e[i - 1] = 1
    return xi(p, e)


# ---------------------------------------------------------------------------
# Hopf structure and pairing


class HopfMaps(NamedTuple):
    delta: TensorElement
    counit: LocalScalar
    antipode: _Element


def hopf_maps(x: _Element) -> HopfMaps:
    return HopfMaps(x.delta(), x.counit(), x.antipode())


def pair(f: DualElement, x: GroupAlgebraElement) -> LocalScalar:
    if not isinstance(f, DualElement) or not isinstance(x, GroupAlgebraElement):
        raise ShapeMismatch("pair takes (DualElement, GroupAlgebraElement)")
    if (f.p, f.n) != (x.p, x.n):
        raise ShapeMismatch(f"rank/prime mismatch: (p={f.p}, n={f.n}) vs (p={x.p}, n={x.n})")
    s = zero(f.p)
    for a, b in zip(f.coeffs, x.coeffs):
        if a and b:
            s = s + a * b
    return s


def pair_tensors(f: TensorElement, x: TensorElement) -> LocalScalar:
    if f.side != DUAL or x.side != GROUP:
        raise ShapeMismatch("pair_tensors takes (dual tensor, group tensor)")
    s = zero(f.p)
    for r, q in zip(f.rows, x.rows):
        for a, b in zip(r, q):
            if a and b:
                s = s + a * b
    return s


def trunc_exp_element(u: GroupAlgebraElement, e: LocalScalar) -> GroupAlgebraElement:
    """u^[e] = sum_{m<p} C(e, m)(u - 1)^m; requires (u - 1)^p = 0."""
    p = u.p
    w = u - 1
    if not (w**p).is_zero():
        raise ValueError("truncated exponential needs (u - 1)^p = 0")
    out = u.unit() * gen_binom(e, 0)
    wm = u.unit()
    for m in range(1, p):
        wm = wm * w
        c = gen_binom(e, m)
        if c:
            out = out + wm.scale(c)
    return out


# ---------------------------------------------------------------------------
# automorphisms


def _apply_matrix(m, a, p):
    return tuple(sum(m[i][j] * a[j] for j in range(len(a))) % p for i in range(len(m)))


def apply_group_automorphism(m, x: _Element) -> _Element:
    """Transport ``x`` along the group automorphism g^a -> g^{Ma}.

    On the dual side this is precomposition with the inverse automorphism, so
    the pairing is preserved: <M f, M x> = <f, x>.
    """
    p, n = x.p, x.n
    m = [[int(v) % p for v in row] for row in m]
    if len(m) != n or any(len(row) != n for row in m):
        raise ShapeMismatch(f"automorphism must be {n}x{n}")
    minv = fp_inverse(m, p)  # raises on singular matrices
    ex = exponents(p, n)
    if isinstance(x, GroupAlgebraElement):
        out = [None] * len(ex)
        for i, a in enumerate(ex):
            out[index(_apply_matrix(m, a, p), p)] = x.coeffs[i]
        return GroupAlgebraElement(p, n, out)
    return DualElement(p, n, [x.coeffs[index(_apply_matrix(minv, a, p), p)] for a in ex])


# ---------------------------------------------------------------------------
# JSON literals


def element_to_json(x: _Element) -> dict:
    return {
        "ambient": x.ambient,
        "p": x.p,
        "n": x.n,
        "coeffs": [[",".join(map(str, a)), format_scalar(c)] for a, c in x.support().items()],
    }


def element_from_json(d: dict) -> _Element:
    try:
        amb = d["ambient"]
        p = as_prime(d["p"])
        n = int(d["n"])
        terms = d["coeffs"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed element literal: {exc}") from exc
    if amb not in (GROUP, DUAL):
        raise ValueError(f"unknown ambient {amb!r}")
    vals = {}
    for key, lit in terms:
        a = tuple(int(s) for s in str(key).split(","))
        if len(a) != n or any(not 0 <= x < p for x in a):
            raise ValueError(f"bad exponent {key!r} for p={p}, n={n}")
        vals[a] = vals.get(a, zero(p)) + scalar_parse(lit, p)
    cls = GroupAlgebraElement if amb == GROUP else DualElement
    return cls.from_dict(p, n, vals)
