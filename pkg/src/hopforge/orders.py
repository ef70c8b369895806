"""Hopf orders in K[C_p^n] and its dual: construction and verification.

An order is presented by generators (or an explicit module basis).  All
questions are decided on exact coordinates with respect to the box-monomial
basis prod_k gen_k^{e_k}, 0 <= e_k < p: an element lies in the order iff all
of its coordinates have nonnegative valuation.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from . import linalg
from .groupalg import (
    DUAL,
    GROUP,
    DualElement,
    GroupAlgebraElement,
    ShapeMismatch,
    add_table,
    dual_unit,
    exponents,
    generator,
    group_element,
    neg_table,
    trunc_exp_element,
    xi_i,
)
from .localfield import INF, LocalScalar, as_prime, frobenius, one, wp, zero, format_scalar


class NotIntegral(ValueError):
    """Koch's matrix A has an entry outside R."""


class DependentBasis(ValueError):
    def __init__(self, msg, rank):
        super().__init__(msg)
        self.rank = rank


# ---------------------------------------------------------------------------
# presentations


def _mono_label(e) -> str:
    return "m(" + ",".join(map(str, e)) + ")"


@dataclass(frozen=True, eq=False)
class OrderPresentation:
    """An R-order inside K[C_p^n] (``ambient="group"``) or its dual.

    Either ``generators`` (length n, basis = box monomials) or ``basis``
    (explicit list of p^n module generators) is given.
    """

    ambient: str
    p: int
    n: int
    generators: tuple | None = None
    basis: tuple | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.ambient not in (GROUP, DUAL):
            raise ValueError(f"unknown ambient {self.ambient!r}")
        if (self.generators is None) == (self.basis is None):
            raise ValueError("give exactly one of generators / basis")
        cls = GroupAlgebraElement if self.ambient == GROUP else DualElement
        for x in self.generators or self.basis:
            if not isinstance(x, cls) or (x.p, x.n) != (self.p, self.n):
                raise ShapeMismatch(f"element {x!r} does not live in the {self.ambient} ambient")
        if self.generators is not None and len(self.generators) != self.n:
            raise ValueError(f"need {self.n} generators, got {len(self.generators)}")
        if self.basis is not None and len(self.basis) != self.p**self.n:
            raise ValueError(f"explicit basis needs {self.p**self.n} elements")

    @property
    def dim(self) -> int:
        return self.p**self.n

    def unit(self):
        if self.ambient == GROUP:
            return group_element(self.p, (0,) * self.n)
        return dual_unit(self.p, self.n)

    def element_class(self):
        return GroupAlgebraElement if self.ambient == GROUP else DualElement

    @cached_property
    def labels(self) -> tuple[str, ...]:
        if self.generators is not None:
            return tuple(_mono_label(e) for e in exponents(self.p, self.n))
        return tuple(f"b{k}" for k in range(self.dim))

    @cached_property
    def monomials(self) -> tuple:
        """Box monomials in lexicographic exponent order (gen_1 exponent most significant)."""
        if self.basis is not None:
            return tuple(self.basis)
        p = self.p
        powers = []
        for g in self.generators:
            pw = [self.unit()]
            for _ in range(p - 1):
                pw.append(pw[-1] * g)
            powers.append(pw)
        out = []
        for e in exponents(p, self.n):
            x = powers[0][e[0]]
            for k in range(1, self.n):
                if e[k]:
                    x = x * powers[k][e[k]]
            out.append(x)
        return tuple(out)

    @cached_property
    def _inverse(self):
        # rows of B^{-1}, B having the basis vectors as columns
        cols = [m.coeffs for m in self.monomials]
        mat = [list(r) for r in zip(*cols)]
        try:
            return linalg.inverse(mat)
        except linalg.SingularMatrix as exc:
            raise DependentBasis(
                f"box monomials are K-linearly dependent (rank {exc.rank} < {self.dim})",
                exc.rank) from exc

    def coordinates(self, x) -> list[LocalScalar]:
        if x.ambient != self.ambient or (x.p, x.n) != (self.p, self.n):
            raise ShapeMismatch("element does not live in this ambient")
        return linalg.matvec(self._inverse, x.coeffs)


def monomial_basis(pres: OrderPresentation) -> tuple:
    """Box monomials; raises DependentBasis if they do not span."""
    pres._inverse
    return pres.monomials


def contains(pres: OrderPresentation, x) -> tuple[bool, list[LocalScalar]]:
    c = pres.coordinates(x)
    return all(v.is_integral() for v in c), c


# ---------------------------------------------------------------------------
# parameters and conditions


@dataclass(frozen=True)
class DualFamilyParams:
    p: int
    i1: int = 0
    i2: int = 0
    i3: int = 0
    mu: LocalScalar | None = None
    alpha: LocalScalar | None = None
    beta: LocalScalar | None = None

    def __post_init__(self):
        as_prime(self.p)
        for name in ("mu", "alpha", "beta"):
            v = getattr(self, name)
            if v is None:
                object.__setattr__(self, name, zero(self.p))
            elif isinstance(v, int):
                object.__setattr__(self, name, LocalScalar.from_int(self.p, v))
            elif v.p != self.p:
                raise ValueError(f"{name} lives in characteristic {v.p}, expected {self.p}")

    def to_json(self, n: int) -> dict:
        if n == 1:
            return {"i1": self.i1}
        d = {"i1": self.i1, "i2": self.i2, "mu": format_scalar(self.mu)}
        if n == 3:
            d.update(i3=self.i3, alpha=format_scalar(self.alpha), beta=format_scalar(self.beta))
        return d


def _ge(x: LocalScalar, k: int) -> bool:
    # nu(0) = +inf satisfies every lower bound
    return x.valuation() >= k


@dataclass(frozen=True)
class ConditionReport:
    checks: dict  # name -> bool, in a fixed order
    main_names: tuple
    mild_names: tuple

    @property
    def main(self) -> bool:
        return all(self.checks[k] for k in self.main_names)

    @property
    def mild(self) -> bool:
        return all(self.checks[k] for k in self.mild_names)

    @property
    def all(self) -> bool:
        return all(self.checks.values())

    def bitmask(self) -> str:
        return "".join("1" if v else "0" for v in self.checks.values())

    def to_json(self) -> dict:
        return {"checks": dict(self.checks), "main": self.main, "mild": self.mild, "all": self.all}


def check_conditions(params: DualFamilyParams, n: int) -> ConditionReport:
    p = params.p
    i1, i2, i3 = params.i1, params.i2, params.i3
    mu, al, be = params.mu, params.alpha, params.beta
    c = {}
    if n == 1:
        c["nonnegative"] = i1 >= 0
        return ConditionReport(c, ("nonnegative",), ())
    if n == 2:
        c["nonnegative"] = i1 >= 0 and i2 >= 0
        c["wp_mu"] = _ge(wp(mu), i2 - p * i1)
        return ConditionReport(c, ("nonnegative", "wp_mu"), ())
    if n != 3:
        raise ValueError("parameter families exist for n = 1, 2, 3")
    c["nonnegative"] = i1 >= 0 and i2 >= 0 and i3 >= 0
    c["wp_mu"] = _ge(wp(mu), i2 - p * i1)
    c["wp_alpha_beta"] = _ge(wp(al) + wp(mu) * be, i3 - p * i1)
    c["wp_beta"] = _ge(wp(be), i3 - p * i2)
    c["mu_valuation"] = _ge(mu, i3 - i1)
    c["i2_ge_i3"] = i2 >= i3
    return ConditionReport(c, ("nonnegative", "wp_mu", "wp_alpha_beta", "wp_beta"),
                           ("mu_valuation", "i2_ge_i3"))


def params_equivalent(a, b, mu: LocalScalar, i1: int, i2: int, i3: int) -> bool:
    """Whether (alpha, beta) pairs differ by F_p(mu,-1) + (F_p + p^{i3-i1}, p^{i3-i2})."""
    (a1, b1), (a2, b2) = a, b
    p = mu.p
    da, db = a1 - a2, b1 - b2
    for m in range(p):
        if not _ge(db + m, i3 - i2):
            continue
        base = da - mu * m
        for c in range(p):
            if _ge(base - c, i3 - i1):
                return True
    return False


# ---------------------------------------------------------------------------
# constructors


def _t(p, k):
    return LocalScalar.t_power(p, k)


def build_dual(params: DualFamilyParams, n: int) -> OrderPresentation:
    """R[t^i1 (xi_1 - mu xi_2 - alpha xi_3), t^i2 (xi_2 - beta xi_3), t^i3 xi_3] and its n < 3 truncations."""
    p = params.p
    x = [xi_i(p, n, k) for k in range(1, n + 1)]
    if n == 1:
        gens = [x[0].scale(_t(p, params.i1))]
    elif n == 2:
        gens = [
            (x[0] - x[1].scale(params.mu)).scale(_t(p, params.i1)),
            x[1].scale(_t(p, params.i2)),
        ]
    elif n == 3:
        gens = [
            (x[0] - x[1].scale(params.mu) - x[2].scale(params.alpha)).scale(_t(p, params.i1)),
            (x[1] - x[2].scale(params.beta)).scale(_t(p, params.i2)),
            x[2].scale(_t(p, params.i3)),
        ]
    else:
        raise ValueError("dual families exist for n = 1, 2, 3")
    return OrderPresentation(DUAL, p, n, generators=tuple(gens),
                             meta={"family": f"dual{n}", "params": params.to_json(n)})


def primal_group_units(params: DualFamilyParams, n: int) -> list[GroupAlgebraElement]:
    """The grouplike-deformed units g_1, g_2 g_1^[mu], g_3 g_1^[alpha] (g_2 g_1^[mu])^[beta]."""
    p = params.p
    g = [generator(p, n, k) for k in range(1, n + 1)]
    units = [g[0]]
    if n >= 2:
        w = g[1] * trunc_exp_element(g[0], params.mu)
        units.append(w)
    if n >= 3:
        v = g[2] * trunc_exp_element(g[0], params.alpha) * trunc_exp_element(w, params.beta)
        units.append(v)
    return units


def build_primal(params: DualFamilyParams, n: int) -> OrderPresentation:
    """E(i1, ..., mu, alpha, beta): truncated-exponential order in K[C_p^n]."""
    if n not in (1, 2, 3):
        raise ValueError("primal families exist for n = 1, 2, 3")
    p = params.p
    units = primal_group_units(params, n)
    shifts = (params.i1, params.i2, params.i3)
    gens = tuple((u - 1).scale(_t(p, -shifts[k])) for k, u in enumerate(units))
    fam = {1: "tate", 2: "e2", 3: "e3"}[n]
    return OrderPresentation(GROUP, p, n, generators=gens,
                             meta={"family": fam, "params": params.to_json(n)})


def _check_theta(theta):
    n = len(theta)
    if n == 0 or any(len(r) != n for r in theta):
        raise ValueError("Theta must be a nonempty square matrix")
    for i in range(n):
        for j in range(i + 1, n):
            if theta[i][j]:
                raise ValueError(f"Theta is not lower triangular: entry ({i + 1},{j + 1}) nonzero")
        if not theta[i][i]:
            raise ValueError("Theta is singular (zero diagonal entry)")


def koch_matrix(theta) -> tuple[list[list[LocalScalar]], bool]:
    """A = Theta^{-1} Theta^(p) and whether A has entries in R."""
    _check_theta(theta)
    inv = linalg.inverse([list(r) for r in theta])
    tp = [[frobenius(x) for x in r] for r in theta]
    a = linalg.matmul(inv, tp)
    return a, all(x.is_integral() for row in a for x in row)


def koch_order(theta) -> OrderPresentation:
    """H_Theta = R[sum_j theta_{j,i} xi_j, 1 <= i <= n]."""
    a, ok = koch_matrix(theta)
    n = len(theta)
    p = theta[0][0].p
    if not ok:
        bad = next((i, j) for i in range(n) for j in range(n) if not a[i][j].is_integral())
        i, j = bad
        raise NotIntegral(f"A[{i + 1},{j + 1}] = {a[i][j]} has valuation {a[i][j].valuation()} < 0")
    x = [xi_i(p, n, k) for k in range(1, n + 1)]
    gens = []
    for i in range(n):
        u = x[0].scale(theta[0][i])
        for j in range(1, n):
            if theta[j][i]:
                u = u + x[j].scale(theta[j][i])
        gens.append(u)
    return OrderPresentation(DUAL, p, n, generators=tuple(gens),
                             meta={"family": "koch",
                                   "theta": [[format_scalar(v) for v in r] for r in theta]})


def koch_relations_hold(pres: OrderPresentation, a) -> bool:
    """u_i^p == sum_j a_{j,i} u_j for every generator."""
    u = pres.generators
    for i in range(pres.n):
        rhs = u[0].scale(a[0][i])
        for j in range(1, pres.n):
            rhs = rhs + u[j].scale(a[j][i])
        if u[i] ** pres.p != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# verification


@dataclass
class VerificationReport:
    algebra_closed: bool = True
    comult_closed: bool = True
    counit_integral: bool = True
    antipode_closed: bool = True
    generically_full: bool = True
    witnesses: list = field(default_factory=list)
    mode: str = "generators"

    AXIOMS = ("algebra_closed", "comult_closed", "counit_integral", "antipode_closed",
              "generically_full")

    @property
    def all_pass(self) -> bool:
        return all(getattr(self, k) for k in self.AXIOMS)

    def to_json(self) -> dict:
        return {
            "all_pass": self.all_pass,
            "mode": self.mode,
            "axioms": {k: ("pass" if getattr(self, k) else "fail") for k in self.AXIOMS},
            "witnesses": self.witnesses,
        }


def _bad_coords(coords, labels):
    return [(labels[i], c) for i, c in enumerate(coords) if not c.is_integral()]


def _tensor_coordinates(pres, x):
    """Coordinates of Delta(x) in basis (x) basis, as a dim x dim matrix."""
    binv = pres._inverse
    z = zero(pres.p)
    dim = pres.dim
    if pres.ambient == GROUP:
        # Delta(x) = diag(x): C = Binv diag(x) Binv^T
        y = [[b * c if b and c else z for b, c in zip(row, x.coeffs)] for row in binv]
    else:
        add = add_table(pres.p, pres.n)
        t = [[x.coeffs[k] for k in row] for row in add]
        y = linalg.matmul(binv, t)
    return linalg.matmul(y, linalg.transpose(binv)) if dim else []


def verify_hopf_order(pres: OrderPresentation, exhaustive: bool = True,
                      max_witnesses: int = 64) -> VerificationReport:
    """Check that the R-span of the basis is an R-Hopf order.

    The default checks products of all pairs of basis monomials, and the
    coproduct, counit and antipode of every basis monomial.  With
    ``exhaustive=False`` products, coproduct and antipode are checked on
    generators only; since these maps are algebra homomorphisms this decides
    the same question faster.
    """
    rep = VerificationReport()
    if pres.generators is None and not exhaustive:
        raise ValueError("explicit-basis presentations need exhaustive verification")
    rep.mode = "exhaustive" if exhaustive else "generators"

    def witness(axiom, operands, coord, val):
        if len(rep.witnesses) < max_witnesses:
            rep.witnesses.append({"axiom": axiom, "operands": list(operands),
                                  "coordinate": coord, "valuation": val})

    try:
        basis = monomial_basis(pres)
    except DependentBasis as exc:
        rep.generically_full = False
        rep.algebra_closed = rep.comult_closed = rep.counit_integral = rep.antipode_closed = False
        witness("generically_full", [], "rank", exc.rank)
        return rep

    labels = pres.labels
    if exhaustive:
        left = list(zip(labels, basis))
        checked = left
    else:
        left = [(f"u{k + 1}", g) for k, g in enumerate(pres.generators)]
        checked = left

    # (a) algebra closure
    pairs = (itertools.combinations_with_replacement(range(len(basis)), 2) if exhaustive
             else ((k, j) for k in range(len(left)) for j in range(len(basis))))
    for i, j in pairs:
        name, x = left[i]
        prod = x * basis[j]
        for lab, c in _bad_coords(pres.coordinates(prod), labels):
            rep.algebra_closed = False
            witness("algebra_closed", [name, labels[j]], lab, c.valuation())

    # (b) comultiplication
    for name, x in checked:
        cm = _tensor_coordinates(pres, x)
        for r, row in enumerate(cm):
            for s, c in enumerate(row):
                if not c.is_integral():
                    rep.comult_closed = False
                    witness("comult_closed", [name], f"{labels[r]}(x){labels[s]}", c.valuation())

    # (c) counit on every basis element
    for lab, x in zip(labels, basis):
        e = x.counit()
        if not e.is_integral():
            rep.counit_integral = False
            witness("counit_integral", [lab], "counit", e.valuation())

    # (d) antipode
    for name, x in checked:
        for lab, c in _bad_coords(pres.coordinates(x.antipode()), labels):
            rep.antipode_closed = False
            witness("antipode_closed", [name], lab, c.valuation())
    return rep


def pth_power_witness(pres: OrderPresentation, k: int) -> list[LocalScalar]:
    """Coordinates of gen_k^p (k is 1-based) in the box-monomial basis."""
    if pres.generators is None:
        raise ValueError("presentation has no generators")
    g = pres.generators[k - 1]
    return pres.coordinates(g**pres.p)


def orders_equal(a: OrderPresentation, b: OrderPresentation) -> bool:
    if (a.ambient, a.p, a.n) != (b.ambient, b.p, b.n):
        raise ShapeMismatch("orders live in different ambients")
    return (all(contains(b, x)[0] for x in monomial_basis(a))
            and all(contains(a, x)[0] for x in monomial_basis(b)))


# ---------------------------------------------------------------------------
# duality and discriminants


def dualize(pres: OrderPresentation) -> OrderPresentation:
    """The R-linear dual as an explicit-basis presentation in the opposite ambient.

    The dual basis vector f_m satisfies <f_m, m'> = [m == m']; in ambient
    coordinates it is row m of the inverse basis matrix.
    """
    binv = pres._inverse
    if pres.ambient == GROUP:
        amb, cls = DUAL, DualElement
    else:
        amb, cls = GROUP, GroupAlgebraElement
    basis = tuple(cls(pres.p, pres.n, row) for row in binv)
    return OrderPresentation(amb, pres.p, pres.n, basis=basis, meta={"dual_of": dict(pres.meta)})


def _pair_vectors(f, x):
    s = None
    for a, b in zip(f, x):
        if a and b:
            s = a * b if s is None else s + a * b
    return s


def pairing_matrix(d: OrderPresentation, e: OrderPresentation):
    """P[m][m'] = <d_m, e_m'> and whether P is unimodular over R."""
    if d.ambient != DUAL or e.ambient != GROUP:
        raise ShapeMismatch("pairing_matrix takes (dual order, group order)")
    if (d.p, d.n) != (e.p, e.n):
        raise ShapeMismatch("orders have different (p, n)")
    z = zero(d.p)
    mat = []
    for f in monomial_basis(d):
        mat.append([_pair_vectors(f.coeffs, x.coeffs) or z for x in monomial_basis(e)])
    integral = all(x.is_integral() for row in mat for x in row)
    dt = linalg.det(mat)
    unimodular = integral and not dt.is_zero() and dt.valuation() == 0
    return mat, unimodular


def generator_pairing_table(d: OrderPresentation, e: OrderPresentation):
    """Rows <gen_k of d, basis monomial of e>, one row per generator."""
    if d.generators is None:
        raise ValueError("dual presentation has no generators")
    z = zero(d.p)
    return [[_pair_vectors(g.coeffs, x.coeffs) or z for x in monomial_basis(e)]
            for g in d.generators]


def delta_table_holds(d: OrderPresentation, e: OrderPresentation) -> bool:
    """<gen_k, m(e)> == [e is the k-th unit exponent] for all k and basis monomials."""
    ex = exponents(d.p, d.n)
    o, z = one(d.p), zero(d.p)
    for k, row in enumerate(generator_pairing_table(d, e)):
        for e_, v in zip(ex, row):
            want = o if (sum(e_) == 1 and e_[k] == 1) else z
            if v != want:
                return False
    return True


def trace_form(pres: OrderPresentation):
    """T[m][m'] = trace of multiplication by m*m' on the ambient algebra.

    The trace of a multiplication operator does not depend on the basis, so
    it is evaluated in ambient coordinates.
    """
    basis = monomial_basis(pres)
    dim = len(basis)
    t = [[None] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i, dim):
            v = (basis[i] * basis[j]).trace()
            t[i][j] = t[j][i] = v
    return t


def discriminant_valuation(pres: OrderPresentation):
    """Valuation of det of the trace form; INF when the form is degenerate."""
    d = linalg.det(trace_form(pres))
    return d.valuation() if d else INF


def expected_dual_discriminant(p: int, n: int, i_values) -> int:
    return p**n * (p - 1) * sum(i_values)


def dual_pair_report(d: OrderPresentation, e: OrderPresentation) -> dict:
    """Containment, discriminants and unimodularity for a candidate dual pair."""
    mat, unimodular = pairing_matrix(d, e)
    contained = all(x.is_integral() for row in mat for x in row)
    disc_d = discriminant_valuation(d)
    disc_e = discriminant_valuation(dualize(e))
    return {
        "containment": contained,
        "disc_dual": disc_d,
        "disc_primal_dual": disc_e,
        "disc_equal": disc_d == disc_e,
        "unimodular": unimodular,
        "confirmed": contained and unimodular and disc_d == disc_e,
    }


# ---------------------------------------------------------------------------
# order files

FAMILIES = {
    "tate": (GROUP, 1),
    "e2": (GROUP, 2),
    "e3": (GROUP, 3),
    "dual1": (DUAL, 1),
    "dual2": (DUAL, 2),
    "dual3": (DUAL, 3),
    "koch": (DUAL, None),
}


class OrderFileError(ValueError):
    pass


def params_from_mapping(p: int, d: dict) -> DualFamilyParams:
    from .localfield import scalar_parse

    known = {"i", "i1", "i2", "i3", "mu", "alpha", "beta"}
    extra = set(d) - known
    if extra:
        raise OrderFileError(f"unknown parameters: {sorted(extra)}")
    ints = {}
    for k in ("i1", "i2", "i3"):
        v = d.get(k, d.get("i", 0) if k == "i1" else 0)
        try:
            ints[k] = int(v)
        except (TypeError, ValueError) as exc:
            raise OrderFileError(f"parameter {k}={v!r} is not an integer") from exc
    scal = {k: scalar_parse(str(d.get(k, "0")), p) for k in ("mu", "alpha", "beta")}
    return DualFamilyParams(p, **ints, **scal)


def build_family(family: str, p: int, params: DualFamilyParams | None = None, theta=None):
    if family not in FAMILIES:
        raise OrderFileError(f"unknown family {family!r}")
    amb, n = FAMILIES[family]
    if family == "koch":
        return koch_order(theta)
    params = params or DualFamilyParams(p)
    return build_dual(params, n) if amb == DUAL else build_primal(params, n)


def order_from_json(d: dict) -> OrderPresentation:
    from .groupalg import element_from_json
    from .localfield import scalar_parse

    if not isinstance(d, dict):
        raise OrderFileError("order file must hold a JSON object")
    try:
        p = as_prime(d["p"])
    except (KeyError, ValueError, TypeError) as exc:
        raise OrderFileError(f"bad or missing prime: {exc}") from exc
    fam = d.get("family")
    try:
        if fam == "koch":
            theta = [[scalar_parse(str(v), p) for v in row] for row in d["theta"]]
            return koch_order(theta)
        if fam is not None:
            params = params_from_mapping(p, d.get("params", {}))
            pres = build_family(fam, p, params)
            if "n" in d and int(d["n"]) != pres.n:
                raise OrderFileError(f"family {fam} has n={pres.n}, file says n={d['n']}")
            if "ambient" in d and d["ambient"] != pres.ambient:
                raise OrderFileError(f"family {fam} lives in the {pres.ambient} ambient")
            return pres
        n = int(d["n"])
        amb = d["ambient"]
        key = "generators" if "generators" in d else "basis"
        elems = tuple(element_from_json(e) for e in d[key])
        return OrderPresentation(amb, p, n, **{key: elems})
    except OrderFileError:
        raise
    except (KeyError, TypeError, ValueError, ArithmeticError) as exc:
        raise OrderFileError(f"malformed order file: {exc!r}") from exc


def order_to_json(pres: OrderPresentation, explicit: bool = False) -> dict:
    from .groupalg import element_to_json

    d = {"p": pres.p, "n": pres.n, "ambient": pres.ambient}
    fam = pres.meta.get("family")
    if fam and not explicit:
        d["family"] = fam
        if fam == "koch":
            d["theta"] = pres.meta["theta"]
        else:
            d["params"] = pres.meta["params"]
        return d
    if pres.generators is not None:
        d["generators"] = [element_to_json(g) for g in pres.generators]
    else:
        d["basis"] = [element_to_json(b) for b in pres.basis]
    return d
