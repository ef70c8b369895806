"""Exact arithmetic in K = F_p(t) with the t-adic valuation.

Polynomials over F_p are tuples of ints in ``range(p)``, lowest degree first,
with no trailing zeros; ``()`` is the zero polynomial.  A :class:`LocalScalar`
is a reduced fraction ``num/den`` with ``den`` monic.  The uniformizer is
``t`` throughout.
"""
from __future__ import annotations

import math
import os
import re
import warnings
from dataclasses import dataclass
from functools import lru_cache

SUPPORTED_PRIMES = (2, 3, 5, 7)
DEFAULT_DEGREE_CAP = 4096


class _Infinity:
    """Valuation of zero.  Compares above every integer."""

    __slots__ = ()

    def __repr__(self):
        return "inf"

    def __str__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("hopforge.inf")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __neg__(self):
        raise ArithmeticError("negation of +inf valuation")


INF = _Infinity()


class DegreeCapExceeded(ArithmeticError):
    pass


def degree_cap() -> int:
    env = os.environ.get("HOPFORGE_DEGREE_CAP")
    return int(env) if env else DEFAULT_DEGREE_CAP


@dataclass(frozen=True)
class PrimeConfig:
    p: int

    def __post_init__(self):
        if self.p not in SUPPORTED_PRIMES:
            raise ValueError(f"unsupported prime p={self.p}; expected one of {SUPPORTED_PRIMES}")
        if self.p >= 7:
            warnings.warn(f"p={self.p} is supported but slow", RuntimeWarning, stacklevel=2)


def as_prime(cfg) -> int:
    if isinstance(cfg, PrimeConfig):
        return cfg.p
    p = int(cfg)
    if p not in SUPPORTED_PRIMES:
        raise ValueError(f"unsupported prime p={p}; expected one of {SUPPORTED_PRIMES}")
    return p


# ---------------------------------------------------------------------------
# dense polynomials over F_p


def _trim(c: list) -> tuple:
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def padd(a: tuple, b: tuple, p: int) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    c = list(a)
    for i, x in enumerate(b):
        c[i] = (c[i] + x) % p
    return _trim(c)


def psub(a: tuple, b: tuple, p: int) -> tuple:
    n = max(len(a), len(b))
    c = [0] * n
    for i, x in enumerate(a):
        c[i] = x
    for i, x in enumerate(b):
        c[i] = (c[i] - x) % p
    return _trim(c)


def pmul(a: tuple, b: tuple, p: int) -> tuple:
    if not a or not b:
        return ()
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1:
        s = b[0]
        if s == 1:
            return a
        return tuple(x * s % p for x in a)
    c = [0] * (len(a) + len(b) - 1)
    for j, y in enumerate(b):
        if y:
            for i, x in enumerate(a, j):
                c[i] += x * y
    return _trim([x % p for x in c])


def pscale(a: tuple, s: int, p: int) -> tuple:
    s %= p
    if not s:
        return ()
    if s == 1:
        return a
    return tuple(x * s % p for x in a)


def pshift(a: tuple, k: int) -> tuple:
    """Multiply by t^k (k >= 0)."""
    if not a or not k:
        return a
    return (0,) * k + a


def pord(a: tuple) -> int:
    """t-adic order of a nonzero polynomial."""
    for i, x in enumerate(a):
        if x:
            return i
    raise ValueError("order of zero polynomial")


def pdivmod(a: tuple, b: tuple, p: int) -> tuple[tuple, tuple]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    inv = pow(b[-1], -1, p)
    r = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = r[k] % p
        if c:
            c = c * inv % p
            q[k - db] = c
            off = k - db
            for i, y in enumerate(b):
                r[off + i] -= c * y
    return _trim(q), _trim([x % p for x in r[:db]])


def pgcd(a: tuple, b: tuple, p: int) -> tuple:
    while b:
        a, b = b, pdivmod(a, b, p)[1]
    if not a:
        return a
    return pscale(a, pow(a[-1], -1, p), p)


def ppow(a: tuple, e: int, p: int) -> tuple:
    r = (1,)
    while e:
        if e & 1:
            r = pmul(r, a, p)
        e >>= 1
        if e:
            a = pmul(a, a, p)
    return r


def pfrobenius(a: tuple, p: int) -> tuple:
    """a(t)^p = a(t^p) over F_p."""
    if len(a) <= 1:
        return a
    c = [0] * ((len(a) - 1) * p + 1)
    for i, x in enumerate(a):
        c[i * p] = x
    return tuple(c)


# ---------------------------------------------------------------------------
# scalars


def _is_monomial(d: tuple) -> bool:
    # d monic; true iff d == t^k
    for x in d[:-1]:
        if x:
            return False
    return True


class LocalScalar:
    """Element of F_p(t) stored as a reduced fraction with monic denominator."""

    __slots__ = ("p", "num", "den", "_mono", "_val")

    def __init__(self, p: int, num: tuple, den: tuple = (1,)):
        # trusted path: caller guarantees canonical form
        self.p = p
        self.num = num
        self.den = den
        self._mono = _is_monomial(den)
        self._val = None

    # -- construction -------------------------------------------------------

    @classmethod
    def make(cls, p: int, num, den=(1,)) -> LocalScalar:
        """Canonicalize an arbitrary fraction of coefficient sequences."""
        num = _trim([x % p for x in num])
        den = _trim([x % p for x in den])
        if not den:
            raise ZeroDivisionError("denominator reduces to 0 mod p")
        if not num:
            return cls(p, (), (1,))
        return cls._reduce(p, num, den)

    @classmethod
    def _reduce(cls, p, num, den):
        # strip common powers of t first; most values here are Laurent polynomials
        k = min(pord(num), pord(den))
        if k:
            num = num[k:]
            den = den[k:]
        if len(den) > 1 and not _is_monomial(den):
            g = pgcd(num, den, p)
            if len(g) > 1:
                num = pdivmod(num, g, p)[0]
                den = pdivmod(den, g, p)[0]
        lc = den[-1]
        if lc != 1:
            inv = pow(lc, -1, p)
            num = pscale(num, inv, p)
            den = pscale(den, inv, p)
        return cls(p, num, den)

    @classmethod
    def from_int(cls, p: int, c: int) -> LocalScalar:
        c %= p
        return cls(p, (c,) if c else (), (1,))

    @classmethod
    def t_power(cls, p: int, k: int) -> LocalScalar:
        """The uniformizer power t^k, k any integer."""
        if k >= 0:
            return cls(p, (0,) * k + (1,), (1,))
        return cls(p, (1,), (0,) * (-k) + (1,))

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def valuation(self):
        v = self._val
        if v is None:
            if not self.num:
                v = INF
            else:
                v = pord(self.num) - pord(self.den)
            self._val = v
        return v

    def is_integral(self) -> bool:
        return not self.num or self.valuation() >= 0

    def degree(self) -> int:
        """Total polynomial degree, the quantity watched by the degree cap."""
        return max(len(self.num) - 1, 0) + len(self.den) - 1

    def constant_value(self):
        """The F_p value if this scalar is a constant, else None."""
        if not self.num:
            return 0
        if len(self.num) == 1 and len(self.den) == 1:
            return self.num[0]
        return None

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, LocalScalar):
            if other.p != self.p:
                raise ValueError(f"characteristic mismatch: {self.p} vs {other.p}")
            return other
        if isinstance(other, int):
            return LocalScalar.from_int(self.p, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        p = self.p
        d1, d2 = self.den, other.den
        if d1 == d2:
            if len(d1) == 1:
                return LocalScalar(p, padd(self.num, other.num, p), d1)
            num = padd(self.num, other.num, p)
            if not num:
                return LocalScalar(p, (), (1,))
            return LocalScalar._reduce(p, num, d1)
        if self._mono and other._mono:
            k1, k2 = len(d1), len(d2)
            if k1 >= k2:
                num = padd(self.num, pshift(other.num, k1 - k2), p)
                den = d1
            else:
                num = padd(pshift(self.num, k2 - k1), other.num, p)
                den = d2
            if not num:
                return LocalScalar(p, (), (1,))
            return LocalScalar._reduce(p, num, den)
        num = padd(pmul(self.num, d2, p), pmul(other.num, d1, p), p)
        if not num:
            return LocalScalar(p, (), (1,))
        return LocalScalar._reduce(p, num, pmul(d1, d2, p))

    __radd__ = __add__

    def __neg__(self):
        if not self.num:
            return self
        p = self.p
        return LocalScalar(p, tuple(p - x if x else 0 for x in self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return LocalScalar(self.p, (), (1,))
        p = self.p
        if len(other.num) == 1 and len(other.den) == 1:
            c = other.num[0]
            return self if c == 1 else LocalScalar(p, pscale(self.num, c, p), self.den)
        if len(self.num) == 1 and len(self.den) == 1:
            c = self.num[0]
            return other if c == 1 else LocalScalar(p, pscale(other.num, c, p), other.den)
        num = pmul(self.num, other.num, p)
        if self._mono and other._mono:
            return LocalScalar._reduce(p, num, pshift(self.den, len(other.den) - 1))
        return LocalScalar._reduce(p, num, pmul(self.den, other.den, p))

    __rmul__ = __mul__

    def inverse(self) -> LocalScalar:
        if not self.num:
            raise ZeroDivisionError("inverse of zero in F_p(t)")
        p = self.p
        num, den = self.den, self.num
        lc = den[-1]
        if lc != 1:
            inv = pow(lc, -1, p)
            num = pscale(num, inv, p)
            den = pscale(den, inv, p)
        return LocalScalar(p, num, den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        p = self.p
        if e % p == 0 and e:
            return frobenius(self) ** (e // p)
        num = ppow(self.num, e, p)
        den = ppow(self.den, e, p)
        return LocalScalar(p, num, den) if num else LocalScalar(p, (), (1,))

    def __eq__(self, other):
        if isinstance(other, int):
            other = LocalScalar.from_int(self.p, other)
        if not isinstance(other, LocalScalar):
            return NotImplemented
        return self.p == other.p and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.p, self.num, self.den))

    def __repr__(self):
        return f"LocalScalar(p={self.p}, {format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def zero(p: int) -> LocalScalar:
    return _zero(p)


def one(p: int) -> LocalScalar:
    return _one(p)


@lru_cache(maxsize=None)
def _zero(p):
    return LocalScalar(p, (), (1,))


@lru_cache(maxsize=None)
def _one(p):
    return LocalScalar(p, (1,), (1,))


def valuation(x: LocalScalar):
    return x.valuation()


def frobenius(x: LocalScalar) -> LocalScalar:
    p = x.p
    if not x.num:
        return x
    return LocalScalar(p, pfrobenius(x.num, p), pfrobenius(x.den, p))


def wp(x: LocalScalar) -> LocalScalar:
    """Artin-Schreier map x -> x^p - x."""
    return frobenius(x) - x


@lru_cache(maxsize=None)
def _inv_factorial(p: int, m: int) -> int:
    return pow(math.factorial(m) % p, -1, p)


def gen_binom(y: LocalScalar, m: int) -> LocalScalar:
    """Generalized binomial coefficient y(y-1)...(y-m+1)/m!, 0 <= m < p."""
    p = y.p
    if m < 0 or m >= p:
        raise ValueError(f"gen_binom needs 0 <= m < p, got m={m}, p={p}")
    r = one(p)
    for k in range(m):
        r = r * (y - k)
    return r * _inv_factorial(p, m)


def check_degree(x: LocalScalar, cap: int | None = None) -> LocalScalar:
    cap = degree_cap() if cap is None else cap
    if x.degree() > cap:
        raise DegreeCapExceeded(f"scalar degree {x.degree()} exceeds cap {cap}")
    return x


# ---------------------------------------------------------------------------
# parsing and printing

_TOKEN = re.compile(r"\s*(?:(\d+)|(t)|(.))")


class ScalarParseError(ValueError):
    pass


def _tokenize(text: str):
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        if m.group(1) is not None:
            out.append(("int", int(m.group(1))))
        elif m.group(2) is not None:
            out.append(("t", None))
        else:
            ch = m.group(3)
            if ch.isspace():
                continue
            if ch not in "+-*/^()":
                raise ScalarParseError(f"unexpected character {ch!r} in {text!r}")
            out.append((ch, None))
    return out


class _Parser:
    # expr := term (('+'|'-') term)*
    # term := unary (('*'|'/') unary | implicit-product)*
    # unary := '-' unary | power
    # power := atom ('^' ['-'] int)?
    def __init__(self, tokens, p):
        self.toks = tokens
        self.i = 0
        self.p = p

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind=None):
        if self.i >= len(self.toks):
            raise ScalarParseError("unexpected end of input")
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ScalarParseError(f"expected {kind!r}, got {tok[0]!r}")
        self.i += 1
        return tok

    def expr(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek() in ("*", "/", "int", "t", "("):
            k = self.peek()
            if k in ("*", "/"):
                self.take()
                w = self.unary()
                if k == "/":
                    if w.is_zero():
                        raise ZeroDivisionError("division by zero in scalar literal")
                    v = v / w
                else:
                    v = v * w
            else:
                v = v * self.power()
        return v

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            e = sign * self.take("int")[1]
            if e < 0 and v.is_zero():
                raise ZeroDivisionError("negative power of zero")
            v = v**e
        return v

    def atom(self):
        kind, val = self.take()
        p = self.p
        if kind == "int":
            return LocalScalar.from_int(p, val)
        if kind == "t":
            return LocalScalar(p, (0, 1), (1,))
        if kind == "(":
            v = self.expr()
            self.take(")")
            return v
        raise ScalarParseError(f"unexpected token {kind!r}")


def scalar_parse(text: str, cfg) -> LocalScalar:
    p = as_prime(cfg)
    if not isinstance(text, str):
        if isinstance(text, int):
            return LocalScalar.from_int(p, text)
        raise ScalarParseError(f"scalar literal must be a string, got {type(text).__name__}")
    toks = _tokenize(text)
    if not toks:
        raise ScalarParseError("empty scalar literal")
    parser = _Parser(toks, p)
    v = parser.expr()
    if parser.i != len(toks):
        raise ScalarParseError(f"trailing input in {text!r}")
    return v


def format_poly(a: tuple) -> str:
    if not a:
        return "0"
    terms = []
    for k, c in enumerate(a):
        if not c:
            continue
        if k == 0:
            terms.append(str(c))
            continue
        mono = "t" if k == 1 else f"t^{k}"
        terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms)


def _single_term(a: tuple) -> bool:
    return sum(1 for x in a if x) == 1


def format_scalar(x: LocalScalar) -> str:
    num = format_poly(x.num)
    if x.den == (1,):
        return num
    den = format_poly(x.den)
    if not _single_term(x.num):
        num = f"({num})"
    if not _single_term(x.den):
        den = f"({den})"
    return f"{num}/{den}"
