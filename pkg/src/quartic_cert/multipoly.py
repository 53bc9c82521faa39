"""Sparse multivariate polynomials over Q or Q(w).

A polynomial is a map from exponent tuples to nonzero coefficients.  The
default monomial order is graded reverse lexicographic.  Coordinates on
P(V), V = {sum x_i = 0}, are obtained by eliminating one variable
(x5 by default) via ``x5 = -(y0 + ... + y4)``.
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Callable, Iterable, Sequence

from .exactfield import QQ, QQW, CycNum, Rat, parse_rat, rat, render_rat

Mono = tuple  # tuple[int, ...]


def grevlex_key(m: Mono) -> tuple:
    """Ascending sort key for graded reverse lexicographic order."""
    return (sum(m),) + tuple(-e for e in reversed(m))


def lex_key(m: Mono) -> tuple:
    return tuple(m)


ORDERS: dict[str, Callable[[Mono], tuple]] = {
    "grevlex": grevlex_key,
    "lex": lex_key,
}


def _is_scalar(x) -> bool:
    return isinstance(x, (int, CycNum, type(Rat(0))))


def _coerce_scalar(x):
    if isinstance(x, CycNum):
        return x
    return rat(x)


class MPoly:
    """Immutable sparse polynomial in ``nvars`` variables."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, terms: dict | None = None, nvars: int = 5):
        clean = {}
        if terms:
            for m, c in terms.items():
                if len(m) != nvars:
                    raise ValueError(f"monomial {m} has wrong length for {nvars} variables")
                if c != 0:
                    clean[tuple(m)] = _coerce_scalar(c)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "MPoly":
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        object.__setattr__(p, "nvars", nvars)
        object.__setattr__(p, "terms", terms)
        object.__setattr__(p, "_hash", None)
        return p

    # constructors

    @classmethod
    def zero(cls, nvars: int) -> "MPoly":
        return cls._raw({}, nvars)

    @classmethod
    def constant(cls, c, nvars: int) -> "MPoly":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> "MPoly":
        e = [0] * nvars
        e[i] = 1
        return cls._raw({tuple(e): Rat(1)}, nvars)

    @classmethod
    def monomial(cls, m: Mono, c=1) -> "MPoly":
        return cls({tuple(m): c}, len(m))

    @classmethod
    def gens(cls, nvars: int) -> list["MPoly"]:
        return [cls.var(i, nvars) for i in range(nvars)]

    # arithmetic

    def _other(self, other) -> "MPoly | None":
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        if _is_scalar(other):
            return MPoly.constant(other, self.nvars)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in o.terms.items():
            s = terms.get(m, 0) + c
            if s == 0:
                terms.pop(m, None)
            else:
                terms[m] = s
        return MPoly._raw(terms, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw({m: -c for m, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> "MPoly":
        if c == 0:
            return MPoly.zero(self.nvars)
        c = _coerce_scalar(c)
        return MPoly._raw({m: v * c for m, v in self.terms.items()}, self.nvars)

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        o = self._other(other)
        if o is None:
            return NotImplemented
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2
        return MPoly({m: c for m, c in terms.items() if c != 0}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.constant(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._other(other) if not isinstance(other, MPoly) else other
        if o is None:
            return NotImplemented
        return self.nvars == o.nvars and self.terms == o.terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.nvars, frozenset(self.terms.items()))))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # structure

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def homogeneous_degree(self) -> int | None:
        """The common degree of all terms, or None if inhomogeneous or zero."""
        degs = {sum(m) for m in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return self.homogeneous_degree() is not None

    def sorted_terms(self, order: str = "grevlex") -> list:
        """Terms in descending monomial order."""
        key = ORDERS[order]
        return sorted(self.terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    def leading_term(self, order: str = "grevlex"):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = ORDERS[order]
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def coefficient(self, m: Mono):
        return self.terms.get(tuple(m), Rat(0))

    def monic(self, order: str = "grevlex") -> "MPoly":
        _, c = self.leading_term(order)
        return self.scale(1 / c) if c != 1 else self

    def is_rational(self) -> bool:
        return all(not isinstance(c, CycNum) or c.is_rational() for c in self.terms.values())

    # calculus / evaluation

    def partial(self, i: int) -> "MPoly":
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range")
        terms = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                mm = list(m)
                mm[i] = e - 1
                terms[tuple(mm)] = c * e
        return MPoly._raw(terms, self.nvars)

    def gradient(self) -> list["MPoly"]:
        return [self.partial(i) for i in range(self.nvars)]

    def evaluate(self, point: Sequence):
        return evaluate(self, point)

    def __call__(self, *point):
        return evaluate(self, point)

    def substitute(self, images: Sequence["MPoly"]) -> "MPoly":
        """Replace variable i by ``images[i]`` (all images share one ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0].nvars
        powers: dict = {}

        def power(i: int, e: int) -> MPoly:
            if (i, e) not in powers:
                powers[(i, e)] = images[i] ** e
            return powers[(i, e)]

        acc: dict = {}
        for m, c in self.terms.items():
            term = MPoly.constant(c, target)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            for mm, cc in term.terms.items():
                acc[mm] = acc.get(mm, 0) + cc
        return MPoly({m: c for m, c in acc.items() if c != 0}, target)

    # rendering

    def to_str(self, var: str | None = None) -> str:
        if var is None:
            var = "x" if self.nvars == 6 else "y"
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            sign, body = _render_term(m, c, var)
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign < 0 else "") + first_body
        for sign, body in parts[1:]:
            out += (" - " if sign < 0 else " + ") + body
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MPoly({self.to_str()!r}, nvars={self.nvars})"


def _render_mono(m: Mono, var: str) -> str:
    factors = []
    for i, e in enumerate(m):
        if e == 1:
            factors.append(f"{var}{i}")
        elif e > 1:
            factors.append(f"{var}{i}^{e}")
    return "*".join(factors)


def _render_term(m: Mono, c, var: str) -> tuple[int, str]:
    mono = _render_mono(m, var)
    sign = 1
    if isinstance(c, CycNum) and not c.is_rational():
        if c.a == 0:
            b = c.b
            if b < 0:
                sign, b = -1, -b
            coef = "w" if b == 1 else f"{render_rat(b)}*w"
        else:
            coef = f"({c})"
        return sign, coef if not mono else f"{coef}*{mono}"
    q = c.a if isinstance(c, CycNum) else c
    if q < 0:
        sign, q = -1, -q
    if not mono:
        return sign, render_rat(q)
    if q == 1:
        return sign, mono
    return sign, f"{render_rat(q)}*{mono}"


_TOKEN_RE = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([a-vx-zA-Z])(\d+)|(w)|(\^)|(\*)|([+-])|(\()|(\)))")


def parse_poly(text: str, nvars: int, field=QQ) -> MPoly:
    """Parse the polynomial literal grammar, e.g. ``"3/2*y0^2*y3 - w*y4^3"``.

    Variables are a letter followed by an index; ``w`` is the cube root of
    unity and forces coefficients into Q(w).  Parenthesised coefficients
    such as ``(1 + 2*w)*y0`` are accepted.
    """
    tokens = []
    pos = 0
    s = text.strip()
    while pos < len(s):
        m = _TOKEN_RE.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"unexpected input at {s[pos:]!r}")
        tokens.append(m)
        pos = m.end()
    i = 0
    one = field.one

    def peek():
        return tokens[i] if i < len(tokens) else None

    def parse_factor():
        nonlocal i
        tok = peek()
        if tok is None:
            raise ValueError(f"unexpected end of input in {text!r}")
        i += 1
        if tok.group(1):
            return MPoly.constant(field(parse_rat(tok.group(1))), nvars)
        if tok.group(2):
            idx = int(tok.group(3))
            if idx >= nvars:
                raise ValueError(f"variable index {idx} out of range")
            base = MPoly.var(idx, nvars)
            nxt = peek()
            if nxt is not None and nxt.group(5):
                i += 1
                exp_tok = peek()
                if exp_tok is None or not exp_tok.group(1) or "/" in exp_tok.group(1):
                    raise ValueError(f"bad exponent in {text!r}")
                i += 1
                return base ** int(exp_tok.group(1))
            return base
        if tok.group(4):
            return MPoly.constant(CycNum(0, 1), nvars)
        if tok.group(8):
            inner = parse_sum()
            close = peek()
            if close is None or not close.group(9):
                raise ValueError(f"unbalanced parentheses in {text!r}")
            i += 1
            return inner
        raise ValueError(f"unexpected token {tok.group(0)!r} in {text!r}")

    def parse_term():
        nonlocal i
        value = parse_factor()
        while peek() is not None and peek().group(6):
            i += 1
            value = value * parse_factor()
        return value

    def parse_sum():
        nonlocal i
        total = MPoly.zero(nvars)
        sign = 1
        tok = peek()
        if tok is not None and tok.group(7):
            sign = -1 if tok.group(7) == "-" else 1
            i += 1
        total = total + parse_term().scale(sign * one)
        while peek() is not None and peek().group(7):
            sign = -1 if peek().group(7) == "-" else 1
            i += 1
            total = total + parse_term().scale(sign * one)
        return total

    result = parse_sum()
    if i != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    if field is QQW:
        result = MPoly({m: QQW(c) for m, c in result.terms.items()}, nvars)
    return result


def evaluate(f: MPoly, point: Sequence):
    """Exact evaluation of ``f`` at ``point``; powers are cached per coordinate."""
    if len(point) != f.nvars:
        raise ValueError(f"point has {len(point)} coordinates, expected {f.nvars}")
    powcache: list[dict] = [{0: 1} for _ in point]
    total = Rat(0)
    for m, c in f.terms.items():
        v = c
        for i, e in enumerate(m):
            if e:
                cache = powcache[i]
                if e not in cache:
                    cache[e] = point[i] ** e
                v = v * cache[e]
        total = total + v
    return total


def linear_form(coeffs: Sequence, nvars: int | None = None) -> MPoly:
    n = len(coeffs) if nvars is None else nvars
    return MPoly({tuple(1 if j == i else 0 for j in range(n)): c for i, c in enumerate(coeffs)}, n)


def power_sum(k: int, nvars: int) -> MPoly:
    return MPoly({tuple(k if j == i else 0 for j in range(nvars)): 1 for i in range(nvars)}, nvars)


def build_pencil_quartic(t) -> MPoly:
    """F_t = t * sum x_i^4 - (sum x_i^2)^2 in x0..x5."""
    t = rat(t)
    return power_sum(4, 6).scale(t) - power_sum(2, 6) ** 2


def hyperplane_images(nvars: int = 6, drop: int = 5) -> list[MPoly]:
    """Images of x_i under the chart that eliminates ``x_drop = -sum(others)``."""
    n = nvars - 1
    ys = MPoly.gens(n)
    images = []
    j = 0
    for i in range(nvars):
        if i == drop:
            images.append(-sum(ys, MPoly.zero(n)))
        else:
            images.append(ys[j])
            j += 1
    return images


def restrict_to_hyperplane(f: MPoly, drop: int = 5) -> MPoly:
    """Restrict a form in x0..x5 to V by substituting x_drop = -(sum of the others)."""
    if f.nvars != 6:
        raise ValueError("restriction expects a polynomial in 6 variables")
    g = f.substitute(hyperplane_images(6, drop))
    d = f.homogeneous_degree()
    if d is not None and not g.is_zero() and g.homogeneous_degree() != d:
        raise ArithmeticError("restriction broke homogeneity")
    return g


def lift_from_hyperplane(g: MPoly, drop: int = 5) -> MPoly:
    """A 6-variable form whose restriction is ``g`` (y_j -> x_j, skipping ``drop``)."""
    if g.nvars != 5:
        raise ValueError("lift expects a polynomial in 5 variables")
    terms = {}
    for m, c in g.terms.items():
        mm = list(m)
        mm.insert(drop, 0)
        terms[tuple(mm)] = c
    return MPoly._raw(terms, 6)


def project_point(p: Sequence, drop: int = 5) -> tuple:
    """Chart coordinates of a point of V (drop one coordinate)."""
    return tuple(c for i, c in enumerate(p) if i != drop)


def permute_vars(g, f: MPoly) -> MPoly:
    """Left action of a permutation on polynomials: x_i -> x_{g(i)}.

    ``g`` may be a :class:`~quartic_cert.symmetric.Perm` or any sequence
    of images.  Satisfies ``(gh).f == g.(h.f)`` with ``(gh)(i) = g(h(i))``.
    """
    images = tuple(g)
    if len(images) != f.nvars:
        raise ValueError("permutation degree does not match variable count")
    terms = {}
    for m, c in f.terms.items():
        mm = [0] * f.nvars
        for i, e in enumerate(m):
            mm[images[i]] = e
        terms[tuple(mm)] = c
    return MPoly._raw(terms, f.nvars)


@lru_cache(maxsize=None)
def graded_monomials(nvars: int, d: int, order: str = "grevlex") -> tuple:
    """All degree-``d`` monomials in ``nvars`` variables, descending in ``order``."""
    monos = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        monos.append(tuple(e))
    monos.sort(key=ORDERS[order], reverse=True)
    assert len(monos) == comb(d + nvars - 1, nvars - 1)
    return tuple(monos)


def coefficient_vector(f: MPoly, frame: Sequence[Mono]) -> list:
    """Coefficients of ``f`` in the monomial frame; raises if ``f`` has other terms."""
    index = {m: i for i, m in enumerate(frame)}
    vec = [Rat(0)] * len(frame)
    for m, c in f.terms.items():
        if m not in index:
            raise ValueError(f"term {m} outside the monomial frame")
        vec[index[m]] = c
    return vec


def from_coefficients(vec: Iterable, frame: Sequence[Mono]) -> MPoly:
    frame = list(frame)
    return MPoly({m: c for m, c in zip(frame, vec) if c != 0}, len(frame[0]))
