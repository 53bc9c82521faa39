"""Exact rationals and the Eisenstein field Q(w), w^2 + w + 1 = 0.

Rationals are ``gmpy2.mpq`` values (always reduced, hashable, structural
equality).  Elements of Q(w) are :class:`CycNum` instances stored in the
basis {1, w}.  Both fields expose the same small contract through
:data:`QQ` and :data:`QQW` so that the polynomial, linear-algebra and
Groebner code can run over either one.
"""

from __future__ import annotations

import re
from typing import Union

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Rat

__all__ = [
    "Rat",
    "CycNum",
    "Field",
    "QQ",
    "QQW",
    "W",
    "rat",
    "parse_rat",
    "render_rat",
    "parse_cyc",
    "render",
    "cyc_mul",
    "cyc_inv",
]

_RAT_TYPE = type(Rat(0))
_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def rat(x) -> Rat:
    """Coerce an int, a Rat or a "p/q" string to a Rat."""
    if isinstance(x, _RAT_TYPE):
        return x
    if isinstance(x, str):
        return parse_rat(x)
    if isinstance(x, int):
        return Rat(x)
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return Rat(int(x.numerator), int(x.denominator))
    raise TypeError(f"cannot convert {x!r} to a rational")


def parse_rat(text: str) -> Rat:
    """Parse ``"p"`` or ``"p/q"`` (q > 0).  Raises ValueError otherwise."""
    m = _RAT_RE.match(text)
    if m is None:
        raise ValueError(f"malformed rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Rat(num, den)


def render_rat(x) -> str:
    x = rat(x)
    if x.denominator == 1:
        return str(int(x.numerator))
    return f"{int(x.numerator)}/{int(x.denominator)}"


class CycNum:
    """The element ``a + b*w`` of Q(w), where w is a primitive cube root of 1."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", rat(a))
        object.__setattr__(self, "b", rat(b))

    def __setattr__(self, name, value):
        raise AttributeError("CycNum is immutable")

    @staticmethod
    def _lift(other) -> "CycNum | None":
        if isinstance(other, CycNum):
            return other
        if isinstance(other, (int, _RAT_TYPE)):
            return CycNum(other, 0)
        return None

    def __add__(self, other):
        o = CycNum._lift(other)
        if o is None:
            return NotImplemented
        return CycNum(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(-self.a, -self.b)

    def __sub__(self, other):
        o = CycNum._lift(other)
        if o is None:
            return NotImplemented
        return CycNum(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = CycNum._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, _RAT_TYPE)):
            return CycNum(self.a * other, self.b * other)
        if not isinstance(other, CycNum):
            return NotImplemented
        # (a + bw)(c + dw) = ac + (ad + bc)w + bd w^2,  w^2 = -1 - w
        a, b, c, d = self.a, self.b, other.a, other.b
        bd = b * d
        return CycNum(a * c - bd, a * d + b * c - bd)

    __rmul__ = __mul__

    def conjugate(self) -> "CycNum":
        """Image under w -> w^2, i.e. (a - b) - b*w."""
        return CycNum(self.a - self.b, -self.b)

    def norm(self) -> Rat:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def inverse(self) -> "CycNum":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(w)")
        return CycNum((self.a - self.b) / n, -self.b / n)

    def __truediv__(self, other):
        if isinstance(other, (int, _RAT_TYPE)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(w)")
            return CycNum(self.a / other, self.b / other)
        if not isinstance(other, CycNum):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        o = CycNum._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = CycNum(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = CycNum._lift(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def is_rational(self) -> bool:
        return self.b == 0

    def to_complex(self) -> complex:
        w = complex(-0.5, 3**0.5 / 2)
        return float(self.a) + float(self.b) * w

    def sort_key(self):
        return (self.a, self.b)

    def __repr__(self):
        return f"CycNum({render(self)!r})"

    def __str__(self):
        return render(self)


W = CycNum(0, 1)


def cyc_mul(x: CycNum, y: CycNum) -> CycNum:
    return CycNum._lift(x) * CycNum._lift(y)


def cyc_inv(x: CycNum) -> CycNum:
    """Inverse via the conjugate: (a + bw)^-1 = (a - b - bw) / (a^2 - ab + b^2)."""
    return CycNum._lift(x).inverse()


def render(x) -> str:
    """Render a field element: ``"p/q"`` or ``"a + b*w"``."""
    if not isinstance(x, CycNum):
        return render_rat(x)
    a, b = x.a, x.b
    if b == 0:
        return render_rat(a)
    if b == 1:
        wpart = "w"
    elif b == -1:
        wpart = "-w"
    else:
        wpart = f"{render_rat(b)}*w"
    if a == 0:
        return wpart
    if wpart.startswith("-"):
        return f"{render_rat(a)} - {wpart[1:]}"
    return f"{render_rat(a)} + {wpart}"


_CYC_TERM_RE = re.compile(
    r"""\s*([+-])?\s*          # sign
        (?:(\d+(?:/\d+)?)\s*)? # coefficient
        (\*\s*w|w)?\s*         # optional w factor
    """,
    re.VERBOSE,
)


def parse_cyc(text: str) -> CycNum:
    """Parse ``"a + b*w"``-style text (any order of terms, either may be absent)."""
    s = text.strip()
    if not s:
        raise ValueError("empty field element")
    a, b = Rat(0), Rat(0)
    pos = 0
    first = True
    while pos < len(s):
        m = _CYC_TERM_RE.match(s, pos)
        sign, coef, wf = m.group(1), m.group(2), m.group(3)
        if m.end() == pos or (coef is None and wf is None):
            raise ValueError(f"malformed field element: {text!r}")
        if sign is None and not first:
            raise ValueError(f"missing operator in {text!r}")
        if coef is not None and wf == "w":
            raise ValueError(f"expected '*' before w in {text!r}")
        value = parse_rat(coef) if coef is not None else Rat(1)
        if sign == "-":
            value = -value
        if wf is None:
            a += value
        else:
            b += value
        first = False
        pos = m.end()
    return CycNum(a, b)


class Field:
    """Minimal field contract shared by Q and Q(w).

    Elements use the ordinary Python operators; the methods below exist for
    code that wants to be explicit about which field it works in.
    """

    def __init__(self, name: str, zero, one, convert, parse):
        self.name = name
        self.zero = zero
        self.one = one
        self._convert = convert
        self._parse = parse

    def __call__(self, x):
        return self._convert(x)

    def __repr__(self):
        return self.name

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError(f"inverse of zero in {self.name}")
        return self.one / x

    def eq(self, x, y) -> bool:
        return x == y

    def parse(self, text: str):
        return self._parse(text)

    def render(self, x) -> str:
        return render(x)


def _to_cyc(x) -> CycNum:
    if isinstance(x, CycNum):
        return x
    if isinstance(x, str):
        return parse_cyc(x)
    return CycNum(rat(x), 0)


def _parse_q(text: str) -> Rat:
    return parse_rat(text)


QQ = Field("QQ", Rat(0), Rat(1), rat, _parse_q)
QQW = Field("QQ(w)", CycNum(0), CycNum(1), _to_cyc, parse_cyc)

Scalar = Union[Rat, CycNum, int]
