"""Exact coefficient rings.

``LaurentDelta`` is Z[d, 1/d].  ``RElem`` models the BMW coefficient ring
through its embedding into Q(d)[l, 1/l] with ``m = (1/l - l)/(d - 1)``.
Every coefficient of l that can arise from the ring generators has a
denominator of the form ``d^b (d-1)^a``, so a coefficient is stored as a
Laurent polynomial in d over a power of ``(d - 1)``.  That keeps equality
syntactic without general polynomial gcds.
"""

from __future__ import annotations

import re
from typing import Dict, Iterable, Mapping, Tuple, Union

__all__ = [
    "LaurentDelta",
    "Rat",
    "RElem",
    "NotInImage",
    "m_value",
    "mu_specialize",
    "r_add",
    "r_mul",
    "parse_relem",
    "parse_laurent",
]


class NotInImage(ValueError):
    """A coefficient has no Laurent-polynomial specialization at l = 1."""


def _clean(d: Mapping[int, int]) -> Dict[int, int]:
    return {k: v for k, v in d.items() if v}


def _poly_mul(a: Mapping[int, int], b: Mapping[int, int]) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for i, x in a.items():
        for j, y in b.items():
            k = i + j
            out[k] = out.get(k, 0) + x * y
    return _clean(out)


def _poly_add(a: Mapping[int, int], b: Mapping[int, int], sign: int = 1) -> Dict[int, int]:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
    return _clean(out)


class LaurentDelta:
    """Laurent polynomial in d with integer coefficients."""

    __slots__ = ("c", "_h")

    def __init__(self, coeffs: Union[Mapping[int, int], int, None] = None):
        if coeffs is None:
            self.c: Dict[int, int] = {}
        elif isinstance(coeffs, int):
            self.c = {0: coeffs} if coeffs else {}
        else:
            self.c = _clean(coeffs)
        self._h = None

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentDelta":
        return cls({exp: coeff})

    @classmethod
    def one(cls) -> "LaurentDelta":
        return cls({0: 1})

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self) -> bool:
        return bool(self.c)

    def _coerce(self, other) -> "LaurentDelta":
        if isinstance(other, LaurentDelta):
            return other
        if isinstance(other, int):
            return LaurentDelta(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return LaurentDelta(_poly_add(self.c, o.c))

    __radd__ = __add__

    def __neg__(self):
        return LaurentDelta({k: -v for k, v in self.c.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return LaurentDelta(_poly_add(self.c, o.c, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return LaurentDelta(_poly_mul(self.c, o.c))

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentDelta":
        """Multiply by d^k."""
        return LaurentDelta({e + k: v for e, v in self.c.items()})

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.c == o.c

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self.c.items()))
        return self._h

    def evaluate(self, d) -> object:
        return sum(v * d ** k for k, v in self.c.items())

    def __repr__(self):
        return f"LaurentDelta({_fmt_laurent(self.c)})"

    def __str__(self):
        return _fmt_laurent(self.c)


def _fmt_poly(c: Mapping[int, int], var: str = "d") -> str:
    if not c:
        return "0"
    parts = []
    for e in sorted(c, reverse=True):
        v = c[e]
        sign = "-" if v < 0 else "+"
        a = abs(v)
        if e == 0:
            body = str(a)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append((sign, body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


def _fmt_laurent(c: Mapping[int, int]) -> str:
    return _fmt_poly(c)


_TERM = re.compile(r"([+-])?(\d+)?(\*)?(d(?:\^(-?\d+))?)?")


def _parse_poly(text: str) -> Dict[int, int]:
    s = text.replace(" ", "")
    if s in ("", "0"):
        return {}
    out: Dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign, digits, star, mono, exp = m.groups()
        if m.end() == pos or (not digits and not mono) or (star and not (digits and mono)):
            raise ValueError(f"bad polynomial text {text!r}")
        if pos > 0 and not sign:
            raise ValueError(f"bad polynomial text {text!r}")
        coef = int(digits) if digits else 1
        e = (int(exp) if exp is not None else 1) if mono else 0
        out[e] = out.get(e, 0) + (-coef if sign == "-" else coef)
        pos = m.end()
    return _clean(out)


def parse_laurent(text: str) -> LaurentDelta:
    """Parse ``"d^2 - 3 + 2*d^-1"`` style text."""
    return LaurentDelta(_parse_poly(text))


# --------------------------------------------------------------------------
# Z[d, 1/d, 1/(d-1)]


def _eval_at_one(c: Mapping[int, int]) -> int:
    return sum(c.values())


def _div_by_dm1(c: Mapping[int, int]) -> Dict[int, int]:
    """Exact division of a Laurent polynomial by (d - 1); caller checks p(1)=0."""
    if not c:
        return {}
    lo, hi = min(c), max(c)
    out: Dict[int, int] = {}
    carry = 0
    # p = (d-1) q; top-down synthetic division
    for e in range(hi, lo - 1, -1):
        carry = carry + c.get(e, 0)
        if e > lo:
            out[e - 1] = carry
    if carry != 0:
        raise ArithmeticError("not divisible by d-1")
    return _clean(out)


_DM1_POWERS: Dict[int, Dict[int, int]] = {0: {0: 1}}


def _dm1_power(a: int) -> Dict[int, int]:
    if a not in _DM1_POWERS:
        _DM1_POWERS[a] = _poly_mul(_dm1_power(a - 1), {1: 1, 0: -1})
    return _DM1_POWERS[a]


class Rat:
    """``num / (d-1)^a`` with ``num`` a Laurent polynomial in d, in lowest terms."""

    __slots__ = ("num", "a", "_h")

    def __init__(self, num: Mapping[int, int], a: int = 0, _normalized: bool = False):
        num = _clean(num)
        if not _normalized:
            while a > 0 and num and _eval_at_one(num) == 0:
                num = _div_by_dm1(num)
                a -= 1
            if not num:
                a = 0
            if a < 0:
                num = _poly_mul(num, _dm1_power(-a))
                a = 0
        self.num = num
        self.a = a
        self._h = None

    def is_zero(self) -> bool:
        return not self.num

    def __add__(self, other: "Rat") -> "Rat":
        if not other.num:
            return self
        if not self.num:
            return other
        a = max(self.a, other.a)
        x = self.num if self.a == a else _poly_mul(self.num, _dm1_power(a - self.a))
        y = other.num if other.a == a else _poly_mul(other.num, _dm1_power(a - other.a))
        return Rat(_poly_add(x, y), a)

    def __neg__(self) -> "Rat":
        return Rat({k: -v for k, v in self.num.items()}, self.a, True)

    def __mul__(self, other: "Rat") -> "Rat":
        if not self.num or not other.num:
            return Rat({})
        prod = _poly_mul(self.num, other.num)
        a = self.a + other.a
        return Rat(prod, a, a == 0)

    def __eq__(self, other):
        return isinstance(other, Rat) and self.a == other.a and self.num == other.num

    def __hash__(self):
        if self._h is None:
            self._h = hash((frozenset(self.num.items()), self.a))
        return self._h

    def numerator_denominator(self) -> Tuple[Dict[int, int], Dict[int, int]]:
        """Integer polynomials (num, den) with den = d^b (d-1)^a."""
        b = -min(self.num) if self.num and min(self.num) < 0 else 0
        num = {k + b: v for k, v in self.num.items()}
        den = {k + b: v for k, v in _dm1_power(self.a).items()}
        return num, den

    def render(self) -> str:
        num, den = self.numerator_denominator()
        return f"({_fmt_poly(num)})/({_fmt_poly(den)})"

    def __repr__(self):
        return f"Rat({self.render()})"


def _rat_from_pair(num: Dict[int, int], den: Dict[int, int]) -> Rat:
    """Convert num/den into a Rat; den must be +-d^b (d-1)^a."""
    if not den:
        raise ZeroDivisionError("zero denominator")
    b = min(den)
    den = {k - b: v for k, v in den.items()}
    a = 0
    while _eval_at_one(den) == 0:
        den = _div_by_dm1(den)
        a += 1
    if len(den) != 1 or 0 not in den or abs(den[0]) != 1:
        raise NotInImage(f"denominator outside d^b (d-1)^a: {_fmt_poly(den)}")
    s = den[0]
    return Rat({k - b: s * v for k, v in num.items()}, a)


class RElem:
    """Element of Q(d)[l, 1/l]: map from exponent of l to a nonzero ``Rat``."""

    __slots__ = ("terms", "_h")

    def __init__(self, terms: Mapping[int, Rat] | None = None):
        self.terms: Dict[int, Rat] = (
            {k: v for k, v in terms.items() if not v.is_zero()} if terms else {}
        )
        self._h = None

    # constructors
    @classmethod
    def from_int(cls, v: int) -> "RElem":
        return cls({0: Rat({0: v})}) if v else cls()

    @classmethod
    def delta(cls, k: int = 1) -> "RElem":
        return cls({0: Rat({k: 1})})

    @classmethod
    def l(cls, k: int = 1) -> "RElem":
        return cls({k: Rat({0: 1})})

    @classmethod
    def from_laurent(cls, x: LaurentDelta) -> "RElem":
        return cls({0: Rat(x.c)}) if x.c else cls()

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _coerce(self, other) -> "RElem":
        if isinstance(other, RElem):
            return other
        if isinstance(other, int):
            return RElem.from_int(other)
        if isinstance(other, LaurentDelta):
            return RElem.from_laurent(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.terms:
            return self
        if not self.terms:
            return o
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out[k] + v if k in out else v
        return RElem(out)

    __radd__ = __add__

    def __neg__(self):
        return RElem({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out: Dict[int, Rat] = {}
        for i, x in self.terms.items():
            for j, y in o.terms.items():
                p = x * y
                k = i + j
                out[k] = out[k] + p if k in out else p
        return RElem(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "RElem":
        if e < 0:
            raise ValueError("negative powers are not supported")
        out = RElem.from_int(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.terms == o.terms

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self.terms.items()))
        return self._h

    def subs_l(self, value: int = 1) -> Rat:
        """Substitute an integer unit for l (only +-1 keeps exactness)."""
        total = Rat({})
        for k, v in self.terms.items():
            if value == 1 or k % 2 == 0:
                total = total + v
            else:
                total = total + (-v)
        return total

    def render(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"{v.render()} * l^{k}" for k, v in sorted(self.terms.items())
        )

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"RElem({self.render()})"


_RTERM = re.compile(r"\(([^()]*)\)\s*/\s*\(([^()]*)\)\s*\*\s*l\^(-?\d+)")


def parse_relem(text: str) -> RElem:
    """Parse the rendering produced by ``RElem.render``."""
    text = text.strip()
    if text == "0":
        return RElem()
    pos = 0
    out = RElem()
    for m in _RTERM.finditer(text):
        gap = text[pos:m.start()].strip()
        if gap not in ("", "+"):
            raise ValueError(f"unexpected text {gap!r}")
        pos = m.end()
        rat = _rat_from_pair(_parse_poly(m.group(1)), _parse_poly(m.group(2)))
        out = out + RElem({int(m.group(3)): rat})
    if text[pos:].strip():
        raise ValueError(f"unexpected trailing text {text[pos:]!r}")
    return out


def m_value() -> RElem:
    """The image of m, namely (1/l - l)/(d - 1)."""
    return RElem({-1: Rat({0: 1}, 1), 1: Rat({0: -1}, 1)})


def r_add(a: RElem, b: RElem) -> RElem:
    return a + b


def r_mul(a: RElem, b: RElem) -> RElem:
    return a * b


def mu_specialize(a: RElem) -> LaurentDelta:
    """Image under l -> 1 (which forces m -> 0) as a Laurent polynomial in d."""
    r = a.subs_l(1)
    if r.a != 0:
        raise NotInImage(f"denominator (d-1)^{r.a} survives l = 1")
    return LaurentDelta(r.num)


def laurent_terms(x: LaurentDelta) -> Iterable[Tuple[int, int]]:
    return sorted(x.c.items())
