"""Scalar arithmetic shared by every module.

Two modes coexist.  Exact values are ``int``, ``Fraction`` or
:class:`GaussianRational` (complex numbers with rational parts); float values
are Python ``float``/``complex``.  Functions here never silently mix the two:
an operation on exact inputs stays exact.
"""

from __future__ import annotations

import numbers
from fractions import Fraction

DEFAULT_TOL = 1e-9


class GaussianRational:
    """A complex number ``re + im*i`` with rational ``re`` and ``im``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            re, im = re.re, re.im + Fraction(im)
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) + other
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) - other
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return other - complex(self)
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) * other
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return complex(self) / other
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return other / complex(self)
        return o * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return complex(self) ** k
        if k < 0:
            return self.inverse() ** (-k)
        result = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def inverse(self):
        norm = self.re * self.re + self.im * self.im
        if norm == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / norm, -self.im / norm)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __abs__(self):
        return abs(complex(self))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, numbers.Complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        return format_scalar(self)


I = GaussianRational(0, 1)


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, GaussianRational)) and not isinstance(x, bool)


def all_exact(values) -> bool:
    return all(is_exact(v) for v in values)


def simplify(x):
    """Collapse a real GaussianRational to Fraction and integral Fractions to int-valued Fractions."""
    if isinstance(x, GaussianRational) and x.im == 0:
        return x.re
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, complex) and x.imag == 0:
        return x.real
    return x


def to_exact(x):
    """Convert ``x`` to an exact scalar.

    Strings are parsed as decimals or ``p/q`` so ``"1.2"`` becomes ``6/5``;
    floats convert to their exact binary value.
    """
    if isinstance(x, GaussianRational):
        return simplify(x)
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x, exact=True)
    if isinstance(x, complex):
        return simplify(GaussianRational(Fraction(x.real), Fraction(x.imag)))
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return simplify(GaussianRational(to_exact(x[0]), to_exact(x[1])))
    raise TypeError(f"cannot convert {x!r} to an exact scalar")


def to_float(x):
    if isinstance(x, GaussianRational):
        return complex(x) if x.im else float(x.re)
    if isinstance(x, complex):
        return x
    return float(x)


def parse_scalar(text, exact=True):
    """Parse ``"3"``, ``"-2/7"``, ``"1.25"`` or a ``[re, im]`` pair."""
    if isinstance(text, (list, tuple)):
        return to_exact(text) if exact else complex(float(Fraction(str(text[0]))), float(Fraction(str(text[1]))))
    if not isinstance(text, str):
        return to_exact(text) if exact else to_float(text)
    s = text.strip()
    if not s:
        raise ValueError("empty scalar literal")
    try:
        value = _parse_fraction(s)
    except ValueError:
        try:
            value = complex(s.replace("i", "j"))
        except ValueError:
            raise ValueError(f"malformed scalar literal {text!r}") from None
        return to_exact(value) if exact else value
    return value if exact else float(value)


_SAFE_DIGITS = 4000


def int_to_str(n: int) -> str:
    """Decimal rendering that also works past the interpreter's digit limit."""
    if n < 0:
        return "-" + int_to_str(-n)
    if n.bit_length() < 3 * _SAFE_DIGITS:
        return str(n)
    k = int(n.bit_length() * 0.30103) // 2
    hi, lo = divmod(n, 10 ** k)
    return int_to_str(hi) + int_to_str(lo).zfill(k)


def str_to_int(s: str) -> int:
    s = s.strip()
    if len(s) <= _SAFE_DIGITS:
        return int(s)
    if s[0] in "+-":
        return -str_to_int(s[1:]) if s[0] == "-" else str_to_int(s[1:])
    k = len(s) // 2
    return str_to_int(s[:-k]) * 10 ** k + str_to_int(s[-k:])


def _parse_fraction(s: str) -> Fraction:
    if len(s) <= _SAFE_DIGITS:
        return Fraction(s)
    num, _, den = s.partition("/")
    return Fraction(str_to_int(num), str_to_int(den) if den else 1)


def format_scalar(x) -> str:
    """Render a scalar as text; exact rationals become ``p`` or ``p/q``."""
    if isinstance(x, GaussianRational):
        if x.im == 0:
            return format_scalar(x.re)
        re = format_scalar(x.re)
        im = format_scalar(abs(x.im))
        sign = "-" if x.im < 0 else "+"
        return f"{re}{sign}{im}i" if x.re else f"{'-' if x.im < 0 else ''}{im}i"
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return int_to_str(x.numerator)
        return f"{int_to_str(x.numerator)}/{int_to_str(x.denominator)}"
    if isinstance(x, int):
        return int_to_str(x)
    return repr(x)


def scalar_to_json(x):
    """JSON-friendly ``[re, im]`` pair, exact parts as strings."""
    if isinstance(x, GaussianRational):
        return [format_scalar(x.re), format_scalar(x.im)]
    if isinstance(x, (int, Fraction)):
        return [format_scalar(x), "0"]
    if isinstance(x, complex):
        return [x.real, x.imag]
    return [float(x), 0.0]


def close(x, y, tol=None) -> bool:
    """Equality test: exact when both sides are exact, relative tolerance otherwise."""
    if is_exact(x) and is_exact(y):
        return x == y
    tol = DEFAULT_TOL if tol is None else tol
    fx, fy = to_float(x), to_float(y)
    return abs(fx - fy) <= tol * max(1.0, abs(fx), abs(fy))


def leq(x, y, tol=None) -> bool:
    """``x <= y`` exactly, or up to a relative tolerance for floats."""
    if is_exact(x) and is_exact(y):
        return x <= y
    tol = DEFAULT_TOL if tol is None else tol
    fx, fy = float(to_float(x).real), float(to_float(y).real)
    return fx <= fy + tol * max(1.0, abs(fx), abs(fy))


def is_zero(x, tol=None) -> bool:
    if is_exact(x):
        return x == 0
    tol = DEFAULT_TOL if tol is None else tol
    return abs(x) <= tol
