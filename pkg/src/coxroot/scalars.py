"""Dual-mode scalar arithmetic: exact rationals or tolerance-bearing floats.

Matrix entries, root coordinates, K-values and game positions are plain
Python numbers: ``fractions.Fraction`` in exact mode, ``float`` in float
mode.  A ScalarContext fixes the mode and (for floats) the tolerance, and
supplies the comparison predicates every other module routes through.

Exact mode is used iff every input entry is written in rational syntax
(integer ``-5`` or fraction ``-1/5``); decimal syntax (``-0.809``) selects
float mode.  An explicit mode overrides the inference.

Float equality is relative: |a - b| <= eps * max(1, |a|, |b|).
"""

from fractions import Fraction

from .errors import ValueSyntaxError

EXACT = "exact"
FLOAT = "float"

DEFAULT_EPS = 1e-9


def rational_syntax(text):
    """True iff the string is an integer or p/q fraction (no decimals)."""
    body = text.strip().replace("−", "-")
    if "/" in body:
        num, _, den = body.partition("/")
        return _is_integer(num) and _is_integer(den)
    return _is_integer(body)


def _is_integer(text):
    text = text.strip()
    if text and text[0] in "+-":
        text = text[1:]
    return text.isdigit()


def parse_scalar(value, mode=None):
    """Parse a scalar written as a string (or given as a number).

    Returns a Fraction when the syntax is rational and mode is not
    ``float``; otherwise a float.  Raises ValueSyntaxError for malformed
    strings and zero denominators.
    """
    if isinstance(value, bool):
        raise ValueSyntaxError(f"not a scalar: {value!r}")
    if isinstance(value, Fraction):
        return float(value) if mode == FLOAT else value
    if isinstance(value, int):
        return float(value) if mode == FLOAT else Fraction(value)
    if isinstance(value, float):
        return Fraction(value) if mode == EXACT else value
    if not isinstance(value, str):
        raise ValueSyntaxError(f"not a scalar: {value!r}")

    text = value.strip().replace("−", "-")
    if rational_syntax(text):
        num, slash, den = text.partition("/")
        if slash and int(den) == 0:
            raise ValueSyntaxError(f"zero denominator: {value!r}")
        q = Fraction(int(num), int(den)) if slash else Fraction(int(num))
        return float(q) if mode == FLOAT else q
    # decimal / scientific syntax
    try:
        q = Fraction(text)  # exact decimal-to-rational conversion
    except (ValueError, ZeroDivisionError):
        raise ValueSyntaxError(f"malformed scalar: {value!r}") from None
    return q if mode == EXACT else float(q)


def render_scalar(value):
    """Canonical string form: lowest-terms rational, or 12 significant digits."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return str(value)
    return f"{value:.12g}"


class ScalarContext:
    """Comparison context: mode plus tolerance for float-mode predicates.

    All order predicates are strict in exact mode.  In float mode ``eq``
    holds within the relative tolerance and ``gt``/``lt`` require the
    difference to clear it, so a value is "positive" only when it exceeds
    the noise floor.
    """

    def __init__(self, mode=EXACT, eps=DEFAULT_EPS):
        assert mode in (EXACT, FLOAT), mode
        assert eps > 0
        self.mode = mode
        self.eps = eps

    @property
    def exact(self):
        return self.mode == EXACT

    def parse(self, value):
        return parse_scalar(value, mode=self.mode)

    def coerce(self, value):
        """Bring an already-parsed number into this context's mode."""
        if self.exact:
            return value if isinstance(value, Fraction) else Fraction(value)
        return float(value)

    def zero(self):
        return Fraction(0) if self.exact else 0.0

    def one(self):
        return Fraction(1) if self.exact else 1.0

    def eq(self, a, b):
        if self.exact:
            return a == b
        return abs(a - b) <= self.eps * max(1.0, abs(a), abs(b))

    def ne(self, a, b):
        return not self.eq(a, b)

    def is_zero(self, a):
        return self.eq(a, self.zero())

    def gt(self, a, b):
        if self.exact:
            return a > b
        return a - b > self.eps * max(1.0, abs(a), abs(b))

    def lt(self, a, b):
        return self.gt(b, a)

    def ge(self, a, b):
        return not self.lt(a, b)

    def le(self, a, b):
        return not self.gt(a, b)

    def sign(self, a):
        """-1, 0, or +1, with 0 meaning equal-to-zero under this context."""
        if self.is_zero(a):
            return 0
        return 1 if a > 0 else -1

    def __repr__(self):
        if self.exact:
            return "ScalarContext(exact)"
        return f"ScalarContext(float, eps={self.eps:g})"
