"""
Truncated non-Archimedean local fields.

Two kinds of fields share one element type: F_q((t)) (equal characteristic) and the
unramified extension Q_q of Q_p of degree f (mixed characteristic). Both carry the same
residue field F_p[a]/(modulus), where the modulus is the lexicographically smallest monic
irreducible polynomial of degree f, so the pair (F_q((t)), Q_q) always has identified
residue fields.

Elements are ϖ-adic digit expansions with residue-field digits. In Q_q the digit set is
{c_0 + c_1 a + ... : 0 <= c_j < p} (no Teichmüller representatives), so digits are just
the base-p expansions of the coordinates in the basis 1, a, ..., a^(f-1).
"""
import itertools
import math
import re
from dataclasses import dataclass, field as dc_field
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache

from sympy import Poly, Symbol, isprime

from motivic.exceptions import (
    DivisionByZeroError,
    FieldMismatchError,
    PrecisionError,
    SpecSyntaxError,
    WorkbenchError,
)
from motivic.limits import check_limit

INFINITY = math.inf


class FieldKind(Enum):
    EQUAL_CHAR = 'eq'
    MIXED_CHAR = 'mixed'


def _poly_mulmod(a, b, modulus, n=None):
    """Product of two coordinate vectors in Z[a]/(modulus), optionally reduced mod n"""
    f = len(modulus) - 1
    prod = [0] * (2 * f - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    for k in range(len(prod) - 1, f - 1, -1):
        c = prod[k]
        if c:
            for j in range(f):
                prod[k - f + j] -= c * modulus[j]
            prod[k] = 0
    if n is None:
        return prod[:f]
    return [x % n for x in prod[:f]]


@lru_cache(maxsize=None)
def smallest_irreducible(p, f):
    """Lexicographically smallest monic irreducible polynomial of degree f over F_p.

    Coefficients are returned low-to-high, leading 1 included, and candidates are ordered
    by the tuple (c_0, ..., c_{f-1}).
    """
    x = Symbol('x')
    for tail in itertools.product(range(p), repeat=f):
        coeffs = tail + (1,)
        if Poly(list(reversed(coeffs)), x, modulus=p).is_irreducible:
            return coeffs
    raise WorkbenchError(f"no irreducible polynomial of degree {f} over F_{p}")


@dataclass(frozen=True)
class ResidueField:
    p: int
    f: int
    modulus: tuple

    @property
    def q(self):
        return self.p ** self.f

    def element(self, coeffs):
        coeffs = [c % self.p for c in coeffs]
        if len(coeffs) > self.f:
            # reduce a polynomial of higher degree
            unit = [0] * self.f
            power = [1] + [0] * (self.f - 1)
            gen = [0, 1] + [0] * (self.f - 2) if self.f > 1 else [(-self.modulus[0]) % self.p]
            for c in coeffs:
                if c:
                    unit = [(u + c * w) % self.p for u, w in zip(unit, power)]
                power = _poly_mulmod(power, gen, self.modulus, self.p)
            coeffs = unit
        coeffs = coeffs + [0] * (self.f - len(coeffs))
        return ResidueElem(self, tuple(coeffs))

    @cached_property
    def zero(self):
        return ResidueElem(self, (0,) * self.f)

    @cached_property
    def one(self):
        return ResidueElem(self, (1,) + (0,) * (self.f - 1))

    def from_int(self, n):
        return self.element([n])

    def from_index(self, index):
        coeffs = []
        for _ in range(self.f):
            index, c = divmod(index, self.p)
            coeffs.append(c)
        return ResidueElem(self, tuple(coeffs))

    @cached_property
    def elements(self):
        """All q elements in index order"""
        check_limit('residue field enumeration', self.q, 'WORKBENCH_MAX_ENUMERATION')
        return tuple(self.from_index(i) for i in range(self.q))

    @property
    def generator(self):
        """The class of `a` (for f = 1 the root of the linear modulus)"""
        return self.element([0, 1])

    def parse(self, text):
        """Parse an integer or a polynomial in `a` such as `2*a^2 + a + 1`"""
        text = text.strip().replace(' ', '')
        if not text:
            raise SpecSyntaxError("empty residue digit")
        poly = {}
        for sign, mono in re.findall(r'([+-]?)([^+-]+)', text):
            m = re.fullmatch(r'(\d+)?\*?(a(?:\^(\d+))?)?', mono)
            if not m or (m.group(1) is None and m.group(2) is None):
                raise SpecSyntaxError(f"bad residue digit {text!r}")
            c = int(m.group(1)) if m.group(1) is not None else 1
            e = 0 if m.group(2) is None else int(m.group(3) or 1)
            poly[e] = poly.get(e, 0) + (-c if sign == '-' else c)
        coeffs = [0] * (max(poly) + 1)
        for e, c in poly.items():
            coeffs[e] = c
        return self.element(coeffs)


@dataclass(frozen=True)
class ResidueElem:
    field: ResidueField
    coeffs: tuple

    def _check(self, other):
        if not isinstance(other, ResidueElem):
            other = self.field.from_int(other)
        if other.field != self.field:
            raise FieldMismatchError("residue elements of different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        p = self.field.p
        return ResidueElem(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return ResidueElem(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        prod = _poly_mulmod(self.coeffs, other.coeffs, self.field.modulus, self.field.p)
        return ResidueElem(self.field, tuple(prod))

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        if self.is_zero():
            raise DivisionByZeroError("inverse of zero in the residue field")
        return self ** (self.field.q - 2)

    def is_zero(self):
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    @property
    def index(self):
        return sum(c * self.field.p ** j for j, c in enumerate(self.coeffs))

    def trace(self):
        """Absolute trace to F_p, computed as the sum of the p^j-th powers"""
        acc = self
        power = self
        for _ in range(1, self.field.f):
            power = power ** self.field.p
            acc = acc + power
        if any(acc.coeffs[1:]):
            raise WorkbenchError("trace left the prime field")
        return acc.coeffs[0]

    def __str__(self):
        if self.field.f == 1:
            return str(self.coeffs[0])
        parts = []
        for e in range(self.field.f - 1, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            if e == 0:
                parts.append(str(c))
            else:
                mono = 'a' if e == 1 else f'a^{e}'
                parts.append(mono if c == 1 else f'{c}*{mono}')
        return ' + '.join(parts) if parts else '0'


@dataclass(frozen=True)
class LocalFieldDesc:
    kind: FieldKind
    p: int
    f: int
    precision: int
    modulus: tuple = dc_field(repr=False)

    @property
    def q(self):
        return self.p ** self.f

    @property
    def is_equal_char(self):
        return self.kind is FieldKind.EQUAL_CHAR

    @cached_property
    def residue_field(self):
        return ResidueField(self.p, self.f, self.modulus)

    @property
    def uniformizer_symbol(self):
        return 't' if self.is_equal_char else str(self.p)

    @cached_property
    def arithmetic(self):
        if self.is_equal_char:
            return _EqualCharArithmetic(self)
        return _MixedCharArithmetic(self)

    def __str__(self):
        if self.is_equal_char:
            return f"F_{self.q}((t)) mod t^{self.precision}"
        return f"Q_{self.q} mod {self.p}^{self.precision}"

    def label(self):
        return f"{self.kind.value},{self.p},{self.f},{self.precision}"


def make_field(kind, p, f, precision):
    """Build a field descriptor with the deterministic residue modulus"""
    kind = FieldKind(kind)
    if not isprime(p):
        raise WorkbenchError(f"{p} is not a prime number")
    if f < 1 or precision < 1:
        raise WorkbenchError("residue degree and precision must be positive")
    check_limit('residue field size q', p ** f, 'WORKBENCH_MAX_Q')
    check_limit('precision', precision, 'WORKBENCH_MAX_PRECISION')
    return LocalFieldDesc(kind, p, f, precision, smallest_irreducible(p, f))


def partner_field(field):
    """The field of the other characteristic with the same residue field and precision"""
    other = FieldKind.MIXED_CHAR if field.is_equal_char else FieldKind.EQUAL_CHAR
    return LocalFieldDesc(other, field.p, field.f, field.precision, field.modulus)


class _EqualCharArithmetic:
    """Raw values are lists of residue elements: coefficients of t^0, t^1, ..."""

    def __init__(self, field):
        self.field = field
        self.k = field.residue_field

    def encode(self, digits):
        return list(digits)

    def shift(self, raw, n):
        return [self.k.zero] * n + raw

    def add(self, a, b):
        if len(a) < len(b):
            a, b = b, a
        return [x + b[i] if i < len(b) else x for i, x in enumerate(a)]

    def neg(self, a):
        return [-x for x in a]

    def mul(self, a, b, limit=None):
        n = len(a) + len(b) - 1
        if limit is not None:
            n = min(n, limit)
        out = [self.k.zero] * max(n, 0)
        for i, x in enumerate(a[:n]):
            if x.is_zero():
                continue
            for j, y in enumerate(b[:n - i]):
                if not y.is_zero():
                    out[i + j] = out[i + j] + x * y
        return out

    def truncate(self, raw, r):
        return raw[:max(r, 0)]

    def split(self, raw):
        for i, x in enumerate(raw):
            if not x.is_zero():
                return i, raw[i:]
        return None

    def digits(self, unit, count=None):
        if count is None:
            end = len(unit)
            while end and unit[end - 1].is_zero():
                end -= 1
            return tuple(unit[:end])
        return tuple(unit[:count]) + (self.k.zero,) * (count - len(unit))

    def exact_inverse(self, unit):
        if len(self.digits(unit)) == 1:
            return [unit[0].inverse()]
        return None

    def inverse(self, unit, r):
        head = unit[0].inverse()
        out = [head]
        for n in range(1, r):
            acc = self.k.zero
            for k in range(1, min(n, len(unit) - 1) + 1):
                acc = acc + unit[k] * out[n - k]
            out.append(-(head * acc))
        return out


class _MixedCharArithmetic:
    """Raw values are integer coordinate vectors in Z[a]/(modulus), scaled by powers of p"""

    def __init__(self, field):
        self.field = field
        self.k = field.residue_field
        self.p = field.p

    def encode(self, digits):
        vec = [0] * self.field.f
        scale = 1
        for d in digits:
            for j, c in enumerate(d.coeffs):
                vec[j] += c * scale
            scale *= self.p
        return vec

    def shift(self, raw, n):
        return [x * self.p ** n for x in raw]

    def add(self, a, b):
        return [x + y for x, y in zip(a, b)]

    def neg(self, a):
        return [-x for x in a]

    def mul(self, a, b, limit=None):
        return _poly_mulmod(a, b, self.field.modulus, None if limit is None else self.p ** limit)

    def truncate(self, raw, r):
        n = self.p ** max(r, 0)
        return [x % n for x in raw]

    def _vp(self, x):
        v = 0
        while x % self.p == 0:
            x //= self.p
            v += 1
        return v

    def split(self, raw):
        if not any(raw):
            return None
        v = min(self._vp(x) for x in raw if x)
        scale = self.p ** v
        return v, [x // scale for x in raw]

    def digits(self, unit, count=None):
        if count is None:
            if any(x < 0 for x in unit):
                return None
            count = 0
            for x in unit:
                n = 0
                while x:
                    x //= self.p
                    n += 1
                count = max(count, n)
        out = []
        vec = [x % self.p ** count for x in unit]
        for _ in range(count):
            out.append(ResidueElem(self.k, tuple(x % self.p for x in vec)))
            vec = [x // self.p for x in vec]
        return tuple(out)

    def exact_inverse(self, unit):
        if unit == [1] + [0] * (self.field.f - 1):
            return list(unit)
        return None

    def inverse(self, unit, r):
        head = ResidueElem(self.k, tuple(x % self.p for x in unit)).inverse()
        y = list(head.coeffs)
        reached = 1
        while reached < r:
            reached = min(2 * reached, r)
            n = self.p ** reached
            uy = _poly_mulmod(unit, y, self.field.modulus, n)
            two_minus = [(-x) % n for x in uy]
            two_minus[0] = (two_minus[0] + 2) % n
            y = _poly_mulmod(y, two_minus, self.field.modulus, n)
        return [x % self.p ** r for x in y]

    @cached_property
    def basis_traces(self):
        """Exact traces Tr(a^j) of the basis elements, j < f"""
        f = self.field.f
        traces = []
        for j in range(f):
            aj = [0] * f
            if f == 1:
                aj = [(-self.field.modulus[0]) ** j]
            else:
                aj[j] = 1
            total = 0
            for i in range(f):
                ei = [0] * f
                ei[i] = 1
                total += _poly_mulmod(aj, ei, self.field.modulus)[i]
            traces.append(total)
        return traces


@dataclass(frozen=True)
class ValuedElem:
    """A field element ϖ^valuation · (d_0 + d_1 ϖ + ...) known modulo ϖ^absprec.

    absprec is INFINITY for exact elements. Zero has valuation INFINITY and no digits; a zero
    produced by cancellation keeps the finite absprec it is known to (0 mod ϖ^absprec).
    """
    field: LocalFieldDesc
    valuation: object
    digits: tuple
    absprec: object = INFINITY

    @property
    def is_exact(self):
        return self.absprec == INFINITY

    def is_zero(self):
        return self.valuation == INFINITY

    def __bool__(self):
        return not self.is_zero()

    @property
    def relprec(self):
        return INFINITY if self.is_exact else self.absprec - self.valuation

    def _check(self, other):
        if not isinstance(other, ValuedElem):
            other = from_rational(self.field, other)
        if other.field != self.field:
            raise FieldMismatchError(f"operands from {self.field} and {other.field}")
        return other

    def _raw(self):
        return self.field.arithmetic.encode(self.digits)

    @property
    def _floor(self):
        """Valuation, or the known precision of a zero"""
        return self.absprec if self.is_zero() else self.valuation

    def with_absprec(self, absprec):
        """The same element known only modulo ϖ^absprec"""
        if absprec >= self.absprec:
            return self
        if self.is_zero():
            return zero(self.field, absprec)
        return _build(self.field, self.valuation, self._raw(), absprec)

    def __add__(self, other):
        other = self._check(other)
        if self.is_zero():
            return other.with_absprec(self.absprec)
        if other.is_zero():
            return self.with_absprec(other.absprec)
        ar = self.field.arithmetic
        base = min(self.valuation, other.valuation)
        raw = ar.add(ar.shift(self._raw(), self.valuation - base),
                     ar.shift(other._raw(), other.valuation - base))
        return _build(self.field, base, raw, min(self.absprec, other.absprec))

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero():
            return self
        ar = self.field.arithmetic
        return _build(self.field, self.valuation, ar.neg(self._raw()), self.absprec)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        if self.is_zero() or other.is_zero():
            return zero(self.field, min(self.absprec + other._floor, other.absprec + self._floor))
        rel = min(self.relprec, other.relprec)
        ar = self.field.arithmetic
        limit = None if rel == INFINITY else rel
        raw = ar.mul(self._raw(), other._raw(), limit)
        v = self.valuation + other.valuation
        return _build(self.field, v, raw, v + rel)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        if other.is_zero():
            if not other.is_exact:
                raise PrecisionError(f"divisor {other} is not known to be nonzero")
            raise DivisionByZeroError("division by zero in the valued field")
        if self.is_zero():
            return zero(self.field, self.absprec - other.valuation)
        ar = self.field.arithmetic
        inv = ar.exact_inverse(other._raw())
        rel_inv = INFINITY
        if inv is None or not other.is_exact:
            rel_inv = other.relprec if not other.is_exact else self.field.precision
            inv = ar.inverse(other._raw(), rel_inv)
        rel = min(self.relprec, rel_inv)
        limit = None if rel == INFINITY else rel
        raw = ar.mul(self._raw(), inv, limit)
        v = self.valuation - other.valuation
        return _build(self.field, v, raw, v + rel)

    def __rtruediv__(self, other):
        return self._check(other) / self

    def __pow__(self, n):
        if n < 0:
            return one(self.field) / (self ** (-n))
        result = one(self.field)
        for _ in range(n):
            result = result * self
        return result

    def agrees_with(self, other):
        """Equality at the precision both operands guarantee"""
        return (self - self._check(other)).is_zero()

    def digit(self, position):
        """The digit in front of ϖ^position"""
        if position >= self.absprec:
            raise PrecisionError(f"digit at ϖ^{position} is beyond the precision of {self}")
        if position < self.valuation:
            return self.field.residue_field.zero
        offset = position - self.valuation
        if offset < len(self.digits):
            return self.digits[offset]
        return self.field.residue_field.zero

    def reduce(self):
        """Reduction modulo M_F of an element of O_F"""
        if self.valuation < 0:
            raise WorkbenchError(f"{self} is not in the valuation ring")
        return self.digit(0)

    def polar_part(self):
        """The exact element made of the digits in front of negative powers of ϖ"""
        if self.absprec < 0:
            raise PrecisionError(f"{self} is not known modulo O_F")
        if self.valuation >= 0:
            return zero(self.field)
        return from_digits(self.field, self.valuation, self.digits[:-self.valuation])

    def __str__(self):
        return format_element(self)


def _build(field, base, raw, absprec):
    ar = field.arithmetic
    if absprec != INFINITY:
        raw = ar.truncate(raw, absprec - base)
    split = ar.split(raw)
    if split is None:
        return zero(field, absprec)
    offset, unit = split
    v = base + offset
    if absprec == INFINITY:
        digits = ar.digits(unit)
        if digits is not None and len(digits) <= field.precision:
            return ValuedElem(field, v, digits, INFINITY)
        absprec = v + field.precision
    rel = min(absprec - v, field.precision)
    digits = ar.digits(ar.truncate(unit, rel), rel)
    return ValuedElem(field, v, digits, v + rel)


def zero(field, absprec=INFINITY):
    return ValuedElem(field, INFINITY, (), absprec)


def one(field):
    return ValuedElem(field, 0, (field.residue_field.one,), INFINITY)


def uniformizer(field):
    return ValuedElem(field, 1, (field.residue_field.one,), INFINITY)


def from_digits(field, valuation, digits, absprec=INFINITY):
    """Element from low-to-high residue digits starting at ϖ^valuation"""
    k = field.residue_field
    digits = [d if isinstance(d, ResidueElem) else k.from_int(d) for d in digits]
    return _build(field, valuation, field.arithmetic.encode(digits), absprec)


def lift(field, v):
    """The digit lift of a residue element: an element of O_F reducing to v"""
    if v.field != field.residue_field:
        raise FieldMismatchError("residue element from another residue field")
    if v.is_zero():
        return zero(field)
    return ValuedElem(field, 0, (v,), INFINITY)


def from_rational(field, value):
    """Image of a rational number; in F_q((t)) integers are read modulo p"""
    value = Fraction(value)
    p = field.p
    if value == 0:
        return zero(field)
    num, den = value.numerator, value.denominator
    if field.is_equal_char:
        if den % p == 0:
            raise DivisionByZeroError(f"{value} has no image in characteristic {p}")
        c = num * pow(den, -1, p) % p
        if c == 0:
            return zero(field)
        return ValuedElem(field, 0, (field.residue_field.from_int(c),), INFINITY)
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    raw = [num] + [0] * (field.f - 1)
    if den == 1:
        return _build(field, v, raw, INFINITY)
    n = p ** field.precision
    raw = [num * pow(den, -1, n) % n] + [0] * (field.f - 1)
    return _build(field, v, raw, v + field.precision)


def ord_(x):
    """Valuation, INFINITY for zero"""
    return x.valuation


def ac(x):
    """Angular component: the leading digit, 0 for x = 0"""
    if x.is_zero():
        return x.field.residue_field.zero
    return x.digits[0]


def residue_trace(v):
    return v.trace()


def format_element(x):
    base = x.field.uniformizer_symbol
    if x.is_zero():
        return '0' if x.is_exact else f'0 (mod {base}^{x.absprec})'
    terms = []
    for offset, d in enumerate(x.digits):
        if d.is_zero():
            continue
        digit = str(d)
        if x.field.f > 1 and ('+' in digit or '*' in digit):
            digit = f'({digit})'
        terms.append(f'{digit}*{base}^{x.valuation + offset}')
    text = ' + '.join(terms)
    if not x.is_exact:
        text += f' (mod {base}^{x.absprec})'
    return text


_TERM = re.compile(r'^(?:\((?P<poly>[^()]*)\)|(?P<int>[0-9a-z^*]+?))\s*\*\s*(?P<base>t|\d+)\s*\^\s*(?P<exp>-?\d+)$')


def parse_element(field, text):
    """Parse the textual element syntax, e.g. `3*t^2 + 1*t^4 (mod t^8)`"""
    text = text.strip()
    absprec = INFINITY
    m = re.search(r'\(mod\s*(t|\d+)\s*\^\s*(-?\d+)\s*\)\s*$', text)
    if m:
        if m.group(1) != field.uniformizer_symbol:
            raise SpecSyntaxError(f"modulus {m.group(1)} does not match {field}")
        absprec = int(m.group(2))
        text = text[:m.start()].strip()
    if text == '0':
        return zero(field, absprec)
    k = field.residue_field
    terms = _split_top_level(text)
    digits = {}
    for term in terms:
        tm = _TERM.match(term.strip())
        if tm is None:
            raise SpecSyntaxError(f"bad element term {term!r}")
        if tm.group('base') != field.uniformizer_symbol:
            raise SpecSyntaxError(f"term {term!r} is not written in powers of {field.uniformizer_symbol}")
        digit = k.parse(tm.group('poly') if tm.group('poly') is not None else tm.group('int'))
        e = int(tm.group('exp'))
        digits[e] = digits.get(e, k.zero) + digit
    nonzero = {e: d for e, d in digits.items() if not d.is_zero()}
    if not nonzero:
        return zero(field)
    low = min(nonzero)
    high = max(nonzero)
    seq = [nonzero.get(e, k.zero) for e in range(low, high + 1)]
    return from_digits(field, low, seq, absprec)


def _split_top_level(text):
    parts = []
    depth = 0
    current = ''
    for ch in text:
        if ch == '(':
            depth += 1
        elif ch == ')':
            depth -= 1
        if ch == '+' and depth == 0:
            parts.append(current)
            current = ''
        else:
            current += ch
    parts.append(current)
    return [p for p in parts if p.strip()]
