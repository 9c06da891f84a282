"""
Exact arithmetic in cyclotomic fields Q(ζ_m).

A CyclotomicNumber stores rational coordinates in the power basis 1, ζ_m, ..., ζ_m^(φ(m)-1)
of Q(ζ_m) with ζ_m = exp(2πi/m). Numbers of different orders are compared and combined in
the field of the lcm order, so equality is exact coordinate equality after embedding.
"""
import cmath
import math
from fractions import Fraction
from functools import lru_cache

import mpmath
from sympy import Poly, Symbol, cyclotomic_poly, mobius, totient

from motivic.exceptions import DivisionByZeroError, WorkbenchError
from motivic.limits import check_limit

_X = Symbol('x')


@lru_cache(maxsize=None)
def _phi(m):
    return int(totient(m))


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(m):
    """Coefficients of Φ_m, low to high"""
    poly = Poly(cyclotomic_poly(m, _X), _X)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


@lru_cache(maxsize=None)
def _power_vector(m, k):
    """Coordinates of ζ_m^k in the power basis"""
    n = _phi(m)
    k %= m
    if k < n:
        vec = [0] * n
        vec[k] = 1
        return tuple(vec)
    prev = _power_vector(m, k - 1)
    # multiply by ζ: shift, then replace ζ^n using Φ_m (monic)
    top = prev[-1]
    vec = [0] + list(prev[:-1])
    if top:
        phi = _cyclotomic_coeffs(m)
        for j in range(n):
            vec[j] -= top * phi[j]
    return tuple(vec)


def _reduce(m, terms):
    """Collect {exponent: coefficient} into power-basis coordinates"""
    n = _phi(m)
    out = [Fraction(0)] * n
    for k, c in terms.items():
        if not c:
            continue
        k %= m
        if k < n:
            out[k] += c
        else:
            for j, w in enumerate(_power_vector(m, k)):
                if w:
                    out[j] += c * w
    return tuple(out)


class CyclotomicNumber:
    __slots__ = ('order', 'coeffs')

    def __init__(self, order, coeffs):
        check_limit('cyclotomic order', order, 'WORKBENCH_MAX_CYCLOTOMIC_ORDER')
        self.order = order
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        if len(self.coeffs) != _phi(order):
            raise WorkbenchError(f"order {order} needs {_phi(order)} coordinates")

    @classmethod
    def rational(cls, value, order=1):
        coeffs = [Fraction(0)] * _phi(order)
        coeffs[0] = Fraction(value)
        return cls(order, coeffs)

    @classmethod
    def root_of_unity(cls, m, k=1):
        return cls(m, _reduce(m, {k: Fraction(1)}))

    @classmethod
    def from_exponents(cls, m, terms):
        """Σ c_k ζ_m^k for a mapping k -> c_k"""
        return cls(m, _reduce(m, {k: Fraction(c) for k, c in terms.items()}))

    def _embed(self, order):
        if order == self.order:
            return self.coeffs
        step = order // self.order
        return _reduce(order, {j * step: c for j, c in enumerate(self.coeffs) if c})

    def _coerce(self, other):
        if isinstance(other, CyclotomicNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.rational(other)
        return NotImplemented

    def _common(self, other):
        order = math.lcm(self.order, other.order)
        check_limit('cyclotomic order', order, 'WORKBENCH_MAX_CYCLOTOMIC_ORDER')
        return order, self._embed(order), other._embed(order)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        order, a, b = self._common(other)
        return CyclotomicNumber(order, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.order, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.order == 1:
            r = other.coeffs[0]
            return CyclotomicNumber(self.order, [c * r for c in self.coeffs])
        if self.order == 1:
            return other * self
        order, a, b = self._common(other)
        terms = {}
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    terms[i + j] = terms.get(i + j, 0) + x * y
        return CyclotomicNumber(order, _reduce(order, terms))

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = CyclotomicNumber.rational(1, self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        if self.is_zero():
            raise DivisionByZeroError("inverse of zero")
        if self.is_rational():
            return CyclotomicNumber.rational(1 / self.coeffs[0], self.order)
        num = Poly(list(reversed(self.coeffs)), _X, domain='QQ')
        mod = Poly(cyclotomic_poly(self.order, _X), _X, domain='QQ')
        inv = [Fraction(int(c.p), int(c.q)) for c in reversed(num.invert(mod).all_coeffs())]
        inv += [Fraction(0)] * (_phi(self.order) - len(inv))
        return CyclotomicNumber(self.order, inv)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def conj(self):
        """Complex conjugate (ζ -> ζ^-1)"""
        m = self.order
        return CyclotomicNumber(m, _reduce(m, {-j: c for j, c in enumerate(self.coeffs) if c}))

    def abs2(self):
        """|z|^2 = z * conj(z), a real element of the field"""
        return self * self.conj()

    def is_zero(self):
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self):
        return not any(self.coeffs[1:])

    def is_real(self):
        return self == self.conj()

    def to_fraction(self):
        if not self.is_rational():
            raise WorkbenchError(f"{self} is not rational")
        return self.coeffs[0]

    def to_complex(self):
        m = self.order
        return sum((float(c) * cmath.exp(2j * cmath.pi * k / m) for k, c in enumerate(self.coeffs) if c),
                   0j)

    def to_mpc(self):
        """Value at the working precision of mpmath"""
        total = mpmath.mpc(0)
        for k, c in enumerate(self.coeffs):
            if c:
                total += mpmath.mpf(c.numerator) / c.denominator * mpmath.expjpi(mpmath.mpf(2 * k) / self.order)
        return total

    def real_sign(self):
        """Exact sign of a real number: zero is decided on coordinates, nonzero values by
        evaluation at doubling precision until the error bound separates them from 0"""
        if self.is_zero():
            return 0
        if self.is_rational():
            return 1 if self.coeffs[0] > 0 else -1
        if not self.is_real():
            raise WorkbenchError(f"{self} is not real")
        bound = sum(abs(c) for c in self.coeffs)
        prec = 64
        while prec <= 1 << 16:
            with mpmath.workprec(prec):
                total = mpmath.mpf(0)
                for k, c in enumerate(self.coeffs):
                    if c:
                        total += mpmath.mpf(c.numerator) / c.denominator * mpmath.cos(2 * mpmath.pi * k / self.order)
                err = mpmath.mpf(float(bound) + 1) * mpmath.mpf(2) ** (10 - prec)
                if abs(total) > err:
                    return 1 if total > 0 else -1
            prec *= 2
        raise WorkbenchError(f"could not separate {self} from zero")

    def average_trace(self):
        """Tr(z)/φ(m); unchanged by embedding into a larger cyclotomic field"""
        total = Fraction(0)
        for k, c in enumerate(self.coeffs):
            if c:
                d = self.order // math.gcd(k, self.order)
                total += c * Fraction(int(mobius(d)), _phi(d))
        return total

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        order, a, b = self._common(other)
        return a == b

    def __hash__(self):
        return hash(self.average_trace())

    def __str__(self):
        if self.is_zero():
            return '0'
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
                continue
            mono = f'zeta{self.order}' if k == 1 else f'zeta{self.order}^{k}'
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f'-{mono}')
            else:
                parts.append(f'{c}*{mono}')
        return ' + '.join(parts).replace('+ -', '- ')

    def __repr__(self):
        return f'CyclotomicNumber({self})'


ZERO = CyclotomicNumber.rational(0)
ONE = CyclotomicNumber.rational(1)


def compare_real(a, b):
    """Exact sign of a - b for real cyclotomic numbers (or rationals)"""
    return (CyclotomicNumber.rational(0) + a - b).real_sign()


def compare_abs(a, b):
    """Exact sign of |a|^2 - |b|^2"""
    return compare_real(_abs2(a), _abs2(b))


def _abs2(z):
    if isinstance(z, CyclotomicNumber):
        return z.abs2()
    return Fraction(z) ** 2


def magnitude(z):
    return abs(z.to_complex()) if isinstance(z, CyclotomicNumber) else abs(float(z))
