"""
Exact Fourier analysis on finite abelian groups G = Z/n_1 × ... × Z/n_k.

The dual group is identified with G through the pairing
    φ(x) = ζ_N^(Σ_i x_i φ_i N/n_i),   N = lcm(n_i),
and f̂(φ) = Σ_x f(x) φ(x) without normalization.
"""
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, cmp_to_key

from motivic.cyclotomic import CyclotomicNumber, compare_real
from motivic.exceptions import WorkbenchError
from motivic.limits import check_limit


@dataclass(frozen=True)
class FiniteAbelianGroup:
    factors: tuple

    def __post_init__(self):
        if not self.factors or any(n < 1 for n in self.factors):
            raise WorkbenchError(f"bad cyclic factors {self.factors}")
        check_limit('group order', self.order, 'WORKBENCH_MAX_ENUMERATION')

    @property
    def order(self):
        return math.prod(self.factors)

    @property
    def exponent(self):
        return math.lcm(*self.factors)

    @cached_property
    def elements(self):
        return tuple(itertools.product(*(range(n) for n in self.factors)))

    @cached_property
    def index(self):
        return {x: i for i, x in enumerate(self.elements)}

    def pairing_exponent(self, x, phi):
        """k with φ(x) = ζ_N^k"""
        n = self.exponent
        return sum(a * b * (n // m) for a, b, m in zip(x, phi, self.factors)) % n

    def pair(self, x, phi):
        return CyclotomicNumber.root_of_unity(self.exponent, self.pairing_exponent(x, phi))

    def neg(self, x):
        return tuple((-a) % m for a, m in zip(x, self.factors))

    def normalize(self, x):
        return tuple(a % m for a, m in zip(x, self.factors))


@dataclass(frozen=True)
class GroupFunction:
    group: FiniteAbelianGroup
    table: tuple

    def __post_init__(self):
        if len(self.table) != self.group.order:
            raise WorkbenchError(f"a function on a group of order {self.group.order} needs as many values")

    @classmethod
    def from_values(cls, group, values):
        return cls(group, tuple(v if isinstance(v, CyclotomicNumber) else CyclotomicNumber.rational(v)
                                for v in values))

    @classmethod
    def from_mapping(cls, group, mapping):
        zero = CyclotomicNumber.rational(0)
        return cls(group, tuple(mapping.get(x, zero) for x in group.elements))

    def __call__(self, x):
        return self.table[self.group.index[self.group.normalize(x)]]


def fourier_transform(f):
    G = f.group
    n = G.exponent
    rational = all(v.is_rational() for v in f.table)
    out = []
    for phi in G.elements:
        buckets = {}
        for x, value in zip(G.elements, f.table):
            if value.is_zero():
                continue
            k = G.pairing_exponent(x, phi)
            if rational:
                buckets[k] = buckets.get(k, Fraction(0)) + value.coeffs[0]
            else:
                buckets[k] = buckets.get(k, CyclotomicNumber.rational(0)) + value
        if rational:
            out.append(CyclotomicNumber.from_exponents(n, buckets))
        else:
            total = CyclotomicNumber.rational(0)
            for k, s in buckets.items():
                total = total + s * CyclotomicNumber.root_of_unity(n, k)
            out.append(total)
    return GroupFunction(G, tuple(out))


def _sup_abs2(values):
    squares = [v.abs2() for v in values]
    return max(squares, key=cmp_to_key(compare_real))


@dataclass(frozen=True)
class NormSandwich:
    sup_f: float
    sup_hat: float
    order: int
    holds: bool


def check_norm_sandwich(f, f_hat=None):
    """(1/|G|)·sup|f̂| <= sup|f| <= sup|f̂|, decided on squared moduli"""
    f_hat = f_hat or fourier_transform(f)
    sf = _sup_abs2(f.table)
    sh = _sup_abs2(f_hat.table)
    order = f.group.order
    lower = compare_real(sh, sf * order ** 2) <= 0
    upper = compare_real(sf, sh) <= 0
    return NormSandwich(abs(sf.to_complex()) ** 0.5, abs(sh.to_complex()) ** 0.5, order, lower and upper)


def plancherel_check(f, f_hat=None):
    """|G|·Σ|f(x)|² == Σ|f̂(φ)|², exactly"""
    f_hat = f_hat or fourier_transform(f)
    left = sum((v.abs2() for v in f.table), CyclotomicNumber.rational(0)) * f.group.order
    right = sum((v.abs2() for v in f_hat.table), CyclotomicNumber.rational(0))
    return left == right


@dataclass(frozen=True)
class PeakCharacter:
    phi: tuple
    value: CyclotomicNumber
    magnitude: float
    holds: bool


def find_peak_character(c, y, group):
    """The first φ maximizing |Σ_j c_j φ(y_j)|; holds when that is >= max_j |c_j|"""
    if not c or len(c) != len(y):
        raise WorkbenchError("need as many coefficients as group elements, at least one")
    y = [group.normalize(v) for v in y]
    if len(set(y)) != len(y):
        raise WorkbenchError("group elements y_j must be pairwise distinct")
    c = [v if isinstance(v, CyclotomicNumber) else CyclotomicNumber.rational(v) for v in c]
    best = None
    for phi in group.elements:
        value = sum((cj * group.pair(yj, phi) for cj, yj in zip(c, y)), CyclotomicNumber.rational(0))
        square = value.abs2()
        if best is None or compare_real(square, best[2]) > 0:
            best = (phi, value, square)
    phi, value, square = best
    holds = compare_real(square, _sup_abs2(c)) >= 0
    return PeakCharacter(phi, value, abs(square.to_complex()) ** 0.5, holds)
