"""
Pointwise reduction of exponential sums to their polar parts.

At a point x the terms ψ(g + e) of an exponential function are grouped by the class of g
modulo O_F. Each class is represented by the arithmetic mean μ of the distinct g-values in
it; since g - μ ∈ O_F, ψ(g + e) = ψ(μ)·𝐞(tr(red(g - μ) + e)) for every character of the
family, so

    H_ψ(x) = Σ_classes ψ(g′)·h′

with g′ pairwise distinct modulo O_F and h′ independent of ψ. The class O_F itself is
represented by g′ = 0.
"""
import logging
from dataclasses import dataclass
from itertools import combinations

from motivic.characters import character_at, e_residue, enumerate_characters, eval_char
from motivic.cyclotomic import CyclotomicNumber, compare_real
from motivic.evaluation import eval_expfun, format_value, summand_values, value_key
from motivic.exceptions import DepthExceededError, SmallCharacteristicError
from motivic.fourier import FiniteAbelianGroup, find_peak_character
from motivic.lang.transforms import as_expfun
from motivic.lindep import determinant
from motivic.localfield import from_rational, zero

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PolarEntry:
    g: object
    h: tuple
    size: int

    def __str__(self):
        return f"g'={format_value(self.g)} h'={', '.join(str(v) for v in self.h)}"


@dataclass(frozen=True)
class PolarDecomposition:
    """Entries (g′, h′) at one point; h′ holds one value per decomposed function"""
    point: object
    entries: tuple
    depth: int

    @property
    def count(self):
        return len(self.entries)

    def reconstruct(self, psi, i=0):
        return sum((eval_char(psi, entry.g) * entry.h[i] for entry in self.entries), CyclotomicNumber.rational(0))

    def h_values(self, i=0):
        return [entry.h[i] for entry in self.entries]


def _class_key(g):
    return value_key(g.polar_part())


def _decompose(specs, field, x, depth=None):
    """One shared decomposition of several functions at x"""
    triples = []
    for i, spec in enumerate(specs):
        for sv in summand_values(as_expfun(spec), field, x):
            for _, g, e in sv.entries:
                triples.append((i, sv.weight, g, e))
    classes = {}
    for triple in triples:
        classes.setdefault(_class_key(triple[2]), []).append(triple)
    entries = []
    required = 0
    for members in classes.values():
        values = []
        for _, _, g, _ in members:
            if not any(g.agrees_with(v) for v in values):
                values.append(g)
        polar = members[0][2].polar_part()
        size = len(values)
        if polar.is_zero():
            mean = zero(field)
        elif size == 1:
            mean = values[0]
            required = max(required, -mean.valuation)
        else:
            if size % field.p == 0:
                raise SmallCharacteristicError(
                    f"{size} distinct g-values share the class of {polar}; p = {field.p} divides their number")
            mean = sum(values, zero(field)) / from_rational(field, size)
            required = max(required, -mean.valuation)
        h = [CyclotomicNumber.rational(0) for _ in specs]
        for i, weight, g, e in members:
            h[i] = h[i] + e_residue((g - mean).reduce() + e) * weight
        entries.append(PolarEntry(mean, tuple(h), size))
    if depth is not None and depth < required:
        raise DepthExceededError(required)
    entries.sort(key=lambda entry: (entry.g.valuation if not entry.g.is_zero() else 0, _class_key(entry.g)),
                 reverse=True)
    return PolarDecomposition(x, tuple(entries), required if depth is None else depth)


def polar_decompose(H, field, x, depth=None):
    return _decompose([H], field, x, depth)


def _sum_abs2(values):
    return sum((v.abs2() for v in values), CyclotomicNumber.rational(0))


@dataclass(frozen=True)
class TildeH:
    points: tuple
    values: tuple
    decompositions: tuple
    n_prime: int

    @property
    def n(self):
        return self.n_prime ** 2


def tilde_H(H, field, sample, depth=None):
    """H̃(x) = N′·Σ|h′|² on the sample, N′ the largest entry count seen"""
    decompositions = [polar_decompose(H, field, x, depth) for x in sample]
    n_prime = max([d.count for d in decompositions] + [1])
    values = tuple(_sum_abs2(d.h_values()) * n_prime for d in decompositions)
    logger.debug("tilde H of %r on %s: N' = %d", getattr(H, 'name', ''), field, n_prime)
    return TildeH(tuple(sample), values, tuple(decompositions), n_prime)


@dataclass(frozen=True)
class Witness:
    psi: object
    value: CyclotomicNumber
    abs2: CyclotomicNumber
    tilde: CyclotomicNumber
    n: int
    holds: bool


def _max_abs2(psis, values):
    squares = [v.abs2() for v in values]
    best = 0
    for i in range(1, len(squares)):
        if compare_real(squares[i], squares[best]) > 0:
            best = i
    return psis[best], values[best], squares[best]


def witness_psi1(H, field, x, depth=None, tilde=None, n=None):
    """The enumerated character maximizing |H_ψ(x)|, with the verdict (1/N)·H̃(x) <= |H_ψ₁(x)|²"""
    decomposition = polar_decompose(H, field, x, depth)
    if tilde is None:
        n_prime = max(decomposition.count, 1)
        tilde = _sum_abs2(decomposition.h_values()) * n_prime
        n = n_prime ** 2
    psis = enumerate_characters(field, decomposition.depth)
    values = [eval_expfun(H, field, psi, x) for psi in psis]
    psi, value, square = _max_abs2(psis, values)
    holds = compare_real(tilde, square * n) <= 0
    return Witness(psi, value, square, tilde, n, holds)


@dataclass(frozen=True)
class GramTilde:
    points: tuple
    matrices: tuple
    decompositions: tuple
    n_prime: int

    @property
    def n(self):
        return self.n_prime ** 2

    def quadratic_form(self, index, c):
        """Σ_{i,s} c_i·conj(c_s)·H̃_{i,s} at the index-th sample point"""
        c = [v if isinstance(v, CyclotomicNumber) else CyclotomicNumber.rational(v) for v in c]
        m = self.matrices[index]
        total = CyclotomicNumber.rational(0)
        for i, ci in enumerate(c):
            for s, cs in enumerate(c):
                total = total + ci * cs.conj() * m[i][s]
        return total


def gram_tilde(specs, field, sample, depth=None):
    """H̃_{i,s}(x) = N′·Σ_entries h′_i·conj(h′_s) over one decomposition shared by all functions"""
    decompositions = [_decompose(specs, field, x, depth) for x in sample]
    n_prime = max([d.count for d in decompositions] + [1])
    matrices = []
    ell = len(specs)
    for d in decompositions:
        rows = []
        for i in range(ell):
            row = []
            for s in range(ell):
                acc = sum((entry.h[i] * entry.h[s].conj() for entry in d.entries), CyclotomicNumber.rational(0))
                row.append(acc * n_prime)
            rows.append(tuple(row))
        matrices.append(tuple(rows))
    return GramTilde(tuple(sample), tuple(matrices), tuple(decompositions), n_prime)


def is_psd(matrix):
    """Hermitian positive semidefiniteness from the signs of all principal minors"""
    size = len(matrix)
    for r in range(1, size + 1):
        for rows in combinations(range(size), r):
            minor = determinant([[matrix[i][j] for j in rows] for i in rows])
            if compare_real(minor, 0) < 0:
                return False
    return True


def polar_group(field, depth):
    """ϖ^-d·O_F / O_F as a finite abelian group"""
    if depth < 1:
        return FiniteAbelianGroup((1,))
    if field.is_equal_char:
        return FiniteAbelianGroup((field.p,) * (field.f * depth))
    return FiniteAbelianGroup((field.p ** depth,) * field.f)


def polar_coordinates(g, field, depth):
    """Coordinates of the class of g in polar_group(field, depth)"""
    if depth < 1:
        return (0,)
    if not g.is_zero() and g.valuation < -depth:
        raise DepthExceededError(-g.valuation, g.valuation)
    digits = [g.digit(k) for k in range(-depth, 0)]
    if field.is_equal_char:
        return tuple(c for d in digits for c in d.coeffs)
    coords = field.arithmetic.encode(digits)
    return tuple(c % field.p ** depth for c in coords)


def peak_cross_check(decomposition, field):
    """The largest |Σ_j c_j φ(y_j)|² over the whole dual of the polar group, for
    c_j = ψ_std(g′_j)·h′_j and y_j the class of g′_j; equals the largest |H_ψ(x)|² over the
    depth-d family"""
    if not decomposition.entries:
        return CyclotomicNumber.rational(0)
    group = polar_group(field, decomposition.depth)
    psi0 = character_at(field, decomposition.depth, 0)
    c = [eval_char(psi0, e.g) * e.h[0] for e in decomposition.entries]
    y = [polar_coordinates(e.g, field, decomposition.depth) for e in decomposition.entries]
    return find_peak_character(c, y, group).value.abs2()
