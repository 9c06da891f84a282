"""
Exact linear algebra over cyclotomic numbers: determinants, rank, dependence verdicts on a
sample and coefficient recovery by Cramer's rule.

A sample matrix has one row per sample point z_j and one column per function f_i.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from motivic.cyclotomic import CyclotomicNumber
from motivic.evaluation import Point, eval_expfun
from motivic.exceptions import SingularMatrixError, WorkbenchError

logger = logging.getLogger(__name__)


def _cyc(v):
    return v if isinstance(v, CyclotomicNumber) else CyclotomicNumber.rational(v)


def _matrix(rows):
    rows = [[_cyc(v) for v in row] for row in rows]
    if rows and any(len(row) != len(rows[0]) for row in rows):
        raise WorkbenchError("sample matrix rows differ in length")
    return rows


def determinant(matrix):
    """Fraction-free Bareiss elimination with row pivoting"""
    m = _matrix(matrix)
    n = len(m)
    if any(len(row) != n for row in m):
        raise WorkbenchError(f"determinant of a non-square {n}x{len(m[0]) if m else 0} matrix")
    if n == 0:
        return CyclotomicNumber.rational(1)
    sign = 1
    prev = CyclotomicNumber.rational(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return CyclotomicNumber.rational(0)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


class Echelon:
    """Row-by-row echelon form; add() reports whether a row extends the span"""

    def __init__(self):
        self.rows = []
        self.pivots = []

    def reduce(self, row):
        row = [_cyc(v) for v in row]
        for basis, col in zip(self.rows, self.pivots):
            factor = row[col]
            if not factor.is_zero():
                row = [a - factor * b for a, b in zip(row, basis)]
        return row

    def add(self, row):
        row = self.reduce(row)
        for col, v in enumerate(row):
            if not v.is_zero():
                inv = v.inverse()
                self.rows.append([a * inv for a in row])
                self.pivots.append(col)
                return True
        return False

    @property
    def rank(self):
        return len(self.rows)

    def reduced(self):
        """Fully reduced row echelon form"""
        rows = [list(r) for r in self.rows]
        for i, col in enumerate(self.pivots):
            for k in range(len(rows)):
                if k != i and not rows[k][col].is_zero():
                    factor = rows[k][col]
                    rows[k] = [a - factor * b for a, b in zip(rows[k], rows[i])]
        return rows


def rank(matrix):
    ech = Echelon()
    for row in _matrix(matrix):
        ech.add(row)
    return ech.rank


def row_basis(matrix):
    """Indices of the rows kept by greedy extension in row order"""
    ech = Echelon()
    return [j for j, row in enumerate(_matrix(matrix)) if ech.add(row)]


def _normalize(vector):
    if all(v.is_rational() for v in vector):
        fracs = [v.to_fraction() for v in vector]
        scale = math.lcm(*(f.denominator for f in fracs))
        ints = [int(f * scale) for f in fracs]
        g = math.gcd(*ints)
        lead = next(v for v in ints if v)
        sign = 1 if lead > 0 else -1
        return tuple(CyclotomicNumber.rational(Fraction(sign * v, g)) for v in ints)
    lead = next(v for v in vector if not v.is_zero())
    inv = lead.inverse()
    return tuple(v * inv for v in vector)


def kernel_vector(matrix, width):
    """A nonzero c with Σ_i c_i·column_i = 0, or None for full column rank"""
    ech = Echelon()
    for row in _matrix(matrix):
        ech.add(row)
    free = [col for col in range(width) if col not in ech.pivots]
    if not free:
        return None
    f = free[0]
    rows = ech.reduced()
    c = [CyclotomicNumber.rational(0)] * width
    c[f] = CyclotomicNumber.rational(1)
    for row, col in zip(rows, ech.pivots):
        c[col] = -row[f]
    return _normalize(c)


@dataclass(frozen=True)
class Dependent:
    kernel: tuple
    rank: int

    def __str__(self):
        return f"dependent on sample, kernel ({', '.join(str(v) for v in self.kernel)})"


@dataclass(frozen=True)
class Independent:
    witness: tuple

    def __str__(self):
        return f"independent on sample, witness rows {self.witness}"


@dataclass(frozen=True)
class Inconclusive:
    rank: int
    needed: int

    def __str__(self):
        return f"inconclusive: rank {self.rank} of {self.needed} on a partial sample"


def sample_matrix(fs):
    """Columns f_1..f_ℓ (each a sequence of values on the sample) as a row-per-point matrix"""
    if not fs:
        raise WorkbenchError("no functions given")
    size = len(fs[0])
    if any(len(f) != size for f in fs):
        raise WorkbenchError("functions evaluated on samples of different sizes")
    return [[_cyc(f[j]) for f in fs] for j in range(size)]


def dependence_test(fs, complete=True):
    """Verdict on the sample: Independent with ℓ rows of nonzero determinant, Dependent with an
    exact kernel vector, or Inconclusive for a partial sample of too small rank"""
    ell = len(fs)
    matrix = sample_matrix(fs)
    if len(matrix) < ell:
        raise WorkbenchError(f"a sample of {len(matrix)} points cannot separate {ell} functions")
    ech = Echelon()
    chosen = []
    for j, row in enumerate(matrix):
        if ech.add(row):
            chosen.append(j)
            if len(chosen) == ell:
                return Independent(tuple(chosen))
    if not complete:
        return Inconclusive(ech.rank, ell)
    return Dependent(kernel_vector(matrix, ell), ech.rank)


def determinant_criterion(fs):
    """Brute force: True iff some ℓ-tuple of sample points has det(f_i(z_j)) ≠ 0"""
    ell = len(fs)
    matrix = sample_matrix(fs)
    for rows in combinations(range(len(matrix)), ell):
        if not determinant([matrix[j] for j in rows]).is_zero():
            return True
    return False


@dataclass(frozen=True)
class CramerResult:
    D: CyclotomicNumber
    C: tuple
    c: tuple
    reproduces: bool


def cramer_solve(matrix, rhs):
    """c with Σ_i c_i·matrix[j][i] = rhs[j], from D = det(matrix) and the column-replaced C_i"""
    m = _matrix(matrix)
    rhs = [_cyc(v) for v in rhs]
    D = determinant(m)
    if D.is_zero():
        raise SingularMatrixError("D = 0 at this tuple; pick another with find_witness_w")
    C = []
    for i in range(len(m)):
        replaced = [row[:i] + [rhs[j]] + row[i + 1:] for j, row in enumerate(m)]
        C.append(determinant(replaced))
    c = tuple(Ci / D for Ci in C)
    reproduces = all(sum((ci * row[i] for i, ci in enumerate(c)), CyclotomicNumber.rational(0)) == rhs[j]
                     for j, row in enumerate(m))
    return CramerResult(D, tuple(C), c, reproduces)


def _merge(x, y):
    env = x.env() if isinstance(x, Point) else dict(x)
    if y:
        env.update(y.env() if isinstance(y, Point) else dict(y))
    return env


def _values(specs, field, psi, points, y):
    return [[eval_expfun(H, field, psi, _merge(x, y)) for H in specs] for x in points]


def cramer_coeffs(Hs, G, field, psi, y, w):
    """Coefficients c with G = Σ c_i H_i on the tuple w = (x_1..x_ℓ), at the fixed parameter y"""
    if len(w) != len(Hs):
        raise WorkbenchError(f"{len(Hs)} functions need a tuple of {len(Hs)} points, got {len(w)}")
    matrix = _values(Hs, field, psi, w, y)
    rhs = [row[0] for row in _values([G], field, psi, w, y)]
    return cramer_solve(matrix, rhs)


class NotFound:
    def __bool__(self):
        return False

    def __str__(self):
        return "not found"


NOT_FOUND = NotFound()


def find_witness_w(Hs, field, psi, y, candidates):
    """The first tuple of candidate points (greedy row extension) with D ≠ 0"""
    if not candidates:
        raise WorkbenchError("no candidate points")
    ech = Echelon()
    chosen = []
    for x in candidates:
        row = _values(Hs, field, psi, [x], y)[0]
        if ech.add(row):
            chosen.append(x)
            if len(chosen) == len(Hs):
                return tuple(chosen)
    logger.debug("no witness tuple among %d candidates (rank %d)", len(candidates), ech.rank)
    return NOT_FOUND


def held_out_residual(Hs, G, field, psi, y, c, points):
    """Points where G - Σ c_i H_i does not vanish, with the residual"""
    out = []
    c = [_cyc(v) for v in c]
    for x in points:
        hs = _values(Hs, field, psi, [x], y)[0]
        g = _values([G], field, psi, [x], y)[0][0]
        residual = g - sum((ci * h for ci, h in zip(c, hs)), CyclotomicNumber.rational(0))
        if not residual.is_zero():
            out.append((x, residual))
    return out
