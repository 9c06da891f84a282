"""
The depth-bounded additive character family of a local field.

Every member is ψ_b(x) = ψ_std(b·x) for a twisting unit b ≡ 1 mod ϖ, known modulo
ϖ^(depth+1). The standard character is

  F_q((t)):  ψ_std(x) = 𝐞(tr(coefficient of t^0 in x))
  Q_q:       ψ_std(x) = exp(2πi·{Tr(x)/p}_p)   ({·}_p the p-adic fractional part)

so it is trivial on M_F and equals 𝐞∘tr of the residue class on O_F. Two twists agree on
ϖ^-d O_F / M_F exactly when they agree modulo ϖ^(d+1), which gives q^d members. The
member with index i uses the base-q digits of i (lowest first) as the digits of b at
ϖ^1, ..., ϖ^d; index 0 is the standard character.
"""
import logging
from dataclasses import dataclass

from motivic.cyclotomic import ONE, CyclotomicNumber
from motivic.exceptions import DepthExceededError, PrecisionError, WorkbenchError
from motivic.limits import check_limit
from motivic.localfield import LocalFieldDesc, ResidueElem, ValuedElem, from_digits, lift, one

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Character:
    field: LocalFieldDesc
    depth: int
    index: int
    twist: ValuedElem

    @property
    def value_order(self):
        """Order of the roots of unity the values live in"""
        if self.field.is_equal_char:
            return self.field.p
        return self.field.p ** (self.depth + 1)

    def label(self):
        return f"depth {self.depth}, index {self.index}"

    def __call__(self, a, v=None):
        return eval_char(self, a, v)

    def __str__(self):
        return f"ψ[{self.label()}] on {self.field}"


def standard_psi(field):
    return Character(field, 0, 0, one(field))


def character_at(field, depth, index):
    """The member of the depth-d family with the given enumeration index"""
    if depth < 0:
        raise WorkbenchError("character depth must be nonnegative")
    if depth + 1 > field.precision:
        raise PrecisionError(f"depth {depth} needs at least {depth + 1} digits, {field} carries {field.precision}")
    q = field.q
    if not 0 <= index < q ** depth:
        raise WorkbenchError(f"index {index} outside the depth-{depth} family of size {q ** depth}")
    k = field.residue_field
    digits = [k.one]
    rest = index
    for _ in range(depth):
        rest, d = divmod(rest, q)
        digits.append(k.from_index(d))
    return Character(field, depth, index, from_digits(field, 0, digits))


def enumerate_characters(field, depth):
    """All q^d members of the depth-d family, in index order"""
    count = field.q ** depth
    check_limit('character family size q^d', count, 'WORKBENCH_MAX_CHARACTERS')
    logger.debug("enumerating %d characters of depth %d on %s", count, depth, field)
    return [character_at(field, depth, i) for i in range(count)]


def eval_char(psi, a, v=None):
    """ψ(a), or ψ(a + u) for the digit lift u of the residue element v"""
    x = a if v is None else a + lift(psi.field, v)
    if x.is_zero() and x.is_exact:
        return ONE
    if x.valuation < -psi.depth:
        raise DepthExceededError(-x.valuation, x.valuation)
    y = psi.twist * x
    if y.absprec < 1:
        raise PrecisionError(f"{x} is not known modulo M_F")
    if y.is_zero() or y.valuation >= 1:
        return ONE
    field = psi.field
    if field.is_equal_char:
        return CyclotomicNumber.root_of_unity(field.p, y.digit(0).trace())
    n = 1 - y.valuation
    ar = field.arithmetic
    coords = ar.encode([y.digit(y.valuation + k) for k in range(n)])
    modulus = field.p ** n
    tr = sum(c * t for c, t in zip(coords, ar.basis_traces)) % modulus
    order = psi.value_order
    return CyclotomicNumber.root_of_unity(order, tr * (order // modulus))


def e_residue(v):
    """𝐞(tr(v)) for a residue element"""
    return CyclotomicNumber.root_of_unity(v.field.p, v.trace())


def additive_character_sum(k, c):
    """Σ_{y ∈ k} 𝐞(tr(c·y))"""
    if not isinstance(c, ResidueElem):
        c = k.from_int(c)
    return sum((e_residue(c * y) for y in k.elements), CyclotomicNumber.rational(0))
