"""
Syntax trees of spec documents.

Terms carry no sort annotation: sorts are inferred by motivic.lang.sorts from the variable
declarations, and the evaluator dispatches on the runtime values (ValuedElem for VF,
ResidueElem for RF, int for ZZ).
"""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction


class Sort(Enum):
    VF = 'VF'
    RF = 'RF'
    ZZ = 'ZZ'


class SpecClass(Enum):
    """Declared class of a document: 𝒞, 𝒞ᵉ or 𝒞ᵉˣᵖ"""
    C = 'C'
    CE = 'Ce'
    CEXP = 'Cexp'


# terms

@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Uniformizer:
    """The constant t, interpreted as ϖ"""


@dataclass(frozen=True)
class Add:
    terms: tuple


@dataclass(frozen=True)
class Neg:
    term: object


@dataclass(frozen=True)
class Mul:
    terms: tuple


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Ord:
    term: object


@dataclass(frozen=True)
class Ac:
    term: object


@dataclass(frozen=True)
class Case:
    guard: object
    value: object


@dataclass(frozen=True)
class Cases:
    branches: tuple


ZERO = Const(0)
ONE = Const(1)


# formulas

@dataclass(frozen=True)
class Truth:
    value: bool


@dataclass(frozen=True)
class Not:
    formula: object


@dataclass(frozen=True)
class And:
    formulas: tuple


@dataclass(frozen=True)
class Or:
    formulas: tuple


@dataclass(frozen=True)
class Compare:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Congruence:
    left: object
    right: object
    modulus: int


@dataclass(frozen=True)
class Quantifier:
    """exists/forall over RF (bounds None) or over a ZZ window [lo, hi]"""
    kind: str
    var: str
    sort: Sort
    body: object
    bounds: tuple = None


TRUE = Truth(True)
FALSE = Truth(False)


# documents

@dataclass(frozen=True)
class VarDecl:
    name: str
    sort: Sort


@dataclass(frozen=True)
class VFWindowDecl:
    name: str
    vmin: int
    vmax: int
    digits: int = 1
    zero: bool = False


@dataclass(frozen=True)
class ZZWindowDecl:
    name: str
    lo: int
    hi: int


@dataclass(frozen=True)
class SolvedDecl:
    """A VF variable computed as num/den from earlier variables instead of enumerated"""
    name: str
    num: object
    den: object


@dataclass(frozen=True)
class MotTerm:
    """coef · #{y : count} · q^alpha · Π beta · Π 1/(1 - q^a)"""
    coef: Fraction = Fraction(1)
    count_vars: tuple = ()
    count: object = TRUE
    alpha: object = ZERO
    betas: tuple = ()
    geoms: tuple = ()


@dataclass(frozen=True)
class Summand:
    weight: tuple = (MotTerm(),)
    y_vars: tuple = ()
    Y: object = TRUE
    g: tuple = (Case(None, ZERO),)
    e: object = ZERO

    @property
    def residue_only(self):
        return all(case.value == ZERO for case in self.g)


@dataclass(frozen=True)
class MotFunSpec:
    name: str = ''
    variables: tuple = ()
    ambient: object = TRUE
    terms: tuple = ()
    domain: tuple = ()
    declared: SpecClass = None

    @property
    def spec_class(self):
        return SpecClass.C

    @property
    def is_ce(self):
        return True


@dataclass(frozen=True)
class ExpFunSpec:
    name: str = ''
    variables: tuple = ()
    ambient: object = TRUE
    summands: tuple = ()
    domain: tuple = ()
    declared: SpecClass = None

    @property
    def is_ce(self):
        """All g cases are the zero term"""
        return all(s.residue_only for s in self.summands)

    @property
    def spec_class(self):
        return SpecClass.CE if self.is_ce else SpecClass.CEXP


@dataclass(frozen=True)
class ConfigDoc:
    values: dict = field(default_factory=dict)


def declared_sorts(spec):
    return {d.name: d.sort for d in spec.variables}
