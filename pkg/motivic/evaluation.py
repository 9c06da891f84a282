"""
Evaluation of spec documents on concrete truncated local fields.

Points assign ValuedElem values to VF variables, ResidueElem values to RF variables and
integers to ZZ variables. Residue sets are enumerated over k_F, so everything is finite;
VF variables are sampled from digit windows (EvalDomain) or solved from a quotient of
VF-terms in the other variables.
"""
import itertools
import logging
import math
import operator
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import reduce

import mpmath

from motivic.characters import eval_char, standard_psi
from motivic.cyclotomic import CyclotomicNumber
from motivic.exceptions import DivergenceError, EvaluationError, FieldMismatchError, PrecisionError
from motivic.lang import ast
from motivic.limits import check_limit, tolerance
from motivic.localfield import (
    ResidueElem,
    ValuedElem,
    ac,
    from_digits,
    from_rational,
    uniformizer,
    zero,
)

logger = logging.getLogger(__name__)

_INT_OPS = {
    '=': operator.eq,
    '!=': operator.ne,
    '<': operator.lt,
    '<=': operator.le,
    '>': operator.gt,
    '>=': operator.ge,
}


class CaseError(EvaluationError):
    """A case list has no matching guard, or two guards hold at once"""

    def __init__(self, message, indices=()):
        self.indices = tuple(indices)
        super().__init__(message)


@dataclass(frozen=True)
class VFWindow:
    """Elements u·ϖ^v with vmin <= v <= vmax and `digits` leading digits (first nonzero)"""
    vmin: int
    vmax: int
    digits: int = 1
    zero: bool = False


@dataclass(frozen=True)
class EvalDomain:
    vf: dict = dc_field(default_factory=dict)
    zz: dict = dc_field(default_factory=dict)
    solved: dict = dc_field(default_factory=dict)

    @classmethod
    def from_spec(cls, spec):
        return cls.from_decls(spec.domain)

    @classmethod
    def from_decls(cls, decls):
        vf, zz, solved = {}, {}, {}
        for entry in decls:
            if isinstance(entry, ast.VFWindowDecl):
                vf[entry.name] = VFWindow(entry.vmin, entry.vmax, entry.digits, entry.zero)
            elif isinstance(entry, ast.ZZWindowDecl):
                zz[entry.name] = (entry.lo, entry.hi)
            else:
                solved[entry.name] = (entry.num, entry.den)
        return cls(vf, zz, solved)

    def merged(self, other):
        """This domain with the windows of `other` taking precedence"""
        return EvalDomain({**self.vf, **other.vf}, {**self.zz, **other.zz}, {**self.solved, **other.solved})


DEFAULT_VF_WINDOW = VFWindow(0, 1)
DEFAULT_ZZ_WINDOW = (0, 3)


def vf_window_elements(field, window):
    k = field.residue_field
    units = [d for d in k.elements if not d.is_zero()]
    out = [zero(field)] if window.zero else []
    for v in range(window.vmin, window.vmax + 1):
        for lead in units:
            for rest in itertools.product(k.elements, repeat=window.digits - 1):
                out.append(from_digits(field, v, (lead,) + rest))
    return out


def value_key(value):
    """Field-independent key of a coordinate: digits for VF, index for RF, the integer for ZZ"""
    if isinstance(value, ValuedElem):
        if value.is_zero():
            return ('VF', None, ())
        return ('VF', value.valuation, tuple(d.index for d in value.digits))
    if isinstance(value, ResidueElem):
        return ('RF', value.index)
    return ('ZZ', value)


def format_value(value):
    return str(value)


@dataclass(frozen=True)
class Point:
    field: object
    values: tuple
    key: tuple = ()

    @classmethod
    def of(cls, field, mapping, solved=()):
        values = tuple(mapping.items())
        key = tuple((name, value_key(v)) for name, v in values if name not in solved)
        return cls(field, values, key)

    def env(self):
        return dict(self.values)

    def __getitem__(self, name):
        return self.env()[name]

    def __str__(self):
        return ', '.join(f'{name}={format_value(v)}' for name, v in self.values)


def _env_of(x):
    if isinstance(x, Point):
        return x.env()
    return dict(x or {})


class Evaluator:
    """Evaluates terms and formulas in one field"""

    def __init__(self, field):
        self.field = field
        self.k = field.residue_field

    def term(self, node, env):
        if isinstance(node, ast.Const):
            return node.value
        if isinstance(node, ast.Var):
            try:
                return env[node.name]
            except KeyError:
                raise EvaluationError(f"variable {node.name} has no value") from None
        if isinstance(node, ast.Uniformizer):
            return uniformizer(self.field)
        if isinstance(node, ast.Add):
            return reduce(operator.add, (self.term(c, env) for c in node.terms))
        if isinstance(node, ast.Mul):
            return reduce(operator.mul, (self.term(c, env) for c in node.terms))
        if isinstance(node, ast.Neg):
            return -self.term(node.term, env)
        if isinstance(node, ast.Pow):
            return self.term(node.base, env) ** node.exponent
        if isinstance(node, ast.Ord):
            value = self.vf(node.term, env)
            if value.is_zero():
                raise EvaluationError("ord of zero")
            return value.valuation
        if isinstance(node, ast.Ac):
            return ac(self.vf(node.term, env))
        if isinstance(node, ast.Cases):
            return self.term(self.select(node.branches, env).value, env)
        raise EvaluationError(f"unknown term node {node!r}")

    def select(self, branches, env):
        """The unique branch whose guard holds"""
        hits = [i for i, b in enumerate(branches) if b.guard is None or self.holds(b.guard, env)]
        if not hits:
            raise CaseError("no case guard holds")
        if len(hits) > 1:
            raise CaseError(f"overlapping case guards {hits[0] + 1} and {hits[1] + 1}", hits[:2])
        return branches[hits[0]]

    def vf(self, node, env):
        value = self.term(node, env)
        if isinstance(value, ValuedElem):
            return value
        return from_rational(self.field, value)

    def rf(self, node, env):
        value = self.term(node, env)
        if isinstance(value, ResidueElem):
            return value
        return self.k.from_int(value)

    def zz(self, node, env):
        value = self.term(node, env)
        if not isinstance(value, int):
            raise EvaluationError(f"expected an integer, got {value}")
        return value

    def holds(self, node, env):
        if isinstance(node, ast.Truth):
            return node.value
        if isinstance(node, ast.Not):
            return not self.holds(node.formula, env)
        if isinstance(node, ast.And):
            return all(self.holds(f, env) for f in node.formulas)
        if isinstance(node, ast.Or):
            return any(self.holds(f, env) for f in node.formulas)
        if isinstance(node, ast.Compare):
            return self._compare(node, env)
        if isinstance(node, ast.Congruence):
            return (self.zz(node.left, env) - self.zz(node.right, env)) % node.modulus == 0
        if isinstance(node, ast.Quantifier):
            if node.bounds is None:
                values = self.k.elements
            else:
                values = range(node.bounds[0], node.bounds[1] + 1)
            test = any if node.kind == 'exists' else all
            return test(self.holds(node.body, {**env, node.var: v}) for v in values)
        raise EvaluationError(f"unknown formula node {node!r}")

    def _compare(self, node, env):
        left = self.term(node.left, env)
        right = self.term(node.right, env)
        if isinstance(left, ValuedElem) or isinstance(right, ValuedElem):
            if not isinstance(left, ValuedElem):
                left = from_rational(self.field, left)
            equal = left.agrees_with(right)
            return equal if node.op == '=' else not equal
        if isinstance(left, ResidueElem) or isinstance(right, ResidueElem):
            if not isinstance(left, ResidueElem):
                left = self.k.from_int(left)
            if not isinstance(right, ResidueElem):
                right = self.k.from_int(right)
            return (left == right) if node.op == '=' else (left != right)
        return _INT_OPS[node.op](left, right)


def in_ambient(spec, field, x):
    return Evaluator(field).holds(spec.ambient, _env_of(x))


def _solve(ev, domain, env):
    """env extended by the solved variables, None when a denominator vanishes"""
    for name, (num, den) in domain.solved.items():
        d = ev.vf(den, env)
        if d.is_zero():
            if not d.is_exact:
                raise PrecisionError(f"denominator of {name} is {d}")
            return None
        env[name] = ev.vf(num, env) / d
    return env


def complete_point(spec, field, mapping, domain=None):
    """The point with the given coordinates and its solved variables, which must lie in X"""
    domain = EvalDomain.from_spec(spec).merged(domain) if domain is not None else EvalDomain.from_spec(spec)
    ev = Evaluator(field)
    missing = [d.name for d in spec.variables if d.name not in mapping and d.name not in domain.solved]
    if missing:
        raise EvaluationError(f"no value for {', '.join(missing)}")
    env = _solve(ev, domain, dict(mapping))
    if env is None:
        raise EvaluationError("a solved variable has a vanishing denominator")
    _require_ambient(spec, field, env)
    return Point.of(field, {d.name: env[d.name] for d in spec.variables}, domain.solved)


def grid_points(spec, field, domain=None):
    """All points of the domain grid lying in X, in a field-independent order"""
    domain = EvalDomain.from_spec(spec).merged(domain) if domain is not None else EvalDomain.from_spec(spec)
    ev = Evaluator(field)
    names, axes = [], []
    for decl in spec.variables:
        if decl.name in domain.solved:
            continue
        names.append(decl.name)
        if decl.sort is ast.Sort.VF:
            axes.append(vf_window_elements(field, domain.vf.get(decl.name, DEFAULT_VF_WINDOW)))
        elif decl.sort is ast.Sort.RF:
            axes.append(field.residue_field.elements)
        else:
            lo, hi = domain.zz.get(decl.name, DEFAULT_ZZ_WINDOW)
            axes.append(range(lo, hi + 1))
    check_limit('evaluation grid', math.prod(len(a) for a in axes), 'WORKBENCH_MAX_ENUMERATION')
    order = [d.name for d in spec.variables]
    points = []
    for combo in itertools.product(*axes):
        env = _solve(ev, domain, dict(zip(names, combo)))
        if env is None or not ev.holds(spec.ambient, env):
            continue
        points.append(Point.of(field, {n: env[n] for n in order}, domain.solved))
    logger.debug("grid of %d points for %r on %s", len(points), spec.name, field)
    return points


def enum_set(Y, field, x, y_vars):
    """All tuples y in k_F^r with (x, y) in Y, in index order"""
    k = field.residue_field
    check_limit('residue tuple enumeration', k.q ** len(y_vars), 'WORKBENCH_MAX_ENUMERATION')
    ev = Evaluator(field)
    env = _env_of(x)
    return [ys for ys in itertools.product(k.elements, repeat=len(y_vars))
            if ev.holds(Y, {**env, **dict(zip(y_vars, ys))})]


def eval_motterm(term, field, x):
    ev = Evaluator(field)
    env = _env_of(x)
    count = len(enum_set(term.count, field, env, term.count_vars))
    if count == 0 or term.coef == 0:
        return Fraction(0)
    q = Fraction(field.q)
    value = term.coef * count * q ** ev.zz(term.alpha, env)
    for beta in term.betas:
        value *= ev.zz(beta, env)
    for a in term.geoms:
        value /= 1 - q ** a
    return value


def _require_ambient(spec, field, env):
    if not Evaluator(field).holds(spec.ambient, env):
        raise EvaluationError(f"point outside X of {spec.name or 'the document'}")


def eval_motfun(H, field, x):
    """Exact rational value of a motivic function"""
    env = _env_of(x)
    _require_ambient(H, field, env)
    terms = H.terms if isinstance(H, ast.MotFunSpec) else H
    return sum((eval_motterm(t, field, env) for t in terms), Fraction(0))


@dataclass(frozen=True)
class SummandValue:
    """H_i(x) and the (y, g(x, y), e(x, y)) triples of one summand"""
    weight: Fraction
    entries: tuple


def summand_values(spec, field, x):
    env = _env_of(x)
    _require_ambient(spec, field, env)
    ev = Evaluator(field)
    out = []
    for summand in spec.summands:
        weight = sum((eval_motterm(t, field, env) for t in summand.weight), Fraction(0))
        entries = []
        if weight:
            for ys in enum_set(summand.Y, field, env, summand.y_vars):
                inner = {**env, **dict(zip(summand.y_vars, ys))}
                case = ev.select(summand.g, inner)
                entries.append((ys, ev.vf(case.value, env), ev.rf(summand.e, inner)))
        out.append(SummandValue(weight, tuple(entries)))
    return out


def eval_expfun(H, field, psi, x):
    """Exact value Σ_i H_i(x) Σ_{y ∈ Y_i} ψ(g_i(x, y) + e_i(x, y))"""
    if isinstance(H, ast.MotFunSpec):
        return CyclotomicNumber.rational(eval_motfun(H, field, x))
    if psi is None:
        psi = standard_psi(field)
    if psi.field != field:
        raise FieldMismatchError(f"character of {psi.field} evaluated on {field}")
    total = CyclotomicNumber.rational(0)
    for sv in summand_values(H, field, x):
        inner = CyclotomicNumber.rational(0)
        for _, g, e in sv.entries:
            inner = inner + eval_char(psi, g, e)
        total = total + inner * sv.weight
    return total


def polar_depth(spec, field, points):
    """max(0, -min ord) over the g-values at the given points"""
    if isinstance(spec, ast.MotFunSpec):
        return 0
    depth = 0
    for x in points:
        for sv in summand_values(spec, field, x):
            for _, g, _ in sv.entries:
                if not g.is_zero():
                    depth = max(depth, -g.valuation)
    return depth


@dataclass(frozen=True)
class FiberIntegral:
    exact: CyclotomicNumber
    value: complex
    converged: bool
    shells: tuple
    tail_included: bool


def integrate_fiber(f, field, psi, x, dom=None, strict=False):
    """Integral of f(x, ·) over the Y-coordinates not fixed by x.

    Counting measure on RF and ZZ coordinates, Haar measure with vol(O_F) = 1 on VF
    coordinates: a cell of valuation k with m fixed digits has measure q^-(k+m), and the
    ball ϖ^(vmax+1)·O_F beyond the window is one tail cell represented by 0 (left out when
    f is not defined there). Shells are indexed by the largest offset of a coordinate in
    its window; the run counts as converged when the last shell is smaller than the one
    before it.
    """
    dom = dom or EvalDomain()
    env0 = _env_of(x)
    q = field.q
    axes, names = [], []
    for decl in f.variables:
        if decl.name in env0:
            continue
        names.append(decl.name)
        if decl.sort is ast.Sort.VF:
            window = dom.vf.get(decl.name, VFWindow(0, field.precision - 1))
            cells = [(el, Fraction(q) ** -(el.valuation + window.digits), el.valuation - window.vmin)
                     for el in vf_window_elements(field, VFWindow(window.vmin, window.vmax, window.digits))]
            cells.append((zero(field), Fraction(q) ** -(window.vmax + 1), None))
            axes.append(cells)
        elif decl.sort is ast.Sort.RF:
            axes.append([(v, Fraction(1), 0) for v in field.residue_field.elements])
        else:
            lo, hi = dom.zz.get(decl.name, DEFAULT_ZZ_WINDOW)
            axes.append([(n, Fraction(1), n - lo) for n in range(lo, hi + 1)])
    check_limit('integration cells', math.prod(len(a) for a in axes), 'WORKBENCH_MAX_ENUMERATION')
    ev = Evaluator(field)
    total = CyclotomicNumber.rational(0)
    shells = {}
    tail_included = True
    for combo in itertools.product(*axes):
        env = {**env0, **{n: cell[0] for n, cell in zip(names, combo)}}
        in_tail = any(cell[2] is None for cell in combo)
        if not ev.holds(f.ambient, env):
            continue
        try:
            value = eval_expfun(f, field, psi, env)
        except EvaluationError:
            if not in_tail:
                raise
            tail_included = False
            continue
        contribution = value * math.prod(cell[1] for cell in combo)
        total = total + contribution
        if not in_tail:
            shell = max((cell[2] for cell in combo), default=0)
            shells[shell] = shells.get(shell, CyclotomicNumber.rational(0)) + contribution
    magnitudes = tuple(abs(shells[s].to_complex()) for s in sorted(shells))
    converged = len(magnitudes) < 2 or magnitudes[-1] < magnitudes[-2] or magnitudes[-1] == 0
    if not converged:
        logger.warning("integral of %r at %s: shell magnitudes do not decay", f.name, x)
        if strict:
            raise DivergenceError(f"shell magnitudes {magnitudes[-2]:.3g} -> {magnitudes[-1]:.3g} do not decay")
    return FiberIntegral(total, total.to_complex(), converged, magnitudes, tail_included)


@dataclass(frozen=True)
class PushforwardCheck:
    integral: FiberIntegral
    expected: CyclotomicNumber
    agrees: bool


def check_pushforward(f, I, field, psi, x, dom=None):
    """Compare the fiber integral of f at x with the value of a claimed integral I"""
    integral = integrate_fiber(f, field, psi, x, dom)
    expected = eval_expfun(I, field, psi, x)
    target = expected.to_complex()
    tol = tolerance()
    agrees = abs(integral.value - target) <= tol * max(1.0, abs(target))
    return PushforwardCheck(integral, expected, agrees)


@dataclass(frozen=True)
class BasicInequality:
    sum_of_squares: float
    square_of_sum: float
    n_sum_of_squares: float
    holds: bool


def basic_inequality(values):
    """Σ|a_i|² <= (Σ|a_i|)² <= n·Σ|a_i|² for a finite list of cyclotomic values.

    The squared moduli are exact; the middle term needs their square roots and is
    computed with mpmath at 50 digits.
    """
    values = [v if isinstance(v, CyclotomicNumber) else CyclotomicNumber.rational(v) for v in values]
    n = len(values)
    with mpmath.workdps(50):
        squares = [v.abs2().to_mpc().real for v in values]
        s2 = mpmath.fsum(squares)
        s1 = mpmath.fsum(mpmath.sqrt(max(s, 0)) for s in squares) ** 2
        slack = mpmath.mpf(10) ** -40 * max(1, s2 * n)
        holds = s2 <= s1 + slack and s1 <= n * s2 + slack
        return BasicInequality(float(s2), float(s1), float(n * s2), bool(holds))
