"""Constructions on spec documents: squared modulus, linear combinations, 𝒞 ⊂ 𝒞ᵉ"""
import dataclasses
from fractions import Fraction

from motivic.exceptions import NotInCeError, SpecError
from motivic.lang import ast
from motivic.lang.sorts import check_spec


def rename(node, mapping):
    """Rename free variables of a term or formula"""
    if isinstance(node, ast.Var):
        return ast.Var(mapping.get(node.name, node.name))
    if isinstance(node, ast.Quantifier):
        inner = {k: v for k, v in mapping.items() if k != node.var}
        return dataclasses.replace(node, body=rename(node.body, inner))
    if isinstance(node, tuple):
        return tuple(rename(child, mapping) for child in node)
    if dataclasses.is_dataclass(node) and not isinstance(node, type):
        changes = {f.name: rename(getattr(node, f.name), mapping) for f in dataclasses.fields(node)
                   if isinstance(getattr(node, f.name), (tuple, ast.Var)) or dataclasses.is_dataclass(getattr(node, f.name))}
        return dataclasses.replace(node, **changes) if changes else node
    return node


def _fresh(name, taken):
    candidate = f'{name}_c'
    while candidate in taken:
        candidate += '_'
    taken.add(candidate)
    return candidate


def _all_names(spec):
    names = {d.name for d in spec.variables}
    summands = spec.summands if isinstance(spec, ast.ExpFunSpec) else ()
    terms = list(spec.terms) if isinstance(spec, ast.MotFunSpec) else []
    for s in summands:
        names.update(s.y_vars)
        terms.extend(s.weight)
    for t in terms:
        names.update(t.count_vars)
    return names


def _term_product(a, b, taken):
    mapping = {y: _fresh(y, taken) for y in b.count_vars}
    return ast.MotTerm(
        coef=a.coef * b.coef,
        count_vars=a.count_vars + tuple(mapping[y] for y in b.count_vars),
        count=_conjoin(a.count, rename(b.count, mapping)),
        alpha=_add(a.alpha, b.alpha),
        betas=a.betas + b.betas,
        geoms=a.geoms + b.geoms,
    )


def _conjoin(a, b):
    if a == ast.TRUE:
        return b
    if b == ast.TRUE:
        return a
    return ast.And((a, b))


def _add(a, b):
    if a == ast.ZERO:
        return b
    if b == ast.ZERO:
        return a
    return ast.Add((a, b))


def _sub(a, b):
    if b == ast.ZERO:
        return a
    if a == ast.ZERO:
        return ast.Neg(b)
    return ast.Add((a, ast.Neg(b)))


def as_expfun(spec):
    """A motivic function as a 𝒞ᵉ document with one non-oscillating summand"""
    if isinstance(spec, ast.ExpFunSpec):
        return spec
    summands = (ast.Summand(weight=spec.terms),) if spec.terms else ()
    return ast.ExpFunSpec(spec.name, spec.variables, spec.ambient, summands, spec.domain, ast.SpecClass.CE)


def conj_square(spec):
    """A 𝒞ᵉ document whose value is the squared modulus of the input's value.

    Summand pairs (i, j) give H_i·H_j·Σ_{y ∈ Y_i, y' ∈ Y_j} 𝐞(tr(e_i(y) - e_j(y'))), with the
    residue variables of the second factor renamed apart.
    """
    spec = as_expfun(spec)
    if not spec.is_ce:
        raise NotInCeError("conj_square needs a spec in 𝒞ᵉ (all g cases zero)")
    taken = _all_names(spec)
    summands = []
    for si in spec.summands:
        for sj in spec.summands:
            mapping = {y: _fresh(y, taken) for y in sj.y_vars}
            weight = tuple(_term_product(a, b, taken) for a in si.weight for b in sj.weight)
            summands.append(ast.Summand(
                weight=weight,
                y_vars=si.y_vars + tuple(mapping[y] for y in sj.y_vars),
                Y=_conjoin(si.Y, rename(sj.Y, mapping)),
                e=_sub(si.e, rename(sj.e, mapping)),
            ))
    name = f'{spec.name}_sq' if spec.name else ''
    return check_spec(ast.ExpFunSpec(name, spec.variables, spec.ambient, tuple(summands), spec.domain,
                                     ast.SpecClass.CE))


def scale(spec, c):
    """c·H as a document"""
    c = Fraction(c)
    spec = as_expfun(spec)
    if c == 0:
        return dataclasses.replace(spec, summands=())
    summands = tuple(
        dataclasses.replace(s, weight=tuple(dataclasses.replace(t, coef=t.coef * c) for t in s.weight))
        for s in spec.summands)
    return dataclasses.replace(spec, summands=summands)


def linear_combination(specs, coeffs, name=''):
    """Σ c_i H_i for documents sharing one ambient set X"""
    if len(specs) != len(coeffs):
        raise SpecError(f"{len(specs)} specs but {len(coeffs)} coefficients")
    if not specs:
        raise SpecError("empty linear combination")
    base = as_expfun(specs[0])
    summands = []
    for spec, c in zip(specs, coeffs):
        spec = as_expfun(spec)
        if spec.variables != base.variables or spec.ambient != base.ambient:
            raise SpecError(f"{spec.name or 'a spec'} does not share the ambient set of {base.name or 'the first spec'}")
        summands.extend(scale(spec, c).summands)
    declared = ast.SpecClass.CE if all(as_expfun(s).is_ce for s in specs) else ast.SpecClass.CEXP
    return ast.ExpFunSpec(name, base.variables, base.ambient, tuple(summands), base.domain, declared)
