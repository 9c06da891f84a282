"""Canonical text of spec documents; parse_spec(print_spec(s)) == s"""
from fractions import Fraction

from motivic.lang import ast

# term levels: sum 1, product 2, unary 3, power 4, atom 5
# formula levels: quantifier 0, or 1, and 2, not 3, atom 4


def _wrap(text, level, needed):
    return f'({text})' if level < needed else text


def _term(node):
    if isinstance(node, ast.Const):
        return str(node.value), 5
    if isinstance(node, ast.Var):
        return node.name, 5
    if isinstance(node, ast.Uniformizer):
        return 't', 5
    if isinstance(node, ast.Add):
        parts = [format_term(node.terms[0], 2)]
        for child in node.terms[1:]:
            if isinstance(child, ast.Neg):
                parts.append(f'- {format_term(child.term, 2)}')
            else:
                parts.append(f'+ {format_term(child, 2)}')
        return ' '.join(parts), 1
    if isinstance(node, ast.Mul):
        return '*'.join(format_term(c, 3) for c in node.terms), 2
    if isinstance(node, ast.Neg):
        return f'-{format_term(node.term, 3)}', 3
    if isinstance(node, ast.Pow):
        return f'{format_term(node.base, 5)}^{node.exponent}', 4
    if isinstance(node, ast.Ord):
        return f'ord({format_term(node.term)})', 5
    if isinstance(node, ast.Ac):
        return f'ac({format_term(node.term)})', 5
    if isinstance(node, ast.Cases):
        branches = ' '.join(f'when {format_formula(b.guard)} => {format_term(b.value)}' for b in node.branches)
        return f'cases {{ {branches} }}', 5
    raise TypeError(f"not a term: {node!r}")


def format_term(node, level=0):
    text, own = _term(node)
    return _wrap(text, own, level)


def _formula(node):
    if isinstance(node, ast.Truth):
        return ('true' if node.value else 'false'), 4
    if isinstance(node, ast.Compare):
        return f'{format_term(node.left)} {node.op} {format_term(node.right)}', 4
    if isinstance(node, ast.Congruence):
        return f'{format_term(node.left)} == {format_term(node.right)} mod {node.modulus}', 4
    if isinstance(node, ast.Not):
        return f'not {format_formula(node.formula, 3)}', 3
    if isinstance(node, ast.And):
        return ' and '.join(format_formula(f, 3) for f in node.formulas), 2
    if isinstance(node, ast.Or):
        return ' or '.join(format_formula(f, 2) for f in node.formulas), 1
    if isinstance(node, ast.Quantifier):
        domain = node.sort.value if node.bounds is None else f'[{node.bounds[0]}, {node.bounds[1]}]'
        return f'{node.kind} {node.var} in {domain}: {format_formula(node.body)}', 0
    raise TypeError(f"not a formula: {node!r}")


def format_formula(node, level=0):
    text, own = _formula(node)
    return _wrap(text, own, level)


def _rational(value):
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f'{value.numerator}/{value.denominator}'


def _varlist(names):
    return '[' + ', '.join(names) + ']'


def _motterm(term, indent):
    pad = ' ' * indent
    lines = [f'{pad}term {{']
    if term.coef != 1:
        lines.append(f'{pad}  coef : {_rational(term.coef)}')
    if term.count_vars or term.count != ast.TRUE:
        lines.append(f'{pad}  count {_varlist(term.count_vars)} : {format_formula(term.count)}')
    if term.alpha != ast.ZERO:
        lines.append(f'{pad}  alpha : {format_term(term.alpha)}')
    for beta in term.betas:
        lines.append(f'{pad}  beta : {format_term(beta)}')
    if term.geoms:
        lines.append(f'{pad}  geom : ' + ', '.join(str(a) for a in term.geoms))
    lines.append(f'{pad}}}')
    return lines


def _summand(summand):
    lines = ['summand {', '  H {']
    for term in summand.weight:
        lines.extend(_motterm(term, 4))
    lines.append('  }')
    if summand.y_vars or summand.Y != ast.TRUE:
        lines.append(f'  Y {_varlist(summand.y_vars)} : {format_formula(summand.Y)}')
    if summand.g != (ast.Case(None, ast.ZERO),):
        if len(summand.g) == 1 and summand.g[0].guard is None:
            lines.append(f'  g : {format_term(summand.g[0].value)}')
        else:
            lines.append('  g {')
            for case in summand.g:
                lines.append(f'    when {format_formula(case.guard)} => {format_term(case.value)}')
            lines.append('  }')
    if summand.e != ast.ZERO:
        lines.append(f'  e : {format_term(summand.e)}')
    lines.append('}')
    return lines


def _domain_entry(entry):
    if isinstance(entry, ast.VFWindowDecl):
        text = f'{entry.name} : VF [{entry.vmin}, {entry.vmax}]'
        if entry.digits != 1:
            text += f' digits {entry.digits}'
        if entry.zero:
            text += ' zero'
        return text
    if isinstance(entry, ast.ZZWindowDecl):
        return f'{entry.name} : ZZ [{entry.lo}, {entry.hi}]'
    return f'{entry.name} := {format_term(entry.num)} / {format_term(entry.den)}'


def print_spec(spec):
    lines = []
    if spec.name or spec.declared is not None:
        header = f'spec {spec.name or "unnamed"}'
        if spec.declared is not None:
            header += f' : {spec.declared.value}'
        lines.append(header)
    if spec.variables:
        lines.append('vars {')
        lines.extend(f'  {d.name} : {d.sort.value}' for d in spec.variables)
        lines.append('}')
    if spec.ambient != ast.TRUE:
        lines.append(f'set X : {format_formula(spec.ambient)}')
    if spec.domain:
        lines.append('domain {')
        lines.extend(f'  {_domain_entry(e)}' for e in spec.domain)
        lines.append('}')
    if isinstance(spec, ast.MotFunSpec):
        for term in spec.terms:
            lines.extend(_motterm(term, 0))
    else:
        for summand in spec.summands:
            lines.extend(_summand(summand))
    return '\n'.join(lines) + '\n'
