"""Sort inference for terms and formulas of spec documents"""
from motivic.exceptions import SortError, SpecError
from motivic.lang import ast

RESERVED = frozenset({
    't', 'ord', 'ac', 'cases', 'when', 'true', 'false', 'and', 'or', 'not', 'exists', 'forall',
    'in', 'mod', 'VF', 'RF', 'ZZ',
})

_ORDERED = frozenset({'<', '<=', '>', '>='})


def _unify(a, b, where):
    if a is None:
        return b
    if b is None or a is b:
        return a
    raise SortError(f"sort mismatch in {where}: {a.value} and {b.value}")


def term_sort(node, env):
    """Sort of a term; None for a constant expression whose sort comes from context"""
    if isinstance(node, ast.Const):
        return None
    if isinstance(node, ast.Var):
        if node.name not in env:
            raise SortError(f"undeclared variable {node.name}")
        return env[node.name]
    if isinstance(node, ast.Uniformizer):
        return ast.Sort.VF
    if isinstance(node, ast.Neg):
        return term_sort(node.term, env)
    if isinstance(node, ast.Add):
        sort = None
        for child in node.terms:
            sort = _unify(sort, term_sort(child, env), 'a sum')
        return sort
    if isinstance(node, ast.Mul):
        sort = None
        variable = 0
        for child in node.terms:
            child_sort = term_sort(child, env)
            if child_sort is not None:
                variable += 1
            sort = _unify(sort, child_sort, 'a product')
        if sort is ast.Sort.ZZ and variable > 1:
            raise SortError("ZZ terms must be linear: product of two non-constant ZZ terms")
        return sort
    if isinstance(node, ast.Pow):
        if node.exponent < 0:
            raise SpecError("terms are polynomial: negative exponent")
        sort = term_sort(node.base, env)
        if sort is ast.Sort.ZZ and node.exponent > 1:
            raise SortError("ZZ terms must be linear: power of a ZZ term")
        return sort
    if isinstance(node, ast.Ord):
        _unify(ast.Sort.VF, term_sort(node.term, env), 'ord()')
        return ast.Sort.ZZ
    if isinstance(node, ast.Ac):
        _unify(ast.Sort.VF, term_sort(node.term, env), 'ac()')
        return ast.Sort.RF
    if isinstance(node, ast.Cases):
        if not node.branches:
            raise SpecError("empty case list")
        sort = None
        for branch in node.branches:
            check_formula(branch.guard, env)
            sort = _unify(sort, term_sort(branch.value, env), 'a case list')
        if sort is ast.Sort.VF:
            raise SortError("VF-valued case lists are only allowed as g")
        return sort
    raise SpecError(f"unknown term node {node!r}")


def expect_sort(node, sort, env, where):
    _unify(sort, term_sort(node, env), where)


def check_formula(node, env):
    if isinstance(node, ast.Truth):
        return
    if isinstance(node, ast.Not):
        check_formula(node.formula, env)
    elif isinstance(node, (ast.And, ast.Or)):
        for child in node.formulas:
            check_formula(child, env)
    elif isinstance(node, ast.Compare):
        sort = _unify(term_sort(node.left, env), term_sort(node.right, env), f"'{node.op}'")
        if node.op in _ORDERED and sort in (ast.Sort.VF, ast.Sort.RF):
            raise SortError(f"'{node.op}' is not defined on {sort.value}")
    elif isinstance(node, ast.Congruence):
        if node.modulus <= 0:
            raise SpecError("congruence modulus must be positive")
        _unify(ast.Sort.ZZ, _unify(term_sort(node.left, env), term_sort(node.right, env), 'a congruence'),
               'a congruence')
    elif isinstance(node, ast.Quantifier):
        if node.sort is ast.Sort.VF:
            raise SpecError("quantifiers over VF are not supported")
        if node.sort is ast.Sort.ZZ and node.bounds is None:
            raise SpecError(f"unbounded ZZ quantifier over {node.var}")
        _bind(env, (node.var,), 'quantified variable')
        check_formula(node.body, {**env, node.var: node.sort})
    else:
        raise SpecError(f"unknown formula node {node!r}")


def _bind(env, names, what):
    seen = set()
    for name in names:
        if name in RESERVED:
            raise SortError(f"{name} is a reserved word")
        if name in env or name in seen:
            raise SortError(f"{what} {name} shadows another variable")
        seen.add(name)


def _check_motterm(term, env):
    _bind(env, term.count_vars, 'counted variable')
    check_formula(term.count, {**env, **{y: ast.Sort.RF for y in term.count_vars}})
    expect_sort(term.alpha, ast.Sort.ZZ, env, 'alpha')
    for beta in term.betas:
        expect_sort(beta, ast.Sort.ZZ, env, 'beta')
    if any(a == 0 for a in term.geoms):
        raise SpecError("zero geometric exponent")


def _check_domain(entries, env):
    for entry in entries:
        sort = env.get(entry.name)
        if isinstance(entry, ast.ZZWindowDecl):
            if sort is not ast.Sort.ZZ:
                raise SortError(f"ZZ window for {entry.name}, which is not a ZZ variable")
            if entry.lo > entry.hi:
                raise SpecError(f"empty window for {entry.name}")
            continue
        if sort is not ast.Sort.VF:
            raise SortError(f"VF domain entry for {entry.name}, which is not a VF variable")
        if isinstance(entry, ast.VFWindowDecl):
            if entry.vmin > entry.vmax or entry.digits < 1:
                raise SpecError(f"empty window for {entry.name}")
        else:
            expect_sort(entry.num, ast.Sort.VF, env, f'{entry.name} :=')
            expect_sort(entry.den, ast.Sort.VF, env, f'{entry.name} :=')


def check_spec(spec):
    """Raise SortError/SpecError on the first ill-sorted part of a document"""
    env = {}
    _bind(env, [d.name for d in spec.variables], 'variable')
    env = ast.declared_sorts(spec)
    check_formula(spec.ambient, env)
    _check_domain(spec.domain, env)
    if isinstance(spec, ast.MotFunSpec):
        for term in spec.terms:
            _check_motterm(term, env)
        return spec
    for summand in spec.summands:
        for term in summand.weight:
            _check_motterm(term, env)
        _bind(env, summand.y_vars, 'residue variable')
        inner = {**env, **{y: ast.Sort.RF for y in summand.y_vars}}
        check_formula(summand.Y, inner)
        if not summand.g:
            raise SpecError("empty g case list")
        for case in summand.g:
            if case.guard is not None:
                check_formula(case.guard, inner)
            expect_sort(case.value, ast.Sort.VF, env, 'g')
        expect_sort(summand.e, ast.Sort.RF, inner, 'e')
    return spec
