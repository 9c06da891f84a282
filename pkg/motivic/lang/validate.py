"""
Diagnostics for parsed spec documents.

Exhaustiveness and exclusivity of case lists are decided on sample evaluations: every point
of the document's domain grid in F_5((t)) and Q_5 (six digits), with all residue tuples.
"""
import logging
from dataclasses import dataclass

from django.conf import settings

from motivic.exceptions import CapacityError, SpecError, WorkbenchError
from motivic.lang import ast
from motivic.lang.sorts import check_spec

logger = logging.getLogger(__name__)

SAMPLE_PRIME = 5
SAMPLE_PRECISION = 6


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str

    def __str__(self):
        return self.message


def sample_fields():
    from motivic.localfield import make_field
    return [make_field(kind, SAMPLE_PRIME, 1, SAMPLE_PRECISION) for kind in ('eq', 'mixed')]


def _class_diagnostics(spec):
    if not isinstance(spec, ast.ExpFunSpec):
        return []
    out = []
    if spec.declared in (ast.SpecClass.CE, ast.SpecClass.C):
        for i, summand in enumerate(spec.summands, 1):
            if not summand.residue_only:
                out.append(Diagnostic('class', f"not in 𝒞ᵉ: summand {i} has a nonzero g case"))
    if spec.declared is ast.SpecClass.C:
        for i, summand in enumerate(spec.summands, 1):
            if summand.e != ast.ZERO:
                out.append(Diagnostic('class', f"not in 𝒞: summand {i} oscillates through e"))
    return out


def _quantifier_windows(node):
    if isinstance(node, ast.Quantifier):
        if node.bounds is not None:
            yield node
        yield from _quantifier_windows(node.body)
    elif isinstance(node, ast.Not):
        yield from _quantifier_windows(node.formula)
    elif isinstance(node, (ast.And, ast.Or)):
        for child in node.formulas:
            yield from _quantifier_windows(child)


def _enumeration_diagnostics(spec):
    limit = settings.WORKBENCH_MAX_ENUMERATION
    sets = []
    terms = list(spec.terms) if isinstance(spec, ast.MotFunSpec) else []
    formulas = [spec.ambient]
    for summand in getattr(spec, 'summands', ()):
        sets.append(('Y', summand.y_vars))
        terms.extend(summand.weight)
        formulas.append(summand.Y)
    for term in terms:
        sets.append(('count', term.count_vars))
        formulas.append(term.count)
    out = []
    for what, names in sets:
        if SAMPLE_PRIME ** len(names) > limit:
            out.append(Diagnostic('enumeration', f"{what} over {len(names)} residue variables enumerates "
                                                 f"{SAMPLE_PRIME}^{len(names)} tuples already at q = {SAMPLE_PRIME}"))
    for formula in formulas:
        for quant in _quantifier_windows(formula):
            lo, hi = quant.bounds
            if hi < lo:
                out.append(Diagnostic('enumeration', f"empty window for quantified {quant.var}"))
            elif hi - lo + 1 > limit:
                out.append(Diagnostic('enumeration', f"window of quantified {quant.var} has {hi - lo + 1} values"))
    return out


def _sample_diagnostics(spec):
    from motivic.evaluation import eval_motfun, grid_points, summand_values
    out = []
    for field in sample_fields():
        try:
            points = grid_points(spec, field)
        except CapacityError as e:
            out.append(Diagnostic('enumeration', f"sample grid on {field}: {e}"))
            continue
        except WorkbenchError as e:
            out.append(Diagnostic('case', f"{e} (in X, on {field})"))
            continue
        for x in points:
            try:
                if isinstance(spec, ast.MotFunSpec):
                    eval_motfun(spec, field, x)
                else:
                    summand_values(spec, field, x)
            except CapacityError as e:
                out.append(Diagnostic('enumeration', str(e)))
            except WorkbenchError as e:
                out.append(Diagnostic('case', f"{e} (at {x}, on {field})"))
    return out


def validate(spec):
    """Diagnostics of a parsed document; empty iff it is acceptable"""
    try:
        check_spec(spec)
    except SpecError as e:
        return [Diagnostic('sort', str(e))]
    diagnostics = _class_diagnostics(spec) + _enumeration_diagnostics(spec)
    if not any(d.code == 'enumeration' for d in diagnostics):
        diagnostics += _sample_diagnostics(spec)
    unique = []
    seen = set()
    for d in diagnostics:
        key = d.message.split(' (at ')[0]
        if key not in seen:
            seen.add(key)
            unique.append(d)
    if unique:
        logger.info("%d diagnostics for %r", len(unique), spec.name)
    return unique
