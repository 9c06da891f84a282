"""Общие помощники команд: разбор полей, точек и спецификаций, перевод ошибок"""
import logging
from contextlib import contextmanager
from pathlib import Path

from django.core.management.base import CommandError

from bench.states import ExitCode
from motivic.evaluation import EvalDomain, Evaluator, complete_point, grid_points
from motivic.exceptions import DepthExceededError, SpecSyntaxError, WorkbenchError
from motivic.lang import ast, load_spec, parse_config, parse_domain, parse_term, validate
from motivic.localfield import make_field, parse_element

logger = logging.getLogger(__name__)


@contextmanager
def usage_errors():
    """WorkbenchError -> CommandError с кодом 2"""
    try:
        yield
    except DepthExceededError as e:
        raise CommandError(f"{e}; rerun with --depth {e.required_depth}", returncode=ExitCode.USAGE) from e
    except SpecSyntaxError as e:
        raise CommandError(str(e), returncode=ExitCode.USAGE) from e
    except WorkbenchError as e:
        raise CommandError(str(e), returncode=ExitCode.USAGE) from e
    except OSError as e:
        raise CommandError(f"{e.filename}: {e.strerror}", returncode=ExitCode.USAGE) from e


def parse_field(text):
    """`kind,p,f,prec`, например `eq,7,1,8` или `mixed,5,1,8`"""
    parts = [p.strip() for p in text.split(',')]
    if len(parts) != 4:
        raise CommandError(f"--field expects kind,p,f,prec, got {text!r}", returncode=ExitCode.USAGE)
    kind, p, f, prec = parts
    try:
        p, f, prec = int(p), int(f), int(prec)
    except ValueError:
        raise CommandError(f"--field expects integers for p, f and prec, got {text!r}", returncode=ExitCode.USAGE)
    with usage_errors():
        return make_field(kind, p, f, prec)


def load_specs(paths, check=True):
    """Разобрать файлы спецификаций; диагностики валидатора дают код 2"""
    specs = []
    for path in paths:
        try:
            spec = load_spec(path)
        except SpecSyntaxError as e:
            raise CommandError(f"{path}:{e}", returncode=ExitCode.USAGE) from e
        except (WorkbenchError, OSError) as e:
            raise CommandError(f"{path}: {e}", returncode=ExitCode.USAGE) from e
        if check:
            diagnostics = validate(spec)
            if diagnostics:
                lines = '\n'.join(f"  {d}" for d in diagnostics)
                raise CommandError(f"{path}: not acceptable\n{lines}", returncode=ExitCode.USAGE)
        specs.append(spec)
    return specs


def load_config(path):
    if not path:
        return {}
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise CommandError(f"{path}: {e.strerror}", returncode=ExitCode.USAGE) from e
    with usage_errors():
        return parse_config(text)


def parse_domain_flag(text):
    if not text:
        return None
    with usage_errors():
        return EvalDomain.from_decls(parse_domain(text))


def parse_coordinate(field, sort, text):
    if sort is ast.Sort.VF:
        try:
            return parse_element(field, text)
        except SpecSyntaxError:
            # plain terms such as `t`, `10` or `t^2 + 3`
            return Evaluator(field).vf(parse_term(text), {})
    if sort is ast.Sort.RF:
        return field.residue_field.parse(text)
    try:
        return int(text)
    except ValueError:
        raise CommandError(f"{text!r} is not an integer", returncode=ExitCode.USAGE)


def parse_assignments(spec, field, values):
    """Значения `name=value`; без имени значения идут по порядку объявления переменных"""
    sorts = ast.declared_sorts(spec)
    order = [d.name for d in spec.variables]
    mapping = {}
    position = 0
    for text in values or ():
        for item in text.split(';'):
            item = item.strip()
            if not item:
                continue
            if '=' in item:
                name, raw = (s.strip() for s in item.split('=', 1))
            else:
                while position < len(order) and order[position] in mapping:
                    position += 1
                if position >= len(order):
                    raise CommandError(f"too many values for {spec.name or 'the document'}", returncode=ExitCode.USAGE)
                name, raw = order[position], item
            if name not in sorts:
                raise CommandError(f"{name} is not a variable of {spec.name or 'the document'}", returncode=ExitCode.USAGE)
            with usage_errors():
                mapping[name] = parse_coordinate(field, sorts[name], raw)
    return mapping


def points_for(spec, field, values=None, grid=None):
    """Одна точка из --x или все точки сетки"""
    domain = parse_domain_flag(grid)
    with usage_errors():
        if values:
            return [complete_point(spec, field, parse_assignments(spec, field, values), domain)]
        if not spec.variables:
            return [complete_point(spec, field, {}, domain)]
        return grid_points(spec, field, domain)
