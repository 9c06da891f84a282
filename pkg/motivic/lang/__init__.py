from motivic.lang.ast import ExpFunSpec, MotFunSpec, Sort, SpecClass
from motivic.lang.parser import load_spec, parse_config, parse_domain, parse_spec, parse_term
from motivic.lang.printer import print_spec
from motivic.lang.transforms import as_expfun, conj_square, linear_combination
from motivic.lang.validate import validate

__all__ = [
    'ExpFunSpec', 'MotFunSpec', 'Sort', 'SpecClass',
    'load_spec', 'parse_config', 'parse_domain', 'parse_spec', 'parse_term', 'print_spec',
    'as_expfun', 'conj_square', 'linear_combination', 'validate',
]
