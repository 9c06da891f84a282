"""
Parser of spec documents (see docs/spec-grammar.md for the normative grammar).
"""
import logging
from fractions import Fraction

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, VisitError

from motivic.exceptions import SpecError, SpecSyntaxError
from motivic.lang import ast
from motivic.lang.sorts import RESERVED, check_spec

logger = logging.getLogger(__name__)

GRAMMAR = r'''
start: header? _item*
term_entry: term

header: "spec" NAME (":" CLASS)?
CLASS: "Cexp" | "Ce" | "C"

_item: vars_block | set_block | term_block | summand_block | domain_block | config_block

vars_block: "vars" "{" var_decl* "}"
var_decl: NAME ":" SORT
SORT: "VF" | "RF" | "ZZ"

set_block: "set" "X" ":" formula

term_block: "term" "{" _term_item* "}"
_term_item: coef_item | count_item | alpha_item | beta_item | geom_item
coef_item: "coef" ":" rational
count_item: "count" varlist ":" formula
alpha_item: "alpha" ":" term
beta_item: "beta" ":" term
geom_item: "geom" ":" signed ("," signed)*

summand_block: "summand" "{" _summand_item* "}"
_summand_item: weight_item | y_item | g_item | g_cases | e_item
weight_item: "H" "{" term_block* "}"
y_item: "Y" varlist ":" formula
g_item: "g" ":" term
g_cases: "g" "{" case_branch+ "}"
e_item: "e" ":" term
varlist: "[" [NAME ("," NAME)*] "]"

domain_block: "domain" "{" _domain_entry* "}"
_domain_entry: vf_window | zz_window | solved
vf_window: NAME ":" "VF" "[" signed "," signed "]" digits? ZERO_FLAG?
digits: "digits" INT
ZERO_FLAG: "zero"
zz_window: NAME ":" "ZZ" "[" signed "," signed "]"
solved: NAME ":=" term "/" term

config_block: "config" "{" config_entry* "}"
config_entry: NAME ":" value
?value: rational
      | ESCAPED_STRING -> string
      | NAME -> word
      | "[" [value ("," value)*] "]" -> list

rational: signed ("/" INT)?
signed: SIGNED_INT

?formula: quant | disj
quant: QUANT NAME "in" _qdomain ":" formula
QUANT: "exists" | "forall"
_qdomain: SORT | window
window: "[" signed "," signed "]"
?disj: conj ("or" conj)*
?conj: neg ("and" neg)*
?neg: "not" neg -> not_
    | fatom
?fatom: "true" -> true
      | "false" -> false
      | "(" formula ")"
      | compare
      | congruence
compare: term CMP term
CMP: "<=" | ">=" | "!=" | "<" | ">" | "="
congruence: term "==" term "mod" INT

?term: sum
?sum: product (ADDOP product)*
ADDOP: "+" | "-"
?product: unary ("*" unary)*
?unary: "-" unary -> neg_term
      | power
?power: atom ("^" SIGNED_INT)?
?atom: INT -> const
     | NAME -> var
     | "ord" "(" term ")" -> ord_
     | "ac" "(" term ")" -> ac_
     | "(" term ")"
     | "cases" "{" case_branch+ "}" -> cases
case_branch: "when" formula "=>" term

NAME: /[A-Za-z_][A-Za-z0-9_]*/
COMMENT: /#[^\n]*/

%import common.INT
%import common.SIGNED_INT
%import common.ESCAPED_STRING
%import common.WS
%ignore WS
%ignore COMMENT
'''

_parser = Lark(GRAMMAR, parser='earley', propagate_positions=True, start=['start', 'term_entry'])


class _DocumentBuilder(Transformer):

    # terms

    def const(self, children):
        return ast.Const(int(children[0]))

    def var(self, children):
        name = str(children[0])
        if name == 't':
            return ast.Uniformizer()
        return ast.Var(name)

    def neg_term(self, children):
        return ast.Neg(children[0])

    def power(self, children):
        base, exponent = children
        if int(exponent) < 0:
            raise SpecSyntaxError(f"terms are polynomial: negative exponent {exponent}; "
                                  "use an auxiliary variable with a guard such as x*w = 1",
                                  exponent.line, exponent.column)
        return ast.Pow(base, int(exponent))

    def product(self, children):
        return ast.Mul(tuple(children))

    def sum(self, children):
        terms = [children[0]]
        for op, child in zip(children[1::2], children[2::2]):
            terms.append(child if op == '+' else ast.Neg(child))
        return ast.Add(tuple(terms))

    def ord_(self, children):
        return ast.Ord(children[0])

    def ac_(self, children):
        return ast.Ac(children[0])

    def case_branch(self, children):
        return ast.Case(children[0], children[1])

    def cases(self, children):
        return ast.Cases(tuple(children))

    # formulas

    def true(self, children):
        return ast.TRUE

    def false(self, children):
        return ast.FALSE

    def not_(self, children):
        return ast.Not(children[0])

    def conj(self, children):
        return ast.And(tuple(children))

    def disj(self, children):
        return ast.Or(tuple(children))

    def compare(self, children):
        left, op, right = children
        return ast.Compare(str(op), left, right)

    def congruence(self, children):
        left, right, modulus = children
        return ast.Congruence(left, right, int(modulus))

    def window(self, children):
        return tuple(children)

    def quant(self, children):
        kind, name, domain, body = children
        if isinstance(domain, tuple):
            return ast.Quantifier(str(kind), str(name), ast.Sort.ZZ, body, domain)
        return ast.Quantifier(str(kind), str(name), ast.Sort(str(domain)), body)

    # values

    def signed(self, children):
        return int(children[0])

    def rational(self, children):
        if len(children) == 1:
            return Fraction(children[0])
        if int(children[1]) == 0:
            raise SpecError("zero denominator")
        return Fraction(children[0], int(children[1]))

    def string(self, children):
        return str(children[0])[1:-1]

    def word(self, children):
        return str(children[0])

    def list(self, children):
        return [c for c in children if c is not None]

    def varlist(self, children):
        return tuple(str(c) for c in children if c is not None)

    # blocks

    def header(self, children):
        declared = ast.SpecClass(str(children[1])) if len(children) > 1 else None
        return ('header', str(children[0]), declared)

    def var_decl(self, children):
        name = str(children[0])
        if name in RESERVED:
            raise SpecSyntaxError(f"{name} is a reserved word", children[0].line, children[0].column)
        return ast.VarDecl(name, ast.Sort(str(children[1])))

    def vars_block(self, children):
        return ('vars', tuple(children))

    def set_block(self, children):
        return ('set', children[0])

    def coef_item(self, children):
        return ('coef', children[0])

    def count_item(self, children):
        return ('count', children)

    def alpha_item(self, children):
        return ('alpha', children[0])

    def beta_item(self, children):
        return ('beta', children[0])

    def geom_item(self, children):
        if any(a == 0 for a in children):
            raise SpecError("zero geometric exponent")
        return ('geom', tuple(children))

    def term_block(self, children):
        fields = {}
        betas = []
        for key, value in children:
            if key == 'beta':
                betas.append(value)
                continue
            if key in fields:
                raise SpecError(f"duplicate '{key}' in a term block")
            fields[key] = value
        count_vars, count = fields.pop('count', ((), ast.TRUE))
        return ast.MotTerm(
            coef=fields.get('coef', Fraction(1)),
            count_vars=count_vars,
            count=count,
            alpha=fields.get('alpha', ast.ZERO),
            betas=tuple(betas),
            geoms=fields.get('geom', ()),
        )

    def weight_item(self, children):
        return ('H', tuple(children))

    def y_item(self, children):
        return ('Y', children)

    def g_item(self, children):
        return ('g', (ast.Case(None, children[0]),))

    def g_cases(self, children):
        return ('g', tuple(children))

    def e_item(self, children):
        return ('e', children[0])

    def summand_block(self, children):
        fields = {}
        for key, value in children:
            if key in fields:
                raise SpecError(f"duplicate '{key}' in a summand block")
            fields[key] = value
        y_vars, y_formula = fields.get('Y', ((), ast.TRUE))
        return ast.Summand(
            weight=fields.get('H', (ast.MotTerm(),)),
            y_vars=y_vars,
            Y=y_formula,
            g=fields.get('g', (ast.Case(None, ast.ZERO),)),
            e=fields.get('e', ast.ZERO),
        )

    def digits(self, children):
        return int(children[0])

    def vf_window(self, children):
        name, vmin, vmax = str(children[0]), children[1], children[2]
        digits = 1
        zero = False
        for extra in children[3:]:
            if isinstance(extra, int):
                digits = extra
            else:
                zero = True
        return ast.VFWindowDecl(name, vmin, vmax, digits, zero)

    def zz_window(self, children):
        return ast.ZZWindowDecl(str(children[0]), children[1], children[2])

    def solved(self, children):
        return ast.SolvedDecl(str(children[0]), children[1], children[2])

    def domain_block(self, children):
        return ('domain', tuple(children))

    def config_entry(self, children):
        return (str(children[0]), children[1])

    def config_block(self, children):
        return ast.ConfigDoc(dict(children))

    def term_entry(self, children):
        return children[0]

    def start(self, children):
        name, declared = '', None
        variables, ambient, domain = [], None, []
        terms, summands, configs = [], [], []
        for item in children:
            if isinstance(item, ast.MotTerm):
                terms.append(item)
            elif isinstance(item, ast.Summand):
                summands.append(item)
            elif isinstance(item, ast.ConfigDoc):
                configs.append(item)
            elif item[0] == 'header':
                _, name, declared = item
            elif item[0] == 'vars':
                variables.extend(item[1])
            elif item[0] == 'set':
                if ambient is not None:
                    raise SpecError("duplicate 'set X'")
                ambient = item[1]
            elif item[0] == 'domain':
                domain.extend(item[1])
        if configs:
            if terms or summands or variables:
                raise SpecError("a config document holds only config blocks")
            values = {}
            for config in configs:
                values.update(config.values)
            return ast.ConfigDoc(values)
        if terms and summands:
            raise SpecError("a document has either term blocks or summand blocks, not both")
        common = dict(name=name, variables=tuple(variables), ambient=ambient or ast.TRUE,
                      domain=tuple(domain), declared=declared)
        if summands:
            return ast.ExpFunSpec(summands=tuple(summands), **common)
        return ast.MotFunSpec(terms=tuple(terms), **common)


_HINTS = {
    '/': "division is not part of the term language; use an auxiliary variable with a guard such as x*w = 1",
}


def _parse(text, start='start'):
    try:
        tree = _parser.parse(text, start=start)
    except UnexpectedInput as e:
        line = getattr(e, 'line', None)
        column = getattr(e, 'column', None)
        if isinstance(e, UnexpectedEOF):
            raise SpecSyntaxError("unexpected end of document", line, column) from None
        found = getattr(e, 'char', None) if isinstance(e, UnexpectedCharacters) else getattr(e, 'token', None)
        found = str(found) if found is not None else ''
        message = f"unexpected {found!r}" if found else "syntax error"
        if found in _HINTS:
            message += f": {_HINTS[found]}"
        raise SpecSyntaxError(message, line, column) from None
    try:
        return _DocumentBuilder().transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, SpecError):
            raise e.orig_exc from None
        raise


def parse_spec(text):
    """Parse and sort-check a spec document into an ExpFunSpec or a MotFunSpec"""
    doc = _parse(text)
    if isinstance(doc, ast.ConfigDoc):
        raise SpecError("expected a spec document, found a config document")
    check_spec(doc)
    logger.debug("parsed spec %r (%s)", doc.name, doc.spec_class.value)
    return doc


def parse_config(text):
    """Parse a `config { key : value }` document into a dict"""
    doc = _parse(text)
    if not isinstance(doc, ast.ConfigDoc):
        raise SpecError("expected a config document")
    return doc.values


def parse_term(text):
    """Parse a single term such as `x^2 + t`"""
    return _parse(text, start='term_entry')


def parse_domain(text):
    """Window declarations in the syntax of a domain block body"""
    doc = _parse(f"domain {{ {text} }}")
    return doc.domain


def load_spec(path):
    with open(path, encoding='utf-8') as fh:
        return parse_spec(fh.read())
