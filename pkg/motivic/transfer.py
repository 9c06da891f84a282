"""
Transfer sweeps: evaluate bound, coefficient, dependence, rigidity and factorization
statements on paired fields F_q((t)) and Q_q for a range of primes.

Grids of the two fields are matched by the (ord, ac, RF, ZZ) profile of their points, so a
point of F and its partner in F′ share ord, ac, residue and integer data. Every verdict is
empirical, on the declared grid and character depth.
"""
import csv
import io
import json
import logging
import math
import random
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property
from pathlib import Path

from django.conf import settings
from sympy import primerange

import motivic
from motivic.characters import enumerate_characters, standard_psi
from motivic.cyclotomic import compare_real
from motivic.evaluation import EvalDomain, Evaluator, eval_expfun, grid_points, polar_depth
from motivic.exceptions import (
    CapacityError, DepthExceededError, NotInCeError, PrecisionError, SmallCharacteristicError, SpecError,
    WorkbenchError,
)
from motivic.lang import ast
from motivic.lang.parser import parse_domain, parse_term
from motivic.lang.transforms import as_expfun, linear_combination
from motivic.lindep import Dependent, Independent, dependence_test
from motivic.localfield import make_field
from motivic.reduction import tilde_H

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
STATEMENTS = ('bound', 'lincomb', 'coeff', 'dep', 'rigidity', 'factor')
CSV_COLUMNS = ('statement', 'p', 'field', 'depth', 'grid_size', 'hypothesis_ok', 'min_N', 'violations', 'flags')
CAVEAT = "empirical, on declared grid/depth"
DIRECTIONS = ('both', 'forward', 'backward')


def _fraction_vector(values):
    return tuple(Fraction(str(v)) if not isinstance(v, Fraction) else v for v in values)


@dataclass(frozen=True)
class SweepConfig:
    pmin: int = 5
    pmax: int = 23
    f: int = 1
    precision: int = 8
    depth: int = None
    grid: str = ''
    samples: int = None
    seed: int = 0
    c: tuple = ()
    c_grid: tuple = ()
    random_c: int = 0
    params: tuple = ()
    profile: tuple = ()
    direction: str = 'both'

    def __post_init__(self):
        if self.pmin < 3:
            raise WorkbenchError(f"pmin must be at least 3, got {self.pmin}")
        if self.pmax < self.pmin:
            raise WorkbenchError(f"empty prime range [{self.pmin}, {self.pmax}]")
        if self.direction not in DIRECTIONS:
            raise WorkbenchError(f"direction must be one of {', '.join(DIRECTIONS)}")
        if self.depth is not None and self.depth < 0:
            raise WorkbenchError("character depth must be nonnegative")
        if self.samples is not None and self.samples < 1:
            raise WorkbenchError("samples must be positive")

    @classmethod
    def from_config(cls, values=None, **flags):
        """Config-file values with command line flags (those not None) taking precedence"""
        merged = dict(values or {})
        merged.update({k: v for k, v in flags.items() if v is not None})
        unknown = set(merged) - set(cls.__dataclass_fields__)
        if unknown:
            raise WorkbenchError(f"unknown config keys: {', '.join(sorted(unknown))}")
        for key in ('pmin', 'pmax', 'f', 'precision', 'depth', 'samples', 'seed', 'random_c'):
            if merged.get(key) is not None:
                value = Fraction(merged[key])
                if value.denominator != 1:
                    raise WorkbenchError(f"{key} must be an integer, got {value}")
                merged[key] = int(value)
        if 'c' in merged:
            merged['c'] = _fraction_vector(merged['c'])
        if 'c_grid' in merged:
            merged['c_grid'] = tuple(_fraction_vector(c) for c in merged['c_grid'])
        for key in ('params', 'profile'):
            if key in merged:
                value = merged[key]
                merged[key] = (str(value),) if isinstance(value, str) else tuple(str(v) for v in value)
        for key in ('grid', 'direction'):
            if key in merged:
                merged[key] = str(merged[key])
        return cls(**merged)

    @cached_property
    def domain(self):
        return EvalDomain.from_decls(parse_domain(self.grid)) if self.grid else EvalDomain()

    @cached_property
    def profile_terms(self):
        return tuple(parse_term(text) for text in self.profile)

    def primes(self):
        return [int(p) for p in primerange(self.pmin, self.pmax + 1)]

    def fields(self, p):
        return make_field('eq', p, self.f, self.precision), make_field('mixed', p, self.f, self.precision)

    def directions(self, p):
        eq, mixed = self.fields(p)
        pairs = {'forward': [(eq, mixed)], 'backward': [(mixed, eq)], 'both': [(eq, mixed), (mixed, eq)]}
        return pairs[self.direction]

    def random_coefficients(self, ell):
        rng = random.Random(f'{self.seed}:c')
        return tuple(tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(ell))
                     for _ in range(self.random_c))

    def as_dict(self):
        return {
            'pmin': self.pmin, 'pmax': self.pmax, 'f': self.f, 'precision': self.precision,
            'depth': self.depth, 'grid': self.grid, 'samples': self.samples, 'seed': self.seed,
            'c': [str(v) for v in self.c], 'c_grid': [[str(v) for v in c] for c in self.c_grid],
            'random_c': self.random_c, 'params': list(self.params), 'profile': list(self.profile),
            'direction': self.direction,
        }


@dataclass
class PrimeRow:
    statement: str
    p: int
    field: str
    depth: int = None
    grid_size: int = 0
    hypothesis_ok: bool = None
    min_N: int = None
    violations: list = dc_field(default_factory=list)
    flags: set = dc_field(default_factory=set)
    details: dict = dc_field(default_factory=dict)

    def as_dict(self):
        return {
            'statement': self.statement, 'p': self.p, 'field': self.field, 'depth': self.depth,
            'grid_size': self.grid_size, 'hypothesis_ok': self.hypothesis_ok, 'min_N': self.min_N,
            'violations': list(self.violations), 'flags': sorted(self.flags), 'details': self.details,
        }

    def csv_row(self):
        def cell(v):
            if v is None:
                return ''
            if isinstance(v, bool):
                return 'true' if v else 'false'
            return str(v)
        return [self.statement, self.p, self.field, cell(self.depth), self.grid_size, cell(self.hypothesis_ok),
                cell(self.min_N), len(self.violations), ';'.join(sorted(self.flags))]


def build_manifest(command, inputs, cfg):
    return {
        'command': command,
        'inputs': [str(i) for i in inputs],
        'config': cfg.as_dict(),
        'version': motivic.__version__,
        'seed': cfg.seed,
        'timestamp': settings.WORKBENCH_TIMESTAMP,
    }


@dataclass
class TransferReport:
    statement: str
    manifest: dict
    rows: list
    summary: dict = dc_field(default_factory=dict)

    @property
    def violated(self):
        return any(row.violations for row in self.rows)

    def as_dict(self):
        return {
            'schema_version': SCHEMA_VERSION,
            'statement': self.statement,
            'caveat': CAVEAT,
            'manifest': self.manifest,
            'rows': [row.as_dict() for row in self.rows],
            'summary': self.summary,
        }

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2, sort_keys=True, ensure_ascii=False) + '\n'

    def to_csv(self):
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(CSV_COLUMNS)
        for row in self.rows:
            writer.writerow(row.csv_row())
        return buffer.getvalue()

    def write(self, out_dir, stem, fmt='both'):
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        paths = []
        if fmt in ('json', 'both'):
            path = out_dir / f'{stem}.json'
            path.write_text(self.to_json(), encoding='utf-8')
            paths.append(path)
        if fmt in ('csv', 'both'):
            path = out_dir / f'{stem}.csv'
            path.write_text(self.to_csv(), encoding='utf-8')
            paths.append(path)
        return paths


def stable_from(rows):
    """Per field column: the smallest prime from which the row verdicts no longer change"""
    out = {}
    by_field = {}
    for row in rows:
        verdict = (row.hypothesis_ok, bool(row.violations), row.min_N)
        by_field.setdefault(row.field, []).append((row.p, verdict))
    for name, seq in by_field.items():
        seq.sort(key=lambda item: item[0])
        start = seq[-1][0]
        for p, verdict in reversed(seq):
            if verdict != seq[-1][1]:
                break
            start = p
        out[name] = start
    return out


def _require_ce(spec, role):
    if not as_expfun(spec).is_ce:
        raise NotInCeError(f"{role} must be in 𝒞ᵉ")


def _require_shared_ambient(specs):
    base = as_expfun(specs[0])
    for spec in specs[1:]:
        spec = as_expfun(spec)
        if spec.variables != base.variables or spec.ambient != base.ambient:
            raise SpecError(f"{spec.name or 'a spec'} does not share the ambient set of {base.name or 'the first spec'}")


def matched_grid(spec, F, F2, cfg):
    """Pairs (x, x′) of grid points of F and F′ with equal (ord, ac, RF, ZZ) profiles, sampled
    with the run seed. Points sharing a profile are paired in enumeration order."""
    partners = {}
    for x in grid_points(spec, F2, cfg.domain):
        partners.setdefault(profile_of(x, F2, spec), deque()).append(x)
    pairs = []
    for x in grid_points(spec, F, cfg.domain):
        bucket = partners.get(profile_of(x, F, spec))
        if bucket:
            pairs.append((x, bucket.popleft()))
    if cfg.samples and len(pairs) > cfg.samples:
        rng = random.Random(f'{cfg.seed}:{F.p}')
        pairs = [pairs[i] for i in sorted(rng.sample(range(len(pairs)), cfg.samples))]
    return pairs


def _initial_depth(specs, F, points, cfg):
    if cfg.depth is not None:
        return cfg.depth
    return max(polar_depth(as_expfun(H), F, points) for H in specs)


def _with_depth(compute, depth, row):
    """Run compute(depth), raising the depth up to WORKBENCH_MAX_DEPTH when a character is too shallow"""
    while True:
        try:
            return compute(depth), depth
        except DepthExceededError as e:
            cap = settings.WORKBENCH_MAX_DEPTH
            if e.required_depth <= depth or e.required_depth > cap:
                row.flags.add('depth-capped')
                raise
            logger.warning("p = %d: raising character depth from %d to %d", row.p, depth, e.required_depth)
            row.flags.add('depth-raised')
            depth = e.required_depth


def _smallest_n(h2, g2):
    """The least positive integer N with |h|² <= N²·|g|², for g ≠ 0"""
    ratio = abs(h2.to_complex()) / abs(g2.to_complex())
    n = max(1, math.ceil(math.sqrt(ratio)))
    while compare_real(h2, g2 * (n * n)) > 0:
        n += 1
    while n > 1 and compare_real(h2, g2 * ((n - 1) * (n - 1))) <= 0:
        n -= 1
    return n


def _bound_hypothesis(H, G, F, points, depth):
    psis = enumerate_characters(F, depth)
    psi0 = standard_psi(F)
    for x in points:
        g2 = eval_expfun(G, F, psi0, x).abs2()
        for psi in psis:
            if compare_real(eval_expfun(H, F, psi, x).abs2(), g2) > 0:
                return False, f"|H| > |G| at {x} for ψ[{psi.label()}]"
    return True, None


def _bound_conclusion(H, G, F, points, depth):
    psis = enumerate_characters(F, depth)
    psi0 = standard_psi(F)
    min_n, max_ratio, violations = 1, 0.0, []
    for x in points:
        g = eval_expfun(G, F, psi0, x)
        g2 = g.abs2()
        for psi in psis:
            h2 = eval_expfun(H, F, psi, x).abs2()
            if g.is_zero():
                if not h2.is_zero():
                    violations.append(f"G = 0 but H ≠ 0 at {x} for ψ[{psi.label()}]")
                continue
            if h2.is_zero():
                continue
            max_ratio = max(max_ratio, math.sqrt(abs(h2.to_complex()) / abs(g2.to_complex())))
            min_n = max(min_n, _smallest_n(h2, g2))
    return min_n, max_ratio, violations


def _bound_rows(H, G, cfg, statement, p, extra=None):
    rows = []
    is_ce = as_expfun(H).is_ce
    for F, F2 in cfg.directions(p):
        row = PrimeRow(statement, p, f'{F.kind.value}->{F2.kind.value}', details=dict(extra or {}))
        try:
            pairs = matched_grid(H, F, F2, cfg)
            row.grid_size = len(pairs)
            xs, xs2 = [a for a, _ in pairs], [b for _, b in pairs]
            depth = max(_initial_depth([H], F, xs, cfg), _initial_depth([H], F2, xs2, cfg))
            (ok, failure), depth = _with_depth(lambda d: _bound_hypothesis(H, G, F, xs, d), depth, row)
            (min_n, max_ratio, violations), depth = _with_depth(
                lambda d: _bound_conclusion(H, G, F2, xs2, d), depth, row)
        except (CapacityError, DepthExceededError, PrecisionError) as e:
            row.flags.add('capacity' if isinstance(e, CapacityError) else 'skipped')
            row.details['error'] = str(e)
            logger.warning("p = %d %s: %s", p, row.field, e)
            rows.append(row)
            continue
        row.depth = depth
        row.hypothesis_ok = ok
        row.min_N = min_n
        row.details['max_ratio'] = round(max_ratio, 12)
        if failure:
            row.details['hypothesis_failure'] = failure
            row.flags.add('hypothesis-fails')
        elif violations:
            row.violations.extend(violations)
        elif is_ce and min_n > 1:
            row.violations.append(f"H is in 𝒞ᵉ but N = {min_n} is needed in {F2}")
        if not is_ce and xs2:
            try:
                bound = tilde_H(H, F2, xs2, depth).n
                row.details['reduction_N'] = bound
                if min_n > bound:
                    row.flags.add('above-reduction-N')
            except (SmallCharacteristicError, DepthExceededError, PrecisionError) as e:
                row.flags.add('small-characteristic' if isinstance(e, SmallCharacteristicError) else 'skipped')
                row.details['reduction_error'] = str(e)
        rows.append(row)
    return rows


def _sweep(cfg, unit):
    """Run unit(p) for every prime of the range; rows come back in prime order"""
    primes = cfg.primes()
    if not primes:
        raise WorkbenchError(f"no primes in [{cfg.pmin}, {cfg.pmax}]")
    with ThreadPoolExecutor(max_workers=max(1, settings.WORKBENCH_SWEEP_WORKERS)) as pool:
        results = list(pool.map(unit, primes))
    rows = []
    for p, chunk in zip(primes, results):
        logger.info("p = %d: %d rows", p, len(chunk))
        rows.extend(chunk)
    return rows


def _report(statement, rows, manifest, **summary):
    summary['stable_from'] = stable_from(rows)
    return TransferReport(statement, manifest, rows, summary)


def check_bound_transfer(H, G, cfg, manifest=None):
    """|H| <= |G| on F for the whole family ⇒ |H| <= N·|G| on F′, with the least such N measured"""
    _require_ce(G, 'G')
    _require_shared_ambient([H, G])
    H, G = as_expfun(H), as_expfun(G)
    rows = _sweep(cfg, lambda p: _bound_rows(H, G, cfg, 'bound', p))
    return _report('bound', rows, manifest or {}, ce=H.is_ce)


def check_bound_transfer_lincomb(Hs, G, cfg, manifest=None):
    """check_bound_transfer for Σ c_i H_i over the c-grid, with the uniform N over all c"""
    _require_ce(G, 'G')
    _require_shared_ambient(list(Hs) + [G])
    G = as_expfun(G)
    cs = list(cfg.c_grid) + list(cfg.random_coefficients(len(Hs)))
    if not cs:
        raise WorkbenchError("lincomb needs c_grid or random_c")
    for c in cs:
        if len(c) != len(Hs):
            raise WorkbenchError(f"coefficient vector {[str(v) for v in c]} does not match {len(Hs)} functions")
    combos = [(c, linear_combination(Hs, c, name='lincomb')) for c in cs]

    def unit(p):
        rows = []
        for c, H in combos:
            rows.extend(_bound_rows(H, G, cfg, 'lincomb', p, {'c': [str(v) for v in c]}))
        return rows

    rows = _sweep(cfg, unit)
    ns = [row.min_N for row in rows if row.min_N is not None]
    return _report('lincomb', rows, manifest or {}, uniform_N=max(ns) if ns else None, c_count=len(cs))


def _first_nonvanishing(H, F, points, depth):
    for x in points:
        for psi in enumerate_characters(F, depth):
            if not eval_expfun(H, F, psi, x).is_zero():
                return f"{x} for ψ[{psi.label()}]"
    return None


def check_coeff_transfer(Hs, c, cfg, manifest=None):
    """Exact vanishing of Σ c_i H_i on grid × family, in F and in F′"""
    if len(c) != len(Hs):
        raise WorkbenchError(f"{len(c)} coefficients for {len(Hs)} functions")
    _require_shared_ambient(list(Hs))
    combo = linear_combination(Hs, c, name='coeff')

    def unit(p):
        rows = []
        for F, F2 in cfg.directions(p):
            row = PrimeRow('coeff', p, f'{F.kind.value}->{F2.kind.value}', details={'c': [str(v) for v in c]})
            try:
                pairs = matched_grid(combo, F, F2, cfg)
                row.grid_size = len(pairs)
                xs, xs2 = [a for a, _ in pairs], [b for _, b in pairs]
                depth = max(_initial_depth(Hs, F, xs, cfg), _initial_depth(Hs, F2, xs2, cfg))
                witness, depth = _with_depth(lambda d: _first_nonvanishing(combo, F, xs, d), depth, row)
                witness2, depth = _with_depth(lambda d: _first_nonvanishing(combo, F2, xs2, d), depth, row)
            except (CapacityError, DepthExceededError, PrecisionError) as e:
                row.flags.add('capacity' if isinstance(e, CapacityError) else 'skipped')
                row.details['error'] = str(e)
                rows.append(row)
                continue
            row.depth = depth
            row.hypothesis_ok = witness is None
            row.details['vanishes_partner'] = witness2 is None
            if witness:
                row.details['counterexample'] = witness
            if witness2:
                row.details['partner_counterexample'] = witness2
                if witness is None:
                    row.violations.append(f"vanishes in {F} but not in {F2}: {witness2}")
            rows.append(row)
        return rows

    return _report('coeff', _sweep(cfg, unit), manifest or {})


def _param_key(x, params):
    return tuple(item for item in x.key if item[0] in params)


def _verdict_name(verdict):
    if isinstance(verdict, Dependent):
        return 'dependent'
    if isinstance(verdict, Independent):
        return 'independent'
    return 'inconclusive'


def _dependence_verdicts(Hs, F, points, params, depth):
    groups = {}
    for x in points:
        groups.setdefault(_param_key(x, params), []).append(x)
    out = {}
    for key, xs in groups.items():
        if len(xs) < len(Hs):
            continue
        for psi in enumerate_characters(F, depth):
            values = [[eval_expfun(H, F, psi, x) for x in xs] for H in Hs]
            out[(key, psi.index)] = _verdict_name(dependence_test(values))
    return out


def check_dependence_transfer(Hs, cfg, manifest=None):
    """Dependence verdicts of the H_i(·, y) on the sample, in F and F′, per parameter y and ψ"""
    if len(Hs) < 1:
        raise WorkbenchError("dep needs at least one spec")
    _require_shared_ambient(list(Hs))
    Hs = [as_expfun(H) for H in Hs]

    def unit(p):
        eq, mixed = cfg.fields(p)
        row = PrimeRow('dep', p, 'eq~mixed')
        try:
            pairs = matched_grid(Hs[0], eq, mixed, cfg)
            row.grid_size = len(pairs)
            xs, xs2 = [a for a, _ in pairs], [b for _, b in pairs]
            depth = max(_initial_depth(Hs, eq, xs, cfg), _initial_depth(Hs, mixed, xs2, cfg))
            verdicts, depth = _with_depth(lambda d: _dependence_verdicts(Hs, eq, xs, cfg.params, d), depth, row)
            verdicts2, depth = _with_depth(
                lambda d: _dependence_verdicts(Hs, mixed, xs2, cfg.params, d), depth, row)
        except (CapacityError, DepthExceededError, PrecisionError) as e:
            row.flags.add('capacity' if isinstance(e, CapacityError) else 'skipped')
            row.details['error'] = str(e)
            return [row]
        row.depth = depth
        if not verdicts:
            row.flags.add('small-sample')
        disagreements = [f"y={dict(key[0]) or '-'} ψ[{key[1]}]: {verdicts[key]} in {eq}, {verdicts2.get(key)} in {mixed}"
                         for key in verdicts if verdicts[key] != verdicts2.get(key)]
        row.hypothesis_ok = not disagreements
        row.violations.extend(disagreements)
        counts = {}
        for v in verdicts.values():
            counts[v] = counts.get(v, 0) + 1
        row.details['verdicts'] = counts
        if disagreements:
            row.flags.add('disagreement')
        return [row]

    return _report('dep', _sweep(cfg, unit), manifest or {})


def check_rf_zz_rigidity(H, cfg, manifest=None):
    """Exact equality of the values of a residue/integer-only 𝒞ᵉ function across the pair"""
    H = as_expfun(H)
    _require_ce(H, 'H')
    if any(d.sort is ast.Sort.VF for d in H.variables):
        raise WorkbenchError("rigidity needs a spec without VF variables")

    def unit(p):
        eq, mixed = cfg.fields(p)
        row = PrimeRow('rigidity', p, 'eq~mixed', depth=0)
        try:
            pairs = matched_grid(H, eq, mixed, cfg)
            row.grid_size = len(pairs)
            for x, x2 in pairs:
                a = eval_expfun(H, eq, standard_psi(eq), x)
                b = eval_expfun(H, mixed, standard_psi(mixed), x2)
                if a != b:
                    row.violations.append(f"{a} in {eq} but {b} in {mixed} at {x}")
        except CapacityError as e:
            row.flags.add('capacity')
            row.details['error'] = str(e)
            return [row]
        row.hypothesis_ok = not row.violations
        return [row]

    return _report('rigidity', _sweep(cfg, unit), manifest or {})


def profile_of(x, F, spec, terms=()):
    """(ord, ac) of the VF coordinates and of the profile terms, with the RF and ZZ coordinates"""
    ev = Evaluator(F)
    env = x.env()

    def valued(v):
        if v.is_zero():
            return ('zero',)
        return (v.valuation, v.digits[0].index)

    parts = []
    for decl in spec.variables:
        if decl.name not in env:
            continue
        value = env[decl.name]
        if decl.sort is ast.Sort.VF:
            parts.append(valued(value))
        elif decl.sort is ast.Sort.RF:
            parts.append(value.index)
        else:
            parts.append(value)
    for term in terms:
        parts.append(valued(ev.vf(term, env)))
    return tuple(parts)


def check_factorization(H, cfg, manifest=None):
    """Values of a 𝒞ᵉ function must agree on grid points with equal profiles"""
    H = as_expfun(H)
    _require_ce(H, 'H')
    terms = cfg.profile_terms

    def unit(p):
        rows = []
        for F in cfg.fields(p):
            row = PrimeRow('factor', p, F.kind.value, depth=0)
            try:
                points = grid_points(H, F, cfg.domain)
                row.grid_size = len(points)
                seen = {}
                collisions = []
                psi = standard_psi(F)
                for x in points:
                    value = eval_expfun(H, F, psi, x)
                    key = profile_of(x, F, H, terms)
                    if key in seen and seen[key][1] != value:
                        collisions.append(f"{seen[key][0]} and {x}: {seen[key][1]} vs {value}")
                    seen.setdefault(key, (x, value))
            except CapacityError as e:
                row.flags.add('capacity')
                row.details['error'] = str(e)
                rows.append(row)
                continue
            row.hypothesis_ok = not collisions
            row.details['profiles'] = len(seen)
            if collisions:
                row.flags.add('profile-too-coarse')
                row.details['collisions'] = collisions[:10]
            rows.append(row)
        return rows

    return _report('factor', _sweep(cfg, unit), manifest or {}, profile=list(cfg.profile))


def run_statement(statement, specs, cfg, manifest=None):
    """Dispatch a sweep statement on its spec arguments"""
    count = len(specs)
    if statement == 'bound':
        if count != 2:
            raise WorkbenchError("bound needs H and G")
        return check_bound_transfer(specs[0], specs[1], cfg, manifest)
    if statement == 'lincomb':
        if count < 2:
            raise WorkbenchError("lincomb needs H_1..H_ℓ and G")
        return check_bound_transfer_lincomb(specs[:-1], specs[-1], cfg, manifest)
    if statement == 'coeff':
        if not cfg.c:
            raise WorkbenchError("coeff needs a coefficient vector c")
        return check_coeff_transfer(specs, cfg.c, cfg, manifest)
    if statement == 'dep':
        return check_dependence_transfer(specs, cfg, manifest)
    if statement in ('rigidity', 'factor'):
        if count != 1:
            raise WorkbenchError(f"{statement} needs exactly one spec")
        check = check_rf_zz_rigidity if statement == 'rigidity' else check_factorization
        return check(specs[0], cfg, manifest)
    raise WorkbenchError(f"unknown statement {statement!r}; expected one of {', '.join(STATEMENTS)}")
