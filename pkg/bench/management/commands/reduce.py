from django.core.management.base import BaseCommand, CommandError

from bench.handlers import load_specs, parse_field, points_for, usage_errors
from bench.renderers import render_table, render_value, render_verdict
from bench.states import ExitCode
from motivic.characters import enumerate_characters
from motivic.cyclotomic import compare_real
from motivic.evaluation import eval_expfun, polar_depth
from motivic.lang import as_expfun
from motivic.reduction import tilde_H, witness_psi1


class Command(BaseCommand):
    help = 'Таблица H̃, N′, N и характеров-свидетелей ψ₁'

    def add_arguments(self, parser):
        parser.add_argument('spec', help='файл спецификации')
        parser.add_argument('--field', required=True, help='kind,p,f,prec')
        parser.add_argument('--x', action='append', help='одна точка вместо сетки')
        parser.add_argument('--grid', help='окна сетки в синтаксисе блока domain')
        parser.add_argument('--depth', type=int, help='глубина семейства (по умолчанию полярная глубина)')

    def handle(self, *args, **options):
        """Редукция по точкам"""
        spec = as_expfun(load_specs([options['spec']])[0])
        field = parse_field(options['field'])
        points = points_for(spec, field, options['x'], options['grid'])
        if not points:
            raise CommandError("the grid has no points in X", returncode=ExitCode.USAGE)
        with usage_errors():
            depth = options['depth'] if options['depth'] is not None else polar_depth(spec, field, points)
            tilde = tilde_H(spec, field, points, depth)
            psis = enumerate_characters(field, depth)
            rows = []
            failures = 0
            for x, value, decomposition in zip(points, tilde.values, tilde.decompositions):
                witness = witness_psi1(spec, field, x, depth, tilde=value, n=tilde.n)
                upper = all(compare_real(eval_expfun(spec, field, psi, x).abs2(), value) <= 0 for psi in psis)
                failures += (not witness.holds) + (not upper)
                rows.append((str(x) or '-', decomposition.count, render_value(value), render_value(witness.abs2),
                             witness.psi.label(), render_verdict(witness.holds), render_verdict(upper)))

        self.stdout.write(self.style.SUCCESS(
            f"{spec.name or options['spec']} on {field}: depth {depth}, N′ = {tilde.n_prime}, N = {tilde.n}"))
        self.stdout.write(render_table(['x', 'entries', 'H̃', '|H_ψ₁|²', 'ψ₁', 'H̃/N <= |H_ψ₁|²', '|H_ψ|² <= H̃'],
                                       rows))
        if failures:
            raise CommandError(f"{failures} sandwich failures", returncode=ExitCode.VIOLATION)
