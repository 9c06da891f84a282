from django.core.management.base import BaseCommand, CommandError

from bench.handlers import load_specs, parse_assignments, parse_field, points_for, usage_errors
from bench.renderers import render_table, render_value
from bench.states import ExitCode
from motivic.characters import character_at
from motivic.evaluation import eval_expfun
from motivic.lindep import Dependent, cramer_coeffs, dependence_test, find_witness_w, held_out_residual


class Command(BaseCommand):
    help = 'Линейная зависимость на выборке и восстановление коэффициентов по Крамеру'

    def add_arguments(self, parser):
        parser.add_argument('specs', nargs='+', help='файлы спецификаций H_1..H_ℓ')
        parser.add_argument('--field', required=True, help='kind,p,f,prec')
        parser.add_argument('--grid', help='окна сетки в синтаксисе блока domain')
        parser.add_argument('--depth', type=int, default=0)
        parser.add_argument('--index', type=int, default=0, help='характер семейства')
        parser.add_argument('--y', action='append', help='фиксированные параметры name=value')
        parser.add_argument('--target', help='файл спецификации G для восстановления G = Σ c_i H_i')

    def handle(self, *args, **options):
        """Проверка зависимости"""
        specs = load_specs(options['specs'])
        field = parse_field(options['field'])
        with usage_errors():
            psi = character_at(field, options['depth'], options['index'])
            fixed = parse_assignments(specs[0], field, options['y'])
            points = [x for x in points_for(specs[0], field, grid=options['grid'])
                      if all(x.env()[name] == value for name, value in fixed.items())]
            if len(points) < len(specs):
                raise CommandError(f"{len(points)} sample points for {len(specs)} functions",
                                   returncode=ExitCode.USAGE)
            values = [[eval_expfun(H, field, psi, x) for x in points] for H in specs]
            verdict = dependence_test(values)

        self.stdout.write(self.style.SUCCESS(f"{len(specs)} functions on {len(points)} points of {field}"))
        self.stdout.write(f"{verdict} (on sample)")
        if options['target'] is None:
            return

        G = load_specs([options['target']])[0]
        with usage_errors():
            w = find_witness_w(specs, field, psi, None, points)
            if not w:
                self.stdout.write(self.style.WARNING("no tuple with D ≠ 0: the H_i are dependent on the sample"))
                return
            result = cramer_coeffs(specs, G, field, psi, None, w)
            held_out = [x for x in points if x not in w]
            residuals = held_out_residual(specs, G, field, psi, None, result.c, held_out)

        self.stdout.write(render_table(['i', 'C_i', 'c_i'],
                                       [(i + 1, render_value(C), render_value(c))
                                        for i, (C, c) in enumerate(zip(result.C, result.c))]))
        self.stdout.write(f"D = {render_value(result.D)} at {', '.join(str(x) for x in w)}")
        if residuals:
            self.stdout.write(self.style.WARNING(
                f"not a combination: residual {render_value(residuals[0][1])} at {residuals[0][0]}"))
            raise CommandError("G is not a combination of the H_i on the sample", returncode=ExitCode.VIOLATION)
        if isinstance(verdict, Dependent):
            self.stdout.write(self.style.WARNING("coefficients are not unique: the H_i are dependent"))
        self.stdout.write(self.style.SUCCESS('G = Σ c_i H_i on the whole sample'))
