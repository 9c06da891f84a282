import csv

from django.core.management.base import BaseCommand

from bench.handlers import load_specs, parse_field, points_for, usage_errors
from bench.renderers import render_table, render_value
from motivic.characters import character_at, enumerate_characters, standard_psi
from motivic.evaluation import eval_expfun
from motivic.lang import ast


class Command(BaseCommand):
    help = 'Точные значения функции из файла спецификации в точке или на сетке'

    def add_arguments(self, parser):
        parser.add_argument('spec', help='файл спецификации')
        parser.add_argument('--field', required=True, help='kind,p,f,prec, например eq,7,1,8')
        parser.add_argument('--x', action='append', help='координаты точки: name=value или значения по порядку')
        parser.add_argument('--grid', help='окна сетки в синтаксисе блока domain')
        parser.add_argument('--depth', type=int, help='глубина семейства характеров')
        parser.add_argument('--index', type=int, help='один характер семейства')
        parser.add_argument('--csv', help='записать значения в CSV-файл')
        parser.add_argument('--no-validate', action='store_true', help='не запускать валидатор')

    def handle(self, *args, **options):
        """Вычисление значений"""
        spec = load_specs([options['spec']], check=not options['no_validate'])[0]
        field = parse_field(options['field'])
        points = points_for(spec, field, options['x'], options['grid'])
        rows = []
        with usage_errors():
            if isinstance(spec, ast.MotFunSpec):
                psis = [None]
            elif options['index'] is not None:
                psis = [character_at(field, options['depth'] or 0, options['index'])]
            elif options['depth'] is not None:
                psis = enumerate_characters(field, options['depth'])
            else:
                psis = [standard_psi(field)]
            for x in points:
                for psi in psis:
                    value = eval_expfun(spec, field, psi, x)
                    rows.append((str(x) or '-', psi.label() if psi else '-', value))

        self.stdout.write(self.style.SUCCESS(f"{spec.name or options['spec']} on {field}: {len(rows)} values"))
        self.stdout.write(render_table(['x', 'ψ', 'value'], [(x, psi, render_value(v)) for x, psi, v in rows]))

        if options['csv']:
            with open(options['csv'], 'w', newline='', encoding='utf-8') as fh:
                writer = csv.writer(fh, lineterminator='\n')
                writer.writerow(['x', 'psi', 'exact', 'real', 'imag'])
                for x, psi, v in rows:
                    z = v.to_complex()
                    writer.writerow([x, psi, str(v), repr(z.real), repr(z.imag)])
            self.stdout.write(self.style.SUCCESS(f"CSV: {options['csv']}"))
