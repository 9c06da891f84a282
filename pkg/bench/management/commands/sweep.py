from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from bench.handlers import load_config, load_specs, usage_errors
from bench.renderers import render_table
from bench.states import ExitCode, OutputFormat
from motivic.models import SweepRun
from motivic.transfer import CSV_COLUMNS, STATEMENTS, SweepConfig, build_manifest, run_statement


class Command(BaseCommand):
    help = 'Прогон утверждения переноса по диапазону простых'

    def add_arguments(self, parser):
        parser.add_argument('statement', choices=STATEMENTS)
        parser.add_argument('specs', nargs='+', help='файлы спецификаций')
        parser.add_argument('--config', help='файл config { ... }; флаги важнее')
        parser.add_argument('--pmin', type=int)
        parser.add_argument('--pmax', type=int)
        parser.add_argument('--f', type=int)
        parser.add_argument('--precision', type=int)
        parser.add_argument('--depth', type=int)
        parser.add_argument('--seed', type=int)
        parser.add_argument('--samples', type=int)
        parser.add_argument('--grid', help='окна сетки в синтаксисе блока domain')
        parser.add_argument('--c', help='коэффициенты через запятую, например 1,-1')
        parser.add_argument('--direction', choices=['both', 'forward', 'backward'])
        parser.add_argument('--out', help='каталог отчётов')
        parser.add_argument('--format', choices=[f.value for f in OutputFormat])
        parser.add_argument('--no-record', action='store_true', help='не сохранять прогон в базе')

    def handle(self, *args, **options):
        """Запуск sweep"""
        values = load_config(options['config'])
        out = options['out'] or values.pop('out', None) or settings.WORKBENCH_REPORT_DIR
        fmt = options['format'] or values.pop('format', None) or OutputFormat.BOTH.value
        values.pop('out', None)
        values.pop('format', None)
        if fmt not in {f.value for f in OutputFormat}:
            raise CommandError(f"format must be json, csv or both, got {fmt!r}", returncode=ExitCode.USAGE)
        c = [v.strip() for v in options['c'].split(',')] if options['c'] else None
        flags = {key: options[key] for key in ('pmin', 'pmax', 'f', 'precision', 'depth', 'seed', 'samples',
                                                 'grid', 'direction')}
        with usage_errors():
            cfg = SweepConfig.from_config(values, c=c, **flags)
            specs = load_specs(options['specs'])
            manifest = build_manifest(f"sweep {options['statement']}", options['specs'], cfg)
            self.stdout.write(self.style.SUCCESS(
                f"sweep {options['statement']}: p in [{cfg.pmin}, {cfg.pmax}], seed {cfg.seed}"))
            report = run_statement(options['statement'], specs, cfg, manifest)

        stem = '-'.join([options['statement']] + [Path(p).stem for p in options['specs']])
        paths = report.write(out, stem, fmt)
        table = [row.csv_row() for row in report.rows]
        self.stdout.write(render_table(CSV_COLUMNS, table))
        for path in paths:
            self.stdout.write(self.style.SUCCESS(f"отчёт: {path}"))
        if report.summary.get('uniform_N') is not None:
            self.stdout.write(f"uniform N: {report.summary['uniform_N']}")

        code = ExitCode.VIOLATION if report.violated else ExitCode.OK
        if not options['no_record']:
            SweepRun.record(report, int(code))
        if report.violated:
            count = sum(len(row.violations) for row in report.rows)
            raise CommandError(f"{count} statement violations", returncode=ExitCode.VIOLATION)
        self.stdout.write(self.style.SUCCESS('нарушений нет'))
