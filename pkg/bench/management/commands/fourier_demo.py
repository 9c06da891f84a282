import random
from fractions import Fraction

from django.core.management.base import BaseCommand, CommandError

from bench.handlers import usage_errors
from bench.renderers import render_table
from bench.states import ExitCode
from motivic.fourier import (
    FiniteAbelianGroup, GroupFunction, check_norm_sandwich, find_peak_character, plancherel_check,
)


def random_function(group, rng):
    return GroupFunction.from_values(group, [Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                                             for _ in range(group.order)])


class Command(BaseCommand):
    help = 'Неравенства для преобразования Фурье на случайных функциях конечной абелевой группы'

    def add_arguments(self, parser):
        parser.add_argument('--factors', default='2,4', help='порядки циклических множителей, например 2,4 или 2,3')
        parser.add_argument('--count', type=int, default=20)
        parser.add_argument('--seed', type=int, default=0)

    def handle(self, *args, **options):
        """Демонстрация"""
        rng = random.Random(options['seed'])
        with usage_errors():
            try:
                factors = tuple(int(v) for v in options['factors'].split(','))
            except ValueError:
                raise CommandError(f"bad --factors {options['factors']!r}", returncode=ExitCode.USAGE)
            group = FiniteAbelianGroup(factors)
            rows = []
            failures = 0
            for i in range(options['count']):
                f = random_function(group, rng)
                sandwich = check_norm_sandwich(f)
                plancherel = plancherel_check(f)
                size = rng.randint(1, min(5, group.order))
                y = rng.sample(group.elements, size)
                c = [Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 5)) for _ in y]
                peak = find_peak_character(c, y, group)
                failures += (not sandwich.holds) + (not plancherel) + (not peak.holds)
                rows.append((i, f"{sandwich.sup_f:.6g}", f"{sandwich.sup_hat:.6g}", sandwich.holds, plancherel,
                             f"{peak.magnitude:.6g}", peak.holds))

        self.stdout.write(self.style.SUCCESS(f"group Z/{' x Z/'.join(map(str, factors))} of order {group.order}"))
        self.stdout.write(render_table(['#', 'sup|f|', 'sup|f̂|', 'sandwich', 'plancherel', 'peak', 'peak >= max|c|'],
                                       rows))
        if failures:
            raise CommandError(f"{failures} failed checks", returncode=ExitCode.VIOLATION)
        self.stdout.write(self.style.SUCCESS('все проверки выполнены'))
