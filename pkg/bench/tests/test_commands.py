import csv
import json
import tempfile
from io import StringIO
from pathlib import Path
from unittest import mock

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, TestCase

from bench.states import ExitCode
from motivic.models import SweepRun
from motivic.tests.utils import SPEC_DIR
from motivic.transfer import PrimeRow, TransferReport


def spec(name):
    return str(SPEC_DIR / f'{name}.spec')


class CommandTestMixin:

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def call(self, *args):
        out = StringIO()
        call_command(*args, stdout=out, stderr=StringIO())
        return out.getvalue()

    def assertExitCode(self, code, *args):
        with self.assertRaises(CommandError) as ctx:
            self.call(*args)
        self.assertEqual(ctx.exception.returncode, code)
        return ctx.exception

    def write_spec(self, name, text):
        path = self.dir / f'{name}.spec'
        path.write_text(text, encoding='utf-8')
        return str(path)


class EvalCommandTests(CommandTestMixin, SimpleTestCase):

    def read_csv(self, path):
        with open(path, encoding='utf-8') as fh:
            return list(csv.reader(fh))

    def test_point(self):
        path = self.dir / 'values.csv'
        output = self.call('eval', spec('motfun'), '--field', 'mixed,5,1,8', '--x', 'x=20', '--csv', str(path))
        self.assertIn('motfun on', output)
        rows = self.read_csv(path)
        self.assertEqual(rows[0], ['x', 'psi', 'exact', 'real', 'imag'])
        self.assertEqual(len(rows), 2)
        self.assertEqual(rows[1][1:3], ['-', '10'])

    def test_grid(self):
        path = self.dir / 'values.csv'
        self.call('eval', spec('rfzz'), '--field', 'eq,5,1,8', '--csv', str(path))
        self.assertEqual([row[2] for row in self.read_csv(path)[1:]], ['1', '10', '75', '500'])

    def test_character_family(self):
        path = self.dir / 'values.csv'
        self.call('eval', spec('single_polar'), '--field', 'eq,5,1,8', '--x', 'x=t', '--depth', '1',
                  '--csv', str(path))
        rows = self.read_csv(path)[1:]
        self.assertEqual(len(rows), 5)
        self.assertEqual(rows[0][1], 'depth 1, index 0')

    def test_usage_errors(self):
        cases = [
            ('eval', spec('motfun'), '--field', 'eq,5,1'),
            ('eval', spec('motfun'), '--field', 'eq,4,1,8'),
            ('eval', spec('motfun'), '--field', 'eq,five,1,8'),
            ('eval', spec('missing'), '--field', 'eq,5,1,8'),
            ('eval', spec('notce'), '--field', 'eq,5,1,8'),
            ('eval', spec('motfun'), '--field', 'eq,5,1,8', '--x', 'q=1'),
            ('eval', spec('rfzz'), '--field', 'eq,5,1,8', '--x', 'z=three'),
        ]
        for args in cases:
            with self.subTest(args=args):
                self.assertExitCode(ExitCode.USAGE, *args)

    def test_syntax_error_names_file(self):
        path = self.write_spec('broken', 'spec broken : C\n\nterm { coef : 1 / }\n')
        error = self.assertExitCode(ExitCode.USAGE, 'eval', path, '--field', 'eq,5,1,8')
        self.assertIn('broken.spec', str(error))

    def test_skip_validation(self):
        output = self.call('eval', spec('notce'), '--field', 'eq,5,1,8', '--no-validate', '--x', 'x=t',
                           '--depth', '1', '--index', '0')
        self.assertIn('1 values', output)


class ReduceCommandTests(CommandTestMixin, SimpleTestCase):

    def test_table(self):
        output = self.call('reduce', spec('multi_polar'), '--field', 'eq,5,1,8')
        self.assertIn('depth 2, N′ = 3, N = 9', output)
        self.assertNotIn('НЕТ', output)

    def test_single_point(self):
        output = self.call('reduce', spec('two_entry'), '--field', 'mixed,5,1,8', '--x', 'x=5')
        self.assertIn('N′ = 2, N = 4', output)

    def test_depth_too_small(self):
        error = self.assertExitCode(ExitCode.USAGE, 'reduce', spec('single_polar'), '--field', 'eq,5,1,8',
                                    '--depth', '0')
        self.assertIn('--depth 1', str(error))


class LindepCommandTests(CommandTestMixin, SimpleTestCase):

    def test_dependent(self):
        output = self.call('lindep', spec('one'), spec('double'), '--field', 'eq,5,1,8')
        self.assertIn('dependent on sample, kernel (2, -1)', output)

    def test_cramer(self):
        target = self.write_spec('target', 'spec G : C\n\nvars { x : VF }\n\n'
                                           'term { coef : 2 }\nterm {\n  coef : 3\n  alpha : ord(x)\n}\n')
        output = self.call('lindep', spec('one_wide'), spec('qord'), '--field', 'mixed,7,1,6', '--target', target)
        self.assertIn('independent on sample', output)
        self.assertIn('G = Σ c_i H_i on the whole sample', output)

    def test_not_a_combination(self):
        target = self.write_spec('target', 'spec G : C\n\nvars { x : VF }\n\nterm { count [y] : y^2 = ac(x) }\n')
        self.assertExitCode(ExitCode.VIOLATION, 'lindep', spec('one_wide'), spec('qord'), '--field', 'eq,5,1,8',
                            '--target', target)

    def test_no_witness(self):
        output = self.call('lindep', spec('one'), spec('double'), '--field', 'eq,5,1,8', '--target', spec('one'))
        self.assertIn('no tuple with D ≠ 0', output)


class FourierDemoCommandTests(CommandTestMixin, SimpleTestCase):

    def test_demo(self):
        output = self.call('fourier_demo', '--factors', '2,3', '--count', '5', '--seed', '1')
        self.assertIn('order 6', output)
        self.assertIn('все проверки выполнены', output)

    def test_bad_factors(self):
        self.assertExitCode(ExitCode.USAGE, 'fourier_demo', '--factors', 'two')


class SweepCommandTests(CommandTestMixin, TestCase):

    def sweep(self, *args):
        return self.call('sweep', *args, '--pmin', '5', '--pmax', '7', '--out', str(self.dir / 'reports'))

    def test_rigidity(self):
        output = self.sweep('rigidity', spec('rfzz'), '--no-record')
        self.assertIn('нарушений нет', output)
        report = json.loads((self.dir / 'reports' / 'rigidity-rfzz.json').read_text(encoding='utf-8'))
        self.assertEqual([row['p'] for row in report['rows']], [5, 7])
        self.assertTrue((self.dir / 'reports' / 'rigidity-rfzz.csv').exists())
        self.assertFalse(SweepRun.objects.exists())

    def test_records_run(self):
        self.sweep('coeff', spec('one'), spec('double'), '--c', '2,-1', '--format', 'json')
        run = SweepRun.objects.get()
        self.assertEqual((run.statement, run.status, run.exit_code), ('coeff', 'ok', 0))
        self.assertEqual(run.primes.count(), 4)
        self.assertFalse((self.dir / 'reports' / 'coeff-one-double.csv').exists())

    def test_config_file(self):
        self.sweep('rigidity', spec('cube_roots'), '--config', str(SPEC_DIR / 'sweep.config'), '--no-record')
        report = json.loads((self.dir / 'reports' / 'rigidity-cube_roots.json').read_text(encoding='utf-8'))
        self.assertEqual(report['manifest']['seed'], 7)
        self.assertEqual(report['manifest']['config']['pmax'], 7)

    def test_usage(self):
        self.assertExitCode(ExitCode.USAGE, 'sweep', 'coeff', spec('one'), spec('double'),
                            '--out', str(self.dir), '--no-record')
        self.assertExitCode(ExitCode.USAGE, 'sweep', 'bound', spec('polar_bound'), spec('single_polar'),
                            '--out', str(self.dir), '--no-record')
        self.assertExitCode(ExitCode.USAGE, 'sweep', 'rigidity', spec('rfzz'), '--pmin', '2',
                            '--out', str(self.dir), '--no-record')

    def test_violation(self):
        row = PrimeRow('bound', 5, 'eq->mixed', violations=['H is in 𝒞ᵉ but N = 2 is needed'])
        report = TransferReport('bound', {}, [row])
        with mock.patch('bench.management.commands.sweep.run_statement', return_value=report):
            error = self.assertExitCode(ExitCode.VIOLATION, 'sweep', 'bound', spec('motfun'), spec('motfun'),
                                        '--out', str(self.dir))
        self.assertIn('1 statement violations', str(error))
        self.assertEqual(SweepRun.objects.get().exit_code, 1)
