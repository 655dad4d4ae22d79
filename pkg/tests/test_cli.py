import io
import os
import tempfile
from unittest import TestCase, mock

from multicutlab.cli import main
from multicutlab.formats import load_inequalities, load_instance
from multicutlab.inequality import gen_circular_star

FIXTURE = os.path.join(os.path.dirname(__file__), 'fixtures', 'k13-complete.mc')


class CliTestCase(TestCase):
    def setUp(self) -> None:
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self) -> None:
        self.tmp.cleanup()

    def write(self, name, text):
        path = os.path.join(self.tmp.name, name)
        with open(path, 'w') as fh:
            fh.write(text)
        return path

    def run_main(self, *argv):
        with mock.patch('sys.stdout', new_callable=io.StringIO) as out, \
                mock.patch('sys.stderr', new_callable=io.StringIO) as err:
            code = main(['-q'] + list(argv))
        return code, out.getvalue(), err.getvalue()


class TestSolveAndEnumerate(CliTestCase):
    def test_solve_fixture(self):
        code, out, _ = self.run_main('solve', FIXTURE, '--oracle', 'brute')
        self.assertEqual(code, 0)
        lines = out.splitlines()
        self.assertEqual(lines[0], 'value 2')
        self.assertEqual(lines[-1], 'oracle agrees 2')

    def test_solve_stats(self):
        code, out, _ = self.run_main('solve', FIXTURE, '--stats', '--families', 'path')
        self.assertEqual(code, 0)
        self.assertIn('root-bound 3/2', out.splitlines())
        self.assertIn('final-bound 2', out.splitlines())

    def test_enumMulticuts_fixture(self):
        code, out, _ = self.run_main('enum-multicuts', FIXTURE)
        self.assertEqual((code, out), (0, '0 1\n0 2\n1 2\n'))

    def test_facets_fixture(self):
        code, out, _ = self.run_main('facets', FIXTURE)
        self.assertEqual(code, 0)
        self.assertEqual(len(out.splitlines()), 7)
        self.assertIn('ineq 2 <= 1 1 1', out.splitlines())

    def test_budgetExitCode(self):
        code, _, err = self.run_main('--budget', '1', 'enum-multicuts', FIXTURE)
        self.assertEqual(code, 3)
        self.assertTrue(err.startswith('error: '))


class TestInequalityCommands(CliTestCase):
    def test_checkIneq_facet(self):
        path = self.write('star.ineq', 'ineq 2 <= 1 1 1\n')
        code, out, _ = self.run_main('check-ineq', FIXTURE, path, '--shared')
        self.assertEqual(code, 0)
        self.assertIn('facet yes', out)
        self.assertIn('shared yes', out)

    def test_checkIneq_notFacet(self):
        path = self.write('weak.ineq', 'ineq 1 <= 1 1 1\n')
        code, out, _ = self.run_main('check-ineq', FIXTURE, path)
        self.assertEqual(code, 1)
        self.assertIn('facet no', out)

    def test_checkDescription_missingStar(self):
        path = self.write('paths.ineq', 'ineq 1 <= 1 1 0\nineq 1 <= 1 0 1\nineq 1 <= 0 1 1\n')
        code, out, _ = self.run_main('check-description', FIXTURE, path)
        self.assertEqual(code, 1)
        self.assertIn('result FAIL', out)
        self.assertIn('  ineq 2 <= 1 1 1', out)

    def test_genIneq_stdout(self):
        code, out, _ = self.run_main('gen-ineq', '--family', 'complete-star', '--n', '3')
        self.assertEqual(code, 0)
        with open(FIXTURE) as fh:
            self.assertEqual(out, fh.read() + 'ineq 2 <= 1 1 1\n')

    def test_genIneq_helpStatesEdgeIndexing(self):
        with mock.patch('sys.stdout', new_callable=io.StringIO) as out:
            with self.assertRaises(SystemExit):
                main(['gen-ineq', '--help'])
        self.assertIn('grouped by child node', out.getvalue())
        self.assertIn('3-beta for odd i', out.getvalue())

    def test_genIneq_out(self):
        prefix = os.path.join(self.tmp.name, 'c5')
        code, _, _ = self.run_main('gen-ineq', '--family', 'circular-star', '--n', '5', '--out', prefix)
        self.assertEqual(code, 0)
        inst, ineq = gen_circular_star(5)
        self.assertEqual(load_instance(prefix + '.mc'), inst)
        self.assertEqual(load_inequalities(prefix + '.ineq'), [ineq])

    def test_genIneq_evenCircularStarRejected(self):
        code, _, err = self.run_main('gen-ineq', '--family', 'circular-star', '--n', '4')
        self.assertEqual(code, 2)
        self.assertIn('error:', err)

    def test_genIneq_generalizedWagnerNeedsBreakpoints(self):
        code, _, _ = self.run_main('gen-ineq', '--family', 'generalized-wagner', '--n', '5')
        self.assertEqual(code, 2)

    def test_separate_quarterPoint(self):
        point = self.write('x.pt', '1/4 1/4 1/4\n')
        code, out, _ = self.run_main('separate', FIXTURE, point)
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines()[0], 'violated 3')

    def test_separate_starFamily(self):
        point = self.write('x.pt', '1/2 1/2 1/2\n')
        code, out, _ = self.run_main('separate', FIXTURE, point, '--families', 'path,star')
        self.assertEqual(code, 0)
        self.assertEqual(out, 'violated 1\nineq 2 <= 1 1 1 # subdivided-complete-star violation 1/2\n')


class TestLiftAndErrors(CliTestCase):
    def test_lift_subdivide(self):
        path = self.write('star.ineq', 'ineq 2 <= 1 1 1\n')
        code, out, _ = self.run_main('lift', FIXTURE, path, '--op', 'subdivide', '--edge', '0')
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith('nodes 5\n'))
        self.assertTrue(out.endswith('ineq 2 <= 1 1 1 1\n'))

    def test_lift_missingOption(self):
        path = self.write('star.ineq', 'ineq 2 <= 1 1 1\n')
        code, _, err = self.run_main('lift', FIXTURE, path, '--op', 'replace-path', '--edge', '0')
        self.assertEqual(code, 2)
        self.assertIn('--length', err)

    def test_parseErrorReported(self):
        bad = self.write('bad.mc', 'nodes 2\nedge 0 2\n')
        code, _, err = self.run_main('enum-multicuts', bad)
        self.assertEqual(code, 2)
        self.assertIn('line 2', err)

    def test_missingFile(self):
        code, _, err = self.run_main('facets', os.path.join(self.tmp.name, 'absent.mc'))
        self.assertEqual(code, 2)
        self.assertTrue(err.startswith('error: '))
