import json
import math
from io import StringIO

import numpy as np
import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from cli import checks
from cli.runner import RunRequest, run
from cli.tasks import run_sweep, scatter_point
from cli.writers import encode_complex, serialize
from core.exceptions import NonFiniteValue

ODD_MIXING = {'alpha': 2.0, 'beta': -2.5, 'gamma': 0.5, 'delta': 0.0, 'phi': 0.0}


def _call(name, *args, **options):
    out, err = StringIO(), StringIO()
    call_command(name, *args, stdout=out, stderr=err, **options)
    return out.getvalue(), err.getvalue()


def _json(name, **options):
    out, _ = _call(name, format='json', **options)
    return json.loads(out)


def _exit_code(name, **options):
    err = StringIO()
    with pytest.raises(CommandError) as excinfo:
        call_command(name, stdout=StringIO(), stderr=err, **options)
    return excinfo.value.returncode, err.getvalue()


@pytest.mark.unit
class TestScatterCommand:

    def test_worked_point(self):
        [row] = _json('scatter', k=1.0, **ODD_MIXING)
        assert row['R_plus']['re'] == pytest.approx(-0.2, abs=1e-12)
        assert row['R_plus']['im'] == pytest.approx(0.8, abs=1e-12)
        assert row['T_plus']['re'] == pytest.approx(0.4, abs=1e-12)
        assert row['T_plus']['im'] == pytest.approx(0.4, abs=1e-12)
        assert row['phi_rel'] == pytest.approx(0.0, abs=1e-12)
        assert row['poles'] == pytest.approx([1.0])
        assert row['phase_undefined'] is False

    def test_csv_header(self):
        out, _ = _call('scatter', k=1.0, **ODD_MIXING)
        header, data = out.split('\r\n')[:2]
        assert header.startswith('k,R_plus_re,R_plus_im,R_minus_re,R_minus_im,T_plus_re')
        assert header.endswith('phi_rel,phase_undefined,poles')
        assert data.split(',')[-2:] == ['false', '1']

    def test_log_sweep_in_order(self):
        rows = _json('scatter', k_min=0.1, k_max=10.0, k_steps=5, spacing='log', **ODD_MIXING)
        np.testing.assert_allclose([row['k'] for row in rows], [0.1, 10 ** -0.5, 1.0, 10 ** 0.5, 10.0], rtol=1e-12)

    def test_deterministic(self):
        options = dict(k_min=0.5, k_max=3.0, k_steps=7, **ODD_MIXING)
        assert _call('scatter', **options)[0] == _call('scatter', **options)[0]

    def test_params_file(self, tmp_path):
        path = tmp_path / 'params.json'
        path.write_text(json.dumps({**ODD_MIXING, 'k': 1.0}))
        [row] = _json('scatter', params_file=str(path))
        assert row['T_plus']['re'] == pytest.approx(0.4, abs=1e-12)

    def test_flags_override_file(self, tmp_path):
        path = tmp_path / 'params.json'
        path.write_text(json.dumps(ODD_MIXING))
        code, err = _exit_code('scatter', params_file=str(path), gamma=1.0, k=1.0)
        assert code == 2
        assert 'ConstraintViolation' in err

    def test_out_file(self, tmp_path):
        path = tmp_path / 'rows.csv'
        out, _ = _call('scatter', k=1.0, out=str(path), **ODD_MIXING)
        assert out == ''
        assert path.read_text().startswith('k,R_plus_re')

    @pytest.mark.parametrize('options', [
        {'k': 1.0, **ODD_MIXING, 'gamma': 1.0},
        {**ODD_MIXING},
        {'k': -1.0, **ODD_MIXING},
        {'k_min': 2.0, 'k_max': 1.0, **ODD_MIXING},
        {'k': 1.0, 'alpha': 1.0},
    ])
    def test_invalid_requests(self, options):
        code, _ = _exit_code('scatter', **options)
        assert code == 2

    def test_missing_params_file(self, tmp_path):
        code, err = _exit_code('scatter', params_file=str(tmp_path / 'missing.json'), k=1.0)
        assert code == 3
        assert 'IoFailure' in err


@pytest.mark.unit
class TestSpectrumCommand:

    def test_unitary(self):
        rows = _json('spectrum', dim=3, unitary=True, levels=3)
        np.testing.assert_allclose([row['E_over_omega'] for row in rows], [0.5, 2.5, 4.5], atol=1e-9)
        assert [row['index'] for row in rows] == [0, 1, 2]

    def test_robin_matches_scattering_length(self):
        robin = _json('spectrum', dim=3, robin=-1.0, levels=3)
        length = _json('spectrum', dim=3, a=1.0, levels=3)
        assert [row['E_over_omega'] for row in robin] == [row['E_over_omega'] for row in length]

    def test_one_dimensional(self):
        rows = _json('spectrum', dim=1, alpha=1.0, beta=0.0, gamma=1.0, delta=0.0, phi=0.0, levels=4)
        np.testing.assert_allclose([row['E_over_omega'] for row in rows], [0.5, 1.5, 2.5, 3.5], atol=1e-10)

    @pytest.mark.parametrize('options', [
        {'dim': 3, 'a': 1.0, 'unitary': True},
        {'dim': 3},
        {'dim': 3, 'unitary': True, 'omega': 0.0},
        {'dim': 3, 'unitary': True, 'levels': 0},
        {'dim': 1, 'alpha': 1.0},
    ])
    def test_invalid_requests(self, options):
        code, _ = _exit_code('spectrum', **options)
        assert code == 2


@pytest.mark.unit
class TestDictionaryCommand:

    def test_forward(self):
        [row] = _json('dictionary', **ODD_MIXING)
        assert row['direction'] == 'forward'
        assert row['c0'] == pytest.approx(5 / 4.5, rel=1e-12)
        assert row['c1'] == pytest.approx(1 / 3, rel=1e-12)
        assert row['round_trip_residual'] < 1e-12

    def test_inverse(self):
        [row] = _json('dictionary', c0=5 / 4.5, c1=1 / 3)
        assert row['direction'] == 'inverse'
        np.testing.assert_allclose([row[name] for name in ODD_MIXING], list(ODD_MIXING.values()), atol=1e-12)
        assert row['round_trip_residual'] < 1e-12

    def test_no_inverse(self):
        code, err = _exit_code('dictionary', c0=1.0, c1=1.0, c1_tilde=0.0, c2p=0.0)
        assert code == 3
        assert 'NoInverse' in err

    def test_singular_forward(self):
        code, err = _exit_code('dictionary', alpha=-1.0, beta=0.0, gamma=-1.0, delta=0.0, phi=0.0)
        assert code == 3
        assert 'DictionarySingular' in err


@pytest.mark.unit
class TestRgflowCommand:

    def test_renormalized_sector(self):
        rows = _json('rgflow', kappa0=1.0, a_theta=0.5, phi_rel=0.3, mu=[0.5, 1.0, 10.0], k=1.5)
        assert [row['mu'] for row in rows] == [0.5, 1.0, 10.0]
        c1_mod = [row['c1_mod'] for row in rows]
        np.testing.assert_allclose(c1_mod, [c1_mod[0]] * 3, rtol=1e-12)
        k_cot = [row['k_cot_theta'] for row in rows]
        np.testing.assert_allclose(k_cot, [k_cot[0]] * 3, rtol=1e-10)
        assert len({row['c0'] for row in rows}) == 3

    def test_anomaly(self):
        rows = _json('rgflow', kappa0=1.0, anomaly=True, mu=[1.0, 2.5])
        np.testing.assert_allclose([row['inverse_mixing_length'] for row in rows], [1.0, 1.25], atol=1e-12)
        np.testing.assert_allclose([row['pole'] for row in rows], [1.0, 1.0], atol=1e-12)
        assert all(row['c0'] == 0.0 for row in rows)

    def test_mu_flag_parsing(self):
        out, _ = _call('rgflow', '--kappa0', '1', '--anomaly', '--mu', '1,2.5', '--format', 'json')
        assert [row['mu'] for row in json.loads(out)] == [1.0, 2.5]

    def test_anomaly_scale_below_pole(self):
        code, err = _exit_code('rgflow', kappa0=1.0, anomaly=True, mu=[0.4])
        assert code == 2
        assert 'InvalidScale' in err

    def test_non_perturbative(self):
        code, _ = _exit_code('rgflow', kappa0=2.0, a_theta=1.0, mu=[1.0])
        assert code == 2


@pytest.mark.unit
class TestCheckCommand:

    def test_selected_checks_pass(self):
        out, err = _call('check_invariants', only=['busch_spectra', 'numerics', 'scale_anomaly'], format='json')
        rows = json.loads(out)
        assert [row['name'] for row in rows] == ['scale_anomaly', 'busch_spectra', 'numerics']
        assert all(row['passed'] for row in rows)
        assert '3 passed, 0 failed' in err

    def test_failure_exits_4(self, monkeypatch):
        def broken(rng):
            assert False, "always fails"

        monkeypatch.setattr(checks, 'CHECKS', [('broken', broken), ('numerics', checks.check_numerics)])
        code, err = _exit_code('check_invariants')
        assert code == 4
        assert '1 passed, 1 failed' in err

    def test_draws_ignore_selection(self, monkeypatch):
        drawn = []

        def recording(name):
            def check(rng):
                drawn.append((name, rng.random()))
                return name
            return check

        monkeypatch.setattr(checks, 'CHECKS', [(name, recording(name)) for name in ('first', 'second', 'third')])
        checks.run_checks(seed=3)
        full = dict(drawn)
        drawn.clear()
        checks.run_checks(seed=3, only=['third'])
        assert drawn == [('third', full['third'])]

    @pytest.mark.parametrize('name', [
        'pole_physics', 'pole_consistency', 'angle_consistency', 't_reconstruction', 'basis_round_trip',
        'parity_covariance', 'current_conservation', 'scale_composition', 'trap_interlacing',
    ])
    def test_invariant_passes(self, name):
        [result] = checks.run_checks(seed=0, only=[name]).results
        assert result.passed, result.detail

    def test_seeded_draws_repeat(self):
        draw = [checks.random_extension_params(np.random.default_rng(7)) for _ in range(2)]
        assert draw[0] == draw[1]


@pytest.mark.unit
class TestRunner:

    def test_unknown_command(self):
        err = StringIO()
        assert run(RunRequest('plot'), StringIO(), err) == 2
        assert 'Unknown command' in err.getvalue()

    def test_unknown_format(self):
        request = RunRequest('scatter', params=dict(ODD_MIXING), sweep={'k': 1.0}, output={'format': 'xml'})
        assert run(request, StringIO(), StringIO()) == 2

    def test_sweep_keeps_call_order(self, settings):
        settings.POINTSCAT_THREADS = 4
        ks = list(np.linspace(0.1, 5.0, 25))
        rows = run_sweep(scatter_point, [(ODD_MIXING, k) for k in ks])
        assert [row['k'] for row in rows] == ks


@pytest.mark.unit
class TestWriters:

    def test_empty_csv_is_header_only(self):
        assert serialize([], 'csv', ['k', 'R_plus']) == 'k,R_plus\r\n'

    def test_empty_json(self):
        assert serialize([], 'json', ['k']) == '[]\n'

    def test_complex_columns(self):
        text = serialize([{'k': 1.0, 'T': complex(0.4, -0.25)}], 'csv')
        assert text == 'k,T_re,T_im\r\n1,0.40000000000000002,-0.25\r\n'
        assert json.loads(serialize([{'T': encode_complex(0.5j)}], 'json')) == [{'T': {'re': 0.0, 'im': 0.5}}]

    def test_none_and_lists(self):
        text = serialize([{'k_cot_theta': None, 'poles': [1.0, -0.5]}], 'csv')
        assert text.split('\r\n')[1] == ',1;-0.5'

    @pytest.mark.parametrize('fmt', ['csv', 'json'])
    @pytest.mark.parametrize('value', [math.nan, math.inf, complex(math.nan, 0)])
    def test_non_finite(self, fmt, value):
        with pytest.raises(NonFiniteValue):
            serialize([{'x': value}], fmt)
