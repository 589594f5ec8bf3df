import json

import pytest
from typer.testing import CliRunner

from ncgkit import __version__
from ncgkit.main import app

runner = CliRunner()

RM_ARGS = ['--g', '4,-1,5,-1', '--theta', '(5 - sqrt(5))/10', '--tau', '0.3,-1']


def invoke(*args):
    return runner.invoke(app, ['--log-level', 'ERROR', *args])


def test_version():
    result = runner.invoke(app, ['--version'])
    assert result.exit_code == 0
    assert f"ncgkit {__version__}" in result.output


def test_theta_oracle():
    result = invoke('theta', '--tau-eff', '0,1', '--eps', '1e-12')
    assert result.exit_code == 0, result.output
    assert '1.086434811213308 ± 1e-12' in result.output


def test_theta_characteristic_is_periodic():
    zero = invoke('theta', '--char', '0', '--scale', '2', '--tau-eff', '0.25,1')
    one = invoke('theta', '--char', '1', '--scale', '2', '--tau-eff', '0.25,1')
    assert zero.exit_code == 0 and one.exit_code == 0
    assert zero.output == one.output


def test_theta_divergent_nome():
    result = invoke('theta', '--tau-eff', '0,0')
    assert result.exit_code == 2
    assert 'divergent nome' in result.output


def test_theta_bad_scale():
    assert invoke('theta', '--scale', '-1', '--tau-eff', '0,1').exit_code == 3


def test_theta_needs_tau_eff():
    assert invoke('theta').exit_code != 0


def test_ring_rejects_degree_zero(tmp_path):
    result = invoke('ring', '--g', '1,0,0,1', '--theta', '(5 - sqrt(5))/10', '--tau', '0.3,-1',
                    '--out', str(tmp_path))
    assert result.exit_code == 3
    assert 'error:' in result.output


def test_ring_rejects_upper_half_plane(tmp_path):
    result = invoke('ring', '--g', '4,-1,5,-1', '--theta', '(5 - sqrt(5))/10', '--tau', '0.3,1',
                    '--out', str(tmp_path))
    assert result.exit_code == 3


def test_verify_restricted(tmp_path):
    out = tmp_path / 'report.json'
    result = invoke('verify', '--only', 'freealg', '--out', str(out))
    assert result.exit_code == 0, result.output
    report = json.loads(out.read_text())
    assert report['modules'] == ['freealg']
    assert all(claim['module'] == 'freealg' for claim in report['claims'])
    assert report['passed'] is True


def test_verify_markdown(tmp_path):
    out = tmp_path / 'report.md'
    result = invoke('verify', '--only', 'freealg', '--format', 'md', '--out', str(out))
    assert result.exit_code == 0
    assert out.read_text().startswith('# ncgkit verification report')


def test_verify_bad_inputs():
    assert invoke('verify', '--format', 'xml').exit_code == 3
    assert invoke('verify', '--only', 'bogus').exit_code == 3
    assert invoke('verify', '--only', 'freealg', '--inject', 'nonsense').exit_code == 3


def test_verify_sample_override(tmp_path):
    out = tmp_path / 'report.json'
    result = invoke('verify', '--only', 'heisenberg', '--samples', '2', '--out', str(out))
    assert result.exit_code == 0, result.output
    assert json.loads(out.read_text())['passed'] is True
    assert invoke('verify', '--only', 'freealg', '--samples', '0').exit_code == 3


def test_verify_detects_injected_fault(tmp_path):
    out = tmp_path / 'report.json'
    result = invoke('verify', '--only', 'nctorus', '--samples', '3', '--inject', 'torus-phase', '--out', str(out))
    assert result.exit_code == 1
    report = json.loads(out.read_text())
    assert report['passed'] is False


def test_charvar_coordinate_points(tmp_path):
    out = tmp_path / 'points.csv'
    result = invoke('charvar', '--phi', '1/7,2/5,3/11', '--mode', 'coordinate', '--out', str(out))
    assert result.exit_code == 0, result.output
    lines = out.read_text().splitlines()
    assert lines[0].startswith('index,mode,u0_re')
    assert len(lines) == 5


def test_charvar_bad_mode():
    assert invoke('charvar', '--phi', '0', '--mode', 'spiral').exit_code == 3


@pytest.mark.slow
def test_ring_export_files(tmp_path):
    result = invoke('ring', *RM_ARGS, '--out', str(tmp_path))
    assert result.exit_code == 0, result.output
    rows = (tmp_path / 'struct_constants.csv').read_text().splitlines()
    assert rows[0] == 'gamma,alpha,beta,re,im,err'
    assert len(rows) == 376
    record = json.loads((tmp_path / 'presentation.json').read_text())
    assert len(record['generators']) == 5
    assert len(record['relations']) == 10
    assert record['classification'] == 'koszul'
