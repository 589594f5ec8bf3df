import json
import os
from fractions import Fraction

import pytest

from ncgkit.config import NumericDefaults, RunConfig
from ncgkit.errors import ParameterDomainError, ParseError
from ncgkit.nctorus import QuadIrr, SL2Mat
from ncgkit.services import (
    ExportService,
    Mutations,
    ReportService,
    SampleCounts,
    VerificationService,
    render_csv,
    render_json,
    summarize_rows,
)
from ncgkit.spheres import PhiParams
from ncgkit.utils import PrecisionBudget, atomic_write_text, parse_phi, parse_sl2, parse_theta


# configuration

def test_defaults_from_env(monkeypatch):
    monkeypatch.setenv('NCGKIT_BITS', '256')
    monkeypatch.setenv('NCGKIT_EPS', '-1')
    monkeypatch.setenv('NCGKIT_SEED', 'abc')
    monkeypatch.setenv('NCGKIT_LOG_LEVEL', 'debug')
    defaults = NumericDefaults.from_env()
    assert defaults.bits == 256
    assert defaults.eps == 1e-12
    assert defaults.seed == 0
    assert defaults.log_level == 'DEBUG'


def test_run_config_parses_parameters():
    config = RunConfig('ring', theta='(5 - sqrt(5))/10', tau='0.3,-1', g='4,-1,5,-1')
    assert config.parsed_theta == QuadIrr(5, -1, 10, 5)
    assert config.parsed_tau == (Fraction(3, 10), Fraction(-1))
    assert config.parsed_g == SL2Mat(4, -1, 5, -1)


def test_run_config_rejects_bad_values():
    with pytest.raises(ParameterDomainError):
        RunConfig('ring', tau='0,1')
    with pytest.raises(ParseError):
        RunConfig('ring', g='1,1,1,1')
    with pytest.raises(ParameterDomainError):
        RunConfig('theta', scale='0')
    with pytest.raises(ParameterDomainError):
        RunConfig('charvar', mode='spiral')
    with pytest.raises(ParameterDomainError):
        RunConfig('verify', eps=0)
    with pytest.raises(ParameterDomainError):
        RunConfig('verify', verify_samples=0)


def test_only_modules():
    assert RunConfig('verify').only_modules() is None
    assert RunConfig('verify', only='spheres, nctorus').only_modules() == ['spheres', 'nctorus']


def test_parsers():
    assert parse_theta('(1 + sqrt(5))/2') == QuadIrr(1, 1, 2, 5)
    assert parse_theta('sqrt(2)/2') == QuadIrr(0, 1, 2, 2)
    assert parse_theta('1/3') == Fraction(1, 3)
    with pytest.raises(ParseError):
        parse_theta('sqrt(x)')
    assert parse_sl2('[[2,1],[7,4]]') == SL2Mat(2, 1, 7, 4)
    assert parse_phi('1/4') == (Fraction(1, 4),) * 3


def test_precision_budget():
    budget = PrecisionBudget().split(1e-12)
    assert budget.tail + budget.rounding == pytest.approx(1e-12)
    assert budget.bits >= 53
    with pytest.raises(ParameterDomainError):
        PrecisionBudget().split(0)
    with pytest.raises(ParameterDomainError):
        PrecisionBudget({'tail': 0.7, 'rounding': 0.7})


# file output

def test_atomic_write(tmp_path):
    path = atomic_write_text(str(tmp_path / 'nested' / 'out.txt'), 'a\r\nb\r\n')
    assert os.path.isabs(path)
    with open(path, newline='') as handle:
        assert handle.read() == 'a\r\nb\r\n'
    assert os.listdir(tmp_path / 'nested') == ['out.txt']


def test_render_helpers():
    assert render_csv(['a', 'b'], [['1', 'x,y']]) == 'a,b\r\n1,"x,y"\r\n'
    assert render_json({'b': 1, 'a': 2}).index('"a"') < render_json({'b': 1, 'a': 2}).index('"b"')


# verification suite

def test_injections_are_validated():
    with pytest.raises(ParameterDomainError):
        Mutations.from_names(['nonsense'])
    assert Mutations.from_names(['s4-scale']).s4_scale == Fraction(1)


def test_freealg_claims_pass():
    result = VerificationService(samples=2).run(['freealg'])
    assert result['success']
    report = result['report']
    assert [c.claim_id for c in report.claims] == ['freealg.torus-normal-form', 'freealg.torus-confluence']
    assert report.exit_code == 0
    assert report.counts()['exact-pass'] == 2


def test_unknown_module_is_rejected():
    result = VerificationService(samples=2).run(['bogus'])
    assert not result['success']
    assert result['exit_code'] == 3


def test_corrupted_phase_is_detected():
    service = VerificationService(mutations=Mutations.from_names(['torus-phase']), samples=3)
    report = service.run(['nctorus'])['report']
    assert report.exit_code == 1
    assert 'nctorus.trace-cyclicity' in [c.claim_id for c in report.failed]


def test_report_rendering():
    report = VerificationService(samples=2).run(['freealg'])['report']
    reporter = ReportService()
    payload = json.loads(reporter.render(report, 'json', seed=4, modules=['freealg']))
    assert payload['seed'] == 4
    assert payload['modules'] == ['freealg']
    assert payload['passed'] is True
    assert len(payload['claims']) == 2
    markdown = reporter.render(report, 'md', seed=4, modules=['freealg'])
    assert markdown.startswith('# ncgkit verification report')
    assert '`freealg.torus-confluence`' in markdown


def test_report_write(tmp_path):
    report = VerificationService(samples=2).run(['freealg'])['report']
    written = ReportService().write(report, str(tmp_path / 'report.md'), 'md')
    assert written['success']
    assert os.path.exists(written['file_path'])


def test_sample_counts_default_to_acceptance_sizes():
    counts = VerificationService().counts
    assert counts == SampleCounts()
    assert (counts.torus_elements, counts.torus_terms) == (100, 20)
    assert (counts.characteristics, counts.charvar_points, counts.lambdas, counts.packets) == (100, 100, 20, 50)
    assert (counts.orbit_points, counts.orbit_steps) == (3, 5)
    small = VerificationService(samples=3).counts
    assert small.torus_elements == small.characteristics == small.lambdas == 3
    assert small.torus_terms == 20
    with pytest.raises(ParameterDomainError):
        SampleCounts(lambdas=0)
    with pytest.raises(ParameterDomainError):
        SampleCounts.uniform(0)


@pytest.mark.slow
@pytest.mark.parametrize('module', ['nctorus', 'heisenberg', 'spheres'])
def test_module_claims_pass_at_acceptance_sizes(module):
    report = VerificationService().run([module])['report']
    assert report.exit_code == 0, [c.to_dict() for c in report.failed]


@pytest.mark.slow
def test_line_search_orbits_claim():
    report = VerificationService(samples=2).run(['spheres'])['report']
    result = next(c for c in report.claims if c.claim_id == 'spheres.charvar-orbits')
    assert result.status == 'numeric-pass', result.to_dict()
    assert result.residual < 1e-8
    assert result.message == '3 orbits of 5 steps'


@pytest.mark.slow
def test_full_suite_passes():
    report = VerificationService(samples=3).run()['report']
    assert len(report.claims) == 26
    assert report.exit_code == 0, [c.to_dict() for c in report.failed]


@pytest.mark.slow
@pytest.mark.parametrize('injection, claim', [
    ('s4-scale', 'spheres.s4-projector'),
    ('lambda-asymmetric', 'spheres.s3-ch12'),
])
def test_sphere_injections_are_detected(injection, claim):
    service = VerificationService(mutations=Mutations.from_names([injection]), samples=2)
    report = service.run(['spheres'])['report']
    assert claim in [c.claim_id for c in report.failed]


# exports

def test_coordinate_samples(tmp_path):
    phi = PhiParams((Fraction(1, 7), Fraction(2, 5), Fraction(3, 11)))
    out = tmp_path / 'points.csv'
    result = ExportService().sample_charvar(phi, 10, 'coordinate', 1e-8, 0, str(out))
    assert result['success']
    assert len(result['rows']) == 4
    assert summarize_rows(result['rows'])['ranks'] == {3: 4}
    with open(out, newline='') as handle:
        assert len(handle.read().splitlines()) == 5


def test_ring_export_rejects_degree_zero(tmp_path, rm_theta, rm_tau):
    result = ExportService().export_ring(SL2Mat.identity(), rm_theta, rm_tau, 1e-12, 1e-8, 0, str(tmp_path))
    assert not result['success']
    assert result['exit_code'] == 3
    assert not os.listdir(tmp_path)


@pytest.mark.slow
def test_ring_export_is_reproducible(tmp_path, rm_matrix, rm_theta, rm_tau):
    service = ExportService()
    first = service.export_ring(rm_matrix, rm_theta, rm_tau, 1e-12, 1e-8, 0, str(tmp_path / 'a'))
    second = service.export_ring(rm_matrix, rm_theta, rm_tau, 1e-12, 1e-8, 0, str(tmp_path / 'b'))
    assert first['success'] and second['success']
    assert first['rows'] == 375
    assert first['generators'] == 5
    assert first['relations'] == 10
    assert first['classification'] == 'koszul'
    for name in ('struct_constants.csv', 'presentation.json'):
        assert (tmp_path / 'a' / name).read_bytes() == (tmp_path / 'b' / name).read_bytes()
