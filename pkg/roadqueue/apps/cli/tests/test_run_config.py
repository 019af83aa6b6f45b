import pytest

from apps.cli.run_config import LambdaSweep, OutputFormat, load_run_config, parse_run_config
from apps.core.exceptions import ConfigError, DomainError
from apps.section.entities import DistributionSource
from apps.tandem.entities import SolverKind
from conftest import REFERENCE_SECTION1, REFERENCE_SECTION2


@pytest.fixture
def document(tmp_path):
    return {
        'sections': [REFERENCE_SECTION1, REFERENCE_SECTION2],
        'lambda': 1000,
        'output': {'path': str(tmp_path / 'out.json'), 'format': 'json'},
    }


def test_defaults(document):
    config = parse_run_config(document)
    assert config.solver == SolverKind.BISECTION
    assert config.form == DistributionSource.FLOW_FORM
    assert config.output.format == OutputFormat.JSON
    assert config.points == 50
    assert config.arrival_rates() == [1000]
    assert config.tandem(1000).capacities == (18, 18)


def test_sweep_includes_both_ends(document):
    del document['lambda']
    document['lambda_sweep'] = {'from': 100, 'to': 300, 'step': 100}
    assert parse_run_config(document).arrival_rates() == [100, 200, 300]
    assert LambdaSweep(0.1, 0.3, 0.1).values() == pytest.approx([0.1, 0.2, 0.3])


def test_digest_tracks_document(document):
    first = parse_run_config(document).digest
    document['solver'] = 'iteration'
    assert parse_run_config(document).digest != first


@pytest.mark.parametrize('change', [
    {'lambda_sweep': {'from': 1, 'to': 2, 'step': 1}},
    {'lambda': -1},
    {'lambda': '1000'},
    {'solver': 'newton'},
    {'solver': ['bisection']},
    {'form': 'density'},
    {'points': 1},
    {'max_iter': 2.5},
    {'max_iter': 0},
    {'tol': -1},
    {'tol': 0},
    {'output': {'path': 'out.xml', 'format': 'xml'}},
    {'output': 'out.json'},
    {'sections': []},
    {'colour': 'red'},
])
def test_malformed_documents(document, change):
    with pytest.raises(ConfigError):
        parse_run_config({**document, **change})


@pytest.mark.parametrize('sweep', [
    {'from': 300, 'to': 100, 'step': 100},
    {'from': 100, 'to': 300, 'step': 0},
    {'from': 100, 'to': 300},
    {'from': None, 'to': 300, 'step': 10},
])
def test_malformed_sweeps(document, sweep):
    del document['lambda']
    with pytest.raises(ConfigError):
        parse_run_config({**document, 'lambda_sweep': sweep})


def test_section_count_checked(document):
    config = parse_run_config({**document, 'sections': [REFERENCE_SECTION1]})
    with pytest.raises(ConfigError):
        config.tandem(1000)


def test_invalid_section_values(document):
    with pytest.raises(DomainError):
        parse_run_config({**document, 'sections': [{**REFERENCE_SECTION1, 'jam_density_veh_per_km': 185.5}]})


def test_load_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_run_config(tmp_path / 'missing.json')
    broken = tmp_path / 'broken.json'
    broken.write_text('{"sections": [')
    with pytest.raises(ConfigError):
        load_run_config(broken)
