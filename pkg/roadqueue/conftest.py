import json

import pytest

from apps.diagram.entities import FundamentalDiagram, SectionParams
from apps.tandem.entities import TandemConfig

REFERENCE_SECTION1 = {'length_km': 0.1, 'free_speed_kmh': 100, 'jam_density_veh_per_km': 180, 'model': 'linear'}
REFERENCE_SECTION2 = {'length_km': 0.1, 'free_speed_kmh': 50, 'jam_density_veh_per_km': 180, 'model': 'linear'}


@pytest.fixture
def section1() -> FundamentalDiagram:
    return FundamentalDiagram(SectionParams(length=0.1, free_speed=100, jam_density=180))


@pytest.fixture
def section2() -> FundamentalDiagram:
    return FundamentalDiagram(SectionParams(length=0.1, free_speed=50, jam_density=180))


@pytest.fixture
def tandem(section1, section2):
    def build(arrival_rate: float) -> TandemConfig:
        return TandemConfig(section1=section1, section2=section2, arrival_rate=arrival_rate)

    return build


@pytest.fixture
def mini_tandem():
    """Reference speeds on sections holding four cars each."""
    mini1 = FundamentalDiagram(SectionParams(length=0.1, free_speed=100, jam_density=40))
    mini2 = FundamentalDiagram(SectionParams(length=0.1, free_speed=50, jam_density=40))

    def build(arrival_rate: float) -> TandemConfig:
        return TandemConfig(section1=mini1, section2=mini2, arrival_rate=arrival_rate)

    return build


@pytest.fixture
def run_config(tmp_path):
    def write(document: dict, name: str = 'config.json'):
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding='utf-8')
        return path

    return write
