import json
import math

import numpy as np
import pandas as pd

from apps.core.artifacts import config_digest, to_plain, write_json, write_table
from apps.section.entities import DistributionSource


def test_digest_ignores_key_order():
    assert config_digest({'a': 1, 'b': [1, 2]}) == config_digest({'b': [1, 2], 'a': 1})
    assert config_digest({'a': 1}) != config_digest({'a': 2})
    assert len(config_digest({})) == 64


def test_to_plain():
    document = to_plain({
        'x': np.float64(1 / 3),
        'n': np.int64(7),
        'flag': np.bool_(True),
        'missing': math.nan,
        'source': DistributionSource.FLOW_FORM,
        'probs': np.array([0.25, 0.75]),
        'pair': (1.0, 2),
    }, digits=6)
    assert document == {
        'x': 0.333333,
        'n': 7,
        'flag': True,
        'missing': None,
        'source': 'flow_form',
        'probs': [0.25, 0.75],
        'pair': [1.0, 2],
    }
    assert type(document['n']) is int
    assert type(document['flag']) is bool


def test_write_json(tmp_path):
    path = write_json(tmp_path / 'nested' / 'out.json', {'b': 1.0, 'a': [np.float64(2.5)]}, 'abc')
    text = path.read_text()
    assert json.loads(text) == {'a': [2.5], 'b': 1.0, 'config_sha256': 'abc'}
    assert text.endswith('\n')
    assert text.index('"a"') < text.index('"b"') < text.index('"config_sha256"')


def test_write_table(tmp_path, settings):
    settings.ROADQUEUE_FLOAT_DIGITS = 4
    frame = pd.DataFrame({'n': [0, 1], 'prob': [1 / 3, 2 / 3]})
    path = write_table(tmp_path / 'dist.csv', frame, 'abc')
    assert path.read_text().splitlines() == [
        '# config-sha256: abc',
        'n,prob',
        '0,0.3333',
        '1,0.6667',
    ]
