import json
from os.path import join

import pytest
from mpmath import mp

from cantorscan import settings
from cantorscan.seqspec import parse_spec

PREC = 128


@pytest.fixture
def prec() -> int:
    return PREC


@pytest.fixture
def constant_half():
    return parse_spec({'family': 'constant', 'q': '1/2'}, PREC)


@pytest.fixture
def alternating():
    return parse_spec({'family': 'alternating_half_power'}, PREC)


@pytest.fixture
def iterated():
    return parse_spec({'family': 'iterated_exponential', 'q1': '1/2'}, PREC)


@pytest.fixture
def explicit_tail():
    return parse_spec(
        {'family': 'explicit_with_tail', 'values': ['3/5', '1/2'], 'tail': {'family': 'constant', 'q': '1/2'}}, PREC
    )


@pytest.fixture
def spec_file(tmp_path):
    """Write a spec document to ``tmp_path`` and return its path."""
    def _write(doc: dict, name: str = 'test.spec') -> str:
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)
    return _write


@pytest.fixture
def bundled_spec():
    def _path(name: str) -> str:
        return join(settings.BASE_DIR, 'specs', name)
    return _path


@pytest.fixture(autouse=True)
def oracle_precision():
    with mp.workdps(60):
        yield
