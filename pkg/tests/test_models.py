import pytest

import config
from errors import ConfigError
from models import CheckRecord, InstanceRegistry, RunConfig, is_prime


@pytest.mark.parametrize("n,expected", [(1, False), (2, True), (9, False), (13, True)])
def test_is_prime(n, expected):
    assert is_prime(n) is expected


def test_defaults_come_from_config():
    cfg = RunConfig.from_env(prime=None, quiver=None)
    assert cfg.prime == config.PRIME
    assert cfg.quiver == config.QUIVER


@pytest.mark.parametrize(
    "overrides",
    [
        {"prime": 4},
        {"primes": [2, 3, 3]},
        {"primes": [2, 9]},
        {"algebra": "lie"},
        {"suite": "everything"},
        {"format": "xml"},
        {"cap": 0},
        {"window": -1},
        {"shifts": []},
    ],
)
def test_invalid_settings_raise_config_error(overrides):
    with pytest.raises(ConfigError):
        RunConfig.from_env(**overrides)


def test_check_record_row_uses_pass_key():
    row = CheckRecord(suite="rp", instance="(a, b, c)", lhs="1", rhs="1", passed=True).as_row()
    assert row["pass"] is True
    assert "passed" not in row


def test_registry_defaults_to_empty():
    registry = InstanceRegistry.model_validate({"prop25": [{"objects": ["I[1,1]", "0", "I[1,1]"]}]})
    assert registry.octahedra == []
    assert registry.prop25[0].objects[1] == "0"
