import logging
import unittest

import pytest
import yaml

import masim
from masim.exceptions import ConfigurationError
from masim.logger import configure_logging, UTCFormatter
from masim.sim.defaults import Defaults


@pytest.mark.localtest
def test_base_defaults(isolated_configs):
    assert isolated_configs.get("dist") == "normal"
    assert isolated_configs.get("seed") == 0
    assert isolated_configs.get("d_max") == 64
    assert isolated_configs.get("max_workers") is None
    assert isolated_configs.get("unknown", "fallback") == "fallback"


@pytest.mark.localtest
def test_save_and_load_defaults(isolated_configs):
    isolated_configs.set("seed", 99)
    isolated_configs.set("dist", "uniform")
    assert Defaults.CONFIG_PATH.exists()

    loaded = isolated_configs.load_defaults_from_file()
    assert loaded == {"seed": 99, "dist": "uniform"}
    assert yaml.safe_load(Defaults.CONFIG_PATH.read_text())["seed"] == 99

    fresh = Defaults()
    assert fresh.get("seed") == 99
    assert fresh.get("streams") == 1


@pytest.mark.localtest
def test_falsy_values_are_kept(isolated_configs):
    isolated_configs.defaults_cache["seed"] = 5
    isolated_configs.set("seed", 0)
    assert isolated_configs.get("seed") == 0
    assert Defaults().get("seed") == 0


@pytest.mark.localtest
def test_delete_defaults(isolated_configs):
    isolated_configs.set("streams", 8)
    isolated_configs.delete_defaults()
    assert not Defaults.CONFIG_PATH.exists()
    assert isolated_configs.get("streams") == 1


@pytest.mark.localtest
def test_global_configs_singleton():
    assert isinstance(masim.configs, Defaults)
    assert masim.masim_config.configs is masim.configs


@pytest.mark.localtest
def test_unknown_keys(isolated_configs):
    with pytest.raises(ConfigurationError):
        isolated_configs.set("colour", "blue")

    Defaults.CONFIG_PATH.parent.mkdir(parents=True)
    Defaults.CONFIG_PATH.write_text("seed: 3\ncolour: blue\n")
    assert Defaults().load_defaults_from_file() == {"seed": 3}


@pytest.mark.localtest
def test_malformed_config_file(isolated_configs):
    Defaults.CONFIG_PATH.parent.mkdir(parents=True)
    Defaults.CONFIG_PATH.write_text("- just\n- a list\n")
    with pytest.raises(ConfigurationError):
        Defaults().get("seed")


# ------------------------- LOGGING ----------------------------------


@pytest.mark.localtest
def test_utc_formatter():
    record = logging.LogRecord("masim", logging.INFO, __file__, 1, "hello", None, None)
    record.created = 0.0
    formatter = UTCFormatter("%(asctime)s %(message)s")
    assert formatter.format(record) == "1970-01-01T00:00:00.000+00:00 hello"
    assert formatter.formatTime(record, datefmt="%Y") == "1970"


@pytest.mark.localtest
def test_configure_logging():
    configure_logging()
    assert logging.getLogger("masim").level == logging.INFO
    configure_logging(verbose=True)
    assert logging.getLogger("masim").level == logging.DEBUG
    configure_logging()
    assert logging.getLogger("masim").level == logging.INFO


if __name__ == "__main__":
    unittest.main()
