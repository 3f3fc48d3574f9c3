import logging
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from masim.exceptions import ConfigurationError

logger = logging.getLogger(__name__)


class Defaults:
    """User-level defaults for masim, kept in a yaml file in the user's home directory.

    :meth:`get` looks in the yaml file first, then at ``alt``, then at :data:`BASE_DEFAULTS`.
    Command-line flags and ``MASIM_SEED`` are resolved by the CLI before it falls back here.
    """

    CONFIG_PATH = Path("~/.masim/config.yaml").expanduser()
    BASE_DEFAULTS = {
        "dist": "normal",
        "seed": 0,
        "streams": 1,
        "d_max": 64,
        "format": "csv",
        "parallel_backend": "threads",
        "max_workers": None,
        "mc_samples": 1_000_000,
        "oracle_d_max": 20,
    }

    def __init__(self):
        self._cache: Dict[str, Any] = {}

    @property
    def defaults_cache(self) -> Dict[str, Any]:
        if not self._cache:
            self._cache = self.load_defaults_from_file()
        return self._cache

    @defaults_cache.setter
    def defaults_cache(self, value: Dict):
        self._cache = dict(value)

    def _path(self, config_path: Optional[str]) -> Path:
        return Path(config_path or self.CONFIG_PATH).expanduser()

    def load_defaults_from_file(self, config_path: Optional[str] = None) -> Dict:
        path = self._path(config_path)
        if not path.exists():
            return {}

        loaded = yaml.safe_load(path.read_text()) or {}
        if not isinstance(loaded, dict):
            raise ConfigurationError(
                f"Expected a mapping in {path}, got {type(loaded).__name__}"
            )
        unknown = sorted(set(loaded) - set(self.BASE_DEFAULTS))
        if unknown:
            logger.warning(f"Ignoring unknown keys in {path}: {unknown}")
        logger.info(f"Loaded masim config from {path}")
        return {key: value for key, value in loaded.items() if key in self.BASE_DEFAULTS}

    def save_defaults(
        self, defaults: Optional[Dict] = None, config_path: Optional[str] = None
    ):
        path = self._path(config_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(yaml.safe_dump(dict(defaults or self.defaults_cache)))

    def set(self, key: str, value: Any, config_path: Optional[str] = None):
        if key not in self.BASE_DEFAULTS:
            raise ConfigurationError(
                f"Unknown config key {key!r}, expected one of {sorted(self.BASE_DEFAULTS)}"
            )
        self.defaults_cache[key] = value
        self.save_defaults(config_path=config_path)

    def get(self, key: str, alt: Any = None) -> Any:
        # None means unset at every level, so a saved 0 still wins
        value = self.defaults_cache.get(key)
        if value is None:
            value = alt
        if value is None:
            value = self.BASE_DEFAULTS.get(key)
        return value

    def delete_defaults(self, config_path: Optional[str] = None):
        path = self._path(config_path)
        try:
            path.unlink(missing_ok=True)
        except OSError as e:
            raise ConfigurationError(f"Failed to delete config file {path}: {e}")
        logger.info(f"Deleted masim config at {path}")
        self._cache = {}
