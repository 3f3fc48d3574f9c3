import logging
import logging.config
from datetime import datetime, timezone


class UTCFormatter(logging.Formatter):
    """Renders ``asctime`` as an ISO-8601 UTC timestamp with millisecond precision."""

    def formatTime(self, record, datefmt=None):
        stamp = datetime.fromtimestamp(record.created, tz=timezone.utc)
        if datefmt:
            return stamp.strftime(datefmt)
        return stamp.isoformat(timespec="milliseconds")


LOGGING_CONFIG = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "utc": {
            "()": UTCFormatter,
            "format": "%(levelname)s | %(asctime)s | %(name)s | %(message)s",
        },
    },
    "handlers": {
        "stderr": {
            "level": "DEBUG",
            "formatter": "utc",
            "class": "logging.StreamHandler",
            # stdout carries the CSV / JSON payloads
            "stream": "ext://sys.stderr",
        },
    },
    "loggers": {
        "": {"handlers": ["stderr"], "level": "WARNING", "propagate": False},
        "masim": {"handlers": ["stderr"], "level": "INFO", "propagate": False},
    },
}


def configure_logging(verbose: bool = False):
    """Install :data:`LOGGING_CONFIG`, lowering the ``masim`` logger to DEBUG when verbose."""
    logging.config.dictConfig(LOGGING_CONFIG)
    if verbose:
        logging.getLogger("masim").setLevel(logging.DEBUG)
