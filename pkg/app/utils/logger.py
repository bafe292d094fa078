import logging

from rich.console import Console
from rich.logging import RichHandler

from app.utils.error import ConfigError

_RESERVED = set(logging.LogRecord("", 0, "", 0, "", None, None).__dict__) | {
    "message",
    "asctime",
}


class ExtraFormatter(logging.Formatter):
    """Appends the `extra={...}` context of a record as key=value pairs."""

    def format(self, record: logging.LogRecord) -> str:
        message = super().format(record)
        context = {
            key: value
            for key, value in record.__dict__.items()
            if key not in _RESERVED and not key.startswith("_")
        }
        if not context:
            return message
        pairs = " ".join(f"{key}={value}" for key, value in sorted(context.items()))
        return f"{message} [{pairs}]"


def _build_logger() -> logging.Logger:
    root = logging.getLogger("gv_classes")
    if not root.handlers:
        handler = RichHandler(
            console=Console(stderr=True),
            show_path=False,
            rich_tracebacks=True,
        )
        handler.setFormatter(ExtraFormatter("%(message)s"))
        root.addHandler(handler)
    root.propagate = False
    root.setLevel(logging.WARNING)
    return root


logger = _build_logger()


def configure_logging(level: str) -> None:
    name = level.upper()
    if name not in logging.getLevelNamesMapping():
        raise ConfigError(f"unknown log level {level!r}")
    logger.setLevel(name)
