class ConfigError(Exception):
    """Settings that cannot be loaded: a missing file, a bad value or an unknown log level."""

    message = "Invalid configuration"
    exit_code = 2

    def __init__(self, detail: str = "") -> None:
        self.detail = detail
        super().__init__(f"{self.message}: {detail}" if detail else self.message)
