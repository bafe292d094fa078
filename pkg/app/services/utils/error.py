class ServiceError(Exception):
    """Base exception for service layer errors.

    Service errors describe a completed run whose result did not check out,
    so the response is still rendered before exiting with `exit_code`.
    """

    message = "Service check failed"
    exit_code = 1

    def __init__(self, detail: str = "") -> None:
        self.detail = detail
        super().__init__(f"{self.message}: {detail}" if detail else self.message)


class VerificationMismatchError(ServiceError):
    """Raised when a computed constant disagrees with its closed form."""

    message = "Table verification failed"

    def __init__(self, failed: int, total: int) -> None:
        self.failed = failed
        self.total = total
        super().__init__(f"{failed} of {total} table rows do not match")


class AxiomViolationError(ServiceError):
    """A built algebra fails one of its validation checks."""

    message = "Lie algebra validation failed"

    def __init__(self, family: str, axioms: list[str]) -> None:
        self.family = family
        self.axioms = axioms
        super().__init__(f"{family}: {len(axioms)} failed check(s), first {axioms[0]}")
