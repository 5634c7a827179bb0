"""Exception types shared across the package."""


class NcfreeError(Exception):
    """Base class for all package errors."""


class GeneratorCountMismatch(NcfreeError):
    """Binary operation on values over different free algebras."""


class IndexOutOfRange(NcfreeError):
    """Generator index outside 1..n."""


class DegreeBoundExceeded(NcfreeError):
    """A trace evaluation was requested beyond the configured degree bound."""


class UnknownMoment(NcfreeError):
    """An explicit moment table has no entry for the requested word."""


class NonPositiveMoments(NcfreeError):
    """A self-pairing came out negative: the moment data is not positive."""


class EvaluationError(NcfreeError):
    """Bad matrix assignment passed to polynomial evaluation."""


class ConjugateCheckFailed(NcfreeError):
    """A computation required verified conjugate relations but the check failed."""

    def __init__(self, report):
        self.report = report
        super().__init__(
            f"conjugate relations failed at degree {report.max_degree_checked}: "
            f"{len(report.failures)} failing word(s)"
        )
