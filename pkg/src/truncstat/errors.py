"""Exception hierarchy.

Every error carries a module-qualified ``code`` so the command line front end
can report failures as a single machine-parsable line.
"""


class TruncstatError(Exception):
    module = "truncstat"

    @property
    def code(self):
        return f"{self.module}.{type(self).__name__}"


# sample_model

class SampleError(TruncstatError, ValueError):
    module = "sample"


class EmptySample(SampleError):
    def __init__(self):
        super().__init__("sample contains no observations")


class NonFinite(SampleError):
    def __init__(self, row):
        self.row = row
        super().__init__(f"non-finite value in row {row}")


class TruncationViolated(SampleError):
    def __init__(self, rows):
        self.rows = list(rows)
        super().__init__(f"y > x in rows {self.rows}")


class OracleInconsistent(SampleError):
    def __init__(self, point, count):
        self.point = point
        self.count = count
        super().__init__(
            f"F* has no jump at x={point!r} but {count} observations are tied there")


# estimator

class EstimatorError(TruncstatError, ValueError):
    module = "estimator"


class TiesPresent(EstimatorError):
    def __init__(self):
        super().__init__("operation requires a tie-free sample")


# inference

class InferenceError(TruncstatError, ValueError):
    module = "inference"


class ScoreUndefinedAt(InferenceError):
    def __init__(self, point):
        self.point = point
        super().__init__(f"tabulated score has no value at {point!r}")


class DegenerateSample(InferenceError):
    def __init__(self, n):
        self.n = n
        super().__init__(f"need at least 2 observations, got {n}")


class QuadratureFailure(InferenceError):
    def __init__(self, what, detail=""):
        self.what = what
        self.detail = detail
        super().__init__(f"quadrature failed for {what}: {detail}")


class ModelSampleMismatch(InferenceError):
    def __init__(self, points):
        self.points = list(points)
        super().__init__(f"observations outside the model's risk region: {self.points[:5]}")


# simulation

class SimulationError(TruncstatError, ValueError):
    module = "simulation"


class UnknownFamily(SimulationError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown model family {name!r}")


class InvalidParameters(SimulationError):
    pass


class RejectionBudgetExceeded(SimulationError):
    def __init__(self, accepted, wanted, attempts):
        self.accepted = accepted
        self.wanted = wanted
        self.attempts = attempts
        super().__init__(
            f"accepted {accepted} of {wanted} pairs after {attempts} attempts")


# cli_io

class InputError(TruncstatError, ValueError):
    module = "cli"


class FileNotFound(InputError):
    def __init__(self, path):
        self.path = str(path)
        super().__init__(f"no such file: {self.path}")


class BadHeader(InputError):
    def __init__(self, header):
        self.header = header
        super().__init__(f"expected header 'x,y', got {header!r}")


class BadNumber(InputError):
    def __init__(self, row, column):
        self.row = row
        self.column = column
        super().__init__(f"cannot parse number at row {row}, column {column}")


class ConfigError(InputError):
    pass


class AssumptionWarning(UserWarning):
    """Data hint that the identifiability condition a_G <= a_F may fail."""
