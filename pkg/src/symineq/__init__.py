"""Exact verification of inequalities among term-normalized symmetric functions."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    CertificateError,
    ClaimViolation,
    DivisibilityError,
    DomainError,
    ParseError,
    ResourceLimitError,
)
from .partitions import Partition, counterexample_pair, enumerate_partitions, majorizes  # noqa: E402
from .symmetric import EvalPoint, Family, eval_normalized  # noqa: E402
