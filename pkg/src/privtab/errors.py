"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: configuration and load problems exit
with 2, infeasible transforms with 3, degenerate evaluations with 4.
"""


class PrivtabError(Exception):
    """Base class for all package errors."""


class LoadError(PrivtabError):
    """CSV or role-configuration problem detected while loading data."""


class TargetNotBinaryError(LoadError):
    """Target column cannot be coerced to {0, 1}."""


class ConfigError(PrivtabError):
    """Run configuration is missing, malformed, or inconsistent."""


class TransformError(PrivtabError):
    """A protection step cannot be applied."""


class PlanError(TransformError):
    """Plan is invalid against the dataset schema (bad target, wrong kind)."""


class AllSuppressedError(TransformError):
    """k-anonymity would suppress every row (k exceeds the row count)."""


class UnsatisfiableError(TransformError):
    """l-diversity demands more distinct sensitive values than exist."""


class EvaluationError(PrivtabError):
    """Utility or risk evaluation cannot produce a meaningful result."""


class NoUsableFeaturesError(EvaluationError):
    """Every feature column was dropped during encoding."""


class DegenerateFoldError(EvaluationError):
    """A test fold lost an entire target class."""


class DivergedError(EvaluationError):
    """Logistic-regression training produced a non-finite loss."""

    def __init__(self, epoch: int):
        super().__init__(f"training loss became non-finite at epoch {epoch}")
        self.epoch = epoch
