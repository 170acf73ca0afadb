"""Exception types shared across the toolkit."""

from __future__ import annotations


class AuditError(Exception):
    """Base class for all toolkit errors."""


class ManifestError(AuditError):
    """Manifest file is malformed or violates a manifest invariant."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        prefix = ""
        if path is not None:
            prefix = f"{path}: "
            if line is not None:
                prefix = f"{path}:{line}: "
        super().__init__(prefix + message)


class PredictionError(AuditError):
    """Prediction file is malformed or violates a score invariant."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        prefix = ""
        if path is not None:
            prefix = f"{path}: "
            if line is not None:
                prefix = f"{path}:{line}: "
        super().__init__(prefix + message)


class JoinError(AuditError):
    """Manifest and predictions do not join bijectively."""

    def __init__(self, message: str, missing_ids: list[str] | None = None,
                 orphan_ids: list[str] | None = None):
        self.missing_ids = list(missing_ids or [])
        self.orphan_ids = list(orphan_ids or [])
        super().__init__(message)


class EmptyGroupError(AuditError):
    """A group selector matched no rows where a nonempty group is required."""

    def __init__(self, selector_name: str):
        self.selector_name = selector_name
        super().__init__(f"group {selector_name!r} selected no rows")


class MetricError(AuditError):
    """A metric cannot be computed from the given inputs."""


class CompressionError(AuditError):
    """Image re-encoding failed; carries per-file failures."""

    def __init__(self, message: str, failures: list[tuple[str, str]] | None = None):
        # failures: (image_id, reason) pairs
        self.failures = list(failures or [])
        super().__init__(message)


class ComparisonError(AuditError):
    """Two audit results cannot be compared."""


class ConfigError(AuditError):
    """Audit configuration is invalid."""
