"""Exception types shared across the package."""


class DucorrError(Exception):
    """Base class for package errors."""


class ConfigurationError(DucorrError):
    """Invalid run parameters (odd L, bad geometry, malformed config file)."""


class BudgetError(DucorrError):
    """Requested computation exceeds the configured memory/size budget."""


class DiagnosticError(DucorrError):
    """A numerical routine finished but failed its internal quality check."""
