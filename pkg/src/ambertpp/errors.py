"""Exception hierarchy shared across the toolkit.

Every error carries a ``category`` used by the CLI to derive stable exit
codes: ``config`` (bad parameters/flags), ``data`` (invalid sequences or
inputs), ``numeric`` (non-finite or diverging computation) and ``io``
(file problems).
"""

from __future__ import annotations


class TPPError(Exception):
    """Base class for all toolkit errors."""

    category = "data"


# --- event-core ---------------------------------------------------------

class NonMonotoneTimes(TPPError):
    """Event times are not strictly increasing."""


class UnknownType(TPPError):
    """Event type id is not present in the catalog."""


class LabelMismatch(TPPError):
    """Sequence label inconsistent with adverse-event placement."""


class TooShort(TPPError):
    """Sequence has fewer than the minimum number of events."""


class EmptyBatch(TPPError):
    """pad_batch called with no sequences."""


class BadRatios(TPPError):
    category = "config"


class ParseError(TPPError):
    """Malformed record in a sequence file; carries the 1-based line number."""

    category = "io"

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DuplicateSequenceId(TPPError):
    category = "io"


# --- classical-tpp ------------------------------------------------------

class HistoryAfterQuery(TPPError):
    """Intensity queried at a time not strictly after all history events."""


class ExplosionGuard(TPPError):
    """Thinning simulation exceeded the event-count safety limit."""

    category = "numeric"


class NonStationary(TPPError):
    """Excitation matrix violates the sub-criticality guard."""

    category = "config"


# --- diff-core ----------------------------------------------------------

class ShapeMismatch(TPPError):
    category = "config"


class NonFinite(TPPError):
    """A primitive produced NaN or Inf."""

    category = "numeric"


class NonScalarLoss(TPPError):
    category = "config"


# --- neural-models ------------------------------------------------------

class ConfigMismatch(TPPError):
    category = "config"


class UnsupportedForIF(TPPError):
    """The intensity-free model exposes a density, not an intensity."""

    category = "config"


class NonPositiveGap(TPPError):
    """Inter-event gap must be strictly positive."""


class QuadratureOverflow(TPPError):
    """Too much probability mass beyond the quadrature truncation horizon."""

    category = "numeric"


# --- training / evaluation ----------------------------------------------

class NonFiniteLoss(TPPError):
    category = "numeric"


class EmptySplit(TPPError):
    pass


class EmptySequence(TPPError):
    pass


class HorizonOverflow(TPPError):
    """Rollout predicted a time far beyond the prefix span."""

    category = "numeric"


# --- clinical-ingest ----------------------------------------------------

class EmptyCohort(TPPError):
    pass
