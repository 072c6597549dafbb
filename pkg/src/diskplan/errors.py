"""Exception types raised by the planning library."""


class PlanningError(Exception):
    """Base class for all library-specific errors."""


class InvalidWorkspace(PlanningError):
    """Workspace polygon is malformed (self-intersecting, holes outside, ...)."""


class PositionOutsideFreeSpace(PlanningError):
    """A start/target/query position does not keep unit clearance from obstacles."""


class InfeasibleMatching(PlanningError):
    """Every perfect start-target matching has infinite geodesic cost."""


class NoInterruptingTarget(PlanningError):
    """No target exists that leaves every other assigned path unblocked.

    Under the documented separation constraints this cannot happen, so seeing
    this error means the input violated the constraints (or numerics broke).
    """


class InvalidSwitch(PlanningError):
    """Switch construction attempted with a non-qualifying blocker."""


class NotInterrupting(PlanningError):
    """Clearance path requested for a position that blocks the driver path."""


class ExtensionBlocked(PlanningError):
    """Path extension requires the first/last edge to be a straight segment."""


class NotSimplePolygon(PlanningError):
    """Operation requires a simple polygon workspace (no holes, no disks)."""


class AmbiguousCell(PlanningError):
    """Query point sits on a cell boundary; its displacement direction is undefined."""


class SeparationViolation(PlanningError):
    """Robot separation preconditions for a corridor motion are not met."""


class ConstraintViolation(PlanningError):
    """Instance fails the separation constraints required by the planner."""


class InfeasibleInstance(PlanningError):
    """No plan exists (unbalanced components, wrong labeling mode, ...)."""


class MalformedPlan(PlanningError):
    """Motion plan is structurally invalid (bad phases, discontinuities, ...)."""


class GenerationFailed(PlanningError):
    """Random fixture generation exhausted its retry budget."""
