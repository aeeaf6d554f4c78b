class SchemeLabError(Exception):
    """Base class for every error raised by schemelab."""


class CapExceededError(SchemeLabError):
    pass


class GroupError(SchemeLabError):
    pass


class NotASubgroupError(GroupError):
    pass


class AxiomError(SchemeLabError):
    """An association-scheme axiom fails.

    ``axiom`` is one of ``"A1"``, ``"A2"``, ``"A3"`` or ``"commutative"`` and
    ``witness`` holds the concrete counterexample (pairs, class indices,
    counts) that was found first.
    """

    def __init__(self, axiom, message, witness=None):
        super().__init__(f"{axiom}: {message}")
        self.axiom = axiom
        self.witness = witness


class EigenError(SchemeLabError):
    pass


class LabelingError(SchemeLabError):
    pass


class AnnihilatorError(SchemeLabError):
    pass


class LPError(SchemeLabError):
    pass


class InfeasibleError(LPError):
    pass


class UnboundedError(LPError):
    pass
