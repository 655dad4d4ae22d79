# by analogy with google.api_core.exceptions: a small hierarchy whose
# classes carry the exit code the command line reports for them


class MulticutError(Exception):
    code = 1

    def __init__(self, message: str = '') -> None:
        super().__init__(message)
        self.message = message


class InvalidArgument(MulticutError, ValueError):
    code = 2


class SelfLoop(InvalidArgument):
    pass


class DuplicateEdge(InvalidArgument):
    pass


class NodeOutOfRange(InvalidArgument):
    pass


class InvalidEdge(InvalidArgument):
    pass


class InvalidNode(InvalidArgument):
    pass


class IncompleteAssignment(InvalidArgument):
    pass


class ZeroLength(InvalidArgument):
    pass


class SameTerminals(InvalidArgument):
    pass


class DimensionMismatch(InvalidArgument):
    pass


class EvenN(InvalidArgument):
    pass


class TooSmall(InvalidArgument):
    pass


class BadParams(InvalidArgument):
    pass


class BadBreakpoints(InvalidArgument):
    pass


class NotAPath(InvalidArgument):
    pass


class PairMissing(InvalidArgument):
    pass


class NotASubgraph(InvalidArgument):
    pass


class TerminalMismatch(InvalidArgument):
    pass


class BadAttachment(InvalidArgument):
    pass


class TerminalInside(InvalidArgument):
    pass


class NodeNotInSupport(InvalidArgument):
    pass


class NotATree(InvalidArgument):
    pass


class KTooLarge(InvalidArgument):
    pass


class LTooLarge(InvalidArgument):
    pass


class Empty(InvalidArgument):
    pass


class NotFullDimensional(InvalidArgument):
    pass


class ParseError(InvalidArgument):
    def __init__(self, message: str, line: int = None) -> None:
        if line is not None:
            message = 'line {}: {}'.format(line, message)
        super().__init__(message)
        self.line = line


class FailedPrecondition(MulticutError):
    pass


class NotValid(FailedPrecondition):
    pass


class NotAFacet(FailedPrecondition):
    pass


class BudgetExceeded(MulticutError):
    code = 3


class Infeasible(MulticutError):
    pass


class Unbounded(MulticutError):
    pass
