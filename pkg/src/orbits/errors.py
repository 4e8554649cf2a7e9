"""Exception types raised across the package."""

from __future__ import annotations


class OrbitsError(Exception):
    """Base class for all errors raised by this package."""


class CyclicPriority(OrbitsError):
    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__("priority relation is cyclic: " + " > ".join(self.cycle))


class PriorityOutsideConflict(OrbitsError):
    def __init__(self, pair):
        self.pair = tuple(pair)
        super().__init__(f"priority pair {self.pair[0]} > {self.pair[1]} does not lie in any conflict")


class DuplicateAssertion(OrbitsError):
    def __init__(self, ident, detail=""):
        self.id = ident
        super().__init__(f"duplicate assertion {ident}" + (f": {detail}" if detail else ""))


class InconsistentInput(OrbitsError):
    """Entailment was requested over a T-inconsistent set of assertions."""


class NotASubset(OrbitsError):
    def __init__(self, unknown):
        self.unknown = tuple(sorted(unknown))
        super().__init__("unknown assertion ids: " + ", ".join(self.unknown))


class NotAPreorder(OrbitsError):
    pass


class NotStratified(OrbitsError):
    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__("program is not stratified; negative cycle through " + ", ".join(self.cycle))


class TooLarge(OrbitsError):
    pass


class ParseError(OrbitsError):
    def __init__(self, line, message):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


class UndeclaredName(ParseError):
    pass
