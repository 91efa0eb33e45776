"""Exception hierarchy.

Every error carries a module-qualified ``code`` so that the command line
front end can report failures in a machine-readable way.
"""

from __future__ import annotations


class AutomatonError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> dict:
        out = {"code": self.code, "message": self.message}
        if self.details:
            out["details"] = {k: _plain(v) for k, v in self.details.items()}
        return out


def _plain(value):
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return str(value)


class BadIndex(AutomatonError):
    code = "core.index"


class ParseError(AutomatonError):
    code = "core.parse"

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message, line=line)
        self.line = line


class InvalidAutomaton(AutomatonError):
    code = "core.invalid"


class CodeError(AutomatonError):
    code = "core.code"


class SizeLimitExceeded(AutomatonError):
    code = "kernel.size"


class NotAGroup(AutomatonError):
    code = "classify.not_a_group"


class NotSchreier(AutomatonError):
    code = "classify.not_schreier"


class NotCayley(AutomatonError):
    code = "classify.not_cayley"


class NotSubgroup(AutomatonError):
    code = "groups.not_subgroup"


class PermutationError(AutomatonError):
    code = "groups.permutation"


class UnknownCorpus(AutomatonError):
    code = "groups.unknown_corpus"


class SingularSystem(AutomatonError):
    code = "fractions.singular"


class ZeroConstantTerm(AutomatonError):
    code = "fractions.zero_constant_term"


class Cancelled(AutomatonError):
    code = "fractions.cancelled"


class AmbiguousRoot(AutomatonError):
    code = "frequency.ambiguous_root"


class HypothesisFailure(AutomatonError):
    code = "frequency.hypothesis"


class EnumerationBound(AutomatonError):
    code = "frequency.bound"
