"""Error codes, positions and the per-article error report.

The code table is small and fixed; docs/errors.md is the user-facing
copy.  Codes sort and print as ``file:line:col: code``.
"""

from __future__ import annotations

from dataclasses import dataclass

ERROR_MESSAGES = {
    51: "Invalid skeleton step",
    52: "Type mismatch",
    53: "Attributed type has no existence registration",
    61: "Inference not accepted by the checker",
    62: "Scheme instantiation: sign mismatch on a scheme variable",
    63: "Scheme instantiation: head mismatch",
    64: "Scheme instantiation: conflicting assignment",
    65: "Scheme instantiation: wrong number of premises",
    66: "Clause limit exceeded while normalizing the goal",
    70: "Something remains to be proved",
    71: "Statement does not match the shape of the thesis",
    90: "Syntax error",
    91: "Unknown identifier",
    92: "Wrong number of arguments",
    93: "Duplicate label",
    94: "Malformed flexary conjunction",
    95: "Construct requires a requirement that is not enabled",
}


@dataclass(frozen=True)
class SourcePos:
    line: int  # 1-based
    col: int  # 1-based

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


@dataclass(frozen=True)
class VerifyError:
    pos: SourcePos
    code: int

    @property
    def message(self) -> str:
        return ERROR_MESSAGES.get(self.code, "Unknown error")


class MizarError(Exception):
    """Internal signal carrying a reportable error."""

    def __init__(self, pos: SourcePos, code: int, note: str = ""):
        super().__init__(f"{pos}: {code}" + (f" ({note})" if note else ""))
        self.pos = pos
        self.code = code
        self.note = note

    def to_error(self) -> VerifyError:
        return VerifyError(self.pos, self.code)


class RequirementFileError(Exception):
    """Raised for problems in the requirements table file itself."""
