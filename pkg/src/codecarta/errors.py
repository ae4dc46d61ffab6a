"""Exception types shared across the toolchain."""

from __future__ import annotations


class CodecartaError(Exception):
    """Base class for all errors raised by this package."""


class TokenParseError(CodecartaError):
    """Malformed token text; carries the byte offset of the first bad character."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class AmbiguousSiblingsError(CodecartaError):
    """Two siblings share (kind rank, name, disambiguator); names the parent."""

    def __init__(self, parent_name: str, name: str, disambiguator: str):
        detail = f" [{disambiguator}]" if disambiguator else ""
        super().__init__(
            f"ambiguous siblings under {parent_name!r}: duplicate name {name!r}{detail}"
        )
        self.parent_name = parent_name


class NotFoundError(CodecartaError):
    """A token, relation, or named item does not exist."""


class KindError(CodecartaError):
    """An operation was applied to an entity of the wrong kind."""


class GraphValidationError(CodecartaError):
    """A graph failed validation; carries the full report."""

    def __init__(self, report):
        lines = "; ".join(str(v) for v in report.violations[:5])
        more = "" if len(report.violations) <= 5 else f" (+{len(report.violations) - 5} more)"
        super().__init__(f"invalid graph: {lines}{more}")
        self.report = report


class SchemaVersionError(CodecartaError):
    """A document declares a schema version this build does not accept."""


class DocumentFormatError(CodecartaError):
    """A document is malformed; message includes the path or offset."""


class DiagnosticsFormatError(CodecartaError):
    """A diagnostics report record is malformed; carries the 1-based line number."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class QueryCompileError(CodecartaError):
    """A query failed to compile; carries the 0-based source position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class PatternError(QueryCompileError):
    """Invalid regular expression in a regex-mode query."""


class ExprSyntaxError(QueryCompileError):
    """Syntax error in a predicate expression."""


class ExprTypeError(QueryCompileError):
    """Operand types do not fit the operator or function."""


class ExprNameError(QueryCompileError):
    """Unknown field or function name; lists the valid names."""

    def __init__(self, name: str, position: int, valid: tuple[str, ...]):
        super().__init__(
            f"unknown name {name!r}; valid fields: {', '.join(valid)}", position
        )
        self.name = name
        self.valid = valid


class StateError(CodecartaError):
    """A view operation was applied to a token that is not visible."""


class StructureError(CodecartaError):
    """Input that must be a forest is not one."""


class WorkspaceError(CodecartaError):
    """The miner could not read or recognize the workspace root."""


class EmptyWorkspaceError(WorkspaceError):
    """No entities could be discovered under the root path."""


class ParameterError(CodecartaError):
    """Infeasible or invalid configuration parameters."""


class BuildError(CodecartaError):
    """The bundler is missing an input it needs; message says how to produce it."""
