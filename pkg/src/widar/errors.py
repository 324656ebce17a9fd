"""Exception types raised across the toolkit."""

from __future__ import annotations


class WidarError(ValueError):
    """Base class for all toolkit errors."""


class EmptyInput(WidarError):
    pass


class EmptyDocument(EmptyInput):
    pass


class NoReferences(EmptyInput):
    pass


class LengthMismatch(WidarError):
    pass


class AllTied(WidarError):
    """Kendall's tau is undefined: no concordant or discordant pair exists."""


class MissingJudgment(WidarError):
    def __init__(self, ids):
        self.ids = sorted(ids)
        shown = ", ".join(self.ids[:10])
        more = f" (+{len(self.ids) - 10} more)" if len(self.ids) > 10 else ""
        super().__init__(f"no judgment for record id(s): {shown}{more}")


class CorpusError(WidarError):
    """Problem reading a corpus file; carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class ParseError(CorpusError):
    pass


class DuplicateId(CorpusError):
    pass


class MissingField(CorpusError):
    def __init__(self, field: str, line: int | None = None):
        self.field = field
        super().__init__(f"missing field {field!r}", line)


class MixedConfig(WidarError):
    """Score rows from different metric configurations were combined."""
