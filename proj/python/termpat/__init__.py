"""Pattern-based multiword term extraction from POS-tagged text."""

from ._termpat import (
    Corpus,
    DomainError,
    Grammar,
    IoError,
    Matcher,
    ParseError,
    TagMap,
    TermpatError,
    Token,
    coverage,
    evaluate,
    extract,
    format_percent,
    log_likelihood,
    tag_names,
)

__all__ = [
    "Corpus",
    "DomainError",
    "Grammar",
    "IoError",
    "Matcher",
    "ParseError",
    "TagMap",
    "TermpatError",
    "Token",
    "coverage",
    "evaluate",
    "extract",
    "format_percent",
    "log_likelihood",
    "tag_names",
]
