"""Platform description file format (".mechx").

Line-oriented, whitespace-tokenized, one statement per line:

    platform "simple-robot"
    kind artificial
    group "gripper" count 1 states 2
    group "servo" count 2 range 0 360 resolution 0.1
    group "led" count 1 states 2 tag "non-mechanical"

Statements: platform, kind, year, processor, note, group.  "#" starts a
comment; blank lines are ignored; strings are double-quoted with
backslash escapes; numbers are decimal or scientific notation.  The
serializer emits a canonical form (LF, one statement per line, shortest
round-trip numbers) that is a parse fixpoint.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from typing import Iterable, Optional

from .model import (
    Continuous,
    DiscreteStates,
    DofGroup,
    Platform,
    ProcessorSpec,
    resolve_levels,
    span_is_integral,
)


class SpecFileError(ValueError):
    """Base for description-file problems; carries a 1-based line number
    (0 when the problem is not tied to a specific line)."""

    def __init__(self, line: int, message: str):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line else message)


class ParseError(SpecFileError):
    pass


class DuplicateGroupLabel(ParseError):
    pass


class MissingPlatformName(ParseError):
    def __init__(self, line: int = 0):
        super().__init__(line, "document has no 'platform' statement")


class DatasetCorrupt(RuntimeError):
    """A bundled data file failed strict parsing; indicates a packaging bug."""


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    line: int
    message: str

    def __str__(self):
        return f"{self.severity.value}: line {self.line}: {self.message}"


@dataclass(frozen=True)
class PlatformDocument:
    """A parsed platform plus bookkeeping about where items came from.

    ``source_line_map`` keys: "platform", "kind", "year", "processor",
    "note[<i>]", and "group:<label>".  ``scientific_transistors`` records
    whether the transistor count was written in scientific or fractional
    notation (it is stored rounded to an int either way).
    """

    platform: Platform
    source_line_map: dict[str, int] = field(default_factory=dict)
    scientific_transistors: bool = False
    kind_defaulted: bool = False


_WORD_RE = re.compile(r"[^\s\"#]+")
_INT_RE = re.compile(r"[+-]?\d+\Z")
_NUM_RE = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?\Z")
_ESCAPES = {"\\": "\\", '"': '"', "n": "\n", "t": "\t"}


@dataclass(frozen=True)
class _Token:
    kind: str  # "word" or "string"
    text: str


def _tokenize(line: str, lineno: int) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(line)
    while i < n:
        ch = line[i]
        if ch in " \t\r":
            i += 1
            continue
        if ch == "#":
            break
        if ch == '"':
            i += 1
            out: list[str] = []
            while True:
                if i >= n:
                    raise ParseError(lineno, "unterminated string literal")
                ch = line[i]
                if ch == '"':
                    i += 1
                    break
                if ch == "\\":
                    if i + 1 >= n:
                        raise ParseError(lineno, "dangling backslash in string")
                    esc = line[i + 1]
                    if esc not in _ESCAPES:
                        raise ParseError(
                            lineno, f"unknown escape sequence '\\{esc}'"
                        )
                    out.append(_ESCAPES[esc])
                    i += 2
                    continue
                out.append(ch)
                i += 1
            tokens.append(_Token("string", "".join(out)))
            continue
        m = _WORD_RE.match(line, i)
        assert m is not None
        tokens.append(_Token("word", m.group()))
        i = m.end()
    return tokens


def _escape(s: str) -> str:
    s = s.replace("\\", "\\\\").replace('"', '\\"')
    s = s.replace("\n", "\\n").replace("\t", "\\t")
    return f'"{s}"'


def _fmt_num(x: float) -> str:
    # Shortest round-trip decimal; integral values drop the fraction.
    if x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


class _Cursor:
    """Token stream for one line, with positioned error reporting."""

    def __init__(self, tokens: list[_Token], lineno: int):
        self.tokens = tokens
        self.lineno = lineno
        self.pos = 0

    def done(self) -> bool:
        return self.pos >= len(self.tokens)

    def _next(self, what: str) -> _Token:
        if self.done():
            raise ParseError(self.lineno, f"expected {what}, found end of line")
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def string(self, what: str) -> str:
        tok = self._next(what)
        if tok.kind != "string":
            raise ParseError(
                self.lineno, f"expected {what} (a quoted string), found {tok.text!r}"
            )
        return tok.text

    def keyword(self, word: str) -> None:
        tok = self._next(f"'{word}'")
        if tok.kind != "word" or tok.text != word:
            raise ParseError(self.lineno, f"expected '{word}', found {tok.text!r}")

    def integer(self, what: str) -> int:
        tok = self._next(what)
        if tok.kind != "word" or not _INT_RE.match(tok.text):
            raise ParseError(
                self.lineno, f"expected {what} (an integer), found {tok.text!r}"
            )
        return int(tok.text)

    def number(self, what: str) -> tuple[float, str]:
        tok = self._next(what)
        if tok.kind != "word" or not _NUM_RE.match(tok.text):
            raise ParseError(
                self.lineno, f"expected {what} (a number), found {tok.text!r}"
            )
        return float(tok.text), tok.text

    def peek_word(self) -> Optional[str]:
        if self.done():
            return None
        tok = self.tokens[self.pos]
        return tok.text if tok.kind == "word" else None

    def end(self) -> None:
        if not self.done():
            tok = self.tokens[self.pos]
            raise ParseError(
                self.lineno, f"unexpected trailing token {tok.text!r}"
            )


def _parse_group(cur: _Cursor) -> DofGroup:
    label = cur.string("group label")
    cur.keyword("count")
    count = cur.integer("multiplicity")
    kw = cur.peek_word()
    if kw == "states":
        cur.keyword("states")
        levels: object = DiscreteStates(cur.integer("state count"))
    elif kw == "range":
        cur.keyword("range")
        lo, _ = cur.number("range minimum")
        hi, _ = cur.number("range maximum")
        cur.keyword("resolution")
        res, _ = cur.number("resolution")
        levels = Continuous(minimum=lo, maximum=hi, resolution=res)
    else:
        found = repr(kw) if kw is not None else "end of line"
        raise ParseError(cur.lineno, f"expected 'states' or 'range', found {found}")
    tags: list[str] = []
    while not cur.done():
        cur.keyword("tag")
        tags.append(cur.string("tag value"))
    return DofGroup(
        label=label, multiplicity=count, levels_spec=levels, tags=frozenset(tags)
    )


def parse_platform(text: str) -> PlatformDocument:
    """Parse a description document into a PlatformDocument.

    Raises ParseError (with line number) for grammar violations,
    DuplicateGroupLabel for repeated group labels, MissingPlatformName
    when no platform statement is present.
    """
    name: Optional[str] = None
    kind: Optional[str] = None
    year: Optional[int] = None
    processor: Optional[ProcessorSpec] = None
    notes: list[str] = []
    groups: list[DofGroup] = []
    line_map: dict[str, int] = {}
    scientific = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(raw, lineno)
        if not tokens:
            continue
        head = tokens[0]
        if head.kind != "word":
            raise ParseError(lineno, f"expected a keyword, found string {head.text!r}")
        cur = _Cursor(tokens, lineno)
        cur.pos = 1
        if head.text == "platform":
            if name is not None:
                raise ParseError(lineno, "duplicate 'platform' statement")
            name = cur.string("platform name")
            if not name:
                raise ParseError(lineno, "platform name must be non-empty")
            line_map["platform"] = lineno
        elif head.text == "kind":
            if kind is not None:
                raise ParseError(lineno, "duplicate 'kind' statement")
            tok = cur._next("'artificial' or 'natural'")
            if tok.kind != "word" or tok.text not in ("artificial", "natural"):
                raise ParseError(
                    lineno,
                    f"expected 'artificial' or 'natural', found {tok.text!r}",
                )
            kind = tok.text
            line_map["kind"] = lineno
        elif head.text == "year":
            if year is not None:
                raise ParseError(lineno, "duplicate 'year' statement")
            year = cur.integer("year")
            line_map["year"] = lineno
        elif head.text == "processor":
            if processor is not None:
                raise ParseError(lineno, "duplicate 'processor' statement")
            pname = ""
            if not cur.done() and cur.tokens[cur.pos].kind == "string":
                pname = cur.string("processor name")
            cur.keyword("transistors")
            value, literal = cur.number("transistor count")
            if value < 0 or not float(value).is_integer():
                raise ParseError(
                    lineno,
                    f"transistor count must be a nonnegative integer, "
                    f"found {literal!r}",
                )
            scientific = any(c in literal for c in "eE.")
            processor = ProcessorSpec(name=pname, transistors=int(value))
            line_map["processor"] = lineno
        elif head.text == "note":
            notes.append(cur.string("note text"))
            line_map[f"note[{len(notes) - 1}]"] = lineno
        elif head.text == "group":
            try:
                group = _parse_group(cur)
            except ParseError:
                raise
            except ValueError as exc:
                raise ParseError(lineno, str(exc)) from exc
            if any(g.label == group.label for g in groups):
                raise DuplicateGroupLabel(
                    lineno, f"duplicate group label {group.label!r}"
                )
            groups.append(group)
            line_map[f"group:{group.label}"] = lineno
        else:
            raise ParseError(lineno, f"unknown keyword {head.text!r}")
        cur.end()

    if name is None:
        raise MissingPlatformName()
    kind_defaulted = kind is None
    try:
        platform = Platform(
            name=name,
            kind=kind if kind is not None else "artificial",
            groups=tuple(groups),
            year=year,
            processor=processor,
            notes=tuple(notes),
        )
    except ValueError as exc:
        raise ParseError(0, str(exc)) from exc
    return PlatformDocument(
        platform=platform,
        source_line_map=line_map,
        scientific_transistors=scientific,
        kind_defaulted=kind_defaulted,
    )


def serialize_platform(platform: Platform) -> str:
    """Canonical text form: metadata first, groups in stored order, LF
    line endings, shortest round-trip numbers.  parse(serialize(p)) is
    semantically equal to p."""
    lines = [f"platform {_escape(platform.name)}"]
    lines.append(f"kind {platform.kind}")
    if platform.year is not None:
        lines.append(f"year {platform.year}")
    if platform.processor is not None:
        p = platform.processor
        if p.name:
            lines.append(
                f"processor {_escape(p.name)} transistors {p.transistors}"
            )
        else:
            lines.append(f"processor transistors {p.transistors}")
    for note in platform.notes:
        lines.append(f"note {_escape(note)}")
    for g in platform.groups:
        spec = g.levels_spec
        if isinstance(spec, DiscreteStates):
            levels = f"states {spec.count}"
        else:
            levels = (
                f"range {_fmt_num(spec.minimum)} {_fmt_num(spec.maximum)} "
                f"resolution {_fmt_num(spec.resolution)}"
            )
        line = f"group {_escape(g.label)} count {g.multiplicity} {levels}"
        for tag in sorted(g.tags):
            line += f" tag {_escape(tag)}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def serialize_document(doc: PlatformDocument) -> str:
    return serialize_platform(doc.platform)


# Marker note prefix for bundled stubs whose capacity cannot be computed
# from the available description (no ranges given).
NON_COMPUTABLE_PREFIX = "non-computable"


def is_computable(platform: Platform) -> bool:
    return bool(platform.groups) and not any(
        n.startswith(NON_COMPUTABLE_PREFIX) for n in platform.notes
    )


def validate(doc: PlatformDocument) -> list[Diagnostic]:
    """Lint a parsed document.  Errors mean downstream analysis will fail
    in strict mode; warnings are advisory (informational notices are
    issued at warning severity, prefixed "informational:")."""
    out: list[Diagnostic] = []
    p = doc.platform
    lm = doc.source_line_map

    for g in p.groups:
        line = lm.get(f"group:{g.label}", 0)
        if not span_is_integral(g):
            spec = g.levels_spec
            ratio = (spec.maximum - spec.minimum) / spec.resolution
            out.append(
                Diagnostic(
                    Severity.WARNING,
                    line,
                    f"group {g.label!r}: span/resolution = {ratio!r} is not "
                    f"integral; strict analysis will reject this document",
                )
            )
    if p.kind == "natural" and p.processor is not None:
        out.append(
            Diagnostic(
                Severity.WARNING,
                lm.get("processor", 0),
                "natural platform declares a processor",
            )
        )
    if doc.scientific_transistors:
        out.append(
            Diagnostic(
                Severity.WARNING,
                lm.get("processor", 0),
                "transistor count was written in scientific or fractional "
                "notation; stored as a rounded integer",
            )
        )
    if p.kind == "artificial" and p.processor is None:
        out.append(
            Diagnostic(
                Severity.WARNING,
                lm.get("platform", 0),
                "informational: artificial platform has no processor entry",
            )
        )
    if doc.kind_defaulted:
        out.append(
            Diagnostic(
                Severity.WARNING,
                lm.get("platform", 0),
                "informational: no 'kind' statement; assumed artificial",
            )
        )
    if not p.groups:
        out.append(
            Diagnostic(
                Severity.WARNING,
                lm.get("platform", 0),
                "informational: platform has no groups; capacity is zero bits",
            )
        )
    out.sort(key=lambda d: (d.line, d.message))
    return out


# Bundled dataset ------------------------------------------------------------

# File stems under mechx/data; the documented manifest.
DATASET_MANIFEST = (
    "aibo",
    "asimo",
    "baxter",
    "bellagio",
    "bellagio-all-oarsmen",
    "bellagio-hi-res",
    "big-dog",
    "c-elegans-agar",
    "c-elegans-anatomy",
    "cat",
    "cheetah",
    "darwin",
    "drosophila",
    "human-breath",
    "human-mocap",
    "human-wa-eval",
    "keepon",
    "khepera-iv",
    "kismet",
    "kr60ha",
    "lbr-iiwa",
    "little-dog",
    "nao",
    "packbot",
    "pr2",
    "robonaut2",
    "robosapien",
    "roomba",
    "simon",
)

_dataset_lock = threading.Lock()
_dataset_cache: Optional[tuple[PlatformDocument, ...]] = None


def _read_data_file(stem: str) -> str:
    return (
        resources.files("mechx").joinpath("data").joinpath(f"{stem}.mechx")
    ).read_text(encoding="utf-8")


def load_dataset() -> list[PlatformDocument]:
    """All bundled platform documents, in manifest order.  Parsed once per
    process; any failure is a packaging bug surfaced as DatasetCorrupt."""
    global _dataset_cache
    with _dataset_lock:
        if _dataset_cache is None:
            docs = []
            for stem in DATASET_MANIFEST:
                try:
                    docs.append(parse_platform(_read_data_file(stem)))
                except (FileNotFoundError, SpecFileError) as exc:
                    raise DatasetCorrupt(f"{stem}.mechx: {exc}") from exc
            _dataset_cache = tuple(docs)
    return list(_dataset_cache)


def _normalize(name: str) -> str:
    return re.sub(r"[^a-z0-9]+", "-", name.lower()).strip("-")


def dataset_lookup(name: str) -> PlatformDocument:
    """Find a bundled document by file stem or platform name (both
    case-insensitive; punctuation folds to hyphens)."""
    wanted = _normalize(name)
    for stem, doc in zip(DATASET_MANIFEST, load_dataset()):
        if wanted == stem or wanted == _normalize(doc.platform.name):
            return doc
    raise KeyError(f"no bundled platform matches {name!r}")
