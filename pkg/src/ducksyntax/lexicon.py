"""Lexicon entries, the line-oriented lexicon file format, and validation.

A lexicon has three tables. Function words (``fw``) are interfaces: each
entry names the behaviors an implementation must support and the output
type it guarantees. Content words (``cw``) carry one or more weighted use
profiles, each a bundle of behaviors. Saturated words (``sat``: pronouns,
proper names) are self-typed and need no interface.

Two header directives make the engine's composition tables data rather than
code: ``offers`` lists what a fulfilled object of a given type can offer to
an enclosing contract, ``adjuncts`` lists which objects a root object admits
by retroactive attachment.
"""

from __future__ import annotations

import enum
import io
import re
import sys
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from importlib import resources
from typing import Iterable, TextIO

__all__ = [
    "OutputType",
    "InterfaceSpec",
    "UseProfile",
    "LexemeEntry",
    "SaturatedEntry",
    "OffersRule",
    "Lexicon",
    "LexiconError",
    "LexiconSyntaxError",
    "DuplicateUseName",
    "Finding",
    "ValidationReport",
    "behavior",
    "load_lexicon",
    "load_bundled",
    "dump_lexicon",
    "validate_lexicon",
]

_NAME = re.compile(r"[a-z][a-z0-9_]*\Z")


class OutputType(str, enum.Enum):
    DP = "DP"
    VP = "VP"
    ADJP = "ADJP"
    ADVP = "ADVP"
    SUBCL = "SUBCL"
    RELCL = "RELCL"
    INTCL = "INTCL"

    def __str__(self) -> str:
        return self.value


class LexiconError(Exception):
    pass


class LexiconSyntaxError(LexiconError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class DuplicateUseName(LexiconError):
    def __init__(self, form: str, use: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}duplicate use {use!r} for {form!r}")
        self.form = form
        self.use = use
        self.line = line


def behavior(name: str) -> str:
    """Validate and intern a behavior (or feature) identifier."""
    if not _NAME.match(name):
        raise ValueError(f"bad identifier {name!r}")
    return sys.intern(name)


@dataclass(frozen=True)
class InterfaceSpec:
    form: str
    out: OutputType
    requires: frozenset[str]
    confers: frozenset[str] = frozenset()
    finite: bool = False
    entry_rank: int = 0

    def __str__(self) -> str:
        return f"{self.form}→{self.out}"


@dataclass(frozen=True)
class UseProfile:
    use_name: str
    behaviors: frozenset[str]
    weight: Decimal


@dataclass(frozen=True)
class LexemeEntry:
    form: str
    uses: tuple[UseProfile, ...]

    def __post_init__(self):
        if not self.uses:
            raise ValueError(f"{self.form!r}: a content word needs at least one use")
        names = [u.use_name for u in self.uses]
        for i, name in enumerate(names):
            if name in names[:i]:
                raise DuplicateUseName(self.form, name)
        # weight desc; sorted() is stable so equal weights keep file order
        ordered = tuple(sorted(self.uses, key=lambda u: -u.weight))
        object.__setattr__(self, "uses", ordered)

    @property
    def top(self) -> UseProfile:
        return self.uses[0]


@dataclass(frozen=True)
class SaturatedEntry:
    form: str
    out: OutputType
    behaviors: frozenset[str]


@dataclass(frozen=True)
class OffersRule:
    out: OutputType
    behaviors: frozenset[str]
    # None applies regardless of finiteness
    finite: bool | None = None


@dataclass(frozen=True)
class Lexicon:
    fw: dict[str, tuple[InterfaceSpec, ...]] = field(default_factory=dict)
    cw: dict[str, LexemeEntry] = field(default_factory=dict)
    sat: dict[str, SaturatedEntry] = field(default_factory=dict)
    offers: tuple[OffersRule, ...] = ()
    adjuncts: dict[str, frozenset[str]] = field(default_factory=dict)

    def interfaces(self) -> list[InterfaceSpec]:
        return [spec for specs in self.fw.values() for spec in specs]

    def offers_for(self, out: str, finite: bool) -> frozenset[str]:
        found: set[str] = set()
        for rule in self.offers:
            if rule.out == out and rule.finite in (None, finite):
                found |= rule.behaviors
        return frozenset(found)

    def finite_behaviors(self) -> frozenset[str]:
        """Behaviors offered only by finite objects; a bare use carrying one is finite."""
        found: set[str] = set()
        for rule in self.offers:
            if rule.finite:
                found |= rule.behaviors
        return frozenset(found)

    def admits(self, host_out: str, adjunct_out: str) -> bool:
        return adjunct_out in self.adjuncts.get(host_out, ())

    def all_use_behaviors(self) -> frozenset[str]:
        found: set[str] = set()
        for entry in self.cw.values():
            for use in entry.uses:
                found |= use.behaviors
        return frozenset(found)


# -- loading ---------------------------------------------------------------


def _split_list(value: str, lineno: int, what: str) -> frozenset[str]:
    if not value:
        return frozenset()
    try:
        return frozenset(behavior(v) for v in value.split(","))
    except ValueError as exc:
        raise LexiconSyntaxError(lineno, f"{what}: {exc}") from None


def _out(value: str | None, lineno: int) -> OutputType:
    if value is None:
        raise LexiconSyntaxError(lineno, "out missing")
    try:
        return OutputType(value)
    except ValueError:
        raise LexiconSyntaxError(lineno, f"unknown output type {value!r}") from None


def _keyvals(fields: list[str], lineno: int, allowed: set[str], flags: set[str] = frozenset()):
    values: dict[str, str] = {}
    seen_flags: set[str] = set()
    for item in fields:
        if "=" not in item:
            if item in flags:
                seen_flags.add(item)
                continue
            raise LexiconSyntaxError(lineno, f"unexpected field {item!r}")
        key, _, value = item.partition("=")
        if key not in allowed:
            raise LexiconSyntaxError(lineno, f"unknown key {key!r}")
        if key in values:
            raise LexiconSyntaxError(lineno, f"repeated key {key!r}")
        values[key] = value
    return values, seen_flags


def _parse_use(text: str, lineno: int) -> UseProfile:
    parts = text.split(":")
    if len(parts) != 3:
        raise LexiconSyntaxError(lineno, f"use must be name:behaviors:weight, got {text!r}")
    name, behaviors, weight = parts
    if not _NAME.match(name):
        raise LexiconSyntaxError(lineno, f"bad use name {name!r}")
    bset = _split_list(behaviors, lineno, "use behaviors")
    if not bset:
        raise LexiconSyntaxError(lineno, f"use {name!r} has no behaviors")
    try:
        w = Decimal(weight)
    except InvalidOperation:
        raise LexiconSyntaxError(lineno, f"bad weight {weight!r}") from None
    if not (w.is_finite() and 0 < w <= 1):
        raise LexiconSyntaxError(lineno, f"weight {weight} outside (0,1]")
    return UseProfile(sys.intern(name), bset, w)


def load_lexicon(source: TextIO | str, *, lenient: bool = False) -> Lexicon:
    """Parse a lexicon from a text stream (or a string).

    With ``lenient=True`` an ``fw`` line whose ``requires`` list is present
    but empty is accepted, so that :func:`validate_lexicon` can report it.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    fw: dict[str, list[InterfaceSpec]] = {}
    cw: dict[str, LexemeEntry] = {}
    sat_raw: list[tuple[str, OutputType, frozenset[str] | None]] = []
    offers: list[OffersRule] = []
    adjuncts: dict[str, frozenset[str]] = {}

    for lineno, raw in enumerate(source, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kind, *rest = line.split()
        if kind in ("fw", "cw", "sat"):
            if not rest:
                raise LexiconSyntaxError(lineno, f"{kind} line without a form")
            form, fields = rest[0], rest[1:]
        else:
            fields = rest

        if kind == "fw":
            vals, flags = _keyvals(fields, lineno, {"out", "requires", "confers"}, {"finite"})
            out = _out(vals.get("out"), lineno)
            requires = _split_list(vals.get("requires", ""), lineno, "requires")
            if "requires" not in vals or (not requires and not lenient):
                raise LexiconSyntaxError(lineno, "requires missing/empty")
            specs = fw.setdefault(form, [])
            specs.append(InterfaceSpec(
                form=form,
                out=out,
                requires=requires,
                confers=_split_list(vals.get("confers", ""), lineno, "confers"),
                finite="finite" in flags,
                entry_rank=len(specs),
            ))
        elif kind == "cw":
            if form in cw:
                raise LexiconSyntaxError(lineno, f"content word {form!r} defined twice")
            uses = []
            for item in fields:
                key, eq, value = item.partition("=")
                if key != "use" or not eq:
                    raise LexiconSyntaxError(lineno, f"unexpected field {item!r}")
                use = _parse_use(value, lineno)
                if any(u.use_name == use.use_name for u in uses):
                    raise DuplicateUseName(form, use.use_name, lineno)
                uses.append(use)
            if not uses:
                raise LexiconSyntaxError(lineno, "content word without uses")
            cw[form] = LexemeEntry(form, tuple(uses))
        elif kind == "sat":
            if any(f == form for f, _, _ in sat_raw):
                raise LexiconSyntaxError(lineno, f"saturated word {form!r} defined twice")
            vals, _ = _keyvals(fields, lineno, {"out", "behaviors"})
            bset = _split_list(vals["behaviors"], lineno, "behaviors") if "behaviors" in vals else None
            sat_raw.append((form, _out(vals.get("out"), lineno), bset))
        elif kind == "offers":
            if not fields:
                raise LexiconSyntaxError(lineno, "offers needs an output type")
            vals, flags = _keyvals(fields[1:], lineno, {"behaviors"}, {"finite", "nonfinite"})
            if len(flags) > 1:
                raise LexiconSyntaxError(lineno, "finite and nonfinite are exclusive")
            qual = None if not flags else ("finite" in flags)
            offers.append(OffersRule(
                _out(fields[0], lineno),
                _split_list(vals.get("behaviors", ""), lineno, "behaviors"),
                qual,
            ))
        elif kind == "adjuncts":
            if not fields:
                raise LexiconSyntaxError(lineno, "adjuncts needs a host label")
            host = fields[0]
            vals, _ = _keyvals(fields[1:], lineno, {"accepts"})
            labels = frozenset(v for v in vals.get("accepts", "").split(",") if v)
            adjuncts[host] = adjuncts.get(host, frozenset()) | labels
        else:
            raise LexiconSyntaxError(lineno, f"unknown line kind {kind!r}")

    lex_offers = tuple(offers)
    sat = {}
    for form, out, bset in sat_raw:
        if bset is None:
            # default: whatever a fulfilled object of the same type offers
            bset = frozenset().union(*(r.behaviors for r in lex_offers if r.out == out))
        sat[form] = SaturatedEntry(form, out, bset)
    return Lexicon(
        fw={form: tuple(specs) for form, specs in fw.items()},
        cw=cw,
        sat=sat,
        offers=lex_offers,
        adjuncts=adjuncts,
    )


def load_bundled() -> Lexicon:
    """The English lexicon shipped with the package."""
    text = resources.files("ducksyntax.data").joinpath("english.lex").read_text("utf-8")
    return load_lexicon(text)


# -- serialization ---------------------------------------------------------


def _join(items: Iterable[str]) -> str:
    return ",".join(sorted(items))


def dump_lexicon(lex: Lexicon) -> str:
    lines = []
    for rule in lex.offers:
        qual = "" if rule.finite is None else (" finite" if rule.finite else " nonfinite")
        lines.append(f"offers {rule.out} behaviors={_join(rule.behaviors)}{qual}")
    for host, labels in lex.adjuncts.items():
        lines.append(f"adjuncts {host} accepts={_join(labels)}")
    for specs in lex.fw.values():
        for s in sorted(specs, key=lambda s: s.entry_rank):
            line = f"fw {s.form} out={s.out} requires={_join(s.requires)}"
            if s.confers:
                line += f" confers={_join(s.confers)}"
            if s.finite:
                line += " finite"
            lines.append(line)
    for entry in lex.sat.values():
        lines.append(f"sat {entry.form} out={entry.out} behaviors={_join(entry.behaviors)}")
    for entry in lex.cw.values():
        uses = " ".join(f"use={u.use_name}:{_join(u.behaviors)}:{u.weight}" for u in entry.uses)
        lines.append(f"cw {entry.form} {uses}")
    return "\n".join(lines) + "\n"


# -- validation ------------------------------------------------------------


@dataclass(frozen=True)
class Finding:
    kind: str
    subjects: tuple[str, ...]
    message: str

    def __str__(self) -> str:
        return f"{self.kind}({', '.join(self.subjects)}): {self.message}"


@dataclass
class ValidationReport:
    errors: list[Finding] = field(default_factory=list)
    warnings: list[Finding] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def of_kind(self, kind: str) -> list[Finding]:
        return [f for f in self.errors + self.warnings if f.kind == kind]


def validate_lexicon(lex: Lexicon) -> ValidationReport:
    """Check the closed-class constraints that keep interfaces stable.

    Errors make a lexicon unusable. Warnings flag function-word synonyms,
    content-word uses no interface can ever accept, and interfaces that no
    word in the lexicon could ever implement.
    """
    report = ValidationReport()
    specs = lex.interfaces()

    for spec in specs:
        if not spec.requires:
            report.errors.append(Finding(
                "EmptyRequires", (spec.form,), f"{spec} requires no behavior"))
    # a function word must not also vary by use the way a content word does
    for form in lex.fw:
        if form in lex.cw:
            report.errors.append(Finding(
                "InterfaceUseAlternatives", (form,),
                f"function word {form!r} also declares content-word uses"))

    seen: dict[tuple, InterfaceSpec] = {}
    for spec in specs:
        key = (spec.out, spec.requires, spec.confers, spec.finite)
        other = seen.get(key)
        if other is not None and other.form != spec.form:
            report.warnings.append(Finding(
                "SynonymWarning", (other.form, spec.form),
                f"{other} and {spec} are indistinguishable interfaces"))
        else:
            seen.setdefault(key, spec)

    live_specs = [s for s in specs if s.requires]
    for entry in lex.cw.values():
        for use in entry.uses:
            if not any(s.requires <= use.behaviors for s in live_specs):
                report.warnings.append(Finding(
                    "UnreachableUse", (entry.form, use.use_name),
                    f"no interface accepts {entry.form}:{use.use_name}"))

    available = lex.all_use_behaviors().union(*(e.behaviors for e in lex.sat.values()))
    for spec in specs:
        missing = spec.requires - available
        if missing:
            report.warnings.append(Finding(
                "UnsatisfiableInterface", (spec.form,),
                f"{spec} requires {_join(missing)}, offered by no word"))
    return report
