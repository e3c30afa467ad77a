"""Incremental left-to-right parsing over a stack of open contracts.

Every function word opens a contract the moment it is read; its output type
is known from then on. Content words either fulfil the innermost contract
(being cast to a use it accepts) or wait in its buffer. A fulfilled object
climbs outward, fulfilling further contracts while it offers what they
require. Material that arrives with no contract open is integrated after the
fact, by attaching it to the preceding root object; those integrations are
what the facilitation metric counts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from decimal import Decimal
from typing import Iterable, NamedTuple

from .composer import (
    Contract,
    Token,
    TypedObject,
    attach_adjunct,
    bare_object,
    buffer_dependent,
    fulfill,
    fulfill_with,
    open_contract,
    saturated_object,
)
from .lexicon import InterfaceSpec, LexemeEntry, Lexicon, UseProfile
from .typecore import NoImplementingUse, cast, implements

__all__ = [
    "EventKind",
    "Event",
    "ParseTrace",
    "Metrics",
    "ParserState",
    "ParseResult",
    "UnfulfilledContract",
    "OOV_USE",
    "tokenize",
    "handle_oov",
    "step",
    "parse",
    "parse_text",
    "facilitation_metric",
]

OOV_USE = "oov"


class EventKind(str, enum.Enum):
    OPEN = "OPEN"
    FULFILL = "FULFILL"
    CAST = "CAST"
    BUFFER = "BUFFER"
    RETRO_ATTACH = "RETRO_ATTACH"
    BACKTRACK = "BACKTRACK"
    EMIT = "EMIT"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Event:
    index: int
    kind: EventKind
    detail: str

    def __str__(self) -> str:
        return f"{self.index}\t{self.kind}\t{self.detail}"


@dataclass(frozen=True)
class ParseTrace:
    events: tuple[Event, ...] = ()

    def add(self, index: int, kind: EventKind, detail: str) -> "ParseTrace":
        return ParseTrace(self.events + (Event(index, kind, detail),))

    def of_kind(self, kind: EventKind) -> list[Event]:
        return [e for e in self.events if e.kind == kind]

    def __iter__(self):
        return iter(self.events)

    def __len__(self):
        return len(self.events)

    def __str__(self) -> str:
        return "\n".join(str(e) for e in self.events)


@dataclass(frozen=True)
class Metrics:
    retro_count: int = 0
    backtrack_count: int = 0
    open_token_count: int = 0


@dataclass(frozen=True)
class ChoicePoint:
    index: int
    form: str
    rank: int
    count: int


@dataclass(frozen=True)
class ParserState:
    stack: tuple[Contract, ...] = ()
    emitted: tuple[TypedObject, ...] = ()
    trace: ParseTrace = field(default_factory=ParseTrace)
    retro_count: int = 0
    backtrack_count: int = 0
    open_token_count: int = 0
    choices: tuple[ChoicePoint, ...] = ()

    def log(self, index: int, kind: EventKind, detail: str) -> "ParserState":
        return replace(self, trace=self.trace.add(index, kind, detail))


class ParseResult(NamedTuple):
    objects: list[TypedObject]
    trace: ParseTrace
    metrics: Metrics


class UnfulfilledContract(Exception):
    def __init__(self, fw_token: Token, spec: InterfaceSpec, trace: ParseTrace | None = None):
        super().__init__(f"unfulfilled contract: {fw_token.text} → {spec.out}")
        self.fw_token = fw_token
        self.spec = spec
        self.trace = trace or ParseTrace()


_PUNCT = ".,;:!?\"'()[]"


def tokenize(text: str) -> list[Token]:
    """Whitespace split, lowercased, punctuation at either end dropped."""
    words = (w.strip(_PUNCT) for w in text.lower().split())
    return [Token(w, i) for i, w in enumerate(w for w in words if w)]


def handle_oov(token: Token, lex: Lexicon) -> LexemeEntry:
    """A wildcard entry for an unknown word: it can do anything any use can do.

    Unknown words are open-class by definition and never treated as
    function words.
    """
    return LexemeEntry(token.text, (UseProfile(OOV_USE, lex.all_use_behaviors(), Decimal(1)),))


def _place_root(state: ParserState, obj: TypedObject, lex: Lexicon, index: int) -> ParserState:
    # contract-built objects integrate for free; only interface-less ones cost
    guided = obj.kind == "typed"
    if state.emitted:
        host = state.emitted[-1]
        if lex.admits(host.out, obj.out):
            detail = f"{obj.describe()} onto {host.describe()}"
            state = replace(
                state,
                emitted=state.emitted[:-1] + (attach_adjunct(host, obj),),
                retro_count=state.retro_count + (0 if guided else 1),
            )
            return state.log(index, EventKind.RETRO_ATTACH, detail + (" (guided)" if guided else ""))
    state = replace(state, emitted=state.emitted + (obj,))
    if guided:
        # its FULFILL event already marks where it surfaced
        return state
    return state.log(index, EventKind.EMIT, obj.describe())


def _climb(state: ParserState, obj: TypedObject, lex: Lexicon, index: int) -> ParserState:
    """Push a just-fulfilled object outward through the open contracts."""
    state = state.log(index, EventKind.FULFILL, obj.describe())
    while state.stack:
        c = state.stack[-1]
        if implements(obj.offers, c.spec):
            obj = fulfill_with(c, obj, lex)
            state = replace(state, stack=state.stack[:-1])
            state = state.log(index, EventKind.FULFILL, obj.describe())
            continue
        state = replace(state, stack=state.stack[:-1] + (buffer_dependent(c, obj),))
        return state.log(index, EventKind.BUFFER, f"{obj.describe()} into {c.spec}")
    return _place_root(state, obj, lex, index)


def step(state: ParserState, token: Token, lex: Lexicon, *, choice: int = 0) -> ParserState:
    """Integrate one token.

    ``choice`` selects among a function word's entries (entry rank); the
    parse driver varies it when backtracking.
    """
    was_open = bool(state.stack)
    specs = lex.fw.get(token.text)
    if specs:
        spec = specs[choice]
        choices = state.choices
        if len(specs) > 1:
            choices += (ChoicePoint(token.index, token.text, choice, len(specs)),)
        state = replace(
            state,
            stack=state.stack + (open_contract(spec, token),),
            choices=choices,
            open_token_count=state.open_token_count + 1,
        )
        return state.log(token.index, EventKind.OPEN, str(spec))

    if was_open:
        state = replace(state, open_token_count=state.open_token_count + 1)
    sat = lex.sat.get(token.text)
    entry = sat or lex.cw.get(token.text) or handle_oov(token, lex)

    if state.stack:
        c = state.stack[-1]
        try:
            result = cast(entry, c.spec)
        except NoImplementingUse:
            pass
        else:
            state = state.log(token.index, EventKind.CAST, f"{token.text}:{result.chosen_use}")
            obj = fulfill(c, token, result, lex)
            state = replace(state, stack=state.stack[:-1])
            return _climb(state, obj, lex, token.index)

    obj = saturated_object(token, sat) if sat else bare_object(token, entry, lex)
    if state.stack:
        c = state.stack[-1]
        state = replace(state, stack=state.stack[:-1] + (buffer_dependent(c, obj),))
        return state.log(token.index, EventKind.BUFFER, f"{obj.describe()} into {c.spec}")
    return _place_root(state, obj, lex, token.index)


def _run(tokens: list[Token], lex: Lexicon, plan: dict[int, int]) -> ParserState:
    state = ParserState()
    for tok in tokens:
        state = step(state, tok, lex, choice=plan.get(tok.index, 0))
    return state


def parse(tokens: Iterable[Token], lex: Lexicon) -> ParseResult:
    """Parse one utterance.

    If contracts remain open at the end, the most recent function word with
    an untried entry is re-read with its next entry and the parse restarts
    from there (chronological backtracking). When no alternative is left the
    failure of the first, preferred reading is raised.
    """
    tokens = list(tokens)
    plan: dict[int, int] = {}
    retries: list[Event] = []
    first_failure: UnfulfilledContract | None = None
    while True:
        state = _run(tokens, lex, plan)
        if not state.stack:
            break
        if first_failure is None:
            c = state.stack[-1]
            first_failure = UnfulfilledContract(c.fw_token, c.spec, state.trace)
        for point in reversed(state.choices):
            if point.rank + 1 < point.count:
                break
        else:
            raise first_failure
        plan = {p.index: p.rank for p in state.choices if p.index < point.index}
        plan[point.index] = point.rank + 1
        retry = lex.fw[point.form][point.rank + 1]
        retries.append(Event(point.index, EventKind.BACKTRACK, str(retry)))

    # retries happened before the final pass, so they lead their index group
    events = sorted(retries + list(state.trace.events), key=lambda e: e.index)
    metrics = Metrics(state.retro_count, len(retries), state.open_token_count)
    return ParseResult(list(state.emitted), ParseTrace(tuple(events)), metrics)


def parse_text(text: str, lex: Lexicon) -> ParseResult:
    return parse(tokenize(text), lex)


def facilitation_metric(m: Metrics) -> int:
    """Integrations the parser had to make without a contract guiding them."""
    return m.retro_count + m.backtrack_count
