"""Duck typing: behavior-set inclusion and casting a word to a fitting use."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .lexicon import InterfaceSpec, LexemeEntry, SaturatedEntry

__all__ = ["CastResult", "NoImplementingUse", "implements", "cast", "SAT_USE"]

SAT_USE = "sat"

Entry = Union[LexemeEntry, SaturatedEntry]


class NoImplementingUse(Exception):
    def __init__(self, form: str, spec: InterfaceSpec):
        super().__init__(f"{form!r} has no use implementing {spec}")
        self.form = form
        self.spec = spec


@dataclass(frozen=True)
class CastResult:
    entry: Entry
    chosen_use: str
    satisfied: InterfaceSpec

    @property
    def behaviors(self) -> frozenset[str]:
        if isinstance(self.entry, SaturatedEntry):
            return self.entry.behaviors
        for use in self.entry.uses:
            if use.use_name == self.chosen_use:
                return use.behaviors
        raise KeyError(self.chosen_use)


def implements(candidate, spec: InterfaceSpec) -> bool:
    """The duck test: ``candidate`` has every behavior ``spec`` asks for.

    Extra behaviors never block acceptance. An empty ``requires`` would accept
    anything, so such a spec accepts nothing instead.
    """
    return bool(spec.requires) and spec.requires <= frozenset(candidate)


def cast(entry: Entry, spec: InterfaceSpec) -> CastResult:
    """Pick the use of ``entry`` that ``spec`` accepts.

    The heaviest satisfying use wins; ties go to the earlier use. Only the
    behavior sets are consulted, never the use names.
    """
    if isinstance(entry, SaturatedEntry):
        if implements(entry.behaviors, spec):
            return CastResult(entry, SAT_USE, spec)
        raise NoImplementingUse(entry.form, spec)

    best = None
    for position, use in enumerate(entry.uses):
        if not implements(use.behaviors, spec):
            continue
        if best is None or use.weight > best[1].weight:
            best = (position, use)
    if best is None:
        raise NoImplementingUse(entry.form, spec)
    return CastResult(entry, best[1].use_name, spec)
