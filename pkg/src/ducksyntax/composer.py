"""Contracts opened by function words and the typed objects that fulfil them."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional, Union

from .lexicon import InterfaceSpec, Lexicon, OutputType
from .typecore import SAT_USE, CastResult

__all__ = [
    "Token",
    "Interface",
    "Lexical",
    "Contract",
    "TypedObject",
    "CompositionError",
    "OrderViolation",
    "AdjunctOnInterface",
    "MustFulfill",
    "open_contract",
    "fulfill",
    "fulfill_with",
    "buffer_dependent",
    "attach_adjunct",
    "bare_object",
    "saturated_object",
]


class CompositionError(Exception):
    pass


class OrderViolation(CompositionError):
    """The implementation does not follow its function word."""


class AdjunctOnInterface(CompositionError):
    """Something tried to modify the function word itself."""


class MustFulfill(CompositionError):
    """A dependent that satisfies the contract cannot merely be buffered."""


@dataclass(frozen=True)
class Token:
    text: str
    index: int


@dataclass(frozen=True)
class Interface:
    token: Token
    spec: InterfaceSpec


@dataclass(frozen=True)
class Lexical:
    """A single word acting as an implementation or as a bare object."""

    token: Token
    use: str
    cast: Optional[CastResult] = None


@dataclass(frozen=True)
class TypedObject:
    out: str
    span: tuple[int, int]
    interface: Optional[Interface] = None
    implementation: Union[Lexical, "TypedObject", None] = None
    dependents: tuple["TypedObject", ...] = ()
    # attached after the fact, always to the right of the implementation
    adjuncts: tuple["TypedObject", ...] = ()
    features: frozenset[str] = frozenset()
    finite: bool = False
    offers: frozenset[str] = frozenset()

    @property
    def kind(self) -> str:
        if self.interface is not None:
            return "typed"
        if isinstance(self.implementation, Lexical) and self.implementation.use == SAT_USE:
            return "sat"
        return "bare"

    @property
    def head(self) -> Lexical:
        """The lexical head, following phrasal implementations down."""
        impl = self.implementation
        while isinstance(impl, TypedObject):
            impl = impl.implementation
        assert isinstance(impl, Lexical)
        return impl

    def describe(self) -> str:
        kind = self.kind
        if kind == "typed":
            return f"{self.out}[{self.span[0]},{self.span[1]}]"
        head = self.head
        if kind == "sat":
            return f"{self.out} sat:{head.token.text}"
        return f"bare {head.token.text}:{head.use}"

    def token_indices(self) -> list[int]:
        found = []
        if self.interface is not None:
            found.append(self.interface.token.index)
        if isinstance(self.implementation, Lexical):
            found.append(self.implementation.token.index)
        elif self.implementation is not None:
            found.extend(self.implementation.token_indices())
        for dep in self.dependents + self.adjuncts:
            found.extend(dep.token_indices())
        return sorted(found)

    def walk(self):
        yield self
        if isinstance(self.implementation, TypedObject):
            yield from self.implementation.walk()
        for dep in self.dependents + self.adjuncts:
            yield from dep.walk()


@dataclass(frozen=True)
class Contract:
    spec: InterfaceSpec
    fw_token: Token
    buffer: tuple[TypedObject, ...] = ()

    @property
    def opened_at(self) -> int:
        return self.fw_token.index

    @property
    def guaranteed(self) -> OutputType:
        return self.spec.out


def open_contract(spec: InterfaceSpec, fw_token: Token) -> Contract:
    return Contract(spec, fw_token)


def _close(c: Contract, impl, impl_end: int, lex: Lexicon | None) -> TypedObject:
    end = max([impl_end] + [d.span[1] for d in c.buffer])
    spec = c.spec
    offers = lex.offers_for(spec.out, spec.finite) if lex is not None else frozenset()
    return TypedObject(
        out=spec.out,
        span=(c.fw_token.index, end),
        interface=Interface(c.fw_token, spec),
        implementation=impl,
        dependents=c.buffer,
        features=spec.confers,
        finite=spec.finite,
        offers=offers,
    )


def fulfill(c: Contract, impl_token: Token, cast_result: CastResult,
            lex: Lexicon | None = None) -> TypedObject:
    """Close ``c`` with a single word cast to one of its uses.

    The result's type, features and finiteness come from the interface alone;
    ``lex`` supplies the offers table for what the object offers upward.
    """
    if impl_token.index <= c.fw_token.index:
        raise OrderViolation(
            f"{impl_token.text!r}@{impl_token.index} cannot implement "
            f"{c.spec}@{c.fw_token.index}")
    if cast_result.satisfied != c.spec:
        raise ValueError(f"cast was made against {cast_result.satisfied}, not {c.spec}")
    impl = Lexical(impl_token, cast_result.chosen_use, cast_result)
    return _close(c, impl, impl_token.index, lex)


def fulfill_with(c: Contract, obj: TypedObject, lex: Lexicon | None = None) -> TypedObject:
    """Close ``c`` with an already built object (e.g. a DP under a copula)."""
    if obj.span[0] <= c.fw_token.index:
        raise OrderViolation(f"{obj.describe()} cannot implement {c.spec}@{c.fw_token.index}")
    if not (c.spec.requires and c.spec.requires <= obj.offers):
        raise CompositionError(f"{obj.describe()} does not offer what {c.spec} requires")
    return _close(c, obj, obj.span[1], lex)


def buffer_dependent(c: Contract, dep: TypedObject, *, onto_interface: bool = False) -> Contract:
    """Hold ``dep`` inside the open contract until an implementation arrives."""
    if onto_interface:
        raise AdjunctOnInterface(f"{c.spec.form!r} cannot take {dep.describe()} as an adjunct")
    if dep.span[0] <= c.fw_token.index:
        raise OrderViolation(f"{dep.describe()} precedes {c.spec}@{c.fw_token.index}")
    if c.spec.requires and c.spec.requires <= dep.offers:
        raise MustFulfill(f"{dep.describe()} satisfies {c.spec}")
    return replace(c, buffer=c.buffer + (dep,))


def attach_adjunct(host: TypedObject, adj: TypedObject) -> TypedObject:
    if adj.span[0] != host.span[1] + 1:
        raise OrderViolation(f"{adj.describe()} is not adjacent to {host.describe()}")
    return replace(host, adjuncts=host.adjuncts + (adj,), span=(host.span[0], adj.span[1]))


def bare_object(token: Token, entry, lex: Lexicon, use=None) -> TypedObject:
    """A content word with no interface, in its heaviest use."""
    use = use or entry.top
    return TypedObject(
        out=use.use_name,
        span=(token.index, token.index),
        implementation=Lexical(token, use.use_name),
        finite=bool(use.behaviors & lex.finite_behaviors()),
        offers=use.behaviors,
    )


def saturated_object(token: Token, entry) -> TypedObject:
    return TypedObject(
        out=entry.out,
        span=(token.index, token.index),
        implementation=Lexical(token, SAT_USE),
        offers=entry.behaviors,
    )
