"""Bracketed and tabular renderings of parsed objects, plus a bracket reader.

Bracket shapes::

    (OUT fw (impl cw:use) dependent* (adj X)*)
    (OUT fw (impl <object>) dependent* (adj X)*)     phrasal implementation
    (bare cw:use (adj X)*)
    (OUT sat:form (adj X)*)

Dependents always sit between the function word and its implementation in
the token stream; ``adj`` items were attached afterwards and follow it. That
ordering is enough for :func:`read_sexpr` to recover every span.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .composer import Lexical, TypedObject
from .lexicon import Lexicon

__all__ = ["to_sexpr", "to_tabular", "read_sexpr", "ReadNode", "SexprError"]


class SexprError(ValueError):
    pass


def _adj(obj: TypedObject) -> str:
    return "".join(f" (adj {to_sexpr(a)})" for a in obj.adjuncts)


def to_sexpr(obj: TypedObject) -> str:
    kind = obj.kind
    if kind == "bare":
        head = obj.head
        return f"(bare {head.token.text}:{head.use}{_adj(obj)})"
    if kind == "sat":
        return f"({obj.out} sat:{obj.head.token.text}{_adj(obj)})"
    impl = obj.implementation
    if isinstance(impl, Lexical):
        impl_text = f"{impl.token.text}:{impl.use}"
    else:
        impl_text = to_sexpr(impl)
    deps = "".join(f" {to_sexpr(d)}" for d in obj.dependents)
    return f"({obj.out} {obj.interface.token.text} (impl {impl_text}){deps}{_adj(obj)})"


def _row(obj: TypedObject) -> str:
    kind = obj.kind
    head = obj.head
    if kind == "typed":
        out, fw = obj.out, obj.interface.token.text
        impl = obj.implementation
        use = impl.use if isinstance(impl, Lexical) else impl.out
    else:
        out, fw = ("bare" if kind == "bare" else obj.out), "-"
        use = head.use
    features = ",".join(sorted(obj.features)) or "-"
    return "\t".join([out, str(obj.span[0]), str(obj.span[1]), fw, head.token.text, use, features])


def to_tabular(objects) -> str:
    return "\n".join(_row(o) for o in objects)


# -- reading ---------------------------------------------------------------


@dataclass
class ReadNode:
    """What a bracket string says about one object, recovered without the parser."""

    out: str
    span: tuple[int, int]
    fw: str | None = None
    impl_form: str | None = None
    use: str | None = None
    impl: "ReadNode | None" = None
    features: frozenset[str] = frozenset()
    finite: bool = False
    dependents: list["ReadNode"] = field(default_factory=list)
    adjuncts: list["ReadNode"] = field(default_factory=list)


_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def _tree(text: str):
    stack: list[list] = [[]]
    for tok in _TOKEN.findall(text):
        if tok == "(":
            stack.append([])
        elif tok == ")":
            if len(stack) == 1:
                raise SexprError("unbalanced ')'")
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(tok)
    if len(stack) != 1:
        raise SexprError("unbalanced '('")
    return stack[0]


def _split_adj(items):
    body, adjs = [], []
    for item in items:
        if isinstance(item, list) and item and item[0] == "adj":
            adjs.append(item[1])
        else:
            body.append(item)
    return body, adjs


def _impl_behaviors(node: ReadNode, lex: Lexicon) -> frozenset[str]:
    if node.impl is not None:
        return lex.offers_for(node.impl.out, node.impl.finite)
    if node.use == "sat":
        return lex.sat[node.impl_form].behaviors
    entry = lex.cw.get(node.impl_form)
    if entry is None:
        return lex.all_use_behaviors()
    return next(u.behaviors for u in entry.uses if u.use_name == node.use)


def _entry_for(node: ReadNode, lex: Lexicon):
    candidates = [s for s in lex.fw.get(node.fw, ()) if s.out == node.out]
    if not candidates:
        raise SexprError(f"no entry {node.fw}→{node.out} in the lexicon")
    if len(candidates) > 1:
        # same form and type: the implementation tells the entries apart
        offered = _impl_behaviors(node, lex)
        candidates = [s for s in candidates if s.requires <= offered] or candidates
    return candidates[0]


def _build(node, pos: int, lex: Lexicon | None) -> tuple[ReadNode, int]:
    if not isinstance(node, list) or len(node) < 2:
        raise SexprError(f"malformed object {node!r}")
    head, *rest = node
    rest, adj_items = _split_adj(rest)
    start = pos
    if head == "bare":
        form, _, use = rest[0].rpartition(":")
        result = ReadNode("bare", (pos, pos), impl_form=form, use=use)
        pos += 1
    elif isinstance(rest[0], str) and rest[0].startswith("sat:"):
        result = ReadNode(head, (pos, pos), impl_form=rest[0][4:], use="sat")
        pos += 1
    else:
        fw, impl_item, *deps = rest
        if not (isinstance(impl_item, list) and impl_item and impl_item[0] == "impl"):
            raise SexprError(f"expected (impl ...) in {node!r}")
        result = ReadNode(head, (pos, pos), fw=fw)
        pos += 1
        for dep in deps:
            child, pos = _build(dep, pos, lex)
            result.dependents.append(child)
        target = impl_item[1]
        if isinstance(target, str):
            form, _, use = target.rpartition(":")
            result.impl_form, result.use = form, use
            pos += 1
        else:
            result.impl, pos = _build(target, pos, lex)
            result.impl_form = result.impl.impl_form
            result.use = result.impl.out
        if lex is not None:
            spec = _entry_for(result, lex)
            result.features, result.finite = spec.confers, spec.finite
    for adj in adj_items:
        child, pos = _build(adj, pos, lex)
        result.adjuncts.append(child)
    result.span = (start, pos - 1)
    return result, pos


def read_sexpr(text: str, lex: Lexicon | None = None) -> list[ReadNode]:
    """Read the root objects of one output line.

    Spans follow from token order. Features are looked up from the
    function word's entry, so they need ``lex``.
    """
    nodes, pos = [], 0
    for item in _tree(text):
        node, pos = _build(item, pos, lex)
        nodes.append(node)
    return nodes
