"""Recursive-descent parser for word expressions.

Grammar:

    expr    := factor ("*" factor)*
    factor  := atom ("^" exponent)*
    exponent:= "-"? INT | atom
    atom    := NAME | "1" | "(" expr ")" | "[" expr ("," expr)+ "]"

"^" binds tighter than "*". An integer exponent is a power (so "^-1" is the
inverse); any other exponent conjugates. Brackets with three or more
entries are left-normed commutators.
"""
import logging
import re
from dataclasses import dataclass
from typing import Optional, Union

from engelkit.errors import WordSyntaxError
from engelkit.services import metrics
from engelkit.services.words import (
    GeneratorContext,
    Word,
    commutator,
    conjugate,
    infer_context,
    left_normed,
    multiply,
    power,
)

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<int>\d+)|(?P<op>[][*^(),-]))")


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True)
class Product:
    left: "WordExpr"
    right: "WordExpr"


@dataclass(frozen=True)
class Power:
    base: "WordExpr"
    exponent: int


@dataclass(frozen=True)
class Conjugate:
    base: "WordExpr"
    by: "WordExpr"


@dataclass(frozen=True)
class Commutator:
    entries: tuple["WordExpr", ...]


WordExpr = Union[Atom, Identity, Product, Power, Conjugate, Commutator]


class _Tokens:
    def __init__(self, text: str):
        self.items: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            match = _TOKEN.match(text, pos)
            if not match:
                start = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise WordSyntaxError(f"unexpected character {text[start]!r}", start)
            kind = match.lastgroup
            start = match.start(kind)
            self.items.append((kind, match.group(kind), start))
            pos = match.end()
        self.items.append(("end", "", len(text)))
        self.index = 0

    def peek(self) -> tuple[str, str, int]:
        return self.items[self.index]

    def take(self) -> tuple[str, str, int]:
        item = self.items[self.index]
        self.index += 1
        return item

    def expect(self, op: str) -> None:
        kind, value, position = self.take()
        if kind != "op" or value != op:
            found = value or "end of input"
            raise WordSyntaxError(f"expected {op!r}, found {found!r}", position)

    def at_op(self, op: str) -> bool:
        kind, value, _ = self.peek()
        return kind == "op" and value == op


def parse_expr(text: str) -> WordExpr:
    """Parse text into a word expression tree."""
    tokens = _Tokens(text)
    expr = _expr(tokens)
    kind, value, position = tokens.peek()
    if kind != "end":
        raise WordSyntaxError(f"unexpected {value!r}", position)
    return expr


def _expr(tokens: _Tokens) -> WordExpr:
    node = _factor(tokens)
    while tokens.at_op("*"):
        tokens.take()
        node = Product(node, _factor(tokens))
    return node


def _factor(tokens: _Tokens) -> WordExpr:
    node = _atom(tokens)
    while tokens.at_op("^"):
        tokens.take()
        kind, value, position = tokens.peek()
        if kind == "op" and value == "-":
            tokens.take()
            kind, value, position = tokens.take()
            if kind != "int":
                raise WordSyntaxError("expected integer after '^-'", position)
            node = Power(node, -int(value))
        elif kind == "int":
            tokens.take()
            node = Power(node, int(value))
        else:
            node = Conjugate(node, _atom(tokens))
    return node


def _atom(tokens: _Tokens) -> WordExpr:
    kind, value, position = tokens.take()
    if kind == "name":
        return Atom(value)
    if kind == "int":
        if value != "1":
            raise WordSyntaxError(f"integer {value} is not a word", position)
        return Identity()
    if kind == "op" and value == "(":
        node = _expr(tokens)
        tokens.expect(")")
        return node
    if kind == "op" and value == "[":
        entries = [_expr(tokens)]
        while tokens.at_op(","):
            tokens.take()
            entries.append(_expr(tokens))
        if len(entries) < 2:
            raise WordSyntaxError("commutator needs at least two entries", position)
        tokens.expect("]")
        return Commutator(tuple(entries))
    raise WordSyntaxError(f"unexpected {value or 'end of input'!r}", position)


def names_in(expr: WordExpr) -> list[str]:
    """Generator names in order of first appearance."""
    seen: list[str] = []

    def walk(node: WordExpr) -> None:
        if isinstance(node, Atom):
            if node.name not in seen:
                seen.append(node.name)
        elif isinstance(node, Product):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, Power):
            walk(node.base)
        elif isinstance(node, Conjugate):
            walk(node.base)
            walk(node.by)
        elif isinstance(node, Commutator):
            for entry in node.entries:
                walk(entry)

    walk(expr)
    return seen


def evaluate(expr: WordExpr, ctx: GeneratorContext) -> Word:
    """Evaluate an expression tree to a freely reduced word."""
    if isinstance(expr, Atom):
        return ctx.generator(expr.name)
    if isinstance(expr, Identity):
        return Word.identity()
    if isinstance(expr, Product):
        return multiply(evaluate(expr.left, ctx), evaluate(expr.right, ctx))
    if isinstance(expr, Power):
        return power(evaluate(expr.base, ctx), expr.exponent)
    if isinstance(expr, Conjugate):
        return conjugate(evaluate(expr.base, ctx), evaluate(expr.by, ctx))
    entries = [evaluate(entry, ctx) for entry in expr.entries]
    if len(entries) == 2:
        return commutator(entries[0], entries[1])
    return left_normed(entries)


def parse_word(text: str, ctx: GeneratorContext) -> Word:
    """Parse text into a word over the given context."""
    word = evaluate(parse_expr(text), ctx)
    metrics.WORDS_PARSED.inc()
    return word


def parse_with_context(text: str, n: Optional[int] = None) -> tuple[Word, GeneratorContext]:
    """Parse text, inferring the generator context from the names it uses."""
    expr = parse_expr(text)
    ctx = infer_context(names_in(expr), n)
    logger.debug(f"Inferred context {ctx.names} for {text!r}")
    word = evaluate(expr, ctx)
    metrics.WORDS_PARSED.inc()
    return word, ctx
