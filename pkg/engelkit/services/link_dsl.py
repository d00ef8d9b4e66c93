"""Construction expressions for links.

Grammar:

    expr := "hopf" | "unlink(" INT ")" | "wh(" SIGN ")"
          | "bing(" expr "," INT ")" | "whd(" expr "," INT "," SIGN ")"
          | "ram(" expr "," INT "," INT ")" | "par(" expr "," INT ")"
    SIGN := "+" | "-"
"""
import logging
import random
import re
from dataclasses import dataclass
from typing import Union

from engelkit.errors import LinkDslSyntaxError
from engelkit.services import links
from engelkit.services.links import LinkModel

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z]+)|(?P<int>\d+)|(?P<op>[(),+-]))")


@dataclass(frozen=True)
class Hopf:
    pass


@dataclass(frozen=True)
class Unlink:
    k: int


@dataclass(frozen=True)
class Wh:
    sign: int


@dataclass(frozen=True)
class Bing:
    inner: "ConstructionExpr"
    component: int


@dataclass(frozen=True)
class Whd:
    inner: "ConstructionExpr"
    component: int
    sign: int


@dataclass(frozen=True)
class Ram:
    inner: "ConstructionExpr"
    component: int
    r: int


@dataclass(frozen=True)
class Par:
    inner: "ConstructionExpr"
    component: int


ConstructionExpr = Union[Hopf, Unlink, Wh, Bing, Whd, Ram, Par]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text) and text[pos:].strip():
            match = _TOKEN.match(text, pos)
            if not match:
                start = len(text) - len(text[pos:].lstrip())
                raise LinkDslSyntaxError(f"unexpected character {text[start]!r}", start)
            kind = match.lastgroup
            self.tokens.append((kind, match.group(kind), match.start(kind)))
            pos = match.end()
        self.tokens.append(("end", "", len(text)))
        self.index = 0

    def take(self) -> tuple[str, str, int]:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def op(self, value: str) -> None:
        kind, found, position = self.take()
        if kind != "op" or found != value:
            raise LinkDslSyntaxError(f"expected {value!r}, found {found or 'end of input'!r}", position)

    def integer(self) -> int:
        kind, found, position = self.take()
        if kind != "int":
            raise LinkDslSyntaxError(f"expected an integer, found {found or 'end of input'!r}", position)
        return int(found)

    def sign(self) -> int:
        kind, found, position = self.take()
        if kind != "op" or found not in ("+", "-"):
            raise LinkDslSyntaxError(f"expected '+' or '-', found {found or 'end of input'!r}", position)
        return 1 if found == "+" else -1

    def expr(self) -> ConstructionExpr:
        kind, name, position = self.take()
        if kind != "name":
            raise LinkDslSyntaxError(f"expected a construction, found {name or 'end of input'!r}", position)
        if name == "hopf":
            return Hopf()
        self.op("(")
        if name == "unlink":
            node: ConstructionExpr = Unlink(self.integer())
        elif name == "wh":
            node = Wh(self.sign())
        elif name in ("bing", "par"):
            inner = self.expr()
            self.op(",")
            node = Bing(inner, self.integer()) if name == "bing" else Par(inner, self.integer())
        elif name == "whd":
            inner = self.expr()
            self.op(",")
            component = self.integer()
            self.op(",")
            node = Whd(inner, component, self.sign())
        elif name == "ram":
            inner = self.expr()
            self.op(",")
            component = self.integer()
            self.op(",")
            node = Ram(inner, component, self.integer())
        else:
            raise LinkDslSyntaxError(f"unknown construction {name!r}", position)
        self.op(")")
        return node


def parse_construction(text: str) -> ConstructionExpr:
    parser = _Parser(text)
    node = parser.expr()
    kind, found, position = parser.take()
    if kind != "end":
        raise LinkDslSyntaxError(f"unexpected {found!r}", position)
    return node


def to_dsl(expr: ConstructionExpr) -> str:
    def sign(s: int) -> str:
        return "+" if s > 0 else "-"

    if isinstance(expr, Hopf):
        return "hopf"
    if isinstance(expr, Unlink):
        return f"unlink({expr.k})"
    if isinstance(expr, Wh):
        return f"wh({sign(expr.sign)})"
    if isinstance(expr, Bing):
        return f"bing({to_dsl(expr.inner)},{expr.component})"
    if isinstance(expr, Whd):
        return f"whd({to_dsl(expr.inner)},{expr.component},{sign(expr.sign)})"
    if isinstance(expr, Ram):
        return f"ram({to_dsl(expr.inner)},{expr.component},{expr.r})"
    return f"par({to_dsl(expr.inner)},{expr.component})"


def build(expr: ConstructionExpr) -> LinkModel:
    """Evaluate a construction expression to a link model."""
    if isinstance(expr, Hopf):
        return links.hopf()
    if isinstance(expr, Unlink):
        return links.unlink(expr.k)
    if isinstance(expr, Wh):
        return links.whitehead_link(expr.sign)
    inner = build(expr.inner)
    if isinstance(expr, Bing):
        return links.bing(inner, expr.component)
    if isinstance(expr, Whd):
        return links.whd(inner, expr.component, expr.sign)
    if isinstance(expr, Ram):
        return links.ram(inner, expr.component, expr.r)
    return links.par(inner, expr.component)


def build_text(text: str) -> LinkModel:
    model = build(parse_construction(text))
    logger.debug(f"Built {model.provenance} with {model.size} components")
    return model


def random_construction(rng: random.Random, steps: int = 2, max_components: int = 5) -> ConstructionExpr:
    """Random well-formed expression: a seed followed by up to ``steps`` operations."""
    seeds: list[tuple[ConstructionExpr, int]] = [
        (Hopf(), 2), (Unlink(2), 2), (Unlink(3), 3), (Wh(1), 2), (Wh(-1), 2),
    ]
    expr, size = rng.choice(seeds)
    for _ in range(rng.randint(1, steps)):
        i = rng.randint(1, size)
        choice = rng.choice(("bing", "whd", "par") if size < max_components else ("whd",))
        if choice == "bing":
            expr, size = Bing(expr, i), size + 1
        elif choice == "par":
            expr, size = Par(expr, i), size + 1
        else:
            expr = Whd(expr, i, rng.choice((1, -1)))
    return expr
