"""Free-group words over a context of named generators.

Conventions used everywhere in the toolkit:

    [a, b]         = a * b * a^-1 * b^-1
    a^b            = b^-1 * a * b
    [a1, ..., an]  = [[...[a1, a2], ...], an]
"""
import random
import re
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from engelkit.errors import UnknownGeneratorError

Letter = tuple[int, int]

_INDEXED_NAME = re.compile(r"^([A-Za-z_]+)(\d+)$")


class GeneratorContext:
    """Ordered bijection between generator ids (1..n) and display names."""

    __slots__ = ("_names", "_ids")

    def __init__(self, names: Iterable[str]):
        self._names: tuple[str, ...] = tuple(names)
        self._ids: dict[str, int] = {}
        for position, name in enumerate(self._names, start=1):
            if name in self._ids:
                raise UnknownGeneratorError(f"generator name {name!r} declared twice")
            self._ids[name] = position

    @classmethod
    def standard(cls, prefix: str, n: int) -> "GeneratorContext":
        """Context with generators prefix1, ..., prefixn."""
        return cls(f"{prefix}{i}" for i in range(1, n + 1))

    @property
    def names(self) -> tuple[str, ...]:
        return self._names

    @property
    def size(self) -> int:
        return len(self._names)

    def __len__(self) -> int:
        return len(self._names)

    def __contains__(self, name: str) -> bool:
        return name in self._ids

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GeneratorContext) and self._names == other._names

    def __hash__(self) -> int:
        return hash(self._names)

    def __repr__(self) -> str:
        return f"GeneratorContext({list(self._names)!r})"

    def id_of(self, name: str) -> int:
        try:
            return self._ids[name]
        except KeyError:
            raise UnknownGeneratorError(f"unknown generator {name!r}") from None

    def name_of(self, gen: int) -> str:
        if not 1 <= gen <= len(self._names):
            raise UnknownGeneratorError(f"generator id {gen} outside 1..{len(self._names)}")
        return self._names[gen - 1]

    def generator(self, name: str) -> "Word":
        return Word.generator(self.id_of(name))

    def generators(self) -> list["Word"]:
        return [Word.generator(i) for i in range(1, len(self._names) + 1)]

    def extend(self, names: Iterable[str]) -> "GeneratorContext":
        """New context with extra generators appended after the existing ones."""
        return GeneratorContext(self._names + tuple(names))


def _free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for gen, sign in letters:
        if stack and stack[-1][0] == gen and stack[-1][1] == -sign:
            stack.pop()
        else:
            stack.append((gen, sign))
    return tuple(stack)


class Word:
    """A freely reduced word; the empty word is the identity."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[Letter] = ()):
        for gen, sign in letters if isinstance(letters, (tuple, list)) else ():
            if gen < 1 or sign not in (1, -1):
                raise ValueError(f"bad letter ({gen}, {sign})")
        self.letters: tuple[Letter, ...] = _free_reduce(letters)
        self._hash: Optional[int] = None

    @classmethod
    def _reduced(cls, letters: tuple[Letter, ...]) -> "Word":
        word = cls.__new__(cls)
        word.letters = letters
        word._hash = None
        return word

    @classmethod
    def identity(cls) -> "Word":
        return cls._reduced(())

    @classmethod
    def generator(cls, gen: int, sign: int = 1) -> "Word":
        return cls._reduced(((gen, sign),))

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.letters)
        return self._hash

    def __repr__(self) -> str:
        return f"Word({list(self.letters)!r})"

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __pow__(self, k: int) -> "Word":
        return power(self, k)

    def inverse(self) -> "Word":
        return invert(self)

    def generator_ids(self) -> set[int]:
        return {gen for gen, _ in self.letters}

    def max_generator(self) -> int:
        return max((gen for gen, _ in self.letters), default=0)

    def to_text(self, ctx: GeneratorContext) -> str:
        """Print as x1*x2^-1; the identity prints as 1."""
        if not self.letters:
            return "1"
        parts = []
        for gen, sign in self.letters:
            name = ctx.name_of(gen)
            parts.append(name if sign > 0 else f"{name}^-1")
        return "*".join(parts)


def multiply(u: Word, v: Word) -> Word:
    if not u.letters:
        return v
    if not v.letters:
        return u
    left = list(u.letters)
    right = v.letters
    i = 0
    while left and i < len(right) and left[-1][0] == right[i][0] and left[-1][1] == -right[i][1]:
        left.pop()
        i += 1
    return Word._reduced(tuple(left) + right[i:])


def product(words: Iterable[Word]) -> Word:
    result = Word.identity()
    for word in words:
        result = multiply(result, word)
    return result


def invert(u: Word) -> Word:
    return Word._reduced(tuple((gen, -sign) for gen, sign in reversed(u.letters)))


def power(u: Word, k: int) -> Word:
    base = u if k >= 0 else invert(u)
    result = Word.identity()
    for _ in range(abs(k)):
        result = multiply(result, base)
    return result


def conjugate(u: Word, by: Word) -> Word:
    """u^by = by^-1 * u * by."""
    return multiply(multiply(invert(by), u), by)


def commutator(a: Word, b: Word) -> Word:
    """[a, b] = a * b * a^-1 * b^-1."""
    return multiply(multiply(a, b), multiply(invert(a), invert(b)))


def left_normed(words: Sequence[Word]) -> Word:
    if not words:
        raise ValueError("left_normed needs at least one word")
    result = words[0]
    for word in words[1:]:
        result = commutator(result, word)
    return result


def substitute(u: Word, mapping: Mapping[int, Word]) -> Word:
    """Apply the endomorphism sending generator g to mapping[g]; unmapped generators are fixed."""
    letters: list[Letter] = []
    for gen, sign in u.letters:
        image = mapping.get(gen)
        if image is None:
            letters.append((gen, sign))
        elif sign > 0:
            letters.extend(image.letters)
        else:
            letters.extend((g, -s) for g, s in reversed(image.letters))
    return Word(letters)


def delete_generators(u: Word, gens: Iterable[int]) -> Word:
    """Set the given generators to the identity."""
    dropped = set(gens)
    return Word(letter for letter in u.letters if letter[0] not in dropped)


def relabel(u: Word, mapping: Mapping[int, int]) -> Word:
    """Rename generator ids; ids missing from the mapping are kept."""
    return Word._reduced(tuple((mapping.get(gen, gen), sign) for gen, sign in u.letters))


def exponent_sum(u: Word, gen: int) -> int:
    return sum(sign for g, sign in u.letters if g == gen)


def random_word(n: int, length: int, rng: random.Random) -> Word:
    """Random reduced word of exactly the given length over generators 1..n."""
    letters: list[Letter] = []
    while len(letters) < length:
        letter = (rng.randint(1, n), rng.choice((1, -1)))
        if letters and letters[-1] == (letter[0], -letter[1]):
            continue
        letters.append(letter)
    return Word._reduced(tuple(letters))


def reduced_words(n: int, length: int, positive: bool = False) -> list[Word]:
    """All reduced words of exactly the given length, in shortlex order."""
    alphabet = [(g, 1) for g in range(1, n + 1)]
    if not positive:
        alphabet = [letter for g in range(1, n + 1) for letter in ((g, 1), (g, -1))]
    layer: list[tuple[Letter, ...]] = [()]
    for _ in range(length):
        layer = [
            prefix + (letter,)
            for prefix in layer
            for letter in alphabet
            if not prefix or prefix[-1] != (letter[0], -letter[1])
        ]
    return [Word._reduced(letters) for letters in layer]


def infer_context(names: Sequence[str], n: Optional[int] = None) -> GeneratorContext:
    """Build a context from names seen in an expression.

    Indexed names sharing a prefix (m1, m3) become prefix1..prefixN with N the
    largest index, or n when given; an index above n is an error. Other names
    keep their order of first appearance, padded with g-names up to n.
    """
    matches = [_INDEXED_NAME.match(name) for name in names]
    prefixes = {m.group(1) for m in matches if m}
    if names and all(matches) and len(prefixes) == 1:
        top = max(int(m.group(2)) for m in matches if m)
        if n is not None and top > n:
            raise UnknownGeneratorError(f"expression uses {matches[0].group(1)}{top} but n = {n}")
        if top >= 1:
            return GeneratorContext.standard(prefixes.pop(), max(top, n or 0))
    ordered = list(dict.fromkeys(names))
    if n is not None:
        if n < len(ordered):
            raise UnknownGeneratorError(f"expression uses {len(ordered)} generators but n = {n}")
        k = 1
        while len(ordered) < n:
            candidate = f"g{k}"
            if candidate not in ordered:
                ordered.append(candidate)
            k += 1
    return GeneratorContext(ordered)
