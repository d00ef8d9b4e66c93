"""Word-level Kirby diagram states and handle slides.

A state has one generator per component: dotted circles (1-handles) and
framed curves. A curve records the word it reads in the meridians of the
other components; linking is recorded on one side only, and
``to_link_model`` recovers the other side by the dual rule.

Sliding curve s over curve o with sign e and band b:

    w_s  ->  w_s * b^-1 * w_o^e * b
    m_o  ->  m_s^e * m_o        in every other curve

The second line is the change of meridian basis: a loop that went around o
now also goes around the part of s that runs along o.
"""
import logging
import shlex
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence

from engelkit.errors import DiagramError, EngelkitError, SlideScriptError, UnknownGeneratorError
from engelkit.models.slides import (
    CurveDump,
    CurveRole,
    DiagramDump,
    ScriptReport,
    SlidePropertyReport,
    StateReport,
    WndlCase,
    WndlResult,
)
from engelkit.services import metrics
from engelkit.services.decomp import ElementaryCommutator, elementary_commutators
from engelkit.services.link_dsl import build_text
from engelkit.services.links import Component, LinkModel, check_longitude_lengths, is_h_trivial
from engelkit.services.milnor import is_trivial_mf
from engelkit.services.parser import parse_word
from engelkit.services.words import (
    GeneratorContext,
    Word,
    conjugate,
    delete_generators,
    multiply,
    power,
    relabel,
    substitute,
)

logger = logging.getLogger(__name__)

GAMMA = "gamma"
INERT_ROLES = frozenset({CurveRole.DUAL, CurveRole.CORRECTION})
INERT_COMMANDS = {"dual": CurveRole.DUAL, "correction": CurveRole.CORRECTION}
STABILIZATION_NOTE = (
    "dotted circles are not traded for 0-framed 2-handles; "
    "the diagram is taken before stabilization"
)


@dataclass(frozen=True)
class Curve:
    """A framed curve; ``meridian`` is its generator id in the state context."""

    name: str
    meridian: int
    word: Word
    framing: int = 0
    role: CurveRole = CurveRole.GAMMA


@dataclass(frozen=True)
class SlideMove:
    slid: str
    over: str
    band: Word = field(default_factory=Word.identity)
    sign: int = -1


@dataclass(frozen=True)
class DiagramState:
    ctx: GeneratorContext
    dotted: frozenset[int]
    curves: tuple[Curve, ...]
    parallel_pairs: tuple[tuple[str, str], ...] = ()

    @property
    def meridian_count(self) -> int:
        return self.ctx.size

    def curve(self, name: str) -> Curve:
        for c in self.curves:
            if c.name == name:
                return c
        raise DiagramError(f"unknown curve {name!r}")

    def mentions(self, gen: int, skip: Optional[str] = None) -> bool:
        """Whether a curve other than ``skip`` reads ``gen``; inert curves do not count."""
        return any(
            gen in c.word.generator_ids()
            for c in self.curves
            if c.name != skip and c.role not in INERT_ROLES
        )

    def to_model(self) -> DiagramDump:
        return DiagramDump(
            dotted=[self.ctx.name_of(i) for i in sorted(self.dotted)],
            curves=[
                CurveDump(name=c.name, word=c.word.to_text(self.ctx), framing=c.framing, role=c.role)
                for c in self.curves
            ],
            parallel_pairs=[list(pair) for pair in self.parallel_pairs],
        )


def _without_generator(state: DiagramState, gen: int) -> DiagramState:
    """Set generator ``gen`` to the identity everywhere and renumber the rest."""
    shift = {j: j - 1 for j in range(gen + 1, state.ctx.size + 1)}
    removed = {c.name for c in state.curves if c.meridian == gen}
    names = [name for i, name in enumerate(state.ctx.names, start=1) if i != gen]
    curves = tuple(
        replace(c, meridian=shift.get(c.meridian, c.meridian), word=relabel(delete_generators(c.word, [gen]), shift))
        for c in state.curves
        if c.meridian != gen
    )
    return DiagramState(
        ctx=GeneratorContext(names),
        dotted=frozenset(shift.get(i, i) for i in state.dotted if i != gen),
        curves=curves,
        parallel_pairs=tuple(pair for pair in state.parallel_pairs if not removed & set(pair)),
    )


def add_curve(state: DiagramState, name: str, word: Word, role: CurveRole, framing: int = 0) -> DiagramState:
    """Append a curve with a fresh meridian; ``word`` reads the existing generators."""
    if name in state.ctx:
        raise DiagramError(f"name {name!r} is already used in the diagram")
    if word.max_generator() > state.ctx.size:
        raise DiagramError(f"curve {name!r} reads generator {word.max_generator()} outside the diagram")
    ctx = state.ctx.extend([name])
    return replace(state, ctx=ctx, curves=state.curves + (Curve(name, ctx.size, word, framing, role),))


def register_parallel(state: DiagramState, a: str, b: str) -> DiagramState:
    first, second = state.curve(a), state.curve(b)
    if a == b:
        raise DiagramError("a curve cannot be parallel to itself")
    if first.word != second.word or first.framing != second.framing:
        raise DiagramError(f"curves {a!r} and {b!r} do not have identical words and framings")
    return replace(state, parallel_pairs=state.parallel_pairs + ((a, b),))


def slide(state: DiagramState, move: SlideMove) -> DiagramState:
    slid = state.curve(move.slid)
    over = state.curve(move.over)
    if slid.name == over.name:
        raise DiagramError(f"cannot slide {slid.name!r} over itself")
    if over.framing != 0:
        raise DiagramError(f"over-curve {over.name!r} has framing {over.framing}; only 0-framed curves are supported")
    if move.sign not in (1, -1):
        raise DiagramError(f"slide sign must be +1 or -1, got {move.sign}")
    if move.band.max_generator() > state.ctx.size:
        raise DiagramError(f"band word uses generator {move.band.max_generator()} outside the diagram")

    summand = conjugate(power(over.word, move.sign), move.band)
    basis = {over.meridian: multiply(Word.generator(slid.meridian, move.sign), Word.generator(over.meridian))}
    curves = []
    for c in state.curves:
        if c.name == slid.name:
            curves.append(replace(c, word=multiply(c.word, summand)))
        elif c.name == over.name:
            curves.append(c)
        else:
            curves.append(replace(c, word=substitute(c.word, basis)))
    metrics.SLIDES_APPLIED.inc()
    logger.debug(f"Slid {slid.name} over {over.name} with sign {move.sign:+d}")
    return replace(state, curves=tuple(curves))


def reverse(move: SlideMove) -> SlideMove:
    """The slide that undoes ``move``."""
    return replace(move, sign=-move.sign)


def delete_dotted(state: DiagramState, name: str) -> DiagramState:
    try:
        gen = state.ctx.id_of(name)
    except UnknownGeneratorError:
        raise DiagramError(f"unknown dotted generator {name!r}") from None
    if gen not in state.dotted:
        raise DiagramError(f"{name!r} is not a dotted generator")
    return _without_generator(state, gen)


def delete_curve(state: DiagramState, name: str) -> DiagramState:
    return _without_generator(state, state.curve(name).meridian)


def split_curves(state: DiagramState) -> list[str]:
    """Curves with empty word whose meridian no other curve reads."""
    return [
        c.name for c in state.curves
        if c.word.is_identity and not state.mentions(c.meridian, skip=c.name)
    ]


def to_link_model(state: DiagramState) -> LinkModel:
    """Link model with one component per generator, dotted circles included.

    A curve c reading letter (j, e) after prefix P contributes (m_c^e)^Q to
    the longitude of component j, with Q = P for e = +1 and Q = P * j^-1 for
    e = -1. Dual and correction curves are inert and left out.
    """
    for gen in sorted((c.meridian for c in state.curves if c.role in INERT_ROLES), reverse=True):
        state = _without_generator(state, gen)
    longitudes = [Word.identity()] * state.ctx.size
    framings = [0] * state.ctx.size
    for c in state.curves:
        longitudes[c.meridian - 1] = c.word
        framings[c.meridian - 1] = c.framing
    for c in state.curves:
        prefix = Word.identity()
        for gen, sign in c.word:
            after = multiply(prefix, Word.generator(gen, sign))
            if gen != c.meridian:
                at = prefix if sign > 0 else after
                dual = conjugate(Word.generator(c.meridian, sign), at)
                longitudes[gen - 1] = multiply(longitudes[gen - 1], dual)
            prefix = after
    check_longitude_lengths(longitudes)
    return LinkModel(tuple(Component(w, f) for w, f in zip(longitudes, framings)), "diagram")


def check_engel_shape(commutator: ElementaryCommutator) -> None:
    products = [slot for slot in commutator.slots if len(slot) == 2]
    singles = [slot for slot in commutator.slots if len(slot) == 1]
    if (
        commutator.k != 4
        or len(products) != 2
        or products[0] != products[1]
        or len(singles) != 2
        or len(commutator.support) != 4
    ):
        raise DiagramError(f"{commutator.slots} is not an elementary Engel commutator")


def engel_state(
    commutator: ElementaryCommutator,
    names: Optional[Sequence[str]] = None,
    stabilized: bool = True,
    duals: bool = False,
) -> DiagramState:
    """Diagram of an elementary Engel link.

    Stabilized: the four generators are 0-framed curves with empty words, the
    two product-slot curves are registered parallel, and gamma reads the
    commutator in their meridians. Otherwise the generators are dotted and
    gamma is the only curve. With ``duals`` every stabilized component c gets
    an inert dual curve c' reading its meridian.
    """
    check_engel_shape(commutator)
    support = commutator.support
    local = commutator.relabel({g: i for i, g in enumerate(support, start=1)})
    names = list(names) if names is not None else [f"m{g}" for g in support]
    if len(names) != 4 or GAMMA in names:
        raise DiagramError(f"need four generator names other than {GAMMA!r}, got {names}")
    ctx = GeneratorContext(names + [GAMMA])
    gamma = Curve(GAMMA, 5, local.word(), role=CurveRole.GAMMA)
    if not stabilized:
        return DiagramState(ctx, frozenset(range(1, 5)), (gamma,))
    p, q = local.slots[local.product_positions[0] - 1]
    components = tuple(
        Curve(names[i - 1], i, Word.identity(), role=CurveRole.ENGEL_COMPONENT) for i in range(1, 5)
    )
    state = DiagramState(ctx, frozenset(), components + (gamma,), ((names[p - 1], names[q - 1]),))
    if duals:
        for i, name in enumerate(names, start=1):
            state = add_curve(state, f"{name}'", Word.generator(i), CurveRole.DUAL)
    return state


def parse_slots(text: str) -> tuple[ElementaryCommutator, list[str]]:
    """Read slots written as x,y*z,y*z,w (brackets optional)."""
    body = text.strip().removeprefix("[").removesuffix("]")
    names: list[str] = []
    slots = []
    for part in body.split(","):
        factors = [f.strip() for f in part.split("*")]
        if not all(factors):
            raise DiagramError(f"empty slot in {text!r}")
        for f in factors:
            if f not in names:
                names.append(f)
        slots.append(tuple(names.index(f) + 1 for f in factors))
    return ElementaryCommutator(tuple(slots)), names


def unlink_state(k: int, dotted: bool = False) -> DiagramState:
    if k < 1:
        raise DiagramError(f"unlink needs at least one component, got {k}")
    if dotted:
        return DiagramState(GeneratorContext.standard("u", k), frozenset(range(1, k + 1)), ())
    ctx = GeneratorContext.standard("c", k)
    curves = tuple(Curve(name, i, Word.identity(), role=CurveRole.ENGEL_COMPONENT) for i, name in enumerate(ctx.names, start=1))
    return DiagramState(ctx, frozenset(), curves)


def state_from_link(link: LinkModel, curve: int) -> DiagramState:
    """Keep one component as a curve reading its longitude; dot the others.

    Linking among the dotted components is forgotten, which is exact when
    they form a trivial sublink.
    """
    link.check_index(curve)
    ctx = link.context
    word = delete_generators(link.longitude(curve), [curve])
    dotted = frozenset(i for i in range(1, link.size + 1) if i != curve)
    return DiagramState(ctx, dotted, (Curve(ctx.name_of(curve), curve, word, role=CurveRole.GAMMA),))


def engel_shape(state: DiagramState) -> ElementaryCommutator:
    """The elementary Engel commutator a stabilized state was built from.

    The state needs four empty 0-framed Engel components, no dotted circles,
    one gamma curve reading an elementary Engel commutator in their meridians,
    and that commutator's product slot as its first parallel pair.
    """
    components = [c for c in state.curves if c.role == CurveRole.ENGEL_COMPONENT]
    gammas = [c for c in state.curves if c.role == CurveRole.GAMMA]
    if state.dotted or len(components) != 4 or len(gammas) != 1 or not state.parallel_pairs:
        raise DiagramError("state is not of elementary Engel shape")
    if any(not c.word.is_identity or c.framing for c in components):
        raise DiagramError("state is not of elementary Engel shape: components must be empty and 0-framed")
    mapping = dict(zip(range(1, 5), sorted(c.meridian for c in components)))
    pair = set(state.parallel_pairs[0])
    for candidate in elementary_commutators(4):
        found = candidate.relabel(mapping)
        if found.word() != gammas[0].word:
            continue
        check_engel_shape(found)
        product_slot = found.slots[found.product_positions[0] - 1]
        if {state.ctx.name_of(g) for g in product_slot} == pair:
            return found
    raise DiagramError(
        f"state is not of elementary Engel shape: {gammas[0].word.to_text(state.ctx)} "
        f"with parallel pair {sorted(pair)}"
    )


def engel_slide_property(state: DiagramState) -> SlidePropertyReport:
    """Slide the first registered parallel curve over the second with opposite orientation.

    Raises DiagramError unless the state has elementary Engel shape.
    """
    if not state.parallel_pairs:
        raise DiagramError("state has no registered parallel pair")
    engel_shape(state)
    slid_name, over_name = state.parallel_pairs[0]
    gamma = next(c for c in state.curves if c.role == CurveRole.GAMMA)
    pattern = gamma.word.to_text(state.ctx)

    after = slide(state, SlideMove(slid_name, over_name, Word.identity(), -1))
    slid = after.curve(slid_name)
    split = slid.word.is_identity and not after.mentions(slid.meridian, skip=slid_name)
    rest = delete_curve(after, slid_name)
    rest_trivial = is_h_trivial(to_link_model(rest))
    report = SlidePropertyReport(
        pattern=pattern,
        slid=slid_name,
        over=over_name,
        slid_word=slid.word.to_text(after.ctx),
        split_unknot=split,
        rest_h_trivial=rest_trivial,
        holds=split and rest_trivial,
    )
    logger.info(f"Slide property for {pattern}: split={split}, rest h-trivial={rest_trivial}")
    return report


def wndl_check(gamma: Word, n: int) -> WndlResult:
    free_trivial = gamma.is_identity
    milnor_trivial = is_trivial_mf(gamma, n)
    return WndlResult(
        word=gamma.to_text(GeneratorContext.standard("m", max(n, gamma.max_generator()))),
        n=n,
        free_trivial=free_trivial,
        milnor_trivial=milnor_trivial,
        instance=not free_trivial and milnor_trivial,
    )


def wndl_cases(commutators: Optional[Iterable[ElementaryCommutator]] = None) -> list[WndlCase]:
    """Delete each dotted generator from each elementary Engel state in turn."""
    cases = []
    for commutator in commutators if commutators is not None else elementary_commutators(4):
        state = engel_state(commutator, stabilized=False)
        text = state.curve(GAMMA).word.to_text(state.ctx)
        product_slot = set(commutator.slots[commutator.product_positions[0] - 1])
        for gen in commutator.support:
            name = f"m{gen}"
            after = delete_dotted(state, name)
            cases.append(WndlCase(
                commutator=text,
                deleted=name,
                in_product_slot=gen in product_slot,
                result=wndl_check(after.curve(GAMMA).word, len(after.dotted)),
            ))
    return cases


class SlideScriptRunner:
    """Line-oriented slide scripts.

    Commands: state engel <slots> [duals] | state engel-dotted <slots> |
    state unlink <k> [dotted] | state link <dsl> curve <i> | parallel <a> <b> |
    curve <name> dual|correction <word> | slide <a> over <b> band <word> sign <+|-> |
    delete <name> | report
    """

    def __init__(self) -> None:
        self.state: Optional[DiagramState] = None
        self.slides = 0
        self.reports: list[StateReport] = []

    def run(self, text: str) -> ScriptReport:
        for number, raw in enumerate(text.splitlines(), start=1):
            try:
                tokens = shlex.split(raw, comments=True)
            except ValueError as exc:
                raise SlideScriptError(str(exc), number) from None
            if not tokens:
                continue
            try:
                self._execute(tokens, number)
            except SlideScriptError:
                raise
            except EngelkitError as exc:
                raise SlideScriptError(str(exc), number) from exc
        return ScriptReport(slides=self.slides, reports=self.reports)

    def _current(self, number: int) -> DiagramState:
        if self.state is None:
            raise SlideScriptError("no state declared yet", number)
        return self.state

    def _execute(self, tokens: list[str], number: int) -> None:
        command, args = tokens[0], tokens[1:]
        if command == "state":
            self.state = self._state(args, number)
        elif command == "parallel" and len(args) == 2:
            self.state = register_parallel(self._current(number), args[0], args[1])
        elif command == "slide":
            self._slide(args, number)
        elif command == "curve" and len(args) == 3 and args[1] in INERT_COMMANDS:
            state = self._current(number)
            word = parse_word(args[2], state.ctx)
            self.state = add_curve(state, args[0], word, INERT_COMMANDS[args[1]])
        elif command == "delete" and len(args) == 1:
            state = self._current(number)
            name = args[0]
            if name in state.ctx and state.ctx.id_of(name) in state.dotted:
                self.state = delete_dotted(state, name)
            else:
                self.state = delete_curve(state, name)
        elif command == "report" and not args:
            state = self._current(number)
            self.reports.append(StateReport(
                line=number,
                state=state.to_model(),
                h_trivial=is_h_trivial(to_link_model(state)) if state.ctx.size else True,
                split_curves=split_curves(state),
                note=STABILIZATION_NOTE,
            ))
        else:
            raise SlideScriptError(f"cannot read {' '.join(tokens)!r}", number)

    def _state(self, args: list[str], number: int) -> DiagramState:
        if len(args) >= 2 and args[0] in ("engel", "engel-dotted"):
            slots = args[1:]
            duals = args[0] == "engel" and len(slots) >= 2 and slots[-1] == "duals"
            commutator, names = parse_slots(" ".join(slots[:-1] if duals else slots))
            return engel_state(commutator, names, stabilized=args[0] == "engel", duals=duals)
        if args[:1] == ["unlink"] and len(args) in (2, 3):
            if len(args) == 3 and args[2] != "dotted":
                raise SlideScriptError(f"unexpected {args[2]!r}", number)
            return unlink_state(self._integer(args[1], number), dotted=len(args) == 3)
        if args[:1] == ["link"] and len(args) == 4 and args[2] == "curve":
            return state_from_link(build_text(args[1]), self._integer(args[3], number))
        raise SlideScriptError(f"cannot read state declaration {' '.join(args)!r}", number)

    def _slide(self, args: list[str], number: int) -> None:
        if len(args) != 7 or args[1] != "over" or args[3] != "band" or args[5] != "sign" or args[6] not in ("+", "-"):
            raise SlideScriptError("expected: slide <curve> over <curve> band <word> sign <+|->", number)
        state = self._current(number)
        band = parse_word(args[4], state.ctx)
        move = SlideMove(args[0], args[2], band, 1 if args[6] == "+" else -1)
        self.state = slide(state, move)
        self.slides += 1

    @staticmethod
    def _integer(text: str, number: int) -> int:
        try:
            return int(text)
        except ValueError:
            raise SlideScriptError(f"expected an integer, found {text!r}", number) from None


def run_script(text: str) -> ScriptReport:
    return SlideScriptRunner().run(text)
