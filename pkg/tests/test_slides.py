import random
from dataclasses import replace

import pytest
from hypothesis import given, strategies as st

from engelkit.errors import DiagramError, SlideScriptError
from engelkit.models.slides import CurveRole
from engelkit.services.decomp import ElementaryCommutator, elementary_commutators
from engelkit.services.links import bing, hopf, is_h_trivial
from engelkit.services.milnor import is_trivial_mf
from engelkit.services.parser import parse_word
from engelkit.services.slides import (
    GAMMA,
    Curve,
    DiagramState,
    SlideMove,
    add_curve,
    delete_curve,
    delete_dotted,
    engel_slide_property,
    engel_state,
    parse_slots,
    register_parallel,
    reverse,
    run_script,
    slide,
    split_curves,
    state_from_link,
    to_link_model,
    unlink_state,
    wndl_cases,
    wndl_check,
)
from engelkit.services.words import GeneratorContext, Word, commutator, conjugate, multiply, random_word

FIRST_PATTERN = "x,y*z,y*z,w"
SECOND_PATTERN = "y*z,x,y*z,w"


def engel(pattern: str, stabilized: bool = True) -> DiagramState:
    commutator_, names = parse_slots(pattern)
    return engel_state(commutator_, names, stabilized=stabilized)


class TestStates:
    """Tests for diagram states and their constructors."""

    def test_parse_slots(self):
        parsed, names = parse_slots("[x,y*z,y*z,w]")
        assert names == ["x", "y", "z", "w"]
        assert parsed == ElementaryCommutator(((1,), (2, 3), (2, 3), (4,)))

    def test_stabilized_engel_state(self):
        state = engel(FIRST_PATTERN)
        assert state.parallel_pairs == (("y", "z"),)
        assert not state.dotted
        gamma = state.curve(GAMMA)
        assert gamma.word == parse_word("[x,y*z,y*z,w]", state.ctx)
        assert [c.role for c in state.curves[:4]] == [CurveRole.ENGEL_COMPONENT] * 4

    def test_dotted_engel_state(self):
        state = engel(SECOND_PATTERN, stabilized=False)
        assert len(state.dotted) == 4
        assert [c.name for c in state.curves] == [GAMMA]

    def test_not_an_engel_commutator(self):
        with pytest.raises(DiagramError):
            engel_state(ElementaryCommutator(((1,), (2,), (3,), (4,))))

    def test_unknown_curve(self):
        with pytest.raises(DiagramError):
            engel(FIRST_PATTERN).curve("nope")

    def test_register_parallel_needs_equal_words(self):
        state = engel(FIRST_PATTERN)
        with pytest.raises(DiagramError):
            register_parallel(state, "x", GAMMA)

    def test_state_from_link(self):
        state = state_from_link(bing(hopf(), 1), 3)
        assert state.dotted == frozenset({1, 2})
        assert [c.name for c in state.curves] == ["m3"]

    def test_add_inert_curve(self):
        state = add_curve(unlink_state(2), "d", Word.generator(1), CurveRole.CORRECTION)
        assert state.ctx.names == ("c1", "c2", "d")
        assert state.curve("d").meridian == 3
        assert to_link_model(state).size == 2
        assert not state.mentions(1)
        with pytest.raises(DiagramError):
            add_curve(state, "e", Word.generator(7), CurveRole.DUAL)

    def test_to_model(self):
        dump = engel(FIRST_PATTERN).to_model()
        assert dump.parallel_pairs == [["y", "z"]]
        assert dump.curves[-1].role == CurveRole.GAMMA


class TestSlides:
    """Tests for handle slides."""

    def test_parallel_slide_empties_the_slid_curve(self):
        state = engel(FIRST_PATTERN)
        after = slide(state, SlideMove("y", "z"))
        assert after.curve("y").word.is_identity
        assert "y" in split_curves(after)

    def test_slide_rewrites_meridian_of_over_curve(self):
        state = engel(FIRST_PATTERN)
        after = slide(state, SlideMove("y", "z"))
        gamma = after.curve(GAMMA).word
        assert gamma == parse_word("[x,z,z,w]", after.ctx)

    def test_reverse_slide_restores_state(self):
        ctx = GeneratorContext(["a", "b", "c"])
        rng = random.Random(4)
        for _ in range(20):
            curves = tuple(
                Curve(name, i, random_word(3, rng.randint(0, 6), rng))
                for i, name in enumerate(ctx.names, start=1)
            )
            state = DiagramState(ctx, frozenset(), curves)
            move = SlideMove("a", "b", random_word(3, rng.randint(0, 3), rng), rng.choice((1, -1)))
            assert slide(slide(state, move), reverse(move)) == state

    def test_framed_over_curve_is_rejected(self):
        ctx = GeneratorContext(["a", "b"])
        state = DiagramState(ctx, frozenset(), (Curve("a", 1, Word.identity()), Curve("b", 2, Word.identity(), framing=1)))
        with pytest.raises(DiagramError):
            slide(state, SlideMove("a", "b"))

    def test_self_slide_is_rejected(self):
        with pytest.raises(DiagramError):
            slide(engel(FIRST_PATTERN), SlideMove("y", "y"))

    def test_parallel_pairs_survive_slides(self):
        state = engel(FIRST_PATTERN)
        assert slide(state, SlideMove("x", "w")).parallel_pairs == state.parallel_pairs

    @given(st.integers(0, 10_000), st.sampled_from((1, -1)))
    def test_sliding_over_a_milnor_trivial_curve(self, seed, sign):
        rng = random.Random(seed)
        ctx = GeneratorContext(["a", "b", "c"])
        x = Word.generator(rng.choice((1, 3)))
        relator = conjugate(commutator(x, conjugate(x, random_word(3, 3, rng))), random_word(3, 2, rng))
        curves = (
            Curve("a", 1, random_word(3, rng.randint(0, 6), rng)),
            Curve("b", 2, relator),
            Curve("c", 3, random_word(3, rng.randint(0, 6), rng)),
        )
        state = DiagramState(ctx, frozenset(), curves)
        after = slide(state, SlideMove("a", "b", random_word(3, rng.randint(0, 3), rng), sign))
        assert is_trivial_mf(relator, 3)
        assert is_trivial_mf(after.curve("a").word, 3) == is_trivial_mf(state.curve("a").word, 3)


class TestDeletion:
    """Tests for deleting curves and dotted circles."""

    def test_delete_dotted_product_generator(self):
        state = engel(FIRST_PATTERN, stabilized=False)
        after = delete_dotted(state, "z")
        assert after.ctx.names == ("x", "y", "w", GAMMA)
        assert after.curve(GAMMA).word == parse_word("[x,y,y,w]", after.ctx)

    def test_delete_dotted_needs_a_dotted_generator(self):
        with pytest.raises(DiagramError):
            delete_dotted(engel(FIRST_PATTERN), "x")

    def test_delete_curve_renumbers(self):
        after = delete_curve(engel(FIRST_PATTERN), "x")
        assert after.ctx.names == ("y", "z", "w", GAMMA)
        assert after.curve(GAMMA).word.is_identity


class TestLinkModel:
    """Tests for reading a diagram state as a link."""

    def test_hopf_clasp(self):
        ctx = GeneratorContext(["a", "b"])
        state = DiagramState(ctx, frozenset({2}), (Curve("a", 1, Word.generator(2)),))
        link = to_link_model(state)
        assert link.longitude(1) == Word.generator(2)
        assert link.longitude(2) == Word.generator(1)

    def test_commutator_curve_has_trivial_dual_sums(self):
        ctx = GeneratorContext(["a", "b", "c"])
        word = commutator(Word.generator(2), Word.generator(3))
        link = to_link_model(DiagramState(ctx, frozenset({2, 3}), (Curve("a", 1, word),)))
        assert link.longitude(1) == word
        assert sum(sign for _, sign in link.longitude(2)) == 0

    def test_unlink_is_h_trivial(self):
        assert is_h_trivial(to_link_model(unlink_state(3)))


class TestEngelSlideProperty:
    """Tests for splitting elementary Engel links."""

    @pytest.mark.parametrize("pattern", [FIRST_PATTERN, SECOND_PATTERN])
    def test_figure_patterns(self, pattern):
        report = engel_slide_property(engel(pattern))
        assert report.split_unknot
        assert report.rest_h_trivial
        assert report.holds
        assert report.slid_word == "1"
        assert not report.stabilization_modeled

    def test_every_elementary_commutator(self):
        for c in elementary_commutators(4):
            assert engel_slide_property(engel_state(c)).holds

    def test_needs_a_parallel_pair(self):
        with pytest.raises(DiagramError):
            engel_slide_property(engel(FIRST_PATTERN, stabilized=False))

    def test_rejects_states_without_engel_shape(self):
        with pytest.raises(DiagramError):
            engel_slide_property(register_parallel(unlink_state(2), "c1", "c2"))

    def test_pair_must_be_the_product_slot(self):
        state = replace(engel(FIRST_PATTERN), parallel_pairs=())
        with pytest.raises(DiagramError):
            engel_slide_property(register_parallel(state, "x", "w"))

    def test_duals_ride_along(self):
        commutator_, names = parse_slots(FIRST_PATTERN)
        state = engel_state(commutator_, names, duals=True)
        assert [c.name for c in state.curves[5:]] == ["x'", "y'", "z'", "w'"]
        assert all(c.role == CurveRole.DUAL for c in state.curves[5:])
        assert to_link_model(state).size == 5
        after = slide(state, SlideMove("y", "z"))
        assert after.curve("z'").word == multiply(Word.generator(2, -1), Word.generator(3))
        assert engel_slide_property(state).holds


class TestWndl:
    """Tests for the weak null disk lemma hypothesis checks."""

    def test_repeated_slot_deletion_is_an_instance(self):
        state = delete_dotted(engel(FIRST_PATTERN, stabilized=False), "z")
        result = wndl_check(state.curve(GAMMA).word, len(state.dotted))
        assert not result.free_trivial
        assert result.milnor_trivial
        assert result.instance

    def test_single_slot_deletion_is_free_trivial(self):
        state = delete_dotted(engel(FIRST_PATTERN, stabilized=False), "x")
        result = wndl_check(state.curve(GAMMA).word, len(state.dotted))
        assert result.free_trivial
        assert result.milnor_trivial
        assert not result.instance

    def test_commutator_of_commutators_is_not_an_instance(self):
        ctx = GeneratorContext.standard("m", 4)
        result = wndl_check(parse_word("[[m1,m2],[m3,m4]]", ctx), 4)
        assert not result.free_trivial
        assert not result.milnor_trivial

    def test_all_cases(self):
        cases = wndl_cases()
        assert len(cases) == 4 * len(elementary_commutators(4))
        assert all(case.result.instance == case.in_product_slot for case in cases)


SCRIPT = """
# elementary Engel link, first pattern
state engel "x,y*z,y*z,w"
slide y over z band 1 sign -
report
delete y
report
"""


class TestScripts:
    """Tests for slide scripts."""

    def test_engel_script(self):
        result = run_script(SCRIPT)
        assert result.slides == 1
        assert len(result.reports) == 2
        first, second = result.reports
        assert "y" in first.split_curves
        assert second.h_trivial
        assert second.note

    def test_link_state(self):
        result = run_script('state link "bing(hopf,1)" curve 3\nreport\n')
        assert result.reports[0].state.dotted == ["m1", "m2"]

    def test_unlink_dotted(self):
        result = run_script("state unlink 2 dotted\nreport\n")
        assert result.reports[0].state.dotted == ["u1", "u2"]

    def test_error_names_the_line(self):
        with pytest.raises(SlideScriptError) as info:
            run_script("state unlink 2\nslide c1 over c9 band 1 sign -\n")
        assert info.value.line == 2

    def test_command_before_state(self):
        with pytest.raises(SlideScriptError) as info:
            run_script("report\n")
        assert info.value.line == 1

    def test_inert_curves(self):
        script = 'state engel "x,y*z,y*z,w" duals\ncurve W correction "[x,y,y]"\nreport\n'
        report = run_script(script).reports[0]
        roles = [c.role for c in report.state.curves]
        assert roles.count(CurveRole.DUAL) == 4
        assert roles[-1] == CurveRole.CORRECTION
        assert report.state.curves[-1].name == "W"

    def test_inert_curve_name_must_be_new(self):
        with pytest.raises(SlideScriptError) as info:
            run_script("state unlink 2\ncurve c1 dual c2\n")
        assert info.value.line == 2

    def test_malformed_slide(self):
        with pytest.raises(SlideScriptError):
            run_script("state unlink 2\nslide c1 c2\n")
